#pragma once

#include <cstdint>
#include <random>

#include "qagree/classical.hpp"
#include "qagree/quantum_model.hpp"

namespace qagree {

// Deterministic RNG used by every generator. Gaussian variates are produced
// by an explicit Box-Muller transform so seeded runs reproduce across
// standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    double uniform();                 // [0, 1)
    int uniform_int(int lo, int hi);  // inclusive bounds
    double gaussian();
    cplx complex_gaussian();

private:
    std::mt19937_64 engine_;
};

// 4-6-2 commuting scenario: entangled two-dimensional sectors for both
// agents, an inaccessible qubit, and an angle-parametrized property
// |phi_theta> = cos(theta/2)|0> + sin(theta/2)|1> on it.
Scenario example1(double theta);

// 3-2-2 scenario whose property straddles Alice's factor and the
// inaccessible qubit; Alice's projectors do not commute with it, and the
// certainty recursion exhibits common certainty of disagreement.
Scenario example2();

// Random pure state; agents measure random orthogonal local subspace
// decompositions (one per branch count); the property is a random projector
// on the inaccessible factor. Commutation holds by construction.
Scenario random_commuting_scenario(uint64_t seed, const std::vector<int>& dims,
                                   const std::vector<int>& alice_branch_dims,
                                   const std::vector<int>& bob_branch_dims);

// Same construction with the property drawn on the joint Alice+inaccessible
// factors, so it generally fails to commute with Alice's measurement.
Scenario random_noncommuting_scenario(uint64_t seed, const std::vector<int>& dims);

// Random local subspace measurement dimensions for the given factor
// dimension (a random composition).
std::vector<int> random_branch_dims(Rng& rng, int dim);

// Classical corpus -----------------------------------------------------------

// Four equal-weight states, row/column partitions, event on the diagonal
// pair: common certainty of 1/2 everywhere while pooled assessments are 0/1.
ClassicalModel pooling_model();

// Three binary measurements, pairwise compatible, exhibiting the cyclic
// certainty pattern of 0-1 disagreement while satisfying no-signaling.
NoSignalingBox zero_one_box();

// Signed phase-space measure over the 8 global assignments that realizes
// zero_one_box exactly.
ClassicalModel signed_box_measure();

// Random unsigned model with exact rational weights (<= max_states states,
// <= 4 cells per partition).
ClassicalModel random_classical_model(uint64_t seed, int max_states = 12);

}  // namespace qagree
