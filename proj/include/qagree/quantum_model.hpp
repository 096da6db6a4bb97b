#pragma once

#include <string>
#include <vector>

#include "qagree/linalg.hpp"

namespace qagree {

enum class FactorRole { Alice, Bob, Inaccessible, Shared };

enum class Agent { Alice, Bob };

// Tensor factorization of the total Hilbert space, with a role per factor.
// Two-lab and single-lab variants use Shared factors instead of a dedicated
// Inaccessible one.
struct HilbertFactorization {
    std::vector<int> dims;
    std::vector<FactorRole> roles;

    int total_dim() const;
    // Index of the unique factor with the given role, or -1.
    int factor_of(FactorRole role) const;
};

// A projective measurement, stored fully embedded in the global space.
struct Measurement {
    Agent agent = Agent::Alice;
    std::vector<ComplexMatrix> projectors;

    int count() const { return static_cast<int>(projectors.size()); }
};

struct Scenario {
    HilbertFactorization factorization;
    ComplexMatrix rho;
    Measurement alice;
    Measurement bob;
    ComplexMatrix property;

    int dim() const { return rho.dim; }
};

struct CommutationReport {
    bool ab_ok = false;       // [P_A^i, P_B^j] = 0 for all i, j
    bool alice_e_ok = false;  // [P_A^i, P_E] = 0 for all i
    bool bob_e_ok = false;    // [P_B^j, P_E] = 0 for all j
    double max_violation = 0.0;
    // Extra check used by the state-commuting scenario variant:
    // [P_X^k, rho] = 0 for all k of both agents.
    bool state_ok = false;
    double state_violation = 0.0;

    bool all_ok() const { return ab_ok && alice_e_ok && bob_e_ok; }
};

// op on factor `factor_index`, tensored with identities on every other factor.
ComplexMatrix embed_local(const ComplexMatrix& op, int factor_index,
                          const HilbertFactorization& factorization);

// op lives on the tensor product of the listed factors (strictly increasing
// indices, in factor order); identity on the rest.
ComplexMatrix embed_on_factors(const ComplexMatrix& op, const std::vector<int>& factor_indices,
                               const HilbertFactorization& factorization);

// Validates a measurement family on the global space: every element a
// projector, pairwise orthogonal, summing to the identity (all within tol).
// Throws ValidationError naming the violated invariant.
void validate_measurement(const Measurement& m, int dim, double tol = TOL);

// Builds a scenario from fully embedded operators, validating eagerly:
// invalid scenarios cannot exist.
Scenario make_scenario(HilbertFactorization factorization, ComplexMatrix rho, Measurement alice,
                       Measurement bob, ComplexMatrix property, double tol = TOL);

// rho = |psi><psi| with local measurement blocks embedded at the Alice/Bob
// factors; `property` is given on the full space.
Scenario scenario_from_pure_state(const HilbertFactorization& factorization,
                                  const std::vector<cplx>& state_vector,
                                  const std::vector<ComplexMatrix>& alice_blocks,
                                  const std::vector<ComplexMatrix>& bob_blocks,
                                  const ComplexMatrix& property, double tol = TOL);

CommutationReport check_commutation(const Scenario& s, double tol = TOL);

std::string to_string(FactorRole role);
std::string to_string(Agent agent);

}  // namespace qagree
