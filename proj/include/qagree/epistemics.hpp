#pragma once

#include <vector>

#include "qagree/quantum_model.hpp"

namespace qagree {

// Born-rule conditional probability with a Lueders update, together with the
// weight of the conditioning outcome. `value` is clamped to [0,1] on output.
struct ConditionalProbability {
    double value = 0.0;
    double conditioning_weight = 0.0;
};

struct RecursionOptions {
    double tol = TOL;     // structural tolerance (weights, stabilization, projector checks)
    double tol_q = 1e-9;  // probability-matching tolerance for the assignment layer
    // Certainty threshold becomes prob >= 1 - certainty_epsilon (minus tol of
    // numerical slack). Zero gives exact certainty.
    double certainty_epsilon = 0.0;
    // When set, the assignment layer matches |prob - q| <= max(tol_q, certainty_epsilon).
    // Off by default: the epsilon relaxation applies to the certainty modality only.
    bool relax_assignment = false;
};

struct RecursionLevel {
    ComplexMatrix a;
    ComplexMatrix b;
    std::vector<int> a_branches;  // contributing measurement branch indices
    std::vector<int> b_branches;
};

// The certainty recursion A_{n+1} = A_n C_A(B_n), B_{n+1} = B_n C_B(A_n),
// recorded level by level up to the stabilization index N.
struct RecursionTrace {
    std::vector<RecursionLevel> levels;  // levels[n] = (A_n, B_n), n = 0..N
    int stabilization_index = 0;
    ComplexMatrix a_star;
    ComplexMatrix b_star;
    ComplexMatrix c_star;  // A_* B_*
    double cc_weight = 0.0;   // Tr(C_* rho)

    const std::vector<int>& a_star_branches() const { return levels.back().a_branches; }
    const std::vector<int>& b_star_branches() const { return levels.back().b_branches; }
};

enum class OutcomeKind { Agreement, CCD, NoCommonCertainty };

struct Classification {
    OutcomeKind kind = OutcomeKind::NoCommonCertainty;
    double q_alice = 0.0;
    double q_bob = 0.0;
    RecursionTrace trace;
};

// Per-branch posterior data for one agent: weights Tr(P_k rho) and the
// unnormalized updated states P_k rho P_k. Computing this once makes every
// later conditional probability an O(dim^2) inner product, which the sweeps
// rely on.
struct BranchPosteriors {
    std::vector<double> weights;
    std::vector<ComplexMatrix> updated;

    int count() const { return static_cast<int>(weights.size()); }
};

BranchPosteriors compute_branch_posteriors(const Measurement& meas, const ComplexMatrix& rho);

struct BranchProbability {
    int index = 0;
    double weight = 0.0;
    double prob = 0.0;
};

// Conditional probability of `prop` on every positive-weight branch.
std::vector<BranchProbability> branch_probabilities(const Measurement& meas,
                                                    const ComplexMatrix& prop,
                                                    const ComplexMatrix& rho, double tol = TOL);

// Prob[prop; cond] = Tr(prop cond rho cond) / Tr(cond rho).
// Throws ZeroConditioningWeight when Tr(cond rho) <= tol.
ConditionalProbability cond_prob(const ComplexMatrix& prop, const ComplexMatrix& cond,
                                 const ComplexMatrix& rho, double tol = TOL);

// cond rho cond / Tr(cond rho).
ComplexMatrix luders_update(const ComplexMatrix& cond, const ComplexMatrix& rho,
                            double tol = TOL);

// Q_X(F; q) = sum of branch projectors whose conditional probability of F
// matches q within tol_q. May be the zero matrix.
ComplexMatrix assignment_projector(const Measurement& meas, const ComplexMatrix& prop, double q,
                                   const ComplexMatrix& rho, double tol_q,
                                   double tol = TOL);

// C_X(F) = Q_X(F; 1).
ComplexMatrix certainty_projector(const Measurement& meas, const ComplexMatrix& prop,
                                  const ComplexMatrix& rho, double tol = TOL);

RecursionTrace run_recursion(const Scenario& s, double q_alice, double q_bob,
                             const RecursionOptions& opts = {});

// Variant reusing precomputed branch posteriors (sweeps over many q pairs on
// one scenario).
RecursionTrace run_recursion(const Scenario& s, const BranchPosteriors& alice,
                             const BranchPosteriors& bob, double q_alice, double q_bob,
                             const RecursionOptions& opts = {});

Classification classify(const Scenario& s, double q_alice, double q_bob,
                        const RecursionOptions& opts = {});

Classification classify(const Scenario& s, const BranchPosteriors& alice,
                        const BranchPosteriors& bob, double q_alice, double q_bob,
                        const RecursionOptions& opts = {});

// Max-entry distance between B* A* rho A* B* / Tr(B* A* rho) and
// A* rho A* / Tr(A* rho). Zero (up to tol) whenever the commutation
// conditions hold and common certainty obtains.
double verify_nondisturbance(const RecursionTrace& trace, const ComplexMatrix& rho,
                             double tol = TOL);

}  // namespace qagree
