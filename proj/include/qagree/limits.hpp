#pragma once

#include "qagree/epistemics.hpp"

namespace qagree {

// Witness value Tr(Q_A(E;1) C_A(Q_B(E;0)) rho) together with per-branch
// diagnostics (i, Pr[P_E; P_A^i], Pr[Q_B(E;0); P_A^i]). The impossibility
// theorem asserts the value is zero for every quantum scenario, with no
// commutativity assumptions.
struct ZeroOneWitnessReport {
    double value = 0.0;
    struct BranchDiagnostic {
        int index = 0;
        double prob_e = 0.0;
        double prob_bob_not_e = 0.0;
    };
    std::vector<BranchDiagnostic> per_branch;
};

struct EpsilonConfig {
    double epsilon = 0.0;  // in (0, 1)
    // Whether the assignment layer A_0/B_0 is also epsilon-relaxed. The
    // relaxation canonically applies to the certainty modality only.
    bool relax_assignment = false;
};

ZeroOneWitnessReport zero_one_check(const Scenario& s, double tol = TOL);

// 2 ||rho_a - rho_b||_1 / max{Tr(B* A* rho_a), Tr(A* B* rho_b)}.
// Throws ZeroConditioningWeight when both denominators vanish.
double state_perturbation_bound(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b,
                                const ComplexMatrix& a_star, const ComplexMatrix& b_star,
                                double tol = TOL);

// Certainty recursion with the (1 - epsilon)-certainty threshold in the
// certainty layers; the initial assignment layers keep exact q matching
// unless cfg.relax_assignment is set.
RecursionTrace run_epsilon_recursion(const Scenario& s, double q_alice, double q_bob,
                                     const EpsilonConfig& cfg,
                                     const RecursionOptions& opts = {});

// Branch set of the (1 - epsilon)-certainty operator; exposed so tests and
// reports can inspect which branches the relaxation admits.
ComplexMatrix epsilon_certainty_projector(const Measurement& meas, const ComplexMatrix& prop,
                                          const ComplexMatrix& rho, double epsilon,
                                          double tol = TOL);

}  // namespace qagree
