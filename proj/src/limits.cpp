#include "qagree/limits.hpp"

#include <algorithm>
#include <cmath>

namespace qagree {

ZeroOneWitnessReport zero_one_check(const Scenario& s, double tol) {
    const BranchPosteriors alice = compute_branch_posteriors(s.alice, s.rho);

    // Q_B(E; 0): Bob certain of not-E.
    const ComplexMatrix q_b0 = assignment_projector(s.bob, s.property, 0.0, s.rho, tol, tol);

    ZeroOneWitnessReport rep;
    ComplexMatrix q_a1 = zero(s.dim());
    ComplexMatrix c_a = zero(s.dim());
    for (int i = 0; i < alice.count(); ++i) {
        if (alice.weights[i] <= tol) continue;
        const double pe = inner(s.property, alice.updated[i]).real() / alice.weights[i];
        const double pb0 = inner(q_b0, alice.updated[i]).real() / alice.weights[i];
        rep.per_branch.push_back({i, pe, pb0});
        if (std::abs(pe - 1.0) <= tol) q_a1 = add(q_a1, s.alice.projectors[i]);
        if (pb0 >= 1.0 - tol) c_a = add(c_a, s.alice.projectors[i]);
    }
    rep.value = trace(matmul(matmul(q_a1, c_a), s.rho)).real();
    return rep;
}

double state_perturbation_bound(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b,
                                const ComplexMatrix& a_star, const ComplexMatrix& b_star,
                                double tol) {
    const double da = trace(matmul(b_star, matmul(a_star, rho_a))).real();
    const double db = trace(matmul(a_star, matmul(b_star, rho_b))).real();
    const double denom = std::max(da, db);
    if (denom <= tol)
        throw ZeroConditioningWeight("state_perturbation_bound: both denominators vanish");
    return 2.0 * trace_norm(sub(rho_a, rho_b)) / denom;
}

RecursionTrace run_epsilon_recursion(const Scenario& s, double q_alice, double q_bob,
                                     const EpsilonConfig& cfg, const RecursionOptions& opts) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1)");
    RecursionOptions eopts = opts;
    eopts.certainty_epsilon = cfg.epsilon;
    eopts.relax_assignment = cfg.relax_assignment;
    return run_recursion(s, q_alice, q_bob, eopts);
}

ComplexMatrix epsilon_certainty_projector(const Measurement& meas, const ComplexMatrix& prop,
                                          const ComplexMatrix& rho, double epsilon, double tol) {
    const BranchPosteriors bp = compute_branch_posteriors(meas, rho);
    ComplexMatrix out = zero(rho.dim);
    for (int k = 0; k < bp.count(); ++k) {
        if (bp.weights[k] <= tol) continue;
        const double p = inner(prop, bp.updated[k]).real() / bp.weights[k];
        if (p >= 1.0 - epsilon - tol) out = add(out, meas.projectors[k]);
    }
    return out;
}

}  // namespace qagree
