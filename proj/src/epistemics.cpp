#include "qagree/epistemics.hpp"

#include <algorithm>
#include <cmath>

namespace qagree {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Tr(prop * T) for Hermitian prop and T.
double real_overlap(const ComplexMatrix& prop, const ComplexMatrix& t) {
    return inner(prop, t).real();
}

ComplexMatrix sum_branches(const Measurement& meas, const std::vector<int>& branches, int dim) {
    ComplexMatrix out = zero(dim);
    for (int k : branches) out = add(out, meas.projectors[k]);
    return out;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

BranchPosteriors compute_branch_posteriors(const Measurement& meas, const ComplexMatrix& rho) {
    BranchPosteriors bp;
    bp.weights.reserve(meas.projectors.size());
    bp.updated.reserve(meas.projectors.size());
    for (const ComplexMatrix& p : meas.projectors) {
        ComplexMatrix t = matmul(matmul(p, rho), p);
        bp.weights.push_back(trace(t).real());
        bp.updated.push_back(std::move(t));
    }
    return bp;
}

std::vector<BranchProbability> branch_probabilities(const Measurement& meas,
                                                    const ComplexMatrix& prop,
                                                    const ComplexMatrix& rho, double tol) {
    const BranchPosteriors bp = compute_branch_posteriors(meas, rho);
    std::vector<BranchProbability> out;
    for (int k = 0; k < bp.count(); ++k) {
        if (bp.weights[k] <= tol) continue;
        out.push_back({k, bp.weights[k], clamp01(real_overlap(prop, bp.updated[k]) / bp.weights[k])});
    }
    return out;
}

ConditionalProbability cond_prob(const ComplexMatrix& prop, const ComplexMatrix& cond,
                                 const ComplexMatrix& rho, double tol) {
    const ComplexMatrix t = matmul(matmul(cond, rho), cond);
    const double w = trace(t).real();
    if (w <= tol) throw ZeroConditioningWeight("cond_prob: conditioning weight is zero");
    return {clamp01(real_overlap(prop, t) / w), w};
}

ComplexMatrix luders_update(const ComplexMatrix& cond, const ComplexMatrix& rho, double tol) {
    ComplexMatrix t = matmul(matmul(cond, rho), cond);
    const double w = trace(t).real();
    if (w <= tol) throw ZeroConditioningWeight("luders_update: conditioning weight is zero");
    return scale(t, 1.0 / w);
}

namespace {

// Branch index set K_X(F; q) evaluated from precomputed posteriors.
std::vector<int> assignment_branches(const BranchPosteriors& bp, const ComplexMatrix& prop,
                                     double q, double tol_q, double tol) {
    std::vector<int> out;
    for (int k = 0; k < bp.count(); ++k) {
        if (bp.weights[k] <= tol) continue;
        const double p = clamp01(real_overlap(prop, bp.updated[k]) / bp.weights[k]);
        if (std::abs(p - q) <= tol_q) out.push_back(k);
    }
    return out;
}

// Certainty set: prob >= 1 - epsilon, with `tol` of numerical slack so that
// the epsilon -> 0 limit coincides with the exact-certainty recursion.
std::vector<int> certainty_branches(const BranchPosteriors& bp, const ComplexMatrix& prop,
                                    double epsilon, double tol) {
    std::vector<int> out;
    for (int k = 0; k < bp.count(); ++k) {
        if (bp.weights[k] <= tol) continue;
        const double p = real_overlap(prop, bp.updated[k]) / bp.weights[k];
        if (p >= 1.0 - epsilon - tol) out.push_back(k);
    }
    return out;
}

}  // namespace

ComplexMatrix assignment_projector(const Measurement& meas, const ComplexMatrix& prop, double q,
                                   const ComplexMatrix& rho, double tol_q, double tol) {
    const BranchPosteriors bp = compute_branch_posteriors(meas, rho);
    return sum_branches(meas, assignment_branches(bp, prop, q, tol_q, tol), rho.dim);
}

ComplexMatrix certainty_projector(const Measurement& meas, const ComplexMatrix& prop,
                                  const ComplexMatrix& rho, double tol) {
    return assignment_projector(meas, prop, 1.0, rho, tol, tol);
}

RecursionTrace run_recursion(const Scenario& s, double q_alice, double q_bob,
                             const RecursionOptions& opts) {
    return run_recursion(s, compute_branch_posteriors(s.alice, s.rho),
                         compute_branch_posteriors(s.bob, s.rho), q_alice, q_bob, opts);
}

RecursionTrace run_recursion(const Scenario& s, const BranchPosteriors& alice,
                             const BranchPosteriors& bob, double q_alice, double q_bob,
                             const RecursionOptions& opts) {
    const int dim = s.dim();
    const double assign_tol = opts.relax_assignment
                                  ? std::max(opts.tol_q, opts.certainty_epsilon)
                                  : opts.tol_q;

    RecursionTrace trace;
    std::vector<int> a_set = assignment_branches(alice, s.property, q_alice, assign_tol, opts.tol);
    std::vector<int> b_set = assignment_branches(bob, s.property, q_bob, assign_tol, opts.tol);

    auto push_level = [&](const std::vector<int>& a, const std::vector<int>& b) {
        RecursionLevel lvl{sum_branches(s.alice, a, dim), sum_branches(s.bob, b, dim), a, b};
        if (!is_projector(lvl.a, opts.tol) || !is_projector(lvl.b, opts.tol))
            throw NonProjectorProduct("certainty recursion produced a non-projector level");
        trace.levels.push_back(std::move(lvl));
    };
    push_level(a_set, b_set);

    const int cap = s.alice.count() + s.bob.count() + 1;
    for (int n = 0; n < cap; ++n) {
        const RecursionLevel& cur = trace.levels.back();
        // Certainty of the other agent's level-n operator, per branch.
        const std::vector<int> ca =
            certainty_branches(alice, cur.b, opts.certainty_epsilon, opts.tol);
        const std::vector<int> cb =
            certainty_branches(bob, cur.a, opts.certainty_epsilon, opts.tol);
        std::vector<int> a_next = intersect_sorted(cur.a_branches, ca);
        std::vector<int> b_next = intersect_sorted(cur.b_branches, cb);
        if (a_next == cur.a_branches && b_next == cur.b_branches) {
            trace.stabilization_index = n;
            trace.a_star = cur.a;
            trace.b_star = cur.b;
            trace.c_star = matmul(trace.a_star, trace.b_star);
            trace.cc_weight = qagree::trace(matmul(trace.c_star, s.rho)).real();
            return trace;
        }
        push_level(a_next, b_next);
    }
    // Unreachable: every non-stable step drops at least one branch projector.
    throw Error("certainty recursion exceeded its iteration cap");
}

Classification classify(const Scenario& s, double q_alice, double q_bob,
                        const RecursionOptions& opts) {
    return classify(s, compute_branch_posteriors(s.alice, s.rho),
                    compute_branch_posteriors(s.bob, s.rho), q_alice, q_bob, opts);
}

Classification classify(const Scenario& s, const BranchPosteriors& alice,
                        const BranchPosteriors& bob, double q_alice, double q_bob,
                        const RecursionOptions& opts) {
    Classification c;
    c.q_alice = q_alice;
    c.q_bob = q_bob;
    c.trace = run_recursion(s, alice, bob, q_alice, q_bob, opts);
    if (c.trace.cc_weight <= opts.tol)
        c.kind = OutcomeKind::NoCommonCertainty;
    else if (std::abs(q_alice - q_bob) <= opts.tol)
        c.kind = OutcomeKind::Agreement;
    else
        c.kind = OutcomeKind::CCD;
    return c;
}

double verify_nondisturbance(const RecursionTrace& rt, const ComplexMatrix& rho, double tol) {
    const ComplexMatrix a_rho_a = matmul(matmul(rt.a_star, rho), rt.a_star);
    const double wa = trace(a_rho_a).real();
    const ComplexMatrix ba_rho_ab = matmul(matmul(rt.b_star, a_rho_a), rt.b_star);
    const double wba = trace(matmul(rt.b_star, matmul(rt.a_star, rho))).real();
    if (wa <= tol || wba <= tol)
        throw ZeroConditioningWeight("verify_nondisturbance: vanishing conditioning weight");
    return max_abs(sub(scale(ba_rho_ab, 1.0 / wba), scale(a_rho_a, 1.0 / wa)));
}

}  // namespace qagree
