#include "qagree/register.hpp"

namespace qagree {

namespace {

ComplexMatrix basis_projector(int dim, int k) {
    ComplexMatrix m(dim);
    m(k, k) = 1.0;
    return m;
}

}  // namespace

RecordedScenario build_recorded(const Scenario& s, double tol) {
    for (const ComplexMatrix& pa : s.alice.projectors)
        for (const ComplexMatrix& pb : s.bob.projectors)
            if (commutator_norm(pa, pb) > tol)
                throw NonCommutingMeasurements(
                    "recording requires Alice's and Bob's projectors to commute");

    RecordedScenario rs;
    rs.base = s;
    const int la = s.alice.count(), lb = s.bob.count();
    for (int i = 0; i < la; ++i)
        for (int j = 0; j < lb; ++j) rs.transcripts.transcripts.emplace_back(i, j);

    const int dim = s.dim();
    const int rdim = rs.transcripts.register_dim();
    rs.rho_prime = zero(dim * rdim);
    for (int r = 0; r < rdim; ++r) {
        const auto [i, j] = rs.transcripts.transcripts[r];
        ComplexMatrix m = matmul(s.alice.projectors[i], s.bob.projectors[j]);
        ComplexMatrix block = matmul(matmul(m, s.rho), adjoint(m));
        rs.block_weights.push_back(trace(block).real());
        rs.rho_prime = add(rs.rho_prime, kron(block, basis_projector(rdim, r)));
        rs.kraus.push_back(std::move(m));
    }

    const ComplexMatrix id_base = identity(dim);
    for (int i = 0; i < la; ++i) {
        ComplexMatrix pi(rdim);
        for (int r = 0; r < rdim; ++r)
            if (rs.transcripts.alice_outcome(r) == i) pi(r, r) = 1.0;
        rs.alice_reg_projectors.push_back(kron(id_base, pi));
    }
    for (int j = 0; j < lb; ++j) {
        ComplexMatrix pi(rdim);
        for (int r = 0; r < rdim; ++r)
            if (rs.transcripts.bob_outcome(r) == j) pi(r, r) = 1.0;
        rs.bob_reg_projectors.push_back(kron(id_base, pi));
    }
    rs.property_ext = kron(s.property, identity(rdim));
    return rs;
}

ConditionalProbability recorded_cond_prob(const RecordedScenario& rs,
                                          const ComplexMatrix& prop_ext,
                                          const ComplexMatrix& reg_proj, double tol) {
    return cond_prob(prop_ext, reg_proj, rs.rho_prime, tol);
}

Scenario recorded_as_scenario(const RecordedScenario& rs) {
    HilbertFactorization f{{rs.base.dim(), rs.transcripts.register_dim()},
                           {FactorRole::Inaccessible, FactorRole::Shared}};
    Measurement alice{Agent::Alice, rs.alice_reg_projectors};
    Measurement bob{Agent::Bob, rs.bob_reg_projectors};
    return make_scenario(std::move(f), rs.rho_prime, std::move(alice), std::move(bob),
                         rs.property_ext);
}

RecursionTrace run_recorded_recursion(const RecordedScenario& rs, double q_alice, double q_bob,
                                      const RecursionOptions& opts) {
    return run_recursion(recorded_as_scenario(rs), q_alice, q_bob, opts);
}

Classification classify_recorded(const RecordedScenario& rs, double q_alice, double q_bob,
                                 const RecursionOptions& opts) {
    return classify(recorded_as_scenario(rs), q_alice, q_bob, opts);
}

}  // namespace qagree
