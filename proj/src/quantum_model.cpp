#include "qagree/quantum_model.hpp"

#include <cmath>

namespace qagree {

int HilbertFactorization::total_dim() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

int HilbertFactorization::factor_of(FactorRole role) const {
    for (size_t i = 0; i < roles.size(); ++i)
        if (roles[i] == role) return static_cast<int>(i);
    return -1;
}

ComplexMatrix embed_local(const ComplexMatrix& op, int factor_index,
                          const HilbertFactorization& factorization) {
    if (factor_index < 0 || factor_index >= static_cast<int>(factorization.dims.size()))
        throw DimensionMismatch("embed_local: factor index out of range");
    if (op.dim != factorization.dims[factor_index])
        throw DimensionMismatch("embed_local: operator does not match factor dimension");
    ComplexMatrix out = identity(1);
    for (size_t i = 0; i < factorization.dims.size(); ++i)
        out = kron(out, static_cast<int>(i) == factor_index ? op : identity(factorization.dims[i]));
    return out;
}

ComplexMatrix embed_on_factors(const ComplexMatrix& op, const std::vector<int>& factor_indices,
                               const HilbertFactorization& factorization) {
    const int nf = static_cast<int>(factorization.dims.size());
    int op_dim = 1;
    for (size_t i = 0; i < factor_indices.size(); ++i) {
        const int f = factor_indices[i];
        if (f < 0 || f >= nf) throw DimensionMismatch("embed_on_factors: factor index out of range");
        if (i > 0 && factor_indices[i] <= factor_indices[i - 1])
            throw DimensionMismatch("embed_on_factors: indices must be strictly increasing");
        op_dim *= factorization.dims[f];
    }
    if (op.dim != op_dim)
        throw DimensionMismatch("embed_on_factors: operator does not match joint factor dimension");

    const int total = factorization.total_dim();
    ComplexMatrix out(total);
    std::vector<int> row(nf), col(nf);
    for (int r = 0; r < total; ++r) {
        int x = r;
        for (int f = nf - 1; f >= 0; --f) { row[f] = x % factorization.dims[f]; x /= factorization.dims[f]; }
        for (int c = 0; c < total; ++c) {
            int y = c;
            for (int f = nf - 1; f >= 0; --f) { col[f] = y % factorization.dims[f]; y /= factorization.dims[f]; }
            bool rest_diag = true;
            for (int f = 0; f < nf && rest_diag; ++f) {
                bool selected = false;
                for (int g : factor_indices) selected |= (g == f);
                if (!selected && row[f] != col[f]) rest_diag = false;
            }
            if (!rest_diag) continue;
            int oi = 0, oj = 0;
            for (int g : factor_indices) {
                oi = oi * factorization.dims[g] + row[g];
                oj = oj * factorization.dims[g] + col[g];
            }
            out(r, c) = op(oi, oj);
        }
    }
    return out;
}

void validate_measurement(const Measurement& m, int dim, double tol) {
    const char* who = m.agent == Agent::Alice ? "alice" : "bob";
    if (m.projectors.empty())
        throw ValidationError(std::string(who) + ": measurement has no projectors");
    ComplexMatrix sum = zero(dim);
    for (size_t k = 0; k < m.projectors.size(); ++k) {
        const ComplexMatrix& p = m.projectors[k];
        if (p.dim != dim)
            throw ValidationError(std::string(who) + ": projector dimension mismatch");
        if (!p.is_finite())
            throw ValidationError(std::string(who) + ": projector has non-finite entries");
        if (!is_projector(p, tol))
            throw ValidationError(std::string(who) + ": element " + std::to_string(k) +
                                  " is not a projector");
        sum = add(sum, p);
    }
    for (size_t k = 0; k < m.projectors.size(); ++k)
        for (size_t l = k + 1; l < m.projectors.size(); ++l)
            if (max_abs(matmul(m.projectors[k], m.projectors[l])) > tol)
                throw ValidationError(std::string(who) + ": projectors " + std::to_string(k) +
                                      " and " + std::to_string(l) + " overlap");
    if (max_abs(sub(sum, identity(dim))) > tol)
        throw ValidationError(std::string(who) + ": projectors do not sum to the identity");
}

namespace {

void validate_factorization(const HilbertFactorization& f, int dim) {
    if (f.dims.empty()) throw ValidationError("factorization has no factors");
    if (f.dims.size() != f.roles.size())
        throw ValidationError("factorization dims/roles length mismatch");
    for (int d : f.dims)
        if (d <= 0) throw ValidationError("factor dimensions must be positive");
    if (f.total_dim() != dim)
        throw ValidationError("product of factor dimensions does not match operator dimension");
    int alice = 0, bob = 0;
    for (FactorRole r : f.roles) {
        alice += (r == FactorRole::Alice);
        bob += (r == FactorRole::Bob);
    }
    if (alice > 1 || bob > 1)
        throw ValidationError("at most one factor may be labeled Alice and one Bob");
}

}  // namespace

Scenario make_scenario(HilbertFactorization factorization, ComplexMatrix rho, Measurement alice,
                       Measurement bob, ComplexMatrix property, double tol) {
    const int dim = rho.dim;
    validate_factorization(factorization, dim);
    if (!rho.is_finite()) throw ValidationError("rho has non-finite entries");
    if (!is_density(rho, tol)) throw ValidationError("rho is not a density matrix");
    if (property.dim != dim) throw ValidationError("property dimension mismatch");
    if (!is_projector(property, tol)) throw ValidationError("property is not a projector");
    alice.agent = Agent::Alice;
    bob.agent = Agent::Bob;
    validate_measurement(alice, dim, tol);
    validate_measurement(bob, dim, tol);
    return Scenario{std::move(factorization), std::move(rho), std::move(alice), std::move(bob),
                    std::move(property)};
}

Scenario scenario_from_pure_state(const HilbertFactorization& factorization,
                                  const std::vector<cplx>& state_vector,
                                  const std::vector<ComplexMatrix>& alice_blocks,
                                  const std::vector<ComplexMatrix>& bob_blocks,
                                  const ComplexMatrix& property, double tol) {
    const int dim = factorization.total_dim();
    if (static_cast<int>(state_vector.size()) != dim)
        throw ValidationError("state vector length does not match total dimension");
    double norm2 = 0.0;
    for (const cplx& z : state_vector) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > tol) throw ValidationError("state vector is not normalized");

    const int ia = factorization.factor_of(FactorRole::Alice);
    const int ib = factorization.factor_of(FactorRole::Bob);
    if (ia < 0 || ib < 0)
        throw ValidationError("factorization must label one Alice factor and one Bob factor");

    Measurement alice{Agent::Alice, {}};
    for (const ComplexMatrix& blk : alice_blocks)
        alice.projectors.push_back(embed_local(blk, ia, factorization));
    Measurement bob{Agent::Bob, {}};
    for (const ComplexMatrix& blk : bob_blocks)
        bob.projectors.push_back(embed_local(blk, ib, factorization));

    return make_scenario(factorization, outer(state_vector), std::move(alice), std::move(bob),
                         property, tol);
}

CommutationReport check_commutation(const Scenario& s, double tol) {
    CommutationReport rep;
    double ab = 0.0, ae = 0.0, be = 0.0, st = 0.0;
    for (const ComplexMatrix& pa : s.alice.projectors) {
        for (const ComplexMatrix& pb : s.bob.projectors)
            ab = std::max(ab, commutator_norm(pa, pb));
        ae = std::max(ae, commutator_norm(pa, s.property));
        st = std::max(st, commutator_norm(pa, s.rho));
    }
    for (const ComplexMatrix& pb : s.bob.projectors) {
        be = std::max(be, commutator_norm(pb, s.property));
        st = std::max(st, commutator_norm(pb, s.rho));
    }
    rep.ab_ok = ab <= tol;
    rep.alice_e_ok = ae <= tol;
    rep.bob_e_ok = be <= tol;
    rep.max_violation = std::max(ab, std::max(ae, be));
    rep.state_ok = st <= tol;
    rep.state_violation = st;
    return rep;
}

std::string to_string(FactorRole role) {
    switch (role) {
        case FactorRole::Alice: return "alice";
        case FactorRole::Bob: return "bob";
        case FactorRole::Inaccessible: return "inaccessible";
        case FactorRole::Shared: return "shared";
    }
    return "?";
}

std::string to_string(Agent agent) { return agent == Agent::Alice ? "alice" : "bob"; }

}  // namespace qagree
