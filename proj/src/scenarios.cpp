#include "qagree/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qagree {

double Rng::uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
}

double Rng::gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

namespace {

std::vector<cplx> basis_vector(int dim, int k) {
    std::vector<cplx> v(dim);
    v[k] = 1.0;
    return v;
}

// Projector onto the span of computational basis vectors `lo..lo+count-1`.
ComplexMatrix span_projector(int dim, int lo, int count) {
    ComplexMatrix p(dim);
    for (int i = lo; i < lo + count; ++i) p(i, i) = 1.0;
    return p;
}

// Random orthonormal basis of C^dim via Gram-Schmidt on Gaussian vectors.
std::vector<std::vector<cplx>> random_orthonormal_basis(Rng& rng, int dim) {
    std::vector<std::vector<cplx>> basis;
    while (static_cast<int>(basis.size()) < dim) {
        std::vector<cplx> v(dim);
        for (cplx& z : v) z = rng.complex_gaussian();
        for (int pass = 0; pass < 2; ++pass)  // reorthogonalize once
            for (const auto& u : basis) {
                cplx ov = 0.0;
                for (int i = 0; i < dim; ++i) ov += std::conj(u[i]) * v[i];
                for (int i = 0; i < dim; ++i) v[i] -= ov * u[i];
            }
        double n2 = 0.0;
        for (const cplx& z : v) n2 += std::norm(z);
        if (n2 < 1e-12) continue;  // redraw (essentially never)
        const double inv = 1.0 / std::sqrt(n2);
        for (cplx& z : v) z *= inv;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Partition a random orthonormal basis into subspace projectors of the given
// dimensions.
std::vector<ComplexMatrix> random_subspace_measurement(Rng& rng, int dim,
                                                       const std::vector<int>& branch_dims) {
    int sum = 0;
    for (int d : branch_dims) {
        if (d <= 0) throw ValidationError("branch dimensions must be positive");
        sum += d;
    }
    if (sum != dim) throw ValidationError("branch dimensions must partition the factor dimension");
    const auto basis = random_orthonormal_basis(rng, dim);
    std::vector<ComplexMatrix> projs;
    int at = 0;
    for (int d : branch_dims) {
        ComplexMatrix p = zero(dim);
        for (int k = 0; k < d; ++k) p = add(p, outer(basis[at + k]));
        projs.push_back(std::move(p));
        at += d;
    }
    return projs;
}

ComplexMatrix random_projector(Rng& rng, int dim, int rank) {
    const auto basis = random_orthonormal_basis(rng, dim);
    ComplexMatrix p = zero(dim);
    for (int k = 0; k < rank; ++k) p = add(p, outer(basis[k]));
    return p;
}

std::vector<cplx> random_pure_state(Rng& rng, int dim) {
    std::vector<cplx> v(dim);
    double n2 = 0.0;
    for (cplx& z : v) {
        z = rng.complex_gaussian();
        n2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& z : v) z *= inv;
    return v;
}

}  // namespace

Scenario example1(double theta) {
    // H_A = C^4 (two 2-dim sectors), H_B = C^6 (three), H_C = C^2.
    const HilbertFactorization f{{4, 6, 2},
                                 {FactorRole::Alice, FactorRole::Bob, FactorRole::Inaccessible}};
    const int dim = f.total_dim();

    // Bell state on sector pair (A_i given by rows a0,a1) x (B_j by b0,b1),
    // tensored with the C qubit in |c>.
    auto sector_bell = [&](int a0, int a1, int b0, int b1, int c) {
        std::vector<cplx> v(dim);
        const double amp = 1.0 / std::sqrt(2.0);
        v[(a0 * 6 + b0) * 2 + c] = amp;
        v[(a1 * 6 + b1) * 2 + c] = amp;
        return v;
    };
    const auto t1 = sector_bell(0, 1, 0, 1, 0);  // A0 x B0, |0>_C
    const auto t2 = sector_bell(2, 3, 2, 3, 0);  // A1 x B1, |0>_C
    const auto t3 = sector_bell(2, 3, 4, 5, 1);  // A1 x B2, |1>_C
    std::vector<cplx> psi(dim);
    const double w = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < dim; ++i) psi[i] = w * (t1[i] + t2[i] + t3[i]);

    const std::vector<ComplexMatrix> alice_blocks{span_projector(4, 0, 2), span_projector(4, 2, 2)};
    const std::vector<ComplexMatrix> bob_blocks{span_projector(6, 0, 2), span_projector(6, 2, 2),
                                                span_projector(6, 4, 2)};
    const std::vector<cplx> phi_theta{std::cos(theta / 2.0), std::sin(theta / 2.0)};
    const ComplexMatrix property = embed_local(outer(phi_theta), 2, f);
    return scenario_from_pure_state(f, psi, alice_blocks, bob_blocks, property);
}

Scenario example2() {
    const HilbertFactorization f{{3, 2, 2},
                                 {FactorRole::Alice, FactorRole::Bob, FactorRole::Inaccessible}};
    const int dim = f.total_dim();
    std::vector<cplx> psi(dim);
    const double w = 1.0 / std::sqrt(3.0);
    psi[(0 * 2 + 0) * 2 + 0] = w;  // |0>_A |b0>_B |0>_C
    psi[(1 * 2 + 0) * 2 + 0] = w;  // |1>_A |b0>_B |0>_C
    psi[(2 * 2 + 1) * 2 + 1] = w;  // |2>_A |b1>_B |1>_C

    std::vector<ComplexMatrix> alice_blocks, bob_blocks;
    for (int i = 0; i < 3; ++i) alice_blocks.push_back(outer(basis_vector(3, i)));
    for (int j = 0; j < 2; ++j) bob_blocks.push_back(outer(basis_vector(2, j)));

    // P_E = |phi><phi| on A x C, phi = (|0>_A|0>_C + |1>_A|0>_C)/sqrt(2).
    std::vector<cplx> phi(6);
    phi[0 * 2 + 0] = 1.0 / std::sqrt(2.0);
    phi[1 * 2 + 0] = 1.0 / std::sqrt(2.0);
    const ComplexMatrix property = embed_on_factors(outer(phi), {0, 2}, f);
    return scenario_from_pure_state(f, psi, alice_blocks, bob_blocks, property);
}

std::vector<int> random_branch_dims(Rng& rng, int dim) {
    std::vector<int> parts;
    int left = dim;
    while (left > 0) {
        const int d = rng.uniform_int(1, left);
        parts.push_back(d);
        left -= d;
    }
    return parts;
}

Scenario random_commuting_scenario(uint64_t seed, const std::vector<int>& dims,
                                   const std::vector<int>& alice_branch_dims,
                                   const std::vector<int>& bob_branch_dims) {
    if (dims.size() != 3) throw ValidationError("expected three factor dimensions");
    for (int d : dims)
        if (d < 2) throw ValidationError("factor dimensions must be at least 2");
    Rng rng(seed);
    const HilbertFactorization f{dims,
                                 {FactorRole::Alice, FactorRole::Bob, FactorRole::Inaccessible}};
    const auto alice_blocks = random_subspace_measurement(rng, dims[0], alice_branch_dims);
    const auto bob_blocks = random_subspace_measurement(rng, dims[1], bob_branch_dims);
    const int rank = rng.uniform_int(1, dims[2] - 1);
    const ComplexMatrix property = embed_local(random_projector(rng, dims[2], rank), 2, f);
    return scenario_from_pure_state(f, random_pure_state(rng, f.total_dim()), alice_blocks,
                                    bob_blocks, property);
}

Scenario random_noncommuting_scenario(uint64_t seed, const std::vector<int>& dims) {
    if (dims.size() != 3) throw ValidationError("expected three factor dimensions");
    for (int d : dims)
        if (d < 2) throw ValidationError("factor dimensions must be at least 2");
    Rng rng(seed);
    const HilbertFactorization f{dims,
                                 {FactorRole::Alice, FactorRole::Bob, FactorRole::Inaccessible}};
    const auto alice_blocks = random_subspace_measurement(rng, dims[0], random_branch_dims(rng, dims[0]));
    const auto bob_blocks = random_subspace_measurement(rng, dims[1], random_branch_dims(rng, dims[1]));
    const int dac = dims[0] * dims[2];
    const int rank = rng.uniform_int(1, dac - 1);
    const ComplexMatrix property =
        embed_on_factors(random_projector(rng, dac, rank), {0, 2}, f);
    return scenario_from_pure_state(f, random_pure_state(rng, f.total_dim()), alice_blocks,
                                    bob_blocks, property);
}

ClassicalModel pooling_model() {
    // Rows {0,1},{2,3} for Alice, columns {0,2},{1,3} for Bob, event {0,3}.
    const Rational q(1, 4);
    return make_classical_model(4, {q, q, q, q}, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {0, 3});
}

NoSignalingBox zero_one_box() {
    using C = NoSignalingBox::Context;
    const Rational h(1, 2), q(1, 4), z(0);
    // rows over (0,0), (1,0), (0,1), (1,1)
    std::vector<C> contexts{
        C{0, 1, {h, z, q, q}},  // (a, b)
        C{0, 2, {h, z, q, q}},  // (a, e)
        C{1, 2, {z, h, h, z}},  // (b, e)
    };
    return make_no_signaling_box({"a", "b", "e"}, std::move(contexts));
}

ClassicalModel signed_box_measure() {
    // States are the 8 global assignments; bit 2 = a, bit 1 = b, bit 0 = e.
    std::vector<Rational> lam{{3, 16}, {5, 16}, {5, 16}, {-1, 16},
                              {-3, 16}, {3, 16}, {3, 16}, {1, 16}};
    std::vector<int> a0, a1, b0, b1, e1;
    std::vector<std::vector<int>> assignments;
    for (int s = 0; s < 8; ++s) {
        const int a = (s >> 2) & 1, b = (s >> 1) & 1, e = s & 1;
        assignments.push_back({a, b, e});
        (a ? a1 : a0).push_back(s);
        (b ? b1 : b0).push_back(s);
        if (e) e1.push_back(s);
    }
    ClassicalModel m = make_classical_model(8, std::move(lam), {a0, a1}, {b0, b1}, e1,
                                            /*signed_measure=*/true);
    m.labels = {"a", "b", "e"};
    m.assignments = std::move(assignments);
    return m;
}

ClassicalModel random_classical_model(uint64_t seed, int max_states) {
    Rng rng(seed);
    const int n = rng.uniform_int(3, max_states);
    // Random nonnegative integer weights, normalized exactly.
    std::vector<long long> raw(n);
    long long total = 0;
    for (long long& w : raw) {
        w = rng.uniform_int(0, 8);
        total += w;
    }
    if (total == 0) { raw[0] = 1; total = 1; }
    std::vector<Rational> weights;
    for (long long w : raw) weights.emplace_back(w, total);

    auto random_partition = [&](int cells_max) {
        const int cells = rng.uniform_int(1, std::min(cells_max, n));
        std::vector<std::vector<int>> parts(cells);
        for (int s = 0; s < n; ++s) parts[rng.uniform_int(0, cells - 1)].push_back(s);
        parts.erase(std::remove_if(parts.begin(), parts.end(),
                                   [](const std::vector<int>& c) { return c.empty(); }),
                    parts.end());
        return parts;
    };
    std::vector<int> event;
    for (int s = 0; s < n; ++s)
        if (rng.uniform() < 0.5) event.push_back(s);

    return make_classical_model(n, std::move(weights), random_partition(4), random_partition(4),
                                std::move(event));
}

}  // namespace qagree
