#include "doctest.h"
#include "qagree/linalg.hpp"
#include "test_support.hpp"

using namespace qagree;
using namespace qagree::testing;

TEST_CASE("matmul basics") {
    CHECK(max_abs(sub(matmul(identity(2), identity(2)), identity(2))) == 0.0);
    const ComplexMatrix x = pauli_x();
    CHECK(max_abs(sub(matmul(x, x), identity(2))) == 0.0);
    CHECK_THROWS_AS(matmul(identity(2), identity(3)), DimensionMismatch);
}

TEST_CASE("matmul matches the triple-loop reference") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 3);
        const ComplexMatrix b = random_matrix(rng, 3);
        CHECK(max_abs(sub(matmul(a, b), matmul_reference(a, b))) < 1e-12);
    }
}

TEST_CASE("kron basics") {
    CHECK(max_abs(sub(kron(identity(2), identity(3)), identity(6))) == 0.0);

    ComplexMatrix ket0(2);
    ket0(0, 0) = 1.0;
    const ComplexMatrix k = kron(ket0, identity(2));
    ComplexMatrix expect(4);
    expect(0, 0) = 1.0;
    expect(1, 1) = 1.0;
    CHECK(max_abs(sub(k, expect)) == 0.0);
}

TEST_CASE("kron mixed-product identity on random inputs") {
    Rng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
        const ComplexMatrix c = random_matrix(rng, 2), d = random_matrix(rng, 2);
        const ComplexMatrix lhs = matmul(kron(a, b), kron(c, d));
        const ComplexMatrix rhs = kron(matmul(a, c), matmul(b, d));
        CHECK(max_abs(sub(lhs, rhs)) < 1e-12);
    }
    // dimensions up to 16 in the product
    const ComplexMatrix a = random_matrix(rng, 4), b = random_matrix(rng, 4);
    const ComplexMatrix c = random_matrix(rng, 4), d = random_matrix(rng, 4);
    CHECK(max_abs(sub(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d)))) < 1e-12);
}

TEST_CASE("kron associativity") {
    Rng rng(13);
    const ComplexMatrix a = random_matrix(rng, 2);
    const ComplexMatrix b = random_matrix(rng, 3);
    const ComplexMatrix c = random_matrix(rng, 2);
    CHECK(max_abs(sub(kron(kron(a, b), c), kron(a, kron(b, c)))) == 0.0);
}

TEST_CASE("trace basics and cyclicity") {
    CHECK(trace(identity(4)) == cplx(4.0));
    ComplexMatrix m(2);
    m(0, 1) = 1.0;  // |0><1|
    CHECK(trace(m) == cplx(0.0));

    Rng rng(14);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 4);
        const ComplexMatrix b = random_matrix(rng, 4);
        CHECK(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12);
    }
}

TEST_CASE("adjoint") {
    CHECK(max_abs(sub(adjoint(identity(3)), identity(3))) == 0.0);
    Rng rng(15);
    const ComplexMatrix a = random_matrix(rng, 5);
    CHECK(max_abs(sub(adjoint(adjoint(a)), a)) == 0.0);

    ComplexMatrix m(2);
    m(0, 1) = cplx(0.0, 1.0);
    const ComplexMatrix md = adjoint(m);
    CHECK(md(0, 1) == cplx(0.0));
    CHECK(md(1, 0) == cplx(0.0, -1.0));
}

TEST_CASE("hermitian eigenvalues via Jacobi") {
    ComplexMatrix d(2);
    d(0, 0) = 1.5;
    d(1, 1) = -0.5;
    auto ev = eigenvalues_hermitian(d);
    CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.5).epsilon(1e-12));

    ev = eigenvalues_hermitian(pauli_x());
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));

    // trace and Frobenius norm are eigenvalue invariants
    Rng rng(16);
    for (int dim : {3, 6, 10}) {
        const ComplexMatrix h = random_hermitian(rng, dim);
        const auto evs = eigenvalues_hermitian(h);
        double sum = 0.0, sum2 = 0.0;
        for (double e : evs) {
            sum += e;
            sum2 += e * e;
        }
        CHECK(sum == doctest::Approx(trace(h).real()).epsilon(1e-10));
        const double f = frobenius_norm(h);
        CHECK(sum2 == doctest::Approx(f * f).epsilon(1e-10));
    }
}

TEST_CASE("trace_norm basics") {
    CHECK(trace_norm(identity(3)) == doctest::Approx(3.0).epsilon(1e-12));
    ComplexMatrix d(2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CHECK(trace_norm(d) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("trace_norm of density differences matches the Hermitian oracle") {
    Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix r1 = random_density(rng, 5);
        const ComplexMatrix r2 = random_density(rng, 5);
        const ComplexMatrix diff = sub(r1, r2);
        CHECK(trace_norm(diff) ==
              doctest::Approx(hermitian_trace_norm_reference(diff)).epsilon(1e-9));
    }
}

TEST_CASE("trace_norm is a norm") {
    Rng rng(18);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 4);
        const ComplexMatrix b = random_matrix(rng, 4);
        CHECK(trace_norm(a) >= 0.0);
        CHECK(trace_norm(add(a, b)) <= trace_norm(a) + trace_norm(b) + 1e-9);
    }
    CHECK(trace_norm(zero(4)) == doctest::Approx(0.0).epsilon(1e-12));
    // zero only on the zero matrix: any nonzero entry forces a positive norm
    ComplexMatrix m(3);
    m(1, 2) = 1e-3;
    CHECK(trace_norm(m) > 1e-4);
}

TEST_CASE("is_projector") {
    CHECK(is_projector(identity(2)));
    ComplexMatrix plus(2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    CHECK(is_projector(plus));
    ComplexMatrix bad(2);
    bad(0, 0) = 1.0;
    bad(0, 1) = 1.0;
    bad(1, 1) = 1.0;
    CHECK_FALSE(is_projector(bad));  // not Hermitian
    CHECK(is_projector(zero(3)));
}

TEST_CASE("is_density") {
    CHECK(is_density(scale(identity(2), 0.5)));
    ComplexMatrix pure(2);
    pure(0, 0) = 1.0;
    CHECK(is_density(pure));
    ComplexMatrix neg(2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_FALSE(is_density(neg));
}

TEST_CASE("commutator_norm") {
    ComplexMatrix d1(2), d2(2);
    d1(0, 0) = 1.0;
    d1(1, 1) = 2.0;
    d2(0, 0) = -3.0;
    d2(1, 1) = 7.0;
    CHECK(commutator_norm(d1, d2) == 0.0);
    CHECK(commutator_norm(pauli_x(), pauli_z()) == doctest::Approx(2.0).epsilon(1e-12));
}
