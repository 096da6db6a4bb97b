#pragma once

#include <vector>

#include "qagree/linalg.hpp"
#include "qagree/scenarios.hpp"

namespace qagree::testing {

inline ComplexMatrix random_matrix(Rng& rng, int dim) {
    ComplexMatrix m(dim);
    for (cplx& z : m.data) z = rng.complex_gaussian();
    return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, int dim) {
    const ComplexMatrix g = random_matrix(rng, dim);
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline ComplexMatrix random_density(Rng& rng, int dim) {
    const ComplexMatrix g = random_matrix(rng, dim);
    ComplexMatrix w = matmul(g, adjoint(g));
    return scale(w, 1.0 / trace(w).real());
}

// Reference O(n^3) product, written as the plain triple loop.
inline ComplexMatrix matmul_reference(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < a.dim; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

// Trace norm of a Hermitian matrix as the sum of |eigenvalue|, computed
// directly from the matrix rather than from a^dag a.
inline double hermitian_trace_norm_reference(const ComplexMatrix& h) {
    double s = 0.0;
    for (double ev : eigenvalues_hermitian(h)) s += std::abs(ev);
    return s;
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

}  // namespace qagree::testing
