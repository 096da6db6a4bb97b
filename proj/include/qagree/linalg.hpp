#pragma once

#include <complex>
#include <vector>

#include "qagree/errors.hpp"

namespace qagree {

using cplx = std::complex<double>;

// Default tolerance for every check the theory states as an exact equality.
inline constexpr double TOL = 1e-9;

// Dense square complex matrix, row-major. Immutable by convention once built;
// all operations below are pure functions.
struct ComplexMatrix {
    int dim = 0;
    std::vector<cplx> data;  // dim*dim entries

    ComplexMatrix() = default;
    explicit ComplexMatrix(int d) : dim(d), data(static_cast<size_t>(d) * d) {}
    ComplexMatrix(int d, std::vector<cplx> entries);

    cplx& operator()(int i, int j) { return data[static_cast<size_t>(i) * dim + j]; }
    const cplx& operator()(int i, int j) const { return data[static_cast<size_t>(i) * dim + j]; }

    bool is_finite() const;
};

ComplexMatrix identity(int dim);
ComplexMatrix zero(int dim);

// |v><v| for a (not necessarily normalized) vector.
ComplexMatrix outer(const std::vector<cplx>& v);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx s);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }

// Largest entry magnitude.
double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

// Tr(a^† b), the Frobenius inner product. O(dim^2); used heavily by the
// certainty recursion to avoid full products.
cplx inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
// Off-diagonal Frobenius norm threshold 1e-12, at most `max_sweeps` sweeps.
// The input is symmetrized before iterating.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a, int max_sweeps = 100);

// Sum of singular values, via the Hermitian eigenvalues of a^†a.
double trace_norm(const ComplexMatrix& a);

// ||a^2 - a||_max <= tol and ||a - a^†||_max <= tol.
bool is_projector(const ComplexMatrix& a, double tol = TOL);

// Hermitian within tol, trace within tol of 1, eigenvalues >= -tol.
bool is_density(const ComplexMatrix& a, double tol = TOL);

// Max-entry magnitude of pq - qp.
double commutator_norm(const ComplexMatrix& p, const ComplexMatrix& q);

}  // namespace qagree
