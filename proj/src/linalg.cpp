#include "qagree/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qagree {

ComplexMatrix::ComplexMatrix(int d, std::vector<cplx> entries) : dim(d), data(std::move(entries)) {
    if (dim < 0 || data.size() != static_cast<size_t>(dim) * dim)
        throw DimensionMismatch("entry count does not match dim*dim");
    if (!is_finite()) throw ValidationError("matrix has non-finite entries");
}

bool ComplexMatrix::is_finite() const {
    for (const cplx& z : data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

ComplexMatrix outer(const std::vector<cplx>& v) {
    const int n = static_cast<int>(v.size());
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw DimensionMismatch("matmul: dimension mismatch");
    const int n = a.dim;
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i) {
        const cplx* arow = &a.data[static_cast<size_t>(i) * n];
        cplx* crow = &c.data[static_cast<size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx{}) continue;
            const cplx* brow = &b.data[static_cast<size_t>(k) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim, m = b.dim;
    ComplexMatrix c(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) c(i * m + k, j * m + l) = aij * b(k, l);
        }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

cplx trace(const ComplexMatrix& a) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim; ++i) t += a(i, i);
    return t;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw DimensionMismatch("add: dimension mismatch");
    ComplexMatrix c(a.dim);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] + b.data[i];
    return c;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw DimensionMismatch("sub: dimension mismatch");
    ComplexMatrix c(a.dim);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
    return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx s) {
    ComplexMatrix c(a.dim);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] * s;
    return c;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& z : a.data) m = std::max(m, std::abs(z));
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.data) s += std::norm(z);
    return std::sqrt(s);
}

cplx inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw DimensionMismatch("inner: dimension mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) s += std::conj(a.data[i]) * b.data[i];
    return s;
}

namespace {

double offdiag_norm(const ComplexMatrix& h) {
    double s = 0.0;
    for (int p = 0; p < h.dim; ++p)
        for (int q = p + 1; q < h.dim; ++q) s += 2.0 * std::norm(h(p, q));
    return std::sqrt(s);
}

}  // namespace

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a, int max_sweeps) {
    const int n = a.dim;
    // Symmetrize; callers pass Hermitian matrices up to rounding.
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    constexpr double off_threshold = 1e-12;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(h) <= off_threshold) {
            std::vector<double> ev(n);
            for (int i = 0; i < n; ++i) ev[i] = h(i, i).real();
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx hpq = h(p, q);
                const double apq = std::abs(hpq);
                if (apq <= 1e-300) continue;
                const cplx phase = hpq / apq;  // h(p,q) = apq * e^{i phi}
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                // Zero h(p,q) with the rotation
                //   R_pp = c, R_pq = -s e^{i phi}, R_qp = s e^{-i phi}, R_qq = c,
                // where t = tan(theta) is the smaller-magnitude root of
                // t^2 - 2*tau*t - 1 = 0, in the rationalized form that stays
                // accurate for large |tau|.
                const double tau = (aqq - app) / (2.0 * apq);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = -sign / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Columns p, q:  col_p' = c*col_p + s*conj(phase)*col_q ... applied
                // as H <- R^dag H R with the structure above.
                for (int i = 0; i < n; ++i) {
                    const cplx hip = h(i, p);
                    const cplx hiq = h(i, q);
                    h(i, p) = c * hip + s * std::conj(phase) * hiq;
                    h(i, q) = -s * phase * hip + c * hiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx hpj = h(p, j);
                    const cplx hqj = h(q, j);
                    h(p, j) = c * hpj + s * phase * hqj;
                    h(q, j) = -s * std::conj(phase) * hpj + c * hqj;
                }
            }
    }
    if (offdiag_norm(h) <= off_threshold) {
        std::vector<double> ev(n);
        for (int i = 0; i < n; ++i) ev[i] = h(i, i).real();
        std::sort(ev.begin(), ev.end());
        return ev;
    }
    throw EigensolverFailure("Jacobi iteration did not converge within sweep limit");
}

double trace_norm(const ComplexMatrix& a) {
    const ComplexMatrix ata = matmul(adjoint(a), a);
    double s = 0.0;
    for (double ev : eigenvalues_hermitian(ata)) s += std::sqrt(std::max(ev, 0.0));
    return s;
}

bool is_projector(const ComplexMatrix& a, double tol) {
    if (max_abs(sub(a, adjoint(a))) > tol) return false;
    return max_abs(sub(matmul(a, a), a)) <= tol;
}

bool is_density(const ComplexMatrix& a, double tol) {
    if (max_abs(sub(a, adjoint(a))) > tol) return false;
    if (std::abs(trace(a) - cplx{1.0}) > tol) return false;
    for (double ev : eigenvalues_hermitian(a))
        if (ev < -tol) return false;
    return true;
}

double commutator_norm(const ComplexMatrix& p, const ComplexMatrix& q) {
    return max_abs(sub(matmul(p, q), matmul(q, p)));
}

}  // namespace qagree
