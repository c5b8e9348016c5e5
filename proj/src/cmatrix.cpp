#include "wfield/cmatrix.hpp"

#include <cmath>
#include <cstddef>

namespace wfield {

CMatrix::CMatrix(int n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
    if (n < 0 || a_.size() != static_cast<std::size_t>(n) * n)
        throw InvalidInput("CMatrix: entry count does not match dimension");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
    CMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int n = static_cast<int>(rows.size());
    CMatrix m(n);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw InvalidInput("CMatrix::from_rows: ragged rows");
        int j = 0;
        for (cplx v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double s = 0.0;
    for (const cplx& v : a_) s = std::max(s, std::abs(v));
    return s;
}

bool CMatrix::is_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CVector CMatrix::apply(std::span<const cplx> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw InvalidInput("CMatrix::apply: dimension mismatch");
    CVector y(n_);
    for (int i = 0; i < n_; ++i) {
        cplx s = 0.0;
        const cplx* row = a_.data() + static_cast<std::size_t>(i) * n_;
        for (int j = 0; j < n_; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rhs.n_ != n_) throw InvalidInput("CMatrix: dimension mismatch in +");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rhs.n_ != n_) throw InvalidInput("CMatrix: dimension mismatch in -");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.n_ != b.n_) throw InvalidInput("CMatrix: dimension mismatch in *");
    const int n = a.n_;
    CMatrix c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            const cplx* brow = b.a_.data() + static_cast<std::size_t>(k) * n;
            cplx* crow = c.a_.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.n() != b.n()) return false;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    return true;
}

CMatrix hermitian_part(const CMatrix& a, double theta) {
    const cplx w = std::polar(1.0, -theta);
    const int n = a.n();
    CMatrix h(n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = cplx((w * a(i, i)).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (w * a(i, j) + std::conj(w * a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    const int na = a.n(), nb = b.n();
    CMatrix c(na + nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) c(i, j) = a(i, j);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) c(na + i, na + j) = b(i, j);
    return c;
}

CMatrix rank_one(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw InvalidInput("rank_one: dimension mismatch");
    const double nx = vec_norm(x), ny = vec_norm(y);
    if (nx < 1e-12 || ny < 1e-12) throw ZeroVector("rank_one: zero vector");
    if (std::abs(nx - 1.0) > 1e-12 || std::abs(ny - 1.0) > 1e-12)
        throw ZeroVector("rank_one: arguments must be unit vectors");
    const int n = static_cast<int>(x.size());
    CMatrix b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = x[i] * std::conj(y[j]);
    return b;
}

CMatrix unitary_conjugate(const CMatrix& a, const CMatrix& u) {
    if (a.n() != u.n()) throw InvalidInput("unitary_conjugate: dimension mismatch");
    const int n = u.n();
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += std::conj(u(k, i)) * u(k, j);
            if (i == j) s -= 1.0;
            dev += std::norm(s);
        }
    }
    if (std::sqrt(dev) > 1e-10 * std::sqrt(static_cast<double>(std::max(n, 1))))
        throw NonUnitary("unitary_conjugate: U is not unitary");
    return u * a * u.adjoint();
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw InvalidInput("inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

double vec_norm(std::span<const cplx> x) {
    double s = 0.0;
    for (const cplx& v : x) s += std::norm(v);
    return std::sqrt(s);
}

void normalize(std::span<cplx> x) {
    const double nx = vec_norm(x);
    if (nx < 1e-200) throw ZeroVector("normalize: zero vector");
    for (cplx& v : x) v /= nx;
}

cplx quadratic_form(const CMatrix& a, std::span<const cplx> x) {
    return inner(a.apply(x), x);
}

} // namespace wfield
