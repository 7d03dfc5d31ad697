// numerics.cpp — matrix arithmetic and the Hermitian eigensolver

#include "qptsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace qptsim::num {

namespace {
constexpr const char* kModule = "numerics";

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail_validation(kModule, "shape_mismatch", std::string(op) + ": operand shapes differ");
}
} // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "sub");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cx ComplexMatrix::trace() const {
    cx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::max_asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    if (rows_ != cols_) return false;
    return max_asymmetry() <= rel_tol * std::max(max_abs(), 1e-300);
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }

ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        fail_validation(kModule, "shape_mismatch", "mul: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        cx* ci = c.data() + i * m;
        const cx* ai = a.data() + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const cx aip = ai[p];
            if (aip == cx(0.0)) continue;
            const cx* bp = b.data() + p * m;
            for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
        }
    }
    return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cx aij = a(i, j);
            if (aij == cx(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

// ------------------------- eigh ---------------------------------------------

namespace {

// Householder reduction of a Hermitian matrix to complex tridiagonal form,
// accumulating the unitary into q. On exit the off-tridiagonal entries of a
// are zero and sub[k] = a(k+1, k).
void householder_tridiag(ComplexMatrix& a, ComplexMatrix& q, std::vector<cx>& sub) {
    const std::size_t n = a.rows();
    std::vector<cx> v, p, w;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) {
            sub[k] = 0.0;
            continue;
        }
        const cx a0 = a(k + 1, k);
        const cx phase = (std::abs(a0) > 0.0) ? a0 / std::abs(a0) : cx(1.0);
        const cx beta = -phase * xnorm; // new subdiagonal entry

        v.assign(m, cx(0.0));
        v[0] = a0 - beta;
        for (std::size_t i = k + 2; i < n; ++i) v[i - k - 1] = a(i, k);
        double vnorm2 = 0.0;
        for (const auto& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 == 0.0) {
            sub[k] = a0;
            continue;
        }
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (auto& vi : v) vi *= inv;

        // Rank-2 update of the trailing block: A <- A - v q† - q v†
        // with p = A v, K = v†p (real), q = 2 (p - K v).
        p.assign(m, cx(0.0));
        for (std::size_t i = 0; i < m; ++i) {
            cx s = 0.0;
            const cx* row = a.data() + (k + 1 + i) * n + (k + 1);
            for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
            p[i] = s;
        }
        double bigk = 0.0;
        for (std::size_t i = 0; i < m; ++i) bigk += std::real(std::conj(v[i]) * p[i]);
        w.assign(m, cx(0.0));
        for (std::size_t i = 0; i < m; ++i) w[i] = 2.0 * (p[i] - bigk * v[i]);
        for (std::size_t i = 0; i < m; ++i) {
            cx* row = a.data() + (k + 1 + i) * n + (k + 1);
            for (std::size_t j = 0; j < m; ++j)
                row[j] -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
        }

        a(k + 1, k) = beta;
        a(k, k + 1) = std::conj(beta);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }
        sub[k] = beta;

        // Q <- Q (I - 2 v v†), columns k+1..n-1 only.
        for (std::size_t r = 0; r < n; ++r) {
            cx t = 0.0;
            cx* row = q.data() + r * n + (k + 1);
            for (std::size_t j = 0; j < m; ++j) t += row[j] * v[j];
            t *= 2.0;
            for (std::size_t j = 0; j < m; ++j) row[j] -= t * std::conj(v[j]);
        }
    }
    if (n >= 2) sub[n - 2] = a(n - 1, n - 2);
}

// Implicit-shift QL on the real tridiagonal (d, e), rotating the complex
// eigenvector columns of q along. e[0] unused on entry, e[i] = subdiag(i-1,i).
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, ComplexMatrix& q) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    fail_numerical(kModule, "ql_no_convergence",
                                   "QL iteration failed to converge after 50 sweeps");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < q.rows(); ++k) {
                        const cx t = q(k, i + 1);
                        q(k, i + 1) = s * q(k, i) + c * t;
                        q(k, i) = c * q(k, i) - s * t;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

EigDecomposition eigh(const ComplexMatrix& h) {
    if (h.rows() != h.cols())
        fail_validation(kModule, "not_square", "eigh requires a square matrix");
    const std::size_t n = h.rows();
    if (n == 0) fail_validation(kModule, "not_square", "eigh requires a non-empty matrix");
    const double scale = h.max_abs();
    const double asym = h.max_asymmetry();
    if (asym > 1e-12 * std::max(scale, 1e-300)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "input is not Hermitian, max asymmetry %.3e (scale %.3e)",
                      asym, scale);
        fail_validation(kModule, "not_hermitian", buf);
    }

    // Work on the exactly Hermitian average.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = std::real(h(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const cx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }

    EigDecomposition out;
    out.eigenvalues.assign(n, 0.0);
    out.eigenvectors = ComplexMatrix::identity(n);
    if (n == 1) {
        out.eigenvalues[0] = std::real(a(0, 0));
        return out;
    }

    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<cx> sub(n - 1, cx(0.0));
    householder_tridiag(a, q, sub);

    std::vector<double> d(n), e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::real(a(i, i));

    // Phase rotation making the subdiagonal real non-negative.
    cx f = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double mag = std::abs(sub[k]);
        e[k + 1] = mag;
        if (mag > 0.0) f *= sub[k] / mag;
        if (f != cx(1.0))
            for (std::size_t r = 0; r < n; ++r) q(r, k + 1) *= f;
    }

    tridiag_ql(d, e, q);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = q(i, order[j]);
    }
    return out;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        fail_validation(kModule, "not_square", "expm requires a square matrix");
    const std::size_t n = a.rows();
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
        nrm = std::max(nrm, row);
    }
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const double inv = std::ldexp(1.0, -squarings);
    ComplexMatrix b = a;
    b *= inv;

    ComplexMatrix x = ComplexMatrix::identity(n) + b;
    ComplexMatrix term = b;
    for (int k = 2; k <= 24; ++k) {
        term = term * b;
        term *= 1.0 / static_cast<double>(k);
        x += term;
        if (term.max_abs() <= 1e-17 * std::max(x.max_abs(), 1.0)) break;
    }
    for (int s = 0; s < squarings; ++s) x = x * x;
    return x;
}

double second_derivative(double f_minus, double f0, double f_plus, double h) {
    if (!(h > 0.0))
        fail_validation(kModule, "invalid_step", "second_derivative requires h > 0");
    return (f_minus - 2.0 * f0 + f_plus) / (h * h);
}

} // namespace qptsim::num
