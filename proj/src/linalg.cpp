#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace tritangle {

Matrix::Matrix(int rows, int cols, std::vector<cplx> entries) : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(rows * cols)) {
        throw Error(ErrorKind::InvalidArgument, "matrix entry count does not match dimensions");
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diag(const std::vector<cplx>& d) {
    const int n = static_cast<int>(d.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Matrix Matrix::conj() const {
    Matrix r(*this);
    for (auto& x : r.a_) x = std::conj(x);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

double Matrix::hermiticity_error() const {
    if (rows_ != cols_) return INFINITY;
    double e = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j) e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return e;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
    Matrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    double m = 0.0;
    for (size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

Matrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    Matrix r(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = u[i] * std::conj(v[j]);
    return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

namespace {

int bit_of(int index, int qubit) { return (index >> (2 - qubit)) & 1; }

}  // namespace

Matrix partial_trace(const Matrix& rho, Subsystem keep) {
    if (rho.rows() != 8 || rho.cols() != 8) throw Error(ErrorKind::InvalidArgument, "partial_trace expects 8x8");
    std::vector<int> kept;
    switch (keep) {
        case Subsystem::A: kept = {0}; break;
        case Subsystem::B: kept = {1}; break;
        case Subsystem::C: kept = {2}; break;
        case Subsystem::AB: kept = {0, 1}; break;
        case Subsystem::AC: kept = {0, 2}; break;
        case Subsystem::BC: kept = {1, 2}; break;
        default: throw Error(ErrorKind::InvalidArgument, "unknown subsystem selector");
    }
    const int dim = 1 << kept.size();
    Matrix r(dim, dim);
    auto reduced = [&](int idx) {
        int k = 0;
        for (int q : kept) k = (k << 1) | bit_of(idx, q);
        return k;
    };
    auto traced_part = [&](int idx) {
        int k = idx;
        for (int q : kept) k &= ~(1 << (2 - q));
        return k;
    };
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (traced_part(i) == traced_part(j)) r(reduced(i), reduced(j)) += rho(i, j);
    return r;
}

Matrix permute_qubits(const Matrix& rho, const std::array<int, 3>& order) {
    auto map = [&](int idx) {
        int k = 0;
        for (int q = 0; q < 3; ++q) k = (k << 1) | bit_of(idx, order[static_cast<size_t>(q)]);
        return k;
    };
    Matrix r(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) r(map(i), map(j)) = rho(i, j);
    return r;
}

namespace {

double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double frob_norm(const Matrix& a) {
    double s = 0.0;
    for (const auto& x : a.data()) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition herm_eig(const Matrix& h, double tol, int max_sweeps) {
    if (h.rows() != h.cols()) throw Error(ErrorKind::InvalidArgument, "herm_eig expects a square matrix");
    const double herr = h.hermiticity_error();
    if (herr > 1e-12 * std::max(1.0, h.max_abs())) {
        throw Error(ErrorKind::InvalidArgument, "herm_eig: input not Hermitian (max |H - H^dagger| = " +
                                                    std::to_string(herr) + ")");
    }
    const int n = h.rows();
    Matrix a = h;
    for (int i = 0; i < n; ++i) a(i, i) = a(i, i).real();
    Matrix v = Matrix::identity(n);
    const double scale = std::max(1.0, frob_norm(h));

    bool converged = offdiag_norm(a) < tol * scale;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq < 1e-300) continue;
                const cplx phase = a(p, q) / apq;  // e^{i phi}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J = D R with D = diag(1, e^{-i phi}) on (p, q)
                const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
        converged = offdiag_norm(a) < tol * scale;
    }
    if (!converged) {
        throw Error(ErrorKind::NotConverged, "herm_eig: Jacobi sweeps did not converge");
    }

    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
    EigenDecomposition out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors = Matrix(n, n);
    for (int c = 0; c < n; ++c) {
        const int src = idx[static_cast<size_t>(c)];
        out.values[static_cast<size_t>(c)] = a(src, src).real();
        for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, src);
    }
    return out;
}

double min_eig_sym3(const Sym3& m) {
    const double asym = std::max({std::abs(m[0][1] - m[1][0]), std::abs(m[0][2] - m[2][0]), std::abs(m[1][2] - m[2][1])});
    double mag = 0.0;
    for (const auto& row : m)
        for (double x : row) mag = std::max(mag, std::abs(x));
    if (asym > 1e-12 * std::max(1.0, mag)) throw Error(ErrorKind::InvalidArgument, "min_eig_sym3: matrix not symmetric");

    const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if (p1 == 0.0) return std::min({m[0][0], m[1][1], m[2][2]});

    const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) + (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Sym3 b{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
    const double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                        b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    double lam = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);

    // Newton polish on the characteristic cubic; acos loses digits when the two
    // smallest roots nearly coincide
    const double c2 = m[0][0] + m[1][1] + m[2][2];
    const double c1 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2] -
                      m[1][2] * m[2][1];
    const double c0 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    auto f = [&](double x) { return ((x - c2) * x + c1) * x - c0; };
    auto fp = [&](double x) { return (3.0 * x - 2.0 * c2) * x + c1; };
    for (int it = 0; it < 3; ++it) {
        const double d = fp(lam);
        if (d == 0.0) break;
        const double next = lam - f(lam) / d;
        if (!(std::abs(f(next)) < std::abs(f(lam)))) break;
        lam = next;
    }
    return lam;
}

Matrix pauli_x() { return Matrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
Matrix pauli_y() { return Matrix(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
Matrix pauli_z() { return Matrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace tritangle
