#include "measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"

namespace tritangle {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kClip = 1e-12;

double clip_sqrt(double x) {
    if (x < 0.0) {
        if (x < -kClip) throw Error(ErrorKind::Domain, "negative radicand " + std::to_string(x));
        return 0.0;
    }
    return std::sqrt(x);
}

double clip_unit(double x) {
    if (x < 0.0 && x > -1e-9) return 0.0;
    return x;
}

Subsystem single(Focus f) {
    switch (f) {
        case Focus::A: return Subsystem::A;
        case Focus::B: return Subsystem::B;
        case Focus::C: return Subsystem::C;
    }
    return Subsystem::A;
}

// brings the focus qubit to position A
Matrix focus_first(const Matrix& rho, Focus f) {
    switch (f) {
        case Focus::A: return rho;
        case Focus::B: return permute_qubits(rho, {1, 0, 2});
        case Focus::C: return permute_qubits(rho, {2, 0, 1});
    }
    return rho;
}

double det2_real(const Matrix& r) { return (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real(); }

std::vector<cplx> column(const Matrix& m, int c) {
    std::vector<cplx> v(static_cast<size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) v[static_cast<size_t>(r)] = m(r, c);
    return v;
}

// first component above round-off made real positive, so the M elements come
// out in one fixed gauge that does not jump as coherences decay
void canonical_phase(std::vector<cplx>& v) {
    for (const auto& x : v) {
        if (std::abs(x) > 1e-14) {
            const cplx ph = std::conj(x) / std::abs(x);
            for (auto& y : v) y *= ph;
            return;
        }
    }
}

PureState to_pure(const std::vector<cplx>& v) {
    PureState s;
    double n = 0.0;
    for (const auto& x : v) n += std::norm(x);
    n = std::sqrt(n);
    for (size_t i = 0; i < 8; ++i) s.amp[i] = v[i] / n;
    return s;
}

double c2_pure_vec(const PureState& psi, Focus f) {
    const Matrix r = partial_trace(psi.density(), single(f));
    return std::max(0.0, 4.0 * det2_real(r));
}

// tr(X) 1 - X_A (x) 1_4 - 1_2 (x) X_BC + X
Matrix tilde_op(const Matrix& x) {
    const Matrix xa = partial_trace(x, Subsystem::A);
    const Matrix xbc = partial_trace(x, Subsystem::BC);
    Matrix r = x.trace() * Matrix::identity(8);
    r -= kron(xa, Matrix::identity(4));
    r -= kron(Matrix::identity(2), xbc);
    r += x;
    return r;
}

cplx trace_product(const Matrix& a, const Matrix& b) {
    cplx s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

}  // namespace

double wootters_concurrence(const Matrix& rho2) {
    if (rho2.rows() != 4 || rho2.cols() != 4) throw Error(ErrorKind::InvalidArgument, "two-qubit state must be 4x4");
    // X shape has an exact form
    if (is_xstate4(rho2, 1e-14)) return xstate_concurrence(rho2);
    const auto eig = herm_eig(rho2);
    if (eig.values.front() < -1e-10) throw Error(ErrorKind::Domain, "two-qubit state not positive");
    // subnormalized eigenvectors v_i; the Wootters lambdas are the singular
    // values of tau_ij = v_i^T (Y x Y) v_j. Dropping round-off eigenvalues keeps
    // their square roots out of the result.
    const double cut = 1e-14 * std::max(1.0, eig.values.back());
    std::vector<std::array<cplx, 4>> v;
    for (int k = 3; k >= 0; --k) {
        const double p = eig.values[static_cast<size_t>(k)];
        if (p <= cut) break;
        std::array<cplx, 4> x;
        for (int i = 0; i < 4; ++i) x[static_cast<size_t>(i)] = std::sqrt(p) * eig.vectors(i, k);
        v.push_back(x);
    }
    const Matrix yy = kron(pauli_y(), pauli_y());
    const int n = static_cast<int>(v.size());
    Matrix tau(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& vi = v[static_cast<size_t>(i)];
            const auto& vj = v[static_cast<size_t>(j)];
            for (size_t a = 0; a < 4; ++a)
                for (size_t b = 0; b < 4; ++b) tau(i, j) += vi[a] * yy(static_cast<int>(a), static_cast<int>(b)) * vj[b];
        }
    if (n == 0) return 0.0;
    if (n == 1) return std::abs(tau(0, 0));
    if (n == 2) {
        // sigma1 - sigma2 of a 2x2 matrix in closed form
        double f = 0.0;
        for (const auto& x : tau.data()) f += std::norm(x);
        const double det = std::abs(tau(0, 0) * tau(1, 1) - tau(0, 1) * tau(1, 0));
        return std::sqrt(std::max(0.0, f - 2.0 * det));
    }
    const auto ev = herm_eig(tau.adjoint() * tau).values;
    double s[4] = {0, 0, 0, 0};
    for (int k = 0; k < n; ++k) s[4 - n + k] = std::sqrt(std::max(0.0, ev[static_cast<size_t>(k)]));
    return std::max(0.0, s[3] - s[2] - s[1] - s[0]);
}

bool is_xstate4(const Matrix& r, double tol) {
    const int off[][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (const auto& o : off)
        if (std::abs(r(o[0], o[1])) > tol || std::abs(r(o[1], o[0])) > tol) return false;
    return true;
}

double xstate_concurrence(const Matrix& r) {
    if (r.rows() != 4 || r.cols() != 4) throw Error(ErrorKind::InvalidArgument, "two-qubit state must be 4x4");
    if (!is_xstate4(r)) throw Error(ErrorKind::InvalidArgument, "state is not X-shaped");
    const double a = std::abs(r(0, 3)) - std::sqrt(std::max(0.0, (r(1, 1) * r(2, 2)).real()));
    const double b = std::abs(r(1, 2)) - std::sqrt(std::max(0.0, (r(0, 0) * r(3, 3)).real()));
    return 2.0 * std::max({0.0, a, b});
}

double pure_one_to_other(const PureState& psi, Focus focus) {
    double n = 0.0;
    for (const auto& x : psi.amp) n += std::norm(x);
    if (std::abs(n - 1.0) > 1e-9) throw Error(ErrorKind::Domain, "state is not normalized");
    const Matrix r = partial_trace(psi.density(), single(focus));
    return 2.0 * clip_sqrt(det2_real(r));
}

RankTwoDetail rank2_detail(const DensityMatrix& rho_in, Focus focus, MForm form) {
    const Matrix rho = focus_first(rho_in.mat(), focus);
    const auto eig = herm_eig(rho);
    RankTwoDetail out;
    const double l1 = eig.values[7], l2 = eig.values[6], l3 = eig.values[5];
    if (l3 > kRankTol) {
        throw Error(ErrorKind::Rank, "rank-2 formula needs at most two nonzero eigenvalues; third eigenvalue = " + std::to_string(l3));
    }
    out.lambda1 = l1;
    out.lambda2 = l2;
    out.rank = l2 > kRankTol ? 2 : 1;

    double purity = 0.0;
    for (const auto& x : rho.data()) purity += std::norm(x);
    out.s_l = 1.0 - purity;
    out.tr_rho_tilde = trace_product(rho, tilde_op(rho)).real();

    if (out.rank == 1) {
        out.value = c2_pure_vec(to_pure(column(eig.vectors, 7)), Focus::A);
        return out;
    }

    std::vector<cplx> v[2] = {column(eig.vectors, 7), column(eig.vectors, 6)};
    canonical_phase(v[0]);
    canonical_phase(v[1]);
    const double w[2] = {l1, l2};
    Matrix g[2][2], gt[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            g[i][j] = outer(v[i], v[j]);
            if (form == MForm::Weighted) g[i][j] *= std::sqrt(std::max(0.0, w[i] * w[j]));
            gt[i][j] = tilde_op(g[i][j].adjoint());
        }
    auto T = [&](int i, int j, int k, int l) { return trace_product(g[i - 1][j - 1], gt[k - 1][l - 1]); };
    const cplx I(0.0, 1.0);
    const cplx m11 = (T(1, 2, 2, 1) + 2.0 * T(1, 1, 2, 2) + T(2, 1, 1, 2)) / 4.0;
    const cplx m12 = I / 4.0 * (T(1, 2, 2, 1) - T(2, 1, 1, 2));
    const cplx m13 = (T(1, 1, 2, 1) - T(2, 1, 2, 2) + T(1, 1, 1, 2) - T(1, 2, 2, 2)) / 4.0;
    const cplx m22 = -(T(1, 2, 2, 1) - 2.0 * T(1, 1, 2, 2) + T(2, 1, 1, 2)) / 4.0;
    const cplx m23 = I / 4.0 * (T(1, 1, 2, 1) - T(1, 1, 1, 2) + T(2, 1, 2, 2) - T(1, 2, 2, 2));
    const double cross = form == MForm::SingleCross ? 1.0 : 2.0;
    const cplx m33 = (T(1, 1, 1, 1) - cross * T(1, 1, 2, 2) + T(2, 2, 2, 2)) / 4.0;

    out.m = {{{m11.real(), m12.real(), m13.real()}, {m12.real(), m22.real(), m23.real()}, {m13.real(), m23.real(), m33.real()}}};
    out.m_min = min_eig_sym3(out.m);
    out.value = out.tr_rho_tilde + 2.0 * out.m_min * out.s_l;
    return out;
}

double rank2_itangle(const DensityMatrix& rho, Focus focus, MForm form) {
    return clip_unit(rank2_detail(rho, focus, form).value);
}

bool is_xstate8(const Matrix& r, double tol) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (i != j && i + j != 7 && std::abs(r(i, j)) > tol) return false;
    return true;
}

double gtc_xstate(const DensityMatrix& rho) {
    const Matrix& r = rho.mat();
    if (!is_xstate8(r)) throw Error(ErrorKind::InvalidArgument, "state is not X-shaped");
    double nm[4], c[4];
    for (int k = 0; k < 4; ++k) {
        nm[k] = std::sqrt(std::max(0.0, r(k, k).real() * r(7 - k, 7 - k).real()));
        c[k] = std::abs(r(k, 7 - k));
    }
    double best = 0.0;
    for (int i = 0; i < 4; ++i) {
        double nu = 0.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) nu += nm[j];
        best = std::max(best, c[i] - nu);
    }
    return 2.0 * best;
}

double gtc_pure(const PureState& psi) {
    return std::min({pure_one_to_other(psi, Focus::A), pure_one_to_other(psi, Focus::B), pure_one_to_other(psi, Focus::C)});
}

namespace {

double pair_c2(const PureState& psi, Subsystem s) {
    const double c = wootters_concurrence(partial_trace(psi.density(), s));
    return c * c;
}

double tau_for(const PureState& psi, Focus f) {
    const double a = std::pow(pure_one_to_other(psi, f), 2);
    switch (f) {
        case Focus::A: return a - pair_c2(psi, Subsystem::AB) - pair_c2(psi, Subsystem::AC);
        case Focus::B: return a - pair_c2(psi, Subsystem::AB) - pair_c2(psi, Subsystem::BC);
        case Focus::C: return a - pair_c2(psi, Subsystem::AC) - pair_c2(psi, Subsystem::BC);
    }
    return a;
}

}  // namespace

double residual_entanglement_pure(const PureState& psi, Focus focus) {
    const double t = tau_for(psi, focus);
    if (t < -1e-9) throw Error(ErrorKind::Domain, "negative residual entanglement " + std::to_string(t));
    return std::max(0.0, t);
}

double concurrence_fill(const PureState& psi) {
    const double a = std::pow(pure_one_to_other(psi, Focus::A), 2);
    const double b = std::pow(pure_one_to_other(psi, Focus::B), 2);
    const double c = std::pow(pure_one_to_other(psi, Focus::C), 2);
    const double q = 0.5 * (a + b + c);
    const double rad = 16.0 / 3.0 * q * (q - a) * (q - b) * (q - c);
    if (rad < 0.0) {
        if (rad < -kClip) throw Error(ErrorKind::Domain, "concurrence triangle inequality violated");
        return 0.0;
    }
    return std::pow(rad, 0.25);
}

double concurrence_fill_tau(const PureState& psi) {
    const double t = residual_entanglement_pure(psi);
    const double ab = pair_c2(psi, Subsystem::AB), ac = pair_c2(psi, Subsystem::AC), bc = pair_c2(psi, Subsystem::BC);
    const double rad = (t + 2.0 / 3.0 * (ab + ac + bc)) * (t + 2.0 * ab) * (t + 2.0 * ac) * (t + 2.0 * bc);
    return std::pow(std::max(0.0, rad), 0.25);
}

SpectralResult spectral_itangle(const DensityMatrix& rho, Focus focus) {
    const auto eig = herm_eig(rho.mat());
    SpectralResult out;
    std::vector<double> kept;
    for (int i = 0; i < 8; ++i) {
        const double p = eig.values[static_cast<size_t>(i)];
        if (p <= 1e-12) continue;
        out.value += p * c2_pure_vec(to_pure(column(eig.vectors, i)), focus);
        kept.push_back(p);
    }
    for (size_t i = 1; i < kept.size(); ++i)
        if (kept[i] - kept[i - 1] < 1e-9) out.degenerate = true;
    return out;
}

double linear_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (const auto& x : rho.mat().data()) s += std::norm(x);
    return 1.0 - s;
}

MeasureReport full_report(const DensityMatrix& rho, MForm form) {
    MeasureReport r;
    const Matrix& m = rho.mat();
    r.c_ab = wootters_concurrence(partial_trace(m, Subsystem::AB));
    r.c_ac = wootters_concurrence(partial_trace(m, Subsystem::AC));
    r.c_bc = wootters_concurrence(partial_trace(m, Subsystem::BC));
    r.s_lin = std::max(0.0, linear_entropy(rho));

    const auto eig = herm_eig(m);
    int rank = 0;
    for (double v : eig.values) {
        if (v > kRankTol) ++rank;
        if (v > 1e-10 && v < 1e-8) r.warning = "eigenvalue " + format_g17(v) + " near rank threshold";
    }

    if (rank <= 1) {
        const PureState psi = to_pure(column(eig.vectors, 7));
        r.c2_a_bc = std::pow(pure_one_to_other(psi, Focus::A), 2);
        r.c2_b_ac = std::pow(pure_one_to_other(psi, Focus::B), 2);
        r.c2_c_ab = std::pow(pure_one_to_other(psi, Focus::C), 2);
        r.tau = residual_entanglement_pure(psi);
        r.gtc = gtc_pure(psi);
        r.fill = concurrence_fill(psi);
        r.path = "pure";
        return r;
    }
    if (rank == 2) {
        r.c2_a_bc = rank2_itangle(rho, Focus::A, form);
        r.c2_b_ac = rank2_itangle(rho, Focus::B, form);
        r.c2_c_ab = rank2_itangle(rho, Focus::C, form);
        r.path = "rank2";
    } else {
        const auto a = spectral_itangle(rho, Focus::A);
        r.c2_a_bc = a.value;
        r.c2_b_ac = spectral_itangle(rho, Focus::B).value;
        r.c2_c_ab = spectral_itangle(rho, Focus::C).value;
        r.path = a.degenerate ? "spectral-degenerate" : "spectral";
    }
    if (is_xstate8(m)) r.gtc = gtc_xstate(rho);
    return r;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_csv_header(const std::string& param_name) {
    return param_name + ",c_ab,c_ac,c_bc,c2_a_bc,c2_b_ac,c2_c_ab,tau,gtc,fill,s_lin,path";
}

std::string report_csv_cells(const MeasureReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? format_g17(*v) : std::string(); };
    std::ostringstream os;
    os << format_g17(r.c_ab) << ',' << format_g17(r.c_ac) << ',' << format_g17(r.c_bc) << ',' << format_g17(r.c2_a_bc) << ','
       << format_g17(r.c2_b_ac) << ',' << format_g17(r.c2_c_ab) << ',' << opt(r.tau) << ',' << opt(r.gtc) << ',' << opt(r.fill)
       << ',' << format_g17(r.s_lin) << ',' << r.path;
    return os.str();
}

std::string report_csv_row(double param, const MeasureReport& r) { return format_g17(param) + ',' + report_csv_cells(r); }

}  // namespace tritangle
