#include "dynamics.hpp"

#include <cmath>

#include "error.hpp"

namespace tritangle {

namespace {

// single-site operator on qubit q (0 = A)
Matrix site(const Matrix& op, int q) {
    const Matrix id = Matrix::identity(2);
    Matrix r = q == 0 ? op : id;
    for (int k = 1; k < 3; ++k) r = kron(r, k == q ? op : id);
    return r;
}

Matrix bond(const Matrix& a, int i, const Matrix& b, int j) { return site(a, i) * site(b, j); }

}  // namespace

Matrix build_hamiltonian(const HamiltonianParams& p) {
    const Matrix x = pauli_x(), y = pauli_y(), z = pauli_z();
    Matrix h(8, 8);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;  // periodic closure
        h += p.J * (bond(x, i, x, j) + bond(y, i, y, j) + p.Delta * bond(z, i, z, j));
        h += p.D * (bond(x, i, y, j) - bond(y, i, x, j));
        h += p.B * site(z, i);
    }
    return h;
}

std::array<double, 8> spectrum_closed_form(const HamiltonianParams& p) {
    const double J = p.J, Dl = p.Delta, D = p.D, B = p.B;
    const double s = 2.0 * std::sqrt(3.0) * D;
    return {
        -3.0 * (B - J * Dl),
        -B - s - J * (Dl + 2.0),
        B - s - J * (Dl + 2.0),
        -B + s - J * (Dl + 2.0),
        B + s - J * (Dl + 2.0),
        -B - J * (Dl - 4.0),
        B - J * (Dl - 4.0),
        3.0 * (B + J * Dl),
    };
}

const Matrix& basis_change_u() {
    static const Matrix u = [] {
        const double r3 = std::sqrt(3.0);
        const cplx a(-r3 / 6.0, 0.5), b(-r3 / 6.0, -0.5), c(-1.0 / (2.0 * r3), 0.5);
        const cplx r = 1.0 / r3;
        // rows in the order 000, 001, 010, 100, 011, 101, 110, 111
        const cplx rows[8][8] = {
            {0, 0, 0, 0, 0, 0, 0, 1},
            {0, 0, a, 0, b, 0, r, 0},
            {0, 0, b, 0, a, 0, r, 0},
            {0, 0, r, 0, r, 0, r, 0},
            {0, c, 0, b, 0, r, 0, 0},
            {0, b, 0, a, 0, r, 0, 0},
            {0, r, 0, r, 0, r, 0, 0},
            {1, 0, 0, 0, 0, 0, 0, 0},
        };
        const int to_binary[8] = {0, 1, 2, 4, 3, 5, 6, 7};
        Matrix m(8, 8);
        for (int k = 0; k < 8; ++k)
            for (int n = 0; n < 8; ++n) m(to_binary[k], n) = rows[k][n];
        return m;
    }();
    return u;
}

double u_diagonalization_error(const HamiltonianParams& p) {
    const Matrix& u = basis_change_u();
    const Matrix d = u.adjoint() * build_hamiltonian(p) * u;
    const auto e = spectrum_closed_form(p);
    double err = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) err = std::max(err, std::abs(d(i, j) - (i == j ? e[static_cast<size_t>(i)] : 0.0)));
    return err;
}

Matrix propagator(const HamiltonianParams& p, double t) {
    const auto eig = herm_eig(build_hamiltonian(p));
    Matrix phase(8, 8);
    for (int i = 0; i < 8; ++i) phase(i, i) = std::polar(1.0, -eig.values[static_cast<size_t>(i)] * t);
    return eig.vectors * phase * eig.vectors.adjoint();
}

DensityMatrix schrodinger_evolve(const DensityMatrix& rho0, const HamiltonianParams& p, double t) {
    if (!std::isfinite(t)) throw Error(ErrorKind::Domain, "time must be finite");
    if (t == 0.0) return rho0;
    const Matrix u = propagator(p, t);
    return DensityMatrix::trusted(u * rho0.mat() * u.adjoint());
}

PureState schrodinger_evolve(const PureState& psi0, const HamiltonianParams& p, double t) {
    if (!std::isfinite(t)) throw Error(ErrorKind::Domain, "time must be finite");
    if (t == 0.0) return psi0;
    const Matrix u = propagator(p, t);
    PureState out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out.amp[static_cast<size_t>(i)] += u(i, j) * psi0.amp[static_cast<size_t>(j)];
    return out;
}

cplx milburn_factor(double en, double em, double gamma, double t) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::Domain, "milburn gamma must be > 0");
    const cplx e = std::polar(1.0, -(en - em) / gamma);
    return std::exp(gamma * (e - 1.0) * t);
}

cplx milburn_factor_approx(double en, double em, double gamma, double t) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::Domain, "milburn gamma must be > 0");
    const double de = en - em;
    return std::exp(cplx(-de * de * t / (2.0 * gamma), -de * t));
}

DensityMatrix milburn_evolve(const DensityMatrix& rho0, const HamiltonianParams& p, double gamma, double t) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::Domain, "milburn gamma must be > 0");
    if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "milburn time must be >= 0");
    const double err = u_diagonalization_error(p);
    const double scale = std::max({1.0, std::abs(p.J), std::abs(p.J * p.Delta), std::abs(p.D), std::abs(p.B)});
    if (err > 1e-10 * scale) throw Error(ErrorKind::NotConverged, "fixed energy basis does not diagonalize H");
    const Matrix& u = basis_change_u();
    const auto e = spectrum_closed_form(p);
    Matrix r = u.adjoint() * rho0.mat() * u;
    for (int n = 0; n < 8; ++n)
        for (int m = 0; m < 8; ++m)
            if (n != m) r(n, m) *= milburn_factor(e[static_cast<size_t>(n)], e[static_cast<size_t>(m)], gamma, t);
    return DensityMatrix::trusted(u * r * u.adjoint());
}

}  // namespace tritangle
