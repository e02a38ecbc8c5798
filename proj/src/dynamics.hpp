#pragma once

#include <array>

#include "linalg.hpp"
#include "states.hpp"

namespace tritangle {

// energies in units with hbar = 1
struct HamiltonianParams {
    double J = 1.0;
    double Delta = 0.0;
    double D = 0.0;
    double B = 0.0;
};

Matrix build_hamiltonian(const HamiltonianParams& p);

// E1..E8 in the labelled order (E8 belongs to |000>, E1 to |111>)
std::array<double, 8> spectrum_closed_form(const HamiltonianParams& p);

// Columns are |E1>..|E8> in the computational (binary) basis.
const Matrix& basis_change_u();

// max |U^dagger H U - diag(E1..E8)|; milburn_evolve refuses to run above 1e-10
double u_diagonalization_error(const HamiltonianParams& p);

Matrix propagator(const HamiltonianParams& p, double t);  // e^{-iHt}
DensityMatrix schrodinger_evolve(const DensityMatrix& rho0, const HamiltonianParams& p, double t);
PureState schrodinger_evolve(const PureState& psi0, const HamiltonianParams& p, double t);

cplx milburn_factor(double en, double em, double gamma, double t);
cplx milburn_factor_approx(double en, double em, double gamma, double t);

DensityMatrix milburn_evolve(const DensityMatrix& rho0, const HamiltonianParams& p, double gamma, double t);

}  // namespace tritangle
