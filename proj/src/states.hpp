#pragma once

#include <array>
#include <string>

#include "linalg.hpp"

namespace tritangle {

struct PureState {
    std::array<cplx, 8> amp{};

    std::vector<cplx> vec() const { return {amp.begin(), amp.end()}; }
    Matrix density() const;
};

// 8x8 Hermitian, unit trace, PSD. Construct through validate() or the named
// families; `trusted` skips checks for outputs of trace/positivity preserving maps.
class DensityMatrix {
public:
    DensityMatrix() : m_(Matrix::identity(8)) { m_ *= 1.0 / 8.0; }
    static DensityMatrix trusted(Matrix m) { return DensityMatrix(std::move(m)); }
    static DensityMatrix from_pure(const PureState& psi) { return DensityMatrix(psi.density()); }

    const Matrix& mat() const { return m_; }

private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

PureState basis_state(int index);
PureState gghz(double a);
PureState gw(double a, double b);
PureState w_state();
PureState wbar_state();
PureState wwbar(double theta, double phi);

DensityMatrix mix_ghz_extremes(double w1, double w2);
DensityMatrix mix_w_vacuum(double w);

struct Validation {
    bool ok = true;
    std::string invariant;  // which check failed
    double value = 0.0;     // offending measured value
};

Validation check_density(const Matrix& rho);
// throws Error(Domain) carrying the violation report
DensityMatrix validate(const Matrix& rho);

// CLI mini-syntax: ghz, gghz:a, w, wbar, wwbar:theta,phi, gw:a,b, mix-ghz:w1,w2, mix-w:w
DensityMatrix parse_state_spec(const std::string& spec);

}  // namespace tritangle
