#include "states.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace tritangle {

Matrix PureState::density() const {
    const auto v = vec();
    return outer(v, v);
}

PureState basis_state(int index) {
    if (index < 0 || index > 7) throw Error(ErrorKind::InvalidArgument, "basis index outside 0..7");
    PureState s;
    s.amp[static_cast<size_t>(index)] = 1.0;
    return s;
}

PureState gghz(double a) {
    require_range(a, 0.0, 1.0, "a");
    PureState s;
    s.amp[0] = a;
    s.amp[7] = std::sqrt(1.0 - a * a);
    return s;
}

PureState gw(double a, double b) {
    const double rest = 1.0 - a * a - b * b;
    if (rest < -1e-12) throw Error(ErrorKind::Domain, "gw: a^2 + b^2 exceeds 1");
    PureState s;
    s.amp[1] = a;  // |001>
    s.amp[2] = b;  // |010>
    s.amp[4] = std::sqrt(std::max(0.0, rest));
    return s;
}

PureState w_state() {
    const double r = 1.0 / std::sqrt(3.0);
    return gw(r, r);
}

PureState wbar_state() {
    const double r = 1.0 / std::sqrt(3.0);
    PureState s;
    s.amp[3] = r;  // |011>
    s.amp[5] = r;  // |101>
    s.amp[6] = r;  // |110>
    return s;
}

PureState wwbar(double theta, double phi) {
    const auto w = w_state();
    const auto wb = wbar_state();
    const cplx e = std::polar(1.0, phi);
    PureState s;
    for (size_t i = 0; i < 8; ++i) s.amp[i] = std::cos(theta) * w.amp[i] + std::sin(theta) * e * wb.amp[i];
    return s;
}

DensityMatrix mix_ghz_extremes(double w1, double w2) {
    if (w1 < 0.0 || w2 < 0.0 || w1 + w2 > 1.0 + 1e-15) throw Error(ErrorKind::Domain, "mix-ghz: need w1, w2 >= 0 and w1 + w2 <= 1");
    Matrix rho = (1.0 - w1 - w2) * gghz(1.0 / std::sqrt(2.0)).density();
    rho(0, 0) += w1;
    rho(7, 7) += w2;
    return DensityMatrix::trusted(rho);
}

DensityMatrix mix_w_vacuum(double w) {
    require_range(w, 0.0, 1.0, "w");
    Matrix rho = (1.0 - w) * w_state().density();
    rho(0, 0) += w;
    return DensityMatrix::trusted(rho);
}

Validation check_density(const Matrix& rho) {
    if (rho.rows() != 8 || rho.cols() != 8) return {false, "dimension", static_cast<double>(rho.rows())};
    for (const auto& x : rho.data())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return {false, "finite", NAN};
    const double herr = rho.hermiticity_error();
    if (herr > 1e-12) return {false, "hermitian", herr};
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) return {false, "trace", tr};
    const double lmin = herm_eig(rho).values.front();
    if (lmin < -1e-10) return {false, "positivity", lmin};
    return {};
}

DensityMatrix validate(const Matrix& rho) {
    const auto v = check_density(rho);
    if (!v.ok) {
        std::ostringstream os;
        os << "invalid density matrix: " << v.invariant << " check failed (value " << v.value << ")";
        throw Error(ErrorKind::Domain, os.str());
    }
    return DensityMatrix::trusted(rho);
}

namespace {

std::vector<double> parse_params(const std::string& text, const std::string& spec) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size()) throw Error(ErrorKind::InvalidArgument, "bad numeric parameter '" + item + "' in '" + spec + "'");
        out.push_back(v);
    }
    return out;
}

void want(const std::vector<double>& p, size_t n, const std::string& spec) {
    if (p.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "'" + spec + "' expects " + std::to_string(n) + " parameter(s)");
    }
}

}  // namespace

DensityMatrix parse_state_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const auto p = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
    if (name == "ghz") { want(p, 0, spec); return DensityMatrix::from_pure(gghz(1.0 / std::sqrt(2.0))); }
    if (name == "gghz") { want(p, 1, spec); return DensityMatrix::from_pure(gghz(p[0])); }
    if (name == "w") { want(p, 0, spec); return DensityMatrix::from_pure(w_state()); }
    if (name == "wbar") { want(p, 0, spec); return DensityMatrix::from_pure(wbar_state()); }
    if (name == "wwbar") {
        if (p.size() == 1) return DensityMatrix::from_pure(wwbar(p[0], 0.0));
        want(p, 2, spec);
        return DensityMatrix::from_pure(wwbar(p[0], p[1]));
    }
    if (name == "gw") { want(p, 2, spec); return DensityMatrix::from_pure(gw(p[0], p[1])); }
    if (name == "mix-ghz") { want(p, 2, spec); return mix_ghz_extremes(p[0], p[1]); }
    if (name == "mix-w") { want(p, 1, spec); return mix_w_vacuum(p[0]); }
    throw Error(ErrorKind::InvalidArgument, "unknown state '" + name + "'");
}

}  // namespace tritangle
