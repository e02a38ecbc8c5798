#include "channels.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace tritangle {

KrausChannel pdc(double d) {
    require_range(d, 0.0, 1.0, "d");
    KrausChannel ch{"pdc", {}, d, 1.0, 1.0};
    ch.ops.push_back(Matrix(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - d)}));
    ch.ops.push_back(Matrix(2, 2, {0.0, 0.0, 0.0, std::sqrt(d)}));
    return ch;
}

KrausChannel adc(double d) {
    require_range(d, 0.0, 1.0, "d");
    KrausChannel ch{"adc", {}, d, 1.0, 1.0};
    ch.ops.push_back(Matrix(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - d)}));
    ch.ops.push_back(Matrix(2, 2, {0.0, std::sqrt(d), 0.0, 0.0}));
    return ch;
}

KrausChannel gadc(double d, double p) {
    require_range(d, 0.0, 1.0, "d");
    require_range(p, 0.0, 1.0, "p");
    KrausChannel ch{"gadc", {}, d, p, 1.0};
    const double sp = std::sqrt(p), sq = std::sqrt(1.0 - p), sd = std::sqrt(d), sr = std::sqrt(1.0 - d);
    if (p > 0.0) {
        ch.ops.push_back(Matrix(2, 2, {sp, 0.0, 0.0, sp * sr}));
        ch.ops.push_back(Matrix(2, 2, {0.0, sp * sd, 0.0, 0.0}));
    }
    if (p < 1.0) {
        ch.ops.push_back(Matrix(2, 2, {sq * sr, 0.0, 0.0, sq}));
        ch.ops.push_back(Matrix(2, 2, {0.0, 0.0, sq * sd, 0.0}));
    }
    return ch;
}

KrausChannel nonmarkov_dephasing(double lambda) {
    require_range(lambda, -1.0, 1.0, "lambda");
    KrausChannel ch{"ntd", {}, 0.0, 1.0, lambda};
    const double a = std::sqrt((1.0 + lambda) / 2.0), b = std::sqrt((1.0 - lambda) / 2.0);
    ch.ops.push_back(Matrix(2, 2, {a, 0.0, 0.0, a}));
    ch.ops.push_back(Matrix(2, 2, {b, 0.0, 0.0, -b}));
    return ch;
}

double dephasing_lambda(double b, double tau, double t) {
    if (!(tau > 0.0)) throw Error(ErrorKind::Domain, "tau must be > 0");
    if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "t must be >= 0");
    const double nu = t / (2.0 * tau);
    const double k = 4.0 * b * tau;
    const double mu2 = k * k - 1.0;
    if (mu2 > 0.0) {
        const double mu = std::sqrt(mu2);
        return std::exp(-nu) * (std::cos(mu * nu) + std::sin(mu * nu) / mu);
    }
    if (mu2 < 0.0) {
        const double m = std::sqrt(-mu2);
        return std::exp(-nu) * (std::cosh(m * nu) + std::sinh(m * nu) / m);
    }
    return std::exp(-nu) * (1.0 + nu);
}

double adc_strength_from_rate(double channel_rate, double t) {
    if (!(channel_rate >= 0.0) || !(t >= 0.0)) throw Error(ErrorKind::Domain, "rate and time must be >= 0");
    return 1.0 - std::exp(-2.0 * channel_rate * t);
}

double completeness_error(const KrausChannel& ch) {
    Matrix s(2, 2);
    for (const auto& k : ch.ops) s += k.adjoint() * k;
    return max_abs_diff(s, Matrix::identity(2));
}

Matrix apply_on_qubit(const Matrix& rho, const std::vector<Matrix>& ops, int qubit) {
    const int shift = 2 - qubit;
    Matrix out(8, 8);
    for (const auto& k : ops) {
        // (K rho K^dagger) restricted to the acting qubit; other bits pass through
        Matrix kr(8, 8);
        for (int i = 0; i < 8; ++i) {
            const int bi = (i >> shift) & 1;
            for (int a = 0; a < 2; ++a) {
                const cplx kia = k(a, bi);
                if (kia == cplx(0.0)) continue;
                const int row = (i & ~(1 << shift)) | (a << shift);
                for (int j = 0; j < 8; ++j) kr(row, j) += kia * rho(i, j);
            }
        }
        for (int j = 0; j < 8; ++j) {
            const int bj = (j >> shift) & 1;
            for (int a = 0; a < 2; ++a) {
                const cplx kja = std::conj(k(a, bj));
                if (kja == cplx(0.0)) continue;
                const int col = (j & ~(1 << shift)) | (a << shift);
                for (int i = 0; i < 8; ++i) out(i, col) += kr(i, j) * kja;
            }
        }
    }
    return out;
}

DensityMatrix apply(const DensityMatrix& rho, const KrausChannel& ch, Placement pl) {
    switch (pl) {
        case Placement::FirstQubit: return DensityMatrix::trusted(apply_on_qubit(rho.mat(), ch.ops, 0));
        case Placement::SecondQubit: return DensityMatrix::trusted(apply_on_qubit(rho.mat(), ch.ops, 1));
        case Placement::ThirdQubit: return DensityMatrix::trusted(apply_on_qubit(rho.mat(), ch.ops, 2));
        case Placement::AllQubits: {
            Matrix m = rho.mat();
            for (int q = 0; q < 3; ++q) m = apply_on_qubit(m, ch.ops, q);
            return DensityMatrix::trusted(m);
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown placement");
}

KrausChannel parse_channel_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<double> p;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t pos = 0;
            try {
                p.push_back(std::stod(item, &pos));
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos == 0 || pos != item.size()) throw Error(ErrorKind::InvalidArgument, "bad channel parameter in '" + spec + "'");
        }
    }
    auto need = [&](size_t n) {
        if (p.size() != n) throw Error(ErrorKind::InvalidArgument, "'" + spec + "' expects " + std::to_string(n) + " parameter(s)");
    };
    if (name == "pdc") { need(1); return pdc(p[0]); }
    if (name == "adc") { need(1); return adc(p[0]); }
    if (name == "gadc") { need(2); return gadc(p[0], p[1]); }
    if (name == "ntd") { need(1); return nonmarkov_dephasing(p[0]); }
    throw Error(ErrorKind::InvalidArgument, "unknown channel '" + name + "'");
}

Placement parse_placement(const std::string& name) {
    if (name == "q1") return Placement::FirstQubit;
    if (name == "q2") return Placement::SecondQubit;
    if (name == "q3") return Placement::ThirdQubit;
    if (name == "all") return Placement::AllQubits;
    throw Error(ErrorKind::InvalidArgument, "unknown placement '" + name + "' (q1, q2, q3, all)");
}

const char* placement_name(Placement pl) {
    switch (pl) {
        case Placement::FirstQubit: return "q1";
        case Placement::SecondQubit: return "q2";
        case Placement::ThirdQubit: return "q3";
        case Placement::AllQubits: return "all";
    }
    return "?";
}

}  // namespace tritangle
