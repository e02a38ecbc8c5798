#include "closedform.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "channels.hpp"
#include "error.hpp"
#include "measures.hpp"
#include "states.hpp"

namespace tritangle {

namespace {

double milburn_exponent(double b_field, double gamma, double t) {
    const double s = std::sin(3.0 * b_field / gamma);
    return -4.0 * gamma * t * s * s;
}

int theta_index(double theta) {
    const double pi = std::numbers::pi;
    if (std::abs(theta) < 1e-12) return 0;
    if (std::abs(theta - pi / 4.0) < 1e-12) return 1;
    if (std::abs(theta - pi / 2.0) < 1e-12) return 2;
    throw Error(ErrorKind::Domain, "theta must be 0, pi/4 or pi/2");
}

double pair_from(double theta, double d, double p) {
    switch (theta_index(theta)) {
        case 0: return std::max(0.0, 2.0 / 3.0 * (1.0 - d - std::sqrt(std::max(0.0, f_w(d, p)))));
        case 2: return std::max(0.0, 2.0 / 3.0 * (1.0 - d - std::sqrt(std::max(0.0, f_wbar(d, p)))));
        default: return std::max(0.0, 1.0 / 3.0 * (2.0 - 2.0 * d - std::sqrt(std::max(0.0, f_wwbar(d, p)))));
    }
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_table() {
    static const std::vector<ScenarioInfo> t = {
        {ScenarioId::MilburnGGHZ, "MilburnGGHZ", "a,B,gamma,t", "a in [0,1], gamma > 0, t >= 0"},
        {ScenarioId::MilburnGhzMixture, "MilburnGhzMixture", "w1,w2,B,gamma,t", "w1,w2 >= 0, w1+w2 <= 1, gamma > 0, t >= 0"},
        {ScenarioId::Pdc1W, "Pdc1W", "d", "d in [0,1]"},
        {ScenarioId::AdcWVacuumMix, "AdcWVacuumMix", "d,w", "d,w in [0,1]"},
        {ScenarioId::Adc1GGHZ, "Adc1GGHZ", "a,d", "a,d in [0,1]"},
        {ScenarioId::Adc3GGHZ, "Adc3GGHZ", "a,d", "a,d in [0,1]"},
        {ScenarioId::PdcGhzVacuumMix, "PdcGhzVacuumMix", "d,w", "d,w in [0,1]; c2 expansion for w << 1"},
        {ScenarioId::NonMarkovGGHZ, "NonMarkovGGHZ", "a,b,tau,t", "a in [0,1], tau > 0, t >= 0"},
        {ScenarioId::NonMarkovGhzMixture, "NonMarkovGhzMixture", "w,b,tau,t", "w in [0,1], tau > 0, t >= 0"},
        {ScenarioId::GadcWWbar, "GadcWWbar", "theta,d,p", "theta in {0,pi/4,pi/2}, d,p in [0,1]"},
    };
    return t;
}

const char* scenario_name(ScenarioId id) {
    for (const auto& s : scenario_table())
        if (s.id == id) return s.name;
    return "?";
}

ScenarioId parse_scenario(const std::string& name) {
    for (const auto& s : scenario_table())
        if (name == s.name) return s.id;
    throw Error(ErrorKind::InvalidArgument, "unknown scenario '" + name + "'");
}

MilburnClosed milburn_closed(double a, double b_field, double gamma, double t, double w1, double w2) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::Domain, "gamma must be > 0");
    if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "t must be >= 0");
    require_range(w1, 0.0, 1.0, "w1");
    require_range(w2, 0.0, 1.0 - w1, "w2");
    const double e = milburn_exponent(b_field, gamma, t);
    if (w1 == 0.0 && w2 == 0.0) {
        require_range(a, 0.0, 1.0, "a");
        const double amp = a * std::sqrt(1.0 - a * a);
        return {4.0 * amp * amp * std::exp(e), 2.0 * amp * std::exp(e / 2.0)};
    }
    const double g = 1.0 - w1 - w2;
    return {g * g * std::exp(e), g * std::exp(e / 2.0)};
}

Pdc1WClosed pdc1_w_closed(double d) {
    require_range(d, 0.0, 1.0, "d");
    const double r = std::sqrt((32.0 * d - 41.0) * (32.0 * d - 33.0));
    const double den = 8.0 * d - 9.0;
    Pdc1WClosed c{};
    c.m_min = (r - 1.0) / (8.0 * den);
    c.c2_a_bc = d * (r - 1.0) / (9.0 * den) - 4.0 * (d - 2.0) / 9.0;
    c.c2_b_ac = d * (std::sqrt(1296.0 * d * d - 2792.0 * d + 1497.0) + 4.0 * d - 5.0) / (18.0 * den) -
                2.0 / 9.0 * (2.0 * d + std::sqrt(1.0 - d) - 5.0);
    c.c2_ab = 4.0 * (1.0 - d) / 9.0;
    c.c2_bc = 4.0 / 9.0;
    return c;
}

AdcWVacuumClosed adc_w_vacuum_closed(double d, double w) {
    require_range(d, 0.0, 1.0, "d");
    require_range(w, 0.0, 1.0, "w");
    const double k = (1.0 - d) * (1.0 - d) * (1.0 - w) * (1.0 - w);
    const double s = 2.0 * d * (1.0 - d) + (4.0 * d * d - 6.0 * d + 2.0) * w - 2.0 * (1.0 - d) * (1.0 - d) * w * w;
    return {8.0 / 9.0 * k, 4.0 / 9.0 * k, s};
}

GghzAdcClosed gghz_adc_closed(double a, double d, AdcVariant variant) {
    require_range(a, 0.0, 1.0, "a");
    require_range(d, 0.0, 1.0, "d");
    const double q = a * a * (1.0 - a * a);
    if (variant == AdcVariant::I) {
        const double c2 = 4.0 * q * (1.0 - d);
        return {c2, std::sqrt(c2)};
    }
    return {2.0 * q * (2.0 - d), 2.0 * a * std::sqrt((1.0 - a * a) * (1.0 - d))};
}

GhzVacuumPdcClosed ghz_vacuum_pdc_closed(double d, double w) {
    require_range(d, 0.0, 1.0, "d");
    require_range(w, 0.0, 1.0, "w");
    const double k = std::pow(1.0 - d, 3);
    return {std::pow(1.0 - d, 1.5) * (1.0 - w), 0.5 * (1.0 - k) + k * w - 0.5 * (1.0 + k) * w * w,
            k * (1.0 - w) * (1.0 - w)};
}

NonMarkovClosed nonmarkov_closed(double a, double w, double b, double tau, double t, NonMarkovVariant variant) {
    const double lam = dephasing_lambda(b, tau, t);
    const double l3 = lam * lam * lam;
    const double l6 = l3 * l3;
    NonMarkovClosed out{};
    if (variant == NonMarkovVariant::PureGGHZ) {
        require_range(a, 0.0, 1.0, "a");
        const double q = a * a * (1.0 - a * a);
        const double c = a * std::sqrt(1.0 - a * a) * l3;
        Matrix m(8, 8);
        m(0, 0) = a * a;
        m(7, 7) = 1.0 - a * a;
        m(0, 7) = c;
        m(7, 0) = c;
        out.m_min = rank2_detail(DensityMatrix::trusted(m), Focus::A).m_min;
        out.c2_a_bc = 2.0 * q * (1.0 + l6 + 2.0 * out.m_min * (1.0 - l6));
        out.gtc = 2.0 * a * std::sqrt(1.0 - a * a) * std::abs(l3);
        return out;
    }
    require_range(w, 0.0, 1.0, "w");
    const double v = 1.0 - w;
    const double den = 8.0 * (v * v * l6 + w * w);
    if (den == 0.0) {
        out.m_min = -0.5;  // w -> 0 limit
    } else {
        out.m_min = (w * w - std::sqrt(40.0 * v * v * w * w * l6 + 16.0 * std::pow(v, 4) * l6 * l6 + 9.0 * std::pow(w, 4))) / den;
    }
    out.c2_a_bc = 0.5 * v * (1.0 + w + v * l6) + v * (1.0 + w - v * l6) * out.m_min;
    out.gtc = v * std::abs(l3);
    return out;
}

double f_w(double d, double p) {
    return d * (p - 1.0) *
           (d * d * d * (p - 1.0) * (1.0 - 3.0 * p) * (1.0 - 3.0 * p) + 2.0 * d * d * p * (3.0 * p - 1.0) + d * (3.0 - 5.0 * p) - 2.0);
}

double f_wbar(double d, double p) {
    return d * p *
           (d * d * d * p * (2.0 - 3.0 * p) * (2.0 - 3.0 * p) - 2.0 * d * d * (3.0 * p * p - 5.0 * p + 2.0) + d * (2.0 - 5.0 * p) + 2.0);
}

double f_wwbar(double d, double p) {
    const double s = 6.0 * p * p - 6.0 * p + 1.0;
    return std::pow(d, 4) * s * s + 2.0 * d * d * d * s - 6.0 * d * d * (1.0 - 2.0 * p) * (1.0 - 2.0 * p) + 2.0 * d + 1.0;
}

GadcWWbarClosed gadc_wwbar_closed(double theta, double d, double p) {
    require_range(d, 0.0, 1.0, "d");
    require_range(p, 0.0, 1.0, "p");
    GadcWWbarClosed out{pair_from(theta, d, p), std::numeric_limits<double>::quiet_NaN()};
    const int k = theta_index(theta);
    const double q = p - 1.0;
    if (k == 0) {
        const double poly = 90.0 * std::pow(d, 6) * std::pow(q, 4) * p * p + 150.0 * std::pow(d, 5) * std::pow(q, 3) * p -
                            10.0 * std::pow(d, 4) * q * q * (15.0 * p * p - 15.0 * p - 4.0) - d * d * d * q * q * (1053.0 * p + 80.0) +
                            d * d * (-1742.0 * p * p + 1297.0 * p + 445.0) + 81.0 * d * (5.0 * p - 13.0) + 648.0;
        out.c2_spectral = std::max(0.0, poly / 729.0);
    } else if (k == 2) {
        const double poly = 45.0 * std::pow(d, 6) * q * q * std::pow(p, 4) + 30.0 * std::pow(d, 5) * q * std::pow(p, 3) +
                            5.0 * std::pow(d, 4) * p * p * (-6.0 * p * p + 6.0 * p + 1.0) + 2.0 * d * d * d * p * p * (252.0 * p - 257.0) +
                            d * d * p * (696.0 - 787.0 * p) + 96.0 * d * (p - 3.0) + 288.0;
        out.c2_spectral = std::max(0.0, poly / 324.0);
    }
    return out;
}

double d_esd(double theta, double p) {
    require_range(p, 0.0, 1.0, "p");
    // the unclipped bracket changes sign at the death point
    auto g = [&](double d) {
        switch (theta_index(theta)) {
            case 0: return 1.0 - d - std::sqrt(std::max(0.0, f_w(d, p)));
            case 2: return 1.0 - d - std::sqrt(std::max(0.0, f_wbar(d, p)));
            default: return 2.0 - 2.0 * d - std::sqrt(std::max(0.0, f_wwbar(d, p)));
        }
    };
    double lo = 0.0, hi = 1.0;
    if (g(hi) >= 0.0) return 1.0;
    // resolved to rounding so minima over p stay smooth
    while (hi - lo > 4e-16) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Fields closed_fields(ScenarioId id, const ScenarioParams& s) {
    switch (id) {
        case ScenarioId::MilburnGGHZ: {
            const auto c = milburn_closed(s.a, s.B, s.gamma, s.t, 0.0, 0.0);
            return {{"c2_a_bc", c.c2_a_bc}, {"gtc", c.gtc}};
        }
        case ScenarioId::MilburnGhzMixture: {
            const auto c = milburn_closed(std::numbers::sqrt2 / 2.0, s.B, s.gamma, s.t, s.w1, s.w2);
            return {{"c2_a_bc", c.c2_a_bc}, {"gtc", c.gtc}};
        }
        case ScenarioId::Pdc1W: {
            const auto c = pdc1_w_closed(s.d);
            return {{"c2_a_bc", c.c2_a_bc}, {"c2_b_ac", c.c2_b_ac}, {"c2_ab", c.c2_ab}, {"c2_bc", c.c2_bc}, {"m_min", c.m_min}};
        }
        case ScenarioId::AdcWVacuumMix: {
            const auto c = adc_w_vacuum_closed(s.d, s.w);
            return {{"c2_a_bc", c.c2_a_bc}, {"c_pair", c.c_pair}, {"s_lin", c.s_lin}};
        }
        case ScenarioId::Adc1GGHZ:
        case ScenarioId::Adc3GGHZ: {
            const auto c = gghz_adc_closed(s.a, s.d, id == ScenarioId::Adc1GGHZ ? AdcVariant::I : AdcVariant::III);
            return {{"c2_a_bc", c.c2_a_bc}, {"gtc", c.gtc}};
        }
        case ScenarioId::PdcGhzVacuumMix: {
            const auto c = ghz_vacuum_pdc_closed(s.d, s.w);
            return {{"gmc", c.gmc}, {"s_lin", c.s_lin}, {"c2_smallw", c.c2_smallw}};
        }
        case ScenarioId::NonMarkovGGHZ: {
            const auto c = nonmarkov_closed(s.a, 0.0, s.b, s.tau, s.t, NonMarkovVariant::PureGGHZ);
            return {{"c2_a_bc", c.c2_a_bc}, {"gtc", c.gtc}};
        }
        case ScenarioId::NonMarkovGhzMixture: {
            const auto c = nonmarkov_closed(0.0, s.w, s.b, s.tau, s.t, NonMarkovVariant::GhzMixture);
            return {{"c2_a_bc", c.c2_a_bc}, {"gtc", c.gtc}};
        }
        case ScenarioId::GadcWWbar: {
            const auto c = gadc_wwbar_closed(s.theta, s.d, s.p);
            Fields f{{"c_pair", c.c_pair}};
            if (!std::isnan(c.c2_spectral)) f.push_back({"c2_spectral", c.c2_spectral});
            return f;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown scenario");
}

}  // namespace tritangle
