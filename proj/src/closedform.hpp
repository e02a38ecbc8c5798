#pragma once

#include <string>
#include <vector>

namespace tritangle {

enum class ScenarioId {
    MilburnGGHZ,          // a, B, gamma, t
    MilburnGhzMixture,    // w1, w2, B, gamma, t (w1 + w2 <= 1)
    Pdc1W,                // d
    AdcWVacuumMix,        // d, w
    Adc1GGHZ,             // a, d
    Adc3GGHZ,             // a, d
    PdcGhzVacuumMix,      // d, w
    NonMarkovGGHZ,        // a, b, tau, t
    NonMarkovGhzMixture,  // w, b, tau, t
    GadcWWbar,            // theta in {0, pi/4, pi/2}, d, p
};

struct ScenarioInfo {
    ScenarioId id;
    const char* name;
    const char* params;
    const char* domain;
};

const std::vector<ScenarioInfo>& scenario_table();
const char* scenario_name(ScenarioId id);
ScenarioId parse_scenario(const std::string& name);

// Superset of every scenario's parameters. Unused fields are ignored.
struct ScenarioParams {
    double a = 0.70710678118654752;
    double B = 0.1;
    double gamma = 0.5;
    double t = 0.0;
    double w = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double d = 0.0;
    double p = 0.0;
    double b = 1.0;
    double tau = 5.0;
    double theta = 0.0;
    // Hamiltonian couplings for the Milburn scenarios; the closed forms do
    // not depend on them
    double J = 1.0;
    double Delta = 0.0;
    double D = 0.0;
};

struct Field {
    std::string name;
    double value;
};
using Fields = std::vector<Field>;

struct MilburnClosed {
    double c2_a_bc;
    double gtc;
};
// w1 = w2 = 0 selects the pure gGHZ; otherwise the GHZ/|000>/|111> mixture
MilburnClosed milburn_closed(double a, double b_field, double gamma, double t, double w1, double w2);

struct Pdc1WClosed {
    double c2_a_bc, c2_b_ac, c2_ab, c2_bc, m_min;
};
Pdc1WClosed pdc1_w_closed(double d);

// c_pair is the printed pair expression (4/9)(1-d)^2(1-w)^2. It equals the
// squared Wootters concurrence of each two-qubit marginal.
struct AdcWVacuumClosed {
    double c2_a_bc, c_pair, s_lin;
};
AdcWVacuumClosed adc_w_vacuum_closed(double d, double w);

enum class AdcVariant { I, III };
struct GghzAdcClosed {
    double c2_a_bc, gtc;
};
GghzAdcClosed gghz_adc_closed(double a, double d, AdcVariant variant);

// c2_smallw is a small-w expansion, accurate up to O(w^4)
struct GhzVacuumPdcClosed {
    double gmc, s_lin, c2_smallw;
};
GhzVacuumPdcClosed ghz_vacuum_pdc_closed(double d, double w);

enum class NonMarkovVariant { PureGGHZ, GhzMixture };
struct NonMarkovClosed {
    double c2_a_bc, gtc, m_min;
};
// PureGGHZ takes m_min from the rank-2 machinery on the dephased state
NonMarkovClosed nonmarkov_closed(double a, double w, double b, double tau, double t, NonMarkovVariant variant);

struct GadcWWbarClosed {
    double c_pair;
    double c2_spectral;  // NaN for theta = pi/4
};
GadcWWbarClosed gadc_wwbar_closed(double theta, double d, double p);

double f_w(double d, double p);
double f_wbar(double d, double p);
double f_wwbar(double d, double p);

// smallest d where the closed-form pair concurrence vanishes, bisection to
// 1e-6; 1 when it never does
double d_esd(double theta, double p);

// closed-form values for a scenario, named like the numeric pipeline fields
Fields closed_fields(ScenarioId id, const ScenarioParams& prm);

}  // namespace tritangle
