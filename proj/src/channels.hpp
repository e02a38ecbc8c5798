#pragma once

#include <string>
#include <vector>

#include "linalg.hpp"
#include "states.hpp"

namespace tritangle {

struct KrausChannel {
    std::string label;
    std::vector<Matrix> ops;  // 2x2 each
    double d = 0.0;
    double p = 1.0;
    double lambda = 1.0;
};

enum class Placement { FirstQubit, SecondQubit, ThirdQubit, AllQubits };

KrausChannel pdc(double d);
KrausChannel adc(double d);
KrausChannel gadc(double d, double p);
KrausChannel nonmarkov_dephasing(double lambda);

// telegraph-noise dephasing factor; b field magnitude, tau inverse fluctuation rate
double dephasing_lambda(double b, double tau, double t);

// ADC strength from a damping rate, d = 1 - exp(-2 rate t)
double adc_strength_from_rate(double channel_rate, double t);

// max_ij |sum K^dagger K - 1|
double completeness_error(const KrausChannel& ch);

DensityMatrix apply(const DensityMatrix& rho, const KrausChannel& ch, Placement pl);
Matrix apply_on_qubit(const Matrix& rho, const std::vector<Matrix>& ops, int qubit);

// pdc:d, adc:d, gadc:d,p, ntd:lambda
KrausChannel parse_channel_spec(const std::string& spec);
Placement parse_placement(const std::string& name);  // q1, q2, q3, all
const char* placement_name(Placement pl);

}  // namespace tritangle
