#pragma once

#include <optional>
#include <string>

#include "linalg.hpp"
#include "states.hpp"

namespace tritangle {

enum class Focus { A, B, C };

// Elements of the 3x3 matrix M in the rank-2 I-tangle.
//  Standard:    M33 = (T1111 - 2 T1122 + T2222)/4, the exact convex roof
//  SingleCross: M33 = (T1111 - T1122 + T2222)/4
//  Weighted:    Standard elements built from sqrt(l_i l_j)|l_i><l_j|
enum class MForm { Standard, SingleCross, Weighted };

double wootters_concurrence(const Matrix& rho2);
bool is_xstate4(const Matrix& rho2, double tol = 1e-10);
double xstate_concurrence(const Matrix& rho2);

double pure_one_to_other(const PureState& psi, Focus focus);

struct RankTwoDetail {
    double value = 0.0;        // C^2 of focus vs rest
    double tr_rho_tilde = 0.0;
    double s_l = 0.0;
    Sym3 m{};
    double m_min = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;
    int rank = 0;
};

RankTwoDetail rank2_detail(const DensityMatrix& rho, Focus focus, MForm form = MForm::Standard);
double rank2_itangle(const DensityMatrix& rho, Focus focus, MForm form = MForm::Standard);

bool is_xstate8(const Matrix& rho, double tol = 1e-10);
double gtc_xstate(const DensityMatrix& rho);
double gtc_pure(const PureState& psi);
double residual_entanglement_pure(const PureState& psi, Focus focus = Focus::A);
double concurrence_fill(const PureState& psi);
double concurrence_fill_tau(const PureState& psi);

struct SpectralResult {
    double value = 0.0;
    bool degenerate = false;  // a nonzero eigenvalue cluster with gap < 1e-9
};
SpectralResult spectral_itangle(const DensityMatrix& rho, Focus focus);

double linear_entropy(const DensityMatrix& rho);

struct MeasureReport {
    double c_ab = 0, c_ac = 0, c_bc = 0;
    double c2_a_bc = 0, c2_b_ac = 0, c2_c_ab = 0;
    std::optional<double> tau;
    std::optional<double> gtc;
    std::optional<double> fill;
    double s_lin = 0;
    std::string path;     // pure, rank2, spectral, spectral-degenerate
    std::string warning;  // rank near the threshold
};

MeasureReport full_report(const DensityMatrix& rho, MForm form = MForm::Standard);

std::string report_csv_header(const std::string& param_name);
std::string report_csv_row(double param, const MeasureReport& r);
// the eleven report cells without the leading parameter
std::string report_csv_cells(const MeasureReport& r);
std::string format_g17(double v);

}  // namespace tritangle
