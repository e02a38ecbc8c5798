#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "closedform.hpp"
#include "dynamics.hpp"
#include "measures.hpp"

namespace tritangle {

// angular frequencies, hbar = 1
struct FrequencySet {
    std::vector<double> values;  // sorted, >= 0
};

enum class FrequencyKind { Bipartite, OneToOther };

// frequencies present in the gW matrix elements under Schrodinger evolution
FrequencySet gw_frequencies(const HamiltonianParams& p, FrequencyKind kind);

// smallest T > 0 with every w T / 2pi within tol of an integer; ratios are
// approximated by continued fractions with denominators <= 1000
std::optional<double> common_period(const FrequencySet& f, double tol);

using VectorSignal = std::function<std::vector<double>(double)>;

// first strong recurrence of the normalized autocorrelation of a sampled
// signal, refined by golden section on the mean squared self-difference
double detect_period(const VectorSignal& f, double t_max, int samples);

struct Peak {
    double x;
    double value;
};
// first sampled local maximum within tol of the global maximum, refined by
// three-point parabolic interpolation
Peak first_global_max(const std::vector<double>& xs, const std::vector<double>& ys, double tol = 1e-3);
// golden-section maximization of f on [lo, hi]
Peak golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

// sets a ScenarioParams field by its CLI name (a, B, gamma, t, w, ...)
void set_param(ScenarioParams& s, const std::string& name, double value);
double get_param(const ScenarioParams& s, const std::string& name);

// the initial state pushed through the scenario's channel or propagator
DensityMatrix scenario_state(ScenarioId id, const ScenarioParams& s);
// numeric counterparts of closed_fields, same names and order
Fields numeric_fields(ScenarioId id, const ScenarioParams& s);

struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
};

struct SweepSpec {
    std::string target;  // ScenarioId name
    std::vector<GridAxis> grid;
    ScenarioParams base;
    std::string output_path;  // file; empty means the caller prints
};

void validate_spec(const SweepSpec& spec);
double axis_value(const GridAxis& ax, int i);

struct FieldDeviation {
    std::string name;
    double max_dev = 0.0;
    double tolerance = 1e-10;
    bool w4_rule = false;  // pointwise |dev| <= 10 w^4 instead
    bool pass = true;
    std::string worst;  // parameters at the worst point
};

struct OracleReport {
    ScenarioId id{};
    size_t points = 0;
    std::vector<FieldDeviation> fields;
    bool pass = true;
    double seconds = 0.0;
};

// default 20x20 grid (or 400 points in one dimension) per scenario
SweepSpec default_oracle_grid(ScenarioId id);
OracleReport cross_validate(ScenarioId id, const SweepSpec& grid);
OracleReport cross_validate(ScenarioId id);

// full report over the grid plus the closed-form fields as "<name>_closed"
std::string sweep_csv(const SweepSpec& spec);
void sweep(const SweepSpec& spec);

const std::vector<std::string>& figure_ids();
// writes <fig>_<panel>.csv under out, returns the paths in write order
std::vector<std::string> run_figure(const std::string& fig, const std::string& out);

// worker count: hardware concurrency capped by TRITANGLE_THREADS
unsigned worker_count();
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace tritangle
