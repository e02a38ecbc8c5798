#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "channels.hpp"
#include "error.hpp"

namespace tritangle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = 1.7320508075688772;

// continued-fraction approximation p/q of x >= 0 with q <= qmax
std::pair<long long, long long> rational_approx(double x, long long qmax) {
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    std::pair<long long, long long> best{std::llround(x), 1};
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        const long long ai = static_cast<long long>(a);
        const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > qmax) break;
        best = {h2, k2};
        if (std::abs(x - static_cast<double>(h2) / static_cast<double>(k2)) <= 1e-12 * std::max(1.0, x)) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        const double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return best;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::Io, "cannot write " + path);
    os << text;
    if (!os) throw Error(ErrorKind::Io, "write failed for " + path);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
    return v;
}

double mean_sq_diff(const VectorSignal& f, double period, double span, int m) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        const double t = span * i / (m - 1);
        const auto a = f(t), b = f(t + period);
        for (size_t c = 0; c < a.size(); ++c) s += (b[c] - a[c]) * (b[c] - a[c]);
    }
    return s / m;
}

std::string describe(const ScenarioParams& s, const std::vector<GridAxis>& axes) {
    std::ostringstream os;
    for (size_t i = 0; i < axes.size(); ++i) os << (i ? " " : "") << axes[i].name << '=' << format_g17(get_param(s, axes[i].name));
    return os.str();
}

size_t grid_size(const SweepSpec& spec) {
    size_t n = 1;
    for (const auto& ax : spec.grid) n *= static_cast<size_t>(ax.steps);
    return n;
}

// point k of the cartesian grid, first axis slowest
ScenarioParams grid_point(const SweepSpec& spec, size_t k) {
    ScenarioParams s = spec.base;
    for (size_t a = spec.grid.size(); a-- > 0;) {
        const auto& ax = spec.grid[a];
        set_param(s, ax.name, axis_value(ax, static_cast<int>(k % static_cast<size_t>(ax.steps))));
        k /= static_cast<size_t>(ax.steps);
    }
    return s;
}

}  // namespace

FrequencySet gw_frequencies(const HamiltonianParams& p, FrequencyKind kind) {
    const double J = p.J, D = p.D, sd = kSqrt3 * D;
    FrequencySet f;
    if (kind == FrequencyKind::Bipartite) {
        f.values = {6.0 * std::abs(J), 2.0 * std::abs(sd), 4.0 * std::abs(sd), std::abs(2.0 * sd - 6.0 * J), std::abs(2.0 * sd + 6.0 * J)};
    } else {
        f.values = {4.0 * std::abs(sd),          8.0 * std::abs(sd),          4.0 * std::abs(sd - 3.0 * J),
                    12.0 * std::abs(J),          6.0 * std::abs(sd - J),      6.0 * std::abs(sd + J),
                    4.0 * std::abs(sd + 3.0 * J), 2.0 * std::abs(sd - 3.0 * J), 2.0 * std::abs(sd + 3.0 * J)};
    }
    std::sort(f.values.begin(), f.values.end());
    return f;
}

std::optional<double> common_period(const FrequencySet& f, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tol must be > 0");
    std::vector<double> w;
    for (double v : f.values)
        if (v > 1e-12) w.push_back(v);
    if (w.empty()) return std::nullopt;
    const double ref = w.front();
    std::vector<std::pair<long long, long long>> r;
    long long q = 1;
    for (double v : w) {
        r.push_back(rational_approx(v / ref, 1000));
        q = std::lcm(q, r.back().second);
        if (q > 1000000) return std::nullopt;
    }
    long long g = 0;
    for (const auto& [num, den] : r) g = std::gcd(g, num * (q / den));
    if (g == 0) return std::nullopt;
    const double base = ref * static_cast<double>(g) / static_cast<double>(q);
    const double T = 2.0 * kPi / base;
    for (double v : w) {
        const double n = v * T / (2.0 * kPi);
        if (std::abs(n - std::round(n)) > tol) return std::nullopt;
    }
    return T;
}

double detect_period(const VectorSignal& f, double t_max, int samples) {
    if (samples < 16 || !(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "period detection needs samples >= 16 and t_max > 0");
    const double dt = t_max / (samples - 1);
    std::vector<std::vector<double>> y;
    y.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) y.push_back(f(i * dt));
    const size_t nc = y.front().size();
    double var = 0.0;
    for (size_t c = 0; c < nc; ++c) {
        double m = 0.0;
        for (const auto& v : y) m += v[c];
        m /= samples;
        for (const auto& v : y) var += (v[c] - m) * (v[c] - m);
    }
    var /= samples;
    if (var < 1e-20) throw Error(ErrorKind::NotConverged, "signal is constant, no period");
    // r(k) = 1 - <|y(t+k) - y(t)|^2> / (2 var)
    const int kmax = samples / 2;
    std::vector<double> r(static_cast<size_t>(kmax + 1), 1.0);
    for (int k = 1; k <= kmax; ++k) {
        double s = 0.0;
        for (int i = 0; i + k < samples; ++i)
            for (size_t c = 0; c < nc; ++c) {
                const double d = y[static_cast<size_t>(i + k)][c] - y[static_cast<size_t>(i)][c];
                s += d * d;
            }
        r[static_cast<size_t>(k)] = 1.0 - s / (samples - k) / (2.0 * var);
    }
    int k = 1;
    while (k <= kmax && r[static_cast<size_t>(k)] > 0.5) ++k;
    int found = -1;
    for (; k < kmax; ++k) {
        const double v = r[static_cast<size_t>(k)];
        if (v > 0.95 && v >= r[static_cast<size_t>(k - 1)] && v >= r[static_cast<size_t>(k + 1)]) {
            found = k;
            break;
        }
    }
    if (found < 0) throw Error(ErrorKind::NotConverged, "no recurrence within half the window");
    const double span = t_max - (found + 1) * dt;
    const auto best = golden_max([&](double T) { return -mean_sq_diff(f, T, span, 400); }, (found - 1) * dt, (found + 1) * dt, 1e-9);
    return best.x;
}

Peak first_global_max(const std::vector<double>& xs, const std::vector<double>& ys, double tol) {
    if (xs.size() != ys.size() || xs.size() < 3) throw Error(ErrorKind::InvalidArgument, "need >= 3 matching samples");
    const double top = *std::max_element(ys.begin(), ys.end());
    size_t i = 0;
    while (ys[i] < top - tol) ++i;
    while (i + 1 < ys.size() && ys[i + 1] > ys[i]) ++i;
    if (i == 0 || i + 1 == ys.size()) return {xs[i], ys[i]};
    const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
    const double den = y0 - 2.0 * y1 + y2;
    if (den >= 0.0) return {xs[i], y1};
    const double h = xs[i + 1] - xs[i];
    const double off = 0.5 * (y0 - y2) / den;
    return {xs[i] + off * h, y1 - 0.25 * (y0 - y2) * off};
}

Peak golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

namespace {

double ScenarioParams::*param_field(const std::string& name) {
    static const std::map<std::string, double ScenarioParams::*> fields = {
        {"a", &ScenarioParams::a},         {"B", &ScenarioParams::B},         {"gamma", &ScenarioParams::gamma},
        {"t", &ScenarioParams::t},         {"w", &ScenarioParams::w},         {"w1", &ScenarioParams::w1},
        {"w2", &ScenarioParams::w2},       {"d", &ScenarioParams::d},         {"p", &ScenarioParams::p},
        {"b", &ScenarioParams::b},         {"tau", &ScenarioParams::tau},     {"theta", &ScenarioParams::theta},
        {"J", &ScenarioParams::J},         {"Delta", &ScenarioParams::Delta}, {"D", &ScenarioParams::D},
    };
    const auto it = fields.find(name);
    if (it == fields.end()) throw Error(ErrorKind::InvalidArgument, "unknown parameter '" + name + "'");
    return it->second;
}

}  // namespace

void set_param(ScenarioParams& s, const std::string& name, double v) { s.*param_field(name) = v; }

double get_param(const ScenarioParams& s, const std::string& name) { return s.*param_field(name); }

DensityMatrix scenario_state(ScenarioId id, const ScenarioParams& s) {
    const HamiltonianParams h{s.J, s.Delta, s.D, s.B};
    switch (id) {
        case ScenarioId::MilburnGGHZ:
            require_range(s.a, 0.0, 1.0, "a");
            return milburn_evolve(DensityMatrix::from_pure(gghz(s.a)), h, s.gamma, s.t);
        case ScenarioId::MilburnGhzMixture: return milburn_evolve(mix_ghz_extremes(s.w1, s.w2), h, s.gamma, s.t);
        case ScenarioId::Pdc1W: return apply(DensityMatrix::from_pure(w_state()), pdc(s.d), Placement::FirstQubit);
        case ScenarioId::AdcWVacuumMix: return apply(mix_w_vacuum(s.w), adc(s.d), Placement::AllQubits);
        case ScenarioId::Adc1GGHZ:
            require_range(s.a, 0.0, 1.0, "a");
            return apply(DensityMatrix::from_pure(gghz(s.a)), adc(s.d), Placement::FirstQubit);
        case ScenarioId::Adc3GGHZ:
            require_range(s.a, 0.0, 1.0, "a");
            return apply(DensityMatrix::from_pure(gghz(s.a)), adc(s.d), Placement::ThirdQubit);
        case ScenarioId::PdcGhzVacuumMix: return apply(mix_ghz_extremes(s.w, 0.0), pdc(s.d), Placement::AllQubits);
        case ScenarioId::NonMarkovGGHZ:
            require_range(s.a, 0.0, 1.0, "a");
            return apply(DensityMatrix::from_pure(gghz(s.a)), nonmarkov_dephasing(dephasing_lambda(s.b, s.tau, s.t)), Placement::AllQubits);
        case ScenarioId::NonMarkovGhzMixture:
            return apply(mix_ghz_extremes(s.w, 0.0), nonmarkov_dephasing(dephasing_lambda(s.b, s.tau, s.t)), Placement::AllQubits);
        case ScenarioId::GadcWWbar: return apply(DensityMatrix::from_pure(wwbar(s.theta, 0.0)), gadc(s.d, s.p), Placement::AllQubits);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown scenario");
}

Fields numeric_fields(ScenarioId id, const ScenarioParams& s) {
    const DensityMatrix rho = scenario_state(id, s);
    const double nan = std::nan("");
    switch (id) {
        case ScenarioId::Pdc1W: {
            const auto r = full_report(rho);
            return {{"c2_a_bc", r.c2_a_bc}, {"c2_b_ac", r.c2_b_ac}, {"c2_ab", r.c_ab * r.c_ab}, {"c2_bc", r.c_bc * r.c_bc},
                    {"m_min", rank2_detail(rho, Focus::A).m_min}};
        }
        case ScenarioId::AdcWVacuumMix: {
            const auto r = full_report(rho);
            return {{"c2_a_bc", r.c2_a_bc}, {"c_pair", r.c_ab * r.c_ab}, {"s_lin", r.s_lin}};
        }
        case ScenarioId::PdcGhzVacuumMix: {
            const auto r = full_report(rho);
            return {{"gmc", r.gtc.value_or(nan)}, {"s_lin", r.s_lin}, {"c2_smallw", r.c2_a_bc}};
        }
        case ScenarioId::GadcWWbar: {
            Fields f{{"c_pair", wootters_concurrence(partial_trace(rho.mat(), Subsystem::AB))}};
            const double pi2 = kPi / 2.0;
            if (std::abs(s.theta) < 1e-12 || std::abs(s.theta - pi2) < 1e-12)
                f.push_back({"c2_spectral", spectral_itangle(rho, Focus::A).value});
            return f;
        }
        default: {
            const auto r = full_report(rho);
            return {{"c2_a_bc", r.c2_a_bc}, {"gtc", r.gtc.value_or(nan)}};
        }
    }
}

void validate_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw Error(ErrorKind::InvalidArgument, "grid needs at least one axis");
    for (const auto& ax : spec.grid) {
        if (ax.steps < 2) throw Error(ErrorKind::InvalidArgument, "axis " + ax.name + ": steps must be >= 2");
        if (!std::isfinite(ax.start) || !std::isfinite(ax.stop)) throw Error(ErrorKind::InvalidArgument, "axis " + ax.name + ": non-finite range");
        ScenarioParams probe;
        set_param(probe, ax.name, ax.start);
    }
}

double axis_value(const GridAxis& ax, int i) {
    if (i == ax.steps - 1) return ax.stop;
    return ax.start + (ax.stop - ax.start) * i / (ax.steps - 1);
}

SweepSpec default_oracle_grid(ScenarioId id) {
    SweepSpec g;
    g.target = scenario_name(id);
    switch (id) {
        case ScenarioId::MilburnGGHZ:
            g.base.Delta = 0.5;
            g.base.D = 0.3;
            g.grid = {{"a", 0.0, 1.0, 20}, {"B", -0.5, 0.5, 20}, {"t", 0.0, 20.0, 20}};
            break;
        case ScenarioId::MilburnGhzMixture:
            g.base.w2 = 0.25;
            g.base.B = 0.2;
            g.grid = {{"w1", 0.0, 0.75, 20}, {"t", 0.0, 20.0, 20}};
            break;
        case ScenarioId::Pdc1W: g.grid = {{"d", 0.0, 1.0, 400}}; break;
        case ScenarioId::AdcWVacuumMix:
        case ScenarioId::PdcGhzVacuumMix: g.grid = {{"d", 0.0, 1.0, 20}, {"w", 0.0, id == ScenarioId::PdcGhzVacuumMix ? 0.5 : 1.0, 20}}; break;
        case ScenarioId::Adc1GGHZ:
        case ScenarioId::Adc3GGHZ: g.grid = {{"a", 0.0, 1.0, 20}, {"d", 0.0, 1.0, 20}}; break;
        case ScenarioId::NonMarkovGGHZ: g.grid = {{"a", 0.0, 1.0, 20}, {"t", 0.0, 60.0, 20}}; break;
        case ScenarioId::NonMarkovGhzMixture: g.grid = {{"w", 0.0, 1.0, 20}, {"t", 0.0, 60.0, 20}}; break;
        case ScenarioId::GadcWWbar: g.grid = {{"theta", 0.0, kPi / 2.0, 3}, {"d", 0.0, 1.0, 20}, {"p", 0.0, 1.0, 20}}; break;
    }
    return g;
}

OracleReport cross_validate(ScenarioId id, const SweepSpec& grid) {
    validate_spec(grid);
    const auto start = std::chrono::steady_clock::now();
    const size_t n = grid_size(grid);
    std::vector<Fields> num(n), ref(n);
    parallel_for(n, [&](size_t k) {
        const ScenarioParams s = grid_point(grid, k);
        ref[k] = closed_fields(id, s);
        num[k] = numeric_fields(id, s);
    });
    OracleReport rep;
    rep.id = id;
    rep.points = n;
    std::map<std::string, size_t> index;
    for (size_t k = 0; k < n; ++k) {
        const ScenarioParams s = grid_point(grid, k);
        for (const auto& f : ref[k]) {
            auto it = index.find(f.name);
            if (it == index.end()) {
                it = index.emplace(f.name, rep.fields.size()).first;
                FieldDeviation fd;
                fd.name = f.name;
                fd.w4_rule = id == ScenarioId::PdcGhzVacuumMix && f.name == "c2_smallw";
                rep.fields.push_back(fd);
            }
            auto& fd = rep.fields[it->second];
            double v = std::nan("");
            for (const auto& g : num[k])
                if (g.name == f.name) v = g.value;
            const double dev = std::abs(v - f.value);
            const double bound = fd.w4_rule ? 10.0 * std::pow(s.w, 4) + 1e-10 : fd.tolerance;
            if (!(dev <= bound)) fd.pass = false;
            const double score = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
            if (fd.worst.empty() || score > fd.max_dev) {
                fd.max_dev = score;
                fd.worst = describe(s, grid.grid);
            }
        }
    }
    for (const auto& fd : rep.fields) rep.pass = rep.pass && fd.pass;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

OracleReport cross_validate(ScenarioId id) { return cross_validate(id, default_oracle_grid(id)); }

std::string sweep_csv(const SweepSpec& spec) {
    validate_spec(spec);
    const ScenarioId id = parse_scenario(spec.target);
    const size_t n = grid_size(spec);
    std::vector<std::string> cells(n);
    std::vector<Fields> closed(n);
    parallel_for(n, [&](size_t k) {
        const ScenarioParams s = grid_point(spec, k);
        cells[k] = report_csv_cells(full_report(scenario_state(id, s)));
        closed[k] = closed_fields(id, s);
    });
    std::vector<std::string> names;
    for (const auto& f : closed)
        for (const auto& x : f)
            if (std::find(names.begin(), names.end(), x.name) == names.end()) names.push_back(x.name);
    std::ostringstream os;
    std::string head = report_csv_header("");
    for (size_t a = 0; a < spec.grid.size(); ++a) os << (a ? "," : "") << spec.grid[a].name;
    os << head;
    for (const auto& nm : names) os << ',' << nm << "_closed";
    os << '\n';
    for (size_t k = 0; k < n; ++k) {
        const ScenarioParams s = grid_point(spec, k);
        for (size_t a = 0; a < spec.grid.size(); ++a) os << (a ? "," : "") << format_g17(get_param(s, spec.grid[a].name));
        os << ',' << cells[k];
        for (const auto& nm : names) {
            os << ',';
            for (const auto& x : closed[k])
                if (x.name == nm) os << format_g17(x.value);
        }
        os << '\n';
    }
    return os.str();
}

void sweep(const SweepSpec& spec) {
    if (spec.output_path.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs an output path");
    const std::string text = sweep_csv(spec);
    const auto parent = std::filesystem::path(spec.output_path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    write_text(spec.output_path, text);
}

// ---------------------------------------------------------------------------
// figures

namespace {

struct Row {
    double x = 0.0;
    std::string series;
    MeasureReport report;
    std::vector<double> extra;
};

struct Panel {
    std::string name;
    std::string xname;
    std::vector<std::string> extra_names;
    std::vector<std::function<Row()>> jobs;
};

std::string render_panel(const Panel& p, const std::vector<Row>& rows) {
    std::ostringstream os;
    os << report_csv_header(p.xname) << ",series";
    for (const auto& e : p.extra_names) os << ',' << e;
    os << '\n';
    for (const auto& r : rows) {
        os << report_csv_row(r.x, r.report) << ',' << r.series;
        for (double v : r.extra) os << ',' << (std::isnan(v) ? std::string() : format_g17(v));
        os << '\n';
    }
    return os.str();
}

std::string label(const std::string& key, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s=%.6g", key.c_str(), v);
    return buf;
}

MeasureReport pure_report(const PureState& psi) { return full_report(DensityMatrix::from_pure(psi)); }

void add_series(Panel& p, const std::vector<double>& xs, const std::string& series, std::function<Row(double)> make) {
    for (double x : xs)
        p.jobs.push_back([x, series, make] {
            Row r = make(x);
            r.x = x;
            r.series = series;
            return r;
        });
}

std::vector<Panel> fig1() {
    std::vector<Panel> out;
    const PureState psi0 = gw(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    const std::pair<const char*, double> cases[] = {{"left", 0.0}, {"right", kSqrt3}};
    for (const auto& [panel, D] : cases) {
        Panel p{std::string("fig1_") + panel, "t", {}, {}};
        const HamiltonianParams h{1.0, 0.0, D, 0.0};
        const double period = *common_period(gw_frequencies(h, FrequencyKind::OneToOther), 1e-9);
        add_series(p, linspace(0.0, 2.0 * period, 2000), label("D", D),
                   [psi0, h](double t) { return Row{0, "", pure_report(schrodinger_evolve(psi0, h, t)), {}}; });
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Panel> fig2() {
    Panel left{"fig2_left", "a", {"c2_closed"}, {}};
    add_series(left, linspace(0.0, 1.0, 401), "vN", [](double a) {
        return Row{0, "", pure_report(gghz(a)), {milburn_closed(a, 0.0, 1.0, 0.0, 0.0, 0.0).c2_a_bc}};
    });
    Panel right{"fig2_right", "t", {"c2_closed"}, {}};
    const HamiltonianParams h{1.0, 0.0, 0.0, 0.1};
    for (double a : {0.25, 0.5, 1.0 / std::sqrt(2.0)})
        add_series(right, linspace(0.0, 10.0, 2000), label("a", a), [a, h](double t) {
            const auto rho = milburn_evolve(DensityMatrix::from_pure(gghz(a)), h, 0.5, t);
            return Row{0, "", full_report(rho), {milburn_closed(a, h.B, 0.5, t, 0.0, 0.0).c2_a_bc}};
        });
    return {left, right};
}

std::vector<Panel> fig3() {
    const double a = 1.0 / std::sqrt(2.0);
    const auto ts = linspace(0.0, 10.0, 2000);
    auto milburn_row = [a](double B, double gamma) {
        return [a, B, gamma](double t) {
            const HamiltonianParams h{1.0, 0.0, 0.0, B};
            return Row{0, "", full_report(milburn_evolve(DensityMatrix::from_pure(gghz(a)), h, gamma, t)),
                       {milburn_closed(a, B, gamma, t, 0.0, 0.0).c2_a_bc}};
        };
    };
    auto vn_row = [a](double B) {
        return [a, B](double t) {
            const HamiltonianParams h{1.0, 0.0, 0.0, B};
            return Row{0, "", pure_report(schrodinger_evolve(gghz(a), h, t)), {4.0 * a * a * (1.0 - a * a)}};
        };
    };
    Panel left{"fig3_left", "t", {"c2_closed"}, {}};
    for (double g : {100.0, 5.0, 0.5}) add_series(left, ts, label("gamma", g), milburn_row(0.1, g));
    add_series(left, ts, "vN", vn_row(0.1));
    Panel right{"fig3_right", "t", {"c2_closed"}, {}};
    for (double B : {0.1, 0.2, 0.3}) add_series(right, ts, label("B", B), milburn_row(B, 0.5));
    add_series(right, ts, "vN", vn_row(0.1));
    return {left, right};
}

std::vector<Panel> fig4() {
    const auto ds = linspace(0.0, 1.0, 401);
    auto state = [](double d) { return apply(DensityMatrix::from_pure(w_state()), pdc(d), Placement::FirstQubit); };
    Panel left{"fig4_left", "d", {"c2_ab_closed", "c2_bc_closed"}, {}};
    add_series(left, ds, "W", [state](double d) {
        const auto c = pdc1_w_closed(d);
        return Row{0, "", full_report(state(d)), {c.c2_ab, c.c2_bc}};
    });
    Panel right{"fig4_right", "d", {"c2_a_bc_closed", "c2_b_ac_closed"}, {}};
    add_series(right, ds, "W", [state](double d) {
        const auto c = pdc1_w_closed(d);
        return Row{0, "", full_report(state(d)), {c.c2_a_bc, c.c2_b_ac}};
    });
    return {left, right};
}

std::vector<Panel> fig5() {
    const std::pair<const char*, AdcVariant> variants[] = {{"I", AdcVariant::I}, {"III", AdcVariant::III}};
    auto row = [](AdcVariant v, double a, double d) {
        const Placement pl = v == AdcVariant::I ? Placement::FirstQubit : Placement::ThirdQubit;
        const auto c = gghz_adc_closed(a, d, v);
        return Row{0, "", full_report(apply(DensityMatrix::from_pure(gghz(a)), adc(d), pl)), {c.c2_a_bc, c.gtc}};
    };
    Panel left{"fig5_left", "a", {"c2_closed", "gtc_closed"}, {}};
    Panel right{"fig5_right", "d", {"c2_closed", "gtc_closed"}, {}};
    for (const auto& [tag, v] : variants) {
        for (double d : {0.3, 0.5, 0.9})
            add_series(left, linspace(0.0, 1.0, 401), std::string(tag) + " " + label("d", d), [row, v, d](double a) { return row(v, a, d); });
        for (double a : {0.9, 1.0 / std::sqrt(2.0), 0.5})
            add_series(right, linspace(0.0, 1.0, 401), std::string(tag) + " " + label("a", a), [row, v, a](double d) { return row(v, a, d); });
    }
    return {left, right};
}

std::vector<Panel> fig6() {
    const auto ts = linspace(0.0, 60.0, 2000);
    auto row = [](double a, double t) {
        const auto c = nonmarkov_closed(a, 0.0, 1.0, 5.0, t, NonMarkovVariant::PureGGHZ);
        ScenarioParams s;
        s.a = a;
        s.t = t;
        return Row{0, "", full_report(scenario_state(ScenarioId::NonMarkovGGHZ, s)), {c.c2_a_bc, c.gtc}};
    };
    Panel left{"fig6_left", "t", {"c2_closed", "gtc_closed"}, {}};
    for (double a : {1.0 / std::sqrt(2.0), 0.5, 0.3}) add_series(left, ts, label("a", a), [row, a](double t) { return row(a, t); });
    Panel right = left;
    right.name = "fig6_right";
    return {left, right};
}

std::vector<Panel> fig7() {
    std::vector<Panel> out;
    const std::tuple<const char*, double, double> cases[] = {{"left", 2.0, 50.0}, {"right", 20.0, 200.0}};
    for (const auto& [panel, tau, tmax] : cases) {
        Panel p{std::string("fig7_") + panel, "t", {"c2_closed", "gtc_closed"}, {}};
        for (double w : {0.0, 0.1, 0.3, 0.5})
            add_series(p, linspace(0.0, tmax, 2000), label("w", w), [w, tau = tau](double t) {
                ScenarioParams s;
                s.w = w;
                s.tau = tau;
                s.t = t;
                const auto c = nonmarkov_closed(0.0, w, 1.0, tau, t, NonMarkovVariant::GhzMixture);
                return Row{0, "", full_report(scenario_state(ScenarioId::NonMarkovGhzMixture, s)), {c.c2_a_bc, c.gtc}};
            });
        out.push_back(std::move(p));
    }
    return out;
}

const std::pair<const char*, double> kThetas[] = {{"W", 0.0}, {"Wbar", kPi / 2.0}, {"WWbar", kPi / 4.0}};

double numeric_d_esd(double theta, double p) {
    auto c = [&](double d) {
        ScenarioParams s;
        s.theta = theta;
        s.d = d;
        s.p = p;
        return wootters_concurrence(partial_trace(scenario_state(ScenarioId::GadcWWbar, s).mat(), Subsystem::AB));
    };
    double lo = 0.0, hi = 1.0;
    if (c(hi) > 1e-9) return 1.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (c(mid) > 1e-9 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<Panel> fig8() {
    Panel left{"fig8_left", "d", {"c_pair_closed"}, {}};
    for (const auto& [tag, theta] : kThetas)
        for (double p : {0.0, 0.1, 0.5, 0.8, 1.0})
            add_series(left, linspace(0.0, 1.0, 401), std::string(tag) + " " + label("p", p), [theta = theta, p](double d) {
                ScenarioParams s;
                s.theta = theta;
                s.d = d;
                s.p = p;
                return Row{0, "", full_report(scenario_state(ScenarioId::GadcWWbar, s)), {gadc_wwbar_closed(theta, d, p).c_pair}};
            });
    return {left};
}

std::vector<Panel> fig9() {
    std::vector<Panel> out;
    const std::pair<const char*, double> cases[] = {{"left", 0.0}, {"right", kPi / 2.0}};
    for (const auto& [panel, theta] : cases) {
        Panel p{std::string("fig9_") + panel, "d", {"c2_spectral", "c2_spectral_closed"}, {}};
        for (double pp : {0.0, 0.5, 1.0})
            add_series(p, linspace(0.0, 1.0, 401), label("p", pp), [theta = theta, pp](double d) {
                ScenarioParams s;
                s.theta = theta;
                s.d = d;
                s.p = pp;
                const auto rho = scenario_state(ScenarioId::GadcWWbar, s);
                return Row{0, "", full_report(rho), {spectral_itangle(rho, Focus::A).value, gadc_wwbar_closed(theta, d, pp).c2_spectral}};
            });
        out.push_back(std::move(p));
    }
    return out;
}

// d_ESD against p; not a state report, so its own layout
std::string fig8_desd_csv() {
    const auto ps = linspace(0.0, 1.0, 401);
    std::vector<std::string> lines(3 * ps.size());
    parallel_for(lines.size(), [&](size_t k) {
        const auto& [tag, theta] = kThetas[k / ps.size()];
        const double p = ps[k % ps.size()];
        lines[k] = format_g17(p) + ',' + format_g17(d_esd(theta, p)) + ',' + format_g17(numeric_d_esd(theta, p)) + ',' + tag;
    });
    std::string s = "p,d_esd,d_esd_numeric,series\n";
    for (const auto& l : lines) s += l + '\n';
    return s;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
    return ids;
}

std::vector<std::string> run_figure(const std::string& fig, const std::string& out) {
    std::vector<Panel> panels;
    if (fig == "fig1") panels = fig1();
    else if (fig == "fig2") panels = fig2();
    else if (fig == "fig3") panels = fig3();
    else if (fig == "fig4") panels = fig4();
    else if (fig == "fig5") panels = fig5();
    else if (fig == "fig6") panels = fig6();
    else if (fig == "fig7") panels = fig7();
    else if (fig == "fig8") panels = fig8();
    else if (fig == "fig9") panels = fig9();
    else throw Error(ErrorKind::InvalidArgument, "unknown figure '" + fig + "' (fig1..fig9)");

    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (!std::filesystem::is_directory(out)) throw Error(ErrorKind::Io, "cannot create output directory " + out);

    std::vector<std::string> written;
    for (const auto& p : panels) {
        std::vector<Row> rows(p.jobs.size());
        parallel_for(rows.size(), [&](size_t k) { rows[k] = p.jobs[k](); });
        const std::string path = (std::filesystem::path(out) / (p.name + ".csv")).string();
        write_text(path, render_panel(p, rows));
        written.push_back(path);
    }
    if (fig == "fig8") {
        const std::string path = (std::filesystem::path(out) / "fig8_right.csv").string();
        write_text(path, fig8_desd_csv());
        written.push_back(path);
    }
    return written;
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TRITANGLE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) n = std::min(n, static_cast<unsigned>(v));
    }
    return n;
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    const size_t workers = std::min<size_t>(worker_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace tritangle
