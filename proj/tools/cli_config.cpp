#include "cli_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ttcli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_number(const std::string& text, const std::string& where) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size() || !std::isfinite(v)) throw UsageError(where, "expected a number, got '" + text + "'");
    return v;
}

int to_int(const std::string& text, const std::string& where) {
    const double v = to_number(text, where);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(where, "expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

bool to_bool(const std::string& text, const std::string& where) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw UsageError(where, "expected true or false, got '" + text + "'");
}

// start:stop:steps
AxisSpec to_axis(const std::string& name, const std::string& text, const std::string& where) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw UsageError(where, "axis '" + name + "' needs start:stop:steps");
    return {name, to_number(parts[0], where), to_number(parts[1], where), to_int(parts[2], where)};
}

bool is_param(const std::string& k) {
    const auto& n = scenario_param_names();
    return std::find(n.begin(), n.end(), k) != n.end();
}

void in_unit(const RunConfig& c, const char* name) {
    const auto it = c.params.find(name);
    if (it != c.params.end() && !(it->second >= 0.0 && it->second <= 1.0))
        throw UsageError(std::string("--") + name, std::string(name) + " = " + g17(it->second) + " outside [0, 1]");
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"measure", "evolve", "channel", "figure", "sweep", "validate-oracles"};
    return c;
}

const std::vector<std::string>& scenario_param_names() {
    static const std::vector<std::string> n = {"a", "d", "p", "b", "tau", "theta", "w", "w1", "w2"};
    return n;
}

void validate_config(const RunConfig& c) {
    if (!c.command.empty() && std::find(commands().begin(), commands().end(), c.command) == commands().end())
        throw UsageError("command", "unknown command '" + c.command + "'");
    for (const char* n : {"a", "d", "p", "w", "w1", "w2"}) in_unit(c, n);
    const auto w1 = c.params.count("w1") ? c.params.at("w1") : 0.0;
    const auto w2 = c.params.count("w2") ? c.params.at("w2") : 0.0;
    if (w1 + w2 > 1.0) throw UsageError("--w2", "w1 + w2 must not exceed 1");
    if (c.params.count("tau") && !(c.params.at("tau") > 0.0)) throw UsageError("--tau", "tau must be > 0");
    // sweeps take gamma as a scenario parameter
    const bool gamma_free = c.command.empty() || c.command == "sweep";
    if (c.gamma && !c.milburn && !gamma_free) throw UsageError("--gamma", "--gamma is only valid together with --milburn");
    if (c.milburn && !c.gamma) throw UsageError("--milburn", "--milburn needs --gamma");
    if (c.gamma && !(*c.gamma > 0.0)) throw UsageError("--gamma", "gamma must be > 0");
    if (c.milburn && !c.command.empty() && c.command != "evolve") throw UsageError("--milburn", "--milburn applies to evolve only");
    if (c.steps < 2) throw UsageError("--steps", "steps must be >= 2");
    if (c.tmax && !(*c.tmax > 0.0)) throw UsageError("--tmax", "tmax must be > 0");
    if (c.place != "q1" && c.place != "q2" && c.place != "q3" && c.place != "all")
        throw UsageError("--place", "placement must be q1, q2, q3 or all");
    if (c.mform != "standard" && c.mform != "single-cross" && c.mform != "weighted")
        throw UsageError("--mform", "M form must be standard, single-cross or weighted");
    for (const auto& ax : c.grid)
        if (ax.steps < 2) throw UsageError("[grid] " + ax.name, "steps must be >= 2");

    if (c.command == "measure" && c.state.empty()) throw UsageError("--state", "measure needs --state");
    if (c.command == "evolve") {
        if (c.state.empty()) throw UsageError("--state", "evolve needs --state");
        if (!c.tmax) throw UsageError("--tmax", "evolve needs --tmax");
    }
    if (c.command == "channel") {
        if (c.state.empty()) throw UsageError("--state", "channel needs --state");
        if (c.channel.empty()) throw UsageError("--channel", "channel needs --channel");
    }
    if (c.command == "figure" && c.figure.empty()) throw UsageError("figure", "figure needs an id (fig1..fig9)");
    if (c.command == "sweep" && c.scenario.empty()) throw UsageError("--scenario", "sweep needs a scenario id");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig c;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError(where, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "grid" && section != "output")
                throw UsageError(where, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(where, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError(where, "missing key");
        if (val.empty() || val.find('=') != std::string::npos) throw UsageError(where, "malformed value for '" + key + "'");
        if (section.empty()) throw UsageError(where, "key outside a section");

        if (section == "scenario") {
            if (key == "command") c.command = val;
            else if (key == "id") c.scenario = val;
            else if (key == "state") c.state = val;
            else if (key == "channel") c.channel = val;
            else if (key == "place") c.place = val;
            else if (key == "J") c.J = to_number(val, where);
            else if (key == "Delta") c.Delta = to_number(val, where);
            else if (key == "D") c.D = to_number(val, where);
            else if (key == "B") c.B = to_number(val, where);
            else if (key == "milburn") c.milburn = to_bool(val, where);
            else if (key == "gamma") c.gamma = to_number(val, where);
            else if (key == "mform") c.mform = val;
            else if (key == "figure") c.figure = val;
            else if (is_param(key)) c.params[key] = to_number(val, where);
            else throw UsageError(where, "unknown key '" + key + "' in [scenario]");
        } else if (section == "grid") {
            if (key == "tmax") c.tmax = to_number(val, where);
            else if (key == "steps") c.steps = to_int(val, where);
            else if (is_param(key) || key == "t" || key == "B" || key == "gamma" || key == "J" || key == "Delta" || key == "D")
                c.grid.push_back(to_axis(key, val, where));
            else throw UsageError(where, "unknown axis '" + key + "'");
        } else {
            if (key == "path") c.out = val;
            else throw UsageError(where, "unknown key '" + key + "' in [output]");
        }
    }
    // values only: flags may still supply what a command requires
    RunConfig values = c;
    values.command.clear();
    try {
        validate_config(values);
    } catch (const UsageError& e) {
        throw UsageError(origin + " (" + e.where() + ")", e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("--config", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "[scenario]\n";
    if (!c.command.empty()) os << "command = " << c.command << '\n';
    if (!c.scenario.empty()) os << "id = " << c.scenario << '\n';
    if (!c.state.empty()) os << "state = " << c.state << '\n';
    if (!c.channel.empty()) os << "channel = " << c.channel << '\n';
    os << "place = " << c.place << '\n';
    os << "J = " << g17(c.J) << "\nDelta = " << g17(c.Delta) << "\nD = " << g17(c.D) << "\nB = " << g17(c.B) << '\n';
    os << "milburn = " << (c.milburn ? "true" : "false") << '\n';
    if (c.gamma) os << "gamma = " << g17(*c.gamma) << '\n';
    os << "mform = " << c.mform << '\n';
    if (!c.figure.empty()) os << "figure = " << c.figure << '\n';
    for (const auto& [k, v] : c.params) os << k << " = " << g17(v) << '\n';
    os << "\n[grid]\n";
    if (c.tmax) os << "tmax = " << g17(*c.tmax) << '\n';
    os << "steps = " << c.steps << '\n';
    for (const auto& ax : c.grid) os << ax.name << " = " << g17(ax.start) << ':' << g17(ax.stop) << ':' << ax.steps << '\n';
    if (!c.out.empty()) os << "\n[output]\npath = " << c.out << '\n';
    return os.str();
}

RunConfig parse_args(int argc, const char* const* argv) {
    CLI::App app{"Entanglement measures and dynamics for the three-qubit XXZ chain with DM interaction.\n\n"
                 "States:   ghz, gghz:a, w, wbar, wwbar:theta[,phi], gw:a,b, mix-ghz:w1,w2, mix-w:w\n"
                 "Channels: pdc:d, adc:d, gadc:d,p, ntd:lambda   (placement q1, q2, q3, all)\n"
                 "Env:      TRITANGLE_THREADS caps the worker count",
                 "tritangle"};
    app.set_version_flag("--version", "tritangle 1.0.0");
    app.require_subcommand(1, 1);

    std::string config, state, channel, place, out, scenario, mform;
    double J = 1, Delta = 0, D = 0, B = 0, gamma = 0, tmax = 0;
    int steps = 0;
    bool milburn = false;
    std::map<std::string, double> pv;
    for (const auto& n : scenario_param_names()) pv[n] = 0.0;

    app.add_option("--config", config, "INI file with [scenario], [grid], [output]; flags override it");
    app.add_option("--state", state, "initial state (mini-syntax above)");
    app.add_option("--channel", channel, "channel (mini-syntax above)");
    app.add_option("--place", place, "channel placement: q1, q2, q3, all");
    app.add_option("--J", J, "exchange coupling");
    app.add_option("--Delta", Delta, "ZZ anisotropy");
    app.add_option("--D", D, "DM interaction strength");
    app.add_option("--B", B, "magnetic field");
    app.add_flag("--milburn", milburn, "evolve under the Milburn equation");
    app.add_option("--gamma", gamma, "Milburn decoherence rate (with --milburn)");
    for (const auto& n : scenario_param_names()) app.add_option("--" + n, pv[n], "scenario parameter " + n);
    app.add_option("--tmax", tmax, "final time of the time grid");
    app.add_option("--steps", steps, "points on the time grid");
    app.add_option("--out", out, "output file (measure, evolve, sweep) or directory (figure)");
    app.add_option("--scenario", scenario, "scenario id for sweep");
    app.add_option("--mform", mform, "rank-2 M matrix form: standard, single-cross, weighted");

    std::string figure, oracle_target;
    app.add_subcommand("measure", "full measure report of a state, one CSV row")->fallthrough();
    app.add_subcommand("evolve", "time series under Schrodinger or Milburn evolution")->fallthrough();
    app.add_subcommand("channel", "measure report after a Kraus channel")->fallthrough();
    auto* fig = app.add_subcommand("figure", "write the CSV panels of a figure")->fallthrough();
    fig->add_option("id", figure, "fig1..fig9");
    app.add_subcommand("sweep", "grid sweep of a scenario with closed-form columns")->fallthrough();
    auto* val = app.add_subcommand("validate-oracles", "numeric pipelines against closed forms")->fallthrough();
    val->add_option("scenario", oracle_target, "single scenario id (default: all)");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested{"tritangle 1.0.0\n"};
    } catch (const CLI::ParseError& e) {
        std::string where = "argv";
        const std::string msg = e.what();
        const auto dash = msg.find("--");
        if (dash != std::string::npos) where = msg.substr(dash, msg.find_first_of(" \n", dash) - dash);
        throw UsageError(where, msg);
    }

    RunConfig c = config.empty() ? RunConfig{} : load_config(config);
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    if (given("--state")) c.state = state;
    if (given("--channel")) c.channel = channel;
    if (given("--place")) c.place = place;
    if (given("--J")) c.J = J;
    if (given("--Delta")) c.Delta = Delta;
    if (given("--D")) c.D = D;
    if (given("--B")) c.B = B;
    if (given("--milburn")) c.milburn = milburn;
    if (given("--gamma")) c.gamma = gamma;
    for (const auto& n : scenario_param_names())
        if (given(("--" + n).c_str())) c.params[n] = pv[n];
    if (given("--tmax")) c.tmax = tmax;
    if (given("--steps")) c.steps = steps;
    if (given("--out")) c.out = out;
    if (given("--scenario")) c.scenario = scenario;
    if (given("--mform")) c.mform = mform;
    if (!figure.empty()) c.figure = figure;
    if (!oracle_target.empty()) c.scenario = oracle_target;
    validate_config(c);
    return c;
}

}  // namespace ttcli
