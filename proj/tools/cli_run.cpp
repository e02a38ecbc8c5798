#include "cli_run.hpp"

#include <tritangle/tritangle.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace ttcli {

namespace {

// failing C call, carries the status for the error line
struct CallError {
    tt_status status;
    std::string message;
};

void check(tt_status s) {
    if (s != TT_OK) throw CallError{s, tt_last_error()};
}

using StatePtr = std::unique_ptr<tt_state, decltype(&tt_state_free)>;
using ChannelPtr = std::unique_ptr<tt_channel, decltype(&tt_channel_free)>;
using SweepPtr = std::unique_ptr<tt_sweep, decltype(&tt_sweep_free)>;
using OraclePtr = std::unique_ptr<tt_oracle_report, decltype(&tt_oracle_report_free)>;

StatePtr parse_state(const std::string& spec) {
    tt_state* s = nullptr;
    check(tt_state_parse(spec.c_str(), &s));
    return {s, tt_state_free};
}

tt_mform form_of(const std::string& name) {
    if (name == "single-cross") return TT_MFORM_SINGLE_CROSS;
    if (name == "weighted") return TT_MFORM_WEIGHTED;
    return TT_MFORM_STANDARD;
}

// two-call pattern: size query then fill
template <class F>
std::string fetch(F&& call) {
    size_t len = 0;
    check(call(nullptr, 0, &len));
    std::string s(len + 1, '\0');
    check(call(s.data(), s.size(), &len));
    s.resize(len);
    return s;
}

std::string header(const std::string& param) {
    return fetch([&](char* b, size_t c, size_t* l) { return tt_report_csv_header(param.c_str(), b, c, l); });
}

std::string row(const tt_state* s, tt_mform f, double param) {
    return fetch([&](char* b, size_t c, size_t* l) { return tt_measure_csv(s, f, param, b, c, l); });
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw CallError{TT_ERR_IO, "cannot write " + c.out};
    f << text;
    if (!f) throw CallError{TT_ERR_IO, "write failed for " + c.out};
}

int cmd_measure(const RunConfig& c, std::ostream& out) {
    auto s = parse_state(c.state);
    emit(c, header("param") + '\n' + row(s.get(), form_of(c.mform), 0.0) + '\n', out);
    return 0;
}

int cmd_evolve(const RunConfig& c, std::ostream& out) {
    auto s0 = parse_state(c.state);
    const tt_hamiltonian h{c.J, c.Delta, c.D, c.B};
    std::ostringstream os;
    os << header("t") << '\n';
    for (int i = 0; i < c.steps; ++i) {
        const double t = i == c.steps - 1 ? *c.tmax : *c.tmax * i / (c.steps - 1);
        tt_state* st = nullptr;
        if (c.milburn) check(tt_evolve_milburn(s0.get(), &h, *c.gamma, t, &st));
        else check(tt_evolve_schrodinger(s0.get(), &h, t, &st));
        StatePtr owned(st, tt_state_free);
        os << row(owned.get(), form_of(c.mform), t) << '\n';
    }
    emit(c, os.str(), out);
    return 0;
}

int cmd_channel(const RunConfig& c, std::ostream& out) {
    auto s0 = parse_state(c.state);
    tt_channel* ch = nullptr;
    check(tt_channel_parse(c.channel.c_str(), &ch));
    ChannelPtr owned_ch(ch, tt_channel_free);
    tt_state* st = nullptr;
    check(tt_channel_apply(ch, s0.get(), c.place.c_str(), &st));
    StatePtr owned(st, tt_state_free);
    emit(c, header("param") + '\n' + row(owned.get(), form_of(c.mform), 0.0) + '\n', out);
    return 0;
}

int cmd_figure(const RunConfig& c, std::ostream& out) {
    const std::string dir = c.out.empty() ? "." : c.out;
    // one call: a size query would compute the figure twice
    std::string paths(1 << 16, '\0');
    size_t len = 0;
    check(tt_run_figure(c.figure.c_str(), dir.c_str(), paths.data(), paths.size(), &len));
    paths.resize(len);
    out << paths;
    return 0;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    tt_sweep* raw = nullptr;
    check(tt_sweep_new(c.scenario.c_str(), &raw));
    SweepPtr sw(raw, tt_sweep_free);
    check(tt_sweep_set_param(sw.get(), "J", c.J));
    check(tt_sweep_set_param(sw.get(), "Delta", c.Delta));
    check(tt_sweep_set_param(sw.get(), "D", c.D));
    check(tt_sweep_set_param(sw.get(), "B", c.B));
    if (c.gamma) check(tt_sweep_set_param(sw.get(), "gamma", *c.gamma));
    for (const auto& [k, v] : c.params) check(tt_sweep_set_param(sw.get(), k.c_str(), v));
    for (const auto& ax : c.grid) check(tt_sweep_add_axis(sw.get(), ax.name.c_str(), ax.start, ax.stop, ax.steps));
    if (c.tmax) check(tt_sweep_add_axis(sw.get(), "t", 0.0, *c.tmax, c.steps));
    if (c.grid.empty() && !c.tmax) throw CallError{TT_ERR_INVALID_ARGUMENT, "sweep needs a [grid] axis or --tmax"};
    if (!c.out.empty()) {
        check(tt_sweep_write(sw.get(), c.out.c_str()));
        out << c.out << '\n';
    } else {
        out << fetch([&](char* b, size_t cap, size_t* l) { return tt_sweep_csv(sw.get(), b, cap, l); });
    }
    return 0;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
    std::vector<std::string> targets;
    if (!c.scenario.empty()) targets.push_back(c.scenario);
    else
        for (size_t i = 0; i < tt_scenario_count(); ++i) targets.emplace_back(tt_scenario_name(i));
    bool all = true;
    out << "scenario,field,max_dev,bound,pass,worst_point\n";
    for (const auto& id : targets) {
        tt_oracle_report* raw = nullptr;
        check(tt_validate_oracle(id.c_str(), &raw));
        OraclePtr rep(raw, tt_oracle_report_free);
        for (size_t i = 0; i < tt_oracle_report_field_count(rep.get()); ++i) {
            const char* name = nullptr;
            const char* worst = nullptr;
            double dev = 0, tol = 0;
            int pass = 0;
            check(tt_oracle_report_field(rep.get(), i, &name, &dev, &tol, &pass, &worst));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", dev);
            out << id << ',' << name << ',' << buf << ',' << (tol < 0 ? std::string("10*w^4") : std::string("1e-10")) << ','
                << (pass ? "pass" : "FAIL") << ',' << worst << '\n';
        }
        all = all && tt_oracle_report_pass(rep.get());
    }
    out << (all ? "all scenarios pass\n" : "some scenarios FAIL\n");
    return all ? 0 : 1;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "measure") return cmd_measure(c, out);
        if (c.command == "evolve") return cmd_evolve(c, out);
        if (c.command == "channel") return cmd_channel(c, out);
        if (c.command == "figure") return cmd_figure(c, out);
        if (c.command == "sweep") return cmd_sweep(c, out);
        if (c.command == "validate-oracles") return cmd_validate(c, out);
        err << "error: kind=usage where=command message=no command given\n";
        return 2;
    } catch (const CallError& e) {
        err << "error: kind=" << tt_status_name(e.status) << " message=" << e.message << '\n';
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        c = parse_args(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const UsageError& e) {
        err << "error: kind=usage where=" << e.where() << " message=" << e.what() << '\n';
        return 2;
    }
    return run(c, out, err);
}

}  // namespace ttcli
