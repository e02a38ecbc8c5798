#include "tritangle/tritangle.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "channels.hpp"
#include "closedform.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "measures.hpp"
#include "states.hpp"

using namespace tritangle;

struct tt_state {
    DensityMatrix rho;
};

struct tt_channel {
    KrausChannel ch;
};

struct tt_sweep {
    SweepSpec spec;
    // last rendered CSV, so the size query and the copy evaluate the grid once
    mutable std::optional<std::string> csv;
};

struct tt_oracle_report {
    OracleReport rep;
};

namespace {

thread_local std::string g_last_error;

tt_status fail(tt_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

tt_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return TT_ERR_INVALID_ARGUMENT;
        case ErrorKind::Domain: return TT_ERR_DOMAIN;
        case ErrorKind::Rank: return TT_ERR_RANK;
        case ErrorKind::NotConverged: return TT_ERR_NOT_CONVERGED;
        case ErrorKind::Io: return TT_ERR_IO;
    }
    return TT_ERR_INTERNAL;
}

template <class F>
tt_status guard(F&& f) {
    try {
        g_last_error.clear();
        f();
        return TT_OK;
    } catch (const Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(TT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TT_ERR_INTERNAL, e.what());
    }
}

void need(const void* p, const char* what) {
    if (!p) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is null");
}

void copy_out(const std::string& s, char* buf, size_t cap, size_t* len) {
    if (len) *len = s.size();
    if (!buf) {
        if (cap) throw Error(ErrorKind::InvalidArgument, "buffer is null");
        return;
    }
    if (cap <= s.size()) {
        if (cap) buf[0] = '\0';
        throw Error(ErrorKind::InvalidArgument, "buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
}

MForm to_form(tt_mform f) {
    switch (f) {
        case TT_MFORM_STANDARD: return MForm::Standard;
        case TT_MFORM_SINGLE_CROSS: return MForm::SingleCross;
        case TT_MFORM_WEIGHTED: return MForm::Weighted;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown M form");
}

HamiltonianParams to_params(const tt_hamiltonian* h) {
    need(h, "hamiltonian");
    return {h->J, h->Delta, h->D, h->B};
}

void emit_state(DensityMatrix rho, tt_state** out) {
    need(out, "out");
    *out = new tt_state{std::move(rho)};
}

void copy_cstr(char* dst, size_t cap, const std::string& s) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(dst, s.data(), n);
    dst[n] = '\0';
}

}  // namespace

extern "C" {

const char* tt_last_error(void) { return g_last_error.c_str(); }

const char* tt_status_name(tt_status s) {
    switch (s) {
        case TT_OK: return "ok";
        case TT_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case TT_ERR_DOMAIN: return "domain";
        case TT_ERR_RANK: return "rank";
        case TT_ERR_NOT_CONVERGED: return "not_converged";
        case TT_ERR_IO: return "io";
        case TT_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* tt_version(void) { return "1.0.0"; }

tt_status tt_state_parse(const char* spec, tt_state** out) {
    return guard([&] {
        need(spec, "spec");
        emit_state(parse_state_spec(spec), out);
    });
}

tt_status tt_state_from_matrix(const double* re, const double* im, tt_state** out) {
    return guard([&] {
        need(re, "re");
        need(im, "im");
        Matrix m(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m(i, j) = cplx(re[i * 8 + j], im[i * 8 + j]);
        emit_state(validate(m), out);
    });
}

tt_status tt_state_matrix(const tt_state* s, double* re, double* im) {
    return guard([&] {
        need(s, "state");
        need(re, "re");
        need(im, "im");
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                re[i * 8 + j] = s->rho.mat()(i, j).real();
                im[i * 8 + j] = s->rho.mat()(i, j).imag();
            }
    });
}

void tt_state_free(tt_state* s) { delete s; }

tt_status tt_evolve_schrodinger(const tt_state* in, const tt_hamiltonian* h, double t, tt_state** out) {
    return guard([&] {
        need(in, "state");
        emit_state(schrodinger_evolve(in->rho, to_params(h), t), out);
    });
}

tt_status tt_evolve_milburn(const tt_state* in, const tt_hamiltonian* h, double gamma, double t, tt_state** out) {
    return guard([&] {
        need(in, "state");
        emit_state(milburn_evolve(in->rho, to_params(h), gamma, t), out);
    });
}

tt_status tt_channel_parse(const char* spec, tt_channel** out) {
    return guard([&] {
        need(spec, "spec");
        need(out, "out");
        *out = new tt_channel{parse_channel_spec(spec)};
    });
}

void tt_channel_free(tt_channel* c) { delete c; }

tt_status tt_channel_apply(const tt_channel* c, const tt_state* in, const char* placement, tt_state** out) {
    return guard([&] {
        need(c, "channel");
        need(in, "state");
        need(placement, "placement");
        emit_state(apply(in->rho, c->ch, parse_placement(placement)), out);
    });
}

tt_status tt_dephasing_lambda(double b, double tau, double t, double* out) {
    return guard([&] {
        need(out, "out");
        *out = dephasing_lambda(b, tau, t);
    });
}

tt_status tt_measure(const tt_state* s, tt_mform form, tt_report* out) {
    return guard([&] {
        need(s, "state");
        need(out, "out");
        const auto r = full_report(s->rho, to_form(form));
        tt_report t{};
        t.c_ab = r.c_ab;
        t.c_ac = r.c_ac;
        t.c_bc = r.c_bc;
        t.c2_a_bc = r.c2_a_bc;
        t.c2_b_ac = r.c2_b_ac;
        t.c2_c_ab = r.c2_c_ab;
        t.has_tau = r.tau.has_value();
        t.has_gtc = r.gtc.has_value();
        t.has_fill = r.fill.has_value();
        t.tau = r.tau.value_or(0.0);
        t.gtc = r.gtc.value_or(0.0);
        t.fill = r.fill.value_or(0.0);
        t.s_lin = r.s_lin;
        copy_cstr(t.path, sizeof t.path, r.path);
        copy_cstr(t.warning, sizeof t.warning, r.warning);
        *out = t;
    });
}

tt_status tt_report_csv_header(const char* param_name, char* buf, size_t cap, size_t* len) {
    return guard([&] {
        need(param_name, "param_name");
        copy_out(report_csv_header(param_name), buf, cap, len);
    });
}

tt_status tt_measure_csv(const tt_state* s, tt_mform form, double param, char* buf, size_t cap, size_t* len) {
    return guard([&] {
        need(s, "state");
        copy_out(report_csv_row(param, full_report(s->rho, to_form(form))), buf, cap, len);
    });
}

size_t tt_scenario_count(void) { return scenario_table().size(); }

const char* tt_scenario_name(size_t i) { return i < scenario_table().size() ? scenario_table()[i].name : nullptr; }

const char* tt_scenario_params(size_t i) { return i < scenario_table().size() ? scenario_table()[i].params : nullptr; }

const char* tt_scenario_domain(size_t i) { return i < scenario_table().size() ? scenario_table()[i].domain : nullptr; }

size_t tt_figure_count(void) { return figure_ids().size(); }

const char* tt_figure_id(size_t i) { return i < figure_ids().size() ? figure_ids()[i].c_str() : nullptr; }

tt_status tt_run_figure(const char* fig, const char* out_dir, char* paths, size_t cap, size_t* len) {
    return guard([&] {
        need(fig, "fig");
        need(out_dir, "out_dir");
        std::string joined;
        for (const auto& p : run_figure(fig, out_dir)) joined += p + '\n';
        if (paths || len) copy_out(joined, paths, cap, len);
    });
}

tt_status tt_sweep_new(const char* scenario, tt_sweep** out) {
    return guard([&] {
        need(scenario, "scenario");
        need(out, "out");
        auto* s = new tt_sweep{};
        s->spec.target = scenario_name(parse_scenario(scenario));
        *out = s;
    });
}

void tt_sweep_free(tt_sweep* s) { delete s; }

tt_status tt_sweep_set_param(tt_sweep* s, const char* name, double value) {
    return guard([&] {
        need(s, "sweep");
        need(name, "name");
        set_param(s->spec.base, name, value);
        s->csv.reset();
    });
}

tt_status tt_sweep_add_axis(tt_sweep* s, const char* name, double start, double stop, int steps) {
    return guard([&] {
        need(s, "sweep");
        need(name, "name");
        GridAxis ax{name, start, stop, steps};
        SweepSpec probe;
        probe.grid = {ax};
        validate_spec(probe);
        s->spec.grid.push_back(ax);
        s->csv.reset();
    });
}

tt_status tt_sweep_write(const tt_sweep* s, const char* path) {
    return guard([&] {
        need(s, "sweep");
        need(path, "path");
        SweepSpec spec = s->spec;
        spec.output_path = path;
        sweep(spec);
    });
}

tt_status tt_sweep_csv(const tt_sweep* s, char* buf, size_t cap, size_t* len) {
    return guard([&] {
        need(s, "sweep");
        if (!s->csv) s->csv = sweep_csv(s->spec);
        copy_out(*s->csv, buf, cap, len);
    });
}

tt_status tt_validate_oracle(const char* scenario, tt_oracle_report** out) {
    return guard([&] {
        need(scenario, "scenario");
        need(out, "out");
        *out = new tt_oracle_report{cross_validate(parse_scenario(scenario))};
    });
}

void tt_oracle_report_free(tt_oracle_report* r) { delete r; }

int tt_oracle_report_pass(const tt_oracle_report* r) { return r && r->rep.pass ? 1 : 0; }

size_t tt_oracle_report_points(const tt_oracle_report* r) { return r ? r->rep.points : 0; }

double tt_oracle_report_seconds(const tt_oracle_report* r) { return r ? r->rep.seconds : 0.0; }

size_t tt_oracle_report_field_count(const tt_oracle_report* r) { return r ? r->rep.fields.size() : 0; }

tt_status tt_oracle_report_field(const tt_oracle_report* r, size_t i, const char** name, double* max_dev, double* tolerance,
                                 int* pass, const char** worst) {
    return guard([&] {
        need(r, "report");
        if (i >= r->rep.fields.size()) throw Error(ErrorKind::InvalidArgument, "field index out of range");
        const auto& f = r->rep.fields[i];
        if (name) *name = f.name.c_str();
        if (max_dev) *max_dev = f.max_dev;
        if (tolerance) *tolerance = f.w4_rule ? -1.0 : f.tolerance;
        if (pass) *pass = f.pass ? 1 : 0;
        if (worst) *worst = f.worst.c_str();
    });
}

}  // extern "C"
