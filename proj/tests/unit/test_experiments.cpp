#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "experiments.hpp"
#include "support.hpp"

using namespace tritangle;

namespace {

size_t count_lines(const std::string& s) { return static_cast<size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("experiments") {
    TEST_CASE("gW frequencies and their common period") {
        const auto f = gw_frequencies({1, 0, 0, 0}, FrequencyKind::Bipartite);
        CHECK(std::is_sorted(f.values.begin(), f.values.end()));
        const auto t = common_period(f, 1e-9);
        REQUIRE(t.has_value());
        CHECK(*t == doctest::Approx(std::numbers::pi / 3).epsilon(1e-9));
        const auto g = common_period({{std::sqrt(2.0), 1.0}}, 1e-9);
        CHECK_FALSE(g.has_value());
    }

    TEST_CASE("autocorrelation period of a known signal") {
        const double T = 1.7;
        const VectorSignal sig = [&](double t) {
            return std::vector<double>{std::sin(2 * std::numbers::pi * t / T) + 0.3 * std::cos(4 * std::numbers::pi * t / T)};
        };
        CHECK(detect_period(sig, 12.0, 3000) == doctest::Approx(T).epsilon(1e-4));
    }

    TEST_CASE("extremum helpers") {
        std::vector<double> xs, ys;
        for (int i = 0; i <= 1000; ++i) {
            xs.push_back(i * 0.01);
            ys.push_back(std::cos(2 * std::numbers::pi * (xs.back() - 1.234) / 3.0));
        }
        // maxima at 1.234, 4.234, 7.234: the first one is reported
        const Peak p = first_global_max(xs, ys);
        CHECK(p.x == doctest::Approx(1.234).epsilon(1e-4));
        const Peak g = golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1);
        CHECK(g.x == doctest::Approx(0.3).epsilon(1e-8));
    }

    TEST_CASE("parameter access by name") {
        ScenarioParams s;
        set_param(s, "tau", 2.5);
        set_param(s, "B", -0.2);
        CHECK(get_param(s, "tau") == 2.5);
        CHECK(s.B == -0.2);
        CHECK_THROWS_AS(set_param(s, "zeta", 1), Error);
    }

    TEST_CASE("grid axes") {
        const GridAxis ax{"d", 0.0, 0.3, 4};
        CHECK(axis_value(ax, 0) == 0.0);
        CHECK(axis_value(ax, 3) == 0.3);
        CHECK(axis_value(ax, 1) == doctest::Approx(0.1));
        SweepSpec spec{"Pdc1W", {{"d", 0, 1, 1}}, {}, ""};
        CHECK_THROWS_AS(validate_spec(spec), Error);
        spec.grid = {{"q", 0, 1, 3}};
        CHECK_THROWS_AS(validate_spec(spec), Error);
        spec.grid.clear();
        CHECK_THROWS_AS(validate_spec(spec), Error);
    }

    TEST_CASE("numeric and closed fields share names") {
        for (const auto& info : scenario_table()) {
            ScenarioParams s;
            s.d = 0.3, s.t = 1.0, s.w = 0.1, s.w1 = 0.1, s.p = 0.2;
            const auto a = closed_fields(info.id, s), b = numeric_fields(info.id, s);
            REQUIRE(a.size() == b.size());
            for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].name == b[i].name);
        }
    }

    TEST_CASE("cross validation on small grids") {
        SweepSpec g{"MilburnGGHZ", {{"a", 0.1, 0.9, 5}, {"t", 0, 10, 5}}, {}, ""};
        const auto r = cross_validate(ScenarioId::MilburnGGHZ, g);
        CHECK(r.points == 25);
        CHECK(r.pass);
        SweepSpec h{"Adc3GGHZ", {{"d", 0.5, 1.0, 3}}, {}, ""};
        const auto bad = cross_validate(ScenarioId::Adc3GGHZ, h);
        CHECK_FALSE(bad.pass);
        CHECK(default_oracle_grid(ScenarioId::Pdc1W).grid[0].steps >= 400);
    }

    TEST_CASE("sweep CSV layout") {
        SweepSpec spec{"Pdc1W", {{"d", 0, 1, 3}}, {}, ""};
        const std::string csv = sweep_csv(spec);
        CHECK(count_lines(csv) == 4);
        CHECK(csv.rfind("d,c_ab,c_ac,c_bc,c2_a_bc,c2_b_ac,c2_c_ab,tau,gtc,fill,s_lin,path,c2_a_bc_closed", 0) == 0);
        CHECK(csv.find("\n0.5,") != std::string::npos);
        const auto dir = std::filesystem::temp_directory_path() / "tritangle_sweep_test";
        std::filesystem::create_directories(dir);
        spec.output_path = (dir / "s.csv").string();
        sweep(spec);
        std::ifstream in(spec.output_path);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == csv);
        spec.output_path = (dir / "s.csv" / "x.csv").string();  // parent is a file
        CHECK_THROWS_AS(sweep(spec), Error);
    }

    TEST_CASE("figure output") {
        CHECK(figure_ids().size() == 9);
        const auto dir = std::filesystem::temp_directory_path() / "tritangle_fig_test";
        std::filesystem::remove_all(dir);
        const auto paths = run_figure("fig4", dir.string());
        REQUIRE(!paths.empty());
        for (const auto& p : paths) CHECK(std::filesystem::exists(p));
        std::ifstream in(paths.front());
        std::string head;
        std::getline(in, head);
        CHECK(head.find(",series") != std::string::npos);
        CHECK_THROWS_AS(run_figure("fig10", dir.string()), Error);
    }

    TEST_CASE("parallel_for covers every index and rethrows") {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h.load() == 1);
        CHECK_THROWS_AS(parallel_for(100, [](size_t i) {
                            if (i == 57) throw Error(ErrorKind::Domain, "boom");
                        }),
                        Error);
        CHECK(worker_count() >= 1);
    }
}
