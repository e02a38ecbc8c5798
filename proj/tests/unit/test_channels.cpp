#include <doctest.h>

#include <random>

#include "channels.hpp"
#include "error.hpp"
#include "support.hpp"

namespace {

// rho' = sum_k K_k rho K_k^dagger on one qubit, by explicit index sums
oracle::M8 kraus_on(const oracle::M8& rho, const std::vector<std::array<oracle::C, 4>>& ks, int q) {
    oracle::M8 out{};
    const int mask = 1 << (2 - q);
    for (const auto& k : ks)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const int ii = (i & ~mask) | (a ? mask : 0), jj = (j & ~mask) | (b ? mask : 0);
                        out[i * 8 + j] += k[oracle::bit(i, q) * 2 + a] * rho[ii * 8 + jj] * std::conj(k[oracle::bit(j, q) * 2 + b]);
                    }
    return out;
}

std::vector<std::array<oracle::C, 4>> ops_of(const tt::KrausChannel& ch) {
    std::vector<std::array<oracle::C, 4>> r;
    for (const auto& m : ch.ops) r.push_back({m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
    return r;
}

}  // namespace

TEST_SUITE("channels") {
    TEST_CASE("Kraus sets are complete") {
        for (double d : {0.0, 0.3, 1.0}) {
            CHECK(tt::completeness_error(tt::pdc(d)) < 1e-15);
            CHECK(tt::completeness_error(tt::adc(d)) < 1e-15);
            for (double p : {0.0, 0.4, 1.0}) CHECK(tt::completeness_error(tt::gadc(d, p)) < 1e-15);
        }
        CHECK(tt::completeness_error(tt::nonmarkov_dephasing(-0.3)) < 1e-15);
        CHECK(tt::gadc(0.3, 1.0).ops.size() == 2);
        CHECK(tt::gadc(0.3, 0.0).ops.size() == 2);
        CHECK(tt::gadc(0.3, 0.5).ops.size() == 4);
    }

    TEST_CASE("single-qubit action against index sums") {
        std::mt19937_64 rng(8);
        const auto rho = oracle::density(oracle::random_pure(rng));
        const auto ch = tt::gadc(0.35, 0.25);
        const auto lib = tt::DensityMatrix::trusted(to_lib(rho));
        const tt::Placement pl[] = {tt::Placement::FirstQubit, tt::Placement::SecondQubit, tt::Placement::ThirdQubit};
        for (int q = 0; q < 3; ++q) CHECK(max_diff(tt::apply(lib, ch, pl[q]).mat(), kraus_on(rho, ops_of(ch), q)) < 1e-15);
        auto all = rho;
        for (int q = 0; q < 3; ++q) all = kraus_on(all, ops_of(ch), q);
        CHECK(max_diff(tt::apply(lib, ch, tt::Placement::AllQubits).mat(), all) < 1e-15);
    }

    TEST_CASE("amplitude damping takes |1> to |0>") {
        const auto rho = tt::DensityMatrix::from_pure(tt::basis_state(7));
        const auto out = tt::apply(rho, tt::adc(1.0), tt::Placement::AllQubits);
        CHECK(out.mat()(0, 0).real() == doctest::Approx(1.0));
        const auto amp = tt::apply(tt::DensityMatrix::from_pure(tt::basis_state(0)), tt::gadc(1.0, 0.0), tt::Placement::FirstQubit);
        CHECK(amp.mat()(4, 4).real() == doctest::Approx(1.0));
    }

    TEST_CASE("phase damping removes coherence only") {
        const auto rho = tt::DensityMatrix::from_pure(tt::gghz(std::sqrt(0.5)));
        const auto out = tt::apply(rho, tt::pdc(0.75), tt::Placement::FirstQubit);
        CHECK(out.mat()(0, 7).real() == doctest::Approx(0.25));
        CHECK(out.mat()(0, 0).real() == doctest::Approx(0.5));
    }

    TEST_CASE("telegraph dephasing factor") {
        CHECK(tt::dephasing_lambda(1, 5, 0) == doctest::Approx(1));
        // oscillatory regime: crosses zero and revives
        bool crossed = false;
        for (double t = 0; t < 60; t += 0.01)
            if (tt::dephasing_lambda(1, 5, t) < 0) crossed = true;
        CHECK(crossed);
        CHECK(std::abs(tt::dephasing_lambda(1, 5, 200)) < 1e-3);
        const auto ch = tt::nonmarkov_dephasing(0.4);
        const auto out = tt::apply(tt::DensityMatrix::from_pure(tt::gghz(std::sqrt(0.5))), ch, tt::Placement::FirstQubit);
        CHECK(out.mat()(0, 7).real() == doctest::Approx(0.2));
        CHECK_THROWS_AS(tt::dephasing_lambda(1, 0, 1), tt::Error);
    }

    TEST_CASE("rate to strength") {
        CHECK(tt::adc_strength_from_rate(0.5, 1.0) == doctest::Approx(1 - std::exp(-1.0)));
        CHECK_THROWS_AS(tt::adc_strength_from_rate(-1, 1), tt::Error);
    }

    TEST_CASE("channel and placement syntax") {
        CHECK(tt::parse_channel_spec("gadc:0.2,0.7").p == doctest::Approx(0.7));
        CHECK(tt::parse_channel_spec("pdc:0.5").label == "pdc");
        CHECK(tt::parse_placement("q3") == tt::Placement::ThirdQubit);
        CHECK(std::string(tt::placement_name(tt::Placement::AllQubits)) == "all");
        CHECK_THROWS_AS(tt::parse_channel_spec("adc"), tt::Error);
        CHECK_THROWS_AS(tt::parse_channel_spec("pdc:1.5"), tt::Error);
        CHECK_THROWS_AS(tt::parse_placement("q4"), tt::Error);
    }
}
