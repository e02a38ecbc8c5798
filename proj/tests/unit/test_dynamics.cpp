#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "dynamics.hpp"
#include "error.hpp"
#include "support.hpp"

namespace {

// Milburn solution as a Poisson mixture of powers of exp(-iH/gamma)
oracle::M8 milburn_series(const oracle::M8& h, const oracle::M8& rho, double gamma, double t) {
    const oracle::M8 u = oracle::expm_iht(h, 1.0 / gamma);
    oracle::M8 ud;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) ud[i * 8 + j] = std::conj(u[j * 8 + i]);
    oracle::M8 out{}, cur = rho;
    const double mu = gamma * t;
    double w = std::exp(-mu);
    for (int k = 0; k < 400; ++k) {
        for (int i = 0; i < 64; ++i) out[i] += w * cur[i];
        cur = oracle::mul(oracle::mul(u, cur), ud);
        w *= mu / (k + 1);
    }
    return out;
}

}  // namespace

TEST_SUITE("dynamics") {
    TEST_CASE("Hamiltonian matches basis-state action") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int n = 0; n < 20; ++n) {
            const tt::HamiltonianParams p{u(rng), u(rng), u(rng), u(rng)};
            CHECK(max_diff(tt::build_hamiltonian(p), oracle::hamiltonian(p.J, p.Delta, p.D, p.B)) < 1e-14);
        }
    }

    TEST_CASE("closed-form spectrum and fixed eigenbasis") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int n = 0; n < 50; ++n) {
            const tt::HamiltonianParams p{u(rng), u(rng), u(rng), u(rng)};
            auto e = tt::spectrum_closed_form(p);
            auto num = tt::herm_eig(tt::build_hamiltonian(p)).values;
            std::sort(e.begin(), e.end());
            for (int i = 0; i < 8; ++i) CHECK(std::abs(e[i] - num[i]) < 1e-12);
            CHECK(tt::u_diagonalization_error(p) < 1e-13);
        }
        const auto e = tt::spectrum_closed_form({1, 0.3, 0.2, 0.7});
        CHECK(e[7] - e[0] == doctest::Approx(6 * 0.7));
        const auto& U = tt::basis_change_u();
        CHECK(tt::max_abs_diff(U.adjoint() * U, tt::Matrix::identity(8)) < 1e-15);
    }

    TEST_CASE("Schrodinger propagator against a Taylor series") {
        std::mt19937_64 rng(4);
        const tt::HamiltonianParams p{1.0, 0.4, 0.7, -0.3};
        const auto h = oracle::hamiltonian(p.J, p.Delta, p.D, p.B);
        for (double t : {0.1, 1.3, 7.0}) {
            CHECK(max_diff(tt::propagator(p, t), oracle::expm_iht(h, t)) < 1e-11);
            const auto v = oracle::random_pure(rng);
            const auto got = tt::schrodinger_evolve(to_lib(v), p, t);
            const auto ref = oracle::apply(oracle::expm_iht(h, t), v);
            for (int i = 0; i < 8; ++i) CHECK(std::abs(got.amp[i] - ref[i]) < 1e-11);
        }
    }

    TEST_CASE("Milburn evolution against the Poisson series") {
        std::mt19937_64 rng(6);
        const tt::HamiltonianParams p{1.0, 0.5, 0.3, 0.2};
        const auto h = oracle::hamiltonian(p.J, p.Delta, p.D, p.B);
        for (auto [gamma, t] : {std::pair{0.5, 2.0}, std::pair{2.0, 0.7}, std::pair{5.0, 3.0}}) {
            const auto rho = oracle::density(oracle::random_pure(rng));
            const auto got = tt::milburn_evolve(tt::DensityMatrix::trusted(to_lib(rho)), p, gamma, t);
            CHECK(max_diff(got.mat(), milburn_series(h, rho, gamma, t)) < 1e-10);
        }
    }

    TEST_CASE("Milburn factor limits") {
        CHECK(std::abs(tt::milburn_factor(1, 1, 0.5, 10) - tt::cplx(1)) < 1e-15);
        // large gamma approaches the von Neumann phase
        const auto f = tt::milburn_factor(0.9, 0.2, 1e6, 2.0);
        CHECK(std::abs(f - std::polar(1.0, -0.7 * 2.0)) < 1e-6);
        const auto g = tt::milburn_factor(0.9, 0.2, 50.0, 2.0);
        CHECK(std::abs(g - tt::milburn_factor_approx(0.9, 0.2, 50.0, 2.0)) < 1e-4);
        CHECK_THROWS_AS(tt::milburn_factor(0, 1, 0.0, 1), tt::Error);
        const auto rho = tt::DensityMatrix::from_pure(tt::gghz(0.6));
        CHECK_THROWS_AS(tt::milburn_evolve(rho, {}, 0.5, -1.0), tt::Error);
    }

    TEST_CASE("Milburn preserves trace and energy populations") {
        const auto rho = tt::DensityMatrix::from_pure(tt::gw(0.5, 0.5));
        const tt::HamiltonianParams p{1.0, 0.2, 0.4, 0.1};
        const auto out = tt::milburn_evolve(rho, p, 0.7, 4.0);
        CHECK(std::abs(out.mat().trace() - tt::cplx(1)) < 1e-13);
        const auto& U = tt::basis_change_u();
        const auto a = U.adjoint() * rho.mat() * U, b = U.adjoint() * out.mat() * U;
        for (int i = 0; i < 8; ++i) CHECK(std::abs(a(i, i) - b(i, i)) < 1e-13);
    }
}
