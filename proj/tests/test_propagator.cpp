#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cavity/chain_oracle.hpp"
#include "cavity/propagator.hpp"
#include "cavity/reservoir.hpp"

using namespace cavity;
using cd = std::complex<double>;

namespace {
constexpr cd I{0.0, 1.0};

KernelSeries zero_kernel(const TimeGrid& grid) {
    return {grid, std::vector<cd>(grid.size(), cd{0.0, 0.0})};
}

// Analytic solution for one resonant mode: u(t) = e^{-i w t} cos(V t).
PropagatorSolution resonant_pair_solution(double omega, double V, const TimeGrid& grid) {
    std::vector<cd> u(grid.size()), udot(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.time(static_cast<int>(j));
        const cd phase = std::exp(-I * omega * t);
        u[j] = phase * std::cos(V * t);
        udot[j] = phase * (-I * omega * std::cos(V * t) - V * std::sin(V * t));
    }
    return PropagatorSolution::from_samples(grid, omega, std::move(u), std::move(udot));
}
} // namespace

TEST_CASE("decoupled cavity rotates without decay") {
    const TimeGrid grid(0.2, 2000);
    const double omega_c = 1.0;
    const auto sol = solve_u(zero_kernel(grid), omega_c, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.time(static_cast<int>(j));
        CHECK(std::abs(sol.u[j] - std::exp(-I * omega_c * t)) < 1e-12);
        CHECK(std::abs(std::abs(sol.u[j]) - 1.0) < 1e-12);
        CHECK(std::abs(sol.u_dot[j] + I * omega_c * sol.u[j]) < 1e-12);
    }
}

TEST_CASE("single resonant mode reproduces the two-level beat") {
    const double omega_c = 1.0, V = 0.05;
    const TimeGrid grid(0.05, 4000); // t up to 200, V t up to 10
    DiscreteReservoir one{{{omega_c, cd{V, 0.0}}}};
    const auto kernel = memory_kernel(ReservoirModel{one}, grid);
    const auto sol = solve_u(kernel, omega_c, grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.time(static_cast<int>(j));
        worst = std::max(worst, std::abs(sol.u[j] - std::exp(-I * omega_c * t) * std::cos(V * t)));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("stored derivative is the defining right-hand side") {
    const CrowReservoir res{1.0, 0.025, 0.05};
    const TimeGrid grid(0.2, 1500);
    const auto kernel = memory_kernel(res, grid);
    const auto sol = solve_u(kernel, 1.0, grid);

    // Independent plain-frame recomputation of the trapezoidal memory
    // integral from the stored samples.
    double worst = 0.0, scale = 1.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        cd conv{0.0, 0.0};
        if (j > 0) {
            conv = 0.5 * (kernel.values[j] * sol.u[0] + kernel.values[0] * sol.u[j]);
            for (std::size_t m = 1; m <= j - 1; ++m) conv += kernel.values[m] * sol.u[j - m];
            conv *= grid.dt;
        }
        const cd rhs = -I * 1.0 * sol.u[j] - conv;
        worst = std::max(worst, std::abs(rhs - sol.u_dot[j]));
        scale = std::max(scale, std::abs(sol.u_dot[j]));
    }
    CHECK(worst < 1e-12 * scale);
}

TEST_CASE("volterra solution matches the chain oracle") {
    const double omega_c = 1.0;
    const TimeGrid grid(0.2, 3000); // t up to 600
    for (double eta : {0.4, 1.2, 2.0}) {
        const CrowReservoir res{1.0, 0.025, eta * 0.025};
        const auto sol = solve_u(memory_kernel(res, grid), omega_c, grid);
        const auto chain = ChainHamiltonian::build(omega_c, res, 150);
        const auto reference = oracle_u(chain, grid);
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            worst = std::max(worst, std::abs(sol.u[j] - reference[j]));
            CHECK(std::abs(sol.u[j]) <= 1.0 + 1e-6);
        }
        CAPTURE(eta);
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("growing solution is rejected with the offending step") {
    // Sign-flipped kernel acts as gain; |u| must cross 1 + 1e-3 and throw.
    const CrowReservoir res{1.0, 0.025, 0.05};
    const TimeGrid grid(0.2, 5000);
    auto kernel = memory_kernel(res, grid);
    for (auto& v : kernel.values) v = -v;
    CHECK_THROWS_WITH_AS(solve_u(kernel, 1.0, grid), doctest::Contains("step"),
                         std::runtime_error);
}

TEST_CASE("logarithmic derivative and zero flags") {
    SUBCASE("decoupled value is exactly -i omega_c") {
        const TimeGrid grid(0.2, 10);
        const auto sol = solve_u(zero_kernel(grid), 1.0, grid);
        CHECK(std::abs(logarithmic_derivative(sol, 5) - cd{0.0, -1.0}) < 1e-14);
    }
    SUBCASE("cosine zero of the resonant pair is flagged") {
        const double V = 0.05;
        const int k = 100;
        const double dt = M_PI / (2.0 * V) / k; // node k sits at the zero
        const TimeGrid grid(dt, 2 * k);
        const auto sol = resonant_pair_solution(1.0, V, grid);
        CHECK(sol.zero_flags[k] == 1);
        const cd ld = logarithmic_derivative(sol, k);
        CHECK(std::isnan(ld.real()));
        CHECK(std::isnan(ld.imag()));
        // Neighbouring nodes are regular.
        CHECK(sol.zero_flags[k - 1] == 0);
        CHECK(std::isfinite(logarithmic_derivative(sol, k - 1).real()));
    }
    SUBCASE("weak-coupling early times damp the cavity") {
        const CrowReservoir res{1.0, 0.025, 0.01}; // eta = 0.4
        const TimeGrid grid(0.2, 1000);
        const auto sol = solve_u(memory_kernel(res, grid), 1.0, grid);
        for (int j : {100, 300, 600, 900})
            CHECK(logarithmic_derivative(sol, j).real() < 0.0);
    }
}

TEST_CASE("convolution series") {
    const CrowReservoir res{1.0, 0.025, 0.03}; // eta = 1.2
    const double omega_c = 1.0;

    SUBCASE("zero kernel gives zero F") {
        const TimeGrid grid(0.2, 100);
        const auto sol = solve_u(zero_kernel(grid), omega_c, grid);
        const auto F = compute_F(zero_kernel(grid), sol);
        for (const auto& v : F.F) CHECK(std::abs(v) == 0.0);
        CHECK(std::abs(F.F_dot[0]) == 0.0);
    }

    SUBCASE("short-time growth F(t) ~ h(0) t") {
        const TimeGrid grid(1e-4, 10); // t up to 1e-3
        const auto sol = solve_u(memory_kernel(res, grid), omega_c, grid);
        const auto F = compute_F(f_kernel(res, grid), sol);
        const double h0 = res.lambda * std::sqrt(M_PI / 2.0);
        CHECK(std::abs(F.F[10]) / grid.t_max() == doctest::Approx(h0).epsilon(1e-3));
        CHECK(std::abs(F.F_dot[0] - cd{h0, 0.0}) < 1e-14);
    }

    SUBCASE("agrees with the discrete-mode evaluation") {
        const TimeGrid grid(0.2, 1500);
        const auto sol = solve_u(memory_kernel(res, grid), omega_c, grid);
        const auto F = compute_F(f_kernel(res, grid), sol);

        // 400 Bloch modes, midpoint rule in k: F ~ sqrt(2/pi) lambda
        // sum_k dk sin^2(k) q_k(t), q_k the retarded mode integral.
        const int modes = 400;
        const double dk = M_PI / modes;
        std::vector<cd> running(modes, cd{0.0, 0.0});
        std::vector<double> weight(modes), omega(modes);
        for (int m = 0; m < modes; ++m) {
            const double k = (m + 0.5) * dk;
            weight[m] = std::sqrt(2.0 / M_PI) * res.lambda * std::sin(k) * std::sin(k) * dk;
            omega[m] = res.omega0 - 2.0 * res.lambda0 * std::cos(k);
        }
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double t = grid.time(static_cast<int>(j));
            cd total{0.0, 0.0};
            for (int m = 0; m < modes; ++m) {
                if (j > 0) {
                    const double tp = grid.time(static_cast<int>(j) - 1);
                    running[m] += 0.5 * grid.dt *
                                  (std::exp(I * omega[m] * tp) * sol.u[j - 1] +
                                   std::exp(I * omega[m] * t) * sol.u[j]);
                }
                total += weight[m] * std::exp(-I * omega[m] * t) * running[m];
            }
            worst = std::max(worst, std::abs(total - F.F[j]));
        }
        CHECK(worst < 1e-3);
    }

    SUBCASE("derivative integrates back to F") {
        const TimeGrid grid(0.02, 2500); // t up to 50
        const auto sol = solve_u(memory_kernel(res, grid), omega_c, grid);
        const auto F = compute_F(f_kernel(res, grid), sol);
        cd acc{0.0, 0.0};
        double worst = 0.0;
        for (std::size_t j = 1; j < grid.size(); ++j) {
            acc += 0.5 * grid.dt * (F.F_dot[j - 1] + F.F_dot[j]);
            worst = std::max(worst, std::abs(acc - F.F[j]));
        }
        CHECK(worst < 1e-3);
    }

    SUBCASE("grid mismatch is an error") {
        const TimeGrid grid(0.2, 100), other(0.1, 100);
        const auto sol = solve_u(zero_kernel(grid), omega_c, grid);
        CHECK_THROWS_AS(compute_F(zero_kernel(other), sol), std::invalid_argument);
    }
}
