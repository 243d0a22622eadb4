#include <doctest.h>

#include <cmath>
#include <complex>

#include "cavity/quadrature.hpp"
#include "cavity/reservoir.hpp"

using namespace cavity;
using cd = std::complex<double>;

namespace {
const CrowReservoir kStrong{1.0, 0.025, 0.05};  // eta = 2.0
const CrowReservoir kWeak{1.0, 0.025, 0.01};    // eta = 0.4

double max_kernel_diff(const KernelSeries& a, const KernelSeries& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    return worst;
}
} // namespace

TEST_CASE("crow spectral density closed form") {
    // J(w0) = (lambda/lambda0)^2 * 2 lambda0 = 4 * 0.05 = 0.2 for eta = 2.
    CHECK(crow_spectral_density(kStrong, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(crow_spectral_density(kStrong, kStrong.band_upper()) == 0.0);
    CHECK(crow_spectral_density(kStrong, kStrong.omega0 - 3.0 * kStrong.lambda0) == 0.0);
    for (int i = 0; i <= 200; ++i) {
        const double w = 0.9 + 0.2 * i / 200.0;
        CHECK(crow_spectral_density(kStrong, w) >= 0.0);
    }
}

TEST_CASE("crow spectral density matches discrete-mode density") {
    // Continuum density recovered from 10^4 discrete modes binned in a
    // narrow frequency window: J(w) ~ (pi/delta) * sum_window |V_k|^2.
    const auto modes = sample_crow_modes(kStrong, 10000);
    const double delta = 2e-3;
    for (double w : {1.0, 0.97, 1.03}) {
        double acc = 0.0;
        for (const auto& m : modes.modes)
            if (std::abs(m.omega - w) < delta) acc += std::norm(m.coupling);
        const double estimate = M_PI / delta * acc;
        CHECK(estimate == doctest::Approx(crow_spectral_density(kStrong, w)).epsilon(1e-3));
    }
}

TEST_CASE("memory kernel closed form against band quadrature") {
    const TimeGrid grid(0.5, 10);
    const auto g = memory_kernel(kStrong, grid);

    // g(0) = lambda^2: the band integral of J/(2 pi).
    CHECK(std::abs(g.values[0] - cd{kStrong.lambda * kStrong.lambda, 0.0}) < 1e-14);
    CHECK(std::abs(crow_memory_kernel_quadrature(kStrong, 0.0) -
                   cd{kStrong.lambda * kStrong.lambda, 0.0}) < 1e-12);

    for (double tau : {0.0, 3.7, 41.3, 333.7, 1999.1}) {
        const TimeGrid g2(tau > 0 ? tau / 2 : 0.5, 2);
        const auto series = memory_kernel(kStrong, g2);
        CHECK(std::abs(series.values[2] - crow_memory_kernel_quadrature(kStrong, g2.t_max())) <
              1e-8);
    }
}

TEST_CASE("rotated crow kernel is real") {
    // J is symmetric about w0, so e^{i w0 tau} g(tau) is real.
    const TimeGrid grid(1.7, 100);
    const auto g = memory_kernel(kWeak, grid);
    for (std::size_t j = 0; j < g.values.size(); ++j) {
        const double tau = grid.time(static_cast<int>(j));
        const cd rotated = g.values[j] * std::exp(cd{0.0, kWeak.omega0 * tau});
        CHECK(std::abs(rotated.imag()) < 1e-10);
    }
}

TEST_CASE("single discrete mode kernel") {
    DiscreteReservoir one{{{0.93, cd{0.2, 0.0}}}};
    const TimeGrid grid(0.1, 500);
    const auto g = memory_kernel(one, grid);
    for (std::size_t j = 0; j < g.values.size(); ++j) {
        const double tau = grid.time(static_cast<int>(j));
        const cd expected = 0.04 * std::exp(cd{0.0, -0.93 * tau});
        CHECK(std::abs(g.values[j] - expected) < 1e-11);
    }
}

TEST_CASE("discrete sampling converges to the continuum kernel") {
    const TimeGrid grid(4.0, 500); // tau * lambda0 up to 50
    const auto exact = memory_kernel(kStrong, grid);

    // 10^4 modes: recurrence time N/(2 lambda0) = 2e5 is far outside the
    // window, agreement to machine noise.
    const auto fine = memory_kernel(ReservoirModel{sample_crow_modes(kStrong, 10000)}, grid);
    CHECK(max_kernel_diff(fine, exact) < 1e-12);

    // 50 modes: exact inside the light cone (tau < N/(2 lambda0) = 1000),
    // visibly wrong beyond it.
    const auto coarse = memory_kernel(ReservoirModel{sample_crow_modes(kStrong, 50)}, grid);
    double inside = 0.0, outside = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double err = std::abs(coarse.values[j] - exact.values[j]);
        if (grid.time(static_cast<int>(j)) < 900.0) inside = std::max(inside, err);
        else outside = std::max(outside, err);
    }
    CHECK(inside < 1e-12);
    CHECK(outside > 1e-5);
}

TEST_CASE("thermal kernel limits") {
    const TimeGrid grid(0.5, 20);

    SUBCASE("vacuum occupation gives identically zero") {
        const auto gt = thermal_kernel(kStrong, [](double) { return 0.0; }, grid);
        for (const auto& v : gt.values) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("single mode with nbar = 2") {
        DiscreteReservoir one{{{1.1, cd{0.3, 0.0}}}};
        const auto gt = thermal_kernel(ReservoirModel{one}, [](double) { return 2.0; }, grid);
        for (std::size_t j = 0; j < gt.values.size(); ++j) {
            const double tau = grid.time(static_cast<int>(j));
            CHECK(std::abs(gt.values[j] - 2.0 * 0.09 * std::exp(cd{0.0, -1.1 * tau})) < 1e-12);
        }
    }
    SUBCASE("constant occupation factors out of the band integral") {
        const auto g = memory_kernel(kStrong, grid);
        const auto gt = thermal_kernel(kStrong, [](double) { return 0.7; }, grid);
        for (std::size_t j = 0; j < gt.values.size(); ++j)
            CHECK(std::abs(gt.values[j] - 0.7 * g.values[j]) < 1e-8);
    }
    SUBCASE("negative occupation rejected") {
        CHECK_THROWS_AS(thermal_kernel(kStrong, [](double) { return -0.1; }, grid),
                        std::invalid_argument);
    }
}

TEST_CASE("f kernel closed form") {
    const TimeGrid grid(0.5, 10);
    const auto h = f_kernel(kStrong, grid);
    CHECK(std::abs(h.values[0] - cd{kStrong.lambda * std::sqrt(M_PI / 2.0), 0.0}) < 1e-14);

    // Closed Bessel form against the band quadrature of the defining
    // double-integral integrand.
    for (double tau : {0.37, 11.9, 153.2, 1200.6}) {
        const TimeGrid g2(tau, 2);
        const auto series = f_kernel(kStrong, g2);
        CHECK(std::abs(series.values[1] - crow_f_kernel_quadrature(kStrong, tau)) < 1e-8);
    }

    SUBCASE("decoupled cavity has no F kernel") {
        const CrowReservoir off{1.0, 0.025, 0.0};
        const auto h0 = f_kernel(off, grid);
        for (const auto& v : h0.values) CHECK(std::abs(v) == 0.0);
    }
}

TEST_CASE("tabulated reservoir reproduces the crow band") {
    TabulatedReservoir tab;
    tab.omega_min = kStrong.band_lower();
    tab.omega_max = kStrong.band_upper();
    const int samples = 4001;
    tab.samples.resize(samples);
    for (int i = 0; i < samples; ++i) {
        const double w = tab.omega_min + (tab.omega_max - tab.omega_min) * i / (samples - 1.0);
        tab.samples[static_cast<std::size_t>(i)] = crow_spectral_density(kStrong, w);
    }

    const TimeGrid grid(2.0, 10);
    const auto g_tab = memory_kernel(ReservoirModel{tab}, grid);
    const auto g_exact = memory_kernel(kStrong, grid);
    CHECK(max_kernel_diff(g_tab, g_exact) < 1e-6);

    SUBCASE("negative samples rejected") {
        tab.samples[10] = -1e-3;
        CHECK_THROWS_AS(memory_kernel(ReservoirModel{tab}, grid), std::invalid_argument);
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(memory_kernel(CrowReservoir{1.0, 0.0, 0.05}, TimeGrid(0.1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(memory_kernel(DiscreteReservoir{}, TimeGrid(0.1, 2)), std::invalid_argument);
}
