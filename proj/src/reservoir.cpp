#include "cavity/reservoir.hpp"

#include <cmath>
#include <stdexcept>

#include "cavity/quadrature.hpp"

namespace cavity {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// J1(x)/x, finite at x = 0 (limit 1/2).
double j1_over_x(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-6) {
        const double x2 = x * x;
        return 0.5 - x2 / 16.0 + x2 * x2 / 384.0;
    }
    return std::cyl_bessel_j(1, ax) / ax;
}

int oscillation_panels(double band_width, double tau) {
    // Enough seed panels that e^{-i w tau} turns less than ~pi per panel.
    return std::max(4, static_cast<int>(band_width * std::abs(tau) / M_PI) + 1);
}

void check_crow(const CrowReservoir& m) {
    if (!(m.lambda0 > 0.0)) throw std::invalid_argument("CrowReservoir: lambda0 must be > 0");
    if (m.lambda < 0.0) throw std::invalid_argument("CrowReservoir: lambda must be >= 0");
    if (!std::isfinite(m.omega0)) throw std::invalid_argument("CrowReservoir: omega0 not finite");
}

void check_discrete(const DiscreteReservoir& m) {
    if (m.modes.empty()) throw std::invalid_argument("DiscreteReservoir: mode list empty");
    for (const auto& mode : m.modes)
        if (!std::isfinite(mode.omega) || !std::isfinite(std::abs(mode.coupling)))
            throw std::invalid_argument("DiscreteReservoir: non-finite mode");
}

void check_tabulated(const TabulatedReservoir& m) {
    if (!(m.omega_max > m.omega_min))
        throw std::invalid_argument("TabulatedReservoir: empty band");
    if (m.samples.size() < 2)
        throw std::invalid_argument("TabulatedReservoir: need at least two samples");
    for (double j : m.samples)
        if (!(j >= 0.0) || !std::isfinite(j))
            throw std::invalid_argument("TabulatedReservoir: J(w) must be finite and >= 0");
}

// Sum over modes via per-mode phasor recurrence: O(modes * nodes) complex
// multiplies instead of exponentials.
KernelSeries mode_sum_kernel(const DiscreteReservoir& model, const TimeGrid& grid,
                             const std::function<double(double)>* occupation) {
    KernelSeries out{grid, std::vector<cd>(grid.size(), cd{0.0, 0.0})};
    for (const auto& mode : model.modes) {
        double w = std::norm(mode.coupling);
        if (occupation) {
            const double nbar = (*occupation)(mode.omega);
            if (nbar < 0.0)
                throw std::invalid_argument("thermal_kernel: negative occupation");
            w *= nbar;
        }
        if (w == 0.0) continue;
        const cd step = std::exp(-I * mode.omega * grid.dt);
        cd phase{1.0, 0.0};
        for (std::size_t j = 0; j < grid.size(); ++j) {
            out.values[j] += w * phase;
            phase *= step;
        }
    }
    return out;
}

KernelSeries band_quadrature_kernel(double lo, double hi,
                                    const std::function<double(double)>& weight,
                                    const TimeGrid& grid,
                                    const std::vector<double>* breakpoints) {
    KernelSeries out{grid, std::vector<cd>(grid.size())};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double tau = grid.time(static_cast<int>(j));
        auto integrand = [&](double w) { return weight(w) * std::exp(-I * w * tau); };
        out.values[j] = quad::integrate(integrand, lo, hi, 1e-10,
                                        oscillation_panels(hi - lo, tau), breakpoints) /
                        (2.0 * M_PI);
    }
    return out;
}

} // namespace

double TabulatedReservoir::density(double omega) const {
    if (omega <= omega_min || omega >= omega_max) return 0.0;
    const double x = (omega - omega_min) / (omega_max - omega_min) *
                     static_cast<double>(samples.size() - 1);
    const auto i = static_cast<std::size_t>(x);
    if (i + 1 >= samples.size()) return samples.back();
    const double frac = x - static_cast<double>(i);
    return samples[i] * (1.0 - frac) + samples[i + 1] * frac;
}

std::vector<double> TabulatedReservoir::sample_points() const {
    std::vector<double> pts(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        pts[i] = omega_min + (omega_max - omega_min) * static_cast<double>(i) /
                                 static_cast<double>(samples.size() - 1);
    return pts;
}

void validate(const ReservoirModel& model) {
    std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CrowReservoir>) check_crow(m);
        else if constexpr (std::is_same_v<T, DiscreteReservoir>) check_discrete(m);
        else check_tabulated(m);
    }, model);
}

double crow_spectral_density(const CrowReservoir& model, double omega) {
    check_crow(model);
    const double x = omega - model.omega0;
    const double half_width = 2.0 * model.lambda0;
    if (std::abs(x) >= half_width) return 0.0;
    const double ratio = model.lambda / model.lambda0;
    return ratio * ratio * std::sqrt(half_width * half_width - x * x);
}

std::complex<double> crow_memory_kernel_quadrature(const CrowReservoir& model, double tau,
                                                   double rel_tol) {
    check_crow(model);
    auto integrand = [&](double w) {
        return crow_spectral_density(model, w) * std::exp(-I * w * tau);
    };
    const double lo = model.band_lower(), hi = model.band_upper();
    return quad::integrate(integrand, lo, hi, rel_tol, oscillation_panels(hi - lo, tau)) /
           (2.0 * M_PI);
}

std::complex<double> crow_f_kernel_quadrature(const CrowReservoir& model, double tau,
                                              double rel_tol) {
    check_crow(model);
    // eta/sqrt(2 pi) * int dw sin[k(w)] e^{-i w tau} over the band,
    // sin k(w) = sqrt(4 l0^2 - (w - w0)^2) / (2 l0).
    auto integrand = [&](double w) {
        const double x = w - model.omega0;
        const double arg = 4.0 * model.lambda0 * model.lambda0 - x * x;
        const double sin_k = arg > 0.0 ? std::sqrt(arg) / (2.0 * model.lambda0) : 0.0;
        return sin_k * std::exp(-I * w * tau);
    };
    const double lo = model.band_lower(), hi = model.band_upper();
    return model.eta() / std::sqrt(2.0 * M_PI) *
           quad::integrate(integrand, lo, hi, rel_tol, oscillation_panels(hi - lo, tau));
}

KernelSeries memory_kernel(const ReservoirModel& model, const TimeGrid& grid) {
    validate(model);
    if (const auto* crow = std::get_if<CrowReservoir>(&model)) {
        KernelSeries out{grid, std::vector<cd>(grid.size())};
        const double l2 = crow->lambda * crow->lambda;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double tau = grid.time(static_cast<int>(j));
            out.values[j] = 2.0 * l2 * j1_over_x(2.0 * crow->lambda0 * tau) *
                            std::exp(-I * crow->omega0 * tau);
        }
        return out;
    }
    if (const auto* disc = std::get_if<DiscreteReservoir>(&model))
        return mode_sum_kernel(*disc, grid, nullptr);
    const auto& tab = std::get<TabulatedReservoir>(model);
    const auto pts = tab.sample_points();
    return band_quadrature_kernel(tab.omega_min, tab.omega_max,
                                  [&](double w) { return tab.density(w); }, grid, &pts);
}

KernelSeries thermal_kernel(const ReservoirModel& model,
                            const std::function<double(double)>& occupation,
                            const TimeGrid& grid) {
    validate(model);
    if (!occupation) throw std::invalid_argument("thermal_kernel: missing occupation");

    if (const auto* disc = std::get_if<DiscreteReservoir>(&model))
        return mode_sum_kernel(*disc, grid, &occupation);

    double lo, hi;
    std::function<double(double)> weight;
    const std::vector<double>* breakpoints = nullptr;
    std::vector<double> pts;
    if (const auto* crow = std::get_if<CrowReservoir>(&model)) {
        lo = crow->band_lower();
        hi = crow->band_upper();
        weight = [crow, &occupation](double w) {
            return crow_spectral_density(*crow, w) * occupation(w);
        };
    } else {
        const auto& tab = std::get<TabulatedReservoir>(model);
        lo = tab.omega_min;
        hi = tab.omega_max;
        pts = tab.sample_points();
        breakpoints = &pts;
        weight = [&tab, &occupation](double w) { return tab.density(w) * occupation(w); };
    }
    for (int i = 0; i <= 100; ++i) {
        const double w = lo + (hi - lo) * i / 100.0;
        if (occupation(w) < 0.0)
            throw std::invalid_argument("thermal_kernel: occupation negative on band");
    }
    return band_quadrature_kernel(lo, hi, weight, grid, breakpoints);
}

KernelSeries f_kernel(const CrowReservoir& model, const TimeGrid& grid) {
    check_crow(model);
    KernelSeries out{grid, std::vector<cd>(grid.size())};
    const double amp = 2.0 * model.lambda * std::sqrt(M_PI / 2.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double tau = grid.time(static_cast<int>(j));
        out.values[j] = amp * j1_over_x(2.0 * model.lambda0 * tau) *
                        std::exp(-I * model.omega0 * tau);
    }
    return out;
}

DiscreteReservoir sample_crow_modes(const CrowReservoir& model, int n_modes) {
    check_crow(model);
    if (n_modes < 1) throw std::invalid_argument("sample_crow_modes: need n_modes >= 1");
    DiscreteReservoir out;
    out.modes.reserve(static_cast<std::size_t>(n_modes));
    const double norm = std::sqrt(2.0 / (n_modes + 1.0));
    for (int m = 1; m <= n_modes; ++m) {
        const double k = M_PI * m / (n_modes + 1.0);
        out.modes.push_back({model.omega0 - 2.0 * model.lambda0 * std::cos(k),
                             cd{model.lambda * norm * std::sin(k), 0.0}});
    }
    return out;
}

} // namespace cavity
