#ifndef CAVITY_RESERVOIR_HPP
#define CAVITY_RESERVOIR_HPP

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "cavity/time_grid.hpp"

namespace cavity {

/// Tight-binding chain of identical resonators side-coupled to the cavity.
/// Band [omega0 - 2*lambda0, omega0 + 2*lambda0]; eta = lambda/lambda0 sets
/// the coupling regime. All frequencies in units of omega0, times in 1/omega0.
struct CrowReservoir {
    double omega0 = 1.0;   // resonator frequency
    double lambda0 = 0.0;  // nearest-neighbour hopping, > 0
    double lambda = 0.0;   // cavity to first-resonator coupling, >= 0

    double band_lower() const { return omega0 - 2.0 * lambda0; }
    double band_upper() const { return omega0 + 2.0 * lambda0; }
    double eta() const { return lambda / lambda0; }
};

struct ReservoirMode {
    double omega = 0.0;
    std::complex<double> coupling{0.0, 0.0};
};

struct DiscreteReservoir {
    std::vector<ReservoirMode> modes;
};

/// Spectral density sampled uniformly on [omega_min, omega_max]; linear
/// interpolation between samples, zero outside the band.
struct TabulatedReservoir {
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::vector<double> samples;

    double density(double omega) const;
    std::vector<double> sample_points() const;
};

using ReservoirModel = std::variant<CrowReservoir, DiscreteReservoir, TabulatedReservoir>;

void validate(const ReservoirModel& model);

/// Complex kernel sampled on tau = 0, dt, ..., t_max.
struct KernelSeries {
    TimeGrid grid;
    std::vector<std::complex<double>> values;
};

/// Closed-form spectral density of the chain band,
/// J(w) = (lambda/lambda0)^2 sqrt(4 lambda0^2 - (w - w0)^2) inside the band,
/// zero outside.
double crow_spectral_density(const CrowReservoir& model, double omega);

/// Memory kernel g(tau): closed Bessel form for the chain, band quadrature
/// for tabulated densities, direct mode sum for discrete reservoirs.
KernelSeries memory_kernel(const ReservoirModel& model, const TimeGrid& grid);

/// Occupation-weighted kernel; identically zero for vacuum occupation.
KernelSeries thermal_kernel(const ReservoirModel& model,
                            const std::function<double(double)>& occupation,
                            const TimeGrid& grid);

/// Convolution kernel h(tau) entering F(t) = int_0^t h(tau) u(t - tau) dtau;
/// h(0) = lambda sqrt(pi/2).
KernelSeries f_kernel(const CrowReservoir& model, const TimeGrid& grid);

// Band-quadrature evaluations of the chain kernels; reference path for the
// closed forms.
std::complex<double> crow_memory_kernel_quadrature(const CrowReservoir& model, double tau,
                                                   double rel_tol = 1e-10);
std::complex<double> crow_f_kernel_quadrature(const CrowReservoir& model, double tau,
                                              double rel_tol = 1e-10);

/// Discrete modes sampling the chain band: omega_m = w0 - 2 l0 cos(k_m),
/// V_m = lambda sqrt(2/(M+1)) sin(k_m), k_m = m pi/(M+1). Converges to the
/// continuum kernel as M grows.
DiscreteReservoir sample_crow_modes(const CrowReservoir& model, int n_modes);

} // namespace cavity

#endif
