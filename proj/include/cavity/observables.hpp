#ifndef CAVITY_OBSERVABLES_HPP
#define CAVITY_OBSERVABLES_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cavity/correlations.hpp"
#include "cavity/initial_state.hpp"
#include "cavity/propagator.hpp"

namespace cavity {

/// Squeezed-thermal characterization of a Gaussian state with moments (n, s):
/// r = (1/4) ln[(n + |s| + 1/2)/(n - |s| + 1/2)], theta = arg s,
/// nbar = sqrt((n + 1/2)^2 - |s|^2) - 1/2. At s = 0: r = 0, theta = 0,
/// nbar = n. Unphysical input (n + 1/2 < |s|) is clamped to the physical
/// boundary and flagged, never silently accepted.
struct SqueezingParameters {
    double r = 0.0;
    double theta = 0.0;
    double nbar = 0.0;
    bool physical = true;
};

SqueezingParameters squeezing_decomposition(double n, std::complex<double> s);

/// Quadrature covariance matrix for X = (a + a^dag)/sqrt(2),
/// Y = (a - a^dag)/(sqrt(2) i):
///   Var X = 1/2 + n + Re s, Var Y = 1/2 + n - Re s, Cov{XY} = Im s.
/// det = (nbar + 1/2)^2 for physical inputs.
Eigen::Matrix2d covariance_matrix(double n, std::complex<double> s);

struct ObservableTrajectory {
    TimeGrid grid;
    std::vector<std::complex<double>> mean; // <a(t)>
    std::vector<double> n;                  // <a^dag a>
    std::vector<std::complex<double>> s;    // <a a>
    std::vector<double> r, theta, nbar;
    std::vector<char> physical_flags;
};

/// Closed-form trajectories
///   <a> = u <a(0)> + v0,
///   n   = |u|^2 n(0) + 2 Re[u* nu1] + v1,
///   s   = u^2 s(0) + 2 u nu2 + v2,
/// with the squeezed-thermal fields filled per node.
ObservableTrajectory evolve_observables(const PropagatorSolution& sol,
                                        const CorrelationFunctions& corr,
                                        const InitialStateSpec& spec);

} // namespace cavity

#endif
