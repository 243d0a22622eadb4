#ifndef CAVITY_CORRELATIONS_HPP
#define CAVITY_CORRELATIONS_HPP

#include <complex>
#include <vector>

#include "cavity/chain_oracle.hpp"
#include "cavity/initial_state.hpp"
#include "cavity/propagator.hpp"
#include "cavity/reservoir.hpp"

namespace cavity {

/// The five reservoir-induced functions entering the observable solutions:
/// nu1 from <a^dag(0) b_k(0)>, nu2 from <a(0) b_k(0)>, v0 from <b_k(0)>,
/// v1 = <f^dag f> (real, >= 0), v2 = <f f>. All vanish at t = 0. v0 is
/// identically zero for every built-in preparation (reservoir modes carry no
/// coherent amplitude).
struct CorrelationFunctions {
    TimeGrid grid;
    std::vector<std::complex<double>> nu1, nu2, v0, v2;
    std::vector<double> v1;
    std::vector<std::complex<double>> nu1_dot, nu2_dot, v2_dot;
    std::vector<double> v1_dot;

    static CorrelationFunctions zero(const TimeGrid& grid);
};

/// Build the correlation functions for a preparation.
///   UncorrelatedThermal   needs gtilde (occupation-weighted kernel); v1 by
///                         double trapezoid with O(N) incremental updates per
///                         step, derivative from the single-integral reduction
///                         v1_dot = 2 Re[u*(t) int_0^t gtilde(t-s) u(s) ds].
///   SqueezedVacuumCorrelated / BeamSplitterThermal need F; closed forms in
///                         F(t), derivatives from F_dot (never differenced).
CorrelationFunctions correlation_functions(const InitialStateSpec& spec,
                                           const PropagatorSolution& sol,
                                           const ConvolutionSeries* F,
                                           const KernelSeries* gtilde);

/// Site-basis initial moments over (cavity, b_1, ..., b_N) for the chain
/// oracle.
GaussianMoments initial_chain_moments(const InitialStateSpec& spec, int chain_size);

/// v2 from reservoir-internal two-photon correlations <b_k(0) b_k'(0)> of a
/// discrete-mode reservoir (Gaussian, zero mean):
///   v2(t) = -sum_{kk'} V_k V_k' P_kk' int int e^{-i(w_k s + w_k' s')}
///           u(t-s) u(t-s') ds ds'.
/// No built-in preparation populates this; provided for custom reservoirs.
std::vector<std::complex<double>> discrete_two_photon_v2(const DiscreteReservoir& reservoir,
                                                         const Eigen::MatrixXcd& pair_corr,
                                                         const PropagatorSolution& sol);

} // namespace cavity

#endif
