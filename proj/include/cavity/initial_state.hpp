#ifndef CAVITY_INITIAL_STATE_HPP
#define CAVITY_INITIAL_STATE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <variant>

namespace cavity {

struct CavityMoments {
    std::complex<double> mean{0.0, 0.0}; // <a(0)>
    double n0 = 0.0;                     // <a^dag a>(0)
    std::complex<double> s0{0.0, 0.0};   // <a a>(0)
};

/// Factorized state: reservoir thermal with occupation nbar(w), cavity in an
/// arbitrary Gaussian state given by its moments.
struct UncorrelatedThermal {
    std::function<double(double)> occupation;
    CavityMoments cavity;
};

/// Cavity and first resonator in a two-mode squeezed vacuum; the reduced
/// cavity state is thermal with n(0) = sinh^2 r_s and the joint state carries
/// only the two-photon cross correlation <a(0) b_1(0)>.
struct SqueezedVacuumCorrelated {
    double r_s = 0.0;
    double theta_s = 0.0;
};

/// Two thermal modes mixed by a beam splitter of angle vartheta; carries only
/// the scattering correlation <a(0) b_1^dag(0)>.
struct BeamSplitterThermal {
    double vartheta = 0.0;
    double nbar_a = 0.0;
    double nbar_b1 = 0.0;

    double cavity_occupation() const {
        return 0.5 * (nbar_a + nbar_b1 + (nbar_a - nbar_b1) * std::cos(vartheta));
    }
    double site_occupation() const {
        return 0.5 * (nbar_a + nbar_b1 - (nbar_a - nbar_b1) * std::cos(vartheta));
    }
    double cross_correlation() const { // <a^dag(0) b_1(0)>, real
        return 0.5 * std::sin(vartheta) * (nbar_a - nbar_b1);
    }
};

using InitialStateSpec =
    std::variant<UncorrelatedThermal, SqueezedVacuumCorrelated, BeamSplitterThermal>;

/// Cavity moments implied by the preparation.
CavityMoments initial_cavity_moments(const InitialStateSpec& spec);

/// Physicality: n0 + 1/2 >= |s0|, |<a>|^2 <= n0, occupations >= 0.
void validate(const InitialStateSpec& spec);

} // namespace cavity

#endif
