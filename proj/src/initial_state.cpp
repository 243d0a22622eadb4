#include "cavity/initial_state.hpp"

#include <stdexcept>

namespace cavity {

CavityMoments initial_cavity_moments(const InitialStateSpec& spec) {
    if (const auto* th = std::get_if<UncorrelatedThermal>(&spec)) return th->cavity;
    if (const auto* sq = std::get_if<SqueezedVacuumCorrelated>(&spec)) {
        const double sh = std::sinh(sq->r_s);
        return {{0.0, 0.0}, sh * sh, {0.0, 0.0}};
    }
    const auto& bs = std::get<BeamSplitterThermal>(spec);
    return {{0.0, 0.0}, bs.cavity_occupation(), {0.0, 0.0}};
}

void validate(const InitialStateSpec& spec) {
    if (const auto* th = std::get_if<UncorrelatedThermal>(&spec)) {
        if (!th->occupation)
            throw std::invalid_argument("UncorrelatedThermal: missing occupation function");
        if (th->cavity.n0 < 0.0)
            throw std::invalid_argument("UncorrelatedThermal: n0 must be >= 0");
        if (th->cavity.n0 + 0.5 < std::abs(th->cavity.s0))
            throw std::invalid_argument("UncorrelatedThermal: unphysical moments, n0 + 1/2 < |s0|");
        if (std::norm(th->cavity.mean) > th->cavity.n0)
            throw std::invalid_argument("UncorrelatedThermal: unphysical moments, |<a>|^2 > n0");
        return;
    }
    if (const auto* sq = std::get_if<SqueezedVacuumCorrelated>(&spec)) {
        if (sq->r_s < 0.0)
            throw std::invalid_argument("SqueezedVacuumCorrelated: r_s must be >= 0");
        return;
    }
    const auto& bs = std::get<BeamSplitterThermal>(spec);
    if (bs.nbar_a < 0.0 || bs.nbar_b1 < 0.0)
        throw std::invalid_argument("BeamSplitterThermal: occupations must be >= 0");
}

} // namespace cavity
