#ifndef CAVITY_TIME_GRID_HPP
#define CAVITY_TIME_GRID_HPP

#include <cstddef>
#include <stdexcept>

namespace cavity {

/// Uniform time grid t_j = j*dt, j = 0..n_steps.
struct TimeGrid {
    double dt = 0.0;
    int n_steps = 0;

    TimeGrid() = default;
    TimeGrid(double dt_, int n_steps_) : dt(dt_), n_steps(n_steps_) {
        if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
        if (n_steps < 2) throw std::invalid_argument("TimeGrid: n_steps must be >= 2");
    }

    std::size_t size() const { return static_cast<std::size_t>(n_steps) + 1; }
    double time(int j) const { return j * dt; }
    double t_max() const { return n_steps * dt; }

    bool operator==(const TimeGrid&) const = default;
};

/// Grid covering [0, t_max] with the given step; t_max is rounded to a whole
/// number of steps.
inline TimeGrid grid_for_duration(double dt, double t_max) {
    if (!(dt > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("grid_for_duration: dt and t_max must be positive");
    int n = static_cast<int>(t_max / dt + 0.5);
    if (n < 2) n = 2;
    return TimeGrid(dt, n);
}

} // namespace cavity

#endif
