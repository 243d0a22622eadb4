#ifndef CAVITY_CSV_IO_HPP
#define CAVITY_CSV_IO_HPP

#include <string>
#include <vector>

#include "cavity/chain_oracle.hpp"
#include "cavity/observables.hpp"
#include "cavity/propagator.hpp"
#include "cavity/reservoir.hpp"
#include "cavity/tcl.hpp"

namespace cavity::csv {

// All writers emit a header row and comma-separated %.12e numerics (flags as
// 0/1 integers), so identical inputs produce byte-identical files.

void write_kernel(const std::string& path, const KernelSeries& kernel);
void write_propagator(const std::string& path, const PropagatorSolution& sol);
void write_correlations(const std::string& path, const CorrelationFunctions& corr);
void write_observables(const std::string& path, const ObservableTrajectory& traj);
void write_oracle_moments(const std::string& path, const OracleMoments& moments);
void write_coefficients(const std::string& path, const MasterEqCoefficients& coeffs);

struct ComparisonRow {
    double t;
    double n_corr;
    double n_unc;
};
void write_comparison(const std::string& path, const std::vector<ComparisonRow>& rows);

} // namespace cavity::csv

#endif
