#ifndef CAVITY_CHAIN_ORACLE_HPP
#define CAVITY_CHAIN_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cavity/reservoir.hpp"
#include "cavity/time_grid.hpp"

namespace cavity {

/// One-particle Hamiltonian of cavity + finite open chain: diagonal
/// (w_c, w0, ..., w0), entry (0,1) = +lambda, entries (n, n+1) = -lambda0
/// for n >= 1. Mode 0 is the cavity, modes 1..N the chain sites.
struct ChainHamiltonian {
    int n_sites = 0; // reservoir sites N; matrix dimension N+1
    Eigen::MatrixXd matrix;

    static ChainHamiltonian build(double omega_c, const CrowReservoir& reservoir, int n_sites);
};

/// Latest time the finite chain faithfully emulates the semi-infinite
/// reservoir: 0.9 * N / (2 lambda0) (edge-reflection light cone, group
/// velocity <= 2 lambda0).
double chain_validity_window(int n_sites, double lambda0);

/// First and second moments of a zero-mean-or-not Gaussian state over
/// (cavity, b_1, ..., b_N): occupations(i,j) = <c_i^dag c_j>,
/// pair(i,j) = <c_i c_j>.
struct GaussianMoments {
    Eigen::VectorXcd mean;
    Eigen::MatrixXcd occupations;
    Eigen::MatrixXcd pair;

    static GaussianMoments zero(int dim);
};

/// Eigendecomposition cache: decompose once, evaluate W(t) = exp(-iHt) at
/// many times.
class ChainPropagator {
  public:
    explicit ChainPropagator(const ChainHamiltonian& h);

    int dim() const { return static_cast<int>(eigenvalues_.size()); }
    /// Full unitary W(t).
    Eigen::MatrixXcd evolution(double t) const;
    /// Single row of W(t).
    Eigen::VectorXcd row(int i, double t) const;
    /// e^{-i e_m t} over the spectrum.
    Eigen::VectorXcd phases(double t) const;
    /// Spectral weights of the element W_ij(t) = sum_m weights(m) e^{-i e_m t}.
    Eigen::VectorXd element_weights(int i, int j) const;

  private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

Eigen::MatrixXcd one_particle_evolution(const ChainHamiltonian& h, double t);

/// u(t) as the cavity-cavity element W(t)_00 on the grid. Errors if the grid
/// extends beyond the chain's validity window.
std::vector<std::complex<double>> oracle_u(const ChainHamiltonian& h, const TimeGrid& grid);

struct OracleMoments {
    TimeGrid grid;
    std::vector<std::complex<double>> mean;
    std::vector<double> n;
    std::vector<std::complex<double>> s;
};

/// Exact Gaussian second-moment transport mean -> W mean, M -> W M W^dag,
/// S -> W S W^T, sampled at the cavity mode. Exploits sparse initial moments:
/// cost O(dim) per time per occupied row.
OracleMoments oracle_moments(const ChainHamiltonian& h, const GaussianMoments& init,
                             const TimeGrid& grid);

} // namespace cavity

#endif
