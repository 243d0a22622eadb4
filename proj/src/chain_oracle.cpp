#include "cavity/chain_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cavity {

namespace {
using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void check_window(const ChainHamiltonian& h, const TimeGrid& grid) {
    const double lambda0 = h.n_sites >= 2 ? -h.matrix(1, 2) : 0.0;
    const double window = chain_validity_window(h.n_sites, lambda0);
    if (grid.t_max() >= window) {
        const int needed = static_cast<int>(2.0 * lambda0 * grid.t_max() / 0.9) + 1;
        throw std::invalid_argument(
            "chain oracle: t_max " + std::to_string(grid.t_max()) +
            " exceeds the edge-reflection window " + std::to_string(window) +
            "; need at least N = " + std::to_string(needed) + " sites");
    }
}
} // namespace

ChainHamiltonian ChainHamiltonian::build(double omega_c, const CrowReservoir& reservoir,
                                         int n_sites) {
    if (n_sites < 1) throw std::invalid_argument("ChainHamiltonian: need n_sites >= 1");
    ChainHamiltonian h;
    h.n_sites = n_sites;
    h.matrix = Eigen::MatrixXd::Zero(n_sites + 1, n_sites + 1);
    h.matrix(0, 0) = omega_c;
    for (int n = 1; n <= n_sites; ++n) h.matrix(n, n) = reservoir.omega0;
    h.matrix(0, 1) = h.matrix(1, 0) = reservoir.lambda;
    for (int n = 1; n < n_sites; ++n)
        h.matrix(n, n + 1) = h.matrix(n + 1, n) = -reservoir.lambda0;
    return h;
}

double chain_validity_window(int n_sites, double lambda0) {
    if (lambda0 <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.9 * n_sites / (2.0 * lambda0);
}

GaussianMoments GaussianMoments::zero(int dim) {
    GaussianMoments m;
    m.mean = Eigen::VectorXcd::Zero(dim);
    m.occupations = Eigen::MatrixXcd::Zero(dim, dim);
    m.pair = Eigen::MatrixXcd::Zero(dim, dim);
    return m;
}

ChainPropagator::ChainPropagator(const ChainHamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("ChainPropagator: eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd ChainPropagator::phases(double t) const {
    const int d = dim();
    Eigen::VectorXcd p(d);
    for (int m = 0; m < d; ++m) p(m) = std::exp(-I * eigenvalues_(m) * t);
    return p;
}

Eigen::VectorXd ChainPropagator::element_weights(int i, int j) const {
    return eigenvectors_.row(i).cwiseProduct(eigenvectors_.row(j)).transpose();
}

Eigen::MatrixXcd ChainPropagator::evolution(double t) const {
    return eigenvectors_.cast<cd>() * phases(t).asDiagonal() *
           eigenvectors_.transpose().cast<cd>();
}

Eigen::VectorXcd ChainPropagator::row(int i, double t) const {
    return eigenvectors_.cast<cd>() *
           phases(t).cwiseProduct(eigenvectors_.row(i).transpose().cast<cd>());
}

Eigen::MatrixXcd one_particle_evolution(const ChainHamiltonian& h, double t) {
    if (t < 0.0) throw std::invalid_argument("one_particle_evolution: t must be >= 0");
    return ChainPropagator(h).evolution(t);
}

std::vector<cd> oracle_u(const ChainHamiltonian& h, const TimeGrid& grid) {
    check_window(h, grid);
    ChainPropagator prop(h);
    const Eigen::VectorXcd w00 = prop.element_weights(0, 0).cast<cd>();
    std::vector<cd> u(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        u[j] = (w00.transpose() * prop.phases(grid.time(static_cast<int>(j))))(0);
    return u;
}

OracleMoments oracle_moments(const ChainHamiltonian& h, const GaussianMoments& init,
                             const TimeGrid& grid) {
    check_window(h, grid);
    const int d = h.n_sites + 1;
    if (init.mean.size() != d || init.occupations.rows() != d || init.occupations.cols() != d ||
        init.pair.rows() != d || init.pair.cols() != d)
        throw std::invalid_argument("oracle_moments: moment dimensions do not match chain");

    // Indices carrying initial data; W(t)_{0,j} is only needed there.
    std::vector<int> support;
    for (int i = 0; i < d; ++i) {
        bool used = std::abs(init.mean(i)) > 0.0;
        for (int j = 0; j < d && !used; ++j)
            used = std::abs(init.occupations(i, j)) > 0.0 || std::abs(init.pair(i, j)) > 0.0 ||
                   std::abs(init.occupations(j, i)) > 0.0 || std::abs(init.pair(j, i)) > 0.0;
        if (used) support.push_back(i);
    }

    ChainPropagator prop(h);
    const auto ns = static_cast<int>(support.size());
    // Spectral weights for W_{0,j}(t) = sum_m weights_j(m) e^{-i e_m t}.
    Eigen::MatrixXcd weights(d, ns);
    for (int a = 0; a < ns; ++a)
        weights.col(a) = prop.element_weights(0, support[static_cast<std::size_t>(a)]).cast<cd>();

    OracleMoments out;
    out.grid = grid;
    out.mean.resize(grid.size());
    out.n.resize(grid.size());
    out.s.resize(grid.size());

    for (std::size_t jt = 0; jt < grid.size(); ++jt) {
        const Eigen::VectorXcd ph = prop.phases(grid.time(static_cast<int>(jt)));
        Eigen::VectorXcd w(ns);
        for (int a = 0; a < ns; ++a) w(a) = weights.col(a).transpose() * ph;

        cd mean{0.0, 0.0}, n{0.0, 0.0}, s{0.0, 0.0};
        for (int a = 0; a < ns; ++a) {
            const int ia = support[static_cast<std::size_t>(a)];
            mean += w(a) * init.mean(ia);
            for (int b = 0; b < ns; ++b) {
                const int ib = support[static_cast<std::size_t>(b)];
                n += std::conj(w(a)) * init.occupations(ia, ib) * w(b);
                s += w(a) * init.pair(ia, ib) * w(b);
            }
        }
        out.mean[jt] = mean;
        out.n[jt] = n.real();
        out.s[jt] = s;
    }
    return out;
}

} // namespace cavity
