#include <doctest.h>

#include <cmath>
#include <complex>

#include "cavity/chain_oracle.hpp"
#include "cavity/correlations.hpp"

using namespace cavity;
using cd = std::complex<double>;

namespace {
constexpr cd I{0.0, 1.0};
const CrowReservoir kRes{1.0, 0.025, 0.03};
} // namespace

TEST_CASE("one-particle evolution is unitary and starts at identity") {
    const auto h = ChainHamiltonian::build(1.0, kRes, 60);
    const auto w0 = one_particle_evolution(h, 0.0);
    CHECK((w0 - Eigen::MatrixXcd::Identity(61, 61)).cwiseAbs().maxCoeff() < 1e-12);
    for (double t : {13.7, 200.0}) {
        const auto w = one_particle_evolution(h, t);
        CHECK((w.adjoint() * w - Eigen::MatrixXcd::Identity(61, 61)).cwiseAbs().maxCoeff() <
              1e-10);
    }
}

TEST_CASE("two-site limit diagonalizes to the beat solution") {
    const CrowReservoir res{1.0, 0.025, 0.04};
    const auto h = ChainHamiltonian::build(1.0, res, 1);
    for (double t : {0.0, 3.1, 25.0}) {
        const auto w = one_particle_evolution(h, t);
        CHECK(std::abs(w(0, 0) - std::exp(-I * 1.0 * t) * std::cos(res.lambda * t)) < 1e-12);
    }
}

TEST_CASE("decoupled cavity keeps unit amplitude") {
    const CrowReservoir res{1.0, 0.025, 0.0};
    const auto h = ChainHamiltonian::build(0.9, res, 40);
    const TimeGrid grid(1.0, 100);
    const auto u = oracle_u(h, grid);
    for (std::size_t j = 0; j < u.size(); ++j) {
        CHECK(std::abs(std::abs(u[j]) - 1.0) < 1e-12);
        CHECK(std::abs(u[j] - std::exp(-I * 0.9 * grid.time(static_cast<int>(j)))) < 1e-12);
    }
}

TEST_CASE("validity window is enforced with the minimum size") {
    const auto h = ChainHamiltonian::build(1.0, kRes, 20);
    // window = 0.9 * 20 / 0.05 = 360
    CHECK_THROWS_WITH_AS(oracle_u(h, TimeGrid(1.0, 400)), doctest::Contains("N ="),
                         std::invalid_argument);
}

TEST_CASE("moment transport") {
    SUBCASE("vacuum stays vacuum") {
        const auto h = ChainHamiltonian::build(1.0, kRes, 30);
        const auto init = GaussianMoments::zero(31);
        const auto m = oracle_moments(h, init, TimeGrid(1.0, 50));
        for (std::size_t j = 0; j < m.n.size(); ++j) {
            CHECK(std::abs(m.n[j]) < 1e-14);
            CHECK(std::abs(m.s[j]) < 1e-14);
        }
    }
    SUBCASE("decoupled occupation is conserved") {
        const CrowReservoir res{1.0, 0.025, 0.0};
        const auto h = ChainHamiltonian::build(1.0, res, 30);
        auto init = GaussianMoments::zero(31);
        init.occupations(0, 0) = 2.5;
        const auto m = oracle_moments(h, init, TimeGrid(1.0, 50));
        for (double n : m.n) CHECK(n == doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("total excitation is conserved") {
        const auto h = ChainHamiltonian::build(1.0, kRes, 12);
        auto init = initial_chain_moments(SqueezedVacuumCorrelated{1.0, 0.4}, 12);
        for (double t : {0.0, 7.0, 40.0}) {
            const auto w = one_particle_evolution(h, t);
            const Eigen::MatrixXcd m = w * init.occupations * w.adjoint();
            CHECK(std::abs(m.trace().real() - init.occupations.trace().real()) < 1e-9);
            CHECK(std::abs(m.trace().imag()) < 1e-12);
        }
    }
    SUBCASE("transported moments stay physical") {
        const auto h = ChainHamiltonian::build(1.0, kRes, 10);
        auto init = initial_chain_moments(SqueezedVacuumCorrelated{0.8, 0.0}, 10);
        for (double t : {5.0, 30.0, 90.0}) {
            const auto w = one_particle_evolution(h, t);
            const Eigen::MatrixXcd m = w * init.occupations * w.adjoint();
            const Eigen::MatrixXcd s = w * init.pair * w.transpose();
            const int d = 11;
            Eigen::MatrixXcd big(2 * d, 2 * d);
            big.topLeftCorner(d, d) = m;
            big.topRightCorner(d, d) = s;
            big.bottomLeftCorner(d, d) = s.conjugate();
            big.bottomRightCorner(d, d) = m.conjugate() + Eigen::MatrixXcd::Identity(d, d);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(big);
            CHECK(es.eigenvalues().minCoeff() > -1e-8);
        }
    }
    SUBCASE("doubling the chain does not move converged moments") {
        const TimeGrid grid(2.0, 150); // t up to 300, window for N=100 is 1800
        const auto spec = SqueezedVacuumCorrelated{1.0, 0.0};
        const auto h1 = ChainHamiltonian::build(1.0, kRes, 100);
        const auto h2 = ChainHamiltonian::build(1.0, kRes, 200);
        const auto m1 = oracle_moments(h1, initial_chain_moments(spec, 100), grid);
        const auto m2 = oracle_moments(h2, initial_chain_moments(spec, 200), grid);
        double worst = 0.0;
        for (std::size_t j = 0; j < m1.n.size(); ++j) {
            worst = std::max(worst, std::abs(m1.n[j] - m2.n[j]));
            worst = std::max(worst, std::abs(m1.s[j] - m2.s[j]));
        }
        CHECK(worst < 1e-6);
    }
}
