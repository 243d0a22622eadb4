#include "cavity/csv_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace cavity::csv {

namespace {

struct File {
    std::FILE* fp;
    explicit File(const std::string& path) : fp(std::fopen(path.c_str(), "w")) {
        if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
    }
    ~File() { std::fclose(fp); }
    File(const File&) = delete;
    File& operator=(const File&) = delete;

    void header(const char* text) { std::fprintf(fp, "%s\n", text); }
    void num(double x, bool last = false) { std::fprintf(fp, "%.12e%c", x, last ? '\n' : ','); }
    void flag(int x, bool last = false) { std::fprintf(fp, "%d%c", x, last ? '\n' : ','); }
};

} // namespace

void write_kernel(const std::string& path, const KernelSeries& kernel) {
    File f(path);
    f.header("tau,re,im");
    for (std::size_t j = 0; j < kernel.grid.size(); ++j) {
        f.num(kernel.grid.time(static_cast<int>(j)));
        f.num(kernel.values[j].real());
        f.num(kernel.values[j].imag(), true);
    }
}

void write_propagator(const std::string& path, const PropagatorSolution& sol) {
    File f(path);
    f.header("t,re_u,im_u,abs_u2,re_udot,im_udot");
    for (std::size_t j = 0; j < sol.grid.size(); ++j) {
        f.num(sol.grid.time(static_cast<int>(j)));
        f.num(sol.u[j].real());
        f.num(sol.u[j].imag());
        f.num(std::norm(sol.u[j]));
        f.num(sol.u_dot[j].real());
        f.num(sol.u_dot[j].imag(), true);
    }
}

void write_correlations(const std::string& path, const CorrelationFunctions& corr) {
    File f(path);
    f.header("t,re_nu1,im_nu1,re_nu2,im_nu2,v1,re_v2,im_v2");
    for (std::size_t j = 0; j < corr.grid.size(); ++j) {
        f.num(corr.grid.time(static_cast<int>(j)));
        f.num(corr.nu1[j].real());
        f.num(corr.nu1[j].imag());
        f.num(corr.nu2[j].real());
        f.num(corr.nu2[j].imag());
        f.num(corr.v1[j]);
        f.num(corr.v2[j].real());
        f.num(corr.v2[j].imag(), true);
    }
}

void write_observables(const std::string& path, const ObservableTrajectory& traj) {
    File f(path);
    f.header("t,re_mean,im_mean,n,re_s,im_s,r,theta,nbar,physical");
    for (std::size_t j = 0; j < traj.grid.size(); ++j) {
        f.num(traj.grid.time(static_cast<int>(j)));
        f.num(traj.mean[j].real());
        f.num(traj.mean[j].imag());
        f.num(traj.n[j]);
        f.num(traj.s[j].real());
        f.num(traj.s[j].imag());
        f.num(traj.r[j]);
        f.num(traj.theta[j]);
        f.num(traj.nbar[j]);
        f.flag(traj.physical_flags[j] ? 1 : 0, true);
    }
}

void write_oracle_moments(const std::string& path, const OracleMoments& moments) {
    File f(path);
    f.header("t,re_mean,im_mean,n,re_s,im_s,r,theta,nbar,physical");
    for (std::size_t j = 0; j < moments.grid.size(); ++j) {
        const auto sq = squeezing_decomposition(std::max(0.0, moments.n[j]), moments.s[j]);
        f.num(moments.grid.time(static_cast<int>(j)));
        f.num(moments.mean[j].real());
        f.num(moments.mean[j].imag());
        f.num(moments.n[j]);
        f.num(moments.s[j].real());
        f.num(moments.s[j].imag());
        f.num(sq.r);
        f.num(sq.theta);
        f.num(sq.nbar);
        f.flag(sq.physical ? 1 : 0, true);
    }
}

void write_coefficients(const std::string& path, const MasterEqCoefficients& coeffs) {
    File f(path);
    f.header("t,delta,gamma1,gamma2,re_gamma3,im_gamma3,valid");
    for (std::size_t j = 0; j < coeffs.grid.size(); ++j) {
        f.num(coeffs.grid.time(static_cast<int>(j)));
        f.num(coeffs.delta[j]);
        f.num(coeffs.gamma1[j]);
        f.num(coeffs.gamma2[j]);
        f.num(coeffs.gamma3[j].real());
        f.num(coeffs.gamma3[j].imag());
        f.flag(coeffs.valid_flags[j] ? 1 : 0, true);
    }
}

void write_comparison(const std::string& path, const std::vector<ComparisonRow>& rows) {
    File f(path);
    f.header("t,n_corr,n_unc,dn");
    for (const auto& row : rows) {
        f.num(row.t);
        f.num(row.n_corr);
        f.num(row.n_unc);
        f.num(row.n_corr - row.n_unc, true);
    }
}

} // namespace cavity::csv
