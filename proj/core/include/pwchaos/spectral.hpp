// Linearization of both one-sided fields at the origin, saddle/transversality
// assumption verdicts, scenario classification against the homoclinic loop,
// and the derived constants used by the gap and loop-map estimates.

#ifndef PWCHAOS_SPECTRAL_HPP
#define PWCHAOS_SPECTRAL_HPP

#include <array>
#include <map>
#include <optional>
#include <string>

#include "pwchaos/system.hpp"

namespace pwchaos {

struct spectral_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scenario { None = 0, S1 = 1, S2 = 2, S3 = 3, S4 = 4 };

struct SpectralReport {
    double lambda_s_plus = 0, lambda_u_plus = 0;
    double lambda_s_minus = 0, lambda_u_minus = 0;
    // unit eigenvectors, oriented by the switching-normal sign convention
    Vec2d v_s_plus, v_u_plus, v_s_minus, v_u_minus;
    Vec2d grad_G0;
    std::map<std::string, bool> verdicts;   // F0, F1, F2, K-transversality
    Scenario scenario = Scenario::None;
    // which of the two admissible eigenvector labelings holds when F2 is true
    std::string f2_labeling;                // "vs_plus_in_Pi1" or "vs_plus_in_Pi2"
    std::array<std::array<double, 2>, 2> jac_plus{}, jac_minus{};
    bool jacobian_analytic = false;

    bool ok(const std::string& key) const {
        auto it = verdicts.find(key);
        return it != verdicts.end() && it->second;
    }
    bool hypotheses_hold() const { return ok("F0") && ok("F1") && ok("F2"); }
};

struct ConstantsTable {
    double sigmaFwdPlus = 0, sigmaFwdMinus = 0, sigmaFwd = 0;
    double sigmaBwdPlus = 0, sigmaBwdMinus = 0, sigmaBwd = 0;
    double sigmaLo = 0, sigmaHi = 0;
    double SigmaFwdPlus = 0, SigmaBwdMinus = 0, SigmaFwd = 0, SigmaBwd = 0;
    double SigmaLo = 0, SigmaHi = 0;
    double lambdaLo = 0, lambdaHi = 0;
    double K0 = 0, nu0 = 0, mu0 = 0;

    // minimal admissible even-index gap floor K0 (1+nu) |ln eps|, and the
    // paper's integer gap [K0 (1+nu) |ln eps| + 2]
    double gap_floor(double eps, double nu) const;
    long ogap(double eps, double nu) const;
};

struct SpectralOptions {
    double fd_step = 1e-6;            // central finite-difference step for non-polynomial fields
    double orth_tol = 1e-8;           // |grad G . v| below this means F1 degenerate
    double probe_rho = 1e-3;          // scenario probe distance along the eigenvector rays
    int gamma_samples = 2000;         // polyline sampling of the homoclinic loop
    double gamma_tmax = 30.0;
    bool force_fd = false;            // ignore the analytic route (used by step-halving checks)
};

// Jacobian of f^region at a point: symbolic when both components are polynomial
// in (x,y), otherwise central finite differences with opts.fd_step.
std::array<std::array<double, 2>, 2> jacobian(const PiecewiseSystem& sys, Region region,
                                              const Vec2d& at, const SpectralOptions& opts = {},
                                              bool* analytic = nullptr);

SpectralReport analyze_origin(const PiecewiseSystem& sys,
                              const HomoclinicReference* homoclinic = nullptr,
                              const SpectralOptions& opts = {});

// Every field computed by the closed formulas; requires the F0 verdict.
ConstantsTable derived_constants(const SpectralReport& report);

} // namespace pwchaos

#endif
