#include "pwchaos/spectral.hpp"

#include <cmath>

namespace pwchaos {

std::array<std::array<double, 2>, 2> jacobian(const PiecewiseSystem& sys, Region region,
                                              const Vec2d& at, const SpectralOptions& opts,
                                              bool* analytic) {
    const Expression& fx = sys.fx(region);
    const Expression& fy = sys.fy(region);
    std::array<std::array<double, 2>, 2> J{};
    bool use_analytic = !opts.force_fd && fx.is_polynomial_xy() && fy.is_polynomial_xy();
    if (analytic) *analytic = use_analytic;
    if (use_analytic) {
        J[0][0] = fx.diff('x').eval_d(at.x, at.y, 0, 0);
        J[0][1] = fx.diff('y').eval_d(at.x, at.y, 0, 0);
        J[1][0] = fy.diff('x').eval_d(at.x, at.y, 0, 0);
        J[1][1] = fy.diff('y').eval_d(at.x, at.y, 0, 0);
        return J;
    }
    double h = opts.fd_step;
    auto F = [&](double x, double y) -> Vec2d {
        return {fx.eval_d(x, y, 0, 0), fy.eval_d(x, y, 0, 0)};
    };
    Vec2d fxp = F(at.x + h, at.y), fxm = F(at.x - h, at.y);
    Vec2d fyp = F(at.x, at.y + h), fym = F(at.x, at.y - h);
    J[0][0] = (fxp.x - fxm.x) / (2 * h);
    J[1][0] = (fxp.y - fxm.y) / (2 * h);
    J[0][1] = (fyp.x - fym.x) / (2 * h);
    J[1][1] = (fyp.y - fym.y) / (2 * h);
    return J;
}

namespace {

struct EigenPair {
    double lambda_s, lambda_u;
    Vec2d v_s, v_u;
    bool real_saddle;
};

EigenPair eigen2x2(const std::array<std::array<double, 2>, 2>& J) {
    double tr = J[0][0] + J[1][1];
    double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    double disc = tr * tr - 4 * det;
    EigenPair out{};
    if (disc <= 0) { out.real_saddle = false; return out; }
    double sq = std::sqrt(disc);
    double l1 = 0.5 * (tr + sq), l2 = 0.5 * (tr - sq);
    if (!(l2 < 0 && 0 < l1)) { out.real_saddle = false; return out; }
    out.lambda_u = l1;
    out.lambda_s = l2;
    auto eigvec = [&](double lam) -> Vec2d {
        // rows of (J - lam I) are parallel; pick the better-conditioned kernel vector
        Vec2d c1{J[0][1], lam - J[0][0]};
        Vec2d c2{lam - J[1][1], J[1][0]};
        Vec2d v = norm(c1) >= norm(c2) ? c1 : c2;
        double n = norm(v);
        return {v.x / n, v.y / n};
    };
    out.v_u = eigvec(l1);
    out.v_s = eigvec(l2);
    out.real_saddle = true;
    return out;
}

// Membership of w in the two open sectors cut by the rays along a and b.
// Returns +1 / -1 for the two sectors, 0 if w lies on the polyline.
int sector_of(const Vec2d& w, const Vec2d& a, const Vec2d& b) {
    double ta = std::atan2(a.y, a.x);
    double tb = std::atan2(b.y, b.x);
    double tw = std::atan2(w.y, w.x);
    auto wrap = [](double u) {
        while (u < 0) u += 2 * M_PI;
        while (u >= 2 * M_PI) u -= 2 * M_PI;
        return u;
    };
    double span = wrap(tb - ta);        // ccw angle from a to b
    double off = wrap(tw - ta);         // ccw angle from a to w
    const double tol = 1e-12;
    if (off < tol || std::abs(off - span) < tol || off > 2 * M_PI - tol) return 0;
    return off < span ? +1 : -1;
}

// winding-number point-in-polygon
bool inside_polyline(const Vec2d& p, const std::vector<Vec2d>& poly) {
    int winding = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2d& a = poly[i];
        const Vec2d& b = poly[(i + 1) % poly.size()];
        if (a.y <= p.y) {
            if (b.y > p.y && wedge(Vec2d{b.x - a.x, b.y - a.y}, Vec2d{p.x - a.x, p.y - a.y}) > 0) winding++;
        } else {
            if (b.y <= p.y && wedge(Vec2d{b.x - a.x, b.y - a.y}, Vec2d{p.x - a.x, p.y - a.y}) < 0) winding--;
        }
    }
    return winding != 0;
}

} // namespace

SpectralReport analyze_origin(const PiecewiseSystem& sys, const HomoclinicReference* homoclinic,
                              const SpectralOptions& opts) {
    if (!sys.box.contains(0.0, 0.0))
        throw spectral_error("origin not inside the domain box");
    SpectralReport rep;
    rep.jac_plus = jacobian(sys, Region::Plus, {0, 0}, opts, &rep.jacobian_analytic);
    rep.jac_minus = jacobian(sys, Region::Minus, {0, 0}, opts);
    rep.grad_G0 = sys.grad_G(Vec2d{0, 0});

    EigenPair ep = eigen2x2(rep.jac_plus);
    EigenPair em = eigen2x2(rep.jac_minus);
    rep.verdicts["F0"] = ep.real_saddle && em.real_saddle;
    if (!rep.verdicts["F0"]) {
        rep.verdicts["F1"] = false;
        rep.verdicts["F2"] = false;
        rep.verdicts["K-transversality"] = false;
        return rep;
    }
    rep.lambda_s_plus = ep.lambda_s;
    rep.lambda_u_plus = ep.lambda_u;
    rep.lambda_s_minus = em.lambda_s;
    rep.lambda_u_minus = em.lambda_u;

    // F1 orientation: grad G(0).v_u^- < 0 < grad G(0).v_u^+ and likewise for v_s.
    // Raw eigenvectors are sign-ambiguous; flip to meet the convention, and report
    // F1 false when a product vanishes within tolerance (eigenvector tangent to
    // the switching line).
    bool f1 = true;
    double gscale = norm(rep.grad_G0);
    auto orient = [&](Vec2d v, double want_sign) -> Vec2d {
        double d = dot(rep.grad_G0, v);
        if (std::abs(d) <= opts.orth_tol * gscale) { f1 = false; return v; }
        if (d * want_sign < 0) return -v;
        return v;
    };
    rep.v_u_plus = orient(ep.v_u, +1);
    rep.v_s_plus = orient(ep.v_s, +1);
    rep.v_u_minus = orient(em.v_u, -1);
    rep.v_s_minus = orient(em.v_s, -1);
    rep.verdicts["F1"] = f1;

    // F2: v_s^+ and v_s^- on opposite sides of the polyline T_u^+ u T_u^-.
    int sp = sector_of(rep.v_s_plus, rep.v_u_plus, rep.v_u_minus);
    int sm = sector_of(rep.v_s_minus, rep.v_u_plus, rep.v_u_minus);
    bool f2 = (sp != 0) && (sm != 0) && (sp != sm);
    rep.verdicts["F2"] = f2;
    if (f2)
        rep.f2_labeling = sp > 0 ? "vs_plus_in_Pi1" : "vs_plus_in_Pi2";

    // K transversality at the homoclinic crossing point
    if (homoclinic) {
        Vec2d q = homoclinic->cross_point;
        Vec2d gq = sys.grad_G(q);
        double wp = dot(gq, sys.field<double>(Region::Plus, 0.0, q, 0.0));
        double wm = dot(gq, sys.field<double>(Region::Minus, 0.0, q, 0.0));
        rep.verdicts["K-transversality"] = wp > 0 && wm > 0;

        // Scenario: where small multiples of v_u^+ and v_s^- sit relative to the loop
        std::vector<Vec2d> poly;
        poly.reserve(size_t(opts.gamma_samples) + 1);
        for (int i = 0; i < opts.gamma_samples; ++i) {
            double t = -opts.gamma_tmax + 2 * opts.gamma_tmax * double(i) / double(opts.gamma_samples - 1);
            poly.push_back(homoclinic->gamma(t));
        }
        poly.push_back({0.0, 0.0});    // close the loop through the equilibrium
        bool up_in = inside_polyline(rep.v_u_plus * opts.probe_rho, poly);
        bool sm_in = inside_polyline(rep.v_s_minus * opts.probe_rho, poly);
        if (!up_in && !sm_in) rep.scenario = Scenario::S1;
        else if (up_in && sm_in) rep.scenario = Scenario::S2;
        else if (up_in && !sm_in) rep.scenario = Scenario::S3;
        else rep.scenario = Scenario::S4;
    } else {
        rep.verdicts["K-transversality"] = false;
        rep.scenario = Scenario::None;
    }
    return rep;
}

ConstantsTable derived_constants(const SpectralReport& rep) {
    if (!rep.ok("F0"))
        throw spectral_error("derived_constants requires the F0 verdict");
    ConstantsTable c;
    double lsp = std::abs(rep.lambda_s_plus), lsm = std::abs(rep.lambda_s_minus);
    double lup = rep.lambda_u_plus, lum = rep.lambda_u_minus;

    c.sigmaFwdPlus = lsp / (lup + lsp);
    c.sigmaFwdMinus = (lum + lsm) / lum;
    c.sigmaFwd = c.sigmaFwdPlus * c.sigmaFwdMinus;
    c.sigmaBwdPlus = 1.0 / c.sigmaFwdPlus;
    c.sigmaBwdMinus = 1.0 / c.sigmaFwdMinus;
    c.sigmaBwd = c.sigmaBwdPlus * c.sigmaBwdMinus;
    c.sigmaLo = std::min(c.sigmaFwdPlus, c.sigmaBwdMinus);
    c.sigmaHi = std::max(c.sigmaFwdPlus, c.sigmaBwdMinus);

    c.SigmaFwdPlus = 1.0 / (lup + lsp);
    c.SigmaBwdMinus = 1.0 / (lum + lsm);
    c.SigmaFwd = (lum + lsp) / (lum * (lup + lsp));
    c.SigmaBwd = (lum + lsp) / (lsp * (lum + lsm));
    c.SigmaLo = std::min(c.SigmaFwd, c.SigmaBwd);
    c.SigmaHi = std::max(c.SigmaFwd, c.SigmaBwd);

    c.lambdaLo = std::min(std::min(lum, lup), std::min(lsm, lsp));
    c.lambdaHi = std::max(std::max(lum, lup), std::max(lsm, lsp));

    c.K0 = 3.0 * c.SigmaHi / (2.0 * c.sigmaLo);
    c.nu0 = std::max(3.0 * c.sigmaHi - 1.0, 1.0);
    c.mu0 = 0.25 * std::min(std::min(c.SigmaFwdPlus, c.SigmaBwdMinus), c.sigmaLo * c.sigmaLo);
    return c;
}

double ConstantsTable::gap_floor(double eps, double nu) const {
    return K0 * (1.0 + nu) * std::abs(std::log(eps));
}

long ConstantsTable::ogap(double eps, double nu) const {
    return long(std::floor(gap_floor(eps, nu) + 2.0));
}

} // namespace pwchaos
