// Piecewise-smooth planar systems  x' = f^{+-}(x) + eps g(t,x,eps)  switching
// across {G=0}, defined from a structured text config or from the built-in
// example family, together with the analytic homoclinic reference orbit.

#ifndef PWCHAOS_SYSTEM_HPP
#define PWCHAOS_SYSTEM_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "pwchaos/expression.hpp"
#include "pwchaos/vec2.hpp"

namespace pwchaos {

enum class Region { Plus, Minus };

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainBox {
    double xmin = -2, xmax = 2, ymin = -2, ymax = 2;
    bool contains(double x, double y) const {
        return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
    }
    template <class R>
    bool contains(const Vec2<R>& p) const {
        return contains(to_double(p.x), to_double(p.y));
    }
};

// Native fast-path evaluator for the built-in example family; params carries
// e.g. the exgen exponent. Evaluates f^region + eps*g in one call.
template <class R>
using NativeFieldFn = void (*)(const double* params, Region region, const R& t,
                               const R& x, const R& y, const R& eps, R& fx, R& fy);

struct PiecewiseSystem {
    Expression f_plus_x, f_plus_y;
    Expression f_minus_x, f_minus_y;
    Expression g_x, g_y;
    Expression G;
    Expression G_dx, G_dy;   // filled by finalize()
    double smoothness_r = 2.0;
    DomainBox box;
    std::string name = "config";

    void finalize() {
        G_dx = G.diff('x');
        G_dy = G.diff('y');
    }

    NativeFieldFn<double> native_d = nullptr;
    NativeFieldFn<mpreal> native_mp = nullptr;
    std::vector<double> native_params;

    const Expression& fx(Region r) const { return r == Region::Plus ? f_plus_x : f_minus_x; }
    const Expression& fy(Region r) const { return r == Region::Plus ? f_plus_y : f_minus_y; }

    // f^region(p) + eps*g(t,p,eps) through the expression tape.
    template <class R>
    Vec2<R> field_tape(Region r, const R& t, const Vec2<R>& p, const R& eps) const {
        R fx_ = fx(r).eval(p.x, p.y, t, eps);
        R fy_ = fy(r).eval(p.x, p.y, t, eps);
        if (!(eps == R(0))) {
            fx_ += eps * g_x.eval(p.x, p.y, t, eps);
            fy_ += eps * g_y.eval(p.x, p.y, t, eps);
        }
        return {fx_, fy_};
    }

    template <class R>
    Vec2<R> field(Region r, const R& t, const Vec2<R>& p, const R& eps) const {
        if constexpr (std::is_same_v<R, double>) {
            if (native_d) {
                Vec2<R> out;
                native_d(native_params.data(), r, t, p.x, p.y, eps, out.x, out.y);
                return out;
            }
        } else {
            if (native_mp) {
                Vec2<R> out;
                native_mp(native_params.data(), r, t, p.x, p.y, eps, out.x, out.y);
                return out;
            }
        }
        return field_tape(r, t, p, eps);
    }

    template <class R>
    Vec2<R> grad_G(const Vec2<R>& p) const;

    // G(0,0) ~ 0 and g(t,0,eps) ~ 0 on sampled (t,eps); throws config_error on failure.
    void check_invariants() const;
};

struct HomoclinicReference {
    std::function<Vec2d(double)> gamma;
    std::function<Vec2d(double)> gamma_dot;                 // one-sided at t=0: pass t=+-0.0 side via sign
    std::function<Vec2<mpreal>(const mpreal&)> gamma_mp;
    double t_cross = 0.0;
    Vec2d cross_point{1.0, 0.0};

    template <class R>
    Vec2<R> at(const R& t) const {
        if constexpr (std::is_same_v<R, double>) return gamma(t);
        else return gamma_mp(t);
    }
};

// eval_field: f^region(x) + eps*g(t,x,eps); domain-checked.
Vec2d eval_field(const PiecewiseSystem& sys, Region region, const Vec2d& x, double t, double eps);

// Structured text config: sections [system], [perturbation], [domain].
PiecewiseSystem parse_system(const std::string& config_text);
PiecewiseSystem parse_system_file(const std::string& path);

struct BuiltinExample {
    PiecewiseSystem sys;
    std::optional<HomoclinicReference> homoclinic;
};

// name in {ex1, ex_quasiperiodic, exgen0, exgen, exgen2, unperturbed}.
// exgen takes r (integer >= 2); exgen0/exgen2 take a noise expression slot.
BuiltinExample builtin_example(const std::string& name,
                               const std::map<std::string, std::string>& params = {});

// Max over the grid of ||gamma'(t) - f^region(gamma(t))||; 0 must not be in the grid.
double homoclinic_residual(const PiecewiseSystem& sys, const HomoclinicReference& ref,
                           const std::vector<double>& t_grid);

// True when the two systems evaluate identically on a probe set (bit equality),
// used to attach native fast paths to configs that reproduce a builtin.
bool systems_equivalent(const PiecewiseSystem& a, const PiecewiseSystem& b);

// Attach builtin native evaluators to `sys` if it matches a known builtin.
void attach_native_if_builtin(PiecewiseSystem& sys);

template <class R>
Vec2<R> PiecewiseSystem::grad_G(const Vec2<R>& p) const {
    R zero(0);
    return {G_dx.eval(p.x, p.y, zero, zero), G_dy.eval(p.x, p.y, zero, zero)};
}

} // namespace pwchaos

#endif
