#include "pwchaos/system.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace pwchaos {

Vec2d eval_field(const PiecewiseSystem& sys, Region region, const Vec2d& x, double t, double eps) {
    if (!sys.box.contains(x.x, x.y))
        throw eval_error("point outside domain box");
    return sys.field<double>(region, t, x, eps);
}

void PiecewiseSystem::check_invariants() const {
    double g00 = G.eval_d(0, 0, 0, 0);
    if (std::abs(g00) > 1e-12)
        throw config_error("G(0,0) = " + std::to_string(g00) + " is not 0: origin must lie on the switching manifold");
    for (double t : {0.0, 0.37, 1.0, -2.5, 10.0})
        for (double eps : {0.0, 1e-3, 0.1}) {
            double gx = g_x.eval_d(0, 0, t, eps);
            double gy = g_y.eval_d(0, 0, t, eps);
            if (std::abs(gx) > 1e-12 || std::abs(gy) > 1e-12)
                throw config_error("g(t,0,eps) != 0: the origin must stay an equilibrium of the perturbed system");
        }
}

// ---------------------------------------------------------------------------
// config parsing

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct RawConfig {
    // section -> key -> (value, line)
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> kv;

    const std::string* find(const std::string& sec, const std::string& key) const {
        auto s = kv.find(sec);
        if (s == kv.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        return &k->second.first;
    }
    std::string require(const std::string& sec, const std::string& key) const {
        const std::string* v = find(sec, key);
        if (!v) throw config_error("missing required key '" + key + "' in section [" + sec + "]");
        return *v;
    }
};

RawConfig read_raw(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw config_error("unterminated section header on line " + std::to_string(lineno));
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("expected 'key = value' on line " + std::to_string(lineno));
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (section.empty())
            throw config_error("key '" + key + "' outside any section on line " + std::to_string(lineno));
        raw.kv[section][key] = {val, lineno};
    }
    return raw;
}

Expression parse_slot(const std::string& text, const std::string& what) {
    try {
        return Expression::parse(text);
    } catch (const parse_error& e) {
        throw config_error("in " + what + ": " + e.what());
    }
}

} // namespace

PiecewiseSystem parse_system(const std::string& config_text) {
    RawConfig raw = read_raw(config_text);
    PiecewiseSystem sys;
    sys.f_plus_x = parse_slot(raw.require("system", "f_plus_x"), "f_plus_x");
    sys.f_plus_y = parse_slot(raw.require("system", "f_plus_y"), "f_plus_y");
    sys.f_minus_x = parse_slot(raw.require("system", "f_minus_x"), "f_minus_x");
    sys.f_minus_y = parse_slot(raw.require("system", "f_minus_y"), "f_minus_y");
    sys.G = parse_slot(raw.require("system", "G"), "G");
    sys.g_x = parse_slot(raw.require("perturbation", "g_x"), "g_x");
    sys.g_y = parse_slot(raw.require("perturbation", "g_y"), "g_y");
    if (const std::string* r = raw.find("system", "r")) {
        sys.smoothness_r = std::strtod(r->c_str(), nullptr);
        if (!(sys.smoothness_r > 1))
            throw config_error("smoothness order r must exceed 1");
    }
    if (const std::string* b = raw.find("domain", "box")) {
        double v[4];
        if (std::sscanf(b->c_str(), "%lf , %lf , %lf , %lf", &v[0], &v[1], &v[2], &v[3]) != 4)
            throw config_error("box must be 'xmin,xmax,ymin,ymax'");
        sys.box = {v[0], v[1], v[2], v[3]};
    }
    sys.finalize();
    sys.check_invariants();
    attach_native_if_builtin(sys);
    return sys;
}

PiecewiseSystem parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

// ---------------------------------------------------------------------------
// builtin example family (the piecewise system with known homoclinic loop):
//   x' = y +- x^2 + eps g1,  y' = x - 2x^2,  G = -y
// with gamma(t) = (e^t, e^t - e^{2t}) for t <= 0 and (e^-t, e^-2t - e^-t) after.

namespace {

template <class R>
void base_field(Region region, const R& x, const R& y, R& fx, R& fy) {
    R x2 = x * x;
    fx = (region == Region::Plus) ? y - x2 : y + x2;
    fy = x - 2.0 * x2;
}

template <class R>
void ex1_field(const double*, Region region, const R& t, const R& x, const R& y, const R& eps, R& fx, R& fy) {
    base_field(region, x, y, fx, fy);
    if (!(eps == R(0))) {
        using std::sin;
        fx += eps * (x * sin(2.0 * M_PI * t));
    }
}

template <class R>
void quasi_field(const double*, Region region, const R& t, const R& x, const R& y, const R& eps, R& fx, R& fy) {
    base_field(region, x, y, fx, fy);
    if (!(eps == R(0))) {
        using std::sin;
        fx += eps * (x * (sin(t) + sin(2.0 * M_PI * t)));
    }
}

template <class R>
void exgen_field(const double* params, Region region, const R& t, const R& x, const R& y, const R& eps, R& fx, R& fy) {
    base_field(region, x, y, fx, fy);
    if (!(eps == R(0))) {
        using std::sin;
        using std::sqrt;
        using std::abs;
        using std::pow;
        long p = 2 * long(params[0]) + 1;
        R s = sin(sqrt(abs(t)));
        R h = detail::sign_of(t) * pow(s, p);
        fx += eps * (x * h);
    }
}

template <class R>
void unpert_field(const double*, Region region, const R&, const R& x, const R& y, const R&, R& fx, R& fy) {
    base_field(region, x, y, fx, fy);
}

PiecewiseSystem base_system(const std::string& g1, const std::string& name) {
    PiecewiseSystem sys;
    sys.f_plus_x = Expression::parse("y - x^2");
    sys.f_plus_y = Expression::parse("x - 2*x^2");
    sys.f_minus_x = Expression::parse("y + x^2");
    sys.f_minus_y = Expression::parse("x - 2*x^2");
    sys.g_x = Expression::parse(g1);
    sys.g_y = Expression::parse("0");
    sys.G = Expression::parse("-y");
    sys.name = name;
    sys.box = {-2, 2, -2, 2};
    sys.finalize();
    return sys;
}

HomoclinicReference base_homoclinic() {
    HomoclinicReference ref;
    ref.gamma = [](double t) -> Vec2d {
        if (t <= 0) {
            double e1 = std::exp(t);
            return {e1, e1 - e1 * e1};
        }
        double e1 = std::exp(-t);
        return {e1, e1 * e1 - e1};
    };
    ref.gamma_dot = [](double t) -> Vec2d {
        if (t <= 0) {
            double e1 = std::exp(t), e2 = e1 * e1;
            return {e1, e1 - 2 * e2};
        }
        double e1 = std::exp(-t), e2 = e1 * e1;
        return {-e1, e1 - 2 * e2};
    };
    ref.gamma_mp = [](const mpreal& t) -> Vec2<mpreal> {
        using std::exp;
        if (t <= mpreal(0)) {
            mpreal e1 = exp(t);
            return {e1, e1 - e1 * e1};
        }
        mpreal e1 = exp(-t);
        return {e1, e1 * e1 - e1};
    };
    ref.t_cross = 0.0;
    ref.cross_point = {1.0, 0.0};
    return ref;
}

} // namespace

BuiltinExample builtin_example(const std::string& name, const std::map<std::string, std::string>& params) {
    BuiltinExample out;
    auto param = [&](const std::string& key, const std::string& dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    if (name == "ex1") {
        out.sys = base_system("x*sin(2*pi*t)", name);
        out.sys.native_d = &ex1_field<double>;
        out.sys.native_mp = &ex1_field<mpreal>;
    } else if (name == "ex_quasiperiodic") {
        out.sys = base_system("x*(sin(t) + sin(2*pi*t))", name);
        out.sys.native_d = &quasi_field<double>;
        out.sys.native_mp = &quasi_field<mpreal>;
    } else if (name == "exgen") {
        double r = std::strtod(param("r", "").c_str(), nullptr);
        if (!(r >= 2) || r != std::floor(r))
            throw config_error("exgen requires integer parameter r >= 2");
        int p = 2 * int(r) + 1;
        out.sys = base_system("x*sign(t)*sin(sqrt(abs(t)))^" + std::to_string(p), name);
        out.sys.smoothness_r = r;
        out.sys.native_d = &exgen_field<double>;
        out.sys.native_mp = &exgen_field<mpreal>;
        out.sys.native_params = {r};
    } else if (name == "exgen0") {
        // h(t) = 3 sin(2 pi t) + R(t); R is the noise slot, |R| <= 1
        std::string noise = param("noise", "cos(sqrt(2)*t)");
        out.sys = base_system("x*(3*sin(2*pi*t) + (" + noise + "))", name);
    } else if (name == "exgen2") {
        // general odd aperiodic h(t); defaults to the exgen r=2 profile
        std::string h = param("h", "sign(t)*sin(sqrt(abs(t)))^5");
        out.sys = base_system("x*(" + h + ")", name);
    } else if (name == "unperturbed") {
        out.sys = base_system("0", name);
        out.sys.native_d = &unpert_field<double>;
        out.sys.native_mp = &unpert_field<mpreal>;
    } else {
        throw config_error("unknown builtin example '" + name + "'");
    }
    out.sys.check_invariants();
    out.homoclinic = base_homoclinic();
    return out;
}

double homoclinic_residual(const PiecewiseSystem& sys, const HomoclinicReference& ref,
                           const std::vector<double>& t_grid) {
    double worst = 0;
    for (double t : t_grid) {
        if (t == 0.0) throw eval_error("homoclinic_residual: t=0 not allowed (one-sided derivative)");
        Region reg = t > 0 ? Region::Plus : Region::Minus;
        Vec2d p = ref.gamma(t);
        Vec2d fd = sys.field<double>(reg, t, p, 0.0);
        Vec2d gd = ref.gamma_dot(t);
        worst = std::max(worst, norm(Vec2d{gd.x - fd.x, gd.y - fd.y}));
    }
    return worst;
}

bool systems_equivalent(const PiecewiseSystem& a, const PiecewiseSystem& b) {
    const Expression* slots[][2] = {
        {&a.f_plus_x, &b.f_plus_x}, {&a.f_plus_y, &b.f_plus_y},
        {&a.f_minus_x, &b.f_minus_x}, {&a.f_minus_y, &b.f_minus_y},
        {&a.g_x, &b.g_x}, {&a.g_y, &b.g_y}, {&a.G, &b.G}};
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int i = 0; i < 50; ++i) {
        double x = U(rng), y = U(rng), t = 4 * U(rng), eps = std::abs(U(rng)) * 0.1;
        try {
            for (auto& s : slots)
                if (s[0]->eval_d(x, y, t, eps) != s[1]->eval_d(x, y, t, eps)) return false;
        } catch (const eval_error&) {
            return false;
        }
    }
    return true;
}

void attach_native_if_builtin(PiecewiseSystem& sys) {
    static const char* kNames[] = {"ex1", "ex_quasiperiodic", "unperturbed"};
    for (const char* n : kNames) {
        BuiltinExample b = builtin_example(n);
        if (systems_equivalent(sys, b.sys)) {
            sys.native_d = b.sys.native_d;
            sys.native_mp = b.sys.native_mp;
            sys.native_params = b.sys.native_params;
            return;
        }
    }
    for (int r = 2; r <= 4; ++r) {
        BuiltinExample b = builtin_example("exgen", {{"r", std::to_string(r)}});
        if (systems_equivalent(sys, b.sys)) {
            sys.native_d = b.sys.native_d;
            sys.native_mp = b.sys.native_mp;
            sys.native_params = b.sys.native_params;
            return;
        }
    }
}

} // namespace pwchaos
