// Small expression language over {x, y, t, eps} used to define piecewise
// systems from text configs. Trees are immutable after parse; evaluation is
// reentrant and works for double and mpreal alike.

#ifndef PWCHAOS_EXPRESSION_HPP
#define PWCHAOS_EXPRESSION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwchaos/real.hpp"

namespace pwchaos {

struct parse_error : std::runtime_error {
    int line, col;
    parse_error(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ", col " + std::to_string(c) + ")"),
          line(l), col(c) {}
};

struct eval_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Op : uint8_t {
    Const, VarX, VarY, VarT, VarEps,
    Add, Sub, Mul, Div, Pow,
    Neg, Sin, Cos, Exp, Log, Sqrt, Abs, Sign, Tanh
};

struct ExprNode {
    Op op;
    double value = 0;   // Const only
    int32_t a = -1, b = -1;
};

class Expression {
public:
    Expression() = default;

    // Throws parse_error with line/column on malformed input or unknown identifiers.
    static Expression parse(const std::string& text);

    bool empty() const { return nodes_.empty(); }
    std::string str() const;

    // Total on the declared domain: division by zero, log of non-positive
    // arguments and sqrt of negatives raise eval_error instead of returning NaN.
    template <class R>
    R eval(const R& x, const R& y, const R& t, const R& eps) const;

    double eval_d(double x, double y, double t, double eps) const {
        return eval<double>(x, y, t, eps);
    }

    Expression diff(char var) const;   // var in {'x','y','t'}

    // Polynomial in x and y (t and eps may appear only inside no node at all here;
    // Const/VarX/VarY with +,-,*,integer pow).
    bool is_polynomial_xy() const;

    bool depends_on(char var) const;

    const std::vector<ExprNode>& nodes() const { return nodes_; }

private:
    // Post-order tape; root is the last node.
    std::vector<ExprNode> nodes_;

    int32_t push(ExprNode n) { nodes_.push_back(n); return int32_t(nodes_.size()) - 1; }
    friend class ExprParser;
    friend class ExprBuilder;
};

namespace detail {
template <class R> inline R sign_of(const R& a) {
    if (a > R(0)) return R(1);
    if (a < R(0)) return R(-1);
    return R(0);
}
inline double sign_of(double a) { return a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0); }
} // namespace detail

template <class R>
R Expression::eval(const R& x, const R& y, const R& t, const R& eps) const {
    if (nodes_.empty()) throw eval_error("empty expression");
    std::vector<R> v(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const ExprNode& n = nodes_[i];
        switch (n.op) {
        case Op::Const:  v[i] = R(n.value); break;
        case Op::VarX:   v[i] = x; break;
        case Op::VarY:   v[i] = y; break;
        case Op::VarT:   v[i] = t; break;
        case Op::VarEps: v[i] = eps; break;
        case Op::Add: v[i] = v[n.a] + v[n.b]; break;
        case Op::Sub: v[i] = v[n.a] - v[n.b]; break;
        case Op::Mul: v[i] = v[n.a] * v[n.b]; break;
        case Op::Div:
            if (v[n.b] == R(0)) throw eval_error("division by zero");
            v[i] = v[n.a] / v[n.b];
            break;
        case Op::Pow: {
            using std::pow;
            using std::floor;
            const R& base = v[n.a];
            const R& e = v[n.b];
            if (base == R(0) && e < R(0)) throw eval_error("zero base with negative exponent");
            if (base < R(0) && !(floor(e) == e)) throw eval_error("negative base with non-integer exponent");
            v[i] = pow(base, e);
            break;
        }
        case Op::Neg: v[i] = -v[n.a]; break;
        case Op::Sin: { using std::sin; v[i] = sin(v[n.a]); break; }
        case Op::Cos: { using std::cos; v[i] = cos(v[n.a]); break; }
        case Op::Exp: { using std::exp; v[i] = exp(v[n.a]); break; }
        case Op::Log: {
            using std::log;
            if (!(v[n.a] > R(0))) throw eval_error("log of non-positive argument");
            v[i] = log(v[n.a]);
            break;
        }
        case Op::Sqrt: {
            using std::sqrt;
            if (v[n.a] < R(0)) throw eval_error("sqrt of negative argument");
            v[i] = sqrt(v[n.a]);
            break;
        }
        case Op::Abs: { using std::abs; v[i] = abs(v[n.a]); break; }
        case Op::Sign: v[i] = detail::sign_of(v[n.a]); break;
        case Op::Tanh: { using std::tanh; v[i] = tanh(v[n.a]); break; }
        }
    }
    return v.back();
}

} // namespace pwchaos

#endif
