#include "pwchaos/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace pwchaos {

thread_local mpfr_prec_t mpreal::default_prec_ = 256;

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End } kind;
    double value = 0;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() { Token t = tok_; advance(); return t; }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) bump();
        tok_.line = line_; tok_.col = col_;
        if (pos_ >= s_.size()) { tok_.kind = Token::End; return; }
        char c = s_[pos_];
        if (std::isdigit((unsigned char)c) || (c == '.' && pos_ + 1 < s_.size() && std::isdigit((unsigned char)s_[pos_ + 1]))) {
            const char* start = s_.c_str() + pos_;
            char* end = nullptr;
            tok_.value = std::strtod(start, &end);
            if (end == start) throw parse_error("malformed number", line_, col_);
            size_t len = size_t(end - start);
            for (size_t i = 0; i < len; ++i) bump();
            tok_.kind = Token::Number;
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string id;
            while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) { id += s_[pos_]; bump(); }
            tok_.kind = Token::Ident;
            tok_.text = id;
            return;
        }
        bump();
        switch (c) {
        case '+': tok_.kind = Token::Plus; return;
        case '-': tok_.kind = Token::Minus; return;
        case '*': tok_.kind = Token::Star; return;
        case '/': tok_.kind = Token::Slash; return;
        case '^': tok_.kind = Token::Caret; return;
        case '(': tok_.kind = Token::LParen; return;
        case ')': tok_.kind = Token::RParen; return;
        case ',': tok_.kind = Token::Comma; return;
        default: throw parse_error(std::string("unexpected character '") + c + "'", tok_.line, tok_.col);
        }
    }
    void bump() {
        if (s_[pos_] == '\n') { line_++; col_ = 1; } else col_++;
        pos_++;
    }
    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

const std::map<std::string, Op> kUnaryFns = {
    {"sin", Op::Sin}, {"cos", Op::Cos}, {"exp", Op::Exp}, {"log", Op::Log},
    {"sqrt", Op::Sqrt}, {"abs", Op::Abs}, {"sign", Op::Sign}, {"tanh", Op::Tanh},
};

} // namespace

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : lex_(s) {}

    Expression run() {
        int32_t root = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End) throw parse_error("trailing input", t.line, t.col);
        (void)root;
        return std::move(out_);
    }

private:
    int32_t expr() {
        int32_t lhs = term();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k != Token::Plus && k != Token::Minus) return lhs;
            lex_.take();
            int32_t rhs = term();
            lhs = out_.push({k == Token::Plus ? Op::Add : Op::Sub, 0, lhs, rhs});
        }
    }
    int32_t term() {
        int32_t lhs = factor();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k != Token::Star && k != Token::Slash) return lhs;
            lex_.take();
            int32_t rhs = factor();
            lhs = out_.push({k == Token::Star ? Op::Mul : Op::Div, 0, lhs, rhs});
        }
    }
    // right-associative power binds tighter than unary minus on the left
    int32_t factor() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            int32_t a = factor();
            return out_.push({Op::Neg, 0, a, -1});
        }
        int32_t base = primary();
        if (lex_.peek().kind == Token::Caret) {
            lex_.take();
            int32_t e = factor();
            return out_.push({Op::Pow, 0, base, e});
        }
        return base;
    }
    int32_t primary() {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Number:
            return out_.push({Op::Const, t.value, -1, -1});
        case Token::LParen: {
            int32_t e = expr();
            expect(Token::RParen, ")");
            return e;
        }
        case Token::Ident: {
            if (lex_.peek().kind == Token::LParen) {
                lex_.take();
                if (t.text == "pow") {
                    int32_t a = expr();
                    expect(Token::Comma, ",");
                    int32_t b = expr();
                    expect(Token::RParen, ")");
                    return out_.push({Op::Pow, 0, a, b});
                }
                auto it = kUnaryFns.find(t.text);
                if (it == kUnaryFns.end())
                    throw parse_error("unknown function '" + t.text + "'", t.line, t.col);
                int32_t a = expr();
                expect(Token::RParen, ")");
                return out_.push({it->second, 0, a, -1});
            }
            if (t.text == "x") return out_.push({Op::VarX, 0, -1, -1});
            if (t.text == "y") return out_.push({Op::VarY, 0, -1, -1});
            if (t.text == "t") return out_.push({Op::VarT, 0, -1, -1});
            if (t.text == "eps") return out_.push({Op::VarEps, 0, -1, -1});
            if (t.text == "pi") return out_.push({Op::Const, M_PI, -1, -1});
            if (t.text == "e") return out_.push({Op::Const, M_E, -1, -1});
            throw parse_error("unknown identifier '" + t.text + "'", t.line, t.col);
        }
        default:
            throw parse_error("expected a value", t.line, t.col);
        }
    }
    void expect(Token::Kind k, const char* what) {
        Token t = lex_.take();
        if (t.kind != k) throw parse_error(std::string("expected '") + what + "'", t.line, t.col);
    }

    Lexer lex_;
    Expression out_;
};

Expression Expression::parse(const std::string& text) {
    return ExprParser(text).run();
}

namespace {

int precedence(Op op) {
    switch (op) {
    case Op::Add: case Op::Sub: return 1;
    case Op::Mul: case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
    }
}

std::string fmt_const(double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string print_node(const std::vector<ExprNode>& ns, int32_t i) {
    const ExprNode& n = ns[i];
    auto wrap = [&](int32_t child, bool strict) {
        std::string s = print_node(ns, child);
        int pc = precedence(ns[child].op), pn = precedence(n.op);
        if (pc < pn || (strict && pc == pn)) return "(" + s + ")";
        return s;
    };
    switch (n.op) {
    case Op::Const: {
        if (n.value < 0) return "(" + fmt_const(n.value) + ")";
        return fmt_const(n.value);
    }
    case Op::VarX: return "x";
    case Op::VarY: return "y";
    case Op::VarT: return "t";
    case Op::VarEps: return "eps";
    case Op::Add: return print_node(ns, n.a) + " + " + wrap(n.b, false);
    case Op::Sub: return print_node(ns, n.a) + " - " + wrap(n.b, true);
    case Op::Mul: return wrap(n.a, false) + "*" + wrap(n.b, false);
    case Op::Div: return wrap(n.a, false) + "/" + wrap(n.b, true);
    case Op::Pow: return wrap(n.a, true) + "^" + wrap(n.b, false);
    case Op::Neg: return "-" + wrap(n.a, true);
    case Op::Sin: return "sin(" + print_node(ns, n.a) + ")";
    case Op::Cos: return "cos(" + print_node(ns, n.a) + ")";
    case Op::Exp: return "exp(" + print_node(ns, n.a) + ")";
    case Op::Log: return "log(" + print_node(ns, n.a) + ")";
    case Op::Sqrt: return "sqrt(" + print_node(ns, n.a) + ")";
    case Op::Abs: return "abs(" + print_node(ns, n.a) + ")";
    case Op::Sign: return "sign(" + print_node(ns, n.a) + ")";
    case Op::Tanh: return "tanh(" + print_node(ns, n.a) + ")";
    }
    return "?";
}

} // namespace

std::string Expression::str() const {
    if (nodes_.empty()) return "";
    return print_node(nodes_, int32_t(nodes_.size()) - 1);
}

// Builder with light constant folding, used by diff().
class ExprBuilder {
public:
    Expression out;

    int32_t copy_subtree(const std::vector<ExprNode>& src, int32_t i) {
        const ExprNode& n = src[i];
        int32_t a = n.a >= 0 ? copy_subtree(src, n.a) : -1;
        int32_t b = n.b >= 0 ? copy_subtree(src, n.b) : -1;
        return out.push({n.op, n.value, a, b});
    }
    bool is_const(int32_t i, double v) const {
        return out.nodes_[i].op == Op::Const && out.nodes_[i].value == v;
    }
    bool is_const(int32_t i) const { return out.nodes_[i].op == Op::Const; }
    double cval(int32_t i) const { return out.nodes_[i].value; }

    int32_t num(double v) { return out.push({Op::Const, v, -1, -1}); }
    int32_t add(int32_t a, int32_t b) {
        if (is_const(a, 0)) return b;
        if (is_const(b, 0)) return a;
        if (is_const(a) && is_const(b)) return num(cval(a) + cval(b));
        return out.push({Op::Add, 0, a, b});
    }
    int32_t sub(int32_t a, int32_t b) {
        if (is_const(b, 0)) return a;
        if (is_const(a) && is_const(b)) return num(cval(a) - cval(b));
        if (is_const(a, 0)) return out.push({Op::Neg, 0, b, -1});
        return out.push({Op::Sub, 0, a, b});
    }
    int32_t mul(int32_t a, int32_t b) {
        if (is_const(a, 0) || is_const(b, 0)) return num(0);
        if (is_const(a, 1)) return b;
        if (is_const(b, 1)) return a;
        if (is_const(a) && is_const(b)) return num(cval(a) * cval(b));
        return out.push({Op::Mul, 0, a, b});
    }
    int32_t div(int32_t a, int32_t b) {
        if (is_const(a, 0)) return num(0);
        if (is_const(b, 1)) return a;
        return out.push({Op::Div, 0, a, b});
    }
    int32_t neg(int32_t a) {
        if (is_const(a)) return num(-cval(a));
        return out.push({Op::Neg, 0, a, -1});
    }
    int32_t fn(Op op, int32_t a, int32_t b = -1) { return out.push({op, 0, a, b}); }
};

namespace {

// returns index of derivative of src[i] built inside bld, copying subtrees as needed
int32_t d(ExprBuilder& bld, const std::vector<ExprNode>& src, int32_t i, Op var) {
    const ExprNode& n = src[i];
    auto cp = [&](int32_t j) { return bld.copy_subtree(src, j); };
    switch (n.op) {
    case Op::Const: case Op::VarEps: return bld.num(0);
    case Op::VarX: return bld.num(var == Op::VarX ? 1 : 0);
    case Op::VarY: return bld.num(var == Op::VarY ? 1 : 0);
    case Op::VarT: return bld.num(var == Op::VarT ? 1 : 0);
    case Op::Add: return bld.add(d(bld, src, n.a, var), d(bld, src, n.b, var));
    case Op::Sub: return bld.sub(d(bld, src, n.a, var), d(bld, src, n.b, var));
    case Op::Mul: {
        int32_t da = d(bld, src, n.a, var), db = d(bld, src, n.b, var);
        return bld.add(bld.mul(da, cp(n.b)), bld.mul(cp(n.a), db));
    }
    case Op::Div: {
        int32_t da = d(bld, src, n.a, var), db = d(bld, src, n.b, var);
        int32_t numtr = bld.sub(bld.mul(da, cp(n.b)), bld.mul(cp(n.a), db));
        int32_t dentr = bld.mul(cp(n.b), cp(n.b));
        return bld.div(numtr, dentr);
    }
    case Op::Pow: {
        // constant integer exponent: k a^{k-1} a'
        if (src[n.b].op == Op::Const) {
            double k = src[n.b].value;
            int32_t da = d(bld, src, n.a, var);
            int32_t p = bld.fn(Op::Pow, cp(n.a), bld.num(k - 1));
            return bld.mul(bld.mul(bld.num(k), p), da);
        }
        // general a^b = exp(b log a)
        int32_t da = d(bld, src, n.a, var), db = d(bld, src, n.b, var);
        int32_t term1 = bld.mul(db, bld.fn(Op::Log, cp(n.a)));
        int32_t term2 = bld.div(bld.mul(cp(n.b), da), cp(n.a));
        int32_t self = bld.fn(Op::Pow, cp(n.a), cp(n.b));
        return bld.mul(self, bld.add(term1, term2));
    }
    case Op::Neg: return bld.neg(d(bld, src, n.a, var));
    case Op::Sin: return bld.mul(bld.fn(Op::Cos, cp(n.a)), d(bld, src, n.a, var));
    case Op::Cos: return bld.neg(bld.mul(bld.fn(Op::Sin, cp(n.a)), d(bld, src, n.a, var)));
    case Op::Exp: return bld.mul(bld.fn(Op::Exp, cp(n.a)), d(bld, src, n.a, var));
    case Op::Log: return bld.div(d(bld, src, n.a, var), cp(n.a));
    case Op::Sqrt: {
        int32_t da = d(bld, src, n.a, var);
        return bld.div(da, bld.mul(bld.num(2), bld.fn(Op::Sqrt, cp(n.a))));
    }
    case Op::Abs: // d|a| = sign(a) a'  (a.e.)
        return bld.mul(bld.fn(Op::Sign, cp(n.a)), d(bld, src, n.a, var));
    case Op::Sign: // zero a.e.
        return bld.num(0);
    case Op::Tanh: {
        int32_t th = bld.fn(Op::Tanh, cp(n.a));
        int32_t sq = bld.mul(th, th);
        return bld.mul(bld.sub(bld.num(1), sq), d(bld, src, n.a, var));
    }
    }
    return bld.num(0);
}

} // namespace

Expression Expression::diff(char var) const {
    if (nodes_.empty()) return Expression();
    Op v = var == 'x' ? Op::VarX : var == 'y' ? Op::VarY : Op::VarT;
    ExprBuilder bld;
    d(bld, nodes_, int32_t(nodes_.size()) - 1, v);
    return std::move(bld.out);
}

bool Expression::is_polynomial_xy() const {
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const ExprNode& n = nodes_[i];
        switch (n.op) {
        case Op::Const: case Op::VarX: case Op::VarY: case Op::VarT: case Op::VarEps:
        case Op::Add: case Op::Sub: case Op::Mul: case Op::Neg:
            break;
        case Op::Pow: {
            const ExprNode& e = nodes_[n.b];
            if (e.op != Op::Const || e.value < 0 || e.value != std::floor(e.value)) return false;
            break;
        }
        default:
            return false;
        }
    }
    return !nodes_.empty();
}

bool Expression::depends_on(char var) const {
    Op v = var == 'x' ? Op::VarX : var == 'y' ? Op::VarY : var == 't' ? Op::VarT : Op::VarEps;
    for (const auto& n : nodes_)
        if (n.op == v) return true;
    return false;
}

} // namespace pwchaos
