// Thin RAII wrapper around MPFR floats, used where trajectories must be
// resolved below double precision (near-saddle passages contract transverse
// separations to exp(-T) with T of order |ln eps| per loop).

#ifndef PWCHAOS_REAL_HPP
#define PWCHAOS_REAL_HPP

#include <mpfr.h>
#include <cmath>
#include <string>
#include <utility>

namespace pwchaos {

class mpreal {
public:
    static mpfr_prec_t default_prec() { return default_prec_; }
    static void set_default_prec(mpfr_prec_t p) { default_prec_ = p; }

    mpreal() { mpfr_init2(v_, default_prec_); mpfr_set_zero(v_, 1); }
    mpreal(double d) { mpfr_init2(v_, default_prec_); mpfr_set_d(v_, d, MPFR_RNDN); }
    mpreal(int i) { mpfr_init2(v_, default_prec_); mpfr_set_si(v_, i, MPFR_RNDN); }
    mpreal(long i) { mpfr_init2(v_, default_prec_); mpfr_set_si(v_, i, MPFR_RNDN); }
    explicit mpreal(const char* s) { mpfr_init2(v_, default_prec_); mpfr_set_str(v_, s, 10, MPFR_RNDN); }

    mpreal(const mpreal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    mpreal(mpreal&& o) noexcept { mpfr_init2(v_, 53); mpfr_swap(v_, o.v_); }
    mpreal& operator=(const mpreal& o) {
        if (this != &o) {
            if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    mpreal& operator=(mpreal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    mpreal& operator=(double d) { mpfr_set_d(v_, d, MPFR_RNDN); return *this; }
    ~mpreal() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    explicit operator double() const { return to_double(); }

    std::string str(size_t digits = 0) const {
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        std::string body(s);
        mpfr_free_str(s);
        std::string sign;
        if (!body.empty() && body[0] == '-') { sign = "-"; body = body.substr(1); }
        if (body.empty()) return "0";
        return sign + "0." + body + "e" + std::to_string((long)e);
    }

    mpreal& operator+=(const mpreal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    mpreal& operator-=(const mpreal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    mpreal& operator*=(const mpreal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    mpreal& operator/=(const mpreal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    mpreal& operator+=(double d) { mpfr_add_d(v_, v_, d, MPFR_RNDN); return *this; }
    mpreal& operator-=(double d) { mpfr_sub_d(v_, v_, d, MPFR_RNDN); return *this; }
    mpreal& operator*=(double d) { mpfr_mul_d(v_, v_, d, MPFR_RNDN); return *this; }
    mpreal& operator/=(double d) { mpfr_div_d(v_, v_, d, MPFR_RNDN); return *this; }

    friend mpreal operator+(mpreal a, const mpreal& b) { a += b; return a; }
    friend mpreal operator-(mpreal a, const mpreal& b) { a -= b; return a; }
    friend mpreal operator*(mpreal a, const mpreal& b) { a *= b; return a; }
    friend mpreal operator/(mpreal a, const mpreal& b) { a /= b; return a; }
    friend mpreal operator+(mpreal a, double b) { a += b; return a; }
    friend mpreal operator-(mpreal a, double b) { a -= b; return a; }
    friend mpreal operator*(mpreal a, double b) { a *= b; return a; }
    friend mpreal operator/(mpreal a, double b) { a /= b; return a; }
    friend mpreal operator+(double a, mpreal b) { b += a; return b; }
    friend mpreal operator-(double a, const mpreal& b) {
        mpreal r(prec_tag{}, b.prec());
        mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend mpreal operator*(double a, mpreal b) { b *= a; return b; }
    friend mpreal operator/(double a, const mpreal& b) {
        mpreal r(prec_tag{}, b.prec());
        mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend mpreal operator-(mpreal a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

    friend bool operator<(const mpreal& a, const mpreal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const mpreal& a, const mpreal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const mpreal& a, const mpreal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const mpreal& a, const mpreal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const mpreal& a, const mpreal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const mpreal& a, const mpreal& b) { return !(a == b); }
    friend bool operator<(const mpreal& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const mpreal& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const mpreal& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const mpreal& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
    friend bool operator==(const mpreal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
    friend bool operator<(double a, const mpreal& b) { return b > a; }
    friend bool operator>(double a, const mpreal& b) { return b < a; }
    friend bool operator<=(double a, const mpreal& b) { return b >= a; }
    friend bool operator>=(double a, const mpreal& b) { return b <= a; }

    friend mpreal abs(mpreal a) { mpfr_abs(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal sqrt(mpreal a) { mpfr_sqrt(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal sin(mpreal a) { mpfr_sin(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal cos(mpreal a) { mpfr_cos(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal tan(mpreal a) { mpfr_tan(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal exp(mpreal a) { mpfr_exp(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal log(mpreal a) { mpfr_log(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal tanh(mpreal a) { mpfr_tanh(a.v_, a.v_, MPFR_RNDN); return a; }
    friend mpreal floor(mpreal a) { mpfr_floor(a.v_, a.v_); return a; }
    friend mpreal pow(mpreal a, const mpreal& b) { mpfr_pow(a.v_, a.v_, b.v_, MPFR_RNDN); return a; }
    friend mpreal pow(mpreal a, double b) { return pow(std::move(a), mpreal(b)); }
    friend mpreal pow(mpreal a, long b) { mpfr_pow_si(a.v_, a.v_, b, MPFR_RNDN); return a; }
    friend mpreal pow(mpreal a, int b) { mpfr_pow_si(a.v_, a.v_, b, MPFR_RNDN); return a; }
    friend mpreal max(const mpreal& a, const mpreal& b) { return a >= b ? a : b; }
    friend mpreal min(const mpreal& a, const mpreal& b) { return a <= b ? a : b; }
    friend bool isfinite(const mpreal& a) { return mpfr_number_p(a.v_) != 0; }
    friend int sign(const mpreal& a) { return mpfr_sgn(a.v_); }

private:
    struct prec_tag {};
    mpreal(prec_tag, mpfr_prec_t p) { mpfr_init2(v_, p); }
    mpfr_t v_;
    static thread_local mpfr_prec_t default_prec_;
};

// Sets the thread default precision on entry and restores on exit.
class precision_guard {
public:
    explicit precision_guard(mpfr_prec_t p) : saved_(mpreal::default_prec()) { mpreal::set_default_prec(p); }
    ~precision_guard() { mpreal::set_default_prec(saved_); }
    precision_guard(const precision_guard&) = delete;
    precision_guard& operator=(const precision_guard&) = delete;
private:
    mpfr_prec_t saved_;
};

inline double to_double(double x) { return x; }
inline double to_double(const mpreal& x) { return x.to_double(); }

} // namespace pwchaos

#endif
