#ifndef PWCHAOS_VEC2_HPP
#define PWCHAOS_VEC2_HPP

#include <cmath>

namespace pwchaos {

template <class R>
struct Vec2 {
    R x{}, y{};

    Vec2() = default;
    Vec2(R xx, R yy) : x(std::move(xx)), y(std::move(yy)) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(const R& s) { x *= s; y *= s; return *this; }

    friend Vec2 operator+(Vec2 a, const Vec2& b) { a += b; return a; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { a -= b; return a; }
    friend Vec2 operator*(Vec2 a, const R& s) { a *= s; return a; }
    friend Vec2 operator*(const R& s, Vec2 a) { a *= s; return a; }
    friend Vec2 operator-(Vec2 a) { a.x = -a.x; a.y = -a.y; return a; }

    friend R dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
    // a wedge b = a1 b2 - a2 b1
    friend R wedge(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
    friend R norm(const Vec2& a) {
        using std::sqrt;
        return sqrt(a.x * a.x + a.y * a.y);
    }
};

using Vec2d = Vec2<double>;

} // namespace pwchaos

#endif
