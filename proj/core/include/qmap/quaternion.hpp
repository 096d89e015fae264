#pragma once

#include "qmap/rational.hpp"

#include <array>
#include <ostream>

namespace qmap {

/// q = w + x i + y j + z k. T is Rational for exact work, double on the
/// numerical side.
template <class T>
struct Quaternion {
    T w{}, x{}, y{}, z{};

    Quaternion() = default;
    Quaternion(T w_, T x_, T y_, T z_) : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
    explicit Quaternion(T real) : w(std::move(real)), x(0), y(0), z(0) {}

    static Quaternion unit(int which) {
        Quaternion q;
        (which == 0 ? q.w : which == 1 ? q.x : which == 2 ? q.y : q.z) = T(1);
        return q;
    }

    const T& operator[](int c) const { return c == 0 ? w : c == 1 ? x : c == 2 ? y : z; }
    T& operator[](int c) { return c == 0 ? w : c == 1 ? x : c == 2 ? y : z; }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    T norm2() const { return T(w * w + x * x + y * y + z * z); }
    bool is_real() const { return x == T(0) && y == T(0) && z == T(0); }

    Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    Quaternion operator-() const { return {-w, -x, -y, -z}; }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

    // Hamilton product
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {T(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z),
                T(a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y),
                T(a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x),
                T(a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w)};
    }
    friend Quaternion operator*(const Quaternion& a, const T& s) {
        return {T(a.w * s), T(a.x * s), T(a.y * s), T(a.z * s)};
    }
    friend Quaternion operator*(const T& s, const Quaternion& a) { return a * s; }
    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
    }
};

using QuatQ = Quaternion<Rational>;
using QuatD = Quaternion<double>;

inline bool is_zero(const QuatQ& q) { return is_zero(q.w) && is_zero(q.x) && is_zero(q.y) && is_zero(q.z); }

inline QuatQ quat_mul(const QuatQ& a, const QuatQ& b) { return a * b; }

inline QuatD to_double(const QuatQ& q) { return {q.w.get_d(), q.x.get_d(), q.y.get_d(), q.z.get_d()}; }

}  // namespace qmap
