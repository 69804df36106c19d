#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace assoc7 {

// Point or tangent vector of the ambient R^7 with coordinates (x1,...,x7).
// Storage is zero-based: v[0] is the x1 component.
struct Vec7 {
    std::array<double, 7> c{};

    constexpr Vec7() = default;
    constexpr Vec7(double x1, double x2, double x3, double x4, double x5, double x6, double x7)
        : c{x1, x2, x3, x4, x5, x6, x7} {}

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Vec7& operator+=(const Vec7& o) {
        for (int i = 0; i < 7; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec7& operator-=(const Vec7& o) {
        for (int i = 0; i < 7; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec7& operator*=(double s) {
        for (double& x : c) x *= s;
        return *this;
    }

    friend Vec7 operator+(Vec7 a, const Vec7& b) { return a += b; }
    friend Vec7 operator-(Vec7 a, const Vec7& b) { return a -= b; }
    friend Vec7 operator*(Vec7 a, double s) { return a *= s; }
    friend Vec7 operator*(double s, Vec7 a) { return a *= s; }
    friend Vec7 operator/(Vec7 a, double s) { return a *= (1.0 / s); }
    friend Vec7 operator-(const Vec7& a) { return a * -1.0; }
};

inline double dot(const Vec7& a, const Vec7& b) {
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec7& v) { return dot(v, v); }
inline double norm(const Vec7& v) { return std::sqrt(norm_sq(v)); }

inline bool finite(const Vec7& v) {
    for (double x : v.c)
        if (!std::isfinite(x)) return false;
    return true;
}

// Standard basis vector e_k for k in 1..7, matching the coordinate labels.
inline Vec7 e(int k) {
    Vec7 v;
    v[static_cast<std::size_t>(k - 1)] = 1.0;
    return v;
}

}  // namespace assoc7
