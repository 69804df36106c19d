#pragma once

#include "assoc7/errors.hpp"
#include "assoc7/vec7.hpp"

namespace assoc7 {

// G2 multilinear algebra on R^7.
//
// The 3-form is stored as seven signed index triples
//   phi = dx123 + dx145 + dx167 + dx246 - dx257 - dx347 - dx356
// and the 4-form as seven signed index quadruples
//   *phi = dx4567 + dx2367 + dx2345 + dx1357 - dx1346 - dx1256 - dx1247.
// Everything else (cross product, associator, octonion product) is derived
// from these two lists; no independent multiplication table is hard-coded.

struct PhiTerm {
    int i, j, k;  // zero-based, ascending
    double sign;
};
struct StarPhiTerm {
    int i, j, k, l;  // zero-based, ascending
    double sign;
};

const std::array<PhiTerm, 7>& phi_terms();
const std::array<StarPhiTerm, 7>& star_phi_terms();

// Value of the 3-form phi on (x, y, z).
double phi3(const Vec7& x, const Vec7& y, const Vec7& z);

// Value of the 4-form *phi on (x, y, z, w).
double star_phi4(const Vec7& x, const Vec7& y, const Vec7& z, const Vec7& w);

// Cross product: g(x @ y, z) = phi(x, y, z) for all z.
Vec7 cross(const Vec7& x, const Vec7& y);

// Associator [x,y,z] = 2 (*phi)(x,y,z, . ) raised by the metric.
Vec7 associator(const Vec7& x, const Vec7& y, const Vec7& z);

// Octonion with real part and imaginary part in Im O = R^7.
// Multiplication is derived from the cross product:
//   x y = -g(x, y) 1 + x X y  for imaginary x, y, extended bilinearly.
struct Octonion {
    double re = 0.0;
    Vec7 im;

    static Octonion one() { return {1.0, Vec7{}}; }
    static Octonion imaginary(const Vec7& v) { return {0.0, v}; }

    friend Octonion operator+(const Octonion& a, const Octonion& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Octonion operator-(const Octonion& a, const Octonion& b) {
        return {a.re - b.re, a.im - b.im};
    }
};

Octonion oct_mul(const Octonion& a, const Octonion& b);
double oct_norm(const Octonion& a);

// (xy)z - x(yz) for imaginary x, y, z. The result is imaginary; the real
// part (machine noise) is dropped. Used to cross-validate `associator`.
Vec7 associator_via_octonions(const Vec7& x, const Vec7& y, const Vec7& z);

struct PlaneTest {
    bool associative;
    double residual;  // |[x,y,z]| / (|x| |y| |z|)
};

// Throws DegeneratePlane when the Gram determinant of the normalized triple
// falls at or below tol.
PlaneTest is_associative_plane(const Vec7& x, const Vec7& y, const Vec7& z, double tol);

// Splitting R^7 = <axis> + C^3 along a distinguished direction.
// J is the complex structure on the complement, omega the Kaehler form:
//   J(x) = axis X x,   omega(x, y) = phi(axis, x, y).
struct SplitFrame {
    Vec7 axis;  // unit vector

    Vec7 J(const Vec7& x) const { return cross(axis, x); }
    double omega(const Vec7& x, const Vec7& y) const { return phi3(axis, x, y); }
};

SplitFrame split_along(const Vec7& v);  // throws ZeroVector

// Cross product of the C^3 factor: cross(u, v) - omega(u, v) * axis.
// Requires u, v orthogonal to frame.axis (residual below 1e-10 of norms).
Vec7 complex_cross(const Vec7& u, const Vec7& v, const SplitFrame& frame);

}  // namespace assoc7
