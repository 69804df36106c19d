#include "assoc7/g2.hpp"

#include <cmath>

namespace assoc7 {

const std::array<PhiTerm, 7>& phi_terms() {
    static const std::array<PhiTerm, 7> terms = {{
        {0, 1, 2, +1.0},  // dx123
        {0, 3, 4, +1.0},  // dx145
        {0, 5, 6, +1.0},  // dx167
        {1, 3, 5, +1.0},  // dx246
        {1, 4, 6, -1.0},  // -dx257
        {2, 3, 6, -1.0},  // -dx347
        {2, 4, 5, -1.0},  // -dx356
    }};
    return terms;
}

const std::array<StarPhiTerm, 7>& star_phi_terms() {
    static const std::array<StarPhiTerm, 7> terms = {{
        {3, 4, 5, 6, +1.0},  // dx4567
        {1, 2, 5, 6, +1.0},  // dx2367
        {1, 2, 3, 4, +1.0},  // dx2345
        {0, 2, 4, 6, +1.0},  // dx1357
        {0, 2, 3, 5, -1.0},  // -dx1346
        {0, 1, 4, 5, -1.0},  // -dx1256
        {0, 1, 3, 6, -1.0},  // -dx1247
    }};
    return terms;
}

namespace {

inline double det3(double a00, double a01, double a02, double a10, double a11, double a12,
                   double a20, double a21, double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
           a02 * (a10 * a21 - a11 * a20);
}

inline double minor3(const Vec7& x, const Vec7& y, const Vec7& z, int a, int b, int c) {
    return det3(x[a], x[b], x[c], y[a], y[b], y[c], z[a], z[b], z[c]);
}

}  // namespace

double phi3(const Vec7& x, const Vec7& y, const Vec7& z) {
    double v = 0.0;
    for (const PhiTerm& t : phi_terms()) v += t.sign * minor3(x, y, z, t.i, t.j, t.k);
    return v;
}

double star_phi4(const Vec7& x, const Vec7& y, const Vec7& z, const Vec7& w) {
    double v = 0.0;
    for (const StarPhiTerm& t : star_phi_terms()) {
        // 4x4 determinant of rows (x,y,z,w) on columns (i,j,k,l), expanded
        // along the last row.
        const int cols[4] = {t.i, t.j, t.k, t.l};
        double det = 0.0;
        double sign = -1.0;  // cofactor sign for position 0 in row 4
        for (int m = 0; m < 4; ++m) {
            int rest[3];
            int r = 0;
            for (int n = 0; n < 4; ++n)
                if (n != m) rest[r++] = cols[n];
            det += sign * w[cols[m]] * minor3(x, y, z, rest[0], rest[1], rest[2]);
            sign = -sign;
        }
        v += t.sign * det;
    }
    return v;
}

Vec7 cross(const Vec7& x, const Vec7& y) {
    Vec7 out;
    for (const PhiTerm& t : phi_terms()) {
        // Contract phi_abc x^a y^b over the three cyclic gaps of the term.
        out[t.k] += t.sign * (x[t.i] * y[t.j] - x[t.j] * y[t.i]);
        out[t.i] += t.sign * (x[t.j] * y[t.k] - x[t.k] * y[t.j]);
        out[t.j] += t.sign * (x[t.k] * y[t.i] - x[t.i] * y[t.k]);
    }
    return out;
}

Vec7 associator(const Vec7& x, const Vec7& y, const Vec7& z) {
    Vec7 out;
    for (const StarPhiTerm& t : star_phi_terms()) {
        const int cols[4] = {t.i, t.j, t.k, t.l};
        // (*phi)_abcd x^a y^b z^c for d at each slot of the term: the signed
        // 3x3 minor over the remaining columns.
        double sign = -1.0;
        for (int m = 0; m < 4; ++m) {
            int rest[3];
            int r = 0;
            for (int n = 0; n < 4; ++n)
                if (n != m) rest[r++] = cols[n];
            out[cols[m]] += 2.0 * t.sign * sign * minor3(x, y, z, rest[0], rest[1], rest[2]);
            sign = -sign;
        }
    }
    return out;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
    Octonion out;
    out.re = a.re * b.re - dot(a.im, b.im);
    out.im = a.re * b.im + b.re * a.im + cross(a.im, b.im);
    return out;
}

double oct_norm(const Octonion& a) { return std::sqrt(a.re * a.re + norm_sq(a.im)); }

Vec7 associator_via_octonions(const Vec7& x, const Vec7& y, const Vec7& z) {
    const Octonion ox = Octonion::imaginary(x);
    const Octonion oy = Octonion::imaginary(y);
    const Octonion oz = Octonion::imaginary(z);
    const Octonion lhs = oct_mul(oct_mul(ox, oy), oz);
    const Octonion rhs = oct_mul(ox, oct_mul(oy, oz));
    return (lhs - rhs).im;
}

PlaneTest is_associative_plane(const Vec7& x, const Vec7& y, const Vec7& z, double tol) {
    const double nx = norm(x), ny = norm(y), nz = norm(z);
    if (nx == 0.0 || ny == 0.0 || nz == 0.0)
        throw DegeneratePlane("is_associative_plane: zero input vector");
    const Vec7 ux = x / nx, uy = y / ny, uz = z / nz;
    // Gram determinant of the unit-normalized triple; frame-independent.
    const double g11 = dot(ux, ux), g12 = dot(ux, uy), g13 = dot(ux, uz);
    const double g22 = dot(uy, uy), g23 = dot(uy, uz), g33 = dot(uz, uz);
    const double gram = det3(g11, g12, g13, g12, g22, g23, g13, g23, g33);
    if (gram <= tol) throw DegeneratePlane("is_associative_plane: Gram determinant below tol");
    const double residual = norm(associator(x, y, z)) / (nx * ny * nz);
    return {residual <= tol, residual};
}

SplitFrame split_along(const Vec7& v) {
    const double n = norm(v);
    if (n == 0.0) throw ZeroVector("split_along: zero vector");
    return SplitFrame{v / n};
}

Vec7 complex_cross(const Vec7& u, const Vec7& v, const SplitFrame& frame) {
    const double nu = norm(u), nv = norm(v);
    if (std::abs(dot(u, frame.axis)) > 1e-10 * (nu > 0 ? nu : 1.0) ||
        std::abs(dot(v, frame.axis)) > 1e-10 * (nv > 0 ? nv : 1.0))
        throw NotInComplement("complex_cross: input not orthogonal to axis");
    return cross(u, v) - frame.omega(u, v) * frame.axis;
}

}  // namespace assoc7
