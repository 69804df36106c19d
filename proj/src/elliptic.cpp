#include "assoc7/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <vector>

namespace assoc7 {

namespace {

constexpr double kDegenerateTol = 1e-12;

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return a;
}

// 7-point Gauss / 15-point Kronrod pair (QUADPACK abscissae and weights).
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

void gk15(const std::function<double(double)>& f, double a, double b, double& kron,
          double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resk = kWgk[7] * f(c);
    double resg = kWg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    kron = resk * h;
    err = std::abs((resk - resg) * h);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int depth = 0) {
    double kron, err;
    gk15(f, a, b, kron, err);
    if (err <= tol * std::max(1.0, std::abs(kron)) || depth > 40) return kron;
    const double c = 0.5 * (a + b);
    return integrate_adaptive(f, a, c, tol * 0.5, depth + 1) +
           integrate_adaptive(f, c, b, tol * 0.5, depth + 1);
}

// Bisection for a root of g in [lo, hi] with g(lo), g(hi) of opposite sign.
double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double flo = g(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

JacobiTriple jacobi(double u, double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw ModulusOutOfRange("jacobi: modulus outside [0,1]");
    if (k < kDegenerateTol) return {std::sin(u), std::cos(u), 1.0, u, k};
    if (k > 1.0 - kDegenerateTol) {
        const double s = 1.0 / std::cosh(u);
        return {std::tanh(u), s, s, u, k};
    }

    // Descending Landen transformation.
    double a[32], c[32];
    a[0] = 1.0;
    c[0] = k;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    int n = 0;
    while (n < 30 && std::abs(c[n]) > 1e-16 * a[n]) {
        const double an = 0.5 * (a[n] + b);
        const double cn = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int m = n; m >= 1; --m) {
        const double s = std::clamp(c[m] / a[m] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = std::sqrt(std::max(0.0, 1.0 - k * k * sn * sn));  // dn >= k' > 0
    return {sn, cn, dn, u, k};
}

double quarter_period(double k) {
    if (!(k >= 0.0 && k <= 1.0))
        throw ModulusOutOfRange("quarter_period: modulus outside [0,1]");
    if (k == 1.0) return std::numeric_limits<double>::infinity();
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    return M_PI / (2.0 * agm(1.0, kp));
}

// Cached antiderivatives of the three case-(iii) angle integrands on a
// uniform grid; queries integrate only the remainder past the last node.
struct SLRefParams::ThetaCache {
    double step = 0.125;
    // values at i*step for i = 0..n, separately for t >= 0 and t <= 0
    std::array<std::vector<double>, 3> pos, neg;
    std::mutex mu;
};

SLRefParams SLRefParams::make(Case c, double alpha1, double alpha2, double alpha3, double A,
                              double theta1_0) {
    if (!(alpha1 > 0 && alpha2 > 0 && alpha3 > 0))
        throw InvalidCaseParams("SLRefParams: alpha must be positive");
    const double lhs = 1.0 / (alpha1 * alpha1);
    const double rhs = 1.0 / (alpha2 * alpha2) + 1.0 / (alpha3 * alpha3);
    if (std::abs(lhs - rhs) > 1e-9 * lhs)
        throw InvalidCaseParams("SLRefParams: alpha1^-2 = alpha2^-2 + alpha3^-2 violated");
    const double Amax = alpha1 * alpha2 * alpha3;
    if (A < 0 || A > Amax * (1 + 1e-12))
        throw InvalidCaseParams("SLRefParams: A outside [0, alpha1*alpha2*alpha3]");
    if (alpha2 > alpha3 * (1 + 1e-12))
        throw InvalidCaseParams("SLRefParams: requires alpha2 <= alpha3");

    SLRefParams p;
    p.case_tag = c;
    p.alpha = {alpha1, alpha2, alpha3};
    p.A = A;
    p.theta1_0 = theta1_0;

    const double a1sq = alpha1 * alpha1, a2sq = alpha2 * alpha2, a3sq = alpha3 * alpha3;
    switch (c) {
        case Case::I:
            if (A != 0.0) throw InvalidCaseParams("case (i) requires A = 0");
            if (std::abs(alpha2 - alpha3) > 1e-9 * alpha3)
                throw InvalidCaseParams("case (i) requires alpha2 = alpha3");
            break;
        case Case::II:
            if (A != 0.0) throw InvalidCaseParams("case (ii) requires A = 0");
            if (!(alpha2 < alpha3)) throw InvalidCaseParams("case (ii) requires alpha2 < alpha3");
            p.sigma = std::sqrt(a1sq + a3sq);
            p.tau = std::sqrt((a1sq + a2sq) / (a1sq + a3sq));
            break;
        case Case::III: {
            if (!(A > 0 && A < Amax)) throw InvalidCaseParams("case (iii) requires 0 < A < Amax");
            const double A2 = A * A;
            auto G = [&](double v) { return p.Q(v) - A2; };
            // bracketed roots: (-alpha1^2, 0], [0, alpha2^2), [alpha3^2, inf)
            p.gamma[0] = bisect(G, -a1sq, 0.0);
            p.gamma[1] = bisect(G, 0.0, a2sq);
            double hi = a3sq + 1.0;
            while (G(hi) < 0) hi *= 2.0;
            p.gamma[2] = bisect(G, a3sq, hi);
            p.sigma = std::sqrt(p.gamma[2] - p.gamma[0]);
            p.tau = std::sqrt((p.gamma[1] - p.gamma[0]) / (p.gamma[2] - p.gamma[0]));
            p.cache_ = std::make_shared<ThetaCache>();
            break;
        }
        case Case::IV:
            if (std::abs(A - Amax) > 1e-9 * Amax)
                throw InvalidCaseParams("case (iv) requires A = alpha1*alpha2*alpha3");
            p.a = {-alpha2 * alpha3 / alpha1, alpha3 * alpha1 / alpha2, alpha1 * alpha2 / alpha3};
            break;
    }
    return p;
}

namespace {

std::array<double, 3> theta_integrands(const SLRefParams& p, double s) {
    const double sn = jacobi(p.sigma * s, p.tau).sn;
    const double v = p.gamma[0] + (p.gamma[1] - p.gamma[0]) * sn * sn;
    return {-1.0 / (p.alpha[0] * p.alpha[0] + v), 1.0 / (p.alpha[1] * p.alpha[1] - v),
            1.0 / (p.alpha[2] * p.alpha[2] - v)};
}

}  // namespace

// theta_j(t) without the constant offsets, using the cached grid.
std::array<double, 3> SLRefParams::theta_values(double t) const {
    const SLRefParams& p = *this;
    auto& cache = *p.cache_;
    std::lock_guard<std::mutex> lock(cache.mu);
    auto& side = (t >= 0) ? cache.pos : cache.neg;
    const double at = std::abs(t);
    const double sgn = (t >= 0) ? 1.0 : -1.0;
    const std::size_t want = static_cast<std::size_t>(at / cache.step);
    if (side[0].empty())
        for (auto& v : side) v.push_back(0.0);
    for (int j = 0; j < 3; ++j) {
        while (side[j].size() <= want) {
            const std::size_t i = side[j].size();
            const double lo = sgn * cache.step * static_cast<double>(i - 1);
            const double hi = sgn * cache.step * static_cast<double>(i);
            const double inc = integrate_adaptive(
                [&](double s) { return theta_integrands(p, s)[j]; }, lo, hi, 1e-11);
            side[j].push_back(side[j].back() + inc);
        }
    }
    std::array<double, 3> out;
    const double base = sgn * cache.step * static_cast<double>(want);
    for (int j = 0; j < 3; ++j) {
        const double rem = integrate_adaptive(
            [&](double s) { return theta_integrands(p, s)[j]; }, base, t, 1e-11);
        out[j] = p.A * (side[j][want] + rem);
    }
    return out;
}

std::array<std::complex<double>, 3> sl_reference(const SLRefParams& p, double t) {
    using cplx = std::complex<double>;
    const double a1 = p.alpha[0], a2 = p.alpha[1], a3 = p.alpha[2];
    switch (p.case_tag) {
        case SLRefParams::Case::I: {
            const double r = std::sqrt(3.0) * a1;
            return {cplx(0.5 * r * std::tanh(r * t), 0.0), cplx(0.5 * r / std::cosh(r * t), 0.0),
                    cplx(0.5 * r / std::cosh(r * t), 0.0)};
        }
        case SLRefParams::Case::II: {
            const JacobiTriple j = jacobi(p.sigma * t, p.tau);
            const double m12 = std::sqrt(a1 * a1 + a2 * a2);
            const double m13 = std::sqrt(a1 * a1 + a3 * a3);
            return {cplx(0.5 * m12 * j.sn, 0.0), cplx(0.5 * m12 * j.cn, 0.0),
                    cplx(0.5 * m13 * j.dn, 0.0)};
        }
        case SLRefParams::Case::III: {
            const double sn = jacobi(p.sigma * t, p.tau).sn;
            const double v = p.gamma[0] + (p.gamma[1] - p.gamma[0]) * sn * sn;
            const std::array<double, 3> th = p.theta_values(t);
            const double theta1 = p.theta1_0 + th[0];
            const double theta2 = th[1];
            const double theta3 = th[2];
            return {0.5 * std::sqrt(a1 * a1 + v) * std::exp(cplx(0.0, theta1)),
                    0.5 * std::sqrt(a2 * a2 - v) * std::exp(cplx(0.0, theta2)),
                    0.5 * std::sqrt(a3 * a3 - v) * std::exp(cplx(0.0, theta3))};
        }
        case SLRefParams::Case::IV: {
            const cplx i(0.0, 1.0);
            return {0.5 * i * a1 * std::exp(i * (p.a[0] * t)),
                    cplx(0.5 * a2) * std::exp(i * (p.a[1] * t)),
                    cplx(0.5 * a3) * std::exp(i * (p.a[2] * t))};
        }
    }
    throw InvalidCaseParams("sl_reference: unknown case");
}

}  // namespace assoc7
