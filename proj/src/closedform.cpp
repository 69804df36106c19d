#include "assoc7/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace assoc7 {

namespace {
const cplx kI(0.0, 1.0);
}

AlphaParams derive_constants(double alpha1, double alpha2, double alpha3) {
    if (!(alpha1 > 0 && alpha2 > 0 && alpha3 > 0))
        throw AlphaConstraintViolated("derive_constants: alpha must be positive");
    const double lhs = 1.0 / (alpha1 * alpha1);
    const double rhs = 1.0 / (alpha2 * alpha2) + 1.0 / (alpha3 * alpha3);
    if (std::abs(lhs - rhs) > 1e-9 * lhs)
        throw AlphaConstraintViolated(
            "derive_constants: alpha1^-2 = alpha2^-2 + alpha3^-2 violated");
    AlphaParams p;
    p.alpha = {alpha1, alpha2, alpha3};
    p.a = {-alpha2 * alpha3 / alpha1, alpha3 * alpha1 / alpha2, alpha1 * alpha2 / alpha3};
    p.lambda = std::sqrt(p.a[1] * p.a[1] - p.a[0] * p.a[2]);
    return p;
}

Mat7 build_T(const AlphaParams& p) {
    const double a1 = p.alpha[0], a2 = p.alpha[1], a3 = p.alpha[2];
    const double m1 = p.a[0], m2 = p.a[1], m3 = p.a[2];
    Mat7 T;
    T << 0, -a1 / 2, a2 / 2, a3 / 2, a1 / 2, -a2 / 2, -a3 / 2,  //
        a1, -2 * m1, 0, 0, 0, -a3, -a2,                         //
        a2, 0, -2 * m2, 0, a3, 0, a1,                           //
        a3, 0, 0, -2 * m3, a2, a1, 0,                           //
        -a1, 0, a3, a2, 2 * m1, 0, 0,                           //
        -a2, -a3, 0, -a1, 0, 2 * m2, 0,                         //
        -a3, -a2, -a1, 0, 0, 0, 2 * m3;
    return T;
}

namespace {

// (x, y, z) -> (x, z, y) on the two 3-blocks; carries mu-eigenvectors of T
// to -mu-eigenvectors.
EVec7 block_swap(const EVec7& v) {
    EVec7 out;
    out[0] = v[0];
    out[1] = v[4];
    out[2] = v[5];
    out[3] = v[6];
    out[4] = v[1];
    out[5] = v[2];
    out[6] = v[3];
    return out;
}

// Real representative of a (numerically real) eigenvector column.
EVec7 realify(const Eigen::Matrix<cplx, 7, 1>& v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < 7; ++i)
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            imax = i;
        }
    const cplx phase = v[imax] / std::abs(v[imax]);
    EVec7 out;
    for (int i = 0; i < 7; ++i) out[i] = (v[i] / phase).real();
    return out;
}

void normalize_sign(EVec7& v) {
    v.normalize();
    for (int i = 0; i < 7; ++i) {
        if (std::abs(v[i]) > 1e-10) {
            if (v[i] < 0) v = -v;
            return;
        }
    }
}

}  // namespace

EigenBasis eigensystem(const Mat7& T, const AlphaParams& params) {
    const double lambda = params.lambda;
    const double scale = T.norm();
    Eigen::EigenSolver<Mat7> solver(T);
    if (solver.info() != Eigen::Success)
        throw DegenerateEigenspace("eigensystem: eigensolver failed", -1.0);

    std::vector<EVec7> plus_lambda;
    EVec7 d_plus = EVec7::Zero();
    bool have_d = false;
    for (int i = 0; i < 7; ++i) {
        const cplx mu = solver.eigenvalues()[i];
        if (std::abs(mu.imag()) > 1e-7 * scale)
            throw DegenerateEigenspace("eigensystem: complex eigenvalue", std::abs(mu.imag()));
        const double m = mu.real();
        if (std::abs(m - lambda) < 1e-7 * scale) {
            plus_lambda.push_back(realify(solver.eigenvectors().col(i)));
        } else if (std::abs(m - 3 * lambda) < 1e-7 * scale) {
            d_plus = realify(solver.eigenvectors().col(i));
            have_d = true;
        } else if (std::abs(m) > 1e-7 * scale && std::abs(m + lambda) > 1e-7 * scale &&
                   std::abs(m + 3 * lambda) > 1e-7 * scale) {
            throw DegenerateEigenspace("eigensystem: unexpected eigenvalue", m);
        }
    }
    if (plus_lambda.size() != 2 || !have_d)
        throw DegenerateEigenspace("eigensystem: eigenvalue multiplicities wrong",
                                   static_cast<double>(plus_lambda.size()));

    // orthonormalize the double eigenspace for a stable 2x2 null solve
    EVec7 v1 = plus_lambda[0].normalized();
    EVec7 v2 = (plus_lambda[1] - plus_lambda[1].dot(v1) * v1);
    if (v2.norm() < 1e-8)
        throw DegenerateEigenspace("eigensystem: defective lambda eigenspace", v2.norm());
    v2.normalize();

    // combination with zeros at the two given component slots
    auto null_combo = [&](int s0, int s1) -> EVec7 {
        const double A00 = v1[s0], A01 = v2[s0], A10 = v1[s1], A11 = v2[s1];
        const double det = A00 * A11 - A01 * A10;
        const double anorm = std::sqrt(A00 * A00 + A01 * A01 + A10 * A10 + A11 * A11);
        if (std::abs(det) > 1e-7 * std::max(anorm * anorm, 1e-30))
            throw DegenerateEigenspace("eigensystem: sparsity split impossible",
                                       std::abs(det));
        double x, y;
        if (std::abs(A00) + std::abs(A01) >= std::abs(A10) + std::abs(A11)) {
            x = A01;
            y = -A00;
        } else {
            x = A11;
            y = -A10;
        }
        EVec7 out = x * v1 + y * v2;
        if (out.norm() < 1e-8)
            throw DegenerateEigenspace("eigensystem: null combination vanished", out.norm());
        return out;
    };

    EigenBasis basis;
    basis.lambda = lambda;
    basis.a << 0, params.alpha[0], params.alpha[1], params.alpha[2], params.alpha[0],
        params.alpha[1], params.alpha[2];
    basis.bp = null_combo(2, 5);  // zeros in components 3 and 6
    basis.cp = null_combo(1, 4);  // zeros in components 2 and 5
    basis.dp = d_plus;
    normalize_sign(basis.bp);
    normalize_sign(basis.cp);
    normalize_sign(basis.dp);
    basis.bm = block_swap(basis.bp);
    basis.cm = block_swap(basis.cp);
    basis.dm = block_swap(basis.dp);

    const double tol = 1e-10 * std::max(scale, 1.0);
    auto check = [&](const EVec7& v, double mu, const char* what) {
        const double res = (T * v - mu * v).norm();
        if (res > tol) throw DegenerateEigenspace(std::string("eigensystem: ") + what, res);
    };
    check(basis.a, 0.0, "T a != 0");
    check(basis.bp, lambda, "b+ residual");
    check(basis.cp, lambda, "c+ residual");
    check(basis.dp, 3 * lambda, "d+ residual");
    check(basis.bm, -lambda, "b- residual");
    check(basis.cm, -lambda, "c- residual");
    check(basis.dm, -3 * lambda, "d- residual");
    if (std::abs(basis.bp[2]) > 1e-9 || std::abs(basis.bp[5]) > 1e-9)
        throw DegenerateEigenspace("eigensystem: b+ sparsity violated",
                                   std::max(std::abs(basis.bp[2]), std::abs(basis.bp[5])));
    if (std::abs(basis.cp[1]) > 1e-9 || std::abs(basis.cp[4]) > 1e-9)
        throw DegenerateEigenspace("eigensystem: c+ sparsity violated",
                                   std::max(std::abs(basis.cp[1]), std::abs(basis.cp[4])));
    if (std::abs(basis.dp[0]) > 1e-9)
        throw DegenerateEigenspace("eigensystem: d+ sparsity violated", std::abs(basis.dp[0]));
    return basis;
}

ClosedFormSolution build_solution(const AlphaParams& params, cplx B, cplx Bp, cplx C, cplx Cp,
                                  cplx D, cplx Dp, double z0, const std::array<cplx, 3>& r0) {
    const double lambda = params.lambda;
    const double freq_scale = std::max({std::abs(params.a[0]), std::abs(params.a[1]),
                                        std::abs(params.a[2]), lambda});
    for (double m : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0})
        for (int j = 0; j < 3; ++j)
            for (double s : {-1.0, 1.0})
                if (std::abs(params.a[j] + s * m * lambda) < 1e-9 * freq_scale)
                    throw ResonantFrequency("build_solution: a_j + m lambda vanishes");

    ClosedFormSolution sol;
    sol.params = params;
    sol.basis = eigensystem(build_T(params), params);
    sol.B = B;
    sol.Bp = Bp;
    sol.C = C;
    sol.Cp = Cp;
    sol.D = D;
    sol.Dp = Dp;
    sol.z0 = z0;
    sol.r0 = r0;

    const auto b = sol.basis.b();
    const auto c = sol.basis.c();
    const auto d = sol.basis.d();
    const double a1 = params.a[0], a2 = params.a[1], a3 = params.a[2];
    const double mu = 0.5 * lambda;

    sol.w[0] = ExpSum::harmonic(kI * 0.5 * params.alpha[0], a1);
    sol.w[1] = ExpSum::harmonic(cplx(0.5 * params.alpha[1], 0.0), a2);
    sol.w[2] = ExpSum::harmonic(cplx(0.5 * params.alpha[2], 0.0), a3);

    auto real_mode = [&](cplx coeff) {
        return ExpSum::harmonic(coeff, mu) + ExpSum::harmonic(std::conj(coeff), -mu);
    };
    sol.x = real_mode(B * b[0] + C * c[0]);
    sol.y = real_mode(Bp * b[0] + Cp * c[0]);

    auto p_like = [&](cplx P, cplx Q, double aj, int which) {
        // which: 0 -> p1 pattern (i prefactor, b/d entries),
        //        1 -> p2 pattern (c/d), 2 -> p3 pattern (b+c shared slot)
        ExpSum f;
        switch (which) {
            case 0:
                f += ExpSum::harmonic(kI * P * b[1], aj + mu);
                f += ExpSum::harmonic(kI * std::conj(P) * b[3], aj - mu);
                f += ExpSum::harmonic(kI * Q * d[0], aj + 3 * mu);
                f += ExpSum::harmonic(kI * std::conj(Q) * d[3], aj - 3 * mu);
                break;
            case 1:
                f += ExpSum::harmonic(P * c[1], aj + mu);
                f += ExpSum::harmonic(std::conj(P) * c[3], aj - mu);
                f += ExpSum::harmonic(Q * d[1], aj + 3 * mu);
                f += ExpSum::harmonic(std::conj(Q) * d[4], aj - 3 * mu);
                break;
            default:
                break;
        }
        return f;
    };
    sol.p[0] = p_like(B, D, a1, 0);
    sol.p[1] = p_like(C, D, a2, 1);
    sol.p[2] = ExpSum::harmonic(B * b[2] + C * c[2], a3 + mu) +
               ExpSum::harmonic(std::conj(B) * b[4] + std::conj(C) * c[4], a3 - mu) +
               ExpSum::harmonic(D * d[2], a3 + 3 * mu) +
               ExpSum::harmonic(std::conj(D) * d[5], a3 - 3 * mu);
    sol.q[0] = p_like(Bp, Dp, a1, 0);
    sol.q[1] = p_like(Cp, Dp, a2, 1);
    sol.q[2] = ExpSum::harmonic(Bp * b[2] + Cp * c[2], a3 + mu) +
               ExpSum::harmonic(std::conj(Bp) * b[4] + std::conj(Cp) * c[4], a3 - mu) +
               ExpSum::harmonic(Dp * d[2], a3 + 3 * mu) +
               ExpSum::harmonic(std::conj(Dp) * d[5], a3 - 3 * mu);

    // dz/dt = Im(conj(p1) q1 - conj(p2) q2 - conj(p3) q3); its zero-frequency
    // part (if any) becomes a measured drift of z.
    const ExpSum zdot = (sol.p[0].conj() * sol.q[0] - sol.p[1].conj() * sol.q[1] -
                         sol.p[2].conj() * sol.q[2])
                            .imag_part();
    sol.z = zdot.antiderivative(cplx(z0, 0.0));

    // the r_j derivatives are structurally free of zero frequencies once the
    // resonance precheck passed; scrub roundoff offsets before integrating
    auto integrate_r = [&](ExpSum f, cplx value0) {
        if (std::abs(f.offset()) > 1e-12 * std::max(1.0, f.max_coeff()))
            throw ResonantFrequency("build_solution: r derivative has a constant term");
        f.set_offset(cplx(0.0, 0.0));
        return f.antiderivative(value0);
    };
    const ExpSum r1dot = kI * (sol.x * sol.p[0]) + kI * (sol.y * sol.q[0]) +
                         (sol.p[1] * sol.p[2]).conj() + (sol.q[1] * sol.q[2]).conj();
    const ExpSum r2dot = kI * (sol.x * sol.p[1]) - kI * (sol.y * sol.q[1]) -
                         (sol.p[2] * sol.p[0]).conj() + (sol.q[2] * sol.q[0]).conj();
    const ExpSum r3dot = kI * (sol.x * sol.q[2]) + kI * (sol.y * sol.p[2]) -
                         (sol.p[0] * sol.q[1]).conj() - (sol.p[1] * sol.q[0]).conj();
    sol.r[0] = integrate_r(r1dot, r0[0]);
    sol.r[1] = integrate_r(r2dot, r0[1]);
    sol.r[2] = integrate_r(r3dot, r0[2]);
    return sol;
}

Vec7 cf_evaluate(const ClosedFormSolution& sol, double y1, double y2, double t) {
    const cplx w1 = sol.w[0].eval(t), w2 = sol.w[1].eval(t), w3 = sol.w[2].eval(t);
    const double xv = sol.x.eval(t).real(), yv = sol.y.eval(t).real();
    const double zv = sol.z.eval(t).real();
    const cplx s1 = 0.5 * (y1 * y1 + y2 * y2) * w1 + y1 * sol.p[0].eval(t) +
                    y2 * sol.q[0].eval(t) + sol.r[0].eval(t);
    const cplx s2 = 0.5 * (y1 * y1 - y2 * y2) * w2 + y1 * sol.p[1].eval(t) -
                    y2 * sol.q[1].eval(t) + sol.r[1].eval(t);
    const cplx s3 = y1 * y2 * w3 + y1 * sol.q[2].eval(t) + y2 * sol.p[2].eval(t) +
                    sol.r[2].eval(t);
    return Vec7{y1 * yv - y2 * xv + zv, s1.real(), s1.imag(), s2.real(), s2.imag(), s3.real(),
                s3.imag()};
}

std::array<Vec7, 3> cf_frame(const ClosedFormSolution& sol, double y1, double y2, double t) {
    const cplx w1 = sol.w[0].eval(t), w2 = sol.w[1].eval(t), w3 = sol.w[2].eval(t);
    const cplx dw1 = sol.w[0].eval_derivative(t), dw2 = sol.w[1].eval_derivative(t),
               dw3 = sol.w[2].eval_derivative(t);
    const cplx p1 = sol.p[0].eval(t), p2 = sol.p[1].eval(t), p3 = sol.p[2].eval(t);
    const cplx q1 = sol.q[0].eval(t), q2 = sol.q[1].eval(t), q3 = sol.q[2].eval(t);
    const cplx dp1 = sol.p[0].eval_derivative(t), dp2 = sol.p[1].eval_derivative(t),
               dp3 = sol.p[2].eval_derivative(t);
    const cplx dq1 = sol.q[0].eval_derivative(t), dq2 = sol.q[1].eval_derivative(t),
               dq3 = sol.q[2].eval_derivative(t);
    const double xv = sol.x.eval(t).real(), yv = sol.y.eval(t).real();
    const double dxv = sol.x.eval_derivative(t).real(), dyv = sol.y.eval_derivative(t).real();
    const double dzv = sol.z.eval_derivative(t).real();
    const cplx dr1 = sol.r[0].eval_derivative(t), dr2 = sol.r[1].eval_derivative(t),
               dr3 = sol.r[2].eval_derivative(t);

    const cplx f1c1 = y1 * w1 + p1, f1c2 = y1 * w2 + p2, f1c3 = y2 * w3 + q3;
    const cplx f2c1 = y2 * w1 + q1, f2c2 = -y2 * w2 - q2, f2c3 = y1 * w3 + p3;
    const cplx f3c1 = 0.5 * (y1 * y1 + y2 * y2) * dw1 + y1 * dp1 + y2 * dq1 + dr1;
    const cplx f3c2 = 0.5 * (y1 * y1 - y2 * y2) * dw2 + y1 * dp2 - y2 * dq2 + dr2;
    const cplx f3c3 = y1 * y2 * dw3 + y1 * dq3 + y2 * dp3 + dr3;

    const Vec7 fy1{yv, f1c1.real(), f1c1.imag(), f1c2.real(), f1c2.imag(), f1c3.real(),
                   f1c3.imag()};
    const Vec7 fy2{-xv, f2c1.real(), f2c1.imag(), f2c2.real(), f2c2.imag(), f2c3.real(),
                   f2c3.imag()};
    const Vec7 ft{y1 * dyv - y2 * dxv + dzv, f3c1.real(), f3c1.imag(), f3c2.real(), f3c2.imag(),
                  f3c3.real(), f3c3.imag()};
    return {fy1, fy2, ft};
}

AffineState embed_w_at(const ClosedFormSolution& sol, double t) {
    const cplx w1 = sol.w[0].eval(t), w2 = sol.w[1].eval(t), w3 = sol.w[2].eval(t);
    const cplx p1 = sol.p[0].eval(t), p2 = sol.p[1].eval(t), p3 = sol.p[2].eval(t);
    const cplx q1 = sol.q[0].eval(t), q2 = sol.q[1].eval(t), q3 = sol.q[2].eval(t);
    const cplx r1 = sol.r[0].eval(t), r2 = sol.r[1].eval(t), r3 = sol.r[2].eval(t);
    const double xv = sol.x.eval(t).real(), yv = sol.y.eval(t).real();
    const double zv = sol.z.eval(t).real();
    AffineState s;
    s.w[0] = Vec7{0, w1.real(), w1.imag(), 0, 0, 0, 0};
    s.w[1] = Vec7{0, 0, 0, w2.real(), w2.imag(), 0, 0};
    s.w[2] = Vec7{0, 0, 0, 0, 0, w3.real(), w3.imag()};
    s.w[3] = Vec7{yv, p1.real(), p1.imag(), p2.real(), p2.imag(), q3.real(), q3.imag()};
    s.w[4] = Vec7{-xv, q1.real(), q1.imag(), -q2.real(), -q2.imag(), p3.real(), p3.imag()};
    s.w[5] = Vec7{zv, r1.real(), r1.imag(), r2.real(), r2.imag(), r3.real(), r3.imag()};
    return s;
}

AffineState embed_w(const ClosedFormSolution& sol) { return embed_w_at(sol, 0.0); }

SurfaceMesh cf_sample_mesh(const ClosedFormSolution& sol, const GridSpec3& grid) {
    SurfaceMesh mesh;
    mesh.param_names = {"y1", "y2", "t"};
    mesh.counts = {grid.n[0], grid.n[1], grid.n[2]};
    mesh.points.reserve(static_cast<std::size_t>(grid.n[0]) * grid.n[1] * grid.n[2]);
    for (int i = 0; i < grid.n[0]; ++i)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int k = 0; k < grid.n[2]; ++k) {
                MeshPoint p;
                p.param = {grid.coord(0, i), grid.coord(1, j), grid.coord(2, k)};
                p.x = cf_evaluate(sol, p.param[0], p.param[1], p.param[2]);
                p.frame = cf_frame(sol, p.param[0], p.param[1], p.param[2]);
                mesh.points.push_back(p);
            }
    attach_residuals(mesh);
    return mesh;
}

PeriodicInts periodic_params(std::int64_t p, std::int64_t q) {
    if (p <= 0 || q <= 0) throw InvalidFraction("periodic_params: p, q must be positive");
    if (std::gcd(p, q) != 1) throw InvalidFraction("periodic_params: gcd(p, q) != 1");
    if (!(2 * p < q)) throw InvalidFraction("periodic_params: requires 0 < p/q < 1/2");
    PeriodicInts out{p * p - q * q, q * q - 2 * p * q, 2 * p * q - p * p, p * p - p * q + q * q};
    if ((p + q) % 3 == 0) {
        out.a1 /= 3;
        out.a2 /= 3;
        out.a3 /= 3;
        out.lambda /= 3;
    }
    if (out.a1 + out.a2 + out.a3 != 0)
        throw Error("periodic_params: a1 + a2 + a3 != 0");
    if (out.lambda * out.lambda != out.a2 * out.a2 - out.a1 * out.a3)
        throw Error("periodic_params: lambda^2 != a2^2 - a1 a3");
    if (std::gcd(std::gcd(std::abs(out.a1), std::abs(out.a2)), std::abs(out.a3)) != 1)
        throw Error("periodic_params: gcd(a1, a2, a3) != 1");
    if (out.lambda % 2 == 0) throw Error("periodic_params: lambda must be odd");
    return out;
}

AlphaParams params_from_fraction(std::int64_t p, std::int64_t q) {
    const PeriodicInts ints = periodic_params(p, q);
    const double a1 = static_cast<double>(ints.a1), a2 = static_cast<double>(ints.a2),
                 a3 = static_cast<double>(ints.a3);
    return derive_constants(std::sqrt(a2 * a3), std::sqrt(-a1 * a3), std::sqrt(-a1 * a2));
}

PeriodicityReport check_periodicity(const ClosedFormSolution& sol, int ny, int nt) {
    const ExpSum* all[] = {&sol.x, &sol.y,    &sol.p[0], &sol.p[1], &sol.p[2], &sol.q[0],
                           &sol.q[1], &sol.q[2], &sol.r[0], &sol.r[1], &sol.r[2], &sol.z,
                           &sol.w[0], &sol.w[1], &sol.w[2]};
    for (const ExpSum* f : all)
        if (!f->commensurate_half_integer())
            throw NoCommonPeriod("check_periodicity: frequencies are not half-integers");

    const double coeff_scale = std::max(1.0, sol.z.max_coeff());
    double drift = std::abs(sol.z.drift());
    for (int j = 0; j < 3; ++j) drift = std::max(drift, std::abs(sol.r[j].drift()));
    if (drift > 1e-10 * coeff_scale)
        throw DriftPresent("check_periodicity: linear drift present", drift);

    PeriodicityReport report;
    report.z_drift = sol.z_drift();
    report.period = 4.0 * M_PI;
    double scale = 0.0;
    for (int i = 0; i < ny; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nt; ++k) {
                const double y1 = -1.0 + 2.0 * i / std::max(1, ny - 1);
                const double y2 = -1.0 + 2.0 * j / std::max(1, ny - 1);
                const double t = 4.0 * M_PI * k / nt;
                const Vec7 base = cf_evaluate(sol, y1, y2, t);
                scale = std::max(scale, norm(base));
                const Vec7 half = cf_evaluate(sol, y1, y2, t + 2.0 * M_PI);
                const Vec7 mirrored = cf_evaluate(sol, -y1, -y2, t);
                const Vec7 full = cf_evaluate(sol, y1, y2, t + 4.0 * M_PI);
                report.half_period_residual =
                    std::max(report.half_period_residual, norm(half - mirrored));
                report.full_period_residual =
                    std::max(report.full_period_residual, norm(full - base));
            }
    scale = std::max(scale, 1e-300);
    report.half_period_residual /= scale;
    report.full_period_residual /= scale;
    return report;
}

Vec7 ConeSampler::point(double x1, double x2, double x3, double t) const {
    const double a1 = params.a[0], a2 = params.a[1], a3 = params.a[2];
    const cplx u1 = kI * std::exp(kI * (a1 * t));
    const cplx u2 = std::exp(kI * (a2 * t));
    const cplx u3 = std::exp(kI * (a3 * t));
    return Vec7{0.0,
                x1 * u1.real(),
                x1 * u1.imag(),
                x2 * u2.real(),
                x2 * u2.imag(),
                x3 * u3.real(),
                x3 * u3.imag()};
}

namespace {

// distance^2 from p to the t-slice of the cone; exact in the x variables.
double slice_dist_sq(const AlphaParams& params, const Vec7& p, double t) {
    const double a[3] = {params.a[0], params.a[1], params.a[2]};
    const cplx zeta[3] = {cplx(p[1], p[2]), cplx(p[3], p[4]), cplx(p[5], p[6])};
    const cplx u[3] = {kI * std::exp(kI * (a[0] * t)), std::exp(kI * (a[1] * t)),
                       std::exp(kI * (a[2] * t))};
    double m[3];
    for (int j = 0; j < 3; ++j) m[j] = (std::conj(u[j]) * zeta[j]).real();

    // minimize sum (x_j - m_j)^2 subject to sum a_j x_j^2 = 0:
    // x_j = m_j / (1 + mu a_j), h(mu) = sum a_j x_j^2 strictly decreasing on
    // the feasible interval.
    const double a_pos = std::max(a[1], a[2]);
    const double a_neg = a[0];  // negative
    const double lo0 = -1.0 / a_pos, hi0 = -1.0 / a_neg;
    const double margin = 1e-9 * (hi0 - lo0);
    double lo = lo0 + margin, hi = hi0 - margin;
    auto h = [&](double mu) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double x = m[j] / (1.0 + mu * a[j]);
            s += a[j] * x * x;
        }
        return s;
    };
    double mu;
    if (h(lo) <= 0.0)
        mu = lo;
    else if (h(hi) >= 0.0)
        mu = hi;
    else {
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) > 0.0 ? lo : hi) = mid;
        }
        mu = 0.5 * (lo + hi);
    }
    double x[3];
    for (int j = 0; j < 3; ++j) x[j] = m[j] / (1.0 + mu * a[j]);
    // the cone requires x1 >= 0; the apex is always an admissible fallback
    double best = norm_sq(p);
    if (x[0] >= 0.0) {
        double d = p[0] * p[0];
        for (int j = 0; j < 3; ++j) d += std::norm(zeta[j] - u[j] * x[j]);
        best = std::min(best, d);
    }
    return best;
}

}  // namespace

double ConeSampler::distance(const Vec7& p, int t_samples) const {
    // integer frequency data has period 2 pi in t; scan generously otherwise
    bool integral = true;
    for (double aj : params.a)
        if (std::abs(aj - std::round(aj)) > 1e-9) integral = false;
    const double T = integral ? 2.0 * M_PI : 16.0 * M_PI;
    const int n = integral ? t_samples : t_samples * 8;

    double best = norm_sq(p);
    double best_t = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = T * i / n;
        const double d = slice_dist_sq(params, p, t);
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    // golden-section refinement around the best slice
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best_t - T / n, b = best_t + T / n;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = slice_dist_sq(params, p, c), fd = slice_dist_sq(params, p, d);
    for (int i = 0; i < 80; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = slice_dist_sq(params, p, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = slice_dist_sq(params, p, d);
        }
    }
    best = std::min(best, std::min(fc, fd));
    return std::sqrt(std::max(0.0, best));
}

ConeSampler asymptotic_cone_sampler(const ClosedFormSolution& sol) {
    return ConeSampler{sol.params};
}

std::vector<std::pair<double, double>> cone_divergence_samples(const ClosedFormSolution& sol,
                                                               double rho_min, double rho_max,
                                                               int n_rho) {
    const ConeSampler cone = asymptotic_cone_sampler(sol);
    const double dirs[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {M_SQRT1_2, M_SQRT1_2}};
    const double tprobe[2] = {0.0, 1.3};
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n_rho; ++i) {
        const double rho =
            rho_min * std::pow(rho_max / rho_min, n_rho > 1 ? i / double(n_rho - 1) : 0.0);
        for (const auto& dir : dirs)
            for (double t : tprobe) {
                const Vec7 pt = cf_evaluate(sol, rho * dir[0], rho * dir[1], t);
                out.push_back({norm(pt), cone.distance(pt)});
            }
    }
    return out;
}

SlDetection sl_detect(const ClosedFormSolution& sol, double tol) {
    SlDetection det;
    const double x_max = sol.x.max_coeff();
    const double y_max = sol.y.max_coeff();
    const double z_osc = sol.z.max_oscillating_coeff();
    const double z_drift = std::abs(sol.z.drift());
    det.x1_spread = std::max({x_max, y_max, z_osc, z_drift});
    det.omega_residual = 0.0;
    det.is_sl = x_max <= tol && y_max <= tol && z_osc <= tol && z_drift <= tol;
    std::ostringstream os;
    os << "max|x coeff| " << x_max << ", max|y coeff| " << y_max << ", z oscillation " << z_osc
       << ", z drift " << z_drift;
    det.evidence = os.str();
    return det;
}

}  // namespace assoc7
