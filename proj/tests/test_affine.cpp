#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "assoc7/affine.hpp"

#include "assoc7/elliptic.hpp"
#include "assoc7/g2.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace assoc7;

namespace {

std::mt19937_64 rng(7771234);

Vec7 random_vec(double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Vec7 v;
    for (int i = 0; i < 7; ++i) v[i] = u(rng);
    return v;
}

AffineState random_state(double scale = 1.0) {
    AffineState s;
    for (auto& w : s.w) w = random_vec(scale);
    return s;
}

}  // namespace

TEST_CASE("affine_rhs basis examples") {
    AffineState zero;
    const AffineState dz = affine_rhs(zero);
    for (const auto& w : dz.w) CHECK(norm(w) == 0.0);

    AffineState s;
    s.w[0] = e(2);
    s.w[1] = e(4);
    s.w[2] = e(6);
    const AffineState d = affine_rhs(s);
    CHECK(norm(d.w[0] - 2.0 * e(2)) < 1e-15);   // 2 e4 x e6 = 2 e2
    CHECK(norm(d.w[1] + 2.0 * e(4)) < 1e-15);   // 2 e2 x e6 = -2 e4
    CHECK(norm(d.w[2] + 2.0 * e(6)) < 1e-15);   // -2 e2 x e4 = -2 e6
    CHECK(norm(d.w[3]) == 0.0);
    CHECK(norm(d.w[4]) == 0.0);
    CHECK(norm(d.w[5]) == 0.0);
}

TEST_CASE("norm balance derivative identity") {
    // d/dt(|w1|^2 - |w2|^2 - |w3|^2) = 12 phi(w1, w2, w3), exact in the RHS
    for (int n = 0; n < 200; ++n) {
        const AffineState s = random_state();
        const AffineState d = affine_rhs(s);
        const double lhs =
            2.0 * (dot(d.w[0], s.w[0]) - dot(d.w[1], s.w[1]) - dot(d.w[2], s.w[2]));
        const double rhs = 12.0 * phi3(s.w[0], s.w[1], s.w[2]);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("rhs directional derivative is the exact linearization") {
    const AffineState s = random_state();
    const AffineState ds = random_state(0.5);
    const double h = 1e-6;
    AffineState sp = s, sm = s;
    for (int j = 0; j < 6; ++j) {
        sp.w[j] += h * ds.w[j];
        sm.w[j] -= h * ds.w[j];
    }
    const AffineState fp = affine_rhs(sp), fm = affine_rhs(sm);
    const AffineState lin = affine_rhs_derivative(s, ds);
    for (int j = 0; j < 6; ++j)
        CHECK(norm((fp.w[j] - fm.w[j]) / (2 * h) - lin.w[j]) < 1e-8);
}

TEST_CASE("integrate: zero data stays zero and tol is validated") {
    AffineState zero;
    const AffineTrajectory traj = integrate(zero, 0.0, 1.0, 1e-10);
    for (double t = 0.0; t <= 1.0; t += 0.21) {
        const AffineState s = traj.state(t);
        for (const auto& w : s.w) CHECK(norm(w) == 0.0);
    }
    CHECK_THROWS_AS(integrate(zero, 0.0, 1.0, 1e-2), Error);
    CHECK_THROWS_AS(integrate(zero, 0.0, 1.0, 1e-15), Error);
}

TEST_CASE("stored node derivatives match RHS recomputation") {
    const AffineTrajectory traj = integrate(random_state(0.5), 0.0, 1.0, 1e-10);
    for (const auto& node : traj.dense().nodes()) {
        AffineState s;
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i < 7; ++i) s.w[j][i] = node.y[j * 7 + i];
        const AffineState d = affine_rhs(s);
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i < 7; ++i)
                CHECK(node.dy[j * 7 + i] == doctest::Approx(d.w[j][i]).epsilon(1e-13));
    }
}

TEST_CASE("time reversal returns the initial state") {
    const double tol = 1e-11;
    const AffineState init = random_state(0.6);
    const AffineTrajectory fwd = integrate(init, 0.0, 1.0, tol);
    const AffineTrajectory back = integrate(fwd.state(1.0), 1.0, 0.0, tol);
    const AffineState round = back.state(0.0);
    double err = 0.0;
    for (int j = 0; j < 6; ++j) err = std::max(err, norm(round.w[j] - init.w[j]));
    CHECK(err < 10 * 1e-9);  // 10x integrator tolerance in the global sense
}

TEST_CASE("F_map special points") {
    const AffineState init = random_state(0.5);
    const AffineTrajectory traj = integrate(init, 0.0, 0.5, 1e-11);
    for (double t : {0.0, 0.25, 0.5}) {
        const AffineState s = traj.state(t);
        CHECK(norm(F_map(traj, 0.0, 0.0, t) - s.w[5]) < 1e-14);
        const Vec7 expect = 0.5 * s.w[0] + 0.5 * s.w[1] + s.w[3] + s.w[5];
        CHECK(norm(F_map(traj, 1.0, 0.0, t) - expect) < 1e-14);
    }
    CHECK_THROWS_AS(F_map(traj, 0.0, 0.0, 0.7), OutOfSpan);
}

TEST_CASE("F_frame at the origin and rank deficiency") {
    AffineState init = random_state(0.5);
    const auto f = F_frame(init, 0.0, 0.0);
    CHECK(norm(f[0] - init.w[3]) < 1e-15);
    CHECK(norm(f[1] - init.w[4]) < 1e-15);
    CHECK(norm(f[2] - cross(init.w[3], init.w[4])) < 1e-14);

    init.w[4] = Vec7{};  // w5(0) = 0
    const auto g = F_frame(init, 0.0, 0.0);
    CHECK(norm(g[1]) == 0.0);
}

TEST_CASE("frame identity and associativity along trajectories") {
    const AffineState init = random_state(0.6);
    const AffineTrajectory traj = integrate(init, 0.0, 1.0, 1e-11);
    std::uniform_real_distribution<double> uy(-1.5, 1.5), ut(0.0, 1.0);
    double worst_identity = 0.0, worst_assoc = 0.0;
    for (int n = 0; n < 300; ++n) {
        const double y1 = uy(rng), y2 = uy(rng), t = ut(rng);
        const auto f = F_frame(traj, y1, y2, t);
        const double scale = std::max(1.0, norm(f[0]) * norm(f[1]));
        worst_identity = std::max(worst_identity, norm(cross(f[0], f[1]) - f[2]) / scale);
        const double s3 = std::max(1.0, norm(f[0]) * norm(f[1]) * norm(f[2]));
        worst_assoc = std::max(worst_assoc, norm(associator(f[0], f[1], f[2])) / s3);
    }
    CHECK(worst_identity < 1e-9);
    CHECK(worst_assoc < 1e-9);
}

TEST_CASE("detect_singularities flags dependent w4, w5") {
    AffineState init = random_state(0.4);
    init.w[3] = e(4);
    init.w[4] = 2.0 * e(4);  // dependent pair
    CHECK_FALSE(init.immersed_at_origin());
    const AffineTrajectory traj = integrate(init, 0.0, 0.2, 1e-11);
    GridSpec3 grid{{-0.1, -0.1, 0.0}, {0.1, 0.1, 0.2}, {3, 3, 3}};
    const auto flagged = detect_singularities(traj, grid, 1e-6);
    bool origin_flagged = false;
    for (const auto& p : flagged)
        if (p.y1 == 0.0 && p.y2 == 0.0 && p.t == 0.0) origin_flagged = true;
    CHECK(origin_flagged);

    AffineState good = random_state(0.4);
    good.w[3] = e(4);
    good.w[4] = e(5);
    CHECK(good.immersed_at_origin());
    const AffineTrajectory traj2 = integrate(good, 0.0, 0.2, 1e-11);
    const auto flagged2 = detect_singularities(traj2, grid, 1e-6);
    for (const auto& p : flagged2) {
        CHECK((p.y1 != 0.0 || p.y2 != 0.0 || p.t != 0.0));
    }
}

TEST_CASE("singular model term in the (u, w, u x w) frame") {
    const Vec7 u = e(2), w = e(4);
    const Vec7 uxw = cross(u, w);
    for (double y1 : {-0.5, 0.3})
        for (double y2 : {-0.4, 0.7})
            for (double t : {-0.6, 0.2}) {
                const Vec7 m = singular_model_term(u, w, y1, y2, t);
                CHECK(dot(m, u) == doctest::Approx(y1 + dot(u, w) * t * t));
                CHECK(dot(m, w) == doctest::Approx(y2 * y2 - norm_sq(u) * t * t));
                CHECK(dot(m, uxw) == doctest::Approx(2.0 * y2 * t));
            }
}

TEST_CASE("model term matches the scaled map as eps -> 0") {
    // independent check of the expansion coefficients against the integrated
    // system at a fixed probe point
    const Vec7 u = e(2), w = e(4), x = e(1);
    const Vec7 v = 0.3 * e(3) + 0.2 * e(7);
    AffineState init;
    init.w[0] = v + w;
    init.w[1] = v - w;
    init.w[2] = x;
    init.w[3] = u;
    const double y1 = 0.37, y2 = -0.54, t = 0.81;
    double prev = 0.0;
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
        const auto traj = integrate_span(init, -eps * 0.9, eps * 0.9, 1e-12);
        const Vec7 scaled = F_map(traj, eps * eps * y1, eps * y2, eps * t) / (eps * eps);
        const double resid = norm(scaled - singular_model_term(u, w, y1, y2, t));
        if (prev > 0.0) CHECK(resid < 0.6 * prev);  // at least linear decay
        prev = resid;
    }
}

TEST_CASE("singular model residual scales linearly in eps") {
    const Vec7 u = e(2), w = e(4), x = e(1);
    const Vec7 v = 0.3 * e(3) + 0.2 * e(7);
    GridSpec3 box{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, {4, 4, 5}};
    const auto report =
        singular_model_residual(u, v, w, x, {0.1, 0.05, 0.025, 0.0125}, box);
    CHECK(report.slope > 0.8);
    CHECK(report.slope < 1.2);

    // at the origin the residual vanishes identically
    AffineState init;
    init.w[0] = v + w;
    init.w[1] = v - w;
    init.w[2] = x;
    init.w[3] = u;
    const AffineTrajectory traj = integrate(init, 0.0, 0.01, 1e-11);
    CHECK(norm(F_map(traj, 0.0, 0.0, 0.0)) == 0.0);

    CHECK_THROWS_AS(singular_model_residual(e(2), v, e(3), x, {0.1}, box),
                    ModelPreconditionViolated);
}

TEST_CASE("sample_mesh shapes and residuals") {
    AffineState zero;
    const AffineTrajectory ztraj = integrate(zero, 0.0, 0.1, 1e-10);
    GridSpec3 single{{0.3, -0.2, 0.05}, {0.3, -0.2, 0.05}, {1, 1, 1}};
    const SurfaceMesh m1 = sample_mesh(ztraj, single);
    CHECK(m1.points.size() == 1);
    CHECK(norm(m1.points[0].x) == 0.0);
    CHECK(m1.points[0].res_assoc == 0.0);

    const AffineState init = random_state(0.5);
    const AffineTrajectory traj = integrate(init, 0.0, 0.5, 1e-11);
    GridSpec3 grid{{-1.0, -1.0, 0.0}, {1.0, 1.0, 0.5}, {5, 5, 4}};
    const SurfaceMesh mesh = sample_mesh(traj, grid);
    CHECK(mesh.points.size() == 5 * 5 * 4);
    for (const auto& p : mesh.points) CHECK(p.res_assoc < 1e-9);
}

TEST_CASE("w1..w3 subsystem reproduces the case (i) reference solution") {
    const double s2 = std::sqrt(2.0);
    const auto params = SLRefParams::make(SLRefParams::Case::I, 1.0, s2, s2, 0.0);
    const auto z0 = sl_reference(params, 0.0);

    // embed z_j in the standard R + C^3 splitting: z1 -> (x2,x3), etc.
    AffineState init;
    init.w[0] = Vec7{0, z0[0].real(), z0[0].imag(), 0, 0, 0, 0};
    init.w[1] = Vec7{0, 0, 0, z0[1].real(), z0[1].imag(), 0, 0};
    init.w[2] = Vec7{0, 0, 0, 0, 0, z0[2].real(), z0[2].imag()};

    const AffineTrajectory traj = integrate(init, 0.0, 1.5, 1e-11);
    for (double t = 0.0; t <= 1.5; t += 0.13) {
        const auto z = sl_reference(params, t);
        const AffineState s = traj.state(t);
        CHECK(std::abs(s.w[0][1] - z[0].real()) < 1e-6);
        CHECK(std::abs(s.w[0][2] - z[0].imag()) < 1e-6);
        CHECK(std::abs(s.w[1][3] - z[1].real()) < 1e-6);
        CHECK(std::abs(s.w[2][5] - z[2].real()) < 1e-6);
        // the subsystem never leaves the diagonal embedding
        CHECK(std::abs(s.w[0][0]) < 1e-9);
        CHECK(std::abs(s.w[0][4]) < 1e-9);
    }
}
