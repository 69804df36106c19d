#include "assoc7/affine.hpp"

#include "assoc7/g2.hpp"
#include "assoc7/verify.hpp"

#include <cmath>
#include <cstring>

namespace assoc7 {

namespace {

void pack(const AffineState& s, std::span<double> out) {
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 7; ++i) out[j * 7 + i] = s.w[j][i];
}

AffineState unpack(std::span<const double> in) {
    AffineState s;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 7; ++i) s.w[j][i] = in[j * 7 + i];
    return s;
}

}  // namespace

bool AffineState::immersed_at_origin(double tol) const {
    const Vec7& a = w[3];
    const Vec7& b = w[4];
    const double gram = norm_sq(a) * norm_sq(b) - dot(a, b) * dot(a, b);
    const double scale = norm_sq(a) * norm_sq(b);
    return gram > tol * std::max(scale, 1e-300);
}

AffineState affine_rhs(const AffineState& s) {
    const Vec7 &w1 = s.w[0], &w2 = s.w[1], &w3 = s.w[2], &w4 = s.w[3], &w5 = s.w[4];
    AffineState d;
    d.w[0] = 2.0 * cross(w2, w3);
    d.w[1] = 2.0 * cross(w1, w3);
    d.w[2] = -2.0 * cross(w1, w2);
    d.w[3] = cross(w1, w5) + cross(w2, w5) - cross(w3, w4);
    d.w[4] = -cross(w1, w4) + cross(w2, w4) + cross(w3, w5);
    d.w[5] = cross(w4, w5);
    return d;
}

AffineState affine_rhs_derivative(const AffineState& s, const AffineState& ds) {
    const Vec7 &w1 = s.w[0], &w2 = s.w[1], &w3 = s.w[2], &w4 = s.w[3], &w5 = s.w[4];
    const Vec7 &d1 = ds.w[0], &d2 = ds.w[1], &d3 = ds.w[2], &d4 = ds.w[3], &d5 = ds.w[4];
    AffineState d;
    d.w[0] = 2.0 * (cross(d2, w3) + cross(w2, d3));
    d.w[1] = 2.0 * (cross(d1, w3) + cross(w1, d3));
    d.w[2] = -2.0 * (cross(d1, w2) + cross(w1, d2));
    d.w[3] = cross(d1, w5) + cross(w1, d5) + cross(d2, w5) + cross(w2, d5) - cross(d3, w4) -
             cross(w3, d4);
    d.w[4] = -cross(d1, w4) - cross(w1, d4) + cross(d2, w4) + cross(w2, d4) + cross(d3, w5) +
             cross(w3, d5);
    d.w[5] = cross(d4, w5) + cross(w4, d5);
    return d;
}

AffineState AffineTrajectory::state(double t) const {
    std::array<double, 42> buf;
    traj_.eval(t, buf);
    return unpack(buf);
}

namespace {

const OdeRhs kAffineRhs = [](double, std::span<const double> y, std::span<double> dy) {
    pack(affine_rhs(unpack(y)), dy);
};

const OdeRhs2 kAffineRhs2 = [](double, std::span<const double> y, std::span<const double> dy,
                               std::span<double> d2y) {
    pack(affine_rhs_derivative(unpack(y), unpack(dy)), d2y);
};

}  // namespace

AffineTrajectory integrate(const AffineState& init, double t0, double t1, double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-3))
        throw Error("integrate: tol outside [1e-14, 1e-3]");
    std::vector<double> y0(42);
    pack(init, y0);
    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = tol;
    return AffineTrajectory(integrate_ode(kAffineRhs, kAffineRhs2, std::move(y0), t0, t1, opts));
}

AffineTrajectory integrate_span(const AffineState& init_at_0, double tmin, double tmax,
                                double tol) {
    if (!(tmin <= 0.0 && tmax >= 0.0 && tmin < tmax))
        throw Error("integrate_span: span must contain 0");
    if (tmin == 0.0) return integrate(init_at_0, 0.0, tmax, tol);
    if (tmax == 0.0) return integrate(init_at_0, 0.0, tmin, tol);
    std::vector<double> y0(42);
    pack(init_at_0, y0);
    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = tol;
    auto back = integrate_ode(kAffineRhs, kAffineRhs2, y0, 0.0, tmin, opts);
    auto fwd = integrate_ode(kAffineRhs, kAffineRhs2, y0, 0.0, tmax, opts);
    return AffineTrajectory(DenseTrajectory::stitch(std::move(back), std::move(fwd)));
}

Vec7 F_map(const AffineState& s, double y1, double y2) {
    return 0.5 * (y1 * y1 + y2 * y2) * s.w[0] + 0.5 * (y1 * y1 - y2 * y2) * s.w[1] +
           y1 * y2 * s.w[2] + y1 * s.w[3] + y2 * s.w[4] + s.w[5];
}

Vec7 F_map(const AffineTrajectory& traj, double y1, double y2, double t) {
    return F_map(traj.state(t), y1, y2);
}

std::array<Vec7, 3> F_frame(const AffineState& s, double y1, double y2) {
    const AffineState d = affine_rhs(s);
    const Vec7 fy1 = y1 * (s.w[0] + s.w[1]) + y2 * s.w[2] + s.w[3];
    const Vec7 fy2 = y2 * (s.w[0] - s.w[1]) + y1 * s.w[2] + s.w[4];
    // dF/dt is the same quadratic combination applied to the derivatives
    return {fy1, fy2, F_map(d, y1, y2)};
}

std::array<Vec7, 3> F_frame(const AffineTrajectory& traj, double y1, double y2, double t) {
    return F_frame(traj.state(t), y1, y2);
}

double rank_defect_measure(const AffineTrajectory& traj, double y1, double y2, double t) {
    const auto f = F_frame(traj, y1, y2, t);
    // singular values of the 7x2 matrix [F_y1 F_y2] via its 2x2 Gram matrix
    const double a = norm_sq(f[0]), b = dot(f[0], f[1]), c = norm_sq(f[1]);
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    const double lmax = 0.5 * (tr + disc), lmin = std::max(0.0, 0.5 * (tr - disc));
    if (lmax <= 0.0) return 0.0;
    return std::sqrt(lmin / lmax);
}

std::vector<SingularPoint> detect_singularities(const AffineTrajectory& traj,
                                                const GridSpec3& grid, double tol) {
    std::vector<SingularPoint> out;
    for (int i = 0; i < grid.n[0]; ++i)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int k = 0; k < grid.n[2]; ++k) {
                const double y1 = grid.coord(0, i), y2 = grid.coord(1, j),
                             t = grid.coord(2, k);
                const double ratio = rank_defect_measure(traj, y1, y2, t);
                if (ratio <= tol) out.push_back({y1, y2, t, ratio});
            }
    return out;
}

Vec7 singular_model_term(const Vec7& u, const Vec7& w, double y1, double y2, double t) {
    // The t^2 terms enter through w6''(0) = 2 u X (u X w) = 2(g(u,w)u - |u|^2 w).
    return (y1 + dot(u, w) * t * t) * u + (y2 * y2 - norm_sq(u) * t * t) * w +
           2.0 * y2 * t * cross(u, w);
}

SingularModelReport singular_model_residual(const Vec7& u, const Vec7& v, const Vec7& w,
                                            const Vec7& x, const std::vector<double>& eps_list,
                                            const GridSpec3& samples, double tol) {
    const SplitFrame frame = split_along(e(1));
    const double om = frame.omega(u, w);
    if (std::abs(om) > tol * std::max(1.0, norm(u) * norm(w)))
        throw ModelPreconditionViolated("singular_model_residual: omega(u, w) != 0");

    AffineState init;
    init.w[0] = v + w;
    init.w[1] = v - w;
    init.w[2] = x;
    init.w[3] = u;

    SingularModelReport report;
    for (double eps : eps_list) {
        const double tmax =
            std::max(std::abs(samples.lo[2]), std::abs(samples.hi[2])) * eps * 1.05 + 1e-9;
        const AffineTrajectory traj = integrate_span(init, -tmax, tmax, 1e-12);
        double worst = 0.0;
        for (int i = 0; i < samples.n[0]; ++i)
            for (int j = 0; j < samples.n[1]; ++j)
                for (int k = 0; k < samples.n[2]; ++k) {
                    const double y1 = samples.coord(0, i), y2 = samples.coord(1, j),
                                 t = samples.coord(2, k);
                    const Vec7 Fv = F_map(traj, eps * eps * y1, eps * y2, eps * t);
                    const Vec7 model = singular_model_term(u, w, y1, y2, t);
                    worst = std::max(worst, norm(Fv / (eps * eps) - model));
                }
        report.samples.push_back({eps, worst});
    }
    const FitResult fit = loglog_fit(report.samples);
    report.slope = fit.slope;
    report.stderr_slope = fit.stderr_slope;
    return report;
}

SurfaceMesh sample_mesh(const AffineTrajectory& traj, const GridSpec3& grid) {
    SurfaceMesh mesh;
    mesh.param_names = {"y1", "y2", "t"};
    mesh.counts = {grid.n[0], grid.n[1], grid.n[2]};
    mesh.points.reserve(static_cast<std::size_t>(grid.n[0]) * grid.n[1] * grid.n[2]);
    for (int i = 0; i < grid.n[0]; ++i)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int k = 0; k < grid.n[2]; ++k) {
                MeshPoint p;
                p.param = {grid.coord(0, i), grid.coord(1, j), grid.coord(2, k)};
                const AffineState s = traj.state(p.param[2]);
                p.x = F_map(s, p.param[0], p.param[1]);
                p.frame = F_frame(s, p.param[0], p.param[1]);
                mesh.points.push_back(p);
            }
    attach_residuals(mesh);
    return mesh;
}

}  // namespace assoc7
