#pragma once

#include "assoc7/mesh.hpp"
#include "assoc7/ode.hpp"
#include "assoc7/vec7.hpp"

#include <array>
#include <vector>

namespace assoc7 {

// The finite-dimensional evolution system for six curves w1..w6 : R -> R^7
//
//   w1' = 2 w2 X w3            w4' = w1 X w5 + w2 X w5 - w3 X w4
//   w2' = 2 w1 X w3            w5' = -w1 X w4 + w2 X w4 + w3 X w5
//   w3' = -2 w1 X w2           w6' = w4 X w5
//
// together with the quadratic surface map
//
//   F(y1,y2,t) = (y1^2+y2^2)/2 w1 + (y1^2-y2^2)/2 w2 + y1 y2 w3
//              + y1 w4 + y2 w5 + w6.

struct AffineState {
    std::array<Vec7, 6> w{};  // w[0] = w1, ..., w[5] = w6

    // F is an immersion at the origin iff w4(0), w5(0) are independent.
    bool immersed_at_origin(double tol = 1e-10) const;
};

AffineState affine_rhs(const AffineState& s);

// Directional derivative of the right-hand side at s applied to ds; the RHS
// is bilinear in the state so this is exact.
AffineState affine_rhs_derivative(const AffineState& s, const AffineState& ds);

class AffineTrajectory {
  public:
    AffineTrajectory() = default;
    explicit AffineTrajectory(DenseTrajectory traj) : traj_(std::move(traj)) {}

    double t_min() const { return traj_.t_min(); }
    double t_max() const { return traj_.t_max(); }

    AffineState state(double t) const;  // throws OutOfSpan
    const DenseTrajectory& dense() const { return traj_; }

  private:
    DenseTrajectory traj_;
};

// Integrate with the state anchored at t0; t1 may lie on either side.
// tol must lie in [1e-14, 1e-3]. Throws StepSizeUnderflow on failure.
AffineTrajectory integrate(const AffineState& init, double t0, double t1, double tol);

// Convenience: state given at t = 0, span [tmin, tmax] containing 0.
AffineTrajectory integrate_span(const AffineState& init_at_0, double tmin, double tmax,
                                double tol);

Vec7 F_map(const AffineTrajectory& traj, double y1, double y2, double t);
Vec7 F_map(const AffineState& s, double y1, double y2);

// (dF/dy1, dF/dy2, dF/dt); the time derivative is assembled from affine_rhs.
std::array<Vec7, 3> F_frame(const AffineTrajectory& traj, double y1, double y2, double t);
std::array<Vec7, 3> F_frame(const AffineState& s, double y1, double y2);

struct GridSpec3 {
    double lo[3];
    double hi[3];
    int n[3];

    double coord(int axis, int i) const {
        return n[axis] <= 1 ? lo[axis]
                            : lo[axis] + (hi[axis] - lo[axis]) * i / double(n[axis] - 1);
    }
};

struct SingularPoint {
    double y1, y2, t;
    double sigma_ratio;  // smaller/larger singular value of [F_y1 F_y2]
};

// Flags grid points where the 7x2 differential loses rank:
// sigma_min <= tol * sigma_max.
std::vector<SingularPoint> detect_singularities(const AffineTrajectory& traj,
                                                const GridSpec3& grid, double tol = 1e-6);

// Ratio of singular values of [F_y1 F_y2] at a single point.
double rank_defect_measure(const AffineTrajectory& traj, double y1, double y2, double t);

// The branched double-cover model near a singular point with initial data
//   w1 = v + w, w2 = v - w, w3 = x, w4 = u, w5 = w6 = 0,  omega(u, w) = 0:
// the leading term of F(eps^2 y1, eps y2, eps t) / eps^2.
Vec7 singular_model_term(const Vec7& u, const Vec7& w, double y1, double y2, double t);

struct SingularModelReport {
    std::vector<std::pair<double, double>> samples;  // (eps, max residual)
    double slope = 0.0;                              // log-log fit
    double stderr_slope = 0.0;
};

// Compares the integrated F against the model term over a sample box for a
// list of scales. Throws ModelPreconditionViolated when omega(u, w) != 0.
SingularModelReport singular_model_residual(const Vec7& u, const Vec7& v, const Vec7& w,
                                            const Vec7& x, const std::vector<double>& eps_list,
                                            const GridSpec3& samples, double tol = 1e-10);

// Samples F with frames and residuals over a parameter box.
SurfaceMesh sample_mesh(const AffineTrajectory& traj, const GridSpec3& grid);

}  // namespace assoc7
