#pragma once

#include "assoc7/errors.hpp"

#include <functional>
#include <span>
#include <vector>

namespace assoc7 {

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) with dense output.
//
// Dense output is a two-point quintic Hermite built from the stored value,
// first derivative and (when the caller can supply it) second derivative at
// each accepted step; without second derivatives it degrades to cubic.

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Second time derivative of the solution at (t, y, dydt); optional.
using OdeRhs2 =
    std::function<void(double t, std::span<const double> y, std::span<const double> dydt,
                       std::span<double> d2ydt2)>;

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 0.0;  // 0 -> heuristic
    long max_steps = 2000000;
};

struct OdeNode {
    double t;
    std::vector<double> y;
    std::vector<double> dy;
    std::vector<double> d2y;  // empty when no second-derivative callback
};

class DenseTrajectory {
  public:
    DenseTrajectory() = default;
    explicit DenseTrajectory(std::vector<OdeNode> nodes);

    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    bool contains(double t) const { return t >= t_min_ - 1e-12 && t <= t_max_ + 1e-12; }

    // Hermite evaluation; throws OutOfSpan outside [t_min, t_max].
    void eval(double t, std::span<double> out) const;
    std::vector<double> eval(double t) const;

    const std::vector<OdeNode>& nodes() const { return nodes_; }

    // Merge with another trajectory covering an adjacent span.
    static DenseTrajectory stitch(DenseTrajectory backward, DenseTrajectory forward);

  private:
    std::vector<OdeNode> nodes_;  // sorted by increasing t
    double t_min_ = 0.0, t_max_ = 0.0;
};

// Integrate from t0 to t1 (either direction). y0 is the state at t0.
// Throws StepSizeUnderflow when step control fails.
DenseTrajectory integrate_ode(const OdeRhs& rhs, const OdeRhs2& rhs2, std::vector<double> y0,
                              double t0, double t1, const OdeOptions& opts = {});

}  // namespace assoc7
