#pragma once

#include "assoc7/errors.hpp"
#include "assoc7/mesh.hpp"
#include "assoc7/vec7.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace assoc7 {

// Construction-independent verification: calibration defects, SL detection
// and asymptotic-order fits shared by the affine, closed-form and ruled
// generators.

// 1 - phi(u1,u2,u3) for the Gram-Schmidt orthonormalization (u1,u2,u3) of
// the frame, keeping its orientation. Zero iff the plane is associative and
// correctly oriented; lies in [0, 2]. Throws DegeneratePlane.
double calibration_defect(const std::array<Vec7, 3>& frame);

struct SlDetection {
    bool is_sl = false;
    double x1_spread = 0.0;     // max |x1 - mean(x1)| over the mesh
    double omega_residual = 0.0;  // max |omega(frame pairs)| / norms
    std::string evidence;
};

// Mesh-level test in the standard splitting along e1: the first coordinate
// must be constant and the Kaehler form must vanish on all frame pairs.
SlDetection sl_detect(const SurfaceMesh& mesh, double tol = 1e-8);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    int n = 0;
};

// Plain OLS on (log r, log d); positive inputs required.
FitResult loglog_fit(std::span<const std::pair<double, double>> samples);

// Ordinary least squares on (log r, log d). Requires at least 8 samples
// spanning at least two decades in r and positive distances; throws
// FitUnstable otherwise.
FitResult divergence_fit(std::span<const std::pair<double, double>> samples);
FitResult divergence_fit(const std::vector<std::pair<double, double>>& samples);

struct ResidualStats {
    double max = 0.0;
    double mean = 0.0;
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;
};

ResidualStats residual_stats(std::span<const double> values);

struct VerificationReport {
    ResidualStats assoc;
    ResidualStats calib;
    std::optional<SlDetection> sl;
    std::vector<FitResult> fits;
    std::string provenance;
    bool gates_passed = true;
    double assoc_gate = 1e-8;
};

// Recomputes residuals from the stored frames and aggregates them; applies
// the associator gate.
VerificationReport verify_mesh(const SurfaceMesh& mesh, double assoc_gate = 1e-8,
                               bool run_sl_detect = true, double sl_tol = 1e-8);

}  // namespace assoc7
