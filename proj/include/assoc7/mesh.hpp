#pragma once

#include "assoc7/vec7.hpp"

#include <array>
#include <string>
#include <vector>

namespace assoc7 {

// One sample of a constructed 3-fold: parameter triple, ambient point, the
// tangent frame at the point, and attached residual diagnostics.
struct MeshPoint {
    std::array<double, 3> param{};  // (y1, y2, t) or (r, s, t)
    Vec7 x;
    std::array<Vec7, 3> frame;
    double res_assoc = 0.0;  // |[f1,f2,f3]| / (|f1||f2||f3|)
    double res_calib = 0.0;  // 1 - phi(orthonormalized frame)
};

struct SurfaceMesh {
    std::array<std::string, 3> param_names{"y1", "y2", "t"};
    std::array<int, 3> counts{0, 0, 0};
    std::vector<MeshPoint> points;  // param-major order: p0 outermost, p2 innermost
    std::string provenance;         // generator + parameter summary
};

// Fills res_assoc / res_calib from the stored frames.
void attach_residuals(SurfaceMesh& mesh);

// Residuals for one frame. A degenerate (rank < 3) frame reports the
// calibration value of its nonzero Gram-Schmidt directions only.
double frame_assoc_residual(const std::array<Vec7, 3>& frame);
double frame_calib_residual(const std::array<Vec7, 3>& frame);

}  // namespace assoc7
