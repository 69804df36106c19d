#include "assoc7/mesh.hpp"

#include "assoc7/g2.hpp"

#include <cmath>

namespace assoc7 {

double frame_assoc_residual(const std::array<Vec7, 3>& f) {
    const double scale = norm(f[0]) * norm(f[1]) * norm(f[2]);
    const double a = norm(associator(f[0], f[1], f[2]));
    if (scale <= 0.0) return 0.0;  // collapsed frame carries no defect
    return a / scale;
}

double frame_calib_residual(const std::array<Vec7, 3>& f) {
    // Gram-Schmidt with the frame's orientation; directions that collapse
    // contribute zero to the calibrated volume.
    std::array<Vec7, 3> u{};
    int kept = 0;
    for (int i = 0; i < 3; ++i) {
        Vec7 v = f[i];
        for (int j = 0; j < kept; ++j) v -= dot(v, u[j]) * u[j];
        const double n = norm(v);
        if (n > 1e-13 * (1.0 + norm(f[i]))) u[kept++] = v / n;
    }
    if (kept < 3) return 1.0;
    return 1.0 - phi3(u[0], u[1], u[2]);
}

void attach_residuals(SurfaceMesh& mesh) {
    for (MeshPoint& p : mesh.points) {
        p.res_assoc = frame_assoc_residual(p.frame);
        p.res_calib = frame_calib_residual(p.frame);
    }
}

}  // namespace assoc7
