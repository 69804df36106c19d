#include "assoc7/verify.hpp"

#include "assoc7/g2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace assoc7 {

double calibration_defect(const std::array<Vec7, 3>& frame) {
    std::array<Vec7, 3> u;
    for (int i = 0; i < 3; ++i) {
        Vec7 v = frame[i];
        for (int j = 0; j < i; ++j) v -= dot(v, u[j]) * u[j];
        const double n = norm(v);
        if (n <= 1e-12 * (1.0 + norm(frame[i])))
            throw DegeneratePlane("calibration_defect: frame not linearly independent");
        u[i] = v / n;
    }
    return 1.0 - phi3(u[0], u[1], u[2]);
}

SlDetection sl_detect(const SurfaceMesh& mesh, double tol) {
    SlDetection det;
    if (mesh.points.empty()) {
        det.evidence = "empty mesh";
        return det;
    }
    const SplitFrame split = split_along(e(1));
    double mean_x1 = 0.0;
    for (const MeshPoint& p : mesh.points) mean_x1 += p.x[0];
    mean_x1 /= static_cast<double>(mesh.points.size());

    double scale = 0.0;
    for (const MeshPoint& p : mesh.points) scale = std::max(scale, norm(p.x));
    scale = std::max(scale, 1.0);

    for (const MeshPoint& p : mesh.points) {
        det.x1_spread = std::max(det.x1_spread, std::abs(p.x[0] - mean_x1));
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                const double na = norm(p.frame[a]), nb = norm(p.frame[b]);
                if (na * nb <= 0.0) continue;
                det.omega_residual = std::max(
                    det.omega_residual, std::abs(split.omega(p.frame[a], p.frame[b])) / (na * nb));
            }
    }
    det.is_sl = det.x1_spread <= tol * scale && det.omega_residual <= tol;
    std::ostringstream os;
    os << "x1 spread " << det.x1_spread << ", omega residual " << det.omega_residual;
    det.evidence = os.str();
    return det;
}

FitResult loglog_fit(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 2) throw FitUnstable("loglog_fit: need at least 2 samples");
    for (const auto& [r, d] : samples)
        if (!(r > 0.0) || !(d > 0.0)) throw FitUnstable("loglog_fit: nonpositive sample");

    const double n = static_cast<double>(samples.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [r, d] : samples) {
        const double x = std::log(r), y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw FitUnstable("loglog_fit: degenerate abscissae");
    FitResult fit;
    fit.n = static_cast<int>(samples.size());
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& [r, d] : samples) {
        const double resid = std::log(d) - (fit.intercept + fit.slope * std::log(r));
        ss += resid * resid;
    }
    if (samples.size() > 2)
        fit.stderr_slope = std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n));
    return fit;
}

FitResult divergence_fit(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 8) throw FitUnstable("divergence_fit: need at least 8 samples");
    double rmin = samples[0].first, rmax = samples[0].first;
    for (const auto& [r, d] : samples) {
        if (!(r > 0.0) || !(d > 0.0)) throw FitUnstable("divergence_fit: nonpositive sample");
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (rmax / rmin < 100.0 * (1.0 - 1e-9))
        throw FitUnstable("divergence_fit: samples span fewer than two decades");
    return loglog_fit(samples);
}

FitResult divergence_fit(const std::vector<std::pair<double, double>>& samples) {
    return divergence_fit(std::span<const std::pair<double, double>>(samples));
}

ResidualStats residual_stats(std::span<const double> values) {
    ResidualStats st;
    if (values.empty()) return st;
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    st.max = v.back();
    st.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    auto quant = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
    };
    st.q50 = quant(0.5);
    st.q90 = quant(0.9);
    st.q99 = quant(0.99);
    return st;
}

VerificationReport verify_mesh(const SurfaceMesh& mesh, double assoc_gate, bool run_sl_detect,
                               double sl_tol) {
    VerificationReport report;
    report.provenance = mesh.provenance;
    report.assoc_gate = assoc_gate;
    std::vector<double> assoc, calib;
    assoc.reserve(mesh.points.size());
    calib.reserve(mesh.points.size());
    for (const MeshPoint& p : mesh.points) {
        assoc.push_back(frame_assoc_residual(p.frame));
        calib.push_back(frame_calib_residual(p.frame));
    }
    report.assoc = residual_stats(assoc);
    report.calib = residual_stats(calib);
    if (run_sl_detect) report.sl = sl_detect(mesh, sl_tol);
    report.gates_passed = report.assoc.max <= assoc_gate;
    return report;
}

}  // namespace assoc7
