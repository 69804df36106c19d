#include "assoc7/ode.hpp"

#include <algorithm>
#include <cmath>

namespace assoc7 {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

DenseTrajectory::DenseTrajectory(std::vector<OdeNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.front().t > nodes_.back().t) std::reverse(nodes_.begin(), nodes_.end());
    t_min_ = nodes_.front().t;
    t_max_ = nodes_.back().t;
}

void DenseTrajectory::eval(double t, std::span<double> out) const {
    if (!contains(t)) throw OutOfSpan("DenseTrajectory::eval: t outside trajectory span");
    t = std::clamp(t, t_min_, t_max_);
    if (nodes_.size() == 1) {
        std::copy(nodes_[0].y.begin(), nodes_[0].y.end(), out.begin());
        return;
    }
    // locate the step containing t
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                               [](const OdeNode& n, double tv) { return n.t < tv; });
    std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
    if (hi == 0) hi = 1;
    if (hi >= nodes_.size()) hi = nodes_.size() - 1;
    const OdeNode& n0 = nodes_[hi - 1];
    const OdeNode& n1 = nodes_[hi];
    const double h = n1.t - n0.t;
    const double u = (t - n0.t) / h;
    const std::size_t dim = n0.y.size();
    if (!n0.d2y.empty() && !n1.d2y.empty()) {
        const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
        const double H0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
        const double H1 = u - 6 * u3 + 8 * u4 - 3 * u5;
        const double H2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
        const double H3 = 10 * u3 - 15 * u4 + 6 * u5;
        const double H4 = -4 * u3 + 7 * u4 - 3 * u5;
        const double H5 = 0.5 * u3 - u4 + 0.5 * u5;
        for (std::size_t i = 0; i < dim; ++i)
            out[i] = H0 * n0.y[i] + H1 * h * n0.dy[i] + H2 * h * h * n0.d2y[i] + H3 * n1.y[i] +
                     H4 * h * n1.dy[i] + H5 * h * h * n1.d2y[i];
    } else {
        const double u2 = u * u, u3 = u2 * u;
        const double H0 = 1 - 3 * u2 + 2 * u3;
        const double H1 = u - 2 * u2 + u3;
        const double H3 = 3 * u2 - 2 * u3;
        const double H4 = -u2 + u3;
        for (std::size_t i = 0; i < dim; ++i)
            out[i] = H0 * n0.y[i] + H1 * h * n0.dy[i] + H3 * n1.y[i] + H4 * h * n1.dy[i];
    }
}

std::vector<double> DenseTrajectory::eval(double t) const {
    std::vector<double> out(nodes_.front().y.size());
    eval(t, out);
    return out;
}

DenseTrajectory DenseTrajectory::stitch(DenseTrajectory backward, DenseTrajectory forward) {
    // nodes are stored ascending; the two halves share the anchor node
    std::vector<OdeNode> nodes = std::move(backward.nodes_);
    const auto& fwd = forward.nodes_;
    nodes.insert(nodes.end(), fwd.begin() + 1, fwd.end());
    return DenseTrajectory(std::move(nodes));
}

DenseTrajectory integrate_ode(const OdeRhs& rhs, const OdeRhs2& rhs2, std::vector<double> y0,
                              double t0, double t1, const OdeOptions& opts) {
    const std::size_t dim = y0.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
    std::vector<double> ytmp(dim), ynew(dim);

    std::vector<OdeNode> nodes;
    auto push_node = [&](double t, const std::vector<double>& y, const std::vector<double>& dy) {
        OdeNode n{t, y, dy, {}};
        if (rhs2) {
            n.d2y.resize(dim);
            rhs2(t, y, dy, n.d2y);
        }
        nodes.push_back(std::move(n));
    };

    rhs(t0, y0, k1);
    push_node(t0, y0, k1);
    if (span == 0.0) return DenseTrajectory(std::move(nodes));

    double h = opts.initial_step > 0 ? opts.initial_step : span / 100.0;
    h = std::min(h, span);
    double t = t0;
    std::vector<double> y = y0;

    for (long step = 0; step < opts.max_steps; ++step) {
        if (dir * (t - t1) >= 0) break;
        h = std::min(h, std::abs(t1 - t));
        if (h < 1e-14 * std::max({std::abs(t0), std::abs(t1), 1.0}))
            throw StepSizeUnderflow("integrate_ode: step size underflow", t);
        const double hs = dir * h;

        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
        rhs(t + c2 * hs, ytmp, k2);
        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * hs, ytmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * hs, ytmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * hs, ytmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] =
                y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + hs, ytmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] =
                y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + hs, ynew, k7);  // FSAL

        double err = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double y4 = y[i] + hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                           e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double d = (ynew[i] - y4) / sc;
            err += d * d;
        }
        err = std::sqrt(err / static_cast<double>(dim));

        if (err <= 1.0) {
            t += hs;
            y = ynew;
            k1 = k7;
            push_node(t, y, k1);
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= fac;
    }

    if (dir * (nodes.back().t - t1) < 0)
        throw StepSizeUnderflow("integrate_ode: max step count exhausted", nodes.back().t);
    return DenseTrajectory(std::move(nodes));
}

}  // namespace assoc7
