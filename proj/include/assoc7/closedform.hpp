#pragma once

#include "assoc7/affine.hpp"
#include "assoc7/errors.hpp"
#include "assoc7/expsum.hpp"
#include "assoc7/mesh.hpp"
#include "assoc7/vec7.hpp"
#include "assoc7/verify.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace assoc7 {

using Mat7 = Eigen::Matrix<double, 7, 7>;
using EVec7 = Eigen::Matrix<double, 7, 1>;
using cplx = std::complex<double>;

// Frequency data for the explicit solution family:
//   a1 = -alpha2 alpha3 / alpha1, a2 = alpha3 alpha1 / alpha2,
//   a3 = alpha1 alpha2 / alpha3,  lambda^2 = a2^2 - a1 a3.
struct AlphaParams {
    std::array<double, 3> alpha{};
    std::array<double, 3> a{};
    double lambda = 0.0;
};

// Throws AlphaConstraintViolated unless alpha > 0 componentwise and
// alpha1^-2 = alpha2^-2 + alpha3^-2 within 1e-9 relative.
AlphaParams derive_constants(double alpha1, double alpha2, double alpha3);

// The 7x7 coefficient matrix of the linearized system for
// (x, b1, b2, b3, conj b1, conj b2, conj b3); the ODE is v' = (i/2) T v.
Mat7 build_T(const AlphaParams& params);

// Eigenvectors of T in the sparsity normal form:
//   T a = 0, T b+- = +-lambda b+-, T c+- = +-lambda c+-, T d+- = +-3 lambda d+-,
// b+- zero in components 3 and 6, c+- in 2 and 5, d+- in 1; the swap
// (x, y, z) -> (x, z, y) of the two 3-blocks carries + vectors to their
// - partners. b+, c+, d+ are unit with positive first nonzero component.
struct EigenBasis {
    double lambda = 0.0;
    EVec7 a, bp, bm, cp, cm, dp, dm;

    // nonzero pattern entries, in the order used by the solution formulas
    std::array<double, 5> b() const { return {bp[0], bp[1], bp[3], bp[4], bp[6]}; }
    std::array<double, 5> c() const { return {cp[0], cp[2], cp[3], cp[5], cp[6]}; }
    std::array<double, 6> d() const { return {dp[1], dp[2], dp[3], dp[4], dp[5], dp[6]}; }
};

// Throws DegenerateEigenspace when the double eigenvalue plane cannot be
// split into the b/c sparsity patterns within tolerance.
EigenBasis eigensystem(const Mat7& T, const AlphaParams& params);

// Fully assembled explicit solution. The first coordinate of R^7 is the
// distinguished axis; (x2,x3), (x4,x5), (x6,x7) carry the three complex
// coordinates.
struct ClosedFormSolution {
    AlphaParams params;
    EigenBasis basis;
    cplx B, Bp, C, Cp, D, Dp;
    double z0 = 0.0;
    std::array<cplx, 3> r0{};

    std::array<ExpSum, 3> w;  // w1, w2, w3 (complex-valued)
    ExpSum x, y;              // real-valued
    std::array<ExpSum, 3> p, q, r;
    ExpSum z;

    // zero-frequency coefficient of dz/dt; measured, not assumed zero
    double z_drift() const { return z.drift().real(); }
};

// Assembles x, y, p_j, q_j from the eigenbasis and integrates z, r_j
// exactly in the ExpSum algebra (integration constants are the values at
// t = 0). Throws ResonantFrequency when some generated frequency
// a_j + m lambda vanishes (m in {0, +-1/2, +-1, +-3/2, +-2, +-3}).
ClosedFormSolution build_solution(const AlphaParams& params, cplx B, cplx Bp, cplx C, cplx Cp,
                                  cplx D, cplx Dp, double z0, const std::array<cplx, 3>& r0);

// Point of the 3-fold at parameters (y1, y2, t).
Vec7 cf_evaluate(const ClosedFormSolution& sol, double y1, double y2, double t);

// Analytic tangent frame (dF/dy1, dF/dy2, dF/dt).
std::array<Vec7, 3> cf_frame(const ClosedFormSolution& sol, double y1, double y2, double t);

// The six curves at time t in the standard splitting; embed_w is t = 0.
AffineState embed_w_at(const ClosedFormSolution& sol, double t);
AffineState embed_w(const ClosedFormSolution& sol);

SurfaceMesh cf_sample_mesh(const ClosedFormSolution& sol, const GridSpec3& grid);

// Integer frequency data for periodic solutions from a fraction p/q in
// (0, 1/2) with gcd(p, q) = 1. Throws InvalidFraction.
struct PeriodicInts {
    std::int64_t a1, a2, a3, lambda;
};
PeriodicInts periodic_params(std::int64_t p, std::int64_t q);

// AlphaParams reconstructed from the integer data (alpha1 = sqrt(a2 a3), ...).
AlphaParams params_from_fraction(std::int64_t p, std::int64_t q);

struct PeriodicityReport {
    double z_drift = 0.0;
    double half_period_residual = 0.0;  // sup |F(y1,y2,t+2pi) - F(-y1,-y2,t)| / scale
    double full_period_residual = 0.0;  // sup |F(y1,y2,t+4pi) - F(y1,y2,t)| / scale
    double period = 0.0;
};

// Grid check of the half/full period identities. Throws NoCommonPeriod when
// the frequencies are not all half-integers, DriftPresent when z or some
// r_j carries a linear term.
PeriodicityReport check_periodicity(const ClosedFormSolution& sol, int ny = 10, int nt = 16);

// The asymptotic special Lagrangian T^2 cone
//   {(0, i e^{i a1 t} x1, e^{i a2 t} x2, e^{i a3 t} x3) : sum a_j x_j^2 = 0, x1 >= 0}.
struct ConeSampler {
    AlphaParams params;

    Vec7 point(double x1, double x2, double x3, double t) const;
    // Euclidean distance from p to the cone (t scanned over a period and
    // refined; the quadratic constraint solved exactly per t).
    double distance(const Vec7& p, int t_samples = 512) const;
};

ConeSampler asymptotic_cone_sampler(const ClosedFormSolution& sol);

// (r, distance-to-cone) samples along rays y1 = rho u1, y2 = rho u2.
std::vector<std::pair<double, double>> cone_divergence_samples(const ClosedFormSolution& sol,
                                                               double rho_min, double rho_max,
                                                               int n_rho);

// Exact SL test from the solution coefficients: x and y identically zero
// and z free of oscillation and drift.
SlDetection sl_detect(const ClosedFormSolution& sol, double tol = 1e-10);

}  // namespace assoc7
