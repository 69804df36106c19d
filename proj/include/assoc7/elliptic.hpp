#pragma once

#include "assoc7/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <memory>

namespace assoc7 {

// Jacobi elliptic functions sn, cn, dn with modulus k, and the reference
// solutions of the coupled z1,z2,z3 system used as integrator oracles.

struct JacobiTriple {
    double sn, cn, dn;
    double u, k;
};

// Descending Landen / AGM evaluation; target accuracy ~1e-12.
// Throws ModulusOutOfRange for k outside [0, 1].
JacobiTriple jacobi(double u, double k);

// Quarter period K(k) via the AGM; +infinity at k = 1.
double quarter_period(double k);

// Parameters for the four solution families of the z-system
//   dz1/dt = 2 conj(z2 z3), dz2/dt = -2 conj(z3 z1), dz3/dt = -2 conj(z1 z2)
// under alpha1^-2 = alpha2^-2 + alpha3^-2, classified by the conserved
// quantity A = Q(v)^(1/2) sin(theta).
struct SLRefParams {
    enum class Case { I, II, III, IV };

    Case case_tag;
    std::array<double, 3> alpha;
    double A = 0.0;
    // Initial phase of z1 in case (iii). The hypotheses theta2(0)=theta3(0)=0
    // together with Q(v(0)) = A^2 force sin(theta1(0)) = 1, so only pi/2 (mod
    // 2 pi) yields a solution of the coupled system; other values are
    // accepted but break the defining equations.
    double theta1_0 = M_PI_2;

    // derived, per case
    std::array<double, 3> a{};      // case (iv) frequencies
    double sigma = 0.0, tau = 0.0;  // cases (ii)/(iii) elliptic arguments
    std::array<double, 3> gamma{};  // case (iii) roots, gamma1 <= 0 <= gamma2 <= gamma3

    // Validates the hypotheses and computes the derived quantities.
    // Throws InvalidCaseParams.
    static SLRefParams make(Case c, double alpha1, double alpha2, double alpha3, double A,
                            double theta1_0 = M_PI_2);

    double Q(double v) const {
        return (alpha[0] * alpha[0] + v) * (alpha[1] * alpha[1] - v) *
               (alpha[2] * alpha[2] - v);
    }

  private:
    struct ThetaCache;
    std::shared_ptr<ThetaCache> cache_;
    std::array<double, 3> theta_values(double t) const;  // case (iii) angle integrals
    friend std::array<std::complex<double>, 3> sl_reference(const SLRefParams&, double t);
};

// Evaluates (z1, z2, z3) at time t for the given family.
std::array<std::complex<double>, 3> sl_reference(const SLRefParams& params, double t);

}  // namespace assoc7
