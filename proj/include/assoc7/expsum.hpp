#pragma once

#include "assoc7/errors.hpp"

#include <complex>
#include <vector>

namespace assoc7 {

// Finite sum of complex exponentials plus an affine part in t:
//
//   f(t) = sum_k c_k e^{i w_k t} + drift * t + offset,   w_k != 0 unique.
//
// Closed under +, -, scalar multiple, conjugation, derivative, and (for
// drift-free operands) products; zero-frequency products fold into offset.
// Exact carrier for the closed-form solution components.
class ExpSum {
  public:
    struct Term {
        std::complex<double> c;
        double omega;
    };

    static constexpr double kFreqTol = 1e-12;

    ExpSum() = default;
    explicit ExpSum(std::complex<double> constant) : offset_(constant) {}

    static ExpSum harmonic(std::complex<double> c, double omega);

    std::complex<double> eval(double t) const;
    std::complex<double> eval_derivative(double t) const;

    const std::vector<Term>& terms() const { return terms_; }
    std::complex<double> drift() const { return drift_; }
    std::complex<double> offset() const { return offset_; }
    void set_offset(std::complex<double> v) { offset_ = v; }
    void set_drift(std::complex<double> v) { drift_ = v; }

    ExpSum derivative() const;

    // Exact termwise antiderivative with value `value_at_0` at t = 0:
    // nonzero frequencies map to c/(i w) e^{i w t}, the offset becomes the
    // drift. Throws ResonantFrequency if a term's frequency is below
    // kFreqTol in magnitude while its coefficient is significant.
    ExpSum antiderivative(std::complex<double> value_at_0) const;

    ExpSum conj() const;
    ExpSum imag_part() const;  // (f - conj f) / 2i
    ExpSum real_part() const;

    // Frequency translation: multiply by e^{i dw t}.
    ExpSum shifted(double dw) const;
    // Time translation: f(t + t0) as an ExpSum; requires zero drift.
    ExpSum translated(double t0) const;

    ExpSum& operator+=(const ExpSum& o);
    ExpSum& operator-=(const ExpSum& o);
    ExpSum& operator*=(std::complex<double> s);
    friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
    friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
    friend ExpSum operator*(ExpSum a, std::complex<double> s) { return a *= s; }
    friend ExpSum operator*(std::complex<double> s, ExpSum a) { return a *= s; }

    // Product; both operands must be drift-free.
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b);

    double max_coeff() const;           // largest coefficient magnitude incl. drift/offset
    double max_oscillating_coeff() const;  // largest |c_k| over nonzero frequencies
    bool commensurate_half_integer(double tol = 1e-9) const;  // all w_k in Z/2

  private:
    void add_term(std::complex<double> c, double omega);

    std::vector<Term> terms_;  // sorted by omega; |omega| > kFreqTol
    std::complex<double> drift_{0.0, 0.0};
    std::complex<double> offset_{0.0, 0.0};
};

}  // namespace assoc7
