#include "assoc7/expsum.hpp"

#include <algorithm>
#include <cmath>

namespace assoc7 {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

ExpSum ExpSum::harmonic(std::complex<double> c, double omega) {
    ExpSum f;
    f.add_term(c, omega);
    return f;
}

void ExpSum::add_term(std::complex<double> c, double omega) {
    if (std::abs(omega) <= kFreqTol) {
        offset_ += c;
        return;
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), omega - kFreqTol,
                               [](const Term& t, double w) { return t.omega < w; });
    if (it != terms_.end() && std::abs(it->omega - omega) <= kFreqTol) {
        it->c += c;
        return;
    }
    terms_.insert(it, Term{c, omega});
}

std::complex<double> ExpSum::eval(double t) const {
    std::complex<double> v = offset_ + drift_ * t;
    for (const Term& term : terms_) v += term.c * std::exp(kI * (term.omega * t));
    return v;
}

std::complex<double> ExpSum::eval_derivative(double t) const {
    std::complex<double> v = drift_;
    for (const Term& term : terms_)
        v += term.c * kI * term.omega * std::exp(kI * (term.omega * t));
    return v;
}

ExpSum ExpSum::derivative() const {
    ExpSum out;
    for (const Term& t : terms_) out.add_term(t.c * kI * t.omega, t.omega);
    out.offset_ = drift_;
    return out;
}

ExpSum ExpSum::antiderivative(std::complex<double> value_at_0) const {
    const double significant = 1e-13 * std::max(1.0, max_coeff());
    ExpSum out;
    for (const Term& t : terms_) {
        if (std::abs(t.omega) <= kFreqTol) {
            if (std::abs(t.c) > significant)
                throw ResonantFrequency("ExpSum::antiderivative: zero-frequency term");
            continue;
        }
        out.add_term(t.c / (kI * t.omega), t.omega);
    }
    if (std::abs(drift_) > significant)
        throw ResonantFrequency("ExpSum::antiderivative: operand already has a drift");
    out.drift_ = offset_;
    out.offset_ = value_at_0 - out.eval(0.0);
    return out;
}

ExpSum ExpSum::conj() const {
    ExpSum out;
    for (const Term& t : terms_) out.add_term(std::conj(t.c), -t.omega);
    out.drift_ = std::conj(drift_);
    out.offset_ = std::conj(offset_);
    return out;
}

ExpSum ExpSum::imag_part() const {
    ExpSum diff = *this - conj();
    return diff * (1.0 / (2.0 * kI));
}

ExpSum ExpSum::real_part() const {
    ExpSum sum = *this + conj();
    return sum * std::complex<double>(0.5, 0.0);
}

ExpSum ExpSum::shifted(double dw) const {
    ExpSum out;
    if (std::abs(drift_) > 0.0 || std::abs(offset_) > 0.0) {
        // affine part times e^{i dw t} is not an ExpSum unless dw == 0
        if (std::abs(dw) > kFreqTol && std::abs(drift_) > 1e-300)
            throw Error("ExpSum::shifted: drift cannot be frequency-shifted");
        out.add_term(offset_, dw);
        out.drift_ = drift_;
    }
    for (const Term& t : terms_) out.add_term(t.c, t.omega + dw);
    return out;
}

ExpSum ExpSum::translated(double t0) const {
    if (std::abs(drift_) > 1e-300) throw Error("ExpSum::translated: requires zero drift");
    ExpSum out;
    for (const Term& t : terms_) out.add_term(t.c * std::exp(kI * (t.omega * t0)), t.omega);
    out.offset_ = offset_;
    return out;
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
    for (const Term& t : o.terms_) add_term(t.c, t.omega);
    drift_ += o.drift_;
    offset_ += o.offset_;
    return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o) {
    for (const Term& t : o.terms_) add_term(-t.c, t.omega);
    drift_ -= o.drift_;
    offset_ -= o.offset_;
    return *this;
}

ExpSum& ExpSum::operator*=(std::complex<double> s) {
    for (Term& t : terms_) t.c *= s;
    drift_ *= s;
    offset_ *= s;
    return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    if (std::abs(a.drift_) > 1e-300 || std::abs(b.drift_) > 1e-300)
        throw Error("ExpSum product requires drift-free operands");
    ExpSum out;
    out.offset_ = a.offset_ * b.offset_;
    for (const ExpSum::Term& t : a.terms_) out.add_term(t.c * b.offset_, t.omega);
    for (const ExpSum::Term& t : b.terms_) out.add_term(t.c * a.offset_, t.omega);
    for (const ExpSum::Term& ta : a.terms_)
        for (const ExpSum::Term& tb : b.terms_) out.add_term(ta.c * tb.c, ta.omega + tb.omega);
    return out;
}

double ExpSum::max_coeff() const {
    double m = std::max(std::abs(drift_), std::abs(offset_));
    for (const Term& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
}

double ExpSum::max_oscillating_coeff() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
}

bool ExpSum::commensurate_half_integer(double tol) const {
    for (const Term& t : terms_) {
        const double twice = 2.0 * t.omega;
        if (std::abs(twice - std::round(twice)) > tol) return false;
    }
    return true;
}

}  // namespace assoc7
