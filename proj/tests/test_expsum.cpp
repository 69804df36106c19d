#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "assoc7/expsum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace assoc7;
using cplx = std::complex<double>;

namespace {

std::mt19937_64 rng(424242);

ExpSum random_sum(int nterms, bool with_affine) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    ExpSum f;
    for (int i = 0; i < nterms; ++i) f += ExpSum::harmonic(cplx(u(rng), u(rng)), u(rng) * 3.0);
    if (with_affine) {
        f.set_offset(cplx(u(rng), u(rng)));
        f.set_drift(cplx(u(rng), 0.0));
    }
    return f;
}

}  // namespace

TEST_CASE("evaluation and merging of close frequencies") {
    ExpSum f = ExpSum::harmonic(cplx(1.0, 0.0), 2.0);
    f += ExpSum::harmonic(cplx(0.5, 0.0), 2.0 + 1e-14);  // merges
    CHECK(f.terms().size() == 1);
    CHECK(std::abs(f.eval(0.3) - cplx(1.5, 0) * std::exp(cplx(0, 0.6))) < 1e-14);

    ExpSum zero = ExpSum::harmonic(cplx(1.0, 0.0), 0.0);
    CHECK(zero.terms().empty());  // zero frequency folds into the offset
    CHECK(std::abs(zero.offset() - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("derivative then antiderivative is the identity on drift-free sums") {
    for (int n = 0; n < 50; ++n) {
        ExpSum f = random_sum(6, false);
        f.set_offset(cplx(0.4, -0.2));
        const ExpSum g = f.derivative().antiderivative(f.eval(0.0));
        for (double t : {-1.7, -0.3, 0.0, 0.9, 2.4}) {
            CHECK(std::abs(f.eval(t) - g.eval(t)) < 1e-13 * (1.0 + f.max_coeff()));
        }
        // coefficient-wise agreement
        REQUIRE(f.terms().size() == g.terms().size());
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
            CHECK(std::abs(f.terms()[i].c - g.terms()[i].c) < 1e-14);
            CHECK(f.terms()[i].omega == doctest::Approx(g.terms()[i].omega));
        }
    }
}

TEST_CASE("antiderivative turns offsets into drift and rejects resonance") {
    ExpSum f = ExpSum::harmonic(cplx(2.0, 0.0), 1.5);
    f.set_offset(cplx(0.7, 0.0));
    const ExpSum F = f.antiderivative(cplx(0.0, 0.0));
    CHECK(std::abs(F.drift() - cplx(0.7, 0.0)) < 1e-15);
    CHECK(std::abs(F.eval(0.0)) < 1e-15);
    // numeric check against quadrature of f
    const int steps = 2000;
    cplx acc = 0.0;
    const double T = 1.3, h = T / steps;
    for (int i = 0; i < steps; ++i)
        acc += h * 0.5 * (f.eval(i * h) + f.eval((i + 1) * h));
    CHECK(std::abs(F.eval(T) - acc) < 1e-6);

    ExpSum drifted;
    drifted.set_drift(cplx(1.0, 0.0));
    CHECK_THROWS_AS(drifted.antiderivative(cplx(0, 0)), ResonantFrequency);
}

TEST_CASE("products agree with pointwise multiplication") {
    for (int n = 0; n < 30; ++n) {
        const ExpSum a = random_sum(4, false);
        const ExpSum b = random_sum(3, false);
        const ExpSum p = a * b;
        for (double t : {-0.8, 0.1, 1.9}) {
            CHECK(std::abs(p.eval(t) - a.eval(t) * b.eval(t)) <
                  1e-12 * (1 + a.max_coeff() * b.max_coeff()));
        }
    }
    ExpSum drifted;
    drifted.set_drift(cplx(1.0, 0.0));
    CHECK_THROWS_AS(drifted * drifted, Error);
}

TEST_CASE("conjugation, real and imaginary parts") {
    const ExpSum f = random_sum(5, true);
    for (double t : {-1.1, 0.2, 0.8}) {
        CHECK(std::abs(f.conj().eval(t) - std::conj(f.eval(t))) < 1e-13);
        CHECK(std::abs(f.imag_part().eval(t) - cplx(f.eval(t).imag(), 0.0)) < 1e-13);
        CHECK(std::abs(f.real_part().eval(t) - cplx(f.eval(t).real(), 0.0)) < 1e-13);
    }
}

TEST_CASE("frequency shift and time translation") {
    const ExpSum f = random_sum(4, false);
    const ExpSum g = f.shifted(2.5);
    const ExpSum h = f.translated(0.7);
    for (double t : {-0.9, 0.4, 1.2}) {
        CHECK(std::abs(g.eval(t) - f.eval(t) * std::exp(cplx(0, 2.5 * t))) < 1e-13);
        CHECK(std::abs(h.eval(t) - f.eval(t + 0.7)) < 1e-13);
    }
}

TEST_CASE("commensurate frequency detection") {
    ExpSum f = ExpSum::harmonic(cplx(1, 0), 3.0) + ExpSum::harmonic(cplx(0, 1), -3.5);
    CHECK(f.commensurate_half_integer());
    f += ExpSum::harmonic(cplx(1, 0), std::sqrt(2.0));
    CHECK_FALSE(f.commensurate_half_integer());
}

TEST_CASE("derivative evaluation matches finite differences") {
    const ExpSum f = random_sum(5, true);
    const double h = 1e-6;
    for (double t : {-0.6, 0.3, 1.4}) {
        const cplx fd = (f.eval(t + h) - f.eval(t - h)) / (2 * h);
        CHECK(std::abs(f.eval_derivative(t) - fd) < 1e-7);
        CHECK(std::abs(f.derivative().eval(t) - f.eval_derivative(t)) < 1e-13);
    }
}
