#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "assoc7/g2.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace assoc7;

namespace {

// Independent oracle: dense antisymmetric tensors built by explicit
// permutation expansion of the seven-term index lists. The production code
// never forms these.
struct DenseForms {
    std::vector<double> phi;   // 7^3
    std::vector<double> star;  // 7^4

    DenseForms() : phi(7 * 7 * 7, 0.0), star(7 * 7 * 7 * 7, 0.0) {
        const int perms3[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                  {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        const double signs3[6] = {1, 1, 1, -1, -1, -1};
        for (const PhiTerm& t : phi_terms()) {
            const int idx[3] = {t.i, t.j, t.k};
            for (int p = 0; p < 6; ++p) {
                const int a = idx[perms3[p][0]], b = idx[perms3[p][1]], c = idx[perms3[p][2]];
                phi[(a * 7 + b) * 7 + c] += t.sign * signs3[p];
            }
        }
        // All 24 permutations of 4 indices with parity by inversion count.
        int perm[4] = {0, 1, 2, 3};
        std::vector<std::array<int, 4>> perms4;
        std::vector<double> signs4;
        buildPerms(perm, 0, perms4, signs4);
        for (const StarPhiTerm& t : star_phi_terms()) {
            const int idx[4] = {t.i, t.j, t.k, t.l};
            for (std::size_t p = 0; p < perms4.size(); ++p) {
                const auto& pr = perms4[p];
                const int a = idx[pr[0]], b = idx[pr[1]], c = idx[pr[2]], d = idx[pr[3]];
                star[((a * 7 + b) * 7 + c) * 7 + d] += t.sign * signs4[p];
            }
        }
    }

    static void buildPerms(int* perm, int k, std::vector<std::array<int, 4>>& out,
                           std::vector<double>& signs) {
        if (k == 4) {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (perm[i] > perm[j]) ++inv;
            out.push_back({perm[0], perm[1], perm[2], perm[3]});
            signs.push_back(inv % 2 == 0 ? 1.0 : -1.0);
            return;
        }
        for (int i = k; i < 4; ++i) {
            std::swap(perm[k], perm[i]);
            buildPerms(perm, k + 1, out, signs);
            std::swap(perm[k], perm[i]);
        }
    }

    double phi3(const Vec7& x, const Vec7& y, const Vec7& z) const {
        double v = 0.0;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b)
                for (int c = 0; c < 7; ++c) v += phi[(a * 7 + b) * 7 + c] * x[a] * y[b] * z[c];
        return v;
    }

    Vec7 cross(const Vec7& x, const Vec7& y) const {
        Vec7 out;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b)
                for (int c = 0; c < 7; ++c) out[c] += phi[(a * 7 + b) * 7 + c] * x[a] * y[b];
        return out;
    }

    Vec7 associator(const Vec7& x, const Vec7& y, const Vec7& z) const {
        Vec7 out;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b)
                for (int c = 0; c < 7; ++c)
                    for (int d = 0; d < 7; ++d)
                        out[d] += 2.0 * star[((a * 7 + b) * 7 + c) * 7 + d] * x[a] * y[b] * z[c];
        return out;
    }
};

std::mt19937_64 rng(20240517);

Vec7 random_vec() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec7 v;
    for (int i = 0; i < 7; ++i) v[i] = u(rng);
    return v;
}

}  // namespace

TEST_CASE("phi3 on basis triples") {
    CHECK(phi3(e(1), e(2), e(3)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi3(e(2), e(1), e(3)) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(phi3(e(2), e(5), e(7)) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(phi3(e(1), e(1), e(2)) == 0.0);
}

TEST_CASE("star_phi4 on basis quadruples") {
    CHECK(star_phi4(e(4), e(5), e(6), e(7)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(star_phi4(e(1), e(2), e(4), e(7)) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(star_phi4(e(1), e(1), e(2), e(3)) == 0.0);
}

TEST_CASE("forms match dense-tensor oracle and are antisymmetric") {
    DenseForms dense;
    for (int n = 0; n < 200; ++n) {
        const Vec7 x = random_vec(), y = random_vec(), z = random_vec();
        CHECK(phi3(x, y, z) == doctest::Approx(dense.phi3(x, y, z)).epsilon(1e-12));
        CHECK(phi3(x, y, z) == doctest::Approx(-phi3(y, x, z)).epsilon(1e-12));
        const Vec7 c = cross(x, y);
        const Vec7 co = dense.cross(x, y);
        CHECK(norm(c - co) < 1e-12 * (1.0 + norm(co)));
        const Vec7 a = associator(x, y, z);
        const Vec7 ao = dense.associator(x, y, z);
        CHECK(norm(a - ao) < 1e-12 * (1.0 + norm(ao)));
    }
}

TEST_CASE("cross product identities") {
    CHECK(norm(cross(e(1), e(2)) - e(3)) < 1e-15);
    CHECK(norm(cross(e(4), e(6)) - e(2)) < 1e-15);  // contraction of the dx246 term
    const Vec7 x = random_vec();
    CHECK(norm(cross(x, x)) < 1e-14);
    for (int n = 0; n < 500; ++n) {
        const Vec7 a = random_vec(), b = random_vec(), z = random_vec();
        // g(a x b, a) = g(a x b, b) = 0 and phi(a,b,z) = g(a x b, z)
        const Vec7 c = cross(a, b);
        const double scale = norm(a) * norm(b);
        CHECK(std::abs(dot(c, a)) < 1e-12 * scale * norm(a));
        CHECK(std::abs(dot(c, b)) < 1e-12 * scale * norm(b));
        CHECK(std::abs(phi3(a, b, z) - dot(c, z)) < 1e-12 * scale * norm(z));
        // |a x b|^2 = |a|^2 |b|^2 - g(a,b)^2
        CHECK(norm_sq(c) ==
              doctest::Approx(norm_sq(a) * norm_sq(b) - dot(a, b) * dot(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("associator examples and properties") {
    CHECK(norm(associator(e(1), e(2), e(3))) < 1e-15);
    CHECK(norm(associator(e(1), e(2), e(4)) + 2.0 * e(7)) < 1e-15);
    const Vec7 x = random_vec(), y = random_vec();
    CHECK(norm(associator(x, x, y)) < 1e-13);

    for (int n = 0; n < 500; ++n) {
        const Vec7 a = random_vec(), b = random_vec(), c = random_vec();
        const Vec7 asc = associator(a, b, c);
        const double scale = norm(a) * norm(b) * norm(c);
        // alternating
        CHECK(norm(asc + associator(b, a, c)) < 1e-12 * scale);
        // orthogonal to arguments and to pairwise commutators 2 a x b
        CHECK(std::abs(dot(asc, a)) < 1e-12 * scale * norm(a));
        CHECK(std::abs(dot(asc, b)) < 1e-12 * scale * norm(b));
        CHECK(std::abs(dot(asc, c)) < 1e-12 * scale * norm(c));
        CHECK(std::abs(dot(asc, cross(a, b))) < 1e-12 * scale * norm(a) * norm(b));
        CHECK(std::abs(dot(asc, cross(a, c))) < 1e-12 * scale * norm(a) * norm(c));
        CHECK(std::abs(dot(asc, cross(b, c))) < 1e-12 * scale * norm(b) * norm(c));
    }
}

TEST_CASE("octonion multiplication") {
    const Octonion one = Octonion::one();
    const Octonion b{0.3, random_vec()};
    const Octonion ob = oct_mul(one, b);
    CHECK(ob.re == doctest::Approx(b.re));
    CHECK(norm(ob.im - b.im) < 1e-15);

    const Octonion e1 = Octonion::imaginary(e(1));
    const Octonion sq = oct_mul(e1, e1);
    CHECK(sq.re == doctest::Approx(-1.0));
    CHECK(norm(sq.im) < 1e-15);

    const Octonion p = oct_mul(Octonion::imaginary(e(1)), Octonion::imaginary(e(2)));
    CHECK(p.re == doctest::Approx(0.0));
    CHECK(norm(p.im - e(3)) < 1e-15);

    for (int n = 0; n < 500; ++n) {
        const Octonion a{std::uniform_real_distribution<double>(-1, 1)(rng), random_vec()};
        const Octonion c{std::uniform_real_distribution<double>(-1, 1)(rng), random_vec()};
        CHECK(oct_norm(oct_mul(a, c)) ==
              doctest::Approx(oct_norm(a) * oct_norm(c)).epsilon(1e-12));
        // half the commutator of imaginary parts is the cross product
        const Octonion x = Octonion::imaginary(a.im), y = Octonion::imaginary(c.im);
        const Octonion comm = oct_mul(x, y) - oct_mul(y, x);
        CHECK(norm(comm.im * 0.5 - cross(a.im, c.im)) < 1e-13 * (1 + norm(a.im) * norm(c.im)));
    }
}

TEST_CASE("octonion associator equals star-phi contraction") {
    for (int n = 0; n < 1000; ++n) {
        const Vec7 x = random_vec(), y = random_vec(), z = random_vec();
        const Vec7 a1 = associator(x, y, z);
        const Vec7 a2 = associator_via_octonions(x, y, z);
        CHECK(norm(a1 - a2) < 1e-12 * (1.0 + norm(x) * norm(y) * norm(z)));
    }
}

TEST_CASE("is_associative_plane") {
    CHECK(is_associative_plane(e(1), e(2), e(3), 1e-10).associative);
    const PlaneTest t = is_associative_plane(e(1), e(2), e(4), 1e-10);
    CHECK_FALSE(t.associative);
    CHECK(t.residual == doctest::Approx(2.0));
    CHECK_THROWS_AS(is_associative_plane(e(1), e(2), e(1) + e(2), 1e-10), DegeneratePlane);
    CHECK_THROWS_AS(is_associative_plane(Vec7{}, e(2), e(3), 1e-10), DegeneratePlane);
}

TEST_CASE("split_along frame") {
    const SplitFrame f = split_along(e(1));
    CHECK(norm(f.J(e(2)) - e(3)) < 1e-15);
    // omega = dx23 + dx45 + dx67 on the complement of e1
    CHECK(f.omega(e(2), e(3)) == doctest::Approx(1.0));
    CHECK(f.omega(e(4), e(5)) == doctest::Approx(1.0));
    CHECK(f.omega(e(6), e(7)) == doctest::Approx(1.0));
    CHECK(f.omega(e(2), e(4)) == doctest::Approx(0.0));

    const SplitFrame f2 = split_along(2.0 * e(1));
    CHECK(norm(f2.axis - f.axis) < 1e-15);

    CHECK_THROWS_AS(split_along(Vec7{}), ZeroVector);

    // J^2 = -identity on the complement, omega antisymmetric
    for (int n = 0; n < 200; ++n) {
        Vec7 axis = random_vec();
        if (norm(axis) < 1e-3) continue;
        const SplitFrame fr = split_along(axis);
        Vec7 x = random_vec();
        x -= dot(x, fr.axis) * fr.axis;
        CHECK(norm(fr.J(fr.J(x)) + x) < 1e-12 * (1.0 + norm(x)));
        const Vec7 y = random_vec();
        CHECK(fr.omega(x, y) == doctest::Approx(-fr.omega(y, x)).epsilon(1e-12));
    }
}

TEST_CASE("complex_cross") {
    const SplitFrame f = split_along(e(1));
    CHECK(norm(complex_cross(e(2), e(4), f) - e(6)) < 1e-15);
    CHECK(norm(complex_cross(e(2), e(3), f)) < 1e-15);
    const Vec7 x = e(2) * 0.7 + e(5) * 0.1;
    CHECK(norm(complex_cross(x, x, f)) < 1e-15);
    CHECK_THROWS_AS(complex_cross(e(1) + e(2), e(4), f), NotInComplement);

    // result is orthogonal to the axis
    for (int n = 0; n < 100; ++n) {
        Vec7 u = random_vec(), v = random_vec();
        u -= dot(u, f.axis) * f.axis;
        v -= dot(v, f.axis) * f.axis;
        CHECK(std::abs(dot(complex_cross(u, v, f), f.axis)) < 1e-12 * (1 + norm(u) * norm(v)));
    }
}
