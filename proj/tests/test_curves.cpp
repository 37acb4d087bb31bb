#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmc/curves.hpp"

using namespace rmc;

namespace {

// c * t^a * (t-1)^b with nothing left over
bool is_rigid_disc(IntPoly disc) {
    if (disc.is_zero()) return false;
    while (disc.coeff(0) == 0) {
        std::vector<BigInt> shifted(disc.coeffs().begin() + 1, disc.coeffs().end());
        disc = IntPoly(shifted);
    }
    while (disc.degree() > 0 && disc.eval(BigInt(1)) == 0) {
        // synthetic division by (t - 1)
        std::vector<BigInt> q(disc.degree());
        BigInt carry = 0;
        for (int i = disc.degree(); i >= 1; --i) {
            carry += disc.coeff(i);
            q[i - 1] = carry;
        }
        disc = IntPoly(std::move(q));
    }
    return disc.degree() == 0;
}

}  // namespace

TEST_CASE("ttv_polys worked examples") {
    auto [g3, f3] = ttv_polys(3);
    CHECK(g3 == IntPoly({BigInt(-1), BigInt(1)}));
    CHECK(f3 == IntPoly({BigInt(0), BigInt(-3), BigInt(0), BigInt(1)}));

    auto [g5, f5] = ttv_polys(5);
    CHECK(g5 == IntPoly({BigInt(-1), BigInt(-1), BigInt(1)}));
    CHECK(f5 == IntPoly({BigInt(0), BigInt(5), BigInt(0), BigInt(-5), BigInt(0), BigInt(1)}));

    auto [g7, f7] = ttv_polys(7);
    CHECK(g7 == IntPoly({BigInt(1), BigInt(-2), BigInt(-1), BigInt(1)}));
    CHECK(f7 == IntPoly({BigInt(0), BigInt(-7), BigInt(0), BigInt(14), BigInt(0), BigInt(-7),
                         BigInt(0), BigInt(1)}));

    CHECK_THROWS_AS(ttv_polys(4), std::invalid_argument);
    CHECK_THROWS_AS(ttv_polys(9), std::invalid_argument);
}

TEST_CASE("g_r is the characteristic polynomial of -theta_r, exactly") {
    for (int64_t r : {3, 5, 7, 11, 13}) {
        IntPoly g = ttv_polys(r).first;
        IntPoly psi_neg = ring_for(r).min_poly().compose_neg();
        if (psi_neg.leading() < 0) psi_neg = -psi_neg;
        CHECK(g == psi_neg);
        // and f_r equals the degree-r Dickson-type polynomial
        CHECK(ttv_polys(r).second == dickson_poly(r));
    }
}

TEST_CASE("Chebyshev identity f_r(2 cos phi) = 2 cos(r phi) on a grid") {
    for (int64_t r : {3, 5, 7, 11}) {
        IntPoly f = ttv_polys(r).second;
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            double phi = M_PI * i / 999.0;
            double x = 2 * std::cos(phi);
            double acc = 0;
            for (int j = f.degree(); j >= 0; --j)
                acc = acc * x + static_cast<double>(f.coeff(j).convert_to<long long>());
            worst = std::max(worst, std::fabs(acc - 2 * std::cos(r * phi)));
        }
        CAPTURE(r);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("family_from_kind worked examples") {
    CurveFamily leg = family_from_kind(FamilyKind::Legendre);
    CHECK(leg.n() == 2);
    CHECK(leg.hpoly.degree_x() == 3);
    CHECK(leg.hpoly.to_string() == "X^3 + (-t - 1)*X^2 + (t)*X");

    CurveFamily tte3 = family_from_kind(FamilyKind::TTVEven, 3);
    CHECK(tte3.n() == 6);
    // X^3 - 3X + 2 - 4t
    CHECK(tte3.hpoly.coeffs[0] == IntPoly({BigInt(2), BigInt(-4)}));
    CHECK(tte3.hpoly.coeffs[1] == IntPoly::constant(-3));
    CHECK(tte3.hpoly.coeffs[3] == IntPoly::constant(1));

    CurveFamily tto3 = family_from_kind(FamilyKind::TTVOdd, 3);
    CHECK(tto3.n() == 3);
    CHECK(tto3.hpoly.degree_x() == 4);

    CurveFamily j = family_from_kind(FamilyKind::J1728);
    CHECK(j.n() == 12);
    CHECK(j.expected_orders == std::array<int64_t, 3>{4, 1, 3});

    CHECK(family_from_name("ttv-even:5").r == 5);
    CHECK(family_from_name("legendre").kind == FamilyKind::Legendre);
    CHECK_THROWS_AS(family_from_name("ttv-even:4"), std::invalid_argument);
    CHECK_THROWS_AS(family_from_name("weierstrass"), std::invalid_argument);
}

TEST_CASE("family_from_triple matches on trace data") {
    Ring z2 = ring_for(2);
    CHECK(family_from_triple(from_traces(z2.integer(2), z2.integer(-2))).kind ==
          FamilyKind::Legendre);

    Ring r12 = ring_for(12);
    CHECK(family_from_triple(from_traces(r12.integer(0), r12.integer(-1))).kind ==
          FamilyKind::J1728);

    Ring r10 = ring_for(10);
    CurveFamily f = family_from_triple(from_traces(r10.integer(2), r10.theta()));
    CHECK(f.kind == FamilyKind::TTVEven);
    CHECK(f.r == 5);

    // a Galois conjugate of theta in the z slot matches the same family
    RingElt conj = -r10.theta() + r10.integer(1);  // the other root of X^2-X-1
    CurveFamily f2 = family_from_triple(from_traces(r10.integer(2), conj));
    CHECK(f2.kind == FamilyKind::TTVEven);
    CHECK(f2.r == 5);

    Ring r5 = ring_for(5);
    CurveFamily fo = family_from_triple(from_traces(r5.integer(2), r5.theta()));
    CHECK(fo.kind == FamilyKind::TTVOdd);
    CHECK(fo.r == 5);

    // sign-twisted Legendre traces
    CHECK(family_from_triple(from_traces(z2.integer(-2), z2.integer(2))).kind ==
          FamilyKind::Legendre);

    // order 7 at sigma0: outside the four families
    Ring r7 = ring_for(7);
    CHECK_THROWS_AS(family_from_triple(from_traces(r7.theta(), r7.integer(2))),
                    UnsupportedFamily);
}

TEST_CASE("specialize worked examples") {
    CurveFamily leg = family_from_kind(FamilyKind::Legendre);
    SpecializedCurve c = specialize(leg, BigRat(-1));
    CHECK(c.poly == IntPoly({BigInt(0), BigInt(-1), BigInt(0), BigInt(1)}));  // X^3 - X
    CHECK(c.genus == 1);
    CHECK(c.bad_primes == std::vector<BigInt>{2});

    CurveFamily tte3 = family_from_kind(FamilyKind::TTVEven, 3);
    SpecializedCurve c2 = specialize(tte3, BigRat(2));
    CHECK(c2.poly == IntPoly({BigInt(-6), BigInt(-3), BigInt(0), BigInt(1)}));
    CHECK(c2.genus == 1);
    CHECK(c2.bad_primes == std::vector<BigInt>{2, 3});

    CurveFamily tte5 = family_from_kind(FamilyKind::TTVEven, 5);
    SpecializedCurve c3 = specialize(tte5, BigRat(2));
    CHECK(c3.genus == 2);
    CHECK(c3.poly.degree() == 5);

    CHECK_THROWS_AS(specialize(leg, BigRat(0)), std::domain_error);
    CHECK_THROWS_AS(specialize(leg, BigRat(1)), std::domain_error);
}

TEST_CASE("specialize clears denominators to a primitive integral model") {
    CurveFamily tte3 = family_from_kind(FamilyKind::TTVEven, 3);
    SpecializedCurve c = specialize(tte3, BigRat(1, 2));
    // f + 2 - 4/2 = X^3 - 3X: already integral; q^2 scaling collapses back
    CHECK(c.poly == IntPoly({BigInt(0), BigInt(-3), BigInt(0), BigInt(1)}));
    for (const auto& b : c.bad_primes) CHECK(b >= 2);

    CurveFamily leg = family_from_kind(FamilyKind::Legendre);
    SpecializedCurve c2 = specialize(leg, BigRat(1, 3));
    // denominators cleared, model integral and squarefree
    for (int i = 0; i <= c2.poly.degree(); ++i)
        CHECK(denominator(BigRat(c2.poly.coeff(i))) == 1);
    CHECK(is_squarefree(c2.poly));
    bool has3 = false;
    for (const auto& b : c2.bad_primes) has3 |= (b == 3);
    CHECK(has3);
}

TEST_CASE("discriminant in t is supported at {0, 1} for every family") {
    CHECK(disc_x_in_t(family_from_kind(FamilyKind::Legendre).hpoly) ==
          IntPoly({BigInt(0), BigInt(0), BigInt(1), BigInt(-2), BigInt(1)}));
    for (int64_t r : {3, 5, 7}) {
        CAPTURE(r);
        CHECK(is_rigid_disc(disc_x_in_t(family_from_kind(FamilyKind::TTVEven, r).hpoly)));
        CHECK(is_rigid_disc(disc_x_in_t(family_from_kind(FamilyKind::TTVOdd, r).hpoly)));
    }
    CHECK(is_rigid_disc(disc_x_in_t(family_from_kind(FamilyKind::J1728).hpoly)));
    // j1728 concretely: -108 t^3 (t - 1)
    CHECK(disc_x_in_t(family_from_kind(FamilyKind::J1728).hpoly) ==
          IntPoly({BigInt(0), BigInt(0), BigInt(0), BigInt(108), BigInt(-108)}));
}

TEST_CASE("every x0 outside {0,1} gives a squarefree fibre of the right genus") {
    for (auto kindr : std::vector<std::pair<FamilyKind, int64_t>>{
             {FamilyKind::Legendre, 0},
             {FamilyKind::J1728, 0},
             {FamilyKind::TTVOdd, 3},
             {FamilyKind::TTVEven, 3},
             {FamilyKind::TTVOdd, 5},
             {FamilyKind::TTVEven, 5}}) {
        CurveFamily fam = family_from_kind(kindr.first, kindr.second);
        for (int64_t num : {-3, -1, 2, 3, 5}) {
            for (int64_t den : {1, 2}) {
                BigRat x0(num, den);
                if (x0 == 0 || x0 == 1) continue;
                SpecializedCurve c = specialize(fam, x0);
                CHECK(is_squarefree(c.poly));
                CHECK(c.genus == (c.poly.degree() - 1) / 2);
                CHECK(c.genus >= 1);
                CHECK(c.bad_primes.front() == 2);
            }
        }
    }
}
