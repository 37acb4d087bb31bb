#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rmc/cyclo.hpp"

using namespace rmc;

TEST_CASE("min_poly worked examples") {
    CHECK(ring_for(1).min_poly() == IntPoly({BigInt(-2), BigInt(1)}));
    CHECK(ring_for(2).min_poly() == IntPoly({BigInt(2), BigInt(1)}));
    CHECK(ring_for(3).min_poly() == IntPoly({BigInt(1), BigInt(1)}));
    CHECK(ring_for(5).min_poly() == IntPoly({BigInt(-1), BigInt(1), BigInt(1)}));
    CHECK(ring_for(7).min_poly() ==
          IntPoly({BigInt(-1), BigInt(-2), BigInt(1), BigInt(1)}));
    CHECK(ring_for(10).min_poly() == IntPoly({BigInt(-1), BigInt(-1), BigInt(1)}));
    CHECK(ring_for(1).degree() == 1);
    CHECK(ring_for(12).degree() == 2);
}

TEST_CASE("min_poly matches the numeric product oracle up to n = 50") {
    for (int64_t n = 1; n <= 50; ++n) {
        double dev = 1;
        IntPoly expect = oracles::numeric_min_poly(n, &dev);
        CAPTURE(n);
        CHECK(dev < 1e-6);
        CHECK(ring_for(n).min_poly() == expect);
        CHECK(ring_for(n).min_poly().degree() == half_phi_degree(n));
    }
}

TEST_CASE("psi_n has theta_n as a root, numerically") {
    for (int64_t n = 1; n <= 100; ++n) {
        MpReal::default_precision(40);
        MpReal theta = n == 1 ? MpReal(2)
                              : (n == 2 ? MpReal(-2) : 2 * cos(8 * atan(MpReal(1)) / n));
        MpReal acc = 0;
        const IntPoly& psi = ring_for(n).min_poly();
        for (int i = psi.degree(); i >= 0; --i)
            acc = acc * theta + MpReal(psi.coeff(i).str());
        CAPTURE(n);
        CHECK(static_cast<double>(abs(acc)) < 1e-9);
    }
}

TEST_CASE("ring arithmetic worked examples") {
    Ring r5 = ring_for(5);
    CHECK(r5.theta() * r5.theta() == r5.element({BigInt(1), BigInt(-1)}));
    Ring r10 = ring_for(10);
    CHECK(r10.theta() * r10.theta() == r10.element({BigInt(1), BigInt(1)}));
    RingElt a = r5.element({BigInt(3), BigInt(-2)});
    CHECK(a * r5.one() == a);
    CHECK(a - a == r5.zero());
    CHECK_THROWS_AS((void)(r5.theta() + r10.theta()), std::invalid_argument);
}

TEST_CASE("conjugates worked examples and multiset invariance") {
    Ring r5 = ring_for(5);
    auto cs = conjugates(r5.theta());
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == r5.theta());
    CHECK(cs[1] == r5.element({BigInt(-1), BigInt(-1)}));

    auto c3 = conjugates(ring_for(3).theta());
    REQUIRE(c3.size() == 1);

    Ring r7 = ring_for(7);
    auto cc = conjugates(r7.integer(9));
    for (const auto& c : cc) CHECK(c == r7.integer(9));
}

namespace {

// characteristic polynomial of multiplication-by-a via integer determinants
// at interpolation points
IntPoly mult_charpoly(const RingElt& a) {
    int d = a.ring().degree();
    // multiplication matrix columns: a * theta^i in the power basis
    std::vector<std::vector<BigInt>> M(d, std::vector<BigInt>(d));
    RingElt pow = a;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) M[j][i] = pow.coeffs()[j];
        pow = pow * a.ring().theta();
    }
    // det(xI - M) by evaluation/interpolation with exact rationals
    std::vector<BigRat> xs, ys;
    for (int t = 0; t <= d; ++t) {
        std::vector<std::vector<BigRat>> w(d, std::vector<BigRat>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                w[i][j] = (i == j ? BigRat(t) : BigRat(0)) - BigRat(M[i][j]);
        // fraction-free-ish determinant over Q
        BigRat det = 1;
        bool zero = false;
        for (int c = 0; c < d && !zero; ++c) {
            int piv = -1;
            for (int r = c; r < d; ++r)
                if (w[r][c] != 0) { piv = r; break; }
            if (piv < 0) { zero = true; break; }
            if (piv != c) {
                std::swap(w[piv], w[c]);
                det = -det;
            }
            det *= w[c][c];
            for (int r = c + 1; r < d; ++r) {
                BigRat f = w[r][c] / w[c][c];
                for (int cc = c; cc < d; ++cc) w[r][cc] -= f * w[c][cc];
            }
        }
        xs.emplace_back(t);
        ys.push_back(zero ? BigRat(0) : det);
    }
    // Newton interpolation
    std::vector<BigRat> dd = ys;
    int pts = d + 1;
    for (int lvl = 1; lvl < pts; ++lvl)
        for (int i = pts - 1; i >= lvl; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
    std::vector<BigRat> poly{dd[pts - 1]};
    for (int i = pts - 2; i >= 0; --i) {
        poly.insert(poly.begin(), BigRat(0));
        for (size_t j = 0; j + 1 < poly.size(); ++j) poly[j] -= xs[i] * poly[j + 1];
        poly[0] += dd[i];
    }
    std::vector<BigInt> out;
    for (auto& v : poly) {
        REQUIRE(denominator(v) == 1);
        out.push_back(numerator(v));
    }
    return IntPoly(std::move(out));
}

}  // namespace

TEST_CASE("conjugate symmetric functions match the multiplication charpoly") {
    std::mt19937 rng(20240801);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int64_t n = 1; n <= 12; ++n) {
        Ring r = ring_for(n);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<BigInt> cs(r.degree());
            for (auto& c : cs) c = coeff(rng);
            RingElt a = r.element(cs);
            auto conj = conjugates(a);
            // prod (X - conj_i) computed in the ring must equal charpoly(mult by a)
            std::vector<RingElt> poly{r.one()};
            for (const auto& c : conj) {
                std::vector<RingElt> next(poly.size() + 1, r.zero());
                for (size_t i = 0; i < poly.size(); ++i) {
                    next[i + 1] = next[i + 1] + poly[i];
                    next[i] = next[i] - c * poly[i];
                }
                poly = std::move(next);
            }
            IntPoly charpoly = mult_charpoly(a);
            CAPTURE(n);
            REQUIRE(static_cast<int>(poly.size()) == charpoly.degree() + 1);
            for (size_t i = 0; i < poly.size(); ++i) {
                // coefficients are rational integers
                REQUIRE(poly[i].is_rational_integer());
                CHECK(poly[i].rational_value() == charpoly.coeff(static_cast<int>(i)));
            }
        }
    }
}

TEST_CASE("numeric embeddings worked examples") {
    Ring r5 = ring_for(5);
    auto em = numeric_embeddings(r5.theta(), 30);
    REQUIRE(em.size() == 2);
    // sorted by root value: -1.618..., 0.618...
    CHECK(static_cast<double>(em[0]) == doctest::Approx(-1.6180339887).epsilon(1e-9));
    CHECK(static_cast<double>(em[1]) == doctest::Approx(0.6180339887).epsilon(1e-9));

    auto c7 = numeric_embeddings(ring_for(7).integer(7), 30);
    REQUIRE(c7.size() == 3);
    for (const auto& v : c7) CHECK(static_cast<double>(v) == doctest::Approx(7.0));

    auto em10 = numeric_embeddings(ring_for(10).theta(), 30);
    REQUIRE(em10.size() == 2);
    CHECK(static_cast<double>(em10[0]) == doctest::Approx(-0.6180339887).epsilon(1e-9));
    CHECK(static_cast<double>(em10[1]) == doctest::Approx(1.6180339887).epsilon(1e-9));
}

TEST_CASE("residue_reduction worked examples") {
    {
        auto rds = residue_reduction(ring_for(10), 5);
        REQUIRE(rds.size() == 1);
        CHECK(rds[0].modulus == FpPoly{2, 1});  // X + 2
        CHECK(rds[0].ramification_e == 2);
        CHECK(rds[0].inertia_k == 1);
        GField F = rds[0].field();
        CHECK(rds[0].theta_image(F) == F.from_int(3));
    }
    {
        auto rds = residue_reduction(ring_for(7), 7);
        REQUIRE(rds.size() == 1);
        CHECK(rds[0].modulus == FpPoly{5, 1});  // X - 2
        CHECK(rds[0].ramification_e == 3);
        CHECK(rds[0].inertia_k == 1);
        GField F = rds[0].field();
        CHECK(rds[0].theta_image(F) == F.from_int(2));
    }
    {
        auto rds = residue_reduction(ring_for(5), 3);
        REQUIRE(rds.size() == 1);
        CHECK(rds[0].ramification_e == 1);
        CHECK(rds[0].inertia_k == 2);
    }
    CHECK_THROWS_AS(residue_reduction(ring_for(5), 2), std::invalid_argument);
    CHECK_THROWS_AS(residue_reduction(ring_for(5), 9), std::invalid_argument);
}

TEST_CASE("residue degrees sum to d, and ell | n collapses to the prime-to-ell part") {
    for (int64_t n = 1; n <= 50; ++n) {
        for (int64_t ell : {3, 5, 7, 11, 13}) {
            auto rds = residue_reduction(ring_for(n), ell);
            int64_t total = 0;
            for (const auto& rd : rds) total += int64_t(rd.ramification_e) * rd.inertia_k;
            CAPTURE(n);
            CAPTURE(ell);
            CHECK(total == ring_for(n).degree());
            if (n % ell == 0) {
                // same residue degrees as the prime-to-ell conductor
                int64_t np = prime_to_part(n, ell);
                auto rdp = residue_reduction(ring_for(np), ell);
                std::vector<int> ks, kps;
                for (const auto& rd : rds) ks.push_back(rd.inertia_k);
                for (const auto& rd : rdp) kps.push_back(rd.inertia_k);
                std::sort(ks.begin(), ks.end());
                std::sort(kps.begin(), kps.end());
                CHECK(ks == kps);
            }
        }
    }
}

TEST_CASE("element text syntax round trip") {
    RingElt e = parse_element("[0,1]@5");
    CHECK(e == ring_for(5).theta());
    CHECK(e.to_string() == "[0,1]@5");
    // short form pads with zeros; formatting is canonical afterwards
    RingElt c = parse_element("[-7]@12");
    CHECK(c.to_string() == "[-7,0]@12");
    CHECK(parse_element(c.to_string()) == c);
    CHECK_THROWS_AS(parse_element("[1,2,3]@5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element("1,2@5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element("[1]@0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element("[1,a]@5"), std::invalid_argument);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coeff(-99, 99);
    std::uniform_int_distribution<int64_t> conductor(1, 30);
    for (int i = 0; i < 200; ++i) {
        Ring r = ring_for(conductor(rng));
        std::vector<BigInt> cs(r.degree());
        for (auto& x : cs) x = coeff(rng);
        RingElt a = r.element(cs);
        CHECK(parse_element(a.to_string()) == a);
    }
}

TEST_CASE("subfield embedding is a ring homomorphism hitting theta_m") {
    // theta_2 inside O_10 is -2; theta_5 inside O_10 is theta^2 - 2
    Ring r10 = ring_for(10);
    CHECK(embed_subfield(ring_for(2).theta(), r10) == r10.integer(-2));
    RingElt t5 = embed_subfield(ring_for(5).theta(), r10);
    // psi_5 must vanish on it
    const IntPoly& psi5 = ring_for(5).min_poly();
    RingElt acc = r10.zero();
    for (int i = psi5.degree(); i >= 0; --i) acc = acc * t5 + r10.integer(psi5.coeff(i));
    CHECK(acc.is_zero());
    // multiplicativity on a sample
    Ring r5 = ring_for(5);
    RingElt a = r5.element({BigInt(1), BigInt(2)});
    RingElt b = r5.element({BigInt(-3), BigInt(1)});
    CHECK(embed_subfield(a * b, r10) == embed_subfield(a, r10) * embed_subfield(b, r10));
}
