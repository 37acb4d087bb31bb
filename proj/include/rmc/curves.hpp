#ifndef RMC_CURVES_HPP
#define RMC_CURVES_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmc/cyclo.hpp"
#include "rmc/intpoly.hpp"
#include "rmc/triples.hpp"

namespace rmc {

// Polynomial in X whose coefficients are integer polynomials in the family
// parameter t.
struct TPoly {
    std::vector<IntPoly> coeffs;  // coeffs[i] multiplies X^i

    int degree_x() const { return static_cast<int>(coeffs.size()) - 1; }
    int max_degree_t() const;
    // Coefficients of h(X, t0) as exact rationals.
    std::vector<BigRat> eval_t(const BigRat& t0) const;
    std::string to_string() const;
};

// disc_X(h) as an exact polynomial in t, computed by specializing t at
// integer sample points and interpolating.  Requires the X-leading
// coefficient to be constant in t.
IntPoly disc_x_in_t(const TPoly& h);

enum class FamilyKind { Legendre, J1728, TTVOdd, TTVEven };

struct CurveFamily {
    FamilyKind kind;
    int64_t r = 0;  // TTV kinds only
    TPoly hpoly;    // y^2 = hpoly(X, t)
    Ring ring_spec;
    std::array<RingElt, 3> expected_traces;
    std::array<int64_t, 3> expected_orders{};

    int64_t n() const { return ring_spec.n(); }
    std::string name() const;  // CLI syntax: legendre | j1728 | ttv-odd:r | ttv-even:r
};

// g_r = monic characteristic polynomial of -theta_r, f_r = X g_r(X^2 - 2);
// f_r(2 cos phi) = 2 cos(r phi).  r must be an odd prime.
std::pair<IntPoly, IntPoly> ttv_polys(int64_t r);

CurveFamily family_from_kind(FamilyKind kind, int64_t r = 0);
// Parse the CLI syntax, e.g. "ttv-even:5".
CurveFamily family_from_name(const std::string& name);

// Thrown when an admissible triple falls outside the four explicit families.
struct UnsupportedFamily : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Match a validated triple against the four families on trace data alone, up
// to the (+,+,+)/(-,+,-) sign normalization.
CurveFamily family_from_triple(const AdmissibleTriple& t);

struct SpecializedCurve {
    IntPoly poly;  // integral squarefree model, y^2 = poly(X)
    int genus = 0;
    std::vector<BigInt> bad_primes;  // sorted, always contains 2
    BigRat x0;
};

// Fibre at t = x0: substitute, clear denominators by the y-scaling
// y -> y / q^m, and strip any square content.  x0 in {0, 1} and
// non-squarefree fibres are rejected.
SpecializedCurve specialize(const CurveFamily& fam, const BigRat& x0);

}  // namespace rmc

#endif
