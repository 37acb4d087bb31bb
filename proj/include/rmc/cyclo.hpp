#ifndef RMC_CYCLO_HPP
#define RMC_CYCLO_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <memory>
#include <string>
#include <vector>

#include "rmc/gf.hpp"
#include "rmc/intpoly.hpp"

namespace rmc {

using MpReal = boost::multiprecision::mpfr_float;

class RingElt;

// The ring of integers Z[theta_n] of the real subfield Q(zeta_n)^+, in the
// power basis 1, theta, ..., theta^{d-1} where theta_n = zeta_n + zeta_n^{-1}.
// Degree d = phi(n)/2 for n >= 3; conductors 1 and 2 are the rationals with
// theta = 2 and theta = -2 respectively.  Immutable and cheap to copy.
class Ring {
public:
    // Placeholder state; any use other than assignment requires a ring
    // obtained from ring_for().
    Ring() = default;

    int64_t n() const;
    int degree() const;
    const IntPoly& min_poly() const;

    RingElt zero() const;
    RingElt one() const;
    RingElt integer(BigInt v) const;
    RingElt theta() const;
    // Element from basis coefficients; at most degree() of them, padded with
    // zeros.
    RingElt element(std::vector<BigInt> coeffs) const;

    // Images of theta under the d real embeddings theta -> zeta^j + zeta^-j,
    // j coprime to n, j < n/2 (j = 1 first), expressed back in the power basis.
    const std::vector<RingElt>& conjugate_images() const;

    bool operator==(const Ring& o) const { return n() == o.n(); }
    bool operator!=(const Ring& o) const { return n() != o.n(); }

    friend Ring ring_for(int64_t n);
    friend class RingElt;

private:
    struct Data;
    explicit Ring(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

// Memoized constructor: the minimal polynomial psi_n is derived exactly from
// the n-th cyclotomic polynomial via Phi_n(z) = z^d psi_n(z + 1/z).
Ring ring_for(int64_t n);

class RingElt {
public:
    RingElt() = default;

    const Ring& ring() const { return ring_; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    RingElt operator+(const RingElt& o) const;
    RingElt operator-(const RingElt& o) const;
    RingElt operator*(const RingElt& o) const;
    RingElt operator-() const;
    bool operator==(const RingElt& o) const;
    bool operator!=(const RingElt& o) const { return !(*this == o); }

    bool is_zero() const;
    // True when the element lies in Z, i.e. all basis coefficients above the
    // constant one vanish.
    bool is_rational_integer() const;
    BigInt rational_value() const;  // throws unless is_rational_integer()

    // Coefficients as a polynomial in theta, for evaluation elsewhere.
    IntPoly as_poly() const;

    std::string to_string() const;  // canonical "[c0,c1,...]@n"

    friend class Ring;

private:
    RingElt(Ring r, std::vector<BigInt> c) : ring_(std::move(r)), c_(std::move(c)) {}
    Ring ring_;
    std::vector<BigInt> c_;
};

// Galois orbit of a (multiset of the d conjugates, j = 1 entry first).
std::vector<RingElt> conjugates(const RingElt& a);

// The d real embeddings of a, ordered by ascending value of the corresponding
// root of psi_n, each accurate to 10^-digits.
std::vector<MpReal> numeric_embeddings(const RingElt& a, int digits);

// Fixed-point decimal rendering of an embedding with the stated digit count.
std::string format_embedding(const MpReal& v, int digits);

// Dickson-style polynomial D_k with D_k(2 cos phi) = 2 cos(k phi):
// D_0 = 2, D_1 = X, D_{k+1} = X D_k - D_{k-1}.
IntPoly dickson_poly(int64_t k);

// Image of a under the subfield embedding O_m -> O_n (m = a's conductor must
// divide n), determined by theta_m -> D_{n/m}(theta_n).
RingElt embed_subfield(const RingElt& a, const Ring& target);

// A prime lambda of Z[theta_n] above ell, described by an irreducible factor
// of psi_n mod ell.
struct ResidueData {
    int64_t ell = 0;
    FpPoly modulus;         // monic irreducible over F_ell
    int ramification_e = 1;
    int inertia_k = 1;

    GField field() const { return GField(ell, modulus); }
    GField::Elem theta_image(const GField& f) const { return f.gen(); }
    // Induced map Z[theta] -> F_{ell^k}.
    GField::Elem reduce(const GField& f, const RingElt& a) const;
};

// One ResidueData per distinct irreducible factor of psi_n mod ell, ordered
// by (degree, coefficient sequence) so the choice of lambda (the first entry)
// is canonical.  ell must be an odd prime.
std::vector<ResidueData> residue_reduction(const Ring& ring, int64_t ell);

// Canonical element syntax "[c0,c1,...]@n".  Parsing accepts 1..d
// coefficients (zero-padded); formatting always emits all d.
RingElt parse_element(const std::string& text);

}  // namespace rmc

#endif
