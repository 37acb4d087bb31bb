#ifndef RMC_GF_HPP
#define RMC_GF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rmc {

// Polynomials over F_p as little-endian coefficient vectors with entries
// in [0, p).  p is expected to be a small prime (products fit in int64).
using FpPoly = std::vector<int64_t>;

namespace fp {

int64_t norm_coeff(int64_t c, int64_t p);
FpPoly trim(FpPoly f);
int deg(const FpPoly& f);
FpPoly add(const FpPoly& a, const FpPoly& b, int64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, int64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, int64_t p);
FpPoly scalar_mul(const FpPoly& a, int64_t s, int64_t p);
// quotient and remainder by a monic-normalizable divisor
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, int64_t p);
FpPoly mod(const FpPoly& a, const FpPoly& b, int64_t p);
FpPoly gcd(FpPoly a, FpPoly b, int64_t p);  // monic
FpPoly make_monic(const FpPoly& f, int64_t p);
FpPoly powmod(const FpPoly& base, int64_t e, const FpPoly& m, int64_t p);
int64_t eval(const FpPoly& f, int64_t x, int64_t p);
int64_t inv_mod(int64_t a, int64_t p);
std::string to_string(const FpPoly& f, const std::string& var = "X");

}  // namespace fp

struct FpFactor {
    FpPoly poly;  // monic irreducible
    int multiplicity;
};

// Full factorization over F_p (p odd prime).  Factors are monic irreducible,
// sorted by (degree, little-endian coefficient sequence); the product of
// poly^multiplicity times the input's leading coefficient reproduces the input.
std::vector<FpFactor> factor_mod_p(const FpPoly& f, int64_t p);

bool is_irreducible_mod_p(const FpPoly& f, int64_t p);

// F_{p^k} in the polynomial basis modulo a monic irreducible of degree k.
// Elements are coefficient vectors of length k.
class GField {
public:
    GField(int64_t p, FpPoly modulus);

    using Elem = std::vector<int64_t>;

    int64_t p() const { return p_; }
    int k() const { return k_; }
    int64_t q() const { return q_; }
    const FpPoly& modulus() const { return mod_; }

    Elem zero() const { return Elem(k_, 0); }
    Elem one() const { return from_int(1); }
    Elem from_int(int64_t v) const;
    Elem gen() const;  // class of X

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, int64_t e) const;
    Elem inv(const Elem& a) const;
    bool is_zero(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    // Evaluate an F_p polynomial at a field element.
    Elem eval_poly(const FpPoly& f, const Elem& x) const;

    // 1, -1, or 0: the quadratic character of a.
    int quad_char(const Elem& a) const;

    std::string to_string(const Elem& a) const;

private:
    int64_t p_;
    int k_;
    int64_t q_;
    FpPoly mod_;
};

}  // namespace rmc

#endif
