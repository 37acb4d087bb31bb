#ifndef RMC_INTPOLY_HPP
#define RMC_INTPOLY_HPP

#include <string>
#include <vector>

#include "rmc/bigint.hpp"

namespace rmc {

// Dense univariate polynomial over Z, coefficient of X^i at index i.
// The zero polynomial is the empty coefficient vector; everything else is
// kept normalized (no trailing zero coefficients).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    static IntPoly constant(BigInt c);
    static IntPoly monomial(int deg, BigInt c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const BigInt& coeff(int i) const;
    const BigInt& leading() const;
    const std::vector<BigInt>& coeffs() const { return c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const BigInt& s) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    BigInt eval(const BigInt& x) const;
    BigRat eval(const BigRat& x) const;
    IntPoly derivative() const;

    // Content (gcd of coefficients, nonnegative; 0 for the zero polynomial).
    BigInt content() const;

    // Quotient of an exact division; throws if the division has a remainder.
    IntPoly divide_exact(const IntPoly& divisor) const;
    IntPoly divide_exact_scalar(const BigInt& s) const;

    // p(-X)
    IntPoly compose_neg() const;
    // p(q(X))
    IntPoly compose(const IntPoly& q) const;

    std::string to_string(const std::string& var = "X") const;

private:
    void normalize();
    std::vector<BigInt> c_;
};

// gcd over Q, returned primitive with positive leading coefficient
// (1 for coprime inputs).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

bool is_squarefree(const IntPoly& p);

// Resultant of a and b, by fraction-free (Bareiss) elimination on the
// Sylvester matrix.
BigInt resultant(const IntPoly& a, const IntPoly& b);

// disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lc(p)
BigInt discriminant(const IntPoly& p);

}  // namespace rmc

#endif
