#ifndef RMC_BIGINT_HPP
#define RMC_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace rmc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using std::int64_t;

// Euler's totient, trial-division based; fine for desk-scale n.
int64_t euler_phi(int64_t n);

// Degree of the real cyclotomic field of conductor n: phi(n)/2 for n >= 3,
// and 1 for n in {1, 2}.
int64_t half_phi_degree(int64_t n);

bool is_prime_i64(int64_t n);

// Largest divisor of n coprime to ell.
int64_t prime_to_part(int64_t n, int64_t ell);

// Distinct prime factors of |v|, ascending.  Uses trial division, then
// Miller-Rabin + Pollard rho for any large cofactor.
std::vector<BigInt> prime_factors(BigInt v);

BigInt pow_i64(int64_t base, int exp);

}  // namespace rmc

#endif
