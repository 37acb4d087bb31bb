#include "rmc/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmc {

int64_t euler_phi(int64_t n) {
    if (n <= 0) throw std::invalid_argument("euler_phi: n must be positive");
    int64_t result = n;
    int64_t m = n;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

int64_t half_phi_degree(int64_t n) {
    if (n <= 0) throw std::invalid_argument("half_phi_degree: n must be positive");
    if (n <= 2) return 1;
    return euler_phi(n) / 2;
}

bool is_prime_i64(int64_t n) {
    if (n < 2) return false;
    for (int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return n == p;
    return true;
}

int64_t prime_to_part(int64_t n, int64_t ell) {
    if (n <= 0 || ell <= 1) throw std::invalid_argument("prime_to_part: bad arguments");
    while (n % ell == 0) n /= ell;
    return n;
}

namespace {

using boost::multiprecision::powm;

bool miller_rabin(const BigInt& n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    int r = 0;
    while (d % 2 == 0) { d /= 2; ++r; }
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        BigInt x = powm(BigInt(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = x * x % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

BigInt pollard_rho(const BigInt& n) {
    if (n % 2 == 0) return 2;
    // Brent's variant with a fixed, deterministic parameter sweep.
    for (BigInt c = 1; ; ++c) {
        BigInt x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(boost::multiprecision::abs(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_rec(BigInt v, std::vector<BigInt>& out) {
    if (v == 1) return;
    if (miller_rabin(v)) { out.push_back(v); return; }
    BigInt d = pollard_rho(v);
    factor_rec(d, out);
    factor_rec(v / d, out);
}

}  // namespace

std::vector<BigInt> prime_factors(BigInt v) {
    std::vector<BigInt> out;
    if (v < 0) v = -v;
    if (v <= 1) return out;
    for (int64_t p = 2; p < 100000 && BigInt(p) * p <= v; ++p) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) factor_rec(v, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BigInt pow_i64(int64_t base, int exp) {
    BigInt r = 1, b = base;
    for (int i = 0; i < exp; ++i) r *= b;
    return r;
}

}  // namespace rmc
