#include <omp.h>

#include <stdexcept>

#include "rmc/counting.hpp"

namespace rmc {

CountField CountField::make(int64_t p, int k) {
    if (p < 3 || !is_prime_i64(p))
        throw std::invalid_argument("CountField: p must be an odd prime");
    if (k != 1 && k != 2) throw std::invalid_argument("CountField: k must be 1 or 2");
    CountField F;
    F.p = p;
    F.k = k;
    F.q = k == 1 ? p : p * p;
    if (k == 2) {
        // smallest quadratic nonresidue c gives the irreducible X^2 - c
        std::vector<int8_t> sq(p, 0);
        for (int64_t v = 1; v < p; ++v) sq[v * v % p] = 1;
        int64_t c = 0;
        for (int64_t v = 2; v < p; ++v)
            if (!sq[v]) { c = v; break; }
        if (c == 0) throw std::logic_error("CountField: no nonresidue found");
        F.nonresidue = c;
    }
    // mark squares by enumerating v^2 over the whole field
    F.chi.assign(F.q, -1);
    F.chi[0] = 0;
    if (k == 1) {
        for (int64_t v = 1; v < p; ++v) F.chi[v * v % p] = 1;
    } else {
        const int64_t nr = F.nonresidue;
        for (int64_t i = 1; i < F.q; ++i) {
            int64_t a = i % p, b = i / p;
            int64_t ra = (a * a + b * b % p * nr) % p;
            int64_t rb = 2 * a * b % p;
            F.chi[ra + rb * p] = 1;
        }
    }
    return F;
}

namespace {

// Horner evaluation of h (F_p coefficients) at the field element of index i.
inline int64_t eval_index(const CountField& F, const std::vector<int64_t>& h, int64_t i) {
    const int64_t p = F.p;
    if (F.k == 1) {
        int64_t acc = 0;
        for (auto it = h.rbegin(); it != h.rend(); ++it) acc = (acc * i + *it) % p;
        return acc;
    }
    const int64_t xa = i % p, xb = i / p, nr = F.nonresidue;
    int64_t aa = 0, ab = 0;
    for (auto it = h.rbegin(); it != h.rend(); ++it) {
        int64_t na = (aa * xa + ab * xb % p * nr + *it) % p;
        int64_t nb = (aa * xb + ab * xa) % p;
        aa = na;
        ab = nb;
    }
    return aa + ab * p;
}

}  // namespace

int64_t chi_sum_serial(const CountField& F, const std::vector<int64_t>& h) {
    int64_t sum = 0;
    for (int64_t i = 0; i < F.q; ++i) sum += F.chi[eval_index(F, h, i)];
    return sum;
}

int64_t chi_sum_parallel(const CountField& F, const std::vector<int64_t>& h) {
    int64_t sum = 0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (int64_t i = 0; i < F.q; ++i) sum += F.chi[eval_index(F, h, i)];
    return sum;
}

int64_t point_count(const SpecializedCurve& curve, int64_t p, int k, bool parallel,
                    int64_t bound) {
    if (p < 3 || !is_prime_i64(p))
        throw std::invalid_argument("point_count: p must be an odd prime");
    for (const auto& b : curve.bad_primes)
        if (b == p)
            throw std::domain_error("point_count: p = " + std::to_string(p) +
                                    " is a bad prime of the curve");
    BigInt qk = pow_i64(p, k);
    if (qk > bound)
        throw std::domain_error("point_count: p^k exceeds the counting bound " +
                                std::to_string(bound));
    CountField F = CountField::make(p, k);
    std::vector<int64_t> h(curve.poly.degree() + 1);
    for (size_t i = 0; i < h.size(); ++i) {
        BigInt c = curve.poly.coeff(static_cast<int>(i)) % p;
        h[i] = fp::norm_coeff(c.convert_to<int64_t>(), p);
    }
    if (h.back() == 0)
        throw std::logic_error("point_count: leading coefficient vanished mod a good prime");
    int64_t affine = F.q + (parallel ? chi_sum_parallel(F, h) : chi_sum_serial(F, h));
    int64_t at_infinity;
    if (curve.poly.degree() % 2 == 1)
        at_infinity = 1;
    else
        at_infinity = F.chi[h.back()] == 1 ? 2 : 0;
    return affine + at_infinity;
}

}  // namespace rmc
