#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rmc/counting.hpp"

namespace rmc {

std::string LPolynomial::to_string() const {
    std::ostringstream os;
    os << "1";
    for (size_t i = 1; i < coeffs.size(); ++i) {
        int64_t b = coeffs[i];
        if (b == 0) continue;
        os << (b < 0 ? " - " : " + ");
        int64_t mag = b < 0 ? -b : b;
        if (mag != 1) os << mag << "*";
        os << "T";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

LPolynomial l_polynomial(const SpecializedCurve& curve, int64_t p, bool parallel,
                         int64_t bound) {
    int g = curve.genus;
    if (g < 1) throw std::invalid_argument("l_polynomial: genus must be >= 1");
    if (pow_i64(p, g) > bound)
        throw std::domain_error("l_polynomial: p^genus exceeds the counting bound");
    // power sums of the 2g Frobenius roots from the counts
    std::vector<BigInt> s(g + 1, 0);
    for (int k = 1; k <= g; ++k) {
        int64_t Nk = point_count(curve, p, k, parallel, bound);
        s[k] = pow_i64(p, k) + 1 - Nk;
    }
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} s_i
    std::vector<BigInt> e(g + 1, 0);
    e[0] = 1;
    for (int k = 1; k <= g; ++k) {
        BigInt acc = 0;
        int sign = 1;
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[k - i] * s[i];
            sign = -sign;
        }
        if (acc % k != 0) throw std::logic_error("l_polynomial: Newton identity not integral");
        e[k] = acc / k;
    }
    LPolynomial L;
    L.p = p;
    L.genus = g;
    L.coeffs.assign(2 * g + 1, 0);
    L.coeffs[0] = 1;
    for (int k = 1; k <= g; ++k) {
        BigInt b = (k % 2 == 0) ? e[k] : -e[k];
        L.coeffs[k] = b.convert_to<int64_t>();
    }
    for (int i = g - 1; i >= 0; --i) {
        BigInt b = pow_i64(p, g - i) * L.coeffs[i];
        L.coeffs[2 * g - i] = b.convert_to<int64_t>();
    }
    if (!functional_equation_holds(L))
        throw std::logic_error("l_polynomial: functional equation violated");
    if (!weil_bound_holds(L))
        throw std::logic_error("l_polynomial: Weil bound violated (bad counts?)");
    return L;
}

bool functional_equation_holds(const LPolynomial& L) {
    int g = L.genus;
    if (static_cast<int>(L.coeffs.size()) != 2 * g + 1 || L.coeffs[0] != 1) return false;
    for (int i = 0; i <= g; ++i) {
        BigInt expect = pow_i64(L.p, g - i) * L.coeffs[i];
        if (BigInt(L.coeffs[2 * g - i]) != expect) return false;
    }
    return true;
}

namespace {

// sign of a + b*sqrt(p), exact
int sign_plus_root(int64_t a, int64_t b, int64_t p) {
    if (a >= 0 && b >= 0) return (a == 0 && b == 0) ? 0 : 1;
    if (a <= 0 && b <= 0) return (a == 0 && b == 0) ? 0 : -1;
    BigInt a2 = BigInt(a) * a, b2p = BigInt(b) * b * p;
    if (a > 0) return a2 > b2p ? 1 : (a2 == b2p ? 0 : -1);
    return a2 < b2p ? 1 : (a2 == b2p ? 0 : -1);
}

}  // namespace

bool weil_bound_holds(const LPolynomial& L) {
    int64_t p = L.p;
    if (L.genus == 1) {
        // complex conjugate roots of modulus p^{-1/2}: b1^2 <= 4p
        BigInt b1 = L.coeffs[1];
        return b1 * b1 <= 4 * BigInt(p);
    }
    if (L.genus == 2) {
        // L = prod_j (1 - beta_j T + p T^2) with beta_j real in [-2 sqrt p,
        // 2 sqrt p]; the beta_j are the roots of x^2 + b1 x + (b2 - 2p).
        int64_t b1 = L.coeffs[1], b2 = L.coeffs[2];
        BigInt disc = BigInt(b1) * b1 - 4 * (BigInt(b2) - 2 * p);
        if (disc < 0) return false;
        if (BigInt(b1) * b1 > 16 * BigInt(p)) return false;  // vertex outside
        // values at the endpoints +-2 sqrt p must be >= 0
        if (sign_plus_root(2 * p + b2, b1, p) < 0) return false;
        if (sign_plus_root(2 * p + b2, -b1, p) < 0) return false;
        return true;
    }
    // higher genus: the |b1| <= 2g sqrt(p) necessary condition
    BigInt b1 = L.coeffs[1];
    return b1 * b1 <= 4 * BigInt(L.genus) * L.genus * p;
}

RmConsistency rm_consistency(const LPolynomial& L, const ResidueData& res) {
    if (!functional_equation_holds(L))
        throw std::invalid_argument("rm_consistency: input violates the functional equation");
    GField F = res.field();
    int64_t ell = res.ell;
    int g = L.genus;
    RmConsistency out;

    auto fe = [&](int64_t v) { return F.from_int(v); };
    std::vector<GField::Elem> lred;
    for (int64_t b : L.coeffs) lred.push_back(fe(b));

    if (g == 1) {
        out.ok = true;
        out.quads.push_back({lred[0], lred[1], lred[2]});
        return out;
    }

    if (res.inertia_k == 1 && g % ell != 0) {
        // total collapse: L mod ell = Q^g for a quadratic Q = 1 + q1 T + q2 T^2
        int64_t ginv = fp::inv_mod(g % ell, ell);
        int64_t b1 = fp::norm_coeff(L.coeffs[1] % ell, ell);
        int64_t b2 = fp::norm_coeff(L.coeffs[2] % ell, ell);
        int64_t q1 = b1 * ginv % ell;
        // T^2 coefficient of Q^g: g*q2 + C(g,2)*q1^2
        int64_t c2 = static_cast<int64_t>(g) * (g - 1) / 2 % ell;
        int64_t q2 = fp::norm_coeff((b2 - c2 * q1 % ell * q1) % ell * ginv, ell);
        // verify by expanding (1 + q1 T + q2 T^2)^g
        FpPoly Q{1, q1, q2};
        FpPoly pw{1};
        for (int i = 0; i < g; ++i) pw = fp::mul(pw, Q, ell);
        FpPoly lmod;
        for (int64_t b : L.coeffs) lmod.push_back(fp::norm_coeff(b % ell, ell));
        lmod = fp::trim(std::move(lmod));
        if (pw == lmod) {
            out.ok = true;
            out.quads.push_back({fe(1), fe(q1), fe(q2)});
        }
        return out;
    }

    // k > 1: exhaustive search for constant-term-1 quadratic factors
    out.quads = collapse_candidates(L, res);
    out.ok = !out.quads.empty();
    return out;
}

namespace {

using GfPoly = std::vector<GField::Elem>;  // little-endian over the residue field

// quotient of poly by (1 + u T + v T^2); nullopt when it does not divide
std::optional<GfPoly> divide_quad(const GField& F, const GfPoly& poly,
                                  const GField::Elem& u, const GField::Elem& v) {
    GfPoly rem = poly;
    GfPoly quot(poly.size() >= 2 ? poly.size() - 2 : 0, F.zero());
    GField::Elem vinv = F.inv(v);
    for (int i = static_cast<int>(rem.size()) - 1; i >= 2; --i) {
        GField::Elem c = F.mul(rem[i], vinv);
        if (F.is_zero(c)) continue;
        quot[i - 2] = c;
        rem[i] = F.zero();
        rem[i - 1] = F.sub(rem[i - 1], F.mul(c, u));
        rem[i - 2] = F.sub(rem[i - 2], c);
    }
    if (!F.is_zero(rem[0]) || !F.is_zero(rem[1])) return std::nullopt;
    return quot;
}

GField::Elem elem_from_index(const GField& F, int64_t idx) {
    GField::Elem e = F.zero();
    for (int d = 0; d < F.k(); ++d) {
        e[d] = idx % F.p();
        idx /= F.p();
    }
    return e;
}

bool splits_into_unit_quadratics(const GField& F, const GfPoly& poly) {
    if (poly.size() == 1) return !F.is_zero(poly[0]);
    if (poly.size() % 2 == 0) return false;
    for (int64_t iu = 0; iu < F.q(); ++iu)
        for (int64_t iv = 1; iv < F.q(); ++iv) {
            auto q = divide_quad(F, poly, elem_from_index(F, iu), elem_from_index(F, iv));
            if (q && splits_into_unit_quadratics(F, *q)) return true;
        }
    return false;
}

}  // namespace

std::vector<std::array<GField::Elem, 3>> collapse_candidates(const LPolynomial& L,
                                                             const ResidueData& res) {
    if (!functional_equation_holds(L))
        throw std::invalid_argument(
            "collapse_candidates: input violates the functional equation");
    GField F = res.field();
    GfPoly lred;
    for (int64_t b : L.coeffs) {
        BigInt c = BigInt(b) % res.ell;
        lred.push_back(F.from_int(c.convert_to<int64_t>()));
    }
    std::vector<std::array<GField::Elem, 3>> out;
    if (L.genus == 1) {
        out.push_back({lred[0], lred[1], lred[2]});
        return out;
    }
    for (int64_t iu = 0; iu < F.q(); ++iu)
        for (int64_t iv = 1; iv < F.q(); ++iv) {
            GField::Elem u = elem_from_index(F, iu), v = elem_from_index(F, iv);
            auto q = divide_quad(F, lred, u, v);
            if (q && splits_into_unit_quadratics(F, *q)) out.push_back({F.one(), u, v});
        }
    return out;
}

}  // namespace rmc
