#include "rmc/curves.hpp"

#include <algorithm>
#include <sstream>

namespace rmc {

int TPoly::max_degree_t() const {
    int m = 0;
    for (const auto& c : coeffs) m = std::max(m, c.degree());
    return m;
}

std::vector<BigRat> TPoly::eval_t(const BigRat& t0) const {
    std::vector<BigRat> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c.eval(t0));
    return out;
}

std::string TPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree_x(); i >= 0; --i) {
        const IntPoly& c = coeffs[i];
        if (c.is_zero()) continue;
        std::string cs = c.to_string("t");
        if (first) first = false;
        else os << " + ";
        if (i == 0) {
            os << (c.degree() > 0 ? "(" + cs + ")" : cs);
            continue;
        }
        if (c.degree() == 0 && c.coeff(0) == 1) {
        } else if (c.degree() == 0 && c.coeff(0) == -1) {
            os << "-";
        } else if (c.degree() == 0) {
            os << cs << "*";
        } else {
            os << "(" << cs << ")*";
        }
        os << "X";
        if (i > 1) os << "^" << i;
    }
    if (first) return "0";
    return os.str();
}

IntPoly disc_x_in_t(const TPoly& h) {
    int m = h.degree_x();
    if (m < 2) throw std::invalid_argument("disc_x_in_t: degree in X must be >= 2");
    if (h.coeffs[m].degree() != 0)
        throw std::invalid_argument("disc_x_in_t: leading X-coefficient must be constant in t");
    int bound = (2 * m - 1) * h.max_degree_t();
    int points = bound + 1;
    std::vector<BigRat> ts, vals;
    for (int i = 0; i < points; ++i) {
        BigInt t0 = i;
        std::vector<BigInt> c(m + 1);
        for (int j = 0; j <= m; ++j) c[j] = h.coeffs[j].eval(t0);
        IntPoly ht{std::move(c)};
        ts.emplace_back(t0);
        vals.emplace_back(discriminant(ht));
    }
    // Newton's divided differences, then expansion to the monomial basis.
    std::vector<BigRat> dd = vals;
    for (int level = 1; level < points; ++level)
        for (int i = points - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - level]);
    std::vector<BigRat> poly{dd[points - 1]};
    for (int i = points - 2; i >= 0; --i) {
        // poly = poly * (t - ts[i]) + dd[i]
        poly.insert(poly.begin(), BigRat(0));
        for (size_t j = 0; j + 1 < poly.size(); ++j) poly[j] -= ts[i] * poly[j + 1];
        poly[0] += dd[i];
    }
    std::vector<BigInt> out(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        if (denominator(poly[i]) != 1)
            throw std::logic_error("disc_x_in_t: interpolation gave a non-integer");
        out[i] = numerator(poly[i]);
    }
    return IntPoly(std::move(out));
}

std::string CurveFamily::name() const {
    switch (kind) {
        case FamilyKind::Legendre: return "legendre";
        case FamilyKind::J1728: return "j1728";
        case FamilyKind::TTVOdd: return "ttv-odd:" + std::to_string(r);
        case FamilyKind::TTVEven: return "ttv-even:" + std::to_string(r);
    }
    return "?";
}

std::pair<IntPoly, IntPoly> ttv_polys(int64_t r) {
    if (r < 3 || r % 2 == 0 || !is_prime_i64(r))
        throw std::invalid_argument("ttv_polys: r must be an odd prime");
    // g = char poly of -theta_r: psi_r(-X) made monic
    IntPoly g = ring_for(r).min_poly().compose_neg();
    if (g.leading() < 0) g = -g;
    IntPoly xsq_minus_2({BigInt(-2), BigInt(0), BigInt(1)});
    IntPoly f = IntPoly::monomial(1) * g.compose(xsq_minus_2);
    return {g, f};
}

namespace {

TPoly legendre_hpoly() {
    // X(X-1)(X-t) = X^3 - (1+t)X^2 + tX
    TPoly h;
    h.coeffs.resize(4);
    h.coeffs[0] = IntPoly();
    h.coeffs[1] = IntPoly({BigInt(0), BigInt(1)});
    h.coeffs[2] = IntPoly({BigInt(-1), BigInt(-1)});
    h.coeffs[3] = IntPoly::constant(1);
    return h;
}

TPoly j1728_hpoly() {
    // X^3 - 3t X + 2t^2: j-invariant 1728/(1-t), quasi-unipotent of order 4
    // at t = 0, unipotent at t = 1, order 3 at infinity;
    // disc_X = -108 t^3 (t - 1).
    TPoly h;
    h.coeffs.resize(4);
    h.coeffs[0] = IntPoly({BigInt(0), BigInt(0), BigInt(2)});
    h.coeffs[1] = IntPoly({BigInt(0), BigInt(-3)});
    h.coeffs[2] = IntPoly();
    h.coeffs[3] = IntPoly::constant(1);
    return h;
}

TPoly ttv_even_hpoly(int64_t r) {
    // f_r(X) + 2 - 4t
    IntPoly f = ttv_polys(r).second;
    TPoly h;
    h.coeffs.resize(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) h.coeffs[i] = IntPoly::constant(f.coeff(i));
    h.coeffs[0] = h.coeffs[0] + IntPoly({BigInt(2), BigInt(-4)});
    return h;
}

TPoly ttv_odd_hpoly(int64_t r) {
    // (X + 2)(f_r(X) + 2 - 4t)
    TPoly e = ttv_even_hpoly(r);
    TPoly h;
    h.coeffs.assign(e.coeffs.size() + 1, IntPoly());
    for (size_t i = 0; i < e.coeffs.size(); ++i) {
        h.coeffs[i + 1] = h.coeffs[i + 1] + e.coeffs[i];
        h.coeffs[i] = h.coeffs[i] + e.coeffs[i] * BigInt(2);
    }
    return h;
}

}  // namespace

CurveFamily family_from_kind(FamilyKind kind, int64_t r) {
    CurveFamily fam;
    fam.kind = kind;
    switch (kind) {
        case FamilyKind::Legendre: {
            fam.hpoly = legendre_hpoly();
            fam.ring_spec = ring_for(2);
            const Ring& R = fam.ring_spec;
            fam.expected_traces = {R.integer(2), R.integer(2), R.integer(-2)};
            fam.expected_orders = {1, 1, 2};
            break;
        }
        case FamilyKind::J1728: {
            fam.hpoly = j1728_hpoly();
            fam.ring_spec = ring_for(12);
            const Ring& R = fam.ring_spec;
            fam.expected_traces = {R.integer(0), R.integer(2), R.integer(-1)};
            fam.expected_orders = {4, 1, 3};
            break;
        }
        case FamilyKind::TTVOdd: {
            fam.r = r;
            fam.hpoly = ttv_odd_hpoly(r);
            fam.ring_spec = ring_for(r);
            const Ring& R = fam.ring_spec;
            fam.expected_traces = {R.integer(2), R.integer(2), R.theta()};
            fam.expected_orders = {1, 1, r};
            break;
        }
        case FamilyKind::TTVEven: {
            fam.r = r;
            fam.hpoly = ttv_even_hpoly(r);
            fam.ring_spec = ring_for(2 * r);
            const Ring& R = fam.ring_spec;
            fam.expected_traces = {R.integer(2), R.integer(2), R.theta()};
            fam.expected_orders = {1, 1, 2 * r};
            break;
        }
    }
    return fam;
}

CurveFamily family_from_name(const std::string& name) {
    if (name == "legendre") return family_from_kind(FamilyKind::Legendre);
    if (name == "j1728") return family_from_kind(FamilyKind::J1728);
    auto parse_r = [&](size_t prefix_len) {
        int64_t r = 0;
        try {
            size_t pos = 0;
            std::string tail = name.substr(prefix_len);
            r = std::stoll(tail, &pos);
            if (pos != tail.size()) r = 0;
        } catch (const std::logic_error&) {
            r = 0;
        }
        if (r == 0) throw std::invalid_argument("bad family syntax: " + name);
        return r;
    };
    if (name.rfind("ttv-odd:", 0) == 0)
        return family_from_kind(FamilyKind::TTVOdd, parse_r(8));
    if (name.rfind("ttv-even:", 0) == 0)
        return family_from_kind(FamilyKind::TTVEven, parse_r(9));
    throw std::invalid_argument("unknown family: " + name +
                                " (expected legendre | j1728 | ttv-odd:<r> | ttv-even:<r>)");
}

CurveFamily family_from_triple(const AdmissibleTriple& t) {
    const Ring& R = t.ring();
    // Try both sign-twist patterns; matching is on trace data alone, so any
    // Galois conjugate of theta in the z slot is accepted.
    for (int sign : {+1, -1}) {
        RingElt x = sign > 0 ? t.traces[0] : -t.traces[0];
        RingElt y = t.traces[1];
        RingElt z = sign > 0 ? t.traces[2] : -t.traces[2];
        if (y != R.integer(2)) continue;
        OrderClass o0 = classify_trace(x);
        OrderClass oz = classify_trace(z);
        if (o0.kind == OrderKind::NotAdmissible || oz.kind == OrderKind::NotAdmissible)
            continue;
        if (o0.order == 1) {
            if (x != R.integer(2)) continue;
            int64_t m = oz.order;
            if (m == 2 && z == R.integer(-2)) return family_from_kind(FamilyKind::Legendre);
            if (m >= 3 && m % 2 == 1 && is_prime_i64(m))
                return family_from_kind(FamilyKind::TTVOdd, m);
            if (m >= 6 && m % 2 == 0 && is_prime_i64(m / 2) && m / 2 >= 3)
                return family_from_kind(FamilyKind::TTVEven, m / 2);
        } else if (o0.order == 4 && oz.order == 3) {
            return family_from_kind(FamilyKind::J1728);
        }
    }
    throw UnsupportedFamily(
        "triple is admissible but matches none of the supported families "
        "(legendre, j1728, ttv-odd, ttv-even)");
}

SpecializedCurve specialize(const CurveFamily& fam, const BigRat& x0) {
    if (x0 == 0 || x0 == 1)
        throw std::domain_error("specialize: degenerate fibre at x0 = " +
                                x0.str());
    BigInt q = denominator(x0);
    std::vector<BigRat> rc = fam.hpoly.eval_t(x0);
    // clear denominators with the square q^2 so y -> q*y stays an isomorphism
    std::vector<BigInt> c(rc.size());
    BigRat qsq{q * q};
    for (size_t i = 0; i < rc.size(); ++i) {
        BigRat v = rc[i] * qsq;
        if (denominator(v) != 1)
            throw std::logic_error("specialize: q^2 did not clear the denominators");
        c[i] = numerator(v);
    }
    IntPoly h{std::move(c)};
    if (h.degree() != fam.hpoly.degree_x())
        throw std::logic_error("specialize: degree dropped");
    // strip the largest square factor of the content (another y-scaling)
    BigInt content = h.content();
    BigInt w = 1;
    for (const auto& p : prime_factors(content)) {
        int v = 0;
        BigInt m = content;
        while (m % p == 0) { m /= p; ++v; }
        for (int i = 0; i < v / 2; ++i) w *= p;
    }
    if (w > 1) h = h.divide_exact_scalar(w * w);
    if (!is_squarefree(h))
        throw std::domain_error("specialize: fibre at x0 = " + x0.str() +
                                " is not squarefree");
    SpecializedCurve out;
    out.poly = h;
    out.genus = (h.degree() - 1) / 2;
    out.x0 = x0;
    std::vector<BigInt> bad{2};
    for (const auto& p : prime_factors(q)) bad.push_back(p);
    for (const auto& p : prime_factors(discriminant(h))) bad.push_back(p);
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    out.bad_primes = std::move(bad);
    return out;
}

}  // namespace rmc
