#include "rmc/gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rmc {

namespace fp {

int64_t norm_coeff(int64_t c, int64_t p) {
    c %= p;
    return c < 0 ? c + p : c;
}

FpPoly trim(FpPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, int64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    return trim(std::move(r));
}

FpPoly sub(const FpPoly& a, const FpPoly& b, int64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = norm_coeff(r[i] - b[i], p);
    return trim(std::move(r));
}

FpPoly mul(const FpPoly& a, const FpPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(std::move(r));
}

FpPoly scalar_mul(const FpPoly& a, int64_t s, int64_t p) {
    s = norm_coeff(s, p);
    FpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s % p;
    return trim(std::move(r));
}

int64_t inv_mod(int64_t a, int64_t p) {
    a = norm_coeff(a, p);
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    int64_t t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return norm_coeff(t, p);
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, int64_t p) {
    FpPoly bb = trim(b);
    if (bb.empty()) throw std::domain_error("polynomial division by zero");
    FpPoly rem = trim(a);
    int db = deg(bb);
    if (deg(rem) < db) return {{}, rem};
    int64_t lcinv = inv_mod(bb.back(), p);
    FpPoly q(deg(rem) - db + 1, 0);
    while (deg(rem) >= db) {
        int shift = deg(rem) - db;
        int64_t f = rem.back() * lcinv % p;
        q[shift] = f;
        for (int j = 0; j <= db; ++j)
            rem[shift + j] = norm_coeff(rem[shift + j] - f * bb[j], p);
        rem = trim(std::move(rem));
    }
    return {trim(std::move(q)), rem};
}

FpPoly mod(const FpPoly& a, const FpPoly& b, int64_t p) { return divmod(a, b, p).second; }

FpPoly make_monic(const FpPoly& f, int64_t p) {
    FpPoly g = trim(f);
    if (g.empty()) return g;
    return scalar_mul(g, inv_mod(g.back(), p), p);
}

FpPoly gcd(FpPoly a, FpPoly b, int64_t p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        FpPoly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

FpPoly powmod(const FpPoly& base, int64_t e, const FpPoly& m, int64_t p) {
    FpPoly result{1};
    FpPoly b = mod(base, m, p);
    while (e > 0) {
        if (e & 1) result = mod(mul(result, b, p), m, p);
        b = mod(mul(b, b, p), m, p);
        e >>= 1;
    }
    return result;
}

int64_t eval(const FpPoly& f, int64_t x, int64_t p) {
    int64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
    return norm_coeff(acc, p);
}

std::string to_string(const FpPoly& f, const std::string& var) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(f); i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || f[i] != 1) os << f[i];
        if (i > 0) {
            if (f[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace fp

namespace {

using namespace fp;

// Squarefree decomposition in characteristic p: list of (g_i, multiplicity)
// with g_i squarefree, pairwise coprime, and f = prod g_i^mult (up to a unit).
void squarefree_decompose(const FpPoly& f, int64_t p, int mult,
                          std::vector<std::pair<FpPoly, int>>& out) {
    FpPoly w = make_monic(f, p);
    if (deg(w) <= 0) return;
    FpPoly d;
    {
        FpPoly der(w.size() - 1, 0);
        for (size_t i = 1; i < w.size(); ++i) der[i - 1] = w[i] * (i % p) % p;
        d = trim(std::move(der));
    }
    if (d.empty()) {
        // f = g(X^p): recurse with multiplicity scaled by p
        FpPoly g((deg(w) / p) + 1, 0);
        for (int i = 0; i <= deg(w) / p; ++i) g[i] = w[i * p];
        squarefree_decompose(trim(std::move(g)), p, mult * static_cast<int>(p), out);
        return;
    }
    FpPoly c = gcd(w, d, p);
    FpPoly sqf = divmod(w, c, p).first;  // squarefree part
    int m = 1;
    while (deg(sqf) > 0) {
        FpPoly y = gcd(sqf, c, p);
        FpPoly factor = divmod(sqf, y, p).first;
        if (deg(factor) > 0) out.emplace_back(factor, mult * m);
        sqf = y;
        c = divmod(c, y, p).first;
        ++m;
    }
    if (deg(c) > 0) squarefree_decompose(c, p, mult, out);
}

// Deterministic sequence of candidate polynomials for equal-degree splitting.
FpPoly edf_candidate(int64_t seq, int maxdeg, int64_t p) {
    FpPoly r;
    int64_t v = seq;
    for (int i = 0; i <= maxdeg; ++i) {
        r.push_back(v % p);
        v = (v * 1103515245 + 12345) & 0x7fffffff;
    }
    return trim(std::move(r));
}

void equal_degree_split(const FpPoly& f, int d, int64_t p, std::vector<FpPoly>& out) {
    if (deg(f) == d) {
        out.push_back(make_monic(f, p));
        return;
    }
    // Cantor-Zassenhaus: gcd(f, c^((q^d - 1)/2) - 1) for candidates c.
    int64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= p;
    int64_t e = (qd - 1) / 2;
    for (int64_t seq = 1;; ++seq) {
        FpPoly c = edf_candidate(seq * 2654435761LL % 1000003 + seq, deg(f) - 1, p);
        if (deg(c) < 1) continue;
        FpPoly g = gcd(f, c, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            equal_degree_split(g, d, p, out);
            equal_degree_split(divmod(f, g, p).first, d, p, out);
            return;
        }
        FpPoly h = powmod(c, e, f, p);
        h = sub(h, FpPoly{1}, p);
        g = gcd(f, h, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            equal_degree_split(g, d, p, out);
            equal_degree_split(divmod(f, g, p).first, d, p, out);
            return;
        }
    }
}

// Factor a monic squarefree polynomial into monic irreducibles.
std::vector<FpPoly> factor_squarefree(FpPoly f, int64_t p) {
    std::vector<FpPoly> out;
    // Distinct-degree: strip factors whose irreducible pieces have degree d.
    FpPoly x{0, 1};
    FpPoly h = mod(x, f, p);  // X^(p^d) mod f, iterated
    for (int d = 1; deg(f) > 0 && d <= deg(f); ++d) {
        h = powmod(h, p, f, p);
        FpPoly g = gcd(sub(h, x, p), f, p);
        if (deg(g) > 0) {
            equal_degree_split(g, d, p, out);
            f = divmod(f, g, p).first;
            h = mod(h, f, p);
        }
        if (2 * (d + 1) > deg(f) && deg(f) > 0) {
            out.push_back(make_monic(f, p));
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const FpPoly& f, int64_t p) {
    FpPoly g = trim(f);
    for (auto& c : g) c = norm_coeff(c, p);
    g = trim(std::move(g));
    if (deg(g) < 1) return {};
    std::vector<std::pair<FpPoly, int>> sqf;
    squarefree_decompose(g, p, 1, sqf);
    std::vector<FpFactor> out;
    for (auto& [part, mult] : sqf)
        for (auto& irr : factor_squarefree(make_monic(part, p), p))
            out.push_back({irr, mult});
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        return a.poly < b.poly;
    });
    return out;
}

bool is_irreducible_mod_p(const FpPoly& f, int64_t p) {
    FpPoly g = make_monic(f, p);
    if (deg(g) < 1) return false;
    auto factors = factor_mod_p(g, p);
    return factors.size() == 1 && factors[0].multiplicity == 1;
}

GField::GField(int64_t p, FpPoly modulus) : p_(p), mod_(fp::make_monic(modulus, p)) {
    k_ = fp::deg(mod_);
    if (k_ < 1) throw std::invalid_argument("GField: modulus must have degree >= 1");
    q_ = 1;
    for (int i = 0; i < k_; ++i) q_ *= p_;
}

GField::Elem GField::from_int(int64_t v) const {
    Elem e(k_, 0);
    e[0] = fp::norm_coeff(v, p_);
    return e;
}

GField::Elem GField::gen() const {
    Elem e(k_, 0);
    if (k_ == 1) {
        // class of X is the residue of -mod_[0]
        e[0] = fp::norm_coeff(-mod_[0], p_);
    } else {
        e[1] = 1;
    }
    return e;
}

GField::Elem GField::add(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (int i = 0; i < k_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

GField::Elem GField::sub(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (int i = 0; i < k_; ++i) r[i] = fp::norm_coeff(a[i] - b[i], p_);
    return r;
}

GField::Elem GField::neg(const Elem& a) const {
    Elem r(k_);
    for (int i = 0; i < k_; ++i) r[i] = fp::norm_coeff(-a[i], p_);
    return r;
}

GField::Elem GField::mul(const Elem& a, const Elem& b) const {
    FpPoly prod = fp::mul(FpPoly(a.begin(), a.end()), FpPoly(b.begin(), b.end()), p_);
    FpPoly rem = fp::mod(prod, mod_, p_);
    Elem r(k_, 0);
    for (size_t i = 0; i < rem.size(); ++i) r[i] = rem[i];
    return r;
}

GField::Elem GField::pow(Elem a, int64_t e) const {
    Elem r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

GField::Elem GField::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("GField: inverse of zero");
    return pow(a, q_ - 2);
}

bool GField::is_zero(const Elem& a) const {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

GField::Elem GField::eval_poly(const FpPoly& f, const Elem& x) const {
    Elem acc = zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it)
        acc = add(mul(acc, x), from_int(*it));
    return acc;
}

int GField::quad_char(const Elem& a) const {
    if (is_zero(a)) return 0;
    Elem r = pow(a, (q_ - 1) / 2);
    return r == one() ? 1 : -1;
}

std::string GField::to_string(const Elem& a) const {
    if (k_ == 1) return std::to_string(a[0]);
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < k_; ++i) {
        if (i) os << ",";
        os << a[i];
    }
    os << "]";
    return os.str();
}

}  // namespace rmc
