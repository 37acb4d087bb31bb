#include "rmc/intpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace rmc {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::constant(BigInt c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::monomial(int deg, BigInt c) {
    IntPoly p;
    if (c != 0) {
        p.c_.assign(deg + 1, 0);
        p.c_[deg] = std::move(c);
    }
    return p;
}

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& IntPoly::coeff(int i) const {
    static const BigInt zero = 0;
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

const BigInt& IntPoly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c_.empty() || o.c_.empty()) return IntPoly();
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    std::vector<BigInt> r = c_;
    for (auto& x : r) x = -x;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const BigInt& s) const {
    std::vector<BigInt> r = c_;
    for (auto& x : r) x *= s;
    return IntPoly(std::move(r));
}

BigInt IntPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BigRat IntPoly::eval(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigRat(*it);
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<BigInt> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigInt(i);
    return IntPoly(std::move(r));
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const auto& x : c_) g = gcd(g, x);
    return g < 0 ? BigInt(-g) : g;
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<BigInt> rem = c_;
    int dd = divisor.degree();
    int qd = degree() - dd;
    if (is_zero()) return IntPoly();
    if (qd < 0) throw std::domain_error("inexact polynomial division");
    std::vector<BigInt> q(qd + 1, 0);
    for (int i = qd; i >= 0; --i) {
        BigInt lead = rem[i + dd];
        if (lead % divisor.leading() != 0)
            throw std::domain_error("inexact polynomial division");
        BigInt f = lead / divisor.leading();
        q[i] = f;
        for (int j = 0; j <= dd; ++j) rem[i + j] -= f * divisor.coeffs()[j];
    }
    for (const auto& x : rem)
        if (x != 0) throw std::domain_error("inexact polynomial division");
    return IntPoly(std::move(q));
}

IntPoly IntPoly::divide_exact_scalar(const BigInt& s) const {
    if (s == 0) throw std::domain_error("division by zero");
    std::vector<BigInt> r = c_;
    for (auto& x : r) {
        if (x % s != 0) throw std::domain_error("inexact scalar division");
        x /= s;
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::compose_neg() const {
    std::vector<BigInt> r = c_;
    for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::compose(const IntPoly& q) const {
    IntPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * q + IntPoly::constant(*it);
    return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& a = c_[i];
        if (a == 0) continue;
        BigInt mag = a < 0 ? BigInt(-a) : a;
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Primitive part with positive leading coefficient.
IntPoly normalize_primitive(const IntPoly& p) {
    if (p.is_zero()) return p;
    IntPoly q = p.divide_exact_scalar(p.content());
    if (q.leading() < 0) q = -q;
    return q;
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    // Euclid over Q via pseudo-remainders, with content stripping to keep
    // coefficients small.
    IntPoly f = normalize_primitive(a), g = normalize_primitive(b);
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        // pseudo-remainder of f by g
        IntPoly r = f;
        int dg = g.degree();
        while (!r.is_zero() && r.degree() >= dg) {
            int shift = r.degree() - dg;
            r = r * g.leading() - g * IntPoly::monomial(shift, r.leading());
        }
        f = g;
        g = normalize_primitive(r);
    }
    return normalize_primitive(f);
}

bool is_squarefree(const IntPoly& p) {
    if (p.is_zero()) return false;
    if (p.degree() == 0) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

BigInt resultant(const IntPoly& a, const IntPoly& b) {
    int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        BigInt r = 1;
        for (int i = 0; i < n; ++i) r *= a.coeff(0);
        return r;
    }
    if (n == 0) {
        BigInt r = 1;
        for (int i = 0; i < m; ++i) r *= b.coeff(0);
        return r;
    }
    int size = m + n;
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.coeff(n - j);

    // Bareiss fraction-free elimination; the final pivot is the determinant.
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < size; ++k) {
        if (s[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < size; ++i)
                if (s[i][k] != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            std::swap(s[k], s[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                BigInt num = s[i][j] * s[k][k] - s[i][k] * s[k][j];
                s[i][j] = num / prev;  // exact by Bareiss
            }
            s[i][k] = 0;
        }
        prev = s[k][k];
    }
    return sign > 0 ? s[size - 1][size - 1] : -s[size - 1][size - 1];
}

BigInt discriminant(const IntPoly& p) {
    int d = p.degree();
    if (d < 1) throw std::domain_error("discriminant needs degree >= 1");
    if (d == 1) return 1;
    BigInt res = resultant(p, p.derivative());
    BigInt q = res / p.leading();
    if (q * p.leading() != res) throw std::domain_error("discriminant: inexact division");
    int e = d * (d - 1) / 2;
    return (e % 2 == 0) ? q : -q;
}

}  // namespace rmc
