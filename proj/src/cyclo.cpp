#include "rmc/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rmc {

struct Ring::Data {
    int64_t n;
    int degree;
    IntPoly min_poly;
    std::vector<int64_t> galois_js;          // j coprime to n, j < n/2 (or {1})
    mutable std::vector<RingElt> conj_cache;  // filled on first use
    mutable std::once_flag conj_once;
};

namespace {

IntPoly cyclotomic_poly(int64_t n) {
    static std::map<int64_t, IntPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<IntPoly(int64_t)> build = [&](int64_t m) -> IntPoly {
        auto hit = cache.find(m);
        if (hit != cache.end()) return hit->second;
        // X^m - 1 divided by the cyclotomic polynomials of proper divisors
        std::vector<BigInt> xm(m + 1, 0);
        xm[0] = -1;
        xm[m] = 1;
        IntPoly num{std::vector<BigInt>(xm)};
        for (int64_t d = 1; d < m; ++d)
            if (m % d == 0) num = num.divide_exact(build(d));
        cache[m] = num;
        return num;
    };
    return build(n);
}

std::vector<BigInt> pascal_row(int k) {
    std::vector<BigInt> row(k + 1, 1);
    for (int i = 1; i <= k; ++i) row[i] = row[i - 1] * (k - i + 1) / i;
    return row;
}

// psi_n of degree d from Phi_n(z) = z^d psi_n(z + 1/z), n >= 3.
IntPoly real_min_poly(int64_t n) {
    if (n == 1) return IntPoly({BigInt(-2), BigInt(1)});
    if (n == 2) return IntPoly({BigInt(2), BigInt(1)});
    int d = static_cast<int>(half_phi_degree(n));
    IntPoly phi = cyclotomic_poly(n);
    std::vector<BigInt> p(2 * d + 1, 0);
    for (int i = 0; i <= phi.degree(); ++i) p[i] = phi.coeff(i);
    std::vector<BigInt> psi(d + 1, 0);
    for (int k = d; k >= 0; --k) {
        BigInt a = p[d + k];
        psi[k] = a;
        if (a == 0) continue;
        auto binom = pascal_row(k);
        for (int i = 0; i <= k; ++i) p[d + k - 2 * i] -= a * binom[i];
    }
    for (const auto& r : p)
        if (r != 0) throw std::logic_error("real_min_poly: extraction left a remainder");
    return IntPoly(std::move(psi));
}

std::vector<int64_t> galois_indices(int64_t n) {
    if (n <= 2) return {1};
    std::vector<int64_t> js;
    for (int64_t j = 1; 2 * j < n; ++j)
        if (std::gcd(j, n) == 1) js.push_back(j);
    return js;
}

}  // namespace

Ring ring_for(int64_t n) {
    if (n < 1) throw std::invalid_argument("ring_for: conductor must be positive");
    static std::map<int64_t, std::shared_ptr<const Ring::Data>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto data = std::make_shared<Ring::Data>();
        data->n = n;
        data->degree = static_cast<int>(half_phi_degree(n));
        data->min_poly = real_min_poly(n);
        data->galois_js = galois_indices(n);
        it = cache.emplace(n, std::move(data)).first;
    }
    return Ring(it->second);
}

int64_t Ring::n() const { return data_->n; }
int Ring::degree() const { return data_->degree; }
const IntPoly& Ring::min_poly() const { return data_->min_poly; }

RingElt Ring::zero() const { return RingElt(*this, std::vector<BigInt>(degree(), 0)); }
RingElt Ring::one() const { return integer(1); }

RingElt Ring::integer(BigInt v) const {
    std::vector<BigInt> c(degree(), 0);
    c[0] = std::move(v);
    return RingElt(*this, std::move(c));
}

RingElt Ring::theta() const {
    if (degree() == 1) {
        // theta is rational here: 2, -2, -1, 0, 1 for n = 1, 2, 3, 4, 6
        return integer(-min_poly().coeff(0));
    }
    std::vector<BigInt> c(degree(), 0);
    c[1] = 1;
    return RingElt(*this, std::move(c));
}

RingElt Ring::element(std::vector<BigInt> coeffs) const {
    if (static_cast<int>(coeffs.size()) > degree())
        throw std::invalid_argument("Ring::element: too many coefficients");
    coeffs.resize(degree(), 0);
    return RingElt(*this, std::move(coeffs));
}

const std::vector<RingElt>& Ring::conjugate_images() const {
    std::call_once(data_->conj_once, [this]() {
        std::vector<RingElt> images;
        for (int64_t j : data_->galois_js) {
            IntPoly dj = dickson_poly(j);
            // reduce D_j(theta) mod psi via ring arithmetic
            RingElt acc = zero();
            RingElt th = theta();
            for (int i = dj.degree(); i >= 0; --i) {
                acc = acc * th + integer(dj.coeff(i));
            }
            images.push_back(acc);
        }
        data_->conj_cache = std::move(images);
    });
    return data_->conj_cache;
}

namespace {

void require_same_ring(const RingElt& a, const RingElt& b) {
    if (a.ring() != b.ring())
        throw std::invalid_argument("ring mismatch: elements of O_" +
                                    std::to_string(a.ring().n()) + " and O_" +
                                    std::to_string(b.ring().n()));
}

}  // namespace

RingElt RingElt::operator+(const RingElt& o) const {
    require_same_ring(*this, o);
    std::vector<BigInt> r = c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return RingElt(ring_, std::move(r));
}

RingElt RingElt::operator-(const RingElt& o) const {
    require_same_ring(*this, o);
    std::vector<BigInt> r = c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
    return RingElt(ring_, std::move(r));
}

RingElt RingElt::operator-() const {
    std::vector<BigInt> r = c_;
    for (auto& x : r) x = -x;
    return RingElt(ring_, std::move(r));
}

RingElt RingElt::operator*(const RingElt& o) const {
    require_same_ring(*this, o);
    int d = ring_.degree();
    std::vector<BigInt> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod[i + j] += c_[i] * o.c_[j];
    // reduce modulo the monic psi: X^i -> X^{i-d} * (X^d mod psi)
    const IntPoly& psi = ring_.min_poly();
    for (int i = 2 * d - 2; i >= d; --i) {
        if (prod[i] == 0) continue;
        BigInt t = std::move(prod[i]);
        prod[i] = 0;
        for (int j = 0; j < d; ++j) prod[i - d + j] -= t * psi.coeff(j);
    }
    prod.resize(d);
    return RingElt(ring_, std::move(prod));
}

bool RingElt::operator==(const RingElt& o) const {
    require_same_ring(*this, o);
    return c_ == o.c_;
}

bool RingElt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool RingElt::is_rational_integer() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

BigInt RingElt::rational_value() const {
    if (!is_rational_integer())
        throw std::domain_error("element is not a rational integer");
    return c_[0];
}

IntPoly RingElt::as_poly() const { return IntPoly(std::vector<BigInt>(c_)); }

std::string RingElt::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i].str();
    }
    os << "]@" << ring_.n();
    return os.str();
}

std::vector<RingElt> conjugates(const RingElt& a) {
    const auto& images = a.ring().conjugate_images();
    std::vector<RingElt> out;
    out.reserve(images.size());
    for (const auto& img : images) {
        RingElt acc = a.ring().zero();
        for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
            acc = acc * img + a.ring().integer(*it);
        out.push_back(acc);
    }
    return out;
}

std::vector<MpReal> numeric_embeddings(const RingElt& a, int digits) {
    if (digits < 1) throw std::invalid_argument("numeric_embeddings: digits must be positive");
    int64_t n = a.ring().n();
    unsigned work = static_cast<unsigned>(digits) + 25;
    MpReal::default_precision(work);
    std::vector<std::pair<MpReal, MpReal>> pairs;  // (root, value)
    std::vector<int64_t> js;
    if (n <= 2)
        js = {1};
    else
        for (int64_t j = 1; 2 * j < n; ++j)
            if (std::gcd(j, n) == 1) js.push_back(j);
    MpReal two_pi = 8 * atan(MpReal(1));
    for (int64_t j : js) {
        MpReal root;
        if (n == 1) root = 2;
        else if (n == 2) root = -2;
        else root = 2 * cos(two_pi * j / n);
        MpReal val = 0;
        for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
            val = val * root + MpReal(it->str());
        pairs.emplace_back(root, val);
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<MpReal> out;
    for (auto& pr : pairs) out.push_back(pr.second);
    return out;
}

std::string format_embedding(const MpReal& v, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

IntPoly dickson_poly(int64_t k) {
    if (k < 0) throw std::invalid_argument("dickson_poly: k must be nonnegative");
    IntPoly prev = IntPoly::constant(2);
    if (k == 0) return prev;
    IntPoly cur = IntPoly::monomial(1);
    IntPoly x = cur;
    for (int64_t i = 1; i < k; ++i) {
        IntPoly next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

RingElt embed_subfield(const RingElt& a, const Ring& target) {
    int64_t m = a.ring().n(), n = target.n();
    if (n % m != 0)
        throw std::invalid_argument("embed_subfield: source conductor must divide target");
    if (m == n) return target.element(std::vector<BigInt>(a.coeffs()));
    IntPoly dj = dickson_poly(n / m);
    RingElt th = target.zero();
    for (int i = dj.degree(); i >= 0; --i)
        th = th * target.theta() + target.integer(dj.coeff(i));
    RingElt acc = target.zero();
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
        acc = acc * th + target.integer(*it);
    return acc;
}

GField::Elem ResidueData::reduce(const GField& f, const RingElt& a) const {
    GField::Elem x = theta_image(f);
    GField::Elem acc = f.zero();
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) {
        BigInt c = *it % ell;
        acc = f.add(f.mul(acc, x), f.from_int(c.convert_to<int64_t>()));
    }
    return acc;
}

std::vector<ResidueData> residue_reduction(const Ring& ring, int64_t ell) {
    if (ell == 2) throw std::invalid_argument("residue_reduction: ell = 2 is not supported");
    if (ell < 3 || !is_prime_i64(ell))
        throw std::invalid_argument("residue_reduction: ell must be an odd prime");
    FpPoly psi;
    for (int i = 0; i <= ring.min_poly().degree(); ++i) {
        BigInt c = ring.min_poly().coeff(i) % ell;
        psi.push_back(fp::norm_coeff(c.convert_to<int64_t>(), ell));
    }
    auto factors = factor_mod_p(psi, ell);
    std::vector<ResidueData> out;
    for (const auto& f : factors) {
        ResidueData rd;
        rd.ell = ell;
        rd.modulus = f.poly;
        rd.ramification_e = f.multiplicity;
        rd.inertia_k = fp::deg(f.poly);
        out.push_back(std::move(rd));
    }
    return out;
}

RingElt parse_element(const std::string& text) {
    auto fail = [&]() {
        throw std::invalid_argument("bad element syntax (expected [c0,c1,...]@n): " + text);
    };
    size_t at = text.rfind('@');
    if (at == std::string::npos || text.empty() || text[0] != '[') fail();
    size_t close = text.rfind(']', at);
    if (close == std::string::npos || close + 1 != at) fail();
    std::string body = text.substr(1, close - 1);
    std::string ntext = text.substr(at + 1);
    int64_t n = 0;
    try {
        size_t pos = 0;
        n = std::stoll(ntext, &pos);
        if (pos != ntext.size()) fail();
    } catch (const std::logic_error&) {
        fail();
    }
    if (n < 1) fail();
    std::vector<BigInt> coeffs;
    std::string tok;
    std::istringstream is(body);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) fail();
        for (size_t i = 0; i < tok.size(); ++i)
            if (!(std::isdigit(static_cast<unsigned char>(tok[i])) ||
                  (i == 0 && (tok[i] == '-' || tok[i] == '+'))))
                fail();
        coeffs.emplace_back(tok);
    }
    if (coeffs.empty()) fail();
    Ring r = ring_for(n);
    if (static_cast<int>(coeffs.size()) > r.degree()) fail();
    return r.element(std::move(coeffs));
}

}  // namespace rmc
