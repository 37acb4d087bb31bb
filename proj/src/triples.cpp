#include "rmc/triples.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rmc {

Mat2 Mat2::identity(const Ring& r) { return {r.one(), r.zero(), r.zero(), r.one()}; }

RingElt Mat2::det() const { return a * d - b * c; }
RingElt Mat2::trace() const { return a + d; }

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::operator-() const { return {-a, -b, -c, -d}; }

Mat2 Mat2::adjugate() const { return {d, -b, -c, a}; }

bool Mat2::operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
}

OrderClass classify_trace(const RingElt& tr) {
    const Ring& ring = tr.ring();
    if (tr == ring.integer(2)) return {OrderKind::QuasiUnipotent, 1};
    if (tr == ring.integer(-2)) return {OrderKind::QuasiUnipotent, 2};
    // psi_m(tr) = 0 pins m uniquely; the trace lies in a field of degree d,
    // so phi(m)/2 <= d bounds the search (phi(m) >= sqrt(m/2) gives m <= 8d^2).
    int64_t d = ring.degree();
    for (int64_t m = 3; m <= 8 * d * d + 6; ++m) {
        if (half_phi_degree(m) > d) continue;
        const IntPoly& psi = ring_for(m).min_poly();
        RingElt acc = ring.zero();
        for (int i = psi.degree(); i >= 0; --i) acc = acc * tr + ring.integer(psi.coeff(i));
        if (acc.is_zero()) return {OrderKind::FiniteOrder, m};
    }
    return {OrderKind::NotAdmissible, 0};
}

OrderClass trace_order(const Mat2& sigma) {
    const Ring& ring = sigma.ring();
    if (sigma.det() != ring.one())
        throw std::domain_error("trace_order: determinant must be 1");
    RingElt tr = sigma.trace();
    if (tr == ring.integer(2))
        return sigma == Mat2::identity(ring) ? OrderClass{OrderKind::Identity, 1}
                                             : OrderClass{OrderKind::QuasiUnipotent, 1};
    if (tr == ring.integer(-2))
        return sigma == -Mat2::identity(ring) ? OrderClass{OrderKind::MinusIdentity, 2}
                                              : OrderClass{OrderKind::QuasiUnipotent, 2};
    return classify_trace(tr);
}

ReflectionClass reflection_classify(const Mat2& s0, const Mat2& s1, const Mat2& sInf) {
    const Ring& ring = s0.ring();
    if (s0 * s1 * sInf != Mat2::identity(ring)) return {TripleShape::Invalid};
    const Mat2* ms[3] = {&s0, &s1, &sInf};
    int reflections = 0, sl2 = 0;
    ReflectionClass rc;
    for (int i = 0; i < 3; ++i) {
        RingElt det = ms[i]->det();
        if (det == ring.one()) {
            ++sl2;
        } else if (det == ring.integer(-1) && ms[i]->trace().is_zero()) {
            if (reflections == 0) rc.first = i;
            else rc.second = i;
            ++reflections;
        } else {
            return {TripleShape::Invalid};
        }
    }
    if (sl2 == 3) {
        rc.shape = TripleShape::AllSl2;
        rc.first = rc.second = -1;
        return rc;
    }
    if (reflections == 2 && sl2 == 1) {
        rc.shape = TripleShape::Dihedral;
        return rc;
    }
    return {TripleShape::Invalid};
}

RingElt irreducibility_kappa(const RingElt& x, const RingElt& y, const RingElt& z) {
    const Ring& ring = x.ring();
    return x * x + y * y + z * z - x * y * z - ring.integer(4);
}

std::array<Mat2, 3> triple_matrices(const RingElt& x, const RingElt& z) {
    const Ring& ring = x.ring();
    if (ring != z.ring()) throw std::invalid_argument("triple_matrices: ring mismatch");
    RingElt one = ring.one(), zero = ring.zero();
    Mat2 s0{x, -one, one, zero};
    Mat2 s1{one, zero, x - z, one};
    Mat2 sInf = (s0 * s1).adjugate();
    return {s0, s1, sInf};
}

AdmissibleTriple from_traces(const RingElt& x, const RingElt& z) {
    const Ring& ring = x.ring();
    if (x == z)
        throw std::domain_error("from_traces: x = z gives a reducible triple (kappa = 0)");
    auto ms = triple_matrices(x, z);
    AdmissibleTriple t{ms[0], ms[1], ms[2], {}, 0, ring.zero(),
                       {x, ring.integer(2), z}, false};
    for (int i = 0; i < 3; ++i) {
        OrderClass oc = trace_order(ms[i]);
        if (oc.kind == OrderKind::NotAdmissible)
            throw std::domain_error("from_traces: member " + std::to_string(i) +
                                    " has no finite-order semisimplification");
        t.orders[i] = oc.order;
    }
    t.n = std::lcm(std::lcm(t.orders[0], t.orders[1]), t.orders[2]);
    t.kappa = irreducibility_kappa(t.traces[0], t.traces[1], t.traces[2]);
    t.gate8_blocked = (t.n % 8 == 0);
    return t;
}

ValidationReport validate(const AdmissibleTriple& t) {
    ValidationReport rep;
    const Ring& ring = t.ring();
    auto violate = [&](const std::string& s) {
        rep.pass = false;
        rep.violations.push_back(s);
    };

    if (t.sigma0 * t.sigma1 * t.sigmaInf != Mat2::identity(ring))
        violate("condition (c): sigma0 sigma1 sigmaInf != identity");
    const Mat2* ms[3] = {&t.sigma0, &t.sigma1, &t.sigmaInf};
    bool dets_ok = true;
    for (int i = 0; i < 3; ++i)
        if (ms[i]->det() != ring.one()) {
            violate("member " + std::to_string(i) + " has determinant != 1");
            dets_ok = false;
        }
    RingElt kappa = irreducibility_kappa(t.traces[0], t.traces[1], t.traces[2]);
    if (kappa.is_zero()) violate("condition (b): kappa = 0 (reducible triple)");
    if (kappa != t.kappa) violate("stored kappa does not match the traces");
    if (dets_ok) {
        for (int i = 0; i < 3; ++i) {
            if (ms[i]->trace() != t.traces[i]) {
                violate("stored trace " + std::to_string(i) + " does not match the matrix");
                continue;
            }
            OrderClass oc = trace_order(*ms[i]);
            if (oc.kind == OrderKind::NotAdmissible) {
                violate("condition (a): member " + std::to_string(i) +
                        " has no finite-order semisimplification");
            } else if (oc.order != t.orders[i]) {
                violate("member " + std::to_string(i) + " classifies with order " +
                        std::to_string(oc.order) + ", recorded " + std::to_string(t.orders[i]));
            }
        }
    }
    int64_t n = std::lcm(std::lcm(t.orders[0], t.orders[1]), t.orders[2]);
    if (n != t.n) violate("n != lcm(n_0, n_1, n_inf)");
    // traces must generate the subfields K_{n_j}: psi_{n_j}(trace) = 0
    for (int i = 0; i < 3; ++i) {
        if (t.orders[i] < 1) continue;
        const IntPoly& psi = ring_for(t.orders[i]).min_poly();
        RingElt acc = ring.zero();
        for (int j = psi.degree(); j >= 0; --j)
            acc = acc * t.traces[i] + ring.integer(psi.coeff(j));
        if (!acc.is_zero())
            violate("trace " + std::to_string(i) + " is not a root of psi_" +
                    std::to_string(t.orders[i]));
    }
    return rep;
}

namespace {

std::vector<int64_t> conj_indices(int64_t m) {
    if (m <= 2) return {1};
    std::vector<int64_t> as;
    for (int64_t a = 1; 2 * a < m; ++a)
        if (std::gcd(a, m) == 1) as.push_back(a);
    return as;
}

// The conjugate D_a(theta_m) of theta_m, expressed inside target (m must
// divide the target conductor).
RingElt theta_conjugate(int64_t m, int64_t a, const Ring& target) {
    Ring rm = ring_for(m);
    IntPoly da = dickson_poly(a);
    RingElt c = rm.zero();
    for (int i = da.degree(); i >= 0; --i) c = c * rm.theta() + rm.integer(da.coeff(i));
    return embed_subfield(c, target);
}

// All d(m) distinct conjugates of theta_m inside target.
std::vector<RingElt> theta_conjugates_in(int64_t m, const Ring& target) {
    std::vector<RingElt> out;
    for (int64_t a : conj_indices(m)) out.push_back(theta_conjugate(m, a, target));
    return out;
}

// true if a's coefficient sequence precedes b's lexicographically
bool coeffs_less(const RingElt& a, const RingElt& b) {
    return a.coeffs() < b.coeffs();
}

}  // namespace

LiftResult lift_traces(const std::array<int64_t, 3>& orders,
                       const std::array<RingElt, 3>& traces, int64_t ell) {
    if (ell < 3 || ell % 2 == 0 || !is_prime_i64(ell))
        throw std::invalid_argument("lift_traces: ell must be an odd prime");
    const Ring& in_ring = traces[0].ring();
    if (traces[1] != in_ring.integer(2))
        throw std::invalid_argument("lift_traces: sigma1 must be unipotent (y = 2)");
    int64_t n = std::lcm(std::lcm(orders[0], orders[1]), orders[2]);

    Ring rn = ring_for(n);
    // Express each trace in O_n.  A trace of order n_j is some conjugate of
    // theta_{n_j}; locate it by direct comparison in the input ring.
    std::array<RingElt, 3> xs = {rn.zero(), rn.integer(2), rn.zero()};
    for (int j = 0; j < 3; ++j) {
        if (j == 1) continue;
        if (traces[j].is_rational_integer()) {
            xs[j] = rn.integer(traces[j].rational_value());
            continue;
        }
        if (in_ring.n() == n) {
            xs[j] = traces[j];
            continue;
        }
        // An irrational trace of order n_j is a specific conjugate of
        // theta_{n_j}; identify it in the input ring and re-express it in O_n
        // (n_j divides n = lcm).
        int64_t nj = orders[j];
        bool located = false;
        if (nj >= 3 && in_ring.n() % nj == 0) {
            for (int64_t a : conj_indices(nj)) {
                if (theta_conjugate(nj, a, in_ring) == traces[j]) {
                    xs[j] = theta_conjugate(nj, a, rn);
                    located = true;
                    break;
                }
            }
        }
        if (!located)
            throw std::invalid_argument(
                "lift_traces: cannot express trace " + std::to_string(j) + " inside O_" +
                std::to_string(n));
    }

    LiftResult res;
    res.n_prime = prime_to_part(n, ell);
    for (int j = 0; j < 3; ++j) res.lifted_orders[j] = prime_to_part(orders[j], ell);

    Ring rp = ring_for(res.n_prime);

    if (n % ell != 0) {
        // Degenerate case: nothing to strip, the lift is the identity.
        auto rds = residue_reduction(rn, ell);
        res.x = xs[0];
        res.y = xs[1];
        res.z = xs[2];
        res.kappa = irreducibility_kappa(res.x, res.y, res.z);
        res.eisenstein = res.kappa.is_zero();
        res.lambda = rds.front();
        res.lambda_prime = rds.front();
        return res;
    }

    ResidueData lambda = residue_reduction(rn, ell).front();
    GField F = lambda.field();

    // lambda' of O_{n'} below lambda: the factor of psi_{n'} mod ell killing
    // the image of the embedded theta_{n'}.
    RingElt theta_np_in_n = embed_subfield(rp.theta(), rn);
    GField::Elem theta_np_res = lambda.reduce(F, theta_np_in_n);
    ResidueData lambda_prime;
    bool found_lp = false;
    for (const auto& rd : residue_reduction(rp, ell)) {
        if (F.is_zero(F.eval_poly(rd.modulus, theta_np_res))) {
            lambda_prime = rd;
            found_lp = true;
            break;
        }
    }
    if (!found_lp) throw std::logic_error("lift_traces: no prime of O_{n'} below lambda");

    // Candidate lifts per sign pattern: sign = +1 is (+,+,+), -1 is (-,+,-).
    auto match_pattern = [&](int sign, std::array<RingElt, 3>& out) -> bool {
        out[1] = rp.integer(2);
        for (int j = 0; j < 3; ++j) {
            if (j == 1) continue;
            GField::Elem want = lambda.reduce(F, xs[j]);
            int64_t npj = res.lifted_orders[j];
            bool ok = false;
            if (npj <= 2) {
                RingElt t = rp.integer(npj == 1 ? 2 : -2);
                RingElt signed_t = sign > 0 ? t : -t;
                GField::Elem got = lambda.reduce(F, embed_subfield(signed_t, rn));
                if (F.eq(got, want)) {
                    out[j] = signed_t;
                    ok = true;
                }
            } else {
                for (const auto& cand : theta_conjugates_in(npj, rp)) {
                    RingElt signed_t = sign > 0 ? cand : -cand;
                    GField::Elem got = lambda.reduce(F, embed_subfield(signed_t, rn));
                    if (F.eq(got, want)) {
                        out[j] = signed_t;
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) return false;
        }
        return true;
    };

    std::array<RingElt, 3> plus, minus;
    bool has_plus = match_pattern(+1, plus);
    bool has_minus = match_pattern(-1, minus);
    if (!has_plus && !has_minus)
        throw std::domain_error(
            "lift_traces: no Galois conjugate matches the residues (inconsistent input)");
    bool use_minus = false;
    if (has_plus && has_minus) {
        // canonical representative: lexicographically smaller (x, z) coefficients
        if (coeffs_less(minus[0], plus[0]) ||
            (minus[0] == plus[0] && coeffs_less(minus[2], plus[2])))
            use_minus = true;
    } else {
        use_minus = has_minus;
    }
    const auto& pick = use_minus ? minus : plus;
    res.sign_flipped = use_minus;
    res.x = pick[0];
    res.y = pick[1];
    res.z = pick[2];
    res.kappa = irreducibility_kappa(res.x, res.y, res.z);
    res.eisenstein = res.kappa.is_zero();
    res.lambda = lambda;
    res.lambda_prime = lambda_prime;
    return res;
}

ReductionPlan reduction_plan(int64_t n) {
    if (n < 1) throw std::invalid_argument("reduction_plan: n must be positive");
    ReductionPlan plan;
    plan.n = n;
    if (n % 8 == 0) {
        std::ostringstream os;
        os << "rejected: the hypothesis that 8 does not divide n fails (n = " << n << ")";
        plan.rejected_reason = os.str();
        return plan;
    }
    int64_t m = n;
    while (half_phi_degree(m) > 1) {
        int64_t ell = 0;
        for (int64_t p = 3; p <= m; p += 2) {
            if (m % p == 0 && is_prime_i64(p)) { ell = p; break; }
        }
        if (ell == 0) throw std::logic_error("reduction_plan: no odd prime divisor found");
        int64_t next = prime_to_part(m, ell);
        plan.steps.push_back(
            {ell, m, next, half_phi_degree(m), half_phi_degree(next)});
        m = next;
    }
    plan.terminal = true;
    return plan;
}

std::vector<BigRat> ordinary_candidates(int64_t n, const std::vector<BigRat>& x0s) {
    if (n < 1) throw std::invalid_argument("ordinary_candidates: n must be positive");
    std::vector<BigRat> out;
    for (const auto& x0 : x0s) {
        if (x0 == 0 || x0 == 1)
            throw std::invalid_argument("ordinary_candidates: x0 must avoid 0 and 1");
        BigInt num = numerator(BigRat(x0 - 1));
        if (num < 0) num = -num;
        if (num % n == 0) out.push_back(x0);
    }
    return out;
}

}  // namespace rmc
