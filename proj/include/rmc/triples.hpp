#ifndef RMC_TRIPLES_HPP
#define RMC_TRIPLES_HPP

#include <array>
#include <string>
#include <vector>

#include "rmc/cyclo.hpp"

namespace rmc {

// 2x2 matrix over a real cyclotomic ring, row-major [[a, b], [c, d]].
struct Mat2 {
    RingElt a, b, c, d;

    static Mat2 identity(const Ring& r);

    RingElt det() const;
    RingElt trace() const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-() const;
    // Adjugate; equals the inverse when det = 1.
    Mat2 adjugate() const;
    bool operator==(const Mat2& o) const;
    bool operator!=(const Mat2& o) const { return !(*this == o); }
    const Ring& ring() const { return a.ring(); }
};

enum class OrderKind {
    Identity,        // n_j = 1
    MinusIdentity,   // n_j = 2
    QuasiUnipotent,  // minimal polynomial has a double root; n_j in {1, 2}
    FiniteOrder,     // semisimple of order n_j >= 3
    NotAdmissible,
};

struct OrderClass {
    OrderKind kind = OrderKind::NotAdmissible;
    int64_t order = 0;  // order of the semisimplification; 0 when not admissible
};

// Classification of an SL2 member by its trace: trace 2 and -2 are the
// (quasi-)unipotent cases; otherwise the unique m with psi_m(trace) = 0,
// searched over phi(m)/2 <= degree of the ring, gives a semisimple element of
// order m.  Throws if det != 1.
OrderClass trace_order(const Mat2& sigma);

// Same classification given only the trace (matrix assumed != +-identity when
// the trace is +-2).
OrderClass classify_trace(const RingElt& tr);

enum class TripleShape { AllSl2, Dihedral, Invalid };

struct ReflectionClass {
    TripleShape shape = TripleShape::Invalid;
    // indices (0, 1, 2 for sigma0, sigma1, sigmaInf) of the two reflections
    int first = -1, second = -1;
};

// A reflection is det = -1, trace = 0.  Returns AllSl2 when every determinant
// is 1, Dihedral when exactly two members are reflections and the third is in
// SL2, and Invalid otherwise (including a product different from the
// identity, which forces a determinant obstruction).
ReflectionClass reflection_classify(const Mat2& s0, const Mat2& s1, const Mat2& sInf);

// kappa = x^2 + y^2 + z^2 - xyz - 4; zero exactly when a product-one SL2
// triple with these traces fixes a common eigenvector.
RingElt irreducibility_kappa(const RingElt& x, const RingElt& y, const RingElt& z);

struct AdmissibleTriple {
    Mat2 sigma0, sigma1, sigmaInf;
    std::array<int64_t, 3> orders{};  // (n_0, n_1, n_inf)
    int64_t n = 0;                    // lcm of the orders
    RingElt kappa;
    std::array<RingElt, 3> traces;  // (x, y, z)
    bool gate8_blocked = false;     // 8 | n: outside the induction's hypotheses

    const Ring& ring() const { return traces[0].ring(); }
};

// The fixed normal form with unipotent sigma1:
//   sigma0 = [[x, -1], [1, 0]], sigma1 = [[1, 0], [x - z, 1]],
//   sigmaInf = (sigma0 sigma1)^-1.
// Requires only x != z; no admissibility classification is performed.
std::array<Mat2, 3> triple_matrices(const RingElt& x, const RingElt& z);

// Normal-form triple from traces (x, 2, z).  Throws when x = z (reducible) or
// when a member fails to classify; 8 | n only sets the gate flag.
AdmissibleTriple from_traces(const RingElt& x, const RingElt& z);

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const AdmissibleTriple& t);

struct LiftResult {
    std::array<int64_t, 3> lifted_orders{};  // prime-to-ell parts n'_j
    int64_t n_prime = 0;
    RingElt x, y, z;        // lifted traces over O_{n'}
    RingElt kappa;          // kappa of the lifted traces
    bool eisenstein = false;  // kappa = 0: the lift is reducible
    bool sign_flipped = false;  // the (-,+,-) twist pattern was chosen
    ResidueData lambda;         // canonical prime of O_n above ell
    ResidueData lambda_prime;   // prime of O_{n'} below lambda
};

// Reduce the traces mod the canonical lambda | ell and lift each to the
// Galois conjugate of theta_{n'_j} (or +-2 for n'_j <= 2) with the same
// residue.  Among the twist patterns (+,+,+) and (-,+,-) that both match, the
// one with the lexicographically smaller coefficient sequence wins.
// Requires sigma1 unipotent (y = 2) and ell an odd prime.
LiftResult lift_traces(const std::array<int64_t, 3>& orders,
                       const std::array<RingElt, 3>& traces, int64_t ell);

struct ReductionStep {
    int64_t ell;
    int64_t n_before, n_after;
    int64_t d_before, d_after;
};

struct ReductionPlan {
    int64_t n = 0;
    std::vector<ReductionStep> steps;
    bool terminal = false;
    std::string rejected_reason;  // nonempty iff the plan is rejected
};

// Strip odd primes from n, smallest first, until the field degree reaches 1.
// Rejected when 8 | n.
ReductionPlan reduction_plan(int64_t n);

// The x0 with n dividing the numerator of x0 - 1 (in lowest terms, sign
// ignored).  x0 in {0, 1} is rejected.
std::vector<BigRat> ordinary_candidates(int64_t n, const std::vector<BigRat>& x0s);

}  // namespace rmc

#endif
