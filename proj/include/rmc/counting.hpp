#ifndef RMC_COUNTING_HPP
#define RMC_COUNTING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmc/curves.hpp"
#include "rmc/cyclo.hpp"

namespace rmc {

inline constexpr int64_t kDefaultCountBound = 1000000;  // cap on p^k

// F_{p^k} for the counting kernels, k in {1, 2}.  Elements are indices in
// [0, q): for k = 1 the value itself, for k = 2 the pair a + b*p encoding
// a + b*w with w^2 = nonresidue.  chi is the quadratic character by index
// (chi[0] = 0); tests may overwrite it to probe the counting formula.
struct CountField {
    int64_t p = 0;
    int k = 1;
    int64_t q = 0;
    int64_t nonresidue = 0;  // k = 2 only
    std::vector<int8_t> chi;

    static CountField make(int64_t p, int k);
};

// sum over x in F_q of chi(h(x)), h given by F_p coefficients (constant term
// first).  The affine point count of y^2 = h is q + this sum.
int64_t chi_sum_serial(const CountField& F, const std::vector<int64_t>& h);
int64_t chi_sum_parallel(const CountField& F, const std::vector<int64_t>& h);

// Projective points of y^2 = h(X) over F_{p^k}: affine solutions plus one
// point at infinity for odd deg h, plus two when deg h is even and the
// leading coefficient is a square.  p must be a good odd prime of the curve
// and p^k <= bound.
int64_t point_count(const SpecializedCurve& curve, int64_t p, int k,
                    bool parallel = true, int64_t bound = kDefaultCountBound);

struct LPolynomial {
    int64_t p = 0;
    int genus = 0;
    std::vector<int64_t> coeffs;  // b_0 .. b_{2g}, b_0 = 1

    std::string to_string() const;
};

// Zeta numerator from point counts over F_{p^k}, k = 1..g: power sums of the
// Frobenius roots via N_k = p^k + 1 - s_k, then Newton's identities for
// b_1..b_g and the functional equation b_{2g-i} = p^{g-i} b_i for the rest.
LPolynomial l_polynomial(const SpecializedCurve& curve, int64_t p,
                         bool parallel = true, int64_t bound = kDefaultCountBound);

// Exact functional-equation and Weil-bound checks (genus <= 2 is exact; the
// numeric root check lives with the tests).
bool functional_equation_holds(const LPolynomial& L);
bool weil_bound_holds(const LPolynomial& L);

struct RmConsistency {
    bool ok = false;
    // Candidate rank-2 pieces of L mod ell in L-convention (c0 + c1 T + c2 T^2
    // with c0 = 1), coefficients in the residue field of `res`.  The k = 1
    // collapse produces exactly one; the k > 1 fallback may list several.
    std::vector<std::array<GField::Elem, 3>> quads;
};

// Reduce L mod ell and test the total collapse: for a residue field F_ell
// this means L = Q^g with Q quadratic (the g conjugate factors agree after
// total ramification); genus 1 passes through.  For k > 1 the degree-2
// factors over F_{ell^k} are found by exhaustive search.
RmConsistency rm_consistency(const LPolynomial& L, const ResidueData& res);

// All rank-2 candidates for the lambda-torsion piece: the constant-term-1
// quadratic factors of L mod ell over the residue field whose cofactor also
// splits into such quadratics.  Strictly larger than the perfect-power case:
// the Galois action on the coefficient ring pairs each factor with a
// conjugate twist, so at primes inert in the multiplication field L mod ell
// is a product of two different quadratics rather than a square.
std::vector<std::array<GField::Elem, 3>> collapse_candidates(const LPolynomial& L,
                                                             const ResidueData& res);

// Central twist character with values in F_ell^*: a quadratic part (the
// local generators chi_{-4}, chi_8 and Legendre symbols at odd primes) times
// a power of the mod-ell character omega_ell(p) = p mod ell.  The omega part
// carries the non-quadratic twists the residue field admits.
struct TwistChar {
    bool use_m4 = false;
    bool use_8 = false;
    std::vector<int64_t> odd_primes;  // ascending, distinct
    int64_t ell = 0;                  // modulus of the omega part
    int ell_exp = 0;                  // omega_ell^{ell_exp}, 0 <= ell_exp < ell-1

    int64_t modulus() const;
    int quad_eval(int64_t p) const;  // +-1, the quadratic part alone
    // chi(p) as an integer representative in [1, ell): quad part times
    // p^{ell_exp} mod ell.
    int64_t eval_mod_ell(int64_t p, int64_t ell_ctx) const;
    bool is_trivial() const { return !use_m4 && !use_8 && odd_primes.empty() && ell_exp == 0; }
    std::string describe() const;
};

enum class CongruenceMode { CurveTarget, EisensteinTarget };
enum class Verdict { Verified, Refuted, Inconclusive };

struct PerPrimeRow {
    int64_t p = 0;
    std::string lhs;  // trace data extracted from A's fibre
    std::string rhs;  // target residue data under the reported character(s)
    bool match = false;
};

struct CongruenceReport {
    int64_t ell = 0;
    BigRat x0;
    int64_t pmax = 0;
    CongruenceMode mode = CongruenceMode::CurveTarget;
    ResidueData residue;            // lambda used on A's side
    std::string family;             // A
    std::string target;             // family name or "eisenstein"
    bool twist_found = false;
    TwistChar twist;                // curve target, or chi_1
    TwistChar twist2;               // eisenstein only: chi_2
    std::vector<PerPrimeRow> per_prime;
    Verdict verdict = Verdict::Inconclusive;
};

std::string verdict_name(Verdict v);

// Compare the mod-lambda Frobenius data (trace and determinant) of A's fibre
// at x0 against the target for every good p <= pmax, searching twist
// characters whose quadratic part has modulus dividing 8 * ell * (product of
// bad primes) and whose mod-ell part is a power of omega_ell.  `target` empty
// means the Eisenstein (reducible) target.  The choice must agree with the
// reducibility of the lifted triple at ell, else the call is rejected.
CongruenceReport congruence_check(const CurveFamily& A,
                                  const std::optional<CurveFamily>& target,
                                  const BigRat& x0, int64_t ell, int64_t pmax,
                                  bool parallel = true,
                                  int64_t bound = kDefaultCountBound);

}  // namespace rmc

#endif
