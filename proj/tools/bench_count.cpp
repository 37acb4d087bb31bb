// Timing comparison of the serial and OpenMP counting kernels on fibres of
// the supported families.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rmc/counting.hpp"
#include "rmc/curves.hpp"

using namespace rmc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_curve(const char* label, const SpecializedCurve& c, int64_t p, int k) {
    CountField F = CountField::make(p, k);
    std::vector<int64_t> h(c.poly.degree() + 1);
    for (size_t i = 0; i < h.size(); ++i) {
        BigInt v = c.poly.coeff(static_cast<int>(i)) % p;
        h[i] = fp::norm_coeff(v.convert_to<int64_t>(), p);
    }

    auto t0 = std::chrono::steady_clock::now();
    int64_t serial = chi_sum_serial(F, h);
    double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    int64_t parallel = chi_sum_parallel(F, h);
    double tp = seconds_since(t0);

    std::printf("%-18s q=%-8lld chi_sum=%-8lld serial=%8.4fs omp=%8.4fs speedup=%.2fx%s\n",
                label, static_cast<long long>(F.q), static_cast<long long>(serial), ts, tp,
                tp > 0 ? ts / tp : 0.0, serial == parallel ? "" : "  MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int64_t p1 = 999983;  // large prime field
    int64_t p2 = 997;     // quadratic extension, q close to 10^6
    if (argc > 1) p1 = std::stoll(argv[1]);
    if (argc > 2) p2 = std::stoll(argv[2]);

    std::printf("threads: %d\n", omp_get_max_threads());

    CurveFamily leg = family_from_kind(FamilyKind::Legendre);
    CurveFamily tte = family_from_kind(FamilyKind::TTVEven, 5);
    CurveFamily tto = family_from_kind(FamilyKind::TTVOdd, 5);
    SpecializedCurve leg2 = specialize(leg, BigRat(2));
    SpecializedCurve tte2 = specialize(tte, BigRat(2));
    SpecializedCurve tto2 = specialize(tto, BigRat(2));

    bench_curve("legendre@2 F_p", leg2, p1, 1);
    bench_curve("ttv-even:5@2 F_p", tte2, p1, 1);
    bench_curve("ttv-odd:5@2 F_p", tto2, p1, 1);
    bench_curve("legendre@2 F_p2", leg2, p2, 2);
    bench_curve("ttv-even:5@2 F_p2", tte2, p2, 2);
    bench_curve("ttv-odd:5@2 F_p2", tto2, p2, 2);
    return 0;
}
