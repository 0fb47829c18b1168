#include "ffcount/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffc {

namespace {

int default_threads() {
    if (const char* env = std::getenv("FFCOUNT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct FactorScan {
    unsigned omega = 0;
    bool divided_by_linear = false;
};

// Peel irreducible divisors in increasing degree, each to full multiplicity.
// Once 2d exceeds the remaining degree the remainder itself is irreducible:
// every factor of degree < d was already removed.
FactorScan scan(Poly f, const IrreducibleTable& irr, std::uint64_t q) {
    FactorScan r;
    for (unsigned d = 1; f.degree() > 0 && 2 * d <= f.degree(); ++d) {
        for (const Poly& g : irr.elements[d]) {
            while (f.degree() >= d && divides(g, f, q)) {
                f = quotient(g, f, q);
                r.omega += 1;
                if (d == 1) r.divided_by_linear = true;
            }
            if (f.degree() == 0) break;
        }
    }
    if (f.degree() > 0) {
        r.omega += 1;
        if (f.degree() == 1) r.divided_by_linear = true;
    }
    return r;
}

bool has_root(const Poly& f, std::uint64_t q) {
    for (std::uint64_t x = 0; x < q; ++x) {
        if (eval_poly(f, x, q) == 0) return true;
    }
    return false;
}

} // namespace

unsigned omega(const Poly& f, const IrreducibleTable& irr) {
    if (!irr.enumerated() || irr.d_max() < std::max(1u, f.degree() / 2)) {
        throw usage_error("omega needs an enumerated table covering degree " +
                          std::to_string(f.degree() / 2));
    }
    return scan(f, irr, irr.field.q()).omega;
}

OracleTable exhaustive_table(const FieldSize& field, unsigned n, double guard,
                             int threads) {
    if (n == 0) throw usage_error("oracle needs degree >= 1");
    if (std::pow(static_cast<double>(field.q()), n) > guard) {
        throw guard_error("oracle guard: q^n = " + std::to_string(field.q()) + "^" +
                          std::to_string(n) + " exceeds " + std::to_string(guard));
    }
    const std::uint64_t q = field.q();
    IrreducibleTable irr = enumerate_irreducibles(field, std::max(1u, n / 2), guard);
    if (threads <= 0) threads = default_threads();

    std::uint64_t span = 1;
    for (unsigned i = 0; i < n; ++i) span *= q;

    const int t_count = std::max(1, threads);
    std::vector<std::vector<Int>> hist(t_count, std::vector<Int>(n + 1, Int(0)));
    std::vector<std::vector<Int>> hist_nl(t_count, std::vector<Int>(n + 1, Int(0)));
    std::vector<std::string> failures(t_count);

#ifdef _OPENMP
#pragma omp parallel num_threads(t_count)
#endif
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
        const int nt = omp_get_num_threads();
#else
        const int tid = 0;
        const int nt = 1;
#endif
        const std::uint64_t chunk = (span + nt - 1) / nt;
        const std::uint64_t lo = chunk * static_cast<std::uint64_t>(tid);
        const std::uint64_t hi = std::min(span, lo + chunk);
        Poly f;
        f.c.resize(n);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t rest = idx;
            for (unsigned i = 0; i < n; ++i) {
                f.c[i] = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
            FactorScan s = scan(f, irr, q);
            const bool root = has_root(f, q);
            if (root != s.divided_by_linear) {
                if (failures[tid].empty()) {
                    failures[tid] = "linear-factor checks disagree at index " +
                                    std::to_string(idx);
                }
                continue;
            }
            hist[tid][s.omega] += 1;
            if (!root) hist_nl[tid][s.omega] += 1;
        }
    }

    for (const auto& msg : failures) {
        if (!msg.empty()) throw verification_error(msg);
    }

    OracleTable out{field, n, {}, {}};
    for (int t = 0; t < t_count; ++t) {
        for (unsigned k = 0; k <= n; ++k) {
            if (hist[t][k] != 0) out.histogram[k] += hist[t][k];
            if (hist_nl[t][k] != 0) out.no_linear_histogram[k] += hist_nl[t][k];
        }
    }
    return out;
}

} // namespace ffc
