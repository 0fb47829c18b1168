// Asymptotic estimates, regime classification, and comparison reports.
#pragma once

#include "ffcount/analytic.hpp"
#include "ffcount/bigint.hpp"
#include "ffcount/series.hpp"

#include <complex>
#include <string>
#include <vector>

namespace ffc {

struct RegimeParams {
    double epsilon = 0.5;     // small-k band k <= (q - epsilon) log n
    double B = 2.0;           // large-k band k <= n / B
    std::string xi = "loglog";  // lower edge xi(n) log n; "loglog" or a number
};

enum class Regime { SMALL_K, LARGE_K, OUT_OF_RANGE };

const char* regime_name(Regime r);
double xi_value(const RegimeParams& p, unsigned n);
Regime classify(unsigned n, unsigned k, const AnalyticContext& ctx,
                const RegimeParams& p);

// q^n/n * H(k/log n) (log n)^{k-1} / (k-1)!. Throws domain_error outside
// SMALL_K unless force; every estimate is computed twice (log-space and
// scaled direct product) and the two must agree to 1e-9.
double sathe_selberg_log(unsigned n, unsigned k, const AnalyticContext& ctx,
                         const RegimeParams& p, bool force = false);
double sathe_selberg_estimate(unsigned n, unsigned k, const AnalyticContext& ctx,
                              const RegimeParams& p, bool force = false);

// C(q) q^n k^{q-1} (n-k)^{q-1} / q^k for q > 2; the q = 2 regime is not
// covered and is reported as unsupported.
double large_k_log(unsigned n, unsigned k, const AnalyticContext& ctx,
                   const RegimeParams& p, bool force = false);
double large_k_estimate(unsigned n, unsigned k, const AnalyticContext& ctx,
                        const RegimeParams& p, bool force = false);

// No-linear-factor count estimate (q^n/n) Q_j(log n); domain j <= e q log n.
double n_prime_log(unsigned n, unsigned j, const AnalyticContext& ctx);
double n_prime_estimate(unsigned n, unsigned j, const AnalyticContext& ctx);

// q^n n^{z-1} z H(z) (all monics) or q^n n^{z-1} z h(z) (no linear factors).
std::complex<double> mz_mainterm(unsigned n, std::complex<double> z,
                                 const AnalyticContext& ctx, Kind kind);

struct T2Diagnostic {
    unsigned n = 0, k = 0;
    Int t2;
    double shape_log = 0.0;  // log of q^{n-k} (n-k)^{q-2}
    double ratio = 0.0;      // t2 / shape, 0 when t2 = 0
};

// Report-only: compares the tail of the decomposition against the shape
// q^{n-k} (n-k)^{q-2} that controls it. No pass/fail semantics.
T2Diagnostic t2_diagnostic(const BivariateSeries& all,
                           const BivariateSeries& no_linear, unsigned n,
                           unsigned k, const AnalyticContext& ctx);

struct TwistedSum {
    double lhs = 0.0;  // sum_{j<=eqY} binom(q-1+k-j, q-1) q^j Q_j(Y)
    double rhs = 0.0;  // k^{q-1} q e^{qY} h(q) / (q-1)!
    double ratio = 0.0;
};

TwistedSum twisted_binomial_sum(unsigned n, unsigned k,
                                const AnalyticContext& ctx);

struct ReportRow {
    unsigned n = 0, k = 0;
    Int exact;
    double estimate = 0.0;  // may overflow to inf; ratio never does
    double ratio = 0.0;     // exact / estimate via logs
    Regime regime;
};

struct ComparisonReport {
    RegimeParams params;
    std::string k_rule;
    std::vector<ReportRow> rows;
};

// k_rule: "k=<int>" or "k=n/<int>" (ceiling). Rows outside both regimes are
// tagged OUT_OF_RANGE with estimate and ratio of 0.
ComparisonReport compare_report(const BivariateSeries& series,
                                const std::vector<unsigned>& ns,
                                const std::string& k_rule,
                                const AnalyticContext& ctx,
                                const RegimeParams& params);

struct UpperBoundRow {
    unsigned n = 0, j = 0;
    double ratio = 0.0;  // N'(n,j) (q+eta)^j / (q^n n^{q+eta-1})
};

// Report-only sweep of the no-linear-factor upper bound envelope.
std::vector<UpperBoundRow> upper_bound_diag(const BivariateSeries& no_linear,
                                            double eta, double delta,
                                            const AnalyticContext& ctx);

} // namespace ffc
