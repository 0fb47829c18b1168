#include "ffcount/asymptotics.hpp"

#include <cmath>
#include <cstdlib>

namespace ffc {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::SMALL_K: return "small_k";
        case Regime::LARGE_K: return "large_k";
        default: return "out_of_range";
    }
}

double xi_value(const RegimeParams& p, unsigned n) {
    if (p.xi == "loglog") {
        if (n < 3) throw domain_error("xi = loglog needs n >= 3");
        return std::log(std::log(static_cast<double>(n)));
    }
    char* end = nullptr;
    double v = std::strtod(p.xi.c_str(), &end);
    if (end == nullptr || *end != '\0' || !(v > 0.0)) {
        throw config_error("xi must be \"loglog\" or a positive number, got \"" + p.xi +
                           "\"");
    }
    return v;
}

// Overlapping bands resolve to SMALL_K: the saddle-point estimate is the
// sharper one where both apply.
Regime classify(unsigned n, unsigned k, const AnalyticContext& ctx,
                const RegimeParams& p) {
    if (n < 2 || k < 1 || k > n) return Regime::OUT_OF_RANGE;
    const double ln_n = std::log(static_cast<double>(n));
    const double kd = static_cast<double>(k);
    if (kd <= (ctx.q_real() - p.epsilon) * ln_n) return Regime::SMALL_K;
    if (n >= 3 && kd >= xi_value(p, n) * ln_n && kd <= static_cast<double>(n) / p.B) {
        return Regime::LARGE_K;
    }
    return Regime::OUT_OF_RANGE;
}

namespace {

// Direct product evaluation in mantissa/exponent form, cross-checked against
// the log-space value: the two routes must agree to 1e-9 relative.
void check_routes(double log_primary, const ScaledFloat& direct, const char* what) {
    const double rel = std::fabs(std::expm1(direct.log_abs() - log_primary));
    if (!(rel <= 1e-9)) {
        throw verification_error(std::string(what) +
                                 ": log-space and direct routes disagree by rel " +
                                 std::to_string(rel));
    }
}

unsigned long q_of(const AnalyticContext& ctx) {
    return static_cast<unsigned long>(ctx.field().q());
}

} // namespace

double sathe_selberg_log(unsigned n, unsigned k, const AnalyticContext& ctx,
                         const RegimeParams& p, bool force) {
    if (!force && classify(n, k, ctx, p) != Regime::SMALL_K) {
        throw domain_error("sathe_selberg_estimate outside small-k regime at (n,k) = (" +
                           std::to_string(n) + "," + std::to_string(k) + ")");
    }
    if (n < 2 || k < 1) throw domain_error("sathe_selberg_estimate needs n >= 2, k >= 1");
    const double ln_n = std::log(static_cast<double>(n));
    const double r = static_cast<double>(k) / ln_n;
    const double Hr = H_eval({r, 0.0}, ctx).real();
    if (!(Hr > 0.0)) throw verification_error("H(k/log n) not positive");

    const double lg = static_cast<double>(n) * std::log(ctx.q_real()) - ln_n +
                      std::log(Hr) + (static_cast<double>(k) - 1.0) * std::log(ln_n) -
                      std::lgamma(static_cast<double>(k));

    ScaledFloat direct = ScaledFloat::from_int(pow_ui(q_of(ctx), n));
    direct = direct * ScaledFloat::from_double(Hr / static_cast<double>(n));
    for (unsigned i = 1; i < k; ++i) {
        direct = direct * ScaledFloat::from_double(ln_n / static_cast<double>(i));
    }
    check_routes(lg, direct, "sathe_selberg_estimate");
    return lg;
}

double sathe_selberg_estimate(unsigned n, unsigned k, const AnalyticContext& ctx,
                              const RegimeParams& p, bool force) {
    return std::exp(sathe_selberg_log(n, k, ctx, p, force));
}

double large_k_log(unsigned n, unsigned k, const AnalyticContext& ctx,
                   const RegimeParams& p, bool force) {
    if (ctx.field().q() == 2) {
        throw domain_error("large-k estimate requires q > 2; q = 2 is unsupported");
    }
    if (!force && classify(n, k, ctx, p) != Regime::LARGE_K) {
        throw domain_error("large_k_estimate outside large-k regime at (n,k) = (" +
                           std::to_string(n) + "," + std::to_string(k) + ")");
    }
    if (k >= n) throw domain_error("large_k_estimate needs k < n");
    const double q = ctx.q_real();
    const double C = c_of_q(ctx);
    const double kd = static_cast<double>(k);
    const double nk = static_cast<double>(n - k);
    const double lg = std::log(C) + static_cast<double>(n) * std::log(q) +
                      (q - 1.0) * (std::log(kd) + std::log(nk)) - kd * std::log(q);

    ScaledFloat direct = ScaledFloat::from_int(pow_ui(q_of(ctx), n));
    direct = direct / ScaledFloat::from_int(pow_ui(q_of(ctx), k));
    direct = direct * ScaledFloat::from_double(C * std::pow(kd, q - 1.0));
    direct = direct * ScaledFloat::from_double(std::pow(nk, q - 1.0));
    check_routes(lg, direct, "large_k_estimate");
    return lg;
}

double large_k_estimate(unsigned n, unsigned k, const AnalyticContext& ctx,
                        const RegimeParams& p, bool force) {
    return std::exp(large_k_log(n, k, ctx, p, force));
}

double n_prime_log(unsigned n, unsigned j, const AnalyticContext& ctx) {
    if (n < 2 || j < 1) throw domain_error("n_prime_estimate needs n >= 2, j >= 1");
    const double ln_n = std::log(static_cast<double>(n));
    const double q = ctx.q_real();
    if (static_cast<double>(j) > std::exp(1.0) * q * ln_n) {
        throw domain_error("n_prime_estimate valid for j <= e q log n = " +
                           std::to_string(std::exp(1.0) * q * ln_n));
    }
    const double Q = q_j(j, ln_n, ctx);
    if (!(Q > 0.0)) {
        throw verification_error("Q_j(log n) not positive at (n,j) = (" +
                                 std::to_string(n) + "," + std::to_string(j) + ")");
    }
    const double lg =
        static_cast<double>(n) * std::log(q) - ln_n + std::log(Q);

    ScaledFloat direct = ScaledFloat::from_int(pow_ui(q_of(ctx), n));
    direct = direct * ScaledFloat::from_double(Q / static_cast<double>(n));
    check_routes(lg, direct, "n_prime_estimate");
    return lg;
}

double n_prime_estimate(unsigned n, unsigned j, const AnalyticContext& ctx) {
    return std::exp(n_prime_log(n, j, ctx));
}

std::complex<double> mz_mainterm(unsigned n, std::complex<double> z,
                                 const AnalyticContext& ctx, Kind kind) {
    if (n < 2) throw domain_error("mz_mainterm needs n >= 2");
    const std::complex<double> base =
        kind == Kind::ALL_MONICS ? H_eval(z, ctx) : h_eval(z, ctx);
    const double ln_n = std::log(static_cast<double>(n));
    std::complex<double> lg = static_cast<double>(n) * std::log(ctx.q_real()) +
                              (z - 1.0) * ln_n;
    return std::exp(lg) * z * base;
}

T2Diagnostic t2_diagnostic(const BivariateSeries& all,
                           const BivariateSeries& no_linear, unsigned n,
                           unsigned k, const AnalyticContext& ctx) {
    DecompositionBreakdown d = decompose(all, no_linear, n, k);
    T2Diagnostic out;
    out.n = n;
    out.k = k;
    out.t2 = d.t2;
    const double q = ctx.q_real();
    const double nk = static_cast<double>(n - k);
    out.shape_log = nk * std::log(q) + (q - 2.0) * std::log(nk);
    out.ratio = d.t2 == 0 ? 0.0 : std::exp(log_int(d.t2) - out.shape_log);
    return out;
}

TwistedSum twisted_binomial_sum(unsigned n, unsigned k,
                                const AnalyticContext& ctx) {
    if (k < 1 || 2 * k > n) {
        throw domain_error("twisted_binomial_sum requires 1 <= k <= n/2");
    }
    if (n - k < 2) throw domain_error("twisted_binomial_sum needs n - k >= 2");
    const double q = ctx.q_real();
    const unsigned long qm1 = q_of(ctx) - 1;
    const double Y = std::log(static_cast<double>(n - k));
    const unsigned j_top = static_cast<unsigned>(std::floor(std::exp(1.0) * q * Y));

    TwistedSum out;
    for (unsigned j = 1; j <= j_top && j <= k + qm1; ++j) {
        const Int w = binom(Int(static_cast<long>(k) - j + static_cast<long>(qm1)), qm1);
        out.lhs += w.get_d() * std::pow(q, static_cast<double>(j)) * q_j(j, Y, ctx);
    }
    const double h_q = h_eval({q, 0.0}, ctx).real();
    out.rhs = std::pow(static_cast<double>(k), q - 1.0) * q *
              std::pow(static_cast<double>(n - k), q) * h_q / std::exp(std::lgamma(q));
    out.ratio = out.lhs / out.rhs;
    return out;
}

namespace {

unsigned k_from_rule(const std::string& rule, unsigned n) {
    if (rule.rfind("k=n/", 0) == 0) {
        const unsigned long div = std::strtoul(rule.c_str() + 4, nullptr, 10);
        if (div == 0) throw usage_error("bad k rule \"" + rule + "\"");
        return static_cast<unsigned>((n + div - 1) / div);
    }
    if (rule.rfind("k=", 0) == 0) {
        const unsigned long k = std::strtoul(rule.c_str() + 2, nullptr, 10);
        if (k == 0) throw usage_error("bad k rule \"" + rule + "\"");
        return static_cast<unsigned>(k);
    }
    throw usage_error("k rule must look like \"k=3\" or \"k=n/4\", got \"" + rule + "\"");
}

} // namespace

ComparisonReport compare_report(const BivariateSeries& series,
                                const std::vector<unsigned>& ns,
                                const std::string& k_rule,
                                const AnalyticContext& ctx,
                                const RegimeParams& params) {
    if (series.field().q() != ctx.field().q()) {
        throw usage_error("compare_report: table and context field sizes differ");
    }
    ComparisonReport rep;
    rep.params = params;
    rep.k_rule = k_rule;
    for (unsigned n : ns) {
        ReportRow row;
        row.n = n;
        row.k = k_from_rule(k_rule, n);
        row.exact = series.count(n, row.k);
        row.regime = classify(n, row.k, ctx, params);
        if (series.kind() == Kind::NO_LINEAR_FACTORS) {
            // no-linear tables compare against their own main term
            const double lnn = std::log(static_cast<double>(n));
            if (row.k >= 1 && n >= 2 &&
                static_cast<double>(row.k) <= std::exp(1.0) * ctx.q_real() * lnn) {
                const double lg = n_prime_log(n, row.k, ctx);
                row.estimate = std::exp(lg);
                row.ratio = row.exact == 0 ? 0.0 : std::exp(log_int(row.exact) - lg);
            } else {
                row.regime = Regime::OUT_OF_RANGE;
            }
        } else if (row.regime == Regime::SMALL_K) {
            const double lg = sathe_selberg_log(n, row.k, ctx, params);
            row.estimate = std::exp(lg);
            row.ratio = row.exact == 0 ? 0.0 : std::exp(log_int(row.exact) - lg);
        } else if (row.regime == Regime::LARGE_K) {
            const double lg = large_k_log(n, row.k, ctx, params);
            row.estimate = std::exp(lg);
            row.ratio = row.exact == 0 ? 0.0 : std::exp(log_int(row.exact) - lg);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::vector<UpperBoundRow> upper_bound_diag(const BivariateSeries& no_linear,
                                            double eta, double delta,
                                            const AnalyticContext& ctx) {
    if (no_linear.kind() != Kind::NO_LINEAR_FACTORS) {
        throw usage_error("upper_bound_diag takes the no-linear-factors table");
    }
    const double q = ctx.q_real();
    if (eta <= 0.0) eta = (std::exp(1.0) - 1.0) * q;
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw config_error("upper-bound delta must lie in (0, 1]");
    }
    std::vector<UpperBoundRow> rows;
    for (unsigned n = 2; n <= no_linear.n_max(); ++n) {
        const unsigned j_top = static_cast<unsigned>(
            std::min<double>(n, std::floor(delta * static_cast<double>(n))));
        const double envelope_log = static_cast<double>(n) * std::log(q) +
                                    (q + eta - 1.0) * std::log(static_cast<double>(n));
        for (unsigned j = 1; j <= j_top; ++j) {
            const Int& c = no_linear.count(n, j);
            if (c == 0) continue;
            UpperBoundRow r;
            r.n = n;
            r.j = j;
            r.ratio = std::exp(log_int(c) +
                               static_cast<double>(j) * std::log(q + eta) - envelope_log);
            rows.push_back(r);
        }
    }
    return rows;
}

} // namespace ffc
