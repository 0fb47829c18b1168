#include "ffcount/analytic.hpp"

#include "ffcount/hp.hpp"
#include "ffcount/irreducibles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ffc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// log h(z) = -log Gamma(z+1) + q z log(1-1/q)
//            + sum_{d>=2} pi_d [ -log(1 - z q^-d) + z log(1 - q^-d) ]
// truncated at d <= D. Shared by the double and HP evaluators.
std::complex<double> log_h_double(std::complex<double> z, const AnalyticContext& ctx,
                                  unsigned D) {
    const double q = ctx.q_real();
    std::complex<double> acc = -std::log(gamma_fn(z + 1.0));
    acc += q * z * log1m(1.0 / q);
    double qpow = 1.0 / q;
    for (unsigned d = 2; d <= D; ++d) {
        qpow /= q;
        const double pid = ctx.pi_double(d);
        acc += pid * (-log1m(z * qpow) + z * log1m(qpow));
    }
    return acc;
}

template <class T>
HPComplex<T> log_h_hp(const HPComplex<T>& z, const T& q, const std::vector<T>& pis,
                      unsigned D) {
    HPComplex<T> acc = -log(gamma_hp(z + HPComplex<T>(T(1), T(0))));
    acc += z * (q * log1m_real(T(1) / q));
    T qpow = T(1) / q;
    for (unsigned d = 2; d <= D; ++d) {
        qpow /= q;
        acc += (-log1m(z * qpow) + z * log1m_real(qpow)) * pis[d];
    }
    return acc;
}

} // namespace

AnalyticContext::AnalyticContext(FieldSize field, AnalyticConfig cfg)
    : field_(field), cfg_(cfg) {
    if (cfg_.trunc_degree < 2) {
        throw usage_error("truncation degree must be at least 2");
    }
    // The Taylor quadrature needs at least 60 product factors to keep its
    // truncation tail below the coefficient scale; the count table is cheap.
    const unsigned d_top = std::max(cfg_.trunc_degree, 60u);
    pi_ = count_table(field_, d_top).counts;
}

const Int& AnalyticContext::pi(unsigned d) const {
    if (d == 0 || d >= pi_.size()) {
        throw range_error("pi_q(" + std::to_string(d) + ") outside cached range");
    }
    return pi_[d];
}

double AnalyticContext::pi_double(unsigned d) const { return pi(d).get_d(); }

double AnalyticContext::tail_bound(double abs_z, double abs_u) const {
    if (abs_u >= 1.0) throw domain_error("tail bound needs |u| < 1");
    const double D = static_cast<double>(cfg_.trunc_degree);
    return 4.0 * abs_z * (abs_z + 1.0) * std::pow(abs_u, D + 1.0) / (1.0 - abs_u);
}

const std::vector<double>& AnalyticContext::taylor(unsigned m_max) const {
    std::lock_guard<std::mutex> lock(taylor_mutex_);
    if (taylor_.size() > m_max) return taylor_;
    if (!taylor_.empty() && !cfg_.auto_extend_taylor) {
        throw range_error("Taylor cache holds " + std::to_string(taylor_.size() - 1) +
                          " coefficients; raise taylor_m_max or enable auto_extend");
    }
    extend_taylor(std::max(m_max, cfg_.taylor_m_max));
    return taylor_;
}

// Cauchy coefficients of h on |z| = rho by trapezoidal quadrature in ~100
// significant digits. rho sits just inside the first pole of the truncated
// product at z = q^2, so aliasing decays like (rho/q^2)^N.
void AnalyticContext::extend_taylor(unsigned m_max) const {
    using C = HPComplex<HP100>;
    const HP100 q = HP100(static_cast<unsigned long>(field_.q()));
    const unsigned D = std::max(cfg_.trunc_degree, 60u);
    const unsigned N = std::max(cfg_.quad_nodes_min, 8 * std::max(1u, m_max));

    std::vector<HP100> pis(D + 1, HP100(0));
    for (unsigned d = 1; d <= D; ++d) pis[d] = HP100(pi_[d].get_str());

    const double qd = static_cast<double>(field_.q());
    const double rho_d = std::min(2.9 * qd, qd * qd - cfg_.delta) / 1.05;
    const HP100 rho(rho_d);
    const HP100 two_pi = 2 * boost::math::constants::pi<HP100>();

    std::vector<HP100> cosj(N), sinj(N);
    for (unsigned j = 0; j < N; ++j) {
        HP100 th = two_pi * HP100(j) / HP100(N);
        cosj[j] = cos(th);
        sinj[j] = sin(th);
    }

    std::vector<C> hj(N);
    for (unsigned j = 0; j < N; ++j) {
        C z(rho * cosj[j], rho * sinj[j]);
        hj[j] = exp(log_h_hp(z, q, pis, D));
    }

    std::vector<double> out(m_max + 1, 0.0);
    double residue = 0.0;
    HP100 rho_pow(1);
    for (unsigned m = 0; m <= m_max; ++m) {
        C sum(HP100(0), HP100(0));
        for (unsigned j = 0; j < N; ++j) {
            // e^{-i m theta_j} reuses the node table through exact index
            // reduction of (m j) mod N.
            const unsigned idx =
                static_cast<unsigned>((static_cast<unsigned long long>(m) * j) % N);
            const unsigned conj_idx = (N - idx) % N;
            sum += hj[j] * C(cosj[conj_idx], sinj[conj_idx]);
        }
        C cm = sum / (HP100(N) * rho_pow);
        rho_pow *= rho;
        const double im = std::fabs(static_cast<double>(cm.im));
        residue = std::max(residue, im);
        if (im > 1e-10) {
            throw accuracy_error("Taylor coefficient " + std::to_string(m) +
                                 " has imaginary residue " + std::to_string(im));
        }
        out[m] = static_cast<double>(cm.re);
    }
    taylor_ = std::move(out);
    imag_residue_ = residue;
}

std::complex<double> zeta_fn(const FieldSize& field, std::complex<double> u) {
    std::complex<double> den = 1.0 - static_cast<double>(field.q()) * u;
    if (den == std::complex<double>(0.0, 0.0)) {
        throw pole_error("zeta has a simple pole at u = 1/q");
    }
    return 1.0 / den;
}

std::complex<double> f_z(std::complex<double> u, std::complex<double> z,
                         const AnalyticContext& ctx) {
    const double q = ctx.q_real();
    const double au = std::abs(u);
    const double az = std::abs(z);
    if (!(az < q)) {
        throw domain_error("f_z outside region: |z| >= q");
    }
    if (az > 0.0 && !(au < 1.0 / az)) {
        throw domain_error("f_z outside region: |u| >= 1/|z|");
    }
    if (!(au < 1.0 / std::sqrt(q))) {
        throw domain_error("f_z outside region: |u| >= q^{-1/2}");
    }
    std::complex<double> acc = 0.0;
    std::complex<double> upow = 1.0;
    for (unsigned d = 1; d <= ctx.config().trunc_degree; ++d) {
        upow *= u;
        acc += ctx.pi_double(d) * (-log1m(z * upow) + z * log1m(upow));
    }
    return std::exp(acc);
}

std::complex<double> h_eval(std::complex<double> z, const AnalyticContext& ctx) {
    const double q = ctx.q_real();
    const double limit = q * q - ctx.config().delta;
    if (!(std::abs(z) < limit)) {
        throw domain_error("h domain: |z| >= q^2 - delta = " + std::to_string(limit));
    }
    // 1/Gamma(z+1) kills h at negative integers.
    if (z.imag() == 0.0 && z.real() == std::rint(z.real()) && z.real() <= -1.0) {
        return {0.0, 0.0};
    }
    return std::exp(log_h_double(z, ctx, ctx.config().trunc_degree));
}

std::complex<double> H_eval(std::complex<double> z, const AnalyticContext& ctx) {
    const double q = ctx.q_real();
    const double limit = q - ctx.config().epsilon;
    if (!(std::abs(z) < limit)) {
        throw domain_error("H domain: |z| >= q - epsilon = " + std::to_string(limit));
    }
    if (z.imag() == 0.0 && z.real() == std::rint(z.real()) && z.real() <= -1.0) {
        return {0.0, 0.0};
    }
    std::complex<double> lg = log_h_double(z, ctx, ctx.config().trunc_degree);
    return std::exp(lg - q * log1m(z / q));
}

double q_j(unsigned j, double X, const AnalyticContext& ctx) {
    if (j == 0) throw domain_error("q_j needs j >= 1");
    const auto& c = ctx.taylor(j - 1);
    double acc = 0.0;
    double fact = 1.0;  // (j-1-m)! built downward from 0! upward in m
    // Walk m downward so the factorial grows by integer multiplication.
    for (unsigned m = j - 1;; --m) {
        acc += c[m] * std::pow(X, static_cast<double>(j - 1 - m)) / fact;
        fact *= static_cast<double>(j - m);
        if (m == 0) break;
    }
    return acc;
}

double c_of_q_product(const AnalyticContext& ctx) {
    const double q = ctx.q_real();
    if (ctx.field().q() == 2) {
        throw domain_error("C(q) requires q > 2; the large-k regime is unsupported at q = 2");
    }
    double acc = -2.0 * std::lgamma(q) + q * q * log1m(1.0 / q);
    double qpow = 1.0 / q;  // q^{-d+1} tracked alongside q^{-d}
    double qpow_lo = 1.0;
    for (unsigned d = 2; d <= ctx.config().trunc_degree; ++d) {
        qpow /= q;
        qpow_lo /= q;
        acc += ctx.pi_double(d) * (-log1m(qpow_lo) + q * log1m(qpow));
    }
    return std::exp(acc);
}

double c_of_q_via_h(const AnalyticContext& ctx) {
    const double q = ctx.q_real();
    if (ctx.field().q() == 2) {
        throw domain_error("C(q) requires q > 2; the large-k regime is unsupported at q = 2");
    }
    const double h_q = h_eval({q, 0.0}, ctx).real();
    return q * h_q / std::exp(std::lgamma(q));
}

double c_of_q(const AnalyticContext& ctx) {
    const double a = c_of_q_product(ctx);
    const double b = c_of_q_via_h(ctx);
    const double q = ctx.q_real();
    const double tol = 4.0 * ctx.tail_bound(q, 1.0 / q) + 1e-11;
    const double rel = std::fabs(a - b) / std::fabs(b);
    if (!(rel <= tol)) {
        throw verification_error("C(q) routes disagree: product = " + std::to_string(a) +
                                 ", via h = " + std::to_string(b) +
                                 ", rel diff = " + std::to_string(rel));
    }
    return a;
}

std::complex<double> gamma_fn(std::complex<double> z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double cof[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.imag() == 0.0 && z.real() == std::rint(z.real()) && z.real() <= 0.0) {
        throw pole_error("gamma: pole at nonpositive integer " + std::to_string(z.real()));
    }
    if (z.real() < 0.5) {
        std::complex<double> s = std::sin(kPi * z);
        return kPi / (s * gamma_fn(1.0 - z));
    }
    std::complex<double> w = z - 1.0;
    std::complex<double> x = cof[0];
    for (int i = 1; i < 9; ++i) x += cof[i] / (w + static_cast<double>(i));
    std::complex<double> t = w + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, w + 0.5) * std::exp(-t) * x;
}

} // namespace ffc
