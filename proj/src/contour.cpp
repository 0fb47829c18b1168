#include "ffcount/contour.hpp"

#include "ffcount/asymptotics.hpp"
#include "ffcount/hp.hpp"
#include "ffcount/irreducibles.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace ffc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration on P_m.
void leggauss(unsigned m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    for (unsigned i = 0; i < (m + 1) / 2; ++i) {
        double xi = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                             (static_cast<double>(m) + 0.5));
        double p1 = 0.0, dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0;
            p1 = xi;
            for (unsigned j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(m) * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        x[i] = xi;
        x[m - 1 - i] = -xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[m - 1 - i] = w[i];
    }
}

} // namespace

std::complex<double> circle_coefficient(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    unsigned n, double r, unsigned nodes, bool strict) {
    if (!(r > 0.0)) throw domain_error("circle radius must be positive");
    const unsigned needed = std::max(4 * n, 16u);
    if (nodes < needed) {
        if (strict) {
            throw accuracy_error("circle_coefficient needs >= 4n = " +
                                 std::to_string(4 * n) + " nodes, got " +
                                 std::to_string(nodes));
        }
        nodes = needed;
    }
    std::complex<double> sum = 0.0;
    for (unsigned j = 0; j < nodes; ++j) {
        const double th = 2.0 * kPi * static_cast<double>(j) / nodes;
        const std::complex<double> u = std::polar(r, th);
        // e^{-i n theta_j} via exact index reduction on the unit circle
        const unsigned long long idx =
            (static_cast<unsigned long long>(n) * j) % nodes;
        const double phase = -2.0 * kPi * static_cast<double>(idx) / nodes;
        sum += f(u) * std::polar(1.0, phase);
    }
    // r^{-n} applied as 2^E * 2^{frac} to defer overflow to the result itself
    const double l2 = -static_cast<double>(n) * std::log2(r);
    const double fl = std::floor(l2);
    const double mul = std::exp2(l2 - fl) / nodes;
    const int E = static_cast<int>(std::max(-60000.0, std::min(60000.0, fl)));
    return {std::ldexp(sum.real() * mul, E), std::ldexp(sum.imag() * mul, E)};
}

namespace {

std::complex<double> hankel_attempt(std::complex<double> z, unsigned n,
                                    const HankelOptions& opt, double shift) {
    const double nd = static_cast<double>(n) * opt.delta;
    const auto f = [&](std::complex<double> w) {
        if (std::fabs(w.imag()) < 1e-14 && w.real() < 0.0) {
            throw accuracy_error("hankel node on the branch cut");
        }
        return std::exp(z * std::log(w) -
                        (static_cast<double>(n) + 1.0) * std::log(1.0 - w / static_cast<double>(n)));
    };

    std::vector<double> xs, ws;
    leggauss(opt.panel_nodes, xs, ws);

    std::complex<double> total = 0.0;
    const double eps = opt.ray_offset * (1.0 + shift);
    std::vector<double> edges{1.0};
    while (edges.back() < nd) edges.push_back(std::min(edges.back() * 2.0, nd));
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = (edges[p] + edges[p + 1]) / 2.0;
        const double half = (edges[p + 1] - edges[p]) / 2.0;
        for (unsigned i = 0; i < opt.panel_nodes; ++i) {
            const double t = mid + half * xs[i];
            total += ws[i] * half *
                     (f({-t, eps}) - f({-t, -eps}));
        }
    }

    // unit arc, midpoint trapezoid, phi decreasing from pi to -pi
    const double h = 2.0 * kPi / opt.arc_nodes;
    for (unsigned j = 0; j < opt.arc_nodes; ++j) {
        const double phi = kPi - (static_cast<double>(j) + 0.5 + shift) * h;
        const std::complex<double> w = std::polar(1.0, phi);
        total += f(w) * std::complex<double>(0.0, 1.0) * w * (-h);
    }
    return total / std::complex<double>(0.0, 2.0 * kPi);
}

} // namespace

std::complex<double> hankel_integral(std::complex<double> z, unsigned n,
                                     const HankelOptions& opt) {
    if (std::abs(z) > opt.a_max) {
        throw domain_error("hankel_integral supports |z| <= " + std::to_string(opt.a_max));
    }
    if (n < 2) throw domain_error("hankel_integral needs n >= 2");
    if (!(opt.delta > 0.0)) throw config_error("hankel delta must be positive");
    try {
        return hankel_attempt(z, n, opt, 0.0);
    } catch (const accuracy_error&) {
        // shift every node once and retry; a second strike is fatal
        return hankel_attempt(z, n, opt, 0.25);
    }
}

namespace {

using C200 = HPComplex<HP200>;

// log of zeta(u)^z times the truncated product with factors
// (1 - z u^d)^{-pi_d} (1 - u^d)^{z pi_d}; omitted factors are 1 + O(u^{2d}),
// so with D = n/2 + 1 every u-coefficient up to n is exact.
C200 log_integrand(const C200& u, const C200& z, const std::vector<HP200>& pis,
                   unsigned D, unsigned long q, Kind kind) {
    C200 acc = -(z * log1m(u * HP200(q)));
    unsigned d_lo = 1;
    if (kind == Kind::NO_LINEAR_FACTORS) {
        // (1 - u)^{q z} replaces the degree-1 factor pair
        acc += z * (log1m(u) * HP200(q));
        d_lo = 2;
    }
    C200 upow(HP200(1), HP200(0));
    for (unsigned d = 1; d < d_lo; ++d) upow *= u;
    for (unsigned d = d_lo; d <= D; ++d) {
        upow *= u;
        acc += (-log1m(z * upow) + z * log1m(upow)) * pis[d];
    }
    return acc;
}

} // namespace

MainTermCheck verify_prop_main_term(const BivariateSeries& series, unsigned n,
                                    std::complex<double> z,
                                    const AnalyticContext& ctx, double r,
                                    unsigned nodes, bool strict) {
    if (series.field().q() != ctx.field().q()) {
        throw usage_error("verify_prop_main_term: table and context field sizes differ");
    }
    if (n < 2 || n > series.n_max()) {
        throw range_error("verify_prop_main_term: n outside table range");
    }
    const unsigned long q = static_cast<unsigned long>(series.field().q());
    if (r <= 0.0) r = 1.0 / (2.0 * static_cast<double>(q));
    const double az = std::abs(z);
    const unsigned d_first = series.kind() == Kind::ALL_MONICS ? 1 : 2;
    if (!(az * std::pow(r, static_cast<double>(d_first)) < 1.0)) {
        throw domain_error("verify_prop_main_term: |z| r^" + std::to_string(d_first) +
                           " >= 1, product diverges on the circle");
    }
    if (!(static_cast<double>(q) * r < 1.0)) {
        throw domain_error("verify_prop_main_term: circle must stay inside |u| < 1/q");
    }

    const unsigned D = n / 2 + 1;
    const unsigned needed = 4 * n;
    unsigned N = nodes == 0 ? needed : nodes;
    if (N < needed) {
        if (strict) {
            throw accuracy_error("verify_prop_main_term needs >= 4n = " +
                                 std::to_string(needed) + " nodes, got " +
                                 std::to_string(nodes));
        }
        N = needed;
    }
    std::vector<HP200> pis(D + 1, HP200(0));
    {
        IrreducibleTable tab = count_table(series.field(), D);
        for (unsigned d = 1; d <= D; ++d) pis[d] = HP200(tab.counts[d].get_str());
    }

    const HP200 rr(r);
    const C200 z_hp(HP200(z.real()), HP200(z.imag()));
    const HP200 two_pi = 2 * boost::math::constants::pi<HP200>();
    std::vector<HP200> cosj(N), sinj(N);
    for (unsigned j = 0; j < N; ++j) {
        HP200 th = two_pi * HP200(j) / HP200(N);
        cosj[j] = cos(th);
        sinj[j] = sin(th);
    }

    C200 sum(HP200(0), HP200(0));
    for (unsigned j = 0; j < N; ++j) {
        C200 u(rr * cosj[j], rr * sinj[j]);
        C200 g = exp(log_integrand(u, z_hp, pis, D, q, series.kind()));
        const unsigned idx = static_cast<unsigned>(
            (static_cast<unsigned long long>(n) * j) % N);
        const unsigned cidx = (N - idx) % N;
        sum += g * C200(cosj[cidx], sinj[cidx]);
    }
    const HP200 r_pow_n = pow(HP200(rr), static_cast<int>(n));
    C200 coeff = sum / (HP200(N) * r_pow_n);

    MainTermCheck out;
    out.recovered = {static_cast<double>(coeff.re), static_cast<double>(coeff.im)};
    if (z.imag() == 0.0) {
        // Real z: the row polynomial alternates for z < 0 and a double Horner
        // can lose the whole value to cancellation. Every double is a dyadic
        // rational, so evaluate exactly and compare in quadrature precision.
        const Rat exact_q = series.m_z_exact(n, Rat(z.real()));
        const HP200 exact_hp = HP200(exact_q.get_num().get_str()) /
                               HP200(exact_q.get_den().get_str());
        out.exact = {static_cast<double>(exact_hp), 0.0};
        const HP200 scale = abs(exact_hp);
        const C200 diff(coeff.re - exact_hp, coeff.im);
        out.rel_err = scale == 0 ? std::abs(out.recovered)
                                 : static_cast<double>(abs(diff) / scale);
    } else {
        out.exact = series.m_z(n, z);
        const double scale = std::abs(out.exact);
        out.rel_err = scale == 0.0 ? std::abs(out.recovered)
                                   : std::abs(out.recovered - out.exact) / scale;
    }
    try {
        out.mainterm = mz_mainterm(n, z, ctx, series.kind());
        out.mainterm_ratio = std::abs(out.exact / out.mainterm);
    } catch (const domain_error&) {
        out.mainterm = {std::nan(""), std::nan("")};
        out.mainterm_ratio = std::nan("");
    }
    if (!(out.rel_err <= 1e-6)) {
        throw verification_error("coefficient recovery off by rel " +
                                 std::to_string(out.rel_err) + " at (n,z) = (" +
                                 std::to_string(n) + "," + std::to_string(z.real()) +
                                 (z.imag() >= 0 ? "+" : "") + std::to_string(z.imag()) +
                                 "i)");
    }
    return out;
}

} // namespace ffc
