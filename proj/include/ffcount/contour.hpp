// Contour-integral checks: circle coefficient recovery and Hankel loops.
#pragma once

#include "ffcount/analytic.hpp"
#include "ffcount/series.hpp"

#include <complex>
#include <functional>

namespace ffc {

// Trapezoidal Cauchy coefficient (1/2 pi i) oint f(u) u^{-n-1} du on |u| = r.
// Requires nodes >= 4n; accuracy_error in strict mode, otherwise the node
// count is raised to the minimum.
std::complex<double> circle_coefficient(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    unsigned n, double r, unsigned nodes, bool strict = false);

struct HankelOptions {
    double delta = 1.0;        // rays reach Re w = -delta * n
    double ray_offset = 1e-8;  // vertical offset of the two rays
    unsigned arc_nodes = 256;
    unsigned panel_nodes = 64;  // Gauss-Legendre points per geometric panel
    double a_max = 10.0;        // largest |z| accepted
};

// (1/2 pi i) int_H w^z (1 - w/n)^{-(n+1)} dw over the clockwise keyhole:
// upper ray in, circular arc |w| = 1 around 0, lower ray out. Limit as
// n -> infinity is -1/Gamma(-z). Nodes falling onto the branch cut
// (Im w ~ 0, Re w < 0) trigger one node-shift retry, then accuracy_error.
std::complex<double> hankel_integral(std::complex<double> z, unsigned n,
                                     const HankelOptions& opt = {});

struct MainTermCheck {
    std::complex<double> exact;      // table value, converted
    std::complex<double> recovered;  // circle integral of zeta^z * F-product
    std::complex<double> mainterm;
    double rel_err = 0.0;       // |recovered - exact| / |exact|
    double mainterm_ratio = 0.0;  // |exact / mainterm|
};

// Recovers M_z(n) from the analytic side by high-precision quadrature of
// zeta(u)^z times the truncated F-product on |u| = r (default 1/(2q)) and
// checks it against the exact table row to 1e-6 relative. nodes = 0 picks
// the 4n minimum; fewer follow the circle_coefficient strict/raise contract.
MainTermCheck verify_prop_main_term(const BivariateSeries& series, unsigned n,
                                    std::complex<double> z,
                                    const AnalyticContext& ctx, double r = 0.0,
                                    unsigned nodes = 0, bool strict = false);

} // namespace ffc
