#include "ffcount/series.hpp"

#include "ffcount/irreducibles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffc {

namespace {

// Complex accumulator with an explicit power-of-two exponent so Horner over
// rows with ~q^1000 coefficients never leaves the double range.
struct ScaledC {
    std::complex<double> m{0.0, 0.0};
    long e = 0;

    void normalize() {
        double a = std::max(std::fabs(m.real()), std::fabs(m.imag()));
        if (a == 0.0) {
            e = 0;
            return;
        }
        int ex = 0;
        std::frexp(a, &ex);
        m = {std::ldexp(m.real(), -ex), std::ldexp(m.imag(), -ex)};
        e += ex;
    }

    void mul(std::complex<double> z) {
        m *= z;
        normalize();
    }

    // += mant * 2^exp2; contributions 2^600 below the accumulator are noise
    // far past double precision and are dropped.
    void add(double mant, long exp2) {
        if (mant == 0.0) return;
        if (m == std::complex<double>(0.0, 0.0)) {
            m = {mant, 0.0};
            e = exp2;
            return;
        }
        long diff = exp2 - e;
        if (diff > 600) {
            m = {mant, 0.0};
            e = exp2;
        } else if (diff >= -600) {
            m += std::complex<double>(std::ldexp(mant, static_cast<int>(diff)), 0.0);
        }
        normalize();
    }

    std::complex<double> value() const {
        if (m == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
        long ee = std::clamp(e, -100000L, 100000L);
        return {std::ldexp(m.real(), static_cast<int>(ee)),
                std::ldexp(m.imag(), static_cast<int>(ee))};
    }

    double log_abs() const {
        return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
    }
};

} // namespace

BivariateSeries::BivariateSeries(FieldSize field, unsigned n_max, Kind kind)
    : field_(field), n_max_(n_max), kind_(kind) {
    if (n_max > 1000) {
        throw usage_error("table degree cap is 1000, requested " + std::to_string(n_max));
    }
    rows_.resize(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) rows_[n].assign(n + 1, Int(0));
    rows_[0][0] = 1;
    if (n_max == 0) return;

    IrreducibleTable pis = count_table(field_, n_max);
    const unsigned d_lo = (kind == Kind::NO_LINEAR_FACTORS) ? 2 : 1;

    // One Euler factor (1 - z u^d)^{-pi_d} at a time, expanded as
    // sum_m binom(pi_d + m - 1, m) z^m u^{dm}. Descending n keeps the
    // in-place update reading pre-factor values only.
    std::vector<Int> weights;
    for (unsigned d = d_lo; d <= n_max; ++d) {
        const unsigned m_top = n_max / d;
        weights.assign(m_top + 1, Int(1));
        for (unsigned m = 1; m <= m_top; ++m) {
            weights[m] = binom(Int(pis.counts[d] + m - 1), m);
        }
        for (unsigned n = n_max; n >= d; --n) {
            auto& dst = rows_[n];
            for (unsigned m = 1; m * d <= n; ++m) {
                const auto& src = rows_[n - m * d];
                const Int& w = weights[m];
                const long len = static_cast<long>(src.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (len >= 2048 && omp_get_max_threads() > 1)
#endif
                for (long k = 0; k < len; ++k) {
                    if (mpz_sgn(src[static_cast<size_t>(k)].get_mpz_t()) != 0) {
                        mpz_addmul(dst[static_cast<size_t>(k) + m].get_mpz_t(),
                                   w.get_mpz_t(),
                                   src[static_cast<size_t>(k)].get_mpz_t());
                    }
                }
            }
        }
    }
}

const Int& BivariateSeries::count(unsigned n, long k) const {
    static const Int zero = 0;
    if (n > n_max_) {
        throw range_error("count(" + std::to_string(n) + ", " + std::to_string(k) +
                          "): table built to n_max = " + std::to_string(n_max_));
    }
    if (k < 0 || k > static_cast<long>(n)) return zero;
    return rows_[n][static_cast<size_t>(k)];
}

std::complex<double> BivariateSeries::m_z(unsigned n, std::complex<double> z) const {
    if (n > n_max_) throw range_error("m_z: n exceeds n_max");
    ScaledC acc;
    for (long k = static_cast<long>(n); k >= 0; --k) {
        acc.mul(z);
        ScaledFloat c = ScaledFloat::from_int(rows_[n][static_cast<size_t>(k)]);
        acc.add(c.mant, c.exp2);
    }
    return acc.value();
}

Int BivariateSeries::m_z_exact(unsigned n, const Int& z) const {
    if (n > n_max_) throw range_error("m_z_exact: n exceeds n_max");
    Int acc = 0;
    for (long k = static_cast<long>(n); k >= 0; --k) {
        acc *= z;
        acc += rows_[n][static_cast<size_t>(k)];
    }
    return acc;
}

Rat BivariateSeries::m_z_exact(unsigned n, const Rat& z) const {
    if (n > n_max_) throw range_error("m_z_exact: n exceeds n_max");
    Rat acc = 0;
    for (long k = static_cast<long>(n); k >= 0; --k) {
        acc *= z;
        acc += rows_[n][static_cast<size_t>(k)];
    }
    return acc;
}

double BivariateSeries::m_z_log(unsigned n, double z) const {
    if (z <= 0.0) throw domain_error("m_z_log needs z > 0");
    if (z == std::rint(z) && std::fabs(z) <= 64.0) {
        Int v = m_z_exact(n, Int(static_cast<long>(z)));
        return log_int(v);
    }
    ScaledC acc;
    for (long k = static_cast<long>(n); k >= 0; --k) {
        acc.mul({z, 0.0});
        ScaledFloat c = ScaledFloat::from_int(rows_[n][static_cast<size_t>(k)]);
        acc.add(c.mant, c.exp2);
    }
    return acc.log_abs();
}

DecompositionBreakdown decompose(const BivariateSeries& all,
                                 const BivariateSeries& no_linear, unsigned n,
                                 unsigned k, double split_factor) {
    if (all.kind() != Kind::ALL_MONICS || no_linear.kind() != Kind::NO_LINEAR_FACTORS) {
        throw usage_error("decompose needs (all-monics, no-linear-factors) tables");
    }
    if (all.field().q() != no_linear.field().q()) {
        throw usage_error("decompose: mismatched field sizes");
    }
    if (k < 1 || 2 * k > n) {
        throw domain_error("decompose requires 1 <= k <= n/2, got n = " +
                           std::to_string(n) + ", k = " + std::to_string(k));
    }
    if (n > all.n_max() || n > no_linear.n_max()) {
        throw range_error("decompose: n exceeds a table's n_max");
    }
    const unsigned long qm1 = static_cast<unsigned long>(all.field().q()) - 1;
    if (split_factor < 0.0) split_factor = std::exp(1.0) * static_cast<double>(all.field().q());

    DecompositionBreakdown out;
    out.n = n;
    out.k = k;
    out.y = std::log(static_cast<double>(n - k));
    out.split = static_cast<unsigned>(std::floor(split_factor * out.y));
    out.t1 = 0;
    out.t2 = 0;
    for (unsigned j = 1; j <= k; ++j) {
        DecompositionTerm t;
        t.j = j;
        t.weight = binom(Int(static_cast<long>(k) - j + static_cast<long>(qm1)), qm1);
        t.n_prime = no_linear.count(n + j - k, j);
        t.product = t.weight * t.n_prime;
        (j <= out.split ? out.t1 : out.t2) += t.product;
        out.terms.push_back(std::move(t));
    }
    Int direct = all.count(n, k);
    if (out.t1 + out.t2 != direct) {
        throw verification_error("decomposition mismatch at (n,k) = (" + std::to_string(n) +
                                 "," + std::to_string(k) + "): sum = " +
                                 to_decimal(out.t1 + out.t2) + ", table = " +
                                 to_decimal(direct));
    }
    return out;
}

} // namespace ffc
