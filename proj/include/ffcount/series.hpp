// Exact bivariate generating-function tables N(n,k) and their z-evaluations.
#pragma once

#include "ffcount/bigint.hpp"
#include "ffcount/field.hpp"

#include <complex>
#include <vector>

namespace ffc {

enum class Kind { ALL_MONICS, NO_LINEAR_FACTORS };

// Dense triangular table of exact counts: row n holds coefficients of z^k,
// k = 0..n, in prod over irreducibles (1 - z u^{deg})^{-1}, optionally with
// the degree-1 factors omitted.
class BivariateSeries {
  public:
    BivariateSeries(FieldSize field, unsigned n_max, Kind kind);

    const FieldSize& field() const { return field_; }
    unsigned n_max() const { return n_max_; }
    Kind kind() const { return kind_; }

    // Zero for k > n or k < 0; throws range_error for n > n_max.
    const Int& count(unsigned n, long k) const;

    const std::vector<std::vector<Int>>& rows() const { return rows_; }

    // Row-n polynomial evaluated at z. The complex path renormalizes by
    // powers of two while accumulating, so it stays finite for any n_max;
    // converting the result to complex<double> can still overflow for
    // n log2 q + k log2|z| beyond ~1024, which callers avoid by working
    // with ratios of same-n values.
    std::complex<double> m_z(unsigned n, std::complex<double> z) const;

    // Exact evaluations for integer and rational z.
    Int m_z_exact(unsigned n, const Int& z) const;
    Rat m_z_exact(unsigned n, const Rat& z) const;

    // Log of |row-n polynomial at real z > 0| plus sign, via exact rational
    // evaluation when z is rational, else scaled double Horner.
    double m_z_log(unsigned n, double z) const;

  private:
    FieldSize field_;
    unsigned n_max_;
    Kind kind_;
    std::vector<std::vector<Int>> rows_;
};

inline BivariateSeries build_series(FieldSize field, unsigned n_max, Kind kind) {
    return BivariateSeries(field, n_max, kind);
}

struct DecompositionTerm {
    unsigned j = 0;
    Int weight;   // binom(k - j + q - 1, q - 1)
    Int n_prime;  // no-linear-factor count at (n + j - k, j)
    Int product;  // weight * n_prime
};

struct DecompositionBreakdown {
    unsigned n = 0;
    unsigned k = 0;
    double y = 0.0;      // log(n - k)
    unsigned split = 0;  // head/tail boundary floor(split_factor * y)
    Int t1;              // sum over j <= split
    Int t2;              // sum over split < j <= k
    std::vector<DecompositionTerm> terms;
};

// Exact decomposition of count(n,k) over the number j of non-linear
// irreducible factors, verified against the direct table entry.
// split_factor defaults to e*q when passed a negative value.
DecompositionBreakdown decompose(const BivariateSeries& all,
                                 const BivariateSeries& no_linear, unsigned n,
                                 unsigned k, double split_factor = -1.0);

} // namespace ffc
