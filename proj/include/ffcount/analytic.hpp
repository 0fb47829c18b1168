// Euler products, the h/H generating constants and their Taylor data.
#pragma once

#include "ffcount/bigint.hpp"
#include "ffcount/field.hpp"

#include <complex>
#include <mutex>
#include <vector>

namespace ffc {

struct AnalyticConfig {
    unsigned trunc_degree = 40;  // Euler products truncated at deg <= D
    double delta = 0.5;          // h domain |z| < q^2 - delta
    double epsilon = 0.5;        // H domain |z| < q - epsilon
    unsigned taylor_m_max = 30;  // Taylor coefficients cached up front
    unsigned quad_nodes_min = 512;
    bool auto_extend_taylor = true;
};

// Shared per-q state: exact irreducible counts up to the truncation degree
// and lazily grown Taylor coefficients of h at 0. Concurrent reads are safe;
// lazy extension is serialized internally.
class AnalyticContext {
  public:
    AnalyticContext(FieldSize field, AnalyticConfig cfg = {});

    const FieldSize& field() const { return field_; }
    const AnalyticConfig& config() const { return cfg_; }
    double q_real() const { return static_cast<double>(field_.q()); }

    // pi_q(d) for 1 <= d <= pi_degree(); exact.
    const Int& pi(unsigned d) const;
    unsigned pi_degree() const { return static_cast<unsigned>(pi_.size()) - 1; }
    double pi_double(unsigned d) const;

    // Truncation tail bound for the Euler products at |u| <= absu:
    // 4 |z| (|z|+1) absu^{D+1} / (1 - absu).
    double tail_bound(double abs_z, double abs_u) const;

    // Taylor coefficients c_m of h around 0, c_0 = 1. Grown on demand when
    // auto_extend_taylor is set, otherwise a range_error suggests raising
    // taylor_m_max. imag_residue() reports the largest |Im| discarded while
    // realifying; values above 1e-10 abort construction.
    const std::vector<double>& taylor(unsigned m_max) const;
    double imag_residue() const { return imag_residue_; }

  private:
    void extend_taylor(unsigned m_max) const;

    FieldSize field_;
    AnalyticConfig cfg_;
    std::vector<Int> pi_;
    mutable std::vector<double> taylor_;
    mutable double imag_residue_ = 0.0;
    mutable std::mutex taylor_mutex_;
};

// zeta(u) = 1/(1 - q u); pole_error on u = 1/q.
std::complex<double> zeta_fn(const FieldSize& field, std::complex<double> u);

// Truncated Euler product for F_z(u); domain_error names the violated
// inequality when (u, z) leaves |z| < q, |u| < 1/|z|, |u| < q^{-1/2}.
std::complex<double> f_z(std::complex<double> u, std::complex<double> z,
                         const AnalyticContext& ctx);

// h(z), domain |z| < q^2 - delta; H(z) = h(z) (1 - z/q)^{-q}, |z| < q - epsilon.
std::complex<double> h_eval(std::complex<double> z, const AnalyticContext& ctx);
std::complex<double> H_eval(std::complex<double> z, const AnalyticContext& ctx);

// Q_j(X) = sum_{m=0}^{j-1} c_m X^{j-1-m} / (j-1-m)!.
double q_j(unsigned j, double X, const AnalyticContext& ctx);

// The degree-k leading constant, computed both as its own Euler product and
// as q h(q) / (q-1)!; throws verification_error if the two routes disagree
// beyond combined truncation tails plus double noise. q = 2 is outside the
// theorem and rejected.
double c_of_q(const AnalyticContext& ctx);
double c_of_q_product(const AnalyticContext& ctx);
double c_of_q_via_h(const AnalyticContext& ctx);

// Lanczos gamma for double complex arguments; pole_error at nonpositive
// integers.
std::complex<double> gamma_fn(std::complex<double> z);

} // namespace ffc
