#include "ffcount/asymptotics.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace ffc;
using doctest::Approx;

namespace {

const AnalyticContext& ctx3() {
    static AnalyticContext c{FieldSize(3)};
    return c;
}

} // namespace

TEST_CASE("regime classification") {
    RegimeParams p;
    CHECK(classify(400, 12, ctx3(), p) == Regime::SMALL_K);  // bands overlap
    CHECK(classify(400, 14, ctx3(), p) == Regime::SMALL_K);
    CHECK(classify(400, 100, ctx3(), p) == Regime::LARGE_K);
    CHECK(classify(100, 25, ctx3(), p) == Regime::LARGE_K);
    CHECK(classify(50, 40, ctx3(), p) == Regime::OUT_OF_RANGE);
    CHECK(classify(10, 6, ctx3(), p) == Regime::OUT_OF_RANGE);
    CHECK(classify(1, 1, ctx3(), p) == Regime::OUT_OF_RANGE);
    CHECK(classify(50, 0, ctx3(), p) == Regime::OUT_OF_RANGE);
    for (unsigned n = 50; n <= 400; n += 50) {
        CHECK(classify(n, 2, ctx3(), p) == Regime::SMALL_K);
    }
    CHECK(std::string(regime_name(Regime::SMALL_K)) == "small_k");
    CHECK(std::string(regime_name(Regime::LARGE_K)) == "large_k");
    CHECK(std::string(regime_name(Regime::OUT_OF_RANGE)) == "out_of_range");
}

TEST_CASE("xi parsing") {
    RegimeParams p;
    CHECK(xi_value(p, 400) == Approx(std::log(std::log(400.0))));
    p.xi = "1.25";
    CHECK(xi_value(p, 400) == Approx(1.25));
    p.xi = "junk";
    CHECK_THROWS_AS(xi_value(p, 400), config_error);
    p.xi = "-1";
    CHECK_THROWS_AS(xi_value(p, 400), config_error);
}

TEST_CASE("saddle-point estimate") {
    RegimeParams p;
    const double lnn = std::log(50.0);
    const double expect = 50.0 * std::log(3.0) - lnn +
                          std::log(H_eval({1.0 / lnn, 0.0}, ctx3()).real());
    CHECK(sathe_selberg_log(50, 1, ctx3(), p) == Approx(expect).epsilon(1e-13));
    CHECK(sathe_selberg_estimate(50, 2, ctx3(), p) > 0.0);
    CHECK_THROWS_AS(sathe_selberg_log(100, 25, ctx3(), p), domain_error);

    // force bypasses the regime gate but not the H domain
    RegimeParams tight;
    tight.epsilon = 1.0;
    CHECK_THROWS_AS(sathe_selberg_log(100, 10, ctx3(), tight), domain_error);
    CHECK(std::isfinite(sathe_selberg_log(100, 10, ctx3(), tight, true)));
}

TEST_CASE("large-k estimate") {
    RegimeParams p;
    AnalyticContext c2{FieldSize(2)};
    CHECK_THROWS_AS(large_k_log(100, 25, c2, p), domain_error);
    CHECK_THROWS_AS(large_k_log(400, 2, ctx3(), p), domain_error);

    const double C = c_of_q(ctx3());
    const double expect = std::log(C) + 60.0 * std::log(3.0) +
                          2.0 * (std::log(20.0) + std::log(40.0)) -
                          20.0 * std::log(3.0);
    CHECK(large_k_log(60, 20, ctx3(), p) == Approx(expect).epsilon(1e-12));
    CHECK(large_k_estimate(60, 20, ctx3(), p) ==
          Approx(std::exp(expect)).epsilon(1e-9));
}

TEST_CASE("no-linear main term") {
    const double expect = 30.0 * std::log(3.0) - std::log(30.0);
    CHECK(n_prime_log(30, 1, ctx3()) == Approx(expect).epsilon(1e-13));
    CHECK(n_prime_estimate(30, 1, ctx3()) ==
          Approx(std::pow(3.0, 30.0) / 30.0).epsilon(1e-9));
    CHECK_THROWS_AS(n_prime_log(30, 28, ctx3()), domain_error);
}

TEST_CASE("m_z main terms at z = 1 are exact totals") {
    std::complex<double> all = mz_mainterm(50, {1.0, 0.0}, ctx3(), Kind::ALL_MONICS);
    CHECK(std::abs(all - std::complex<double>(std::pow(3.0, 50.0), 0.0)) <
          1e-12 * std::abs(all));
    std::complex<double> nl =
        mz_mainterm(50, {1.0, 0.0}, ctx3(), Kind::NO_LINEAR_FACTORS);
    CHECK(std::abs(nl - std::complex<double>(8.0 * std::pow(3.0, 47.0), 0.0)) <
          1e-12 * std::abs(nl));
}

TEST_CASE("t2 diagnostic is report-only") {
    BivariateSeries all(FieldSize(3), 24, Kind::ALL_MONICS);
    BivariateSeries nl(FieldSize(3), 24, Kind::NO_LINEAR_FACTORS);
    T2Diagnostic d = t2_diagnostic(all, nl, 20, 5, ctx3());
    CHECK(d.t2 == 0);
    CHECK(d.ratio == 0.0);
    CHECK(d.shape_log == Approx(15.0 * std::log(3.0) + std::log(15.0)));
}

TEST_CASE("twisted binomial sum against its closed form") {
    TwistedSum t = twisted_binomial_sum(100, 25, ctx3());
    CHECK(t.lhs > 0.0);
    CHECK(t.rhs > 0.0);
    CHECK(t.ratio - 1.0 == Approx(-3.910389e-1).epsilon(1e-5));
    TwistedSum t2 = twisted_binomial_sum(400, 100, ctx3());
    CHECK(t2.ratio - 1.0 == Approx(-1.848017e-1).epsilon(1e-5));
    CHECK_THROWS_AS(twisted_binomial_sum(20, 11, ctx3()), domain_error);
}

TEST_CASE("comparison reports") {
    BivariateSeries all(FieldSize(3), 60, Kind::ALL_MONICS);
    RegimeParams p;

    ComparisonReport small = compare_report(all, {50, 60}, "k=2", ctx3(), p);
    REQUIRE(small.rows.size() == 2);
    for (const ReportRow& r : small.rows) {
        CHECK(r.regime == Regime::SMALL_K);
        CHECK(r.k == 2);
        CHECK(r.estimate > 0.0);
        CHECK(r.ratio == Approx(1.0).epsilon(0.1));
    }

    ComparisonReport large = compare_report(all, {60}, "k=n/4", ctx3(), p);
    REQUIRE(large.rows.size() == 1);
    CHECK(large.rows[0].k == 15);
    CHECK(large.rows[0].regime == Regime::LARGE_K);
    CHECK(large.rows[0].ratio > 0.0);

    ComparisonReport out = compare_report(all, {10}, "k=6", ctx3(), p);
    CHECK(out.rows[0].regime == Regime::OUT_OF_RANGE);
    CHECK(out.rows[0].estimate == 0.0);
    CHECK(out.rows[0].ratio == 0.0);

    BivariateSeries nl(FieldSize(3), 60, Kind::NO_LINEAR_FACTORS);
    ComparisonReport nlr = compare_report(nl, {40, 60}, "k=3", ctx3(), p);
    for (const ReportRow& r : nlr.rows) {
        CHECK(r.estimate > 0.0);
        CHECK(r.ratio == Approx(1.0).epsilon(0.35));
    }

    CHECK_THROWS_AS(compare_report(all, {50}, "m=2", ctx3(), p), usage_error);
    CHECK_THROWS_AS(compare_report(all, {50}, "k=x", ctx3(), p), usage_error);
}

TEST_CASE("upper bound sweep") {
    BivariateSeries nl(FieldSize(3), 40, Kind::NO_LINEAR_FACTORS);
    std::vector<UpperBoundRow> rows = upper_bound_diag(nl, 0.0, 0.6, ctx3());
    CHECK(!rows.empty());
    for (const UpperBoundRow& r : rows) {
        CHECK(r.j <= static_cast<unsigned>(0.6 * r.n));
        CHECK(r.ratio > 0.0);
    }
    BivariateSeries all(FieldSize(3), 10, Kind::ALL_MONICS);
    CHECK_THROWS_AS(upper_bound_diag(all, 0.0, 0.6, ctx3()), usage_error);
    CHECK_THROWS_AS(upper_bound_diag(nl, 0.0, 1.5, ctx3()), config_error);
}
