// GMP integer aliases and a mantissa/exponent scaled float for huge ratios.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace ffc {

using Int = mpz_class;
using Rat = mpq_class;

inline Int binom(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int pow_ui(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// value = mant * 2^exp2, |mant| in [0.5, 1) or exactly 0. Keeps products and
// ratios of counts ~ q^1000 representable without overflow.
struct ScaledFloat {
    double mant = 0.0;
    long exp2 = 0;

    static ScaledFloat from_int(const Int& v) {
        if (v == 0) return {};
        long e = 0;
        double m = mpz_get_d_2exp(&e, v.get_mpz_t());
        return {m, e};
    }

    static ScaledFloat from_double(double v) {
        if (v == 0.0) return {};
        int e = 0;
        double m = std::frexp(v, &e);
        return {m, e};
    }

    bool zero() const { return mant == 0.0; }

    ScaledFloat normalized() const {
        if (mant == 0.0) return {};
        int e = 0;
        double m = std::frexp(mant, &e);
        return {m, exp2 + e};
    }

    ScaledFloat operator*(const ScaledFloat& o) const {
        if (zero() || o.zero()) return {};
        return ScaledFloat{mant * o.mant, exp2 + o.exp2}.normalized();
    }

    ScaledFloat operator/(const ScaledFloat& o) const {
        return ScaledFloat{mant / o.mant, exp2 - o.exp2}.normalized();
    }

    // Natural log of |value|.
    double log_abs() const {
        return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
    }

    double to_double() const {
        if (zero()) return 0.0;
        if (exp2 > std::numeric_limits<int>::max()) {
            return mant > 0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
        }
        if (exp2 < std::numeric_limits<int>::min()) return 0.0;
        return std::ldexp(mant, static_cast<int>(exp2));
    }
};

// Natural log of a positive big integer, exact mantissa/exponent split.
inline double log_int(const Int& v) { return ScaledFloat::from_int(v).log_abs(); }

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

} // namespace ffc
