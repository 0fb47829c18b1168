// High-precision complex arithmetic, log1m, and Spouge's gamma.
#pragma once

#include "ffcount/field.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace ffc {

namespace bmp = boost::multiprecision;
using HP100 = bmp::number<bmp::cpp_bin_float<100>>;
using HP200 = bmp::number<bmp::cpp_bin_float<200>>;

template <class T>
struct HPComplex {
    T re{};
    T im{};

    HPComplex() = default;
    HPComplex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
    explicit HPComplex(T r) : re(std::move(r)), im(T(0)) {}
    explicit HPComplex(long r) : re(T(r)), im(T(0)) {}

    HPComplex operator-() const { return {-re, -im}; }
    HPComplex operator+(const HPComplex& o) const { return {re + o.re, im + o.im}; }
    HPComplex operator-(const HPComplex& o) const { return {re - o.re, im - o.im}; }
    HPComplex operator*(const HPComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    HPComplex operator*(const T& s) const { return {re * s, im * s}; }
    HPComplex operator/(const T& s) const { return {re / s, im / s}; }
    HPComplex operator/(const HPComplex& o) const {
        T d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    HPComplex& operator+=(const HPComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    HPComplex& operator-=(const HPComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    HPComplex& operator*=(const HPComplex& o) {
        *this = *this * o;
        return *this;
    }
};

template <class T>
T abs2(const HPComplex<T>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class T>
T abs(const HPComplex<T>& z) {
    using std::sqrt;
    return sqrt(abs2(z));
}

template <class T>
HPComplex<T> conj(const HPComplex<T>& z) {
    return {z.re, -z.im};
}

template <class T>
HPComplex<T> log(const HPComplex<T>& z) {
    using std::atan2;
    using std::log;
    return {log(abs2(z)) / 2, atan2(z.im, z.re)};
}

template <class T>
HPComplex<T> exp(const HPComplex<T>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    T m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

template <class T>
HPComplex<T> sin(const HPComplex<T>& z) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

template <class T>
HPComplex<T> pow(const HPComplex<T>& z, const HPComplex<T>& w) {
    return exp(w * log(z));
}

// log(1 - w). Naive log(one - w) rounds tiny w into ulp(1); downstream sums
// weight the d-th term by pi_q(d) ~ q^d/d, which turns that absolute noise
// into O(1) errors. The series branch keeps the error relative to w.
template <class T>
HPComplex<T> log1m(const HPComplex<T>& w) {
    T a2 = abs2(w);
    if (a2 > T(1) / 16) {
        return log(HPComplex<T>(T(1), T(0)) - w);
    }
    // -sum_{k>=1} w^k / k, terms shrink by |w| <= 1/4 per step.
    HPComplex<T> term = w;
    HPComplex<T> sum = w;
    T eps2 = std::numeric_limits<T>::epsilon() * std::numeric_limits<T>::epsilon();
    for (int k = 2; k < 4000; ++k) {
        term *= w;
        HPComplex<T> add = term / T(k);
        sum += add;
        if (abs2(add) <= eps2 * abs2(sum)) break;
    }
    return -sum;
}

inline std::complex<double> log1m(std::complex<double> w) {
    double a2 = std::norm(w);
    if (a2 > 1.0 / 16) return std::log(1.0 - w);
    std::complex<double> term = w;
    std::complex<double> sum = w;
    for (int k = 2; k < 200; ++k) {
        term *= w;
        std::complex<double> add = term / static_cast<double>(k);
        sum += add;
        if (std::norm(add) <= 1e-34 * std::norm(sum)) break;
    }
    return -sum;
}

inline double log1m(double w) { return std::log1p(-w); }

template <class T>
T log1m_real(const T& w) {
    using std::log1p;
    return log1p(-w);
}

// Spouge's approximation with a = 41 terms: relative error below 1e-33,
// ample for the 1e-19 coefficient targets it feeds. Reflection handles
// Re z < 1/2.
template <class T>
HPComplex<T> gamma_hp(const HPComplex<T>& z, int a = 41) {
    using std::exp;
    using std::fabs;
    using std::pow;
    using std::sqrt;
    const T pi = boost::math::constants::pi<T>();
    if (z.re < T(1) / 2) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        HPComplex<T> s = sin(HPComplex<T>(pi, T(0)) * z);
        if (abs2(s) == T(0)) throw pole_error("gamma: pole at nonpositive integer");
        return HPComplex<T>(pi, T(0)) / (s * gamma_hp(HPComplex<T>(T(1), T(0)) - z, a));
    }
    static thread_local std::vector<T> coeff;
    static thread_local int coeff_a = -1;
    if (coeff_a != a) {
        coeff.assign(static_cast<size_t>(a), T(0));
        coeff[0] = sqrt(T(2) * pi);
        T fact = T(1);
        for (int k = 1; k < a; ++k) {
            if (k > 1) fact *= T(-(k - 1));
            coeff[static_cast<size_t>(k)] =
                pow(T(a - k), T(k) - T(1) / 2) * exp(T(a - k)) / fact;
        }
        coeff_a = a;
    }
    HPComplex<T> w = z - HPComplex<T>(T(1), T(0));
    HPComplex<T> acc(coeff[0], T(0));
    for (int k = 1; k < a; ++k) {
        acc += HPComplex<T>(coeff[static_cast<size_t>(k)], T(0)) /
               (w + HPComplex<T>(T(k), T(0)));
    }
    HPComplex<T> base = w + HPComplex<T>(T(a), T(0));
    HPComplex<T> half(T(1) / 2, T(0));
    return pow(base, w + half) * exp(-base) * acc;
}

} // namespace ffc
