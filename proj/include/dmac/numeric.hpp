#pragma once

// Exact big-integer combinatorics and a few log-domain helpers shared by the
// code-parameter computations and the closed-form bounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dmac {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial_big(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt pow_big(uint64_t base, uint64_t e) {
    BigInt r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log2_big: nonpositive argument");
    const auto bits = boost::multiprecision::msb(v);  // floor(log2 v)
    if (bits <= 52) return std::log2(v.convert_to<double>());
    const BigInt top = v >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

/// ln C(n, k) via lgamma.
inline double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

/// ln(e^a + e^b) without overflow.
inline double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// ln(e^x - 1), stable for both small and large x > 0.
inline double log_expm1(double x) {
    if (x <= 0) throw std::domain_error("log_expm1: argument must be positive");
    if (x > 40) return x;
    return std::log(std::expm1(x));
}

}  // namespace dmac
