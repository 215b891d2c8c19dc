#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace kakeya {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(const Int& base, unsigned e) {
    Int acc = 1, b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat acc = 1, b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int num = 1, den = 1;
    for (Int i = 0; i < kk; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

// Number of r-dimensional subspaces of F_q^n.
inline Int gaussian_binomial(uint64_t q, unsigned n, unsigned r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    Int num = 1, den = 1;
    Int Q = q;
    for (unsigned i = 0; i < r; ++i) {
        num *= ipow(Q, n - i) - 1;
        den *= ipow(Q, i + 1) - 1;
    }
    return num / den;
}

inline Int floor_rat(const Rat& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    Int q = n / d;
    if (n % d != 0 && (n < 0) != (d < 0)) --q;
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    Int q = n / d;
    if (n % d != 0 && (n < 0) == (d < 0)) ++q;
    return q;
}

}  // namespace kakeya
