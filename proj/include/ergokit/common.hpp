#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ergokit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

// fractional part mapped to [0,1)
inline double frac_part(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guard against floor rounding at integers
    return f;
}

// distance to the nearest integer, ||x||
inline double dist_to_int(double x) {
    double f = frac_part(x);
    return f <= 0.5 ? f : 1.0 - f;
}

inline long double dist_to_int_l(long double x) {
    long double f = x - std::floor(x);
    if (f >= 1.0L) f = 0.0L;
    return f <= 0.5L ? f : 1.0L - f;
}

// x mod 1 for exact rationals, result in [0,1)
inline BigRat frac_part(const BigRat& x) {
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return x - BigRat(q);
}

// ||x|| for exact rationals
inline BigRat dist_to_int(const BigRat& x) {
    BigRat f = frac_part(x);
    return f <= BigRat(1, 2) ? f : BigRat(1) - f;
}

// SplitMix64: the usual finalizer-based counter generator. Feeding
// consecutive counters gives independent-looking streams without any
// sequential state, which keeps threaded scans deterministic.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d4ecb82251104fULL;
    return x ^ (x >> 31);
}

// uniform double in [0,1) from a counter and seed
inline double uniform01(uint64_t seed, uint64_t counter) {
    uint64_t z = splitmix64(seed ^ splitmix64(counter));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
    static const char* digits = "0123456789abcdef";
    uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace ergokit
