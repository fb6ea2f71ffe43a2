#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace prigid {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline u64 mod_pow(u64 base, u64 exp, u64 mod) {
    u64 r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = static_cast<u64>(static_cast<u128>(r) * base % mod);
        base = static_cast<u64>(static_cast<u128>(base) * base % mod);
        exp >>= 1;
    }
    return r;
}

/// Inverse modulo a prime.
inline u64 mod_inv(u64 a, u64 p) {
    if (a % p == 0) throw usage_error("mod_inv: zero has no inverse");
    return mod_pow(a, p - 2, p);
}

/// Non-negative residue of a signed value.
inline u64 mod_norm(long long a, u64 m) {
    long long r = a % static_cast<long long>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<long long>(m) : r);
}

/// base^exp, throwing resource_error when the result leaves 128 bits.
inline u128 checked_pow(u64 base, u64 exp) {
    u128 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (base != 0 && r > (~u128{0}) / base)
            throw resource_error("integer overflow computing " + std::to_string(base) + "^" +
                                 std::to_string(exp) + " (exceeds 128 bits)");
        r *= base;
    }
    return r;
}

/// p-adic valuation of a nonzero integer.
inline int padic_val(u128 n, u64 p) {
    if (n == 0) throw usage_error("padic_val of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Exponent e with p^e == n, or -1 when n is not a power of p.
inline int exact_log(u64 n, u64 p) {
    int e = 0;
    while (n > 1) {
        if (n % p != 0) return -1;
        n /= p;
        ++e;
    }
    return n == 1 ? e : -1;
}

/// Smallest l with p^l >= n (n >= 1).
inline int ceil_log(u64 n, u64 p) {
    int l = 0;
    u64 v = 1;
    while (v < n) {
        v *= p;
        ++l;
    }
    return l;
}

inline std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace prigid
