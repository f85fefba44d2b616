#pragma once

// Elementary number theory: totient, factorization, deterministic 64-bit
// Miller-Rabin, CRT combination, and the admissibility arithmetic that turns a
// bitype (k, l) into a single residue class of primes.
//
// Admissible parameters: k = 2*k0 and l = 4*l0 with k0, l0 odd and coprime,
// l0 coprime to 3, and k, l > 10. The primes p with k | p-1, (p-1)/k odd,
// l | p+1, (p+1)/l odd are exactly those with
//     p = 3 (mod 8),  p = 1 (mod lcm(3, k0)),  p = -1 (mod l0),
// which CRT-combine into one residue class mod 8 * lcm(3, k0) * l0.

#include <cstdint>
#include <numeric>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "beauville/errors.hpp"

namespace beauville {

inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        std::uint32_t e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw validation_error("euler_phi(0) undefined");
    std::uint64_t phi = n;
    for (auto [q, e] : factorize(n)) phi = phi / q * (q - 1);
    return phi;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) acc = mulmod_u64(acc, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return acc;
}

// Inverse of a mod m for coprime a, m (extended Euclid on signed 128-bit
// accumulators so moduli up to 2^63 are safe).
inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    __int128 r0 = static_cast<__int128>(m), r1 = a % m, t0 = 0, t1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw validation_error("invmod: arguments not coprime");
    if (t0 < 0) t0 += m;
    return static_cast<std::uint64_t>(t0);
}

}  // namespace detail

// Deterministic for all n < 2^64 (witness set 2..37).
inline bool is_prime64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// x = r1 (mod m1), x = r2 (mod m2) for coprime moduli; returns (x, m1*m2).
inline std::pair<std::uint64_t, std::uint64_t> crt_combine(std::uint64_t r1, std::uint64_t m1,
                                                           std::uint64_t r2, std::uint64_t m2) {
    if (std::gcd(m1, m2) != 1) throw validation_error("crt_combine: moduli not coprime");
    std::uint64_t m = m1 * m2;
    std::uint64_t diff = (r2 + m2 - r1 % m2) % m2;
    std::uint64_t t = detail::mulmod_u64(diff, detail::invmod_u64(m1 % m2, m2), m2);
    return {r1 + m1 * t, m};
}

struct AdmissibleParams {
    std::uint32_t k = 0, l = 0;
    std::uint32_t k0 = 0, l0 = 0;
    std::uint32_t k0_prime = 0;   // lcm(3, k0)
    std::uint64_t modulus = 0;    // 8 * k0_prime * l0
    std::uint64_t residue = 0;    // the unique admissible residue mod modulus
};

inline AdmissibleParams admissible_params(std::uint32_t k, std::uint32_t l) {
    if (k <= 10) throw validation_error("admissible bitype needs k > 10, got k=" + std::to_string(k));
    if (l <= 10) throw validation_error("admissible bitype needs l > 10, got l=" + std::to_string(l));
    if (k % 4 != 2)
        throw validation_error("k must be twice an odd number (k = 2 mod 4), got k=" + std::to_string(k));
    if (l % 8 != 4)
        throw validation_error("l must be four times an odd number (l = 4 mod 8), got l=" + std::to_string(l));
    AdmissibleParams out;
    out.k = k;
    out.l = l;
    out.k0 = k / 2;
    out.l0 = l / 4;
    if (std::gcd(out.k0, out.l0) != 1)
        throw validation_error("k/2 and l/4 must be coprime, got gcd=" +
                               std::to_string(std::gcd(out.k0, out.l0)));
    if (out.l0 % 3 == 0)
        throw validation_error("l/4 must be coprime to 3, got l/4=" + std::to_string(out.l0));
    out.k0_prime = static_cast<std::uint32_t>(std::lcm<std::uint64_t>(3, out.k0));
    auto [r, m] = crt_combine(3, 8, 1, out.k0_prime);
    std::tie(r, m) = crt_combine(r, m, out.l0 - 1, out.l0);
    out.modulus = m;
    out.residue = r;
    return out;
}

inline std::vector<std::uint64_t> scan_primes(const AdmissibleParams& params, std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = params.residue; n <= limit; n += params.modulus)
        if (is_prime64(n)) out.push_back(n);
    return out;
}

}  // namespace beauville
