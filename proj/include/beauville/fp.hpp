#pragma once

// Arithmetic in the prime field F_p for odd p < 2^31.
//
// Residues are plain uint32_t values in [0, p); the modulus lives in a
// FieldContext passed explicitly to every operation. Elements deliberately do
// not carry their modulus: bulk enumeration over |PGL2(p)| = p(p^2-1) elements
// stores four residues per element and nothing else.

#include <cstdint>
#include <string>

#include "beauville/errors.hpp"

namespace beauville {

using Fp = std::uint32_t;

class FieldContext {
public:
    explicit FieldContext(std::uint32_t p) : p_(p) {
        if (p < 3 || p % 2 == 0 || !is_odd_prime(p))
            throw validation_error("field modulus must be an odd prime >= 3, got " + std::to_string(p));
        if (p >= (1u << 31))
            throw validation_error("field modulus must be < 2^31, got " + std::to_string(p));
    }

    std::uint32_t p() const { return p_; }

    Fp add(Fp a, Fp b) const {
        std::uint32_t s = a + b;  // < 2^32 since both < 2^31
        return s >= p_ ? s - p_ : s;
    }

    Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }

    Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }

    Fp mul(Fp a, Fp b) const {
        return static_cast<Fp>((static_cast<std::uint64_t>(a) * b) % p_);
    }

    // Extended Euclid; chosen over Fermat powering to keep the cost flat.
    Fp inverse(Fp a) const {
        if (a == 0) throw validation_error("inverse of 0 in F_" + std::to_string(p_));
        std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1;
            std::int64_t t2 = t0 - q * t1;
            r0 = r1; r1 = r2;
            t0 = t1; t1 = t2;
        }
        if (t0 < 0) t0 += p_;
        return static_cast<Fp>(t0);
    }

    Fp pow(Fp base, std::uint64_t e) const {
        Fp acc = 1 % p_;
        Fp b = base;
        while (e) {
            if (e & 1) acc = mul(acc, b);
            b = mul(b, b);
            e >>= 1;
        }
        return acc;
    }

    // Euler criterion. 0 counts as a square; callers that care about the
    // two nonzero square classes must exclude 0 themselves.
    bool is_square(Fp a) const {
        if (a == 0) return true;
        return pow(a, (p_ - 1) / 2) == 1;
    }

    Fp from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Fp>(r);
    }

private:
    static bool is_odd_prime(std::uint32_t n) {
        if (n % 2 == 0) return n == 2;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    std::uint32_t p_;
};

}  // namespace beauville
