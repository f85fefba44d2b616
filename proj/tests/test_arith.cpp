#include <catch2/catch_amalgamated.hpp>

#include <beauville/arith.hpp>
#include <beauville/errors.hpp>

#include <cstdint>
#include <vector>

using namespace beauville;

TEST_CASE("factorize returns sorted prime powers", "[arith]") {
    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
    CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
    CHECK(factorize(1).empty());
    CHECK(factorize(97) == std::vector<std::pair<std::uint64_t, unsigned>>{{97, 1}});
}

TEST_CASE("euler_phi on the moduli used by the Galois action", "[arith]") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(18) == 6);
    CHECK(euler_phi(20) == 8);
    CHECK(euler_phi(180) == 48);
    CHECK(euler_phi(924) == 240);
    // brute check against gcd counting
    for (std::uint64_t n = 1; n <= 200; ++n) {
        std::uint64_t count = 0;
        for (std::uint64_t k = 1; k <= n; ++k)
            if (std::gcd(k, n) == 1) ++count;
        CHECK(euler_phi(n) == count);
    }
}

TEST_CASE("deterministic primality", "[arith]") {
    CHECK(is_prime64(2));
    CHECK(is_prime64(19));
    CHECK(is_prime64(1000000007ULL));
    CHECK_FALSE(is_prime64(1));
    CHECK_FALSE(is_prime64(561));       // Carmichael
    CHECK_FALSE(is_prime64(1000000007ULL * 3));
    // agree with trial division on a window
    auto trial = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (std::uint64_t n = 0; n < 3000; ++n)
        CHECK(is_prime64(n) == trial(n));
}

TEST_CASE("crt_combine", "[arith]") {
    auto [r, m] = crt_combine(3, 8, 4, 15);
    CHECK(m == 120);
    CHECK(r % 8 == 3);
    CHECK(r % 15 == 4);
    CHECK_THROWS_AS(crt_combine(1, 6, 2, 4), validation_error);
}

TEST_CASE("admissible order pairs and their residue classes", "[arith]") {
    auto a = admissible_params(18, 20);
    CHECK(a.k0 == 9);
    CHECK(a.l0 == 5);
    CHECK(a.modulus == 360);
    CHECK(a.residue == 19);

    auto b = admissible_params(42, 44);
    CHECK(b.k0 == 21);
    CHECK(b.l0 == 11);
    CHECK(b.modulus == 1848);
    CHECK(b.residue == 43);

    CHECK_THROWS_AS(admissible_params(16, 20), validation_error);  // k/2 even
    CHECK_THROWS_AS(admissible_params(18, 12), validation_error);  // 3 | l/4
    CHECK_THROWS_AS(admissible_params(18, 24), validation_error);  // l/4 even
    CHECK_THROWS_AS(admissible_params(30, 20), validation_error);  // gcd(15,5) != 1
    CHECK_THROWS_AS(admissible_params(10, 20), validation_error);  // too small
    CHECK_THROWS_AS(admissible_params(18, 10), validation_error);  // too small
}

TEST_CASE("prime scan respects the residue class and odd cofactors", "[arith]") {
    auto params = admissible_params(18, 20);
    auto primes = scan_primes(params, 2000);
    CHECK(primes == std::vector<std::uint64_t>{19, 379, 739, 1459});
    for (auto p : primes) {
        CHECK(p % 24 == 19);
        CHECK((p - 1) % 18 == 0);
        CHECK((p + 1) % 20 == 0);
        CHECK(((p - 1) / 18) % 2 == 1);
        CHECK(((p + 1) / 20) % 2 == 1);
    }
    CHECK(scan_primes(params, 18).empty());
}
