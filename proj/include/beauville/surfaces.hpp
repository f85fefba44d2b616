#pragma once

// Beauville structures on PGL2(p): condition checking for pairs of generating
// triples, genus computation, assembly of the full set of surfaces for a
// bitype (2,3,k; 2,4,l), and the Galois action on those surfaces.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/errors.hpp"
#include "beauville/pgl2.hpp"
#include "beauville/triples.hpp"

namespace beauville {

// Class keys of every non-identity power of a, b and c. Condition (3) below
// compares these sets: conjugates of powers sweep out whole classes, so
// disjointness of the key sets is exactly the textbook condition.
inline std::set<ClassKey> sigma_key_set(const Group& G, const GeneratingTriple& t) {
    const FieldContext& F = G.field();
    std::set<ClassKey> keys;
    for (const GroupElement* x : {&t.a, &t.b, &t.c}) {
        GroupElement g = *x;
        while (!(g == identity_element())) {
            keys.insert(G.class_key(g));
            g = multiply(F, g, *x);
        }
    }
    return keys;
}

struct BeauvilleStructure {
    GeneratingTriple first, second;
    std::set<ClassKey> sigma_keys_1, sigma_keys_2;
};

// Checks that the two triples really form a Beauville structure. The three
// defining conditions are reported by number: (1) both triples generate the
// group, (2) both types are hyperbolic (1/l + 1/m + 1/n < 1), (3) no
// non-identity power of one triple is conjugate to one of the other.
// Condition (2) is checked before condition (1): a non-hyperbolic type can
// never generate here, and the type is the structural reason worth reporting.
inline BeauvilleStructure verify_beauville(const Group& G, const GeneratingTriple& first,
                                           const GeneratingTriple& second) {
    const FieldContext& F = G.field();

    auto check_data = [&](const GeneratingTriple& t, const char* which) {
        const std::array<const GroupElement*, 3> elems{&t.a, &t.b, &t.c};
        for (int i = 0; i < 3; ++i)
            if (G.element_order(*elems[i]) != t.type[i])
                throw verification_error(std::string("triple data: ") + which +
                                         " triple entry " + std::to_string(i + 1) +
                                         " does not have its declared order " +
                                         std::to_string(t.type[i]));
        if (!(multiply(F, multiply(F, t.a, t.b), t.c) == identity_element()))
            throw verification_error(std::string("triple data: ") + which +
                                     " triple product abc is not the identity");
        if (!(G.class_key(t.c) == t.orbit_key))
            throw verification_error(std::string("triple data: ") + which +
                                     " triple orbit key does not match its c entry");
    };
    check_data(first, "first");
    check_data(second, "second");

    auto check_hyperbolic = [](const GeneratingTriple& t, const char* which) {
        // 1/l + 1/m + 1/n < 1 as integers: mn + ln + lm < lmn
        std::uint64_t l = t.type[0], m = t.type[1], n = t.type[2];
        if (m * n + l * n + l * m >= l * m * n)
            throw verification_error(std::string("Beauville condition (2) failed: ") + which +
                                     " triple type (" + std::to_string(l) + "," +
                                     std::to_string(m) + "," + std::to_string(n) +
                                     ") is not hyperbolic");
    };
    check_hyperbolic(first, "first");
    check_hyperbolic(second, "second");

    GenerationTester tester(G);
    if (!tester.generates(first.a, first.b))
        throw verification_error(
            "Beauville condition (1) failed: first triple does not generate the group");
    if (!tester.generates(second.a, second.b))
        throw verification_error(
            "Beauville condition (1) failed: second triple does not generate the group");

    BeauvilleStructure out{first, second, sigma_key_set(G, first), sigma_key_set(G, second)};
    for (const ClassKey& k : out.sigma_keys_1)
        if (out.sigma_keys_2.count(k))
            throw verification_error(
                "Beauville condition (3) failed: power class " + to_string(k) +
                " is shared by both triples");
    return out;
}

// Riemann-Hurwitz genus of the quotient datum: 2g - 2 = |G| (1 - 1/l - 1/m - 1/n).
// Exact integer arithmetic; a fractional result or a genus below 2 signals an
// inadmissible type.
inline std::int64_t genus(std::uint32_t p, std::array<std::uint32_t, 3> type) {
    FieldContext F(p);  // validates that p is an odd prime
    for (std::uint32_t t : type)
        if (t < 2) throw validation_error("genus requires all periods >= 2");
    const __int128 order = static_cast<__int128>(p) * p * p - p;
    const __int128 l = type[0], m = type[1], n = type[2];
    const __int128 lmn = l * m * n;
    const __int128 numerator = order * (lmn - m * n - l * n - l * m);
    const __int128 denom = 2 * lmn;
    if (numerator % denom != 0)
        throw verification_error("genus is not an integer for type (" + std::to_string(type[0]) +
                                 "," + std::to_string(type[1]) + "," + std::to_string(type[2]) +
                                 ") at p=" + std::to_string(p));
    std::int64_t g = static_cast<std::int64_t>(numerator / denom) + 1;
    if (g < 2)
        throw verification_error("genus " + std::to_string(g) + " is below 2 for type (" +
                                 std::to_string(type[0]) + "," + std::to_string(type[1]) + "," +
                                 std::to_string(type[2]) + ")");
    return g;
}

struct BeauvilleSurfaceRecord {
    std::uint32_t p = 0, k = 0, l = 0, m = 0;  // m = lcm(k, l)
    std::string bitype;                        // "(2,3,k;2,4,l)"
    std::uint32_t i = 0, j = 0;                // 1-based orbit indices
    ClassKey orbit_key_1, orbit_key_2;
    std::int64_t genus_1 = 0, genus_2 = 0;
    std::uint64_t orbit_size = 0;     // phi(m)/4 surfaces in the Galois orbit
    std::uint64_t moduli_degree = 0;  // phi(k)/2 * phi(l)/2, degree of the moduli field
    GeneratingTriple first_triple, second_triple;
};

namespace detail {

inline BeauvilleSurfaceRecord make_surface_record(const Group& G, std::uint32_t k, std::uint32_t l,
                                                  std::uint32_t i, std::uint32_t j,
                                                  const BeauvilleStructure& s) {
    BeauvilleSurfaceRecord r;
    r.p = G.p();
    r.k = k;
    r.l = l;
    r.m = static_cast<std::uint32_t>(std::lcm(k, l));
    r.bitype = "(2,3," + std::to_string(k) + ";2,4," + std::to_string(l) + ")";
    r.i = i;
    r.j = j;
    r.orbit_key_1 = s.first.orbit_key;
    r.orbit_key_2 = s.second.orbit_key;
    r.genus_1 = genus(G.p(), s.first.type);
    r.genus_2 = genus(G.p(), s.second.type);
    r.orbit_size = euler_phi(r.m) / 4;
    r.moduli_degree = (euler_phi(k) / 2) * (euler_phi(l) / 2);
    r.first_triple = s.first;
    r.second_triple = s.second;
    return r;
}

}  // namespace detail

// All surfaces of bitype (2,3,k; 2,4,l): the Cartesian product of the k-orbit
// and l-orbit representatives, each pair verified from scratch. The count must
// land on phi(m)/4.
inline std::vector<BeauvilleSurfaceRecord> build_all_surfaces(const Group& G, std::uint32_t k,
                                                              std::uint32_t l) {
    admissible_params(k, l);  // validates the shape constraints on (k, l)
    if (G.p() % 24 != 19)
        throw validation_error("p must be 19 mod 24 (so that p = 3 mod 8 and 3 | p-1)");
    if ((G.p() - 1) % k != 0 || ((G.p() - 1) / k) % 2 == 0)
        throw validation_error("k must divide p-1 with odd cofactor");
    if ((G.p() + 1) % l != 0 || ((G.p() + 1) / l) % 2 == 0)
        throw validation_error("l must divide p+1 with odd cofactor");

    std::vector<GeneratingTriple> first = orbit_representatives(G, {2, 3, k});
    std::vector<GeneratingTriple> second = orbit_representatives(G, {2, 4, l});
    std::vector<BeauvilleSurfaceRecord> out;
    for (std::size_t i = 0; i < first.size(); ++i)
        for (std::size_t j = 0; j < second.size(); ++j) {
            BeauvilleStructure s = verify_beauville(G, first[i], second[j]);
            out.push_back(detail::make_surface_record(
                G, k, l, static_cast<std::uint32_t>(i + 1), static_cast<std::uint32_t>(j + 1), s));
        }
    const std::uint64_t expected = euler_phi(std::lcm<std::uint64_t>(k, l)) / 4;
    if (out.size() != expected)
        throw verification_error("built " + std::to_string(out.size()) +
                                 " surfaces, expected phi(m)/4 = " + std::to_string(expected));
    return out;
}

// Image of a class under the Galois twist c -> c^gamma.
inline ClassKey galois_act_on_orbit(const Group& G, const ClassKey& key, std::uint64_t gamma) {
    GroupElement rep = G.find_class_representative(key);
    std::uint32_t n = G.element_order(rep);
    if (std::gcd<std::uint64_t>(gamma, n) != 1)
        throw validation_error("exponent " + std::to_string(gamma) +
                               " is not coprime to the element order " + std::to_string(n));
    return G.class_key(power(G.field(), rep, gamma));
}

// Action of (Z/m)* on the surface records by simultaneous powering of both
// c-generators. Regularity means: the induced distinct permutations are as
// many as the records, the action is transitive, and no non-identity
// permutation has a fixed point.
struct GaloisOrbitTable {
    std::uint32_t m = 0;
    std::vector<std::uint32_t> exponents;                   // gamma in (Z/m)*, ascending
    std::vector<std::vector<std::uint32_t>> permutations;   // one row per exponent
    std::size_t distinct_permutations = 0;
    bool transitive = false;
    bool regular = false;
};

inline GaloisOrbitTable galois_orbit_table(const Group& G,
                                           const std::vector<BeauvilleSurfaceRecord>& records) {
    if (records.empty()) throw validation_error("no surface records to act on");
    const FieldContext& F = G.field();
    GaloisOrbitTable T;
    T.m = records[0].m;

    std::map<std::pair<ClassKey, ClassKey>, std::uint32_t> by_keys;
    for (std::size_t r = 0; r < records.size(); ++r) {
        auto [it, fresh] = by_keys.try_emplace(
            std::make_pair(records[r].orbit_key_1, records[r].orbit_key_2),
            static_cast<std::uint32_t>(r));
        if (!fresh) throw verification_error("two records share the same orbit key pair");
    }

    std::set<std::vector<std::uint32_t>> distinct;
    for (std::uint32_t gamma = 1; gamma < T.m; ++gamma) {
        if (std::gcd(gamma, T.m) != 1) continue;
        std::vector<std::uint32_t> perm(records.size());
        for (std::size_t r = 0; r < records.size(); ++r) {
            ClassKey k1 = G.class_key(power(F, records[r].first_triple.c, gamma));
            ClassKey k2 = G.class_key(power(F, records[r].second_triple.c, gamma));
            auto it = by_keys.find(std::make_pair(k1, k2));
            if (it == by_keys.end())
                throw verification_error("exponent " + std::to_string(gamma) +
                                         " maps a record outside the family");
            perm[r] = it->second;
        }
        std::vector<std::uint32_t> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t r = 0; r < sorted.size(); ++r)
            if (sorted[r] != r)
                throw verification_error("exponent " + std::to_string(gamma) +
                                         " does not act as a permutation");
        T.exponents.push_back(gamma);
        T.permutations.push_back(perm);
        distinct.insert(std::move(perm));
    }
    T.distinct_permutations = distinct.size();

    std::vector<char> reached(records.size(), 0);
    reached[0] = 1;
    std::size_t count = 1;
    std::vector<std::uint32_t> frontier{0};
    while (!frontier.empty()) {
        std::uint32_t r = frontier.back();
        frontier.pop_back();
        for (const auto& perm : T.permutations)
            if (!reached[perm[r]]) {
                reached[perm[r]] = 1;
                ++count;
                frontier.push_back(perm[r]);
            }
    }
    T.transitive = (count == records.size());

    bool free_action = true;
    std::vector<std::uint32_t> id(records.size());
    for (std::size_t r = 0; r < id.size(); ++r) id[r] = static_cast<std::uint32_t>(r);
    for (const auto& perm : distinct) {
        if (perm == id) continue;
        for (std::size_t r = 0; r < perm.size(); ++r)
            if (perm[r] == r) { free_action = false; break; }
    }
    T.regular = T.transitive && free_action && T.distinct_permutations == records.size();
    return T;
}

inline GaloisOrbitTable galois_orbit_table(const Group& G, std::uint32_t k, std::uint32_t l) {
    return galois_orbit_table(G, build_all_surfaces(G, k, l));
}

// Bundled example data: declared triples for one prime, checked as a whole.
struct FixtureTriple {
    std::uint32_t exponent = 0;  // power of the family's base c-generator
    std::array<std::uint32_t, 3> type{};
    GroupElement a, b, c;
};

struct FixtureSet {
    std::uint32_t p = 0;
    std::string description;
    std::vector<FixtureTriple> first_triples;   // type (2,3,k)
    std::vector<FixtureTriple> second_triples;  // type (2,4,l)
};

struct FixtureVerification {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<BeauvilleSurfaceRecord> records;
};

// Re-verifies every claim carried by a fixture set: element orders, triple
// products, generation, pairwise distinct orbit keys realizing the expected
// exponent patterns, and the full cross product of Beauville verifications.
inline FixtureVerification verify_fixture_set(const Group& G, const FixtureSet& fs) {
    const FieldContext& F = G.field();
    FixtureVerification out;
    auto fail = [&](std::string msg) {
        out.ok = false;
        out.failures.push_back(std::move(msg));
    };

    GenerationTester tester(G);
    auto check_family = [&](const std::vector<FixtureTriple>& family, const char* name) {
        std::set<ClassKey> keys;
        for (const FixtureTriple& t : family) {
            std::string tag = std::string(name) + " triple, exponent " + std::to_string(t.exponent);
            const std::array<const GroupElement*, 3> elems{&t.a, &t.b, &t.c};
            const std::array<const char*, 3> names{"a", "b", "c"};
            bool orders_ok = true;
            for (int i = 0; i < 3; ++i)
                if (G.element_order(*elems[i]) != t.type[i]) {
                    fail(tag + ": entry " + names[i] + " has order " +
                         std::to_string(G.element_order(*elems[i])) + ", declared " +
                         std::to_string(t.type[i]));
                    orders_ok = false;
                }
            if (!(multiply(F, multiply(F, t.a, t.b), t.c) == identity_element()))
                fail(tag + ": product abc is not the identity");
            if (orders_ok && !tester.generates(t.a, t.b))
                fail(tag + ": does not generate the group");
            if (!keys.insert(G.class_key(t.c)).second)
                fail(tag + ": orbit key repeats inside its family");
        }
        // the declared exponent pattern must match the actual key pattern:
        // key(c of exponent e) == key(c_1 ^ e) relative to the first triple
        if (!family.empty()) {
            const FixtureTriple& base = family.front();
            for (const FixtureTriple& t : family) {
                ClassKey expect = G.class_key(power(F, base.c, t.exponent));
                if (!(G.class_key(t.c) == expect))
                    fail(std::string(name) + " triple, exponent " + std::to_string(t.exponent) +
                         ": orbit key does not match the declared power of the base generator");
            }
        }
    };
    check_family(fs.first_triples, "first");
    check_family(fs.second_triples, "second");
    if (!out.ok) return out;

    const std::uint32_t k = fs.first_triples.front().type[2];
    const std::uint32_t l = fs.second_triples.front().type[2];
    for (std::size_t i = 0; i < fs.first_triples.size(); ++i)
        for (std::size_t j = 0; j < fs.second_triples.size(); ++j) {
            const FixtureTriple &f = fs.first_triples[i], &s = fs.second_triples[j];
            GeneratingTriple t1{f.a, f.b, f.c, f.type, G.class_key(f.c)};
            GeneratingTriple t2{s.a, s.b, s.c, s.type, G.class_key(s.c)};
            try {
                BeauvilleStructure st = verify_beauville(G, t1, t2);
                out.records.push_back(detail::make_surface_record(
                    G, k, l, static_cast<std::uint32_t>(i + 1),
                    static_cast<std::uint32_t>(j + 1), st));
            } catch (const verification_error& e) {
                fail("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     "): " + e.what());
            }
        }
    return out;
}

}  // namespace beauville
