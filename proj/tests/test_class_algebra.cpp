#include <catch2/catch_amalgamated.hpp>

#include <beauville/class_algebra.hpp>
#include <beauville/io.hpp>
#include <beauville/pgl2.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

using namespace beauville;

// #{(x, y) in A x B : xy in C}, by scanning all |G|^2 pairs
static std::vector<std::int64_t> pair_count_oracle(const Group& G, const ClassCensus& census) {
    const FieldContext& F = G.field();
    const std::size_t n = census.size();
    std::vector<std::int64_t> T(n * n * n, 0);
    std::vector<GroupElement> elems;
    G.for_each_element([&](const GroupElement& g) { elems.push_back(g); });
    for (const GroupElement& x : elems) {
        std::size_t A = census.class_of_element_index(G.element_index(x));
        for (const GroupElement& y : elems) {
            std::size_t B = census.class_of_element_index(G.element_index(y));
            std::size_t C =
                census.class_of_element_index(G.element_index(multiply(F, x, y)));
            ++T[(A * n + B) * n + C];
        }
    }
    return T;
}

TEST_CASE("structure constants against the all-pairs oracle", "[chartab][oracle]") {
    Group G(5);
    ClassCensus census = ClassCensus::build(G);
    StructureConstants sc = StructureConstants::build(G, census);
    const std::size_t n = census.size();
    REQUIRE(sc.n == n);

    auto T = pair_count_oracle(G, census);
    for (std::size_t A = 0; A < n; ++A)
        for (std::size_t B = 0; B < n; ++B)
            for (std::size_t C = 0; C < n; ++C)
                REQUIRE(T[(A * n + B) * n + C] ==
                        sc.at(A, B, C) * static_cast<std::int64_t>(census.classes()[C].size));

    // identity row and column
    std::size_t id = census.index_of(identity_key());
    for (std::size_t B = 0; B < n; ++B)
        for (std::size_t C = 0; C < n; ++C) {
            CHECK(sc.at(id, B, C) == ((B == C) ? 1 : 0));
            CHECK(sc.at(B, id, C) == ((B == C) ? 1 : 0));
        }

    // row sums and commutativity of the class algebra
    for (std::size_t A = 0; A < n; ++A)
        for (std::size_t B = 0; B < n; ++B) {
            std::int64_t sum = 0;
            for (std::size_t C = 0; C < n; ++C) {
                sum += sc.at(A, B, C) * static_cast<std::int64_t>(census.classes()[C].size);
                CHECK(sc.at(A, B, C) == sc.at(B, A, C));
            }
            CHECK(sum == static_cast<std::int64_t>(census.classes()[A].size *
                                                   census.classes()[B].size));
        }
}

TEST_CASE("structure constants are thread-count independent", "[chartab]") {
    Group G(7);
    ClassCensus census = ClassCensus::build(G);
    StructureConstants one = StructureConstants::build(G, census, 1);
    StructureConstants four = StructureConstants::build(G, census, 4);
    CHECK(one.a == four.a);
}

TEST_CASE("character degrees for small primes", "[chartab]") {
    Group G5(5);
    CharacterTable T5 = build_character_table(G5, ClassCensus::build(G5));
    CHECK(T5.degrees == std::vector<std::int64_t>{1, 1, 4, 4, 5, 5, 6});

    Group G7(7);
    CharacterTable T7 = build_character_table(G7, ClassCensus::build(G7));
    CHECK(T7.degrees == std::vector<std::int64_t>{1, 1, 6, 6, 6, 7, 7, 8, 8});

    for (const CharacterTable* T : {&T5, &T7}) {
        std::int64_t sq = 0;
        for (auto d : T->degrees) sq += d * d;
        CHECK(sq == static_cast<std::int64_t>(T->group_order));
        CHECK(T->residuals.orthogonality < 1e-6);
        CHECK(T->residuals.degree < 1e-6);
        CHECK(T->residuals.imaginary < 1e-6);
        // trivial character row: all ones
        CHECK(T->degrees[0] == 1);
    }
}

TEST_CASE("Frobenius triple counts against the all-pairs oracle", "[chartab][oracle]") {
    Group G(5);
    ClassCensus census = ClassCensus::build(G);
    CharacterTable T = build_character_table(G, census);
    auto pairs = pair_count_oracle(G, census);
    const std::size_t n = census.size();
    // xy in C is the same event as xyz = 1 with z in C: every class here is
    // closed under inversion, so the two counts agree class by class.
    for (std::size_t A = 0; A < n; ++A)
        for (std::size_t B = 0; B < n; ++B)
            for (std::size_t C = 0; C < n; ++C) {
                std::int64_t direct = pairs[(A * n + B) * n + C];
                std::int64_t viaChars =
                    frobenius_count(T, census.classes()[A].key, census.classes()[B].key,
                                    census.classes()[C].key);
                REQUIRE(direct == viaChars);
            }
    CHECK(frobenius_count(T, identity_key(), identity_key(), identity_key()) == 1);
}

TEST_CASE("degree-19 and degree-18 rows behave as expected at p=19", "[chartab]") {
    Group G(19);
    ClassCensus census = ClassCensus::build(G);
    CharacterTable T = build_character_table(G, census);
    REQUIRE(T.degrees.size() == 21);
    std::int64_t sq = 0;
    int ones = 0;
    for (auto d : T.degrees) {
        sq += d * d;
        if (d == 1) ++ones;
    }
    CHECK(sq == 6840);
    CHECK(ones == 2);
    CHECK(T.residuals.orthogonality < 1e-6);

    // the two degree-p characters differ only by the sign character
    // (sanity: both exist)
    CHECK(std::count(T.degrees.begin(), T.degrees.end(), 19) == 2);
    CHECK(std::count(T.degrees.begin(), T.degrees.end(), 18) == 9);
    CHECK(std::count(T.degrees.begin(), T.degrees.end(), 20) == 8);
}

TEST_CASE("triple count through characters at p=19", "[chartab]") {
    Group G(19);
    ClassCensus census = ClassCensus::build(G);
    CharacterTable T = build_character_table(G, census);
    // involution outside PSL, order-3 class (j = 1), order-18 class (j = 14)
    CHECK(frobenius_count(T, involution_key(false), generic_key(1), generic_key(14)) == 6840);
    CHECK(count_ratio_diagnostic(G, census, T, 18) == make_rational(1, 1));
    CHECK(count_ratio_diagnostic(G, census, T, 20) == make_rational(1, 1));
    CHECK_THROWS_AS(count_ratio_diagnostic(G, census, T, 7), validation_error);
}

TEST_CASE("character table CSV dump shape", "[chartab]") {
    Group G(5);
    CharacterTable T = build_character_table(G, ClassCensus::build(G));
    std::string csv = character_table_to_csv(T);
    REQUIRE(csv.rfind("# {", 0) == 0);
    CHECK(csv.find("degree,identity,parabolic,inv(") != std::string::npos);
    std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 2 + T.degrees.size());  // meta line + header + one per character
}
