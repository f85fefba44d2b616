#include <catch2/catch_amalgamated.hpp>

#include <beauville/errors.hpp>
#include <beauville/pgl2.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

using namespace beauville;

TEST_CASE("canonical form collapses scalar multiples", "[pgl2]") {
    FieldContext F(19);
    CHECK(make_element(F, 2, 0, 0, 2) == identity_element());
    CHECK(make_element(F, 2, 4, 6, 8) == make_element(F, 1, 2, 3, 4));
    CHECK(make_element(F, -1, -2, -3, -4) == make_element(F, 1, 2, 3, 4));
    GroupElement g = make_element(F, 0, 2, 4, 6);
    CHECK(g.m[0] == 0);
    CHECK(g.m[1] == 1);  // first nonzero entry rescaled to 1
    CHECK(g.m[2] == 2);
    CHECK(g.m[3] == 3);
    CHECK_THROWS_AS(make_element(F, 1, 2, 2, 4), validation_error);  // det 0
    CHECK_THROWS_AS(make_element(F, 0, 0, 0, 0), validation_error);
}

TEST_CASE("element iteration is an indexed bijection", "[pgl2]") {
    for (std::uint32_t p : {5u, 7u}) {
        Group G(p);
        std::uint64_t count = 0;
        std::int64_t last = -1;
        G.for_each_element([&](const GroupElement& g) {
            std::uint64_t idx = G.element_index(g);
            CHECK(idx < G.index_space());
            CHECK(static_cast<std::int64_t>(idx) > last);
            last = static_cast<std::int64_t>(idx);
            // canonical: first nonzero entry is 1
            CHECK((g.m[0] == 1 || (g.m[0] == 0 && g.m[1] == 1)));
            CHECK(det_of(G.field(), g) != 0);
            ++count;
        });
        CHECK(count == G.order());
        CHECK(G.order() == static_cast<std::uint64_t>(p) * (p - 1) * (p + 1));
    }
}

TEST_CASE("group axioms hold on sampled elements", "[pgl2]") {
    Group G(19);
    const FieldContext& F = G.field();
    std::vector<GroupElement> sample;
    std::uint64_t step = 0;
    G.for_each_element([&](const GroupElement& g) {
        if (step++ % 397 == 0) sample.push_back(g);
    });
    REQUIRE(sample.size() >= 15);
    GroupElement e = identity_element();
    for (const auto& a : sample) {
        CHECK(multiply(F, a, e) == a);
        CHECK(multiply(F, e, a) == a);
        CHECK(multiply(F, a, invert(F, a)) == e);
        CHECK(multiply(F, invert(F, a), a) == e);
        for (const auto& b : sample)
            for (const auto& c : sample)
                CHECK(multiply(F, multiply(F, a, b), c) == multiply(F, a, multiply(F, b, c)));
    }
}

TEST_CASE("element_order matches repeated multiplication", "[pgl2]") {
    for (std::uint32_t p : {5u, 7u, 19u}) {
        Group G(p);
        const FieldContext& F = G.field();
        G.for_each_element([&](const GroupElement& g) {
            GroupElement acc = g;
            std::uint32_t n = 1;
            while (!(acc == identity_element())) {
                acc = multiply(F, acc, g);
                ++n;
                REQUIRE(n <= p + 1);
            }
            CHECK(G.element_order(g) == n);
            CHECK(power(F, g, n) == identity_element());
        });
    }
}

TEST_CASE("involutions are exactly the trace-zero non-identities", "[pgl2]") {
    for (std::uint32_t p : {5u, 7u, 19u}) {
        Group G(p);
        std::uint64_t involutions = 0;
        G.for_each_element([&](const GroupElement& g) {
            bool inv2 = (G.element_order(g) == 2);
            CHECK(inv2 == (trace_of(G.field(), g) == 0 && !(g == identity_element())));
            if (inv2) ++involutions;
        });
        CHECK(involutions == static_cast<std::uint64_t>(p) * p);  // p(p+1)/2 + p(p-1)/2
    }
}

TEST_CASE("PSL membership is an index-2 condition", "[pgl2]") {
    for (std::uint32_t p : {5u, 19u}) {
        Group G(p);
        std::uint64_t inside = 0;
        G.for_each_element([&](const GroupElement& g) {
            if (G.in_psl(g)) ++inside;
        });
        CHECK(inside == G.order() / 2);
    }
}

// Independent oracle: conjugacy classes computed by explicit orbit sweeps,
// compared against the ClassKey partition and the census.
static void conjugacy_partition_oracle(std::uint32_t p) {
    Group G(p);
    const FieldContext& F = G.field();
    ClassCensus census = ClassCensus::build(G);
    REQUIRE(census.size() == p + 2);

    std::vector<GroupElement> elems;
    elems.reserve(G.order());
    G.for_each_element([&](const GroupElement& g) { elems.push_back(g); });

    std::vector<std::int32_t> orbit_of(G.index_space(), -1);
    std::vector<std::vector<GroupElement>> orbits;
    for (const GroupElement& g : elems) {
        if (orbit_of[G.element_index(g)] >= 0) continue;
        auto id = static_cast<std::int32_t>(orbits.size());
        std::vector<GroupElement> members;
        for (const GroupElement& h : elems) {
            GroupElement c = conjugate(F, g, h);
            std::int32_t& slot = orbit_of[G.element_index(c)];
            if (slot < 0) {
                slot = id;
                members.push_back(c);
            }
        }
        orbits.push_back(std::move(members));
    }

    // same number of cells, and every cell is key-homogeneous with the census size
    REQUIRE(orbits.size() == census.size());
    std::set<ClassKey> seen;
    for (const auto& members : orbits) {
        ClassKey key = G.class_key(members.front());
        CHECK(seen.insert(key).second);  // distinct orbits get distinct keys
        CHECK(census.info(key).size == members.size());
        for (const GroupElement& g : members) {
            CHECK(G.class_key(g) == key);
            CHECK(census.class_of_element_index(G.element_index(g)) == census.index_of(key));
        }
    }
}

TEST_CASE("class keys cut out exactly the conjugacy classes", "[pgl2][oracle]") {
    conjugacy_partition_oracle(5);
    conjugacy_partition_oracle(7);
    conjugacy_partition_oracle(11);
}

TEST_CASE("census rows for p=5", "[pgl2]") {
    Group G(5);
    ClassCensus census = ClassCensus::build(G);
    REQUIRE(census.size() == 7);
    const auto& cl = census.classes();
    CHECK(cl[0].key == identity_key());
    CHECK(cl[1].key == parabolic_key());
    CHECK(cl[2].key == involution_key(false));
    CHECK(cl[3].key == involution_key(true));
    std::vector<std::uint64_t> sizes;
    for (const auto& c : cl) sizes.push_back(c.size);
    CHECK(sizes == std::vector<std::uint64_t>{1, 24, 10, 15, 30, 20, 20});
    CHECK(cl[4].type == ElementType::hyperbolic);
    CHECK(cl[5].type == ElementType::elliptic);
    CHECK(cl[6].type == ElementType::elliptic);
    for (const auto& c : cl) {
        CHECK(G.class_key(c.representative) == c.key);
        CHECK(G.element_order(c.representative) == c.element_order);
    }
}

TEST_CASE("census rows for p=19", "[pgl2]") {
    Group G(19);
    const FieldContext& F = G.field();
    ClassCensus census = ClassCensus::build(G);
    REQUIRE(census.size() == 21);
    const auto& cl = census.classes();
    CHECK(cl[0].size == 1);
    CHECK(cl[1].size == 360);   // parabolics
    CHECK(cl[2].key == involution_key(false));
    CHECK(cl[2].size == 190);
    CHECK(cl[3].key == involution_key(true));
    CHECK(cl[3].size == 171);
    std::uint64_t hyp = 0, ell = 0, total = 0;
    Fp last_j = 0;
    for (std::size_t i = 4; i < cl.size(); ++i) {
        total += cl[i].size;
        if (cl[i].type == ElementType::hyperbolic) {
            CHECK(cl[i].size == 380);
            CHECK(ell == 0);  // hyperbolic block comes first
            ++hyp;
        } else {
            CHECK(cl[i].type == ElementType::elliptic);
            CHECK(cl[i].size == 342);
            ++ell;
        }
        if (i > 4 && cl[i].type == cl[i - 1].type) CHECK(cl[i].key.j > last_j);
        last_j = cl[i].key.j;
    }
    CHECK(hyp == 8);
    CHECK(ell == 9);
    CHECK(total + 1 + 360 + 190 + 171 == G.order());

    // frozen j-invariants used throughout: diag(2,1) and its fifth power
    GroupElement c18 = make_element(F, 2, 0, 0, 1);
    CHECK(G.element_order(c18) == 18);
    CHECK(G.class_key(c18) == generic_key(14));
    CHECK(power(F, c18, 5) == make_element(F, 13, 0, 0, 1));
    CHECK(G.class_key(power(F, c18, 5)) == generic_key(18));

    CHECK_THROWS_AS(census.index_of(generic_key(4)), validation_error);
}

TEST_CASE("class representatives are reachable by search helpers", "[pgl2]") {
    Group G(19);
    GroupElement g = G.find_element_of_order(18);
    CHECK(G.element_order(g) == 18);
    CHECK(G.element_index(g) == 2);  // diag(1,2) is the first in index order
    GroupElement r = G.find_class_representative(involution_key(true));
    CHECK(G.element_order(r) == 2);
    CHECK(G.in_psl(r));
    CHECK_THROWS_AS(G.find_element_of_order(7), validation_error);  // 7 divides neither 18 nor 20
}
