#include <catch2/catch_amalgamated.hpp>

#include <beauville/errors.hpp>
#include <beauville/io.hpp>
#include <beauville/pgl2.hpp>
#include <beauville/surfaces.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace beauville;

using Catch::Matchers::ContainsSubstring;

static std::string data_file() {
    return std::string(BEAUVILLE_DATA_DIR) + "/pgl2_19_fixtures.json";
}

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST_CASE("matrix literals round-trip", "[io]") {
    FieldContext F(19);
    GroupElement g = make_element(F, 6, 12, 5, 13);
    CHECK(render_matrix(g) == "[[1,2],[4,18]]");  // canonical: leading entry 1
    CHECK(parse_matrix(F, render_matrix(g)) == g);
    // scalar multiples and whitespace collapse to the same element
    CHECK(parse_matrix(F, "[[12, 24], [10, 26]]") == g);
    CHECK(parse_matrix(F, " [ [6,12] , [5,13] ] ") == g);
    CHECK(parse_matrix(F, "[[-13,-7],[-14,-6]]") == g);

    CHECK_THROWS_AS(parse_matrix(F, "[[1,2],[3]]"), validation_error);
    CHECK_THROWS_AS(parse_matrix(F, "[[1,2],[3,4,5]]"), validation_error);
    CHECK_THROWS_AS(parse_matrix(F, "[[1,2],[2,4]]"), validation_error);  // singular
    CHECK_THROWS_AS(parse_matrix(F, "1,2,3,4"), validation_error);
    CHECK_THROWS_AS(parse_matrix(F, "[[a,2],[3,4]]"), validation_error);
}

TEST_CASE("census serialization is deterministic", "[io]") {
    Group G(5);
    ClassCensus census = ClassCensus::build(G);
    std::string once = census_to_json(G, census).dump(2);
    std::string twice = census_to_json(G, ClassCensus::build(G)).dump(2);
    CHECK(once == twice);
    json j = json::parse(once);
    CHECK(j.at("p") == 5);
    CHECK(j.at("group_order") == 120);
    REQUIRE(j.at("classes").size() == 7);
    CHECK(j.at("classes")[0].at("key").at("tag") == "identity");
}

TEST_CASE("surface records serialize with the full schema", "[io]") {
    Group G(19);
    FixtureSet fs = load_fixture_set(data_file());
    FixtureVerification v = verify_fixture_set(G, fs);
    REQUIRE(v.ok);
    json j = records_to_json(v.records);
    REQUIRE(j.size() == 12);
    for (const json& r : j) {
        for (const char* field : {"p", "k", "l", "m", "bitype", "i", "j", "orbit_key_1",
                                  "orbit_key_2", "genus_1", "genus_2", "orbit_size",
                                  "moduli_degree", "first_triple", "second_triple"})
            CHECK(r.contains(field));
        CHECK(r.at("first_triple").contains("a"));
        CHECK(r.at("first_triple").contains("type"));
    }
    // byte determinism
    CHECK(j.dump() == records_to_json(verify_fixture_set(G, fs).records).dump());
}

TEST_CASE("fixture file loads and its checksum protects the content", "[io]") {
    FixtureSet fs = load_fixture_set(data_file());
    CHECK(fs.p == 19);
    CHECK(fs.first_triples.size() == 3);
    CHECK(fs.second_triples.size() == 4);
    CHECK(fs.first_triples[0].exponent == 1);
    CHECK(fs.first_triples[1].exponent == 5);
    CHECK(fs.first_triples[2].exponent == 7);
    CHECK(fs.second_triples[0].exponent == 1);
    CHECK(fs.second_triples[3].exponent == 9);

    auto tmp = std::filesystem::temp_directory_path();

    // a matrix edit that changes the group element trips the checksum
    std::string text = slurp(data_file());
    std::string tampered = text;
    auto pos = tampered.find("[[6,12],[5,13]]");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 15, "[[6,12],[5,14]]");
    auto bad_path = (tmp / "fixtures_tampered.json").string();
    std::ofstream(bad_path) << tampered;
    CHECK_THROWS_WITH(load_fixture_set(bad_path), ContainsSubstring("checksum"));

    // metadata edits are covered too
    std::string tampered2 = text;
    pos = tampered2.find("\"exponent\": 5");
    REQUIRE(pos != std::string::npos);
    tampered2.replace(pos, 13, "\"exponent\": 11");
    auto bad_path2 = (tmp / "fixtures_tampered2.json").string();
    std::ofstream(bad_path2) << tampered2;
    CHECK_THROWS_WITH(load_fixture_set(bad_path2), ContainsSubstring("checksum"));

    // a scalar rescaling of one matrix names the same group element: accepted
    std::string rescaled = text;
    pos = rescaled.find("[[6,12],[5,13]]");
    rescaled.replace(pos, 15, "[[12,24],[10,26]]");
    auto ok_path = (tmp / "fixtures_rescaled.json").string();
    std::ofstream(ok_path) << rescaled;
    FixtureSet same = load_fixture_set(ok_path);
    CHECK(same.first_triples[0].a == fs.first_triples[0].a);

    CHECK_THROWS_AS(load_fixture_set((tmp / "no_such_file.json").string()), validation_error);
    auto junk_path = (tmp / "fixtures_junk.json").string();
    std::ofstream(junk_path) << "{ not json";
    CHECK_THROWS_AS(load_fixture_set(junk_path), validation_error);
}

TEST_CASE("fixture serialization round-trips through a file", "[io]") {
    FixtureSet fs = load_fixture_set(data_file());
    auto tmp = std::filesystem::temp_directory_path();
    auto path = (tmp / "fixtures_roundtrip.json").string();
    std::ofstream(path) << fixture_set_to_string(fs);
    FixtureSet back = load_fixture_set(path);
    CHECK(back.p == fs.p);
    CHECK(back.description == fs.description);
    REQUIRE(back.first_triples.size() == fs.first_triples.size());
    REQUIRE(back.second_triples.size() == fs.second_triples.size());
    for (std::size_t i = 0; i < fs.first_triples.size(); ++i) {
        CHECK(back.first_triples[i].a == fs.first_triples[i].a);
        CHECK(back.first_triples[i].b == fs.first_triples[i].b);
        CHECK(back.first_triples[i].c == fs.first_triples[i].c);
        CHECK(back.first_triples[i].exponent == fs.first_triples[i].exponent);
    }
    CHECK(fixture_checksum(back) == fixture_checksum(fs));
}
