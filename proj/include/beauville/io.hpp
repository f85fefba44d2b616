#pragma once

// Serialization: matrix literals, JSON views of every report type (ordered
// keys, so equal inputs give byte-identical output), the character table CSV
// dump, and checksummed fixture files.

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "beauville/class_algebra.hpp"
#include "beauville/errors.hpp"
#include "beauville/pgl2.hpp"
#include "beauville/surfaces.hpp"
#include "beauville/triples.hpp"

namespace beauville {

using json = nlohmann::ordered_json;

// Matrix literal [[a,b],[c,d]]: the human-facing element format.
inline std::string render_matrix(const GroupElement& g) {
    return "[[" + std::to_string(g.m[0]) + "," + std::to_string(g.m[1]) + "],[" +
           std::to_string(g.m[2]) + "," + std::to_string(g.m[3]) + "]]";
}

inline GroupElement parse_matrix(const FieldContext& F, const std::string& text) {
    std::array<std::int64_t, 4> e{};
    std::size_t pos = 0, entry = 0;
    auto expect = [&](char c) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size() || text[pos] != c)
            throw validation_error("malformed matrix literal '" + text + "': expected '" +
                                   std::string(1, c) + "'");
        ++pos;
    };
    auto number = [&]() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        std::size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (text[start] == '-' && pos == start + 1))
            throw validation_error("malformed matrix literal '" + text + "': expected a number");
        return std::stoll(text.substr(start, pos - start));
    };
    expect('[');
    for (int row = 0; row < 2; ++row) {
        expect('[');
        e[entry++] = number();
        expect(',');
        e[entry++] = number();
        expect(']');
        if (row == 0) expect(',');
    }
    expect(']');
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos != text.size())
        throw validation_error("malformed matrix literal '" + text + "': trailing characters");
    return make_element(F, e[0], e[1], e[2], e[3]);
}

inline json to_json(const ClassKey& k) {
    json j;
    switch (k.tag) {
        case ClassKey::Tag::identity: j["tag"] = "identity"; break;
        case ClassKey::Tag::parabolic: j["tag"] = "parabolic"; break;
        case ClassKey::Tag::involution:
            j["tag"] = "involution";
            j["det_square"] = k.det_square;
            break;
        case ClassKey::Tag::generic:
            j["tag"] = "generic";
            j["j"] = k.j;
            break;
    }
    return j;
}

inline json to_json(const ClassInfo& c) {
    json j;
    j["key"] = to_json(c.key);
    j["label"] = to_string(c.key);
    j["type"] = to_string(c.type);
    j["element_order"] = c.element_order;
    j["size"] = c.size;
    j["representative"] = render_matrix(c.representative);
    return j;
}

inline json census_to_json(const Group& G, const ClassCensus& census) {
    json j;
    j["p"] = G.p();
    j["group_order"] = G.order();
    j["class_count"] = census.size();
    j["classes"] = json::array();
    for (const ClassInfo& c : census.classes()) j["classes"].push_back(to_json(c));
    return j;
}

inline json to_json(const GeneratingTriple& t) {
    json j;
    j["a"] = render_matrix(t.a);
    j["b"] = render_matrix(t.b);
    j["c"] = render_matrix(t.c);
    j["type"] = t.type;
    j["orbit_key"] = to_json(t.orbit_key);
    return j;
}

inline json to_json(const BeauvilleSurfaceRecord& r) {
    json j;
    j["p"] = r.p;
    j["k"] = r.k;
    j["l"] = r.l;
    j["m"] = r.m;
    j["bitype"] = r.bitype;
    j["i"] = r.i;
    j["j"] = r.j;
    j["orbit_key_1"] = to_json(r.orbit_key_1);
    j["orbit_key_2"] = to_json(r.orbit_key_2);
    j["genus_1"] = r.genus_1;
    j["genus_2"] = r.genus_2;
    j["orbit_size"] = r.orbit_size;
    j["moduli_degree"] = r.moduli_degree;
    j["first_triple"] = to_json(r.first_triple);
    j["second_triple"] = to_json(r.second_triple);
    return j;
}

inline json records_to_json(const std::vector<BeauvilleSurfaceRecord>& records) {
    json j = json::array();
    for (const auto& r : records) j.push_back(to_json(r));
    return j;
}

inline json to_json(const GaloisOrbitTable& t) {
    json j;
    j["m"] = t.m;
    j["exponents"] = t.exponents;
    j["permutations"] = t.permutations;
    j["distinct_permutations"] = t.distinct_permutations;
    j["transitive"] = t.transitive;
    j["regular"] = t.regular;
    return j;
}

// CSV dump: a JSON metadata comment line, a header of class labels, then one
// row per character.
inline std::string character_table_to_csv(const CharacterTable& T) {
    std::ostringstream out;
    json meta;
    meta["p"] = T.p;
    meta["group_order"] = T.group_order;
    meta["residuals"] = {{"orthogonality", T.residuals.orthogonality},
                         {"degree", T.residuals.degree},
                         {"imaginary", T.residuals.imaginary}};
    out << "# " << meta.dump() << "\n";
    out << "degree";
    for (const ClassInfo& c : T.classes) out << "," << to_string(c.key);
    out << "\n";
    out.precision(12);
    for (std::size_t i = 0; i < T.degrees.size(); ++i) {
        out << T.degrees[i];
        for (Eigen::Index c = 0; c < T.values.cols(); ++c) out << "," << T.values(i, c);
        out << "\n";
    }
    return out.str();
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

inline json fixture_body_json(const FixtureSet& fs) {
    json j;
    j["p"] = fs.p;
    j["description"] = fs.description;
    auto family = [](const std::vector<FixtureTriple>& v) {
        json arr = json::array();
        for (const FixtureTriple& t : v) {
            json e;
            e["exponent"] = t.exponent;
            e["type"] = t.type;
            e["a"] = render_matrix(t.a);
            e["b"] = render_matrix(t.b);
            e["c"] = render_matrix(t.c);
            arr.push_back(e);
        }
        return arr;
    };
    j["first_triples"] = family(fs.first_triples);
    j["second_triples"] = family(fs.second_triples);
    return j;
}

}  // namespace detail

inline std::uint64_t fixture_checksum(const FixtureSet& fs) {
    return fnv1a64(detail::fixture_body_json(fs).dump());
}

inline std::string fixture_set_to_string(const FixtureSet& fs) {
    json j = detail::fixture_body_json(fs);
    j["checksum"] = fixture_checksum(fs);
    return j.dump(2) + "\n";
}

// Loads a fixture file and replays its checksum; a mismatch means the data
// was edited and everything downstream is suspect.
inline FixtureSet load_fixture_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open fixture file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw validation_error("fixture file " + path + " is not valid JSON: " + e.what());
    }
    FixtureSet fs;
    try {
        fs.p = j.at("p").get<std::uint32_t>();
        fs.description = j.at("description").get<std::string>();
        FieldContext F(fs.p);
        auto family = [&](const json& arr) {
            std::vector<FixtureTriple> v;
            for (const json& e : arr) {
                FixtureTriple t;
                t.exponent = e.at("exponent").get<std::uint32_t>();
                t.type = e.at("type").get<std::array<std::uint32_t, 3>>();
                t.a = parse_matrix(F, e.at("a").get<std::string>());
                t.b = parse_matrix(F, e.at("b").get<std::string>());
                t.c = parse_matrix(F, e.at("c").get<std::string>());
                v.push_back(t);
            }
            return v;
        };
        fs.first_triples = family(j.at("first_triples"));
        fs.second_triples = family(j.at("second_triples"));
        std::uint64_t declared = j.at("checksum").get<std::uint64_t>();
        std::uint64_t actual = fixture_checksum(fs);
        if (declared != actual)
            throw verification_error("fixture file " + path + " fails its checksum: stored " +
                                     std::to_string(declared) + ", computed " +
                                     std::to_string(actual));
    } catch (const json::exception& e) {
        throw validation_error("fixture file " + path + " has missing or mistyped fields: " +
                               e.what());
    }
    return fs;
}

}  // namespace beauville
