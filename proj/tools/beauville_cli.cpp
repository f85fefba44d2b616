// Command-line frontend for the library: class census, triple enumeration,
// character tables, Beauville structure verification, the full surface
// pipeline, bundled-example replay, prime scans, and Galois orbit reports.
//
// Exit codes: 0 success, 1 a mathematical verification failed, 2 invalid
// input (bad arguments, malformed files, inadmissible parameters).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beauville/arith.hpp"
#include "beauville/class_algebra.hpp"
#include "beauville/io.hpp"
#include "beauville/pgl2.hpp"
#include "beauville/surfaces.hpp"
#include "beauville/triples.hpp"

namespace {

using namespace beauville;

struct Options {
    std::string format = "table";
    unsigned threads = 0;  // 0: all cores
    std::string out_dir;   // --out beats BEAUVILLE_OUTPUT_DIR beats "."
};

std::string output_dir(const Options& opt) {
    if (!opt.out_dir.empty()) return opt.out_dir;
    if (const char* env = std::getenv("BEAUVILLE_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

std::filesystem::path write_output(const Options& opt, const std::string& name,
                                   const std::string& content) {
    std::filesystem::path dir = output_dir(opt);
    std::filesystem::create_directories(dir);
    std::filesystem::path path = dir / name;
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write " + path.string());
    out << content;
    return path;
}

ClassKey parse_class_key(const std::string& s) {
    if (s == "identity") return identity_key();
    if (s == "parabolic") return parabolic_key();
    if (s == "inv(psl)") return involution_key(true);
    if (s == "inv(nonpsl)") return involution_key(false);
    if (s.rfind("j=", 0) == 0) {
        try {
            return generic_key(static_cast<Fp>(std::stoul(s.substr(2))));
        } catch (const std::exception&) {
        }
    }
    throw validation_error("cannot parse class key '" + s +
                           "' (expected identity, parabolic, inv(psl), inv(nonpsl), or j=N)");
}

std::array<std::uint32_t, 3> parse_type(const std::string& s) {
    std::array<std::uint32_t, 3> type{};
    std::stringstream ss(s);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
        if (i == 3) throw validation_error("type must have exactly three entries");
        try {
            type[i++] = static_cast<std::uint32_t>(std::stoul(part));
        } catch (const std::exception&) {
            throw validation_error("cannot parse type entry '" + part + "'");
        }
    }
    if (i != 3) throw validation_error("type must have exactly three entries");
    return type;
}

std::string type_string(std::array<std::uint32_t, 3> t) {
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
           ")";
}

void cmd_census(const Options& opt, std::uint32_t p) {
    Group G(p);
    ClassCensus census = ClassCensus::build(G);
    if (opt.format == "json") {
        std::cout << census_to_json(G, census).dump(2) << "\n";
        return;
    }
    if (opt.format == "csv") {
        std::cout << "label,type,element_order,size,representative\n";
        for (const ClassInfo& c : census.classes())
            std::cout << to_string(c.key) << "," << to_string(c.type) << "," << c.element_order
                      << "," << c.size << "," << render_matrix(c.representative) << "\n";
        return;
    }
    std::cout << "PGL(2," << p << "): order " << G.order() << ", " << census.size()
              << " conjugacy classes\n\n";
    std::cout << std::left << std::setw(14) << "class" << std::setw(12) << "type" << std::setw(7)
              << "order" << std::setw(8) << "size"
              << "representative\n";
    for (const ClassInfo& c : census.classes())
        std::cout << std::left << std::setw(14) << to_string(c.key) << std::setw(12)
                  << to_string(c.type) << std::setw(7) << c.element_order << std::setw(8) << c.size
                  << render_matrix(c.representative) << "\n";
}

void cmd_triples(const Options& opt, std::uint32_t p, const std::string& type_str,
                 const std::string& key_str, bool parametric) {
    Group G(p);
    std::array<std::uint32_t, 3> type = parse_type(type_str);
    std::optional<ClassKey> key;
    if (!key_str.empty()) key = parse_class_key(key_str);

    std::vector<GeneratingTriple> triples;
    std::string diagnostic;
    if (parametric) {
        if (!key) throw validation_error("--parametric requires --key");
        triples = enumerate_triples_parametric(G, type[2], *key);
    } else {
        TripleEnumeration e = enumerate_triples_brute(G, type, key, opt.threads);
        triples = std::move(e.triples);
        diagnostic = e.diagnostic;
    }

    std::map<ClassKey, std::uint64_t> histogram;
    for (const GeneratingTriple& t : triples) ++histogram[t.orbit_key];

    if (opt.format == "json") {
        json j;
        j["p"] = p;
        j["type"] = type;
        j["count"] = triples.size();
        if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
        j["orbit_counts"] = json::object();
        for (const auto& [k, n] : histogram) j["orbit_counts"][to_string(k)] = n;
        j["triples"] = json::array();
        for (const GeneratingTriple& t : triples) j["triples"].push_back(to_json(t));
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (!diagnostic.empty()) std::cout << "diagnostic: " << diagnostic << "\n";
    std::cout << "generating triples of type " << type_string(type) << " in PGL(2," << p
              << "): " << triples.size() << "\n";
    for (const auto& [k, n] : histogram)
        std::cout << "  orbit " << to_string(k) << ": " << n << "\n";
}

void cmd_chartab(const Options& opt, std::uint32_t p) {
    Group G(p);
    ClassCensus census = ClassCensus::build(G);
    CharacterTable T = build_character_table(G, census, opt.threads);
    if (opt.format == "csv") {
        std::cout << character_table_to_csv(T);
        return;
    }
    if (opt.format == "json") {
        json j;
        j["p"] = T.p;
        j["group_order"] = T.group_order;
        j["classes"] = json::array();
        for (const ClassInfo& c : T.classes) j["classes"].push_back(to_string(c.key));
        j["degrees"] = T.degrees;
        j["values"] = json::array();
        for (std::size_t i = 0; i < T.degrees.size(); ++i) {
            json row = json::array();
            for (Eigen::Index c = 0; c < T.values.cols(); ++c) row.push_back(T.values(i, c));
            j["values"].push_back(row);
        }
        j["residuals"] = {{"orthogonality", T.residuals.orthogonality},
                          {"degree", T.residuals.degree},
                          {"imaginary", T.residuals.imaginary}};
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "character table of PGL(2," << p << "), order " << T.group_order << "\n";
    std::cout << "residuals: orthogonality " << T.residuals.orthogonality << ", degree "
              << T.residuals.degree << "\n\n";
    std::cout << std::left << std::setw(8) << "degree";
    for (const ClassInfo& c : T.classes) std::cout << std::right << std::setw(12) << to_string(c.key);
    std::cout << "\n";
    for (std::size_t i = 0; i < T.degrees.size(); ++i) {
        std::cout << std::left << std::setw(8) << T.degrees[i];
        for (Eigen::Index c = 0; c < T.values.cols(); ++c)
            std::cout << std::right << std::setw(12) << std::fixed << std::setprecision(4)
                      << T.values(i, c);
        std::cout << "\n";
    }
    std::cout.unsetf(std::ios::fixed);
}

void print_structure(const BeauvilleStructure& s) {
    auto keys = [](const std::set<ClassKey>& ks) {
        std::string out;
        for (const ClassKey& k : ks) out += (out.empty() ? "" : ", ") + to_string(k);
        return out;
    };
    std::cout << "first  " << type_string(s.first.type) << ": a=" << render_matrix(s.first.a)
              << " b=" << render_matrix(s.first.b) << " c=" << render_matrix(s.first.c) << "\n";
    std::cout << "second " << type_string(s.second.type) << ": a=" << render_matrix(s.second.a)
              << " b=" << render_matrix(s.second.b) << " c=" << render_matrix(s.second.c) << "\n";
    std::cout << "power classes of first:  {" << keys(s.sigma_keys_1) << "}\n";
    std::cout << "power classes of second: {" << keys(s.sigma_keys_2) << "}\n";
}

void cmd_beauville(const Options& opt, std::uint32_t p, std::uint32_t k, std::uint32_t l,
                   std::uint32_t i, std::uint32_t j) {
    Group G(p);
    std::vector<GeneratingTriple> first = orbit_representatives(G, {2, 3, k});
    std::vector<GeneratingTriple> second = orbit_representatives(G, {2, 4, l});
    if (i < 1 || i > first.size())
        throw validation_error("--i out of range 1.." + std::to_string(first.size()));
    if (j < 1 || j > second.size())
        throw validation_error("--j out of range 1.." + std::to_string(second.size()));
    BeauvilleStructure s = verify_beauville(G, first[i - 1], second[j - 1]);
    BeauvilleSurfaceRecord r = detail::make_surface_record(G, k, l, i, j, s);
    if (opt.format == "json") {
        std::cout << to_json(r).dump(2) << "\n";
        return;
    }
    std::cout << "valid Beauville structure of bitype " << r.bitype << " on PGL(2," << p << ")\n";
    print_structure(s);
    std::cout << "genera: (" << r.genus_1 << ", " << r.genus_2 << ")\n";
}

void cmd_pipeline(const Options& opt, std::uint32_t p, std::uint32_t k, std::uint32_t l) {
    AdmissibleParams params = admissible_params(k, l);
    Group G(p);
    std::vector<BeauvilleSurfaceRecord> records = build_all_surfaces(G, k, l);
    GaloisOrbitTable table = galois_orbit_table(G, records);

    std::ostringstream summary;
    summary << "pipeline p=" << p << " k=" << k << " l=" << l << "\n";
    summary << "admissible residue class: p = " << params.residue << " (mod " << params.modulus
            << ")\n";
    summary << "surfaces: " << records.size() << " of bitype " << records.front().bitype << "\n";
    summary << "genera: (" << records.front().genus_1 << ", " << records.front().genus_2 << ")\n";
    summary << "Galois action on the orbit: " << (table.regular ? "regular" : "NOT regular")
            << " (" << table.distinct_permutations << " distinct permutations, "
            << (table.transitive ? "transitive" : "not transitive") << ")\n";
    summary << "moduli field degree: " << records.front().moduli_degree << "\n";

    std::string stem = "pipeline_p" + std::to_string(p) + "_k" + std::to_string(k) + "_l" +
                       std::to_string(l);
    auto rp = write_output(opt, stem + "_records.json", records_to_json(records).dump(2) + "\n");
    auto gp = write_output(opt, stem + "_galois.json", to_json(table).dump(2) + "\n");
    auto sp = write_output(opt, stem + "_summary.txt", summary.str());

    if (opt.format == "json") {
        json j;
        j["records"] = records_to_json(records);
        j["galois"] = to_json(table);
        j["files"] = {rp.string(), gp.string(), sp.string()};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << summary.str();
        std::cout << "wrote " << rp.string() << ", " << gp.string() << ", " << sp.string() << "\n";
    }
    if (!table.regular)
        throw verification_error("Galois action on the surface orbit is not regular");
}

void cmd_example19(const Options& opt, const std::string& fixtures, const std::string& emit) {
    FixtureSet fs = load_fixture_set(fixtures);
    Group G(fs.p);
    FixtureVerification v = verify_fixture_set(G, fs);
    if (!v.ok) {
        for (const std::string& f : v.failures) std::cerr << "FAIL: " << f << "\n";
        throw verification_error(std::to_string(v.failures.size()) + " fixture checks failed");
    }
    if (!emit.empty()) {
        auto path = write_output(opt, emit, records_to_json(v.records).dump(2) + "\n");
        std::cout << "wrote " << path.string() << "\n";
    }
    if (opt.format == "json") {
        std::cout << records_to_json(v.records).dump(2) << "\n";
        return;
    }
    std::cout << v.records.size() << " surfaces verified\n";
    for (const BeauvilleSurfaceRecord& r : v.records)
        std::cout << "  S(" << r.i << "," << r.j << "): orbit keys (" << to_string(r.orbit_key_1)
                  << ", " << to_string(r.orbit_key_2) << "), genera (" << r.genus_1 << ", "
                  << r.genus_2 << ")\n";
}

void cmd_scan_primes(const Options& opt, std::uint32_t k, std::uint32_t l, std::uint64_t limit) {
    AdmissibleParams params = admissible_params(k, l);
    std::vector<std::uint64_t> primes = scan_primes(params, limit);
    if (opt.format == "json") {
        json j;
        j["k"] = params.k;
        j["l"] = params.l;
        j["k0"] = params.k0;
        j["l0"] = params.l0;
        j["modulus"] = params.modulus;
        j["residue"] = params.residue;
        j["limit"] = limit;
        j["primes"] = primes;
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (opt.format == "csv") {
        std::cout << "prime\n";
        for (std::uint64_t p : primes) std::cout << p << "\n";
        return;
    }
    std::cout << "admissible primes for (k,l)=(" << k << "," << l << "): p = " << params.residue
              << " (mod " << params.modulus << ")\n";
    std::cout << primes.size() << " primes up to " << limit << ":";
    for (std::uint64_t p : primes) std::cout << " " << p;
    std::cout << "\n";
}

void cmd_galois(const Options& opt, std::uint32_t p, std::uint32_t k, std::uint32_t l) {
    Group G(p);
    std::vector<BeauvilleSurfaceRecord> records = build_all_surfaces(G, k, l);
    GaloisOrbitTable table = galois_orbit_table(G, records);
    if (opt.format == "json") {
        std::cout << to_json(table).dump(2) << "\n";
        return;
    }
    std::cout << "Galois action of (Z/" << table.m << ")* on " << records.size()
              << " surfaces: " << (table.regular ? "regular" : "NOT regular") << "\n";
    std::cout << table.distinct_permutations << " distinct permutations, "
              << (table.transitive ? "transitive" : "not transitive") << "\n";
    for (std::size_t e = 0; e < table.exponents.size(); ++e) {
        std::cout << std::setw(6) << table.exponents[e] << ":";
        for (std::uint32_t t : table.permutations[e]) std::cout << " " << t;
        std::cout << "\n";
    }
    if (!table.regular)
        throw verification_error("Galois action on the surface orbit is not regular");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beauville structures on PGL(2,p): census, triples, characters, surfaces"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--threads", opt.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--out", opt.out_dir,
                   "output directory (default: $BEAUVILLE_OUTPUT_DIR, else the working directory)");

    std::uint32_t p = 0, k = 0, l = 0, oi = 1, oj = 1;
    std::uint64_t limit = 10000;
    std::string type_str, key_str, emit;
    std::string fixtures = std::string(BEAUVILLE_DATA_DIR) + "/pgl2_19_fixtures.json";
    bool parametric = false;

    CLI::App* census = app.add_subcommand("census", "conjugacy class census of PGL(2,p)");
    census->add_option("--p", p, "odd prime")->required();
    census->callback([&] { cmd_census(opt, p); });

    CLI::App* triples = app.add_subcommand("triples", "enumerate generating triples by type");
    triples->add_option("--p", p, "odd prime")->required();
    triples->add_option("--type", type_str, "triple type, e.g. 2,3,18")->required();
    triples->add_option("--key", key_str, "restrict c to one class (e.g. j=14, inv(psl))");
    triples->add_flag("--parametric", parametric,
                      "use the closed-form (2,3,k) construction instead of brute force");
    triples->callback([&] { cmd_triples(opt, p, type_str, key_str, parametric); });

    CLI::App* chartab = app.add_subcommand("chartab", "numeric character table");
    chartab->add_option("--p", p, "odd prime")->required();
    chartab->callback([&] { cmd_chartab(opt, p); });

    CLI::App* beauville_cmd =
        app.add_subcommand("beauville", "verify one pair of orbit representatives");
    beauville_cmd->add_option("--p", p, "odd prime")->required();
    beauville_cmd->add_option("--k", k, "first type (2,3,k)")->required();
    beauville_cmd->add_option("--l", l, "second type (2,4,l)")->required();
    beauville_cmd->add_option("--i", oi, "first orbit index (1-based)")->capture_default_str();
    beauville_cmd->add_option("--j", oj, "second orbit index (1-based)")->capture_default_str();
    beauville_cmd->callback([&] { cmd_beauville(opt, p, k, l, oi, oj); });

    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "admissibility, orbit representatives, surfaces, Galois table");
    pipeline->add_option("--p", p, "odd prime")->required();
    pipeline->add_option("--k", k, "first type (2,3,k)")->required();
    pipeline->add_option("--l", l, "second type (2,4,l)")->required();
    pipeline->callback([&] { cmd_pipeline(opt, p, k, l); });

    CLI::App* example19 =
        app.add_subcommand("example19", "re-verify the bundled PGL(2,19) example data");
    example19->add_option("--fixtures", fixtures, "fixture file")->capture_default_str();
    example19->add_option("--emit", emit, "also write the surface records to this file");
    example19->callback([&] { cmd_example19(opt, fixtures, emit); });

    CLI::App* scan = app.add_subcommand("scan-primes", "primes in the admissible residue class");
    scan->add_option("--k", k, "first type (2,3,k)")->required();
    scan->add_option("--l", l, "second type (2,4,l)")->required();
    scan->add_option("--limit", limit, "scan bound")->capture_default_str();
    scan->callback([&] { cmd_scan_primes(opt, k, l, limit); });

    CLI::App* galois = app.add_subcommand("galois", "Galois action table on the surface orbit");
    galois->add_option("--p", p, "odd prime")->required();
    galois->add_option("--k", k, "first type (2,3,k)")->required();
    galois->add_option("--l", l, "second type (2,4,l)")->required();
    galois->callback([&] { cmd_galois(opt, p, k, l); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const beauville::verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const beauville::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
