// Acceptance runner: one PASS/FAIL line per criterion; exits nonzero when
// any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "suites.hpp"
#include "test_util.hpp"
#include "treembed/diary.hpp"
#include "treembed/h2embed.hpp"

namespace fs = std::filesystem;
using namespace treembed;
using treembed::suites::SuiteResult;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome from_suite(const SuiteResult& r) {
    return {r.passed(), std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures; " + r.detail};
}

Outcome embedding_runs(bool bounds) {
    Diary d = h2::product_diary();
    auto params = h2::default_params();
    std::size_t kappa = h2::linear_component_params(params).kappa;
    auto full = h2::distortion_report(d, {5, 0, 1, true}, params, kappa);
    auto sampled = h2::distortion_report(d, {8, 10000, 1, false}, params, kappa);
    std::ostringstream os;
    os << "ball(5) " << full.rows.size() << " pairs, ball(8) " << sampled.rows.size() << " pairs";
    if (!bounds) {
        bool ok = full.full_enumeration && sampled.rows.size() == 10000 && full.isometry_holds &&
                  sampled.isometry_holds;
        return {ok, os.str()};
    }
    os << ", M=" << full.M.numerator() << ", long pairs " << full.long_pairs + sampled.long_pairs;
    bool ok = full.M == Rational(64) && full.lower_bound_holds && full.upper_bound_holds &&
              sampled.lower_bound_holds && sampled.upper_bound_holds && full.long_pairs + sampled.long_pairs > 0;
    return {ok, os.str()};
}

Outcome golden_traces() {
    Alphabet abc = Alphabet::from_chars("abc");
    auto spell = [&](const std::vector<Word>& ch) {
        std::string out;
        for (const auto& c : ch) out += (out.empty() ? "" : "|") + abc.render(c);
        return out;
    };
    auto two = alice_diary(3, test::S("abac|cb"));
    auto five = alice_diary(3, test::S("abac|cb|accc|bcbc|a"));
    bool ok = spell(two.chapters) == "cab|bca" && spell(five.chapters) == "cab|bca|ccc|cbc|aba" &&
              is_recorded(two.provenance, {1, 1}) == PageCoord{2, 3};
    return {ok, spell(two.chapters) + ", " + spell(five.chapters)};
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return out + "\n<status " + std::to_string(status) + ">";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome cli_determinism(const std::string& cli) {
    fs::path dir = fs::temp_directory_path() / "treembed_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::vector<std::string> commands{
        "diary --kappa 3 abac,cb abac,cb,accc,bcbc,a",
        "embed --radius 6 --pairs 2000 --seed 4",
        "embed --radius 8 --pairs 500 --seed 2 --kappa 40",
        "proj --seed 1 --big-k 1,2,5",
    };
    std::size_t runs = 0;
    for (const auto& c : commands) {
        std::string first = capture(cli + " " + c);
        std::string second = capture(cli + " " + c);
        ++runs;
        if (first != second) return {false, "differs: " + c};
    }
    std::string files[2];
    for (int k = 0; k < 2; ++k) {
        fs::path out = dir / ("run" + std::to_string(k));
        capture(cli + " embed --radius 7 --pairs 1000 --seed 3 --out " + out.string());
        files[k] = slurp(out / "distortion.csv") + slurp(out / "summary.json");
    }
    if (files[0].empty() || files[0] != files[1]) return {false, "embed output files differ"};
    return {true, std::to_string(runs + 1) + " commands run twice, identical"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to treembed cli>\n";
        return 2;
    }
    std::string cli = argv[1];

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"embedding is an isometry onto the tree product", [] { return embedding_runs(false); }},
        {"diary product distortion bounds with M = 64", [] { return embedding_runs(true); }},
        {"diary golden traces and provenance", golden_traces},
        {"events under the AWL bound are recorded",
         [] { return from_suite(suites::recording_suite(1, 10000)); }},
        {"equal diaries: exhaustive short-day and recorded-letter suite",
         [] { return from_suite(suites::equal_diary_suite()); }},
        {"clashing recorded letters bound the diary distance",
         [] { return from_suite(suites::clash_distance_suite(1, 1000)); }},
        {"leo, virgo and taurus diary guarantees",
         [] {
             SuiteResult leo = suites::guarantee_suite(suites::GuaranteeKind::Leo, 1, 1000);
             SuiteResult virgo = suites::guarantee_suite(suites::GuaranteeKind::Virgo, 2, 1000);
             SuiteResult taurus = suites::guarantee_suite(suites::GuaranteeKind::Taurus, 3, 1000);
             bool ok = leo.passed() && virgo.passed() && taurus.passed();
             std::string detail = "leo " + std::to_string(leo.failures) + "/" + std::to_string(leo.cases) +
                                  ", virgo " + std::to_string(virgo.failures) + "/" + std::to_string(virgo.cases) +
                                  ", taurus " + std::to_string(taurus.failures) + "/" +
                                  std::to_string(taurus.cases) + " failures";
             for (const auto* r : {&leo, &virgo, &taurus})
                 if (!r->passed()) detail += "; " + r->detail;
             return Outcome{ok, detail};
         }},
        {"100 tree-segment instances at K = 1, 2, 5",
         [] { return from_suite(suites::tree_segment_suite(1, 100, 200, 20, {1, 2, 5})); }},
        {"free product instance, radius 3",
         [] { return from_suite(suites::free_product_suite(3, {1, 2, 5})); }},
        {"CLI output is byte-identical across runs", [&] { return cli_determinism(cli); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("%s %2zu  %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
