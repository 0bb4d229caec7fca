#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "treembed/cli.hpp"

namespace fs = std::filesystem;
using treembed::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "treembed_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("diary command") {
    SUBCASE("two-day prefix") {
        auto r = invoke({"diary", "--kappa", "3", "abac|cb"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        REQUIRE(j["traces"].size() == 1);
        CHECK(j["traces"][0]["chapters"] == nlohmann::json({"cab", "bca"}));
    }
    SUBCASE("empty input") {
        auto r = invoke({"diary", "--kappa", "2"});
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["traces"] == nlohmann::json::array());
    }
    SUBCASE("kappa zero or missing") {
        CHECK(invoke({"diary", "--kappa", "0", "ab"}).code == 2);
        CHECK(invoke({"diary", "ab"}).code == 2);
        CHECK(invoke({"diary", "--kappa", "x", "ab"}).code == 2);
    }
    SUBCASE("instance file with explicit alphabet") {
        auto p = write_file("diary.json", R"({"alphabet":["a","b","c"],"sentences":[["abac","cb"],["c"]]})");
        auto r = invoke({"diary", "--kappa", "3", "--instance", p.string()});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        REQUIRE(j["traces"].size() == 2);
        CHECK(j["traces"][0]["chapters"] == nlohmann::json({"cab", "bca"}));
        CHECK(invoke({"diary", "--kappa", "3", "--instance", p.string(), "abz"}).code == 2);
    }
    SUBCASE("output file") {
        auto p = scratch("traces.json");
        fs::remove(p);
        REQUIRE(invoke({"diary", "--kappa", "3", "--out", p.string(), "abac|cb"}).code == 0);
        CHECK(slurp(p) == invoke({"diary", "--kappa", "3", "abac|cb"}).out);
    }
}

TEST_CASE("embed command") {
    SUBCASE("unit ball enumerates all 21 pairs") {
        auto dir = scratch("embed_r1");
        fs::remove_all(dir);
        auto r = invoke({"embed", "--radius", "1", "--pairs", "5", "--out", dir.string()});
        REQUIRE(r.code == 0);
        auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
        CHECK(summary["pairs"] == 21);
        CHECK(summary["ball_size"] == 7);
        CHECK(summary["full_enumeration"] == true);
        CHECK(summary["M"] == 64);
        CHECK(summary["passed"] == true);

        // Six pairs involve the identity (distance 1); any two distinct
        // generators are at distance 2.
        std::istringstream csv(slurp(dir / "distortion.csv"));
        std::string line;
        std::getline(csv, line);
        CHECK(line == "g,g',d_G,d_F,d_DF,criterion_used");
        int ones = 0, twos = 0, rows = 0;
        while (std::getline(csv, line)) {
            ++rows;
            std::vector<std::string> f;
            std::stringstream ls(line);
            for (std::string c; std::getline(ls, c, ',');) f.push_back(c);
            REQUIRE(f.size() == 6);
            CHECK(f[2] == f[3]);
            if (f[2] == "1") ++ones;
            if (f[2] == "2") ++twos;
        }
        CHECK(rows == 21);
        CHECK(ones == 6);
        CHECK(twos == 15);
    }
    SUBCASE("fixed seed is byte-identical") {
        std::vector<std::string> args{"embed", "--radius", "7", "--pairs", "300", "--seed", "9"};
        auto a = invoke(args), b = invoke(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        auto c = invoke({"embed", "--radius", "7", "--pairs", "300", "--seed", "10"});
        CHECK(c.out != a.out);
    }
    SUBCASE("bad parameters") {
        CHECK(invoke({"embed", "--radius", "0"}).code == 2);
        CHECK(invoke({"embed", "--pairs", "0"}).code == 2);
        CHECK(invoke({"embed", "--radius", "99"}).code == 2);
        CHECK(invoke({"embed", "--radius", "-3"}).code == 2);
    }
}

TEST_CASE("proj command") {
    SUBCASE("corrupted instance file") {
        auto p = write_file("broken.json", "{\"kind\": \"tree_segments\", ");
        auto r = invoke({"proj", "--instance", p.string()});
        CHECK(r.code == 2);
        CHECK(!r.err.empty());
        CHECK(invoke({"proj", "--instance", scratch("missing.json").string()}).code == 2);
        auto q = write_file("wrongkind.json", R"({"kind":"torus"})");
        CHECK(invoke({"proj", "--instance", q.string()}).code == 2);
    }
    SUBCASE("single index") {
        auto p = write_file("single.json", R"({"kind":"tree_segments","seed":4,"n_vertices":12,"n_segments":1})");
        auto r = invoke({"proj", "--instance", p.string(), "--big-k", "1,2,5"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["passed"] == true);
        CHECK(j["instances"][0]["indices"] == 1);
        CHECK(j["instances"][0]["section"].size() == 3);
    }
    SUBCASE("explicit tree and check selection") {
        // Path 0-1-...-9 with three segments.
        auto p = write_file("explicit.json", R"({"kind":"tree_segments","n_vertices":10,
            "tree_edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],[6,7],[7,8],[8,9]],
            "segments":[[0,1],[4,5],[8,9]]})");
        auto r = invoke({"proj", "--instance", p.string(), "--checks", "axioms,order_laws"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        auto inst = j["instances"][0];
        CHECK(inst["indices"] == 3);
        CHECK(inst.contains("axioms"));
        REQUIRE(inst["section"].size() == 1);
        REQUIRE(inst["section"][0]["checks"].size() == 1);
        CHECK(inst["section"][0]["checks"][0]["name"] == "order_laws");

        auto only_axioms = nlohmann::json::parse(invoke({"proj", "--instance", p.string(), "--checks", "axioms"}).out);
        CHECK(!only_axioms["instances"][0].contains("section"));
        CHECK(invoke({"proj", "--instance", p.string(), "--checks", "nonsense"}).code == 2);
        CHECK(invoke({"proj", "--instance", p.string(), "--big-k", "0"}).code == 2);
    }
    SUBCASE("seeded batch is deterministic") {
        auto p = write_file("batch.json", R"({"kind":"tree_segments","n_vertices":80,"n_segments":10,"count":5})");
        std::vector<std::string> args{"proj", "--instance", p.string(), "--seed", "3", "--big-k", "1,5"};
        auto a = invoke(args), b = invoke(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        auto j = nlohmann::json::parse(a.out);
        REQUIRE(j["instances"].size() == 5);
        for (std::size_t i = 0; i < 5; ++i) CHECK(j["instances"][i]["instance"]["seed"] == 3 + i);
    }
}

TEST_CASE("config file and usage") {
    auto cfg = write_file("config.json", R"({"command":"embed","radius":1,"pairs":3,"seed":5})");
    auto r = invoke({"--config", cfg.string()});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["radius"] == 1);
    CHECK(j["seed"] == 5);

    // Flags win over the config.
    auto r2 = invoke({"--config", cfg.string(), "embed", "--seed", "8"});
    REQUIRE(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out)["seed"] == 8);
    CHECK(nlohmann::json::parse(r2.out)["radius"] == 1);

    auto bad = write_file("badconfig.json", R"({"command":"embed","radius":"wide"})");
    CHECK(invoke({"--config", bad.string()}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"embed", "--bogus"}).code == 2);
    auto help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("diary") != std::string::npos);
}
