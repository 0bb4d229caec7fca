#include "treembed/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treembed/diary.hpp"
#include "treembed/h2embed.hpp"
#include "treembed/projcomplex.hpp"

namespace treembed::cli {

namespace {

// Parse and usage problems; mapped to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::filesystem::path p(cfg.out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

// "cab,bca" or "cab|bca".
std::vector<std::string> sentence_words(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), '|', ',');
    return split(t, ',');
}

}  // namespace

int cmd_diary(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.kappa) throw UsageError("diary needs --kappa");
    if (*cfg.kappa == 0) throw UsageError("--kappa must be at least 1");

    std::optional<Alphabet> alphabet;
    std::vector<std::vector<std::string>> inputs;
    if (!cfg.instance.empty()) {
        nlohmann::json j = read_json_file(cfg.instance);
        try {
            alphabet = alphabet_from_json(j);
            for (const auto& s : j.at("sentences")) inputs.push_back(s.get<std::vector<std::string>>());
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(cfg.instance + ": " + e.what());
        }
    }
    for (const auto& s : cfg.sentences) inputs.push_back(sentence_words(s));
    if (!alphabet) {
        std::set<char> chars;
        for (const auto& s : inputs)
            for (const auto& w : s) chars.insert(w.begin(), w.end());
        if (chars.empty()) chars.insert('a');
        alphabet = Alphabet::from_chars(std::string(chars.begin(), chars.end()));
    }

    nlohmann::json traces = nlohmann::json::array();
    for (const auto& words : inputs) {
        std::vector<Word> parsed;
        try {
            for (const auto& w : words) parsed.push_back(alphabet->parse(w));
            traces.push_back(diary_trace_json(*alphabet, Sentence(parsed), *cfg.kappa));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    nlohmann::json doc{{"kappa", *cfg.kappa}, {"traces", traces}};
    emit(cfg, out, doc.dump(2) + "\n");
    return kExitPass;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
    if (cfg.radius > coxeter::kDefaultBallCap) throw UsageError("--radius exceeds the ball cap");
    if (cfg.pairs == 0) throw UsageError("--pairs must be positive");
    if (cfg.kappa && *cfg.kappa == 0) throw UsageError("--kappa must be at least 1");

    h2::EmbedParams params = h2::default_params();
    std::size_t kappa = cfg.kappa.value_or(h2::linear_component_params(params).kappa);
    Diary d = h2::product_diary(params, cfg.kappa);
    h2::SampleSpec spec{cfg.radius, cfg.pairs, cfg.seed, false};
    h2::DistortionReport r;
    try {
        r = h2::distortion_report(d, spec, params, kappa);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    nlohmann::json summary = h2::report_summary(r);
    if (cfg.out.empty()) {
        out << summary.dump(2) << "\n";
    } else {
        std::filesystem::path dir(cfg.out);
        std::filesystem::create_directories(dir);
        std::ofstream(dir / "distortion.csv", std::ios::binary) << h2::report_csv(r);
        std::ofstream(dir / "summary.json", std::ios::binary) << summary.dump(2) << "\n";
    }
    return r.passed() ? kExitPass : kExitCheckFailed;
}

int cmd_proj(const RunConfig& cfg, std::ostream& out) {
    nlohmann::json desc = cfg.instance.empty()
                              ? nlohmann::json{{"kind", "tree_segments"}, {"n_vertices", 200}, {"n_segments", 20},
                                               {"count", 100}, {"seed", cfg.seed}}
                              : read_json_file(cfg.instance);
    std::size_t count = 1;
    proj::InstanceSpec base;
    try {
        base = proj::instance_spec_from_json(desc);
        if (!desc.contains("seed")) base.seed = cfg.seed;
        if (desc.is_object() && desc.contains("count")) count = desc.at("count").get<std::size_t>();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (count == 0) throw UsageError("instance count must be positive");

    bool run_axioms = cfg.checks.empty();
    proj::VerifyOptions opt;
    opt.seed = cfg.seed;
    for (const auto& c : cfg.checks) {
        if (c == "axioms")
            run_axioms = true;
        else
            opt.checks.insert(c);
    }
    const auto& known = proj::all_section_checks();
    for (const auto& c : opt.checks)
        if (std::find(known.begin(), known.end(), c) == known.end()) throw UsageError("unknown check: " + c);
    bool run_section = cfg.checks.empty() || !opt.checks.empty();

    std::vector<proj::InstanceSpec> specs;
    for (std::size_t i = 0; i < count; ++i) {
        proj::InstanceSpec s = base;
        s.seed = base.seed + i;
        specs.push_back(s);
    }

    nlohmann::json results = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& s : specs) {
        proj::ProjectionSystem sys;
        try {
            sys = proj::build_instance(s);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        nlohmann::json entry{{"instance", proj::instance_spec_to_json(s)}, {"indices", sys.size()}};
        if (run_axioms) {
            auto ax = proj::verify_axioms(sys);
            entry["axioms"] = ax.report.to_json();
            entry["axioms"]["theta"] = ax.declared_theta;
            entry["axioms"]["min_theta"] = ax.min_theta;
            all_pass = all_pass && ax.passed();
        }
        if (run_section) {
            std::vector<std::size_t> ks = cfg.big_k;
            if (ks.empty()) ks.push_back(std::max<std::size_t>(2, 4 * sys.theta + 1));
            nlohmann::json per_k = nlohmann::json::array();
            for (std::size_t K : ks) {
                proj::ComplexBundle b;
                try {
                    b = proj::build_complexes(sys, K, 0, s.seed);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                proj::Report rep = proj::verify_section5(sys, b, opt);
                nlohmann::json rj = rep.to_json();
                rj["K"] = K;
                per_k.push_back(rj);
                all_pass = all_pass && rep.passed();
            }
            entry["section"] = per_k;
        }
        results.push_back(entry);
    }
    nlohmann::json doc{{"passed", all_pass}, {"instances", results}};
    emit(cfg, out, doc.dump(2) + "\n");
    return all_pass ? kExitPass : kExitCheckFailed;
}

namespace {

// Fill options absent from the command line with values from a JSON config
// whose keys mirror the long flag names.
void apply_config(const nlohmann::json& j, CLI::App& app, RunConfig& cfg) {
    auto given = [&](const char* flag) {
        for (auto* sub : app.get_subcommands())
            if (auto* o = sub->get_option_no_throw(flag); o && o->count() > 0) return true;
        return false;
    };
    auto take = [&](const char* key, const char* flag, auto& field) {
        if (j.contains(key) && !given(flag)) j.at(key).get_to(field);
    };
    take("seed", "--seed", cfg.seed);
    take("radius", "--radius", cfg.radius);
    take("pairs", "--pairs", cfg.pairs);
    take("out", "--out", cfg.out);
    take("instance", "--instance", cfg.instance);
    if (j.contains("kappa") && !given("--kappa")) cfg.kappa = j.at("kappa").get<std::size_t>();
    if (j.contains("big-k") && !given("--big-k")) {
        const auto& v = j.at("big-k");
        cfg.big_k = v.is_array() ? v.get<std::vector<std::size_t>>() : std::vector<std::size_t>{v.get<std::size_t>()};
    }
    if (j.contains("checks") && !given("--checks")) {
        const auto& v = j.at("checks");
        cfg.checks = v.is_array() ? v.get<std::vector<std::string>>() : split(v.get<std::string>(), ',');
    }
    if (j.contains("sentences") && cfg.sentences.empty()) cfg.sentences = j.at("sentences").get<std::vector<std::string>>();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tree embeddings: diaries, the hexagonal Coxeter group, and projection complexes", "treembed"};
    RunConfig cfg;
    std::string config_path;
    std::string big_k_text, checks_text;
    app.add_option("--config", config_path, "JSON file whose keys mirror the flags");
    app.require_subcommand(0, 1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "output file (directory for embed)");
        sub->add_option("--instance", cfg.instance, "JSON instance or input file");
    };
    CLI::App* diary = app.add_subcommand("diary", "Alice's Diary traces for the given sentences");
    common(diary);
    diary->add_option("--kappa", cfg.kappa, "pages per day");
    diary->add_option("sentences", cfg.sentences, "sentences as comma- or bar-separated words");

    CLI::App* embed = app.add_subcommand("embed", "distortion report for the Coxeter group embedding");
    common(embed);
    embed->add_option("--radius", cfg.radius, "ball radius");
    embed->add_option("--pairs", cfg.pairs, "number of sampled pairs");
    embed->add_option("--kappa", cfg.kappa, "override the diary's pages per day");

    CLI::App* projc = app.add_subcommand("proj", "verify projection complex properties");
    common(projc);
    projc->add_option("--big-k", big_k_text, "comma-separated K values");
    projc->add_option("--checks", checks_text, "comma-separated checks (axioms and section check names)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        if (!big_k_text.empty())
            for (const auto& k : split(big_k_text, ',')) cfg.big_k.push_back(std::stoul(k));
        if (!checks_text.empty()) cfg.checks = split(checks_text, ',');

        std::string command;
        if (!app.get_subcommands().empty()) command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) {
            nlohmann::json j = read_json_file(config_path);
            if (!j.is_object()) throw UsageError("config must be a JSON object");
            if (command.empty()) command = j.value("command", std::string{});
            apply_config(j, app, cfg);
        }
        if (command.empty()) throw UsageError("expected a command: diary, embed or proj");
        cfg.command = command;
        if (cfg.radius == 0 && command == "embed") throw UsageError("--radius must be positive");
        for (std::size_t k : cfg.big_k)
            if (k == 0) throw UsageError("--big-k values must be positive");

        if (command == "diary") return cmd_diary(cfg, out);
        if (command == "embed") return cmd_embed(cfg, out);
        if (command == "proj") return cmd_proj(cfg, out);
        throw UsageError("unknown command: " + command);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: bad config value: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace treembed::cli
