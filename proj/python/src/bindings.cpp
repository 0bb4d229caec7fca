#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <sstream>

#include "treembed/cli.hpp"
#include "treembed/coxeter.hpp"
#include "treembed/diary.hpp"
#include "treembed/h2embed.hpp"
#include "treembed/projcomplex.hpp"

namespace py = pybind11;
using namespace treembed;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
std::string diary_trace(const std::vector<std::string>& words, std::size_t kappa, const std::string& letters) {
    if (kappa == 0) throw std::invalid_argument("kappa must be at least 1");
    std::string chars = letters;
    if (chars.empty()) {
        for (const auto& w : words) chars += w;
        std::sort(chars.begin(), chars.end());
        chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
        if (chars.empty()) chars = "a";
    }
    Alphabet alphabet = Alphabet::from_chars(chars);
    std::vector<Word> parsed;
    for (const auto& w : words) parsed.push_back(alphabet.parse(w));
    return diary_trace_json(alphabet, Sentence(parsed), kappa).dump();
}

std::pair<std::vector<std::string>, std::vector<std::string>> tree_coordinates(const std::string& g) {
    auto el = coxeter::parse_element(g);
    auto render = [](const Sentence& s) {
        std::vector<std::string> out;
        for (const auto& w : s) out.push_back(coxeter::hex_alphabet().render(w));
        return out;
    };
    return {render(coxeter::F_A(el)), render(coxeter::F_B(el))};
}

std::string distortion_summary(std::size_t radius, std::size_t pairs, std::uint64_t seed,
                               std::optional<std::size_t> kappa) {
    auto params = h2::default_params();
    Diary d = h2::product_diary(params, kappa);
    auto report = h2::distortion_report(d, {radius, pairs, seed, false}, params,
                                        kappa.value_or(h2::linear_component_params(params).kappa));
    return h2::report_summary(report).dump();
}

std::string verify_projection(const std::string& instance, const std::vector<std::size_t>& Ks, std::uint64_t seed) {
    auto spec = proj::instance_spec_from_json(nlohmann::json::parse(instance));
    auto sys = proj::build_instance(spec);
    auto ax = proj::verify_axioms(sys);
    nlohmann::json out{{"indices", sys.size()}, {"axioms", ax.report.to_json()}, {"min_theta", ax.min_theta}};
    bool passed = ax.passed();
    nlohmann::json section = nlohmann::json::array();
    proj::VerifyOptions opt;
    opt.seed = seed;
    for (std::size_t K : Ks) {
        auto rep = proj::verify_section5(sys, proj::build_complexes(sys, K, 0, seed), opt);
        nlohmann::json rj = rep.to_json();
        rj["K"] = K;
        section.push_back(rj);
        passed = passed && rep.passed();
    }
    out["section"] = section;
    out["passed"] = passed;
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tree embeddings: diaries, the hexagonal Coxeter group, projection complexes";

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));

    m.def("diary_trace", &diary_trace, py::arg("words"), py::arg("kappa"), py::arg("alphabet") = "");
    m.def("normal_form", [](const std::string& g) { return coxeter::to_string(coxeter::parse_element(g)); },
          py::arg("g"));
    m.def("word_metric",
          [](const std::string& g, const std::string& h) {
              return coxeter::word_metric(coxeter::parse_element(g), coxeter::parse_element(h));
          },
          py::arg("g"), py::arg("h"));
    m.def("ball_size", [](std::size_t R) { return coxeter::ball(R).size(); }, py::arg("radius"));
    m.def("tree_coordinates", &tree_coordinates, py::arg("g"));
    m.def("distortion_summary", &distortion_summary, py::arg("radius"), py::arg("pairs"), py::arg("seed") = 1,
          py::arg("kappa") = py::none(), py::call_guard<py::gil_scoped_release>());
    m.def("verify_projection", &verify_projection, py::arg("instance"), py::arg("Ks"), py::arg("seed") = 1,
          py::call_guard<py::gil_scoped_release>());
}
