#include "treembed/h2embed.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treembed/parallel.hpp"

namespace treembed::h2 {

using coxeter::GroupElement;

EmbedParams default_params() {
    EmbedParams p;
    p.fin = {last_letter()};
    p.lin = {trunc_linear(12), base10_length_linear(12)};
    return p;
}

VirgoDiaryParams linear_component_params(const EmbedParams& p) {
    return virgo_params(p.lin, p.delta, p.J_lin, p.N, p.epsilon);
}

Diary product_diary(const EmbedParams& p, std::optional<std::size_t> kappa_override) {
    return pair_diaries(upsilon_diary(p.fin, Rational(0), p.J_fin),
                        virgo_diary(p.lin, p.delta, p.J_lin, p.N, p.epsilon, kappa_override));
}

Embedding embed(const Diary& d, const GroupElement& g) {
    return {d(coxeter::F_A(g)), d(coxeter::F_B(g))};
}

std::size_t embedding_distance(const Embedding& x, const Embedding& y) {
    return image_distance(x.a, y.a) + image_distance(x.b, y.b);
}

std::string to_string(Dispatch d) {
    switch (d) {
        case Dispatch::Identical: return "identical";
        case Dispatch::Height: return "height";
        case Dispatch::Leo: return "leo";
        case Dispatch::Virgo: return "virgo";
        case Dispatch::None: return "none";
    }
    return "none";
}

Dispatch dispatch_criterion(const Sentence& a, const Sentence& b, const EmbedParams& p) {
    if (a == b) return Dispatch::Identical;
    auto d = split_at_divergence(a, b);
    std::size_t gap = d.m > d.n ? d.m - d.n : d.n - d.m;
    if (3 * gap >= d.m + d.n) return Dispatch::Height;
    if (check_leo(a, b, p.fin, p.J_fin)) return Dispatch::Leo;
    if (check_virgo(a, b, p.lin, p.delta, p.J_lin, p.N, p.epsilon)) return Dispatch::Virgo;
    return Dispatch::None;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed,
                                                              bool full, bool* enumerated) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
    bool all = full || n * n <= 1'000'000 || count >= total;
    if (enumerated) *enumerated = all;
    if (all) {
        out.reserve(total);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
        return out;
    }
    std::mt19937_64 rng(seed);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    out.reserve(count);
    while (out.size() < count) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        if (seen.emplace(i, j).second) out.emplace_back(i, j);
    }
    return out;
}

DistortionReport distortion_report(const Diary& d, const SampleSpec& spec, const EmbedParams& p,
                                   std::size_t kappa) {
    DistortionReport r;
    r.spec = spec;
    r.M = d.guarantee();
    r.kappa = kappa;

    std::vector<GroupElement> elems = coxeter::ball(spec.radius);
    r.ball_size = elems.size();
    auto pairs = sample_pairs(elems.size(), spec.pairs, spec.seed, spec.force_full, &r.full_enumeration);
    if (pairs.empty()) throw std::invalid_argument("distortion sample is empty");

    // Embed only the elements the sample touches.
    std::vector<std::size_t> used;
    used.reserve(2 * pairs.size());
    for (auto [i, j] : pairs) {
        used.push_back(i);
        used.push_back(j);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<Sentence> fa(elems.size()), fb(elems.size());
    std::vector<Embedding> emb(elems.size());
    parallel_for(used.size(), [&](std::size_t k) {
        std::size_t i = used[k];
        fa[i] = coxeter::F_A(elems[i]);
        fb[i] = coxeter::F_B(elems[i]);
        emb[i] = {d(fa[i]), d(fb[i])};
    });

    r.rows.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        auto [i, j] = pairs[k];
        PairRow& row = r.rows[k];
        row.g = elems[i];
        row.h = elems[j];
        row.d_G = coxeter::word_metric(elems[i], elems[j]);
        std::size_t dA = sentence_tree_distance(fa[i], fa[j]);
        std::size_t dB = sentence_tree_distance(fb[i], fb[j]);
        row.d_F = dA + dB;
        row.d_DF = embedding_distance(emb[i], emb[j]);
        row.criterion = dA >= dB ? dispatch_criterion(fa[i], fa[j], p) : dispatch_criterion(fb[i], fb[j], p);
    });

    for (const auto& row : r.rows) {
        if (row.d_F != row.d_G) r.isometry_holds = false;
        if (row.d_DF > row.d_G) r.upper_bound_holds = false;
        if (row.criterion == Dispatch::None) r.dispatch_covers = false;
        if (row.d_G < kLowerBoundFrom) continue;
        ++r.long_pairs;
        auto dG = static_cast<std::int64_t>(row.d_G);
        auto dDF = static_cast<std::int64_t>(row.d_DF);
        // d_DF >= d_G / 2M, kept exact.
        if (Rational(dDF) * 2 * r.M < Rational(dG)) r.lower_bound_holds = false;
        if (dDF == 0) continue;
        Rational ratio(dG, dDF);
        if (!r.max_distortion || ratio > *r.max_distortion) r.max_distortion = ratio;
    }
    return r;
}

std::string report_csv(const DistortionReport& r) {
    std::ostringstream os;
    os << "g,g',d_G,d_F,d_DF,criterion_used\n";
    for (const auto& row : r.rows)
        os << coxeter::to_string(row.g) << ',' << coxeter::to_string(row.h) << ',' << row.d_G << ',' << row.d_F
           << ',' << row.d_DF << ',' << to_string(row.criterion) << '\n';
    return os.str();
}

namespace {

nlohmann::json rational_json(const Rational& q) {
    if (q.denominator() == 1) return q.numerator();
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace

nlohmann::json report_summary(const DistortionReport& r) {
    std::map<std::string, std::size_t> by_criterion;
    for (const auto& row : r.rows) ++by_criterion[to_string(row.criterion)];
    nlohmann::json j;
    j["M"] = rational_json(r.M);
    j["kappa"] = r.kappa;
    j["radius"] = r.spec.radius;
    j["seed"] = r.spec.seed;
    j["pairs_requested"] = r.spec.pairs;
    j["pairs"] = r.rows.size();
    j["ball_size"] = r.ball_size;
    j["full_enumeration"] = r.full_enumeration;
    j["lower_bound_from"] = kLowerBoundFrom;
    j["long_pairs"] = r.long_pairs;
    j["max_distortion"] = r.max_distortion ? rational_json(*r.max_distortion) : nlohmann::json(nullptr);
    j["max_distortion_float"] =
        r.max_distortion ? nlohmann::json(boost::rational_cast<double>(*r.max_distortion)) : nlohmann::json(nullptr);
    j["criteria"] = by_criterion;
    j["checks"] = {{"isometry", r.isometry_holds},
                   {"upper_bound", r.upper_bound_holds},
                   {"lower_bound", r.lower_bound_holds},
                   {"dispatch_covers", r.dispatch_covers}};
    j["passed"] = r.passed();
    return j;
}

}  // namespace treembed::h2
