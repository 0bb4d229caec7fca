#include "treembed/diary.hpp"

#include <algorithm>

namespace treembed {

std::size_t image_distance(const DiaryImage& a, const DiaryImage& b) {
    return prefix_tree_distance<Entry>(a, b);
}

Diary::Diary(std::string name, std::string codomain, MapFn map, Rational guarantee)
    : name_(std::move(name)), codomain_(std::move(codomain)), map_(std::move(map)), guarantee_(guarantee) {
    if (guarantee_ < 1) throw std::invalid_argument("diary guarantee must be at least 1");
}

DiaryImage Diary::operator()(const Sentence& s) const {
    DiaryImage img = map_(s);
    if (img.size() != s.size()) throw std::logic_error("diary '" + name_ + "' is not height-preserving");
    return img;
}

Entry Diary::entry(const Sentence& s) const {
    if (s.empty()) throw std::invalid_argument("entry of the empty sentence");
    return (*this)(s).back();
}

AliceResult<Letter> alice_diary(std::size_t kappa, const Sentence& s) { return alice_diary<Letter>(kappa, s.words()); }

std::optional<PageCoord> is_recorded(const DiaryProvenance& prov, EventCoord at) {
    if (at.day < 1 || at.day > prov.recorded.size()) throw std::out_of_range("day out of range");
    const auto& day = prov.recorded[at.day - 1];
    if (at.position < 1 || at.position > day.size()) throw std::out_of_range("position out of range");
    return day[at.position - 1];
}

Diary alice_as_diary(std::size_t kappa) {
    if (kappa == 0) throw std::invalid_argument("Alice's Diary needs kappa >= 1");
    return Diary("alice(" + std::to_string(kappa) + ")", "words of length <= " + std::to_string(kappa),
                 [kappa](const Sentence& s) { return alice_diary(kappa, s).chapters; }, Rational(1));
}

std::size_t interleave_omega(Rational tau, Rational epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    Rational q = tau / epsilon;
    return static_cast<std::size_t>((q.numerator() + q.denominator() - 1) / q.denominator());
}

Rational max_tau(const std::vector<LinearStatistic>& stats) {
    Rational t(1);
    for (const auto& s : stats) t = std::max(t, s.tau());
    return t;
}

std::vector<InterleavedWord> interleave_embed(const Sentence& s, const std::vector<LinearStatistic>& stats,
                                              Rational epsilon) {
    std::size_t omega = interleave_omega(max_tau(stats), epsilon);
    std::vector<InterleavedWord> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Word& w = s[i];
        std::size_t width = omega * w.size();
        Sentence prefix = s.prefix(i + 1);
        std::vector<Word> rows;
        rows.reserve(stats.size());
        for (const auto& st : stats) rows.push_back(reversed(norm(st.infinite(prefix), width)));
        InterleavedWord word;
        word.reserve(width + 1);
        word.push_back(InterleavedLetter{true, 0, {}});
        for (std::size_t t = 0; t < width; ++t) {
            InterleavedLetter l{false, w[t % w.size()], {}};
            l.stats.reserve(rows.size());
            for (const auto& r : rows) l.stats.push_back(r[t]);
            word.push_back(std::move(l));
        }
        out.push_back(std::move(word));
    }
    return out;
}

Entry flatten_interleaved(const InterleavedWord& w, std::size_t stat_count) {
    Entry e;
    e.reserve(w.size() * (1 + stat_count));
    for (const auto& l : w) {
        if (l.blackstar) {
            e.insert(e.end(), 1 + stat_count, kBlackStar);
            continue;
        }
        if (l.stats.size() != stat_count) throw std::invalid_argument("interleaved letter has the wrong arity");
        e.push_back(l.base);
        e.insert(e.end(), l.stats.begin(), l.stats.end());
    }
    return e;
}

namespace {

Rational one_minus(Rational delta) {
    if (delta < 0 || delta >= 1) throw std::invalid_argument("delta must lie in [0, 1)");
    return Rational(1) - delta;
}

Rational jr(std::size_t J) { return Rational(static_cast<std::int64_t>(J)); }

}  // namespace

VirgoDiaryParams virgo_params(const std::vector<LinearStatistic>& stats, Rational delta, std::size_t J, Rational N,
                              Rational epsilon) {
    if (stats.empty()) throw std::invalid_argument("virgo diary needs at least one linear statistic");
    if (J == 0) throw std::invalid_argument("J must be positive");
    if (N <= 0) throw std::invalid_argument("N must be positive");
    Rational gap = one_minus(delta);
    VirgoDiaryParams p;
    p.delta = delta;
    p.J = J;
    p.N = N;
    p.epsilon = epsilon;
    p.tau = max_tau(stats);
    p.omega = interleave_omega(p.tau, epsilon);
    Rational om(static_cast<std::int64_t>(p.omega));
    p.U = Rational(12) * p.tau * jr(J) / gap + om * N + 1;
    p.V = Rational(12) * (p.tau + epsilon) * jr(J) / gap + om * N + 1;
    Rational top = std::max({Rational(16) * p.U / gap, Rational(64) * jr(J) * p.tau / gap, Rational(16) * p.V / gap,
                             Rational(64) * jr(J) * (p.tau + epsilon) / gap});
    p.kappa = static_cast<std::size_t>(top.numerator() / top.denominator()) + 1;
    return p;
}

Rational upsilon_guarantee(Rational delta, std::size_t J) {
    return std::max(Rational(1), Rational(2) * jr(J) / one_minus(delta));
}

Rational virgo_guarantee(Rational delta, std::size_t J) {
    Rational gap = one_minus(delta);
    return std::max({Rational(3), Rational(8) / gap, Rational(32) * jr(J) / gap});
}

Rational taurus_guarantee(std::size_t J) { return std::max(Rational(3), virgo_guarantee(Rational(0), J)); }

Rational taurus_inner_n(std::size_t J, Rational N, Rational epsilon) {
    return N + Rational(6) * jr(J) * jr(J) * epsilon;
}

namespace {

Diary finite_diary(const FiniteStatistic& stat, std::string name, Rational guarantee) {
    return Diary(std::move(name), stat.codomain().description,
                 [stat](const Sentence& s) {
                     DiaryImage img;
                     img.reserve(s.size());
                     for (std::size_t i = 1; i <= s.size(); ++i) img.push_back(stat(s.prefix(i)));
                     return img;
                 },
                 guarantee);
}

}  // namespace

Diary diary_from_finite(const FiniteStatistic& stat) { return finite_diary(stat, "diary(" + stat.name() + ")", 1); }

Diary upsilon_diary(const std::vector<FiniteStatistic>& stats, Rational delta, std::size_t J) {
    if (J == 0) throw std::invalid_argument("J must be positive");
    FiniteStatistic prod = product_stat(stats);
    return finite_diary(prod, "upsilon(" + prod.name() + ")", upsilon_guarantee(delta, J));
}

Diary virgo_diary(const std::vector<LinearStatistic>& stats, Rational delta, std::size_t J, Rational N,
                  Rational epsilon, std::optional<std::size_t> kappa_override) {
    VirgoDiaryParams p = virgo_params(stats, delta, J, N, epsilon);
    std::size_t kappa = kappa_override.value_or(p.kappa);
    if (kappa == 0) throw std::invalid_argument("kappa must be positive");
    std::string name = "virgo(kappa=" + std::to_string(kappa) + ",omega=" + std::to_string(p.omega) + ")";
    std::string codomain = "chapters of length <= " + std::to_string(kappa) + " over the interleaved alphabet";
    return Diary(std::move(name), std::move(codomain),
                 [stats, epsilon, kappa](const Sentence& s) {
                     auto chapters = alice_diary(kappa, interleave_embed(s, stats, epsilon)).chapters;
                     DiaryImage img;
                     img.reserve(chapters.size());
                     for (const auto& c : chapters) img.push_back(flatten_interleaved(c, stats.size()));
                     return img;
                 },
                 virgo_guarantee(delta, J));
}

Diary taurus_diary(const std::vector<LinearStatistic>& stats, std::size_t J, Rational N, Rational epsilon) {
    Diary inner = virgo_diary(stats, Rational(0), J, taurus_inner_n(J, N, epsilon), epsilon);
    return Diary("taurus/" + inner.name(), inner.codomain(), [inner](const Sentence& s) { return inner(s); },
                 taurus_guarantee(J));
}

Diary pair_diaries(const Diary& first, const Diary& second) {
    return Diary("pair(" + first.name() + "," + second.name() + ")",
                 first.codomain() + " x " + second.codomain(),
                 [first, second](const Sentence& s) {
                     DiaryImage a = first(s);
                     DiaryImage b = second(s);
                     DiaryImage img;
                     img.reserve(a.size());
                     for (std::size_t i = 0; i < a.size(); ++i) img.push_back(pack_product({a[i], b[i]}));
                     return img;
                 },
                 std::max(first.guarantee(), second.guarantee()));
}

std::pair<Entry, Entry> split_pair_entry(const Entry& e) {
    auto parts = unpack_product(e);
    if (parts.size() != 2) throw std::invalid_argument("not a paired entry");
    return {std::move(parts[0]), std::move(parts[1])};
}

Diary combined_diary(const std::vector<FiniteStatistic>& fin, const std::vector<LinearStatistic>& lin,
                     std::size_t J_fin, std::size_t J_lin, Rational N, Rational epsilon) {
    return pair_diaries(upsilon_diary(fin, Rational(0), J_fin), taurus_diary(lin, J_lin, N, epsilon));
}

nlohmann::json diary_trace_json(const Alphabet& alphabet, const Sentence& s, std::size_t kappa) {
    AliceResult<Letter> r = alice_diary(kappa, s);
    nlohmann::json chapters = nlohmann::json::array();
    for (const auto& c : r.chapters) chapters.push_back(alphabet.render(c));
    nlohmann::json pages = nlohmann::json::array();
    for (std::size_t c = 0; c < r.provenance.pages.size(); ++c)
        for (std::size_t k = 0; k < r.provenance.pages[c].size(); ++k) {
            const EventCoord& ev = r.provenance.pages[c][k];
            pages.push_back({{"chapter", c + 1}, {"page", k + 1}, {"day", ev.day}, {"position", ev.position}});
        }
    nlohmann::json unrecorded = nlohmann::json::array();
    for (std::size_t d = 0; d < r.provenance.recorded.size(); ++d)
        for (std::size_t t = 0; t < r.provenance.recorded[d].size(); ++t)
            if (!r.provenance.recorded[d][t]) unrecorded.push_back({{"day", d + 1}, {"position", t + 1}});
    nlohmann::json j;
    j["kappa"] = kappa;
    j["input"] = sentence_to_json(alphabet, s);
    j["chapters"] = std::move(chapters);
    j["pages"] = std::move(pages);
    j["unrecorded"] = std::move(unrecorded);
    return j;
}

}  // namespace treembed
