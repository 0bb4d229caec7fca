#ifndef TREEMBED_DIARY_HPP
#define TREEMBED_DIARY_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treembed/statistics.hpp"
#include "treembed/words.hpp"

namespace treembed {

/// One letter of the codomain alphabet Omega, encoded as a word so that
/// products and chapters of any shape compare by plain equality.
using Entry = Word;
/// D(alpha): one entry per word of alpha. Unlike a Sentence, entries may be empty.
using DiaryImage = std::vector<Entry>;

/// Distance in T_Omega between two diary images.
std::size_t image_distance(const DiaryImage& a, const DiaryImage& b);

/// Height- and order-preserving map T_W -> T_Omega. The map is evaluated on
/// the whole sentence at once; `entry` is its last letter.
class Diary {
public:
    using MapFn = std::function<DiaryImage(const Sentence&)>;

    Diary(std::string name, std::string codomain, MapFn map, Rational guarantee);

    DiaryImage operator()(const Sentence& s) const;
    /// entry(w_1...w_i), the final letter of D(w_1...w_i). Throws on the empty sentence.
    Entry entry(const Sentence& s) const;

    const std::string& name() const { return name_; }
    const std::string& codomain() const { return codomain_; }
    /// The constant M with d_W / M <= d_Omega on pairs meeting the matching criterion.
    Rational guarantee() const { return guarantee_; }

private:
    std::string name_;
    std::string codomain_;
    MapFn map_;
    Rational guarantee_;
};

// ---------------------------------------------------------------------------
// Alice's Diary

/// 1-based (chapter, page) coordinates of a diary letter.
struct PageCoord {
    std::size_t chapter = 0;
    std::size_t page = 0;

    friend bool operator==(const PageCoord&, const PageCoord&) = default;
    friend auto operator<=>(const PageCoord&, const PageCoord&) = default;
};

struct DiaryProvenance {
    /// pages[c][k] is the source event written on page k+1 of chapter c+1.
    std::vector<std::vector<EventCoord>> pages;
    /// recorded[i][t] is where the letter at day i+1, position t+1 landed.
    std::vector<std::vector<std::optional<PageCoord>>> recorded;
};

template <class L>
struct AliceResult {
    std::vector<std::vector<L>> chapters;
    DiaryProvenance provenance;
};

/// Greedy diary with kappa pages per day: each evening the most recent
/// unrecorded events are written first. Unrecorded events persist on a stack.
template <class L>
AliceResult<L> alice_diary(std::size_t kappa, const std::vector<std::vector<L>>& days) {
    if (kappa == 0) throw std::invalid_argument("Alice's Diary needs kappa >= 1");
    AliceResult<L> out;
    out.chapters.reserve(days.size());
    out.provenance.pages.reserve(days.size());
    out.provenance.recorded.reserve(days.size());
    std::vector<EventCoord> pending;
    for (std::size_t d = 0; d < days.size(); ++d) {
        const auto& day = days[d];
        out.provenance.recorded.emplace_back(day.size());
        for (std::size_t t = 0; t < day.size(); ++t) pending.push_back({d + 1, t + 1});
        std::vector<L> chapter;
        std::vector<EventCoord> pages;
        while (chapter.size() < kappa && !pending.empty()) {
            EventCoord ev = pending.back();
            pending.pop_back();
            chapter.push_back(days[ev.day - 1][ev.position - 1]);
            pages.push_back(ev);
            out.provenance.recorded[ev.day - 1][ev.position - 1] = PageCoord{d + 1, pages.size()};
        }
        out.chapters.push_back(std::move(chapter));
        out.provenance.pages.push_back(std::move(pages));
    }
    return out;
}

AliceResult<Letter> alice_diary(std::size_t kappa, const Sentence& s);

/// Where the event at `at` was recorded, if it was.
std::optional<PageCoord> is_recorded(const DiaryProvenance& prov, EventCoord at);

/// Alice's Diary as a Diary object (guarantee 1 is a placeholder: the bare
/// map carries no distortion bound on its own).
Diary alice_as_diary(std::size_t kappa);

// ---------------------------------------------------------------------------
// The interleaving map used to feed linear statistics through Alice's Diary.

/// A letter of A' = {BLACKSTAR} u (A x prod_k (B^k u {STAR})).
struct InterleavedLetter {
    bool blackstar = false;
    Letter base = 0;
    std::vector<Letter> stats;

    friend bool operator==(const InterleavedLetter&, const InterleavedLetter&) = default;
};

using InterleavedWord = std::vector<InterleavedLetter>;

/// Smallest natural omega with omega >= tau / epsilon.
std::size_t interleave_omega(Rational tau, Rational epsilon);
/// max over the statistics of tau^k.
Rational max_tau(const std::vector<LinearStatistic>& stats);

/// Word i of the image is BLACKSTAR followed by omega*len(w_i) tuple letters.
/// The base component of tuple t is w_i[t mod len(w_i)]; component k is
/// reverse(norm_{omega len(w_i)}(stat^k_oo(w_1...w_i)))[t].
std::vector<InterleavedWord> interleave_embed(const Sentence& s, const std::vector<LinearStatistic>& stats,
                                              Rational epsilon);

/// Flat encoding of a word over A': each letter becomes 1 + K Letters, with
/// BLACKSTAR spelled as 1 + K copies of kBlackStar.
Entry flatten_interleaved(const InterleavedWord& w, std::size_t stat_count);

struct VirgoDiaryParams {
    Rational delta;
    std::size_t J = 0;
    Rational N;
    Rational epsilon;
    Rational tau;
    std::size_t omega = 0;
    Rational U;
    Rational V;
    std::size_t kappa = 0;
};

VirgoDiaryParams virgo_params(const std::vector<LinearStatistic>& stats, Rational delta, std::size_t J, Rational N,
                              Rational epsilon);

// Guarantee constants taken from the case analysis of the matching theorems.
Rational upsilon_guarantee(Rational delta, std::size_t J);
Rational virgo_guarantee(Rational delta, std::size_t J);
Rational taurus_guarantee(std::size_t J);

// ---------------------------------------------------------------------------
// Diary constructions.

Diary diary_from_finite(const FiniteStatistic& stat);
Diary upsilon_diary(const std::vector<FiniteStatistic>& stats, Rational delta, std::size_t J);
/// AD_kappa composed with the interleaving map. `kappa_override` replaces the
/// computed kappa (the guarantee is then no longer backed by the theorem).
Diary virgo_diary(const std::vector<LinearStatistic>& stats, Rational delta, std::size_t J, Rational N,
                  Rational epsilon, std::optional<std::size_t> kappa_override = std::nullopt);
/// virgo_diary with delta = 0 and N inflated to N + 6 J^2 epsilon.
Diary taurus_diary(const std::vector<LinearStatistic>& stats, std::size_t J, Rational N, Rational epsilon);
Rational taurus_inner_n(std::size_t J, Rational N, Rational epsilon);

/// Entry-wise pairing of two diaries; guarantee is the larger of the two.
Diary pair_diaries(const Diary& first, const Diary& second);
/// Unpack a paired entry into its two components.
std::pair<Entry, Entry> split_pair_entry(const Entry& e);

Diary combined_diary(const std::vector<FiniteStatistic>& fin, const std::vector<LinearStatistic>& lin,
                     std::size_t J_fin, std::size_t J_lin, Rational N, Rational epsilon);

/// {"kappa", "input", "chapters", "pages": [{chapter, page, day, position}], "unrecorded": [...]}
nlohmann::json diary_trace_json(const Alphabet& alphabet, const Sentence& s, std::size_t kappa);

}  // namespace treembed

#endif  // TREEMBED_DIARY_HPP
