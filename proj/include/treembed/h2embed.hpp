#ifndef TREEMBED_H2EMBED_HPP
#define TREEMBED_H2EMBED_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "treembed/coxeter.hpp"
#include "treembed/criteria.hpp"
#include "treembed/diary.hpp"

namespace treembed::h2 {

// Embedding of the hexagonal right-angled Coxeter group into a product of two
// bounded-valence trees: g -> (D(F_A g), D(F_B g)).

struct EmbedParams {
    std::vector<FiniteStatistic> fin;
    std::size_t J_fin = 2;
    std::vector<LinearStatistic> lin;
    Rational delta{0};
    std::size_t J_lin = 2;
    Rational N{18};
    Rational epsilon{1};
};

/// last_letter for the finite part; the final 12c letters of w_i and of the
/// decimal expansion of len(w_i) for the linear part; delta 0, J 2, N 18, eps 1.
EmbedParams default_params();

/// Parameters of the Virgo component (tau 12, omega 12, kappa 8465 by default).
VirgoDiaryParams linear_component_params(const EmbedParams& p = default_params());

/// Pairs upsilon_diary(fin, 0, J_fin) with virgo_diary(lin, 0, J_lin, N, eps).
/// Delta is zero, so the Virgo diary is used directly.
Diary product_diary(const EmbedParams& p = default_params(), std::optional<std::size_t> kappa_override = {});

struct Embedding {
    DiaryImage a;
    DiaryImage b;
};

Embedding embed(const Diary& d, const coxeter::GroupElement& g);
std::size_t embedding_distance(const Embedding& x, const Embedding& y);

/// Which argument certifies the lower bound for a pair, decided on whichever of
/// F_A, F_B carries the larger tree distance (F_A on ties).
enum class Dispatch { Identical, Height, Leo, Virgo, None };
std::string to_string(Dispatch d);

Dispatch dispatch_criterion(const Sentence& a, const Sentence& b, const EmbedParams& p);

struct PairRow {
    coxeter::GroupElement g;
    coxeter::GroupElement h;
    std::size_t d_G = 0;
    std::size_t d_F = 0;
    std::size_t d_DF = 0;
    Dispatch criterion = Dispatch::None;
};

struct SampleSpec {
    std::size_t radius = 5;
    std::size_t pairs = 10000;
    std::uint64_t seed = 1;
    /// Enumerate every unordered pair regardless of size.
    bool force_full = false;
};

/// Pairs below this word distance carry no lower-bound claim.
inline constexpr std::size_t kLowerBoundFrom = 12;

struct DistortionReport {
    SampleSpec spec;
    bool full_enumeration = false;
    std::size_t ball_size = 0;
    Rational M;
    std::size_t kappa = 0;
    std::vector<PairRow> rows;

    std::size_t long_pairs = 0;
    /// max d_G / d_DF over pairs with d_G >= kLowerBoundFrom; unset when none.
    std::optional<Rational> max_distortion;
    bool isometry_holds = true;     // d_F == d_G everywhere
    bool upper_bound_holds = true;  // d_DF <= d_G everywhere
    bool lower_bound_holds = true;  // d_DF >= d_G / 2M on long pairs
    bool dispatch_covers = true;    // every pair is Height, Leo or Virgo

    bool passed() const { return isometry_holds && upper_bound_holds && lower_bound_holds; }
};

/// Unordered pairs i < j of [0, n): all of them when n^2 <= 10^6 or `full`,
/// otherwise `count` distinct pairs drawn from mt19937_64(seed).
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed,
                                                              bool full, bool* enumerated = nullptr);

/// Throws std::invalid_argument when the sample would be empty.
DistortionReport distortion_report(const Diary& d, const SampleSpec& spec, const EmbedParams& p = default_params(),
                                   std::size_t kappa = 0);

/// Columns g, g', d_G, d_F, d_DF, criterion_used.
std::string report_csv(const DistortionReport& r);
nlohmann::json report_summary(const DistortionReport& r);

}  // namespace treembed::h2

#endif  // TREEMBED_H2EMBED_HPP
