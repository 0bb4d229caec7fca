#ifndef TREEMBED_CRITERIA_HPP
#define TREEMBED_CRITERIA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treembed/statistics.hpp"
#include "treembed/words.hpp"

namespace treembed {

enum class Criterion { Upsilon, Leo, Virgo, Taurus };

const char* to_string(Criterion c);

/// Which disjunct of the Virgo length/difference clause was observed first.
enum class VirgoLengthReason { LongLeft, LongRight, WordsDiffer };

/// One j' of the Taurus conditional clause: either exempt (a longer word
/// appears later in the window) or separated by the named statistic.
struct TaurusStep {
    std::size_t j_prime = 0;
    bool exempt = false;
    std::size_t stat_index = 0;
};

struct CriterionWitness {
    Criterion criterion = Criterion::Upsilon;
    std::size_t j = 0;
    std::size_t stat_index = 0;
    std::string stat_id;
    /// Level c at which a linear statistic was evaluated (m + n); 0 for finite ones.
    std::size_t level = 0;
    StatValue value_a;
    StatValue value_b;

    // Virgo only.
    bool m1 = false;
    bool m2 = false;
    bool m3 = false;
    VirgoLengthReason m2_reason = VirgoLengthReason::WordsDiffer;

    // Taurus only; one entry per j' in 1..j.
    std::vector<TaurusStep> steps;
};

/// Largest admissible j: min(floor(delta * min(m, n) + J), min(m, n)).
/// Zero means no j is admissible.
std::size_t admissible_j_bound(Rational delta, std::size_t J, std::size_t m, std::size_t n);

/// All checkers throw std::invalid_argument when a == b. Search order is
/// ascending j, then statistic order; the first hit is returned.
std::optional<CriterionWitness> check_upsilon(const Sentence& a, const Sentence& b,
                                              const std::vector<FiniteStatistic>& stats, Rational delta,
                                              std::size_t J);

std::optional<CriterionWitness> check_leo(const Sentence& a, const Sentence& b,
                                          const std::vector<FiniteStatistic>& stats, std::size_t J);

std::optional<CriterionWitness> check_virgo(const Sentence& a, const Sentence& b,
                                            const std::vector<LinearStatistic>& stats, Rational delta,
                                            std::size_t J, Rational N, Rational epsilon);

std::optional<CriterionWitness> check_taurus(const Sentence& a, const Sentence& b,
                                             const std::vector<LinearStatistic>& stats, std::size_t J,
                                             Rational N, Rational epsilon);

/// Stronger form of Taurus where every j' <= j must be separated, with no
/// exemptions for long words.
std::optional<CriterionWitness> check_taurus_strict(const Sentence& a, const Sentence& b,
                                                    const std::vector<LinearStatistic>& stats, std::size_t J,
                                                    Rational N, Rational epsilon);

/// Re-evaluates the cited statistic on the cited truncations and checks that
/// it reproduces the witness values. Finite witnesses use `fin`, linear ones `lin`.
bool reverify_witness(const Sentence& a, const Sentence& b, const CriterionWitness& w,
                      const std::vector<FiniteStatistic>& fin, const std::vector<LinearStatistic>& lin);

}  // namespace treembed

#endif  // TREEMBED_CRITERIA_HPP
