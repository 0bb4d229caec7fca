#ifndef TREEMBED_STATISTICS_HPP
#define TREEMBED_STATISTICS_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "treembed/words.hpp"

namespace treembed {

/// Statistic values are encoded as words. Numeric outputs use the number
/// itself as a letter; tuples are length-prefixed concatenations.
using StatValue = Word;

/// A finite codomain described by a membership test.
struct FiniteCodomain {
    std::string description;
    std::function<bool(const StatValue&)> contains;
};

/// A function from nonempty sentences into a finite set.
class FiniteStatistic {
public:
    using Eval = std::function<StatValue(const Sentence&)>;

    FiniteStatistic(std::string name, FiniteCodomain codomain, Eval eval);

    /// Throws std::invalid_argument on the empty sentence.
    StatValue operator()(const Sentence& s) const;

    const std::string& name() const { return name_; }
    const FiniteCodomain& codomain() const { return codomain_; }

private:
    std::string name_;
    FiniteCodomain codomain_;
    Eval eval_;
};

/// A family stat_c of finite statistics with |stat_c| <= tau * c and stat_c a
/// prefix of stat_{c'} whenever c <= c'. `infinite` is the limit c -> oo.
class LinearStatistic {
public:
    using Eval = std::function<Word(std::size_t c, const Sentence&)>;
    using EvalInfinite = std::function<Word(const Sentence&)>;

    LinearStatistic(std::string name, Rational tau, std::string codomain, Eval eval, EvalInfinite infinite);

    Word operator()(std::size_t c, const Sentence& s) const;
    Word infinite(const Sentence& s) const;

    const std::string& name() const { return name_; }
    Rational tau() const { return tau_; }
    /// Description of the output alphabet B.
    const std::string& codomain() const { return codomain_; }

private:
    std::string name_;
    Rational tau_;
    std::string codomain_;
    Eval eval_;
    EvalInfinite infinite_;
};

// Built-in finite statistics.
FiniteStatistic last_letter();
FiniteStatistic trunc_finite(std::size_t kappa);
FiniteStatistic length_mod(std::size_t modulus);
FiniteStatistic predicate_stat(std::string name, std::function<bool(const Sentence&)> q);

inline constexpr Letter kYes = 1;
inline constexpr Letter kNo = 0;

/// Cartesian product of finite statistics, evaluated componentwise.
FiniteStatistic product_stat(std::vector<FiniteStatistic> stats);
/// Split a product value back into its components.
std::vector<StatValue> unpack_product(const StatValue& v);
StatValue pack_product(const std::vector<StatValue>& parts);

// Built-in linear statistics.

/// Final tau*c letters of the final word, newest first. B is the source alphabet.
LinearStatistic trunc_linear(std::size_t tau);
/// Empty word if the final word is longer than c, otherwise the letter 0.
LinearStatistic howmany();
/// Final tau*c decimal digits of the final word's length, least significant first.
/// Digits are the letters 0..9.
LinearStatistic base10_length_linear(std::size_t tau = 1);

/// Chooses, for a letter count l, a permutation of {0, ..., l-1}.
using PriorityOrder = std::function<std::vector<std::size_t>(std::size_t letter_count)>;
/// First tau*c letters of the whole letter stream reordered by the priority order.
LinearStatistic oop(PriorityOrder order, std::size_t tau = 1);

std::vector<std::size_t> identity_priority(std::size_t l);
std::vector<std::size_t> reversal_priority(std::size_t l);

/// floor(tau * c), the length budget of stat_c.
std::size_t linear_budget(Rational tau, std::size_t c);

}  // namespace treembed

#endif  // TREEMBED_STATISTICS_HPP
