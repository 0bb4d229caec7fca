#ifndef TREEMBED_COXETER_HPP
#define TREEMBED_COXETER_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "treembed/words.hpp"

namespace treembed::coxeter {

// The hexagonal right-angled Coxeter group on a1, a2, a3, b1, b2, b3.
// Letters are numbered 0..5 in that order, which is also the canonical order.
inline constexpr Letter a1 = 0, a2 = 1, a3 = 2, b1 = 3, b2 = 4, b3 = 5;
inline constexpr std::size_t kGenerators = 6;

inline constexpr bool is_a(Letter x) { return x < 3; }
inline constexpr bool is_b(Letter x) { return x >= 3 && x < 6; }
inline constexpr std::size_t index_of(Letter x) { return x % 3; }

/// a_k and b_l commute exactly when k != l; same-family letters never commute.
inline constexpr bool commutes(Letter x, Letter y) {
    return is_a(x) != is_a(y) && index_of(x) != index_of(y);
}

/// Alphabet {a1, ..., b3} used when group words are viewed as sentence letters.
const Alphabet& hex_alphabet();

/// An element stored by its canonical word: the lexicographically least
/// geodesic word among those equal to it up to commuting adjacent letters.
class GroupElement {
public:
    GroupElement() = default;

    const Word& word() const { return word_; }
    std::size_t length() const { return word_.size(); }
    bool is_identity() const { return word_.empty(); }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

private:
    friend GroupElement reduce(const Word& w);
    explicit GroupElement(Word w) : word_(std::move(w)) {}
    Word word_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const;
};

/// Throws std::invalid_argument on letters outside 0..5.
GroupElement reduce(const Word& w);
GroupElement identity();
GroupElement generator(Letter x);
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Cancel a word to a geodesic without canonicalising letter order.
Word free_reduce(const Word& w);
/// Lexicographically least word obtained from a geodesic by commuting letters.
Word lex_normal_form(const Word& geodesic);

/// Geodesic word for g with every A-letter commuted as far left as it goes.
Word a_left_rep(const GroupElement& g);
Word b_left_rep(const GroupElement& g);

/// u_1 a_1 | u_2 a_2 | ... | u_m a_m parsed from the a-left word; the trailing
/// B-block is dropped.
Sentence F_A(const GroupElement& g);
Sentence F_B(const GroupElement& g);

std::size_t word_metric(const GroupElement& g, const GroupElement& h);

inline constexpr std::size_t kDefaultBallCap = 12;

/// All elements within distance R of the identity, sorted by (length, word).
/// Throws std::invalid_argument when R exceeds `cap`.
std::vector<GroupElement> ball(std::size_t R, std::size_t cap = kDefaultBallCap);

/// "a1.b2"; the identity is "e".
std::string to_string(const GroupElement& g);
std::string word_to_string(const Word& w);
/// Accepts "e", "", or dot-separated letters. The word need not be reduced.
Word parse_word(std::string_view text);
GroupElement parse_element(std::string_view text);

}  // namespace treembed::coxeter

#endif  // TREEMBED_COXETER_HPP
