#ifndef TREEMBED_WORDS_HPP
#define TREEMBED_WORDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>
#include "json.hpp"

namespace treembed {

using Rational = boost::rational<std::int64_t>;

/// Letters are opaque tokens. Values below kStar are ordinary letters; the two
/// reserved tokens sit at the top of the range so they never collide.
using Letter = std::uint32_t;
inline constexpr Letter kStar = 0xFFFFFFFEu;       // padding / "sunrise" letter
inline constexpr Letter kBlackStar = 0xFFFFFFFFu;  // day separator of the interleaving map

inline constexpr bool is_reserved(Letter l) { return l >= kStar; }

using Word = std::vector<Letter>;

/// Finite ordered set of named letters plus an optional text codec.
///
/// Ordinary letters are numbered 0..size()-1 in declaration order. The
/// reserved tokens are rendered as "*" (STAR) and "#" (BLACKSTAR). When the
/// separator is empty, words are parsed by greedy longest match over the
/// names; otherwise letters are split on the separator.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> names, std::string separator = {});

    /// One letter per character of `chars`, no separator.
    static Alphabet from_chars(std::string_view chars);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& separator() const { return separator_; }

    bool contains(Letter l) const { return l < names_.size() || is_reserved(l); }
    std::optional<Letter> find(std::string_view name) const;
    std::string name(Letter l) const;

    Word parse(std::string_view text) const;
    std::string render(const Word& w) const;

    /// Throws std::invalid_argument if `w` uses a letter outside the alphabet.
    void validate(const Word& w) const;

private:
    std::vector<std::string> names_;
    std::string separator_;
};

/// A finite string of nonempty words; a vertex of the sentence-tree.
class Sentence {
public:
    Sentence() = default;
    explicit Sentence(std::vector<Word> words);

    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const Word& operator[](std::size_t i) const { return words_[i]; }
    const Word& back() const { return words_.back(); }
    const std::vector<Word>& words() const { return words_; }

    auto begin() const { return words_.begin(); }
    auto end() const { return words_.end(); }

    /// The first `n` words (n <= size()).
    Sentence prefix(std::size_t n) const;
    /// Words [from, size()).
    Sentence suffix_from(std::size_t from) const;
    void push_back(Word w);

    std::size_t letter_count() const;

    friend bool operator==(const Sentence&, const Sentence&) = default;
    friend auto operator<=>(const Sentence&, const Sentence&) = default;

private:
    std::vector<Word> words_;
};

/// A sentence whose every word is STAR followed by a STAR-free nonempty word.
bool is_starred(const Sentence& s);

/// Position of a letter inside a sentence. Both coordinates are 1-based:
/// `day` indexes the word, `position` the letter within it.
struct EventCoord {
    std::size_t day = 0;
    std::size_t position = 0;

    friend bool operator==(const EventCoord&, const EventCoord&) = default;
    friend auto operator<=>(const EventCoord&, const EventCoord&) = default;
};

// Rooted prefix-tree metric over sequences of any equality-comparable type.
template <class T>
std::size_t common_prefix_length(std::span<const T> a, std::span<const T> b) {
    std::size_t n = a.size() < b.size() ? a.size() : b.size();
    std::size_t p = 0;
    while (p < n && a[p] == b[p]) ++p;
    return p;
}

template <class T>
std::size_t prefix_tree_distance(std::span<const T> a, std::span<const T> b) {
    std::size_t p = common_prefix_length(a, b);
    return (a.size() - p) + (b.size() - p);
}

/// Graph distance in the word-tree T_A.
std::size_t word_tree_distance(const Word& w, const Word& w2);
/// Same, after checking both words belong to `alphabet`.
std::size_t word_tree_distance(const Alphabet& alphabet, const Word& w, const Word& w2);

/// Graph distance in the sentence-tree T_W.
std::size_t sentence_tree_distance(const Sentence& a, const Sentence& b);

struct DivergenceDecomposition {
    std::size_t p = 0;  // length of the shared prefix
    std::size_t m = 0;  // words of `a` after the shared prefix
    std::size_t n = 0;  // words of `b` after the shared prefix
    Sentence shared;
    Sentence tail_a;
    Sentence tail_b;
};

DivergenceDecomposition split_at_divergence(const Sentence& a, const Sentence& b);

/// Average word length. Throws on the empty sentence.
Rational awl(const Sentence& s);
/// Average word length with the empty sentence mapped to 0.
Rational awl_or_zero(const Sentence& s);

/// <a w | u_{i+1} | ... | u_m> for the letter a at `at`.
Sentence tail_sentence(const Sentence& s, EventCoord at);
/// <u_1 | ... | u_{i-1} | v a> for the letter a at `at`.
Sentence head_sentence(const Sentence& s, EventCoord at);

Word reversed(const Word& w);
/// Final min(k, |w|) letters of w in original order.
Word last_letters(const Word& w, std::size_t k);

/// Truncate to r letters, or pad with STAR up to r letters.
Word norm(const Word& u, std::size_t r);

enum class CloseWordWitness { LastLetters, LengthDigits };

/// For distinct w, w2 with word-tree distance at most k, report which of the
/// two separating facts holds: the final k letters differ, or the final k
/// decimal digits of the lengths differ. LastLetters is tested first.
CloseWordWitness discriminate_close_words(const Word& w, const Word& w2, std::size_t k);

/// Final min(k, digits) characters of the decimal expansion of n.
std::string last_decimal_digits(std::size_t n, std::size_t k);

const char* to_string(CloseWordWitness w);

// {"alphabet": [...], "sentence": ["...", ...]}
nlohmann::json sentence_to_json(const Alphabet& alphabet, const Sentence& s);
Sentence sentence_from_json(const Alphabet& alphabet, const nlohmann::json& j);
Alphabet alphabet_from_json(const nlohmann::json& j);

}  // namespace treembed

#endif  // TREEMBED_WORDS_HPP
