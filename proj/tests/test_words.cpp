#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "treembed/words.hpp"

using namespace treembed;
using treembed::test::S;
using treembed::test::W;

TEST_CASE("word tree distance") {
    CHECK(word_tree_distance(W("ab"), W("ab")) == 0);
    CHECK(word_tree_distance(W("abc"), W("ab")) == 1);
    CHECK(word_tree_distance(W("abab"), W("aaa")) == 5);
    CHECK(word_tree_distance(W(""), W("abc")) == 3);
}

TEST_CASE("word tree distance rejects letters outside the alphabet") {
    Alphabet ab = Alphabet::from_chars("ab");
    CHECK_THROWS_AS(word_tree_distance(ab, W("ab"), W("ac")), std::invalid_argument);
    CHECK(word_tree_distance(ab, W("ab"), W("ba")) == 4);
}

TEST_CASE("sentence tree distance") {
    CHECK(sentence_tree_distance(S("abab|aaa|ba"), S("abab|aaa")) == 1);
    CHECK(sentence_tree_distance(S("ab|a"), S("ab|b")) == 2);
    CHECK(sentence_tree_distance(S("a"), S("a")) == 0);
}

TEST_CASE("split at divergence") {
    auto d = split_at_divergence(S("a|b|c"), S("a|b"));
    CHECK(d.p == 2);
    CHECK(d.m == 1);
    CHECK(d.n == 0);
    CHECK(d.tail_a == S("c"));
    CHECK(d.tail_b.empty());

    d = split_at_divergence(S("a"), S("b"));
    CHECK(d.p == 0);
    CHECK(d.m == 1);
    CHECK(d.n == 1);

    Sentence a = S("ab|c|dd");
    d = split_at_divergence(a, a);
    CHECK(d.p == 3);
    CHECK(d.m + d.n == 0);
}

TEST_CASE("average word length") {
    CHECK(awl(S("abab|aaa|ba")) == Rational(3));
    CHECK(awl(S("ab")) == Rational(2));
    CHECK(awl(S("a|a|a|a")) == Rational(1));
    CHECK(awl(S("ab|a")) == Rational(3, 2));
    CHECK_THROWS_AS(awl(Sentence{}), std::invalid_argument);
    CHECK(awl_or_zero(Sentence{}) == Rational(0));
}

TEST_CASE("sentences reject empty words") {
    CHECK_THROWS_AS(Sentence(std::vector<Word>{W("a"), W("")}), std::invalid_argument);
}

TEST_CASE("tail and head sentences") {
    Sentence a = S("abc|de");
    CHECK(tail_sentence(a, {1, 2}) == S("bc|de"));
    CHECK(tail_sentence(a, {2, 2}) == S("e"));
    CHECK(head_sentence(a, {1, 1}) == S("a"));
    CHECK(head_sentence(a, {2, 1}) == S("abc|d"));
    CHECK_THROWS_AS(tail_sentence(a, {3, 1}), std::out_of_range);
    CHECK_THROWS_AS(tail_sentence(a, {2, 3}), std::out_of_range);
    CHECK_THROWS_AS(head_sentence(a, {0, 1}), std::out_of_range);
}

TEST_CASE("norm") {
    CHECK(norm(W("abc"), 2) == W("ab"));
    CHECK(norm(W("ab"), 4) == Word{0, 1, kStar, kStar});
    CHECK(norm(W("abc"), 3) == W("abc"));
    CHECK(norm(W("abc"), 0).empty());
}

TEST_CASE("discriminate close words") {
    CHECK(discriminate_close_words(W("aa"), W("ab"), 2) == CloseWordWitness::LastLetters);
    CHECK(discriminate_close_words(Word(10, 0), Word(12, 0), 4) == CloseWordWitness::LengthDigits);
    Alphabet ab = Alphabet::from_chars("abcdeX");
    // The pair sits at tree distance 6, so k must be at least 6.
    CHECK(discriminate_close_words(ab.parse("abcde"), ab.parse("abXde"), 6) == CloseWordWitness::LastLetters);
    CHECK_THROWS_AS(discriminate_close_words(ab.parse("abcde"), ab.parse("abXde"), 4), std::invalid_argument);
    CHECK_THROWS_AS(discriminate_close_words(W("ab"), W("ab"), 3), std::invalid_argument);
    CHECK_THROWS_AS(discriminate_close_words(W("aaaa"), W("bbbb"), 3), std::invalid_argument);
    CHECK(last_decimal_digits(123, 2) == "23");
    CHECK(last_decimal_digits(7, 5) == "7");
}

namespace {

// Enumerate all words of length <= max_len over {0, 1}.
std::vector<Word> all_binary_words(std::size_t max_len) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < max_len)
            for (Letter l : {0u, 1u}) {
                Word w = out[i];
                w.push_back(l);
                out.push_back(w);
            }
    return out;
}

}  // namespace

TEST_CASE("close words always carry one of the two separating facts") {
    auto words = all_binary_words(6);
    std::size_t checked = 0;
    for (const auto& w : words) {
        if (w.empty()) continue;
        for (const auto& w2 : words) {
            if (w2.empty() || w == w2) continue;
            for (std::size_t k = 1; k <= 6; ++k) {
                // Oracle: distance via explicit LCA walk.
                std::size_t p = 0;
                while (p < w.size() && p < w2.size() && w[p] == w2[p]) ++p;
                std::size_t dist = w.size() + w2.size() - 2 * p;
                if (dist > k) continue;
                CloseWordWitness c = discriminate_close_words(w, w2, k);
                bool letters_differ = Word(w.end() - std::min(k, w.size()), w.end()) !=
                                      Word(w2.end() - std::min(k, w2.size()), w2.end());
                if (c == CloseWordWitness::LastLetters) {
                    CHECK(letters_differ);
                } else {
                    CHECK_FALSE(letters_differ);
                    std::string d1 = std::to_string(w.size()), d2 = std::to_string(w2.size());
                    if (d1.size() > k) d1 = d1.substr(d1.size() - k);
                    if (d2.size() > k) d2 = d2.substr(d2.size() - k);
                    CHECK(d1 != d2);
                }
                ++checked;
            }
        }
    }
    CHECK(checked > 10000);
}

TEST_CASE("tree metrics satisfy the metric axioms on random triples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        Sentence a = test::random_sentence(rng, 3, 5, 3);
        Sentence b = test::random_sentence(rng, 3, 5, 3);
        Sentence c = test::random_sentence(rng, 3, 5, 3);
        auto dab = sentence_tree_distance(a, b);
        CHECK(dab == sentence_tree_distance(b, a));
        CHECK((dab == 0) == (a == b));
        CHECK(dab <= sentence_tree_distance(a, c) + sentence_tree_distance(c, b));
        auto d = split_at_divergence(a, b);
        CHECK(dab == d.m + d.n);
        std::vector<Word> ra = d.shared.words(), rb = d.shared.words();
        ra.insert(ra.end(), d.tail_a.begin(), d.tail_a.end());
        rb.insert(rb.end(), d.tail_b.begin(), d.tail_b.end());
        CHECK(Sentence(ra) == a);
        CHECK(Sentence(rb) == b);
        if (d.m > 0 && d.n > 0) CHECK(d.tail_a[0] != d.tail_b[0]);

        Word u = a[0], v = b[0], x = c[0];
        CHECK(word_tree_distance(u, v) == word_tree_distance(v, u));
        CHECK(word_tree_distance(u, v) <= word_tree_distance(u, x) + word_tree_distance(x, v));
        std::size_t r = rng() % 8;
        CHECK(norm(u, r).size() == r);
        CHECK(norm(u, u.size()) == u);
    }
}

TEST_CASE("alphabet codec") {
    Alphabet hex({"a1", "a2", "b1"});
    CHECK(hex.parse("a1b1a2") == Word{0, 2, 1});
    CHECK(hex.render(Word{2, 0}) == "b1a1");
    Alphabet dotted({"x", "yy"}, ".");
    CHECK(dotted.parse("yy.x") == Word{1, 0});
    CHECK(dotted.render(Word{1, 0}) == "yy.x");
    CHECK(hex.parse("*a1") == Word{kStar, 0});
    CHECK_THROWS_AS(hex.parse("c"), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"*"}), std::invalid_argument);
}

TEST_CASE("sentence json round trip") {
    Alphabet abc = Alphabet::from_chars("abc");
    Sentence s = S("abab|c|ba");
    auto j = sentence_to_json(abc, s);
    CHECK(j["sentence"][1] == "c");
    CHECK(sentence_from_json(alphabet_from_json(j), j) == s);
}

TEST_CASE("starred sentences") {
    CHECK(is_starred(Sentence({Word{kStar, 0}, Word{kStar, 1, 1}})));
    CHECK_FALSE(is_starred(Sentence({Word{kStar}})));
    CHECK_FALSE(is_starred(Sentence({Word{0, kStar}})));
    CHECK_FALSE(is_starred(Sentence({Word{kStar, 0, kStar}})));
}
