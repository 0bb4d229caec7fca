#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "treembed/statistics.hpp"

using namespace treembed;
using treembed::test::S;
using treembed::test::W;

TEST_CASE("last letter") {
    auto st = last_letter();
    CHECK(st(S("abc|bc|aa")) == W("a"));
    CHECK(st(S("b")) == W("b"));
    CHECK(st(S("ab|cd")) == W("d"));
    // Per-prefix values spell the diary of the worked example.
    CHECK(st(S("abc")) == W("c"));
    CHECK(st(S("abc|bc")) == W("c"));
    CHECK_THROWS_AS(st(Sentence{}), std::invalid_argument);
    CHECK(st.codomain().contains(W("a")));
    CHECK_FALSE(st.codomain().contains(W("ab")));
}

TEST_CASE("trunc finite") {
    CHECK(trunc_finite(2)(S("abc|bcaa")) == W("aa"));
    CHECK(trunc_finite(5)(S("ab")) == W("ab"));
    CHECK(trunc_finite(3)(S("a|bcde")) == W("cde"));
    CHECK_THROWS_AS(trunc_finite(0), std::invalid_argument);
}

TEST_CASE("length mod") {
    CHECK(length_mod(3)(S("abcd")) == Word{1});
    CHECK(length_mod(5)(S("abcde")) == Word{0});
    CHECK(length_mod(2)(S("a|bb")) == Word{0});
    CHECK(length_mod(3).codomain().contains(Word{2}));
    CHECK_FALSE(length_mod(3).codomain().contains(Word{3}));
}

TEST_CASE("predicate statistic") {
    auto short_final = predicate_stat("short", [](const Sentence& s) { return s.back().size() <= 2; });
    CHECK(short_final(S("abc")) == Word{kNo});
    CHECK(short_final(S("ab")) == Word{kYes});
    auto always = predicate_stat("true", [](const Sentence&) { return true; });
    CHECK(always(S("abc|d")) == Word{kYes});
}

TEST_CASE("product statistic") {
    auto p = product_stat({last_letter(), length_mod(2)});
    StatValue v = p(S("ab"));
    auto parts = unpack_product(v);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == W("b"));
    CHECK(parts[1] == Word{0});
    CHECK(p.codomain().contains(v));

    auto unit = product_stat({});
    CHECK(unit(S("abc")).empty());
    CHECK(unit(S("abc")) == unit(S("b|a")));

    auto single = product_stat({last_letter()});
    CHECK(unpack_product(single(S("a"))) == std::vector<StatValue>{W("a")});
}

TEST_CASE("product values project onto each member") {
    std::vector<FiniteStatistic> members{last_letter(), trunc_finite(3), length_mod(4)};
    auto p = product_stat(members);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Sentence s = test::random_sentence(rng, 4, 6, 3);
        auto parts = unpack_product(p(s));
        REQUIRE(parts.size() == members.size());
        for (std::size_t k = 0; k < members.size(); ++k) CHECK(parts[k] == members[k](s));
    }
}

TEST_CASE("trunc linear") {
    auto st = trunc_linear(1);
    CHECK(st(2, S("abcde")) == W("ed"));
    CHECK(st(10, S("ab")) == W("ba"));
    CHECK(trunc_linear(2)(1, S("abcde")) == W("ed"));
    CHECK(st.infinite(S("x|abc")) == W("cba"));
}

TEST_CASE("howmany") {
    auto st = howmany();
    CHECK(st(3, S("abcd")).empty());
    CHECK(st(3, S("ab")) == Word{0});
    CHECK(st(2, S("ab")) == Word{0});
    CHECK(st.infinite(S("abcd")) == Word{0});
}

TEST_CASE("base10 length") {
    Sentence len123(std::vector<Word>{Word(123, 0)});
    Sentence len7(std::vector<Word>{Word(7, 0)});
    Sentence len10(std::vector<Word>{Word(10, 0)});
    auto st = base10_length_linear(1);
    CHECK(st(2, len123) == Word{3, 2});
    CHECK(st(5, len7) == Word{7});
    CHECK(st(1, len10) == Word{0});
    CHECK(st.infinite(len123) == Word{3, 2, 1});
}

TEST_CASE("order of priority") {
    auto id = oop(identity_priority);
    CHECK(id(2, S("abcd")) == W("ab"));
    CHECK(oop(reversal_priority)(2, S("abcd")) == W("dc"));
    CHECK(id(10, S("ab")) == W("ab"));
    CHECK(id(3, S("ab|cd")) == W("abc"));
    auto broken = oop([](std::size_t l) { return std::vector<std::size_t>(l, 0); });
    CHECK_THROWS_AS(broken(1, S("ab")), std::invalid_argument);
    auto short_perm = oop([](std::size_t) { return std::vector<std::size_t>{0}; });
    CHECK_THROWS_AS(short_perm(1, S("ab")), std::invalid_argument);
}

namespace {

bool is_prefix(const Word& p, const Word& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

}  // namespace

TEST_CASE("linear statistics descend as c grows") {
    std::vector<LinearStatistic> stats{trunc_linear(1), trunc_linear(3), howmany(), base10_length_linear(1),
                                       base10_length_linear(2), oop(identity_priority), oop(reversal_priority, 2)};
    // Every single-word sentence over {a, b} of length <= 8, then random multi-word ones.
    std::vector<Sentence> inputs;
    for (std::size_t len = 1; len <= 8; ++len)
        for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
            Word w(len);
            for (std::size_t i = 0; i < len; ++i) w[i] = static_cast<Letter>((bits >> i) & 1);
            inputs.emplace_back(std::vector<Word>{w});
        }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) inputs.push_back(test::random_sentence(rng, 4, 14, 3));

    for (const auto& st : stats) {
        for (const auto& s : inputs) {
            Word inf = st.infinite(s);
            for (std::size_t c = 0; c <= 8; ++c) {
                Word v = st(c, s);
                CHECK(Rational(static_cast<std::int64_t>(v.size())) <= st.tau() * static_cast<std::int64_t>(c));
                CHECK(is_prefix(v, inf));
                for (std::size_t c2 = c; c2 <= 8; ++c2) CHECK(is_prefix(v, st(c2, s)));
            }
        }
    }
}

TEST_CASE("linear budget") {
    CHECK(linear_budget(Rational(3, 2), 3) == 4);
    CHECK(linear_budget(Rational(12), 5) == 60);
    CHECK_THROWS_AS(LinearStatistic("bad", Rational(1, 2), "", nullptr, nullptr), std::invalid_argument);
}
