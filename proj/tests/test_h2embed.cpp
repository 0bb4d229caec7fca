#include <random>
#include <set>

#include "doctest.h"
#include "treembed/h2embed.hpp"

using namespace treembed;
using namespace treembed::coxeter;
using namespace treembed::h2;

TEST_CASE("default parameters") {
    EmbedParams p = default_params();
    CHECK(p.fin.size() == 1);
    CHECK(p.J_fin == 2);
    CHECK(p.lin.size() == 2);
    CHECK(p.delta == Rational(0));
    CHECK(p.N == Rational(18));
    CHECK(p.epsilon == Rational(1));

    VirgoDiaryParams v = linear_component_params(p);
    CHECK(v.tau == Rational(12));
    CHECK(v.omega == 12);
    CHECK(v.U == Rational(505));
    CHECK(v.V == Rational(529));
    CHECK(v.kappa == 8465);
    CHECK(product_diary(p).guarantee() == Rational(64));
}

TEST_CASE("embedding shape") {
    Diary d = product_diary();
    Embedding e = embed(d, identity());
    CHECK(e.a.empty());
    CHECK(e.b.empty());

    GroupElement g = reduce({b1, a2, a3, b2, a1, b1});
    e = embed(d, g);
    CHECK(e.a.size() == 3);
    CHECK(e.b.size() == 3);

    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        Word w(rng() % 10);
        for (auto& x : w) x = static_cast<Letter>(rng() % 6);
        GroupElement h = reduce(w);
        Embedding eh = embed(d, h);
        CHECK(eh.a.size() == F_A(h).size());
        CHECK(eh.b.size() == F_B(h).size());
    }
}

TEST_CASE("pair sampling") {
    auto all = sample_pairs(7, 5, 1, false);
    CHECK(all.size() == 21);
    bool enumerated = false;
    auto some = sample_pairs(5000, 300, 9, false, &enumerated);
    CHECK_FALSE(enumerated);
    CHECK(some.size() == 300);
    CHECK(some == sample_pairs(5000, 300, 9, false));
    CHECK(some != sample_pairs(5000, 300, 10, false));
    std::set<std::pair<std::size_t, std::size_t>> distinct(some.begin(), some.end());
    CHECK(distinct.size() == some.size());
    for (auto [i, j] : some) CHECK(i < j);
    CHECK(sample_pairs(5000, 3, 1, true).size() == 5000 * 4999 / 2);
    CHECK(sample_pairs(1, 10, 1, false).empty());
}

TEST_CASE("distortion report on the unit ball") {
    Diary d = product_diary();
    auto r = distortion_report(d, SampleSpec{1, 100, 1, false}, default_params(), 8465);
    CHECK(r.full_enumeration);
    CHECK(r.rows.size() == 21);
    CHECK(r.passed());
    CHECK(r.long_pairs == 0);
    CHECK_FALSE(r.max_distortion);
    for (const auto& row : r.rows)
        if (row.g.is_identity()) {
            CHECK(row.d_G == 1);
            CHECK(row.d_F == 1);
        }
    CHECK_THROWS_AS(distortion_report(d, SampleSpec{0, 10, 1, false}), std::invalid_argument);
}

TEST_CASE("distortion report on a radius-7 sample") {
    Diary d = product_diary();
    SampleSpec spec{7, 400, 17, false};
    auto r = distortion_report(d, spec, default_params(), 8465);
    CHECK_FALSE(r.full_enumeration);
    CHECK(r.rows.size() == 400);
    CHECK(r.isometry_holds);
    CHECK(r.upper_bound_holds);
    CHECK(r.lower_bound_holds);
    CHECK(r.dispatch_covers);
    CHECK(r.long_pairs > 0);
    REQUIRE(r.max_distortion);
    CHECK(*r.max_distortion <= 2 * r.M);
    CHECK(report_csv(r) == report_csv(distortion_report(d, spec, default_params(), 8465)));
    auto j = report_summary(r);
    CHECK(j["M"] == 64);
    CHECK(j["pairs"] == 400);
}

TEST_CASE("regression: worst distortion on 10^4 pairs from the radius-8 ball") {
    // With kappa = 8465 every chapter holds its whole day at this radius, so
    // the embedding is distance-preserving on the sample.
    auto r = distortion_report(product_diary(), SampleSpec{8, 10000, 1, false}, default_params(), 8465);
    CHECK(r.passed());
    CHECK(r.long_pairs == 9426);
    REQUIRE(r.max_distortion);
    CHECK(*r.max_distortion == Rational(1));
}
