#include "treembed/criteria.hpp"

#include <algorithm>
#include <stdexcept>

namespace treembed {

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::Upsilon: return "upsilon";
        case Criterion::Leo: return "leo";
        case Criterion::Virgo: return "virgo";
        case Criterion::Taurus: return "taurus";
    }
    return "?";
}

std::size_t admissible_j_bound(Rational delta, std::size_t J, std::size_t m, std::size_t n) {
    if (delta < 0 || delta >= 1) throw std::invalid_argument("delta must lie in [0, 1)");
    std::size_t lo = std::min(m, n);
    Rational bound = delta * static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(J);
    auto fl = static_cast<std::size_t>(bound.numerator() / bound.denominator());
    return std::min(fl, lo);
}

namespace {

struct Setup {
    DivergenceDecomposition d;
    Sentence a;
    Sentence b;

    Sentence trunc_a(std::size_t j) const { return a.prefix(d.p + j); }
    Sentence trunc_b(std::size_t j) const { return b.prefix(d.p + j); }
    const Word& word_a(std::size_t j) const { return a[d.p + j - 1]; }
    const Word& word_b(std::size_t j) const { return b[d.p + j - 1]; }
    std::size_t dist() const { return d.m + d.n; }
};

Setup make_setup(const Sentence& a, const Sentence& b) {
    if (a == b) throw std::invalid_argument("criteria are defined for distinct sentences");
    return Setup{split_at_divergence(a, b), a, b};
}

bool long_word(std::size_t len, Rational epsilon, std::size_t dist) {
    return Rational(static_cast<std::int64_t>(len)) >= epsilon * static_cast<std::int64_t>(dist);
}

bool short_word(std::size_t len, Rational epsilon, std::size_t dist) {
    return Rational(static_cast<std::int64_t>(len)) <= epsilon * static_cast<std::int64_t>(dist);
}

// Both tails after position p + j have AWL at most N (empty tails count as 0).
bool tails_bounded(const Setup& s, std::size_t j, Rational N) {
    return awl_or_zero(s.a.suffix_from(s.d.p + j)) <= N && awl_or_zero(s.b.suffix_from(s.d.p + j)) <= N;
}

struct LinearHit {
    std::size_t index;
    Word va;
    Word vb;
};

std::optional<LinearHit> separating_linear(const Setup& s, std::size_t j, const std::vector<LinearStatistic>& stats) {
    Sentence ta = s.trunc_a(j);
    Sentence tb = s.trunc_b(j);
    for (std::size_t k = 0; k < stats.size(); ++k) {
        Word va = stats[k](s.dist(), ta);
        Word vb = stats[k](s.dist(), tb);
        if (va != vb) return LinearHit{k, std::move(va), std::move(vb)};
    }
    return std::nullopt;
}

void fill_linear(CriterionWitness& w, const Setup& s, const std::vector<LinearStatistic>& stats, LinearHit hit) {
    w.stat_index = hit.index;
    w.stat_id = stats[hit.index].name();
    w.level = s.dist();
    w.value_a = std::move(hit.va);
    w.value_b = std::move(hit.vb);
}

std::optional<CriterionWitness> taurus_impl(const Sentence& a, const Sentence& b,
                                            const std::vector<LinearStatistic>& stats, std::size_t J, Rational N,
                                            Rational epsilon, bool strict) {
    Setup s = make_setup(a, b);
    std::size_t top = admissible_j_bound(Rational(0), J, s.d.m, s.d.n);
    for (std::size_t j = 1; j <= top; ++j) {
        if (!tails_bounded(s, j, N)) continue;
        std::vector<TaurusStep> steps;
        std::optional<LinearHit> last_hit;
        bool ok = true;
        // Walk j' downward so the "all later words short" condition accumulates.
        bool later_all_short = true;
        for (std::size_t jp = j; jp >= 1; --jp) {
            TaurusStep step{jp, false, 0};
            if (!strict && !later_all_short) {
                step.exempt = true;
            } else {
                auto hit = separating_linear(s, jp, stats);
                if (!hit) {
                    ok = false;
                    break;
                }
                step.stat_index = hit->index;
                if (jp == j) last_hit = std::move(hit);
            }
            steps.push_back(step);
            later_all_short = later_all_short && short_word(s.word_a(jp).size(), epsilon, s.dist()) &&
                              short_word(s.word_b(jp).size(), epsilon, s.dist());
        }
        if (!ok) continue;
        std::reverse(steps.begin(), steps.end());
        CriterionWitness w;
        w.criterion = Criterion::Taurus;
        w.j = j;
        w.m1 = true;
        fill_linear(w, s, stats, std::move(*last_hit));
        w.steps = std::move(steps);
        return w;
    }
    return std::nullopt;
}

}  // namespace

std::optional<CriterionWitness> check_upsilon(const Sentence& a, const Sentence& b,
                                              const std::vector<FiniteStatistic>& stats, Rational delta,
                                              std::size_t J) {
    Setup s = make_setup(a, b);
    std::size_t top = admissible_j_bound(delta, J, s.d.m, s.d.n);
    for (std::size_t j = 1; j <= top; ++j) {
        Sentence ta = s.trunc_a(j);
        Sentence tb = s.trunc_b(j);
        for (std::size_t k = 0; k < stats.size(); ++k) {
            StatValue va = stats[k](ta);
            StatValue vb = stats[k](tb);
            if (va == vb) continue;
            CriterionWitness w;
            w.criterion = Criterion::Upsilon;
            w.j = j;
            w.stat_index = k;
            w.stat_id = stats[k].name();
            w.value_a = std::move(va);
            w.value_b = std::move(vb);
            return w;
        }
    }
    return std::nullopt;
}

std::optional<CriterionWitness> check_leo(const Sentence& a, const Sentence& b,
                                          const std::vector<FiniteStatistic>& stats, std::size_t J) {
    auto w = check_upsilon(a, b, stats, Rational(0), J);
    if (w) w->criterion = Criterion::Leo;
    return w;
}

std::optional<CriterionWitness> check_virgo(const Sentence& a, const Sentence& b,
                                            const std::vector<LinearStatistic>& stats, Rational delta,
                                            std::size_t J, Rational N, Rational epsilon) {
    Setup s = make_setup(a, b);
    std::size_t top = admissible_j_bound(delta, J, s.d.m, s.d.n);
    for (std::size_t j = 1; j <= top; ++j) {
        if (!tails_bounded(s, j, N)) continue;
        const Word& ua = s.word_a(j);
        const Word& ub = s.word_b(j);
        VirgoLengthReason reason;
        if (long_word(ua.size(), epsilon, s.dist()))
            reason = VirgoLengthReason::LongLeft;
        else if (long_word(ub.size(), epsilon, s.dist()))
            reason = VirgoLengthReason::LongRight;
        else if (ua != ub)
            reason = VirgoLengthReason::WordsDiffer;
        else
            continue;
        auto hit = separating_linear(s, j, stats);
        if (!hit) continue;
        CriterionWitness w;
        w.criterion = Criterion::Virgo;
        w.j = j;
        w.m1 = w.m2 = w.m3 = true;
        w.m2_reason = reason;
        fill_linear(w, s, stats, std::move(*hit));
        return w;
    }
    return std::nullopt;
}

std::optional<CriterionWitness> check_taurus(const Sentence& a, const Sentence& b,
                                             const std::vector<LinearStatistic>& stats, std::size_t J,
                                             Rational N, Rational epsilon) {
    return taurus_impl(a, b, stats, J, N, epsilon, false);
}

std::optional<CriterionWitness> check_taurus_strict(const Sentence& a, const Sentence& b,
                                                    const std::vector<LinearStatistic>& stats, std::size_t J,
                                                    Rational N, Rational epsilon) {
    return taurus_impl(a, b, stats, J, N, epsilon, true);
}

bool reverify_witness(const Sentence& a, const Sentence& b, const CriterionWitness& w,
                      const std::vector<FiniteStatistic>& fin, const std::vector<LinearStatistic>& lin) {
    if (a == b) return false;
    DivergenceDecomposition d = split_at_divergence(a, b);
    if (w.j < 1 || w.j > std::min(d.m, d.n)) return false;
    Sentence ta = a.prefix(d.p + w.j);
    Sentence tb = b.prefix(d.p + w.j);
    if (w.criterion == Criterion::Upsilon || w.criterion == Criterion::Leo) {
        if (w.stat_index >= fin.size()) return false;
        const auto& st = fin[w.stat_index];
        return st(ta) == w.value_a && st(tb) == w.value_b && w.value_a != w.value_b;
    }
    if (w.stat_index >= lin.size() || w.level != d.m + d.n) return false;
    const auto& st = lin[w.stat_index];
    return st(w.level, ta) == w.value_a && st(w.level, tb) == w.value_b && w.value_a != w.value_b;
}

}  // namespace treembed
