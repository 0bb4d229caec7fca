#include "treembed/coxeter.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace treembed::coxeter {

namespace {

constexpr std::string_view kNames[kGenerators] = {"a1", "a2", "a3", "b1", "b2", "b3"};

void check_letters(const Word& w) {
    for (Letter x : w)
        if (x >= kGenerators) throw std::invalid_argument("letter outside the hexagonal generating set");
}

// Bubble adjacent pairs (x, y) -> (y, x) while `want_swap(x, y)` holds.
Word bubble(Word w, bool (*want_swap)(Letter, Letter)) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (want_swap(w[i], w[i + 1])) {
                std::swap(w[i], w[i + 1]);
                changed = true;
            }
        }
    }
    return w;
}

bool b_before_a(Letter x, Letter y) { return is_b(x) && is_a(y) && commutes(x, y); }
bool a_before_b(Letter x, Letter y) { return is_a(x) && is_b(y) && commutes(x, y); }

Sentence parse_blocks(const Word& w, bool (*is_head)(Letter)) {
    std::vector<Word> words;
    Word cur;
    for (Letter x : w) {
        cur.push_back(x);
        if (is_head(x)) {
            words.push_back(std::move(cur));
            cur.clear();
        }
    }
    return Sentence(std::move(words));
}

bool head_a(Letter x) { return is_a(x); }
bool head_b(Letter x) { return is_b(x); }

}  // namespace

const Alphabet& hex_alphabet() {
    static const Alphabet alphabet({"a1", "a2", "a3", "b1", "b2", "b3"});
    return alphabet;
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
    std::size_t h = g.length();
    for (Letter x : g.word()) h = h * 7 + x + 1;
    return h;
}

Word free_reduce(const Word& w) {
    check_letters(w);
    Word out;
    out.reserve(w.size());
    for (Letter s : w) {
        // s cancels against the last earlier copy of s that every later letter commutes past.
        std::size_t i = out.size();
        bool cancelled = false;
        while (i > 0) {
            Letter x = out[i - 1];
            if (x == s) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i - 1));
                cancelled = true;
                break;
            }
            if (!commutes(x, s)) break;
            --i;
        }
        if (!cancelled) out.push_back(s);
    }
    return out;
}

Word lex_normal_form(const Word& geodesic) {
    const std::size_t n = geodesic.size();
    std::vector<bool> used(n, false);
    Word out;
    out.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            if (best != n && geodesic[i] >= geodesic[best]) continue;
            bool available = true;
            for (std::size_t j = 0; j < i && available; ++j)
                if (!used[j] && !commutes(geodesic[j], geodesic[i])) available = false;
            if (available) best = i;
        }
        used[best] = true;
        out.push_back(geodesic[best]);
    }
    return out;
}

GroupElement reduce(const Word& w) { return GroupElement(lex_normal_form(free_reduce(w))); }

GroupElement identity() { return GroupElement(); }

GroupElement generator(Letter x) { return reduce(Word{x}); }

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
    Word w = g.word();
    w.insert(w.end(), h.word().begin(), h.word().end());
    return reduce(w);
}

GroupElement inverse(const GroupElement& g) { return reduce(reversed(g.word())); }

Word a_left_rep(const GroupElement& g) { return bubble(g.word(), b_before_a); }

Word b_left_rep(const GroupElement& g) { return bubble(g.word(), a_before_b); }

Sentence F_A(const GroupElement& g) { return parse_blocks(a_left_rep(g), head_a); }

Sentence F_B(const GroupElement& g) { return parse_blocks(b_left_rep(g), head_b); }

std::size_t word_metric(const GroupElement& g, const GroupElement& h) {
    Word w = reversed(g.word());
    w.insert(w.end(), h.word().begin(), h.word().end());
    return free_reduce(w).size();
}

std::vector<GroupElement> ball(std::size_t R, std::size_t cap) {
    if (R > cap) throw std::invalid_argument("ball radius " + std::to_string(R) + " exceeds cap " + std::to_string(cap));
    std::vector<GroupElement> all{identity()};
    std::unordered_set<GroupElement, GroupElementHash> seen{identity()};
    std::vector<GroupElement> frontier{identity()};
    for (std::size_t r = 1; r <= R; ++r) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (Letter x = 0; x < kGenerators; ++x) {
                GroupElement h = multiply(g, generator(x));
                if (h.length() != r) continue;
                if (seen.insert(h).second) next.push_back(h);
            }
        }
        std::sort(next.begin(), next.end(), [](const GroupElement& x, const GroupElement& y) {
            return x.word() < y.word();
        });
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= kGenerators) throw std::invalid_argument("letter outside the hexagonal generating set");
        if (i) out += '.';
        out += kNames[w[i]];
    }
    return out;
}

std::string to_string(const GroupElement& g) { return word_to_string(g.word()); }

Word parse_word(std::string_view text) {
    Word w;
    if (text.empty() || text == "e") return w;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = text.find('.', start);
        std::string_view tok = text.substr(start, dot == std::string_view::npos ? dot : dot - start);
        auto it = std::find(std::begin(kNames), std::end(kNames), tok);
        if (it == std::end(kNames)) throw std::invalid_argument("unknown generator '" + std::string(tok) + "'");
        w.push_back(static_cast<Letter>(it - std::begin(kNames)));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return w;
}

GroupElement parse_element(std::string_view text) { return reduce(parse_word(text)); }

}  // namespace treembed::coxeter
