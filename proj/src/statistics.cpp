#include "treembed/statistics.hpp"

#include <algorithm>
#include <stdexcept>

namespace treembed {

FiniteStatistic::FiniteStatistic(std::string name, FiniteCodomain codomain, Eval eval)
    : name_(std::move(name)), codomain_(std::move(codomain)), eval_(std::move(eval)) {}

StatValue FiniteStatistic::operator()(const Sentence& s) const {
    if (s.empty()) throw std::invalid_argument("statistics are evaluated on nonempty sentences");
    return eval_(s);
}

LinearStatistic::LinearStatistic(std::string name, Rational tau, std::string codomain, Eval eval,
                                 EvalInfinite infinite)
    : name_(std::move(name)),
      tau_(tau),
      codomain_(std::move(codomain)),
      eval_(std::move(eval)),
      infinite_(std::move(infinite)) {
    if (tau_ < 1) throw std::invalid_argument("linear statistic needs tau >= 1");
}

Word LinearStatistic::operator()(std::size_t c, const Sentence& s) const {
    if (s.empty()) throw std::invalid_argument("statistics are evaluated on nonempty sentences");
    return eval_(c, s);
}

Word LinearStatistic::infinite(const Sentence& s) const {
    if (s.empty()) throw std::invalid_argument("statistics are evaluated on nonempty sentences");
    return infinite_(s);
}

std::size_t linear_budget(Rational tau, std::size_t c) {
    Rational b = tau * static_cast<std::int64_t>(c);
    return static_cast<std::size_t>(b.numerator() / b.denominator());
}

FiniteStatistic last_letter() {
    return FiniteStatistic("last_letter", {"A", [](const StatValue& v) { return v.size() == 1; }},
                           [](const Sentence& s) { return StatValue{s.back().back()}; });
}

FiniteStatistic trunc_finite(std::size_t kappa) {
    if (kappa == 0) throw std::invalid_argument("trunc_finite needs kappa >= 1");
    return FiniteStatistic(
        "trunc_finite(" + std::to_string(kappa) + ")",
        {"words of length 1.." + std::to_string(kappa),
         [kappa](const StatValue& v) { return !v.empty() && v.size() <= kappa; }},
        [kappa](const Sentence& s) { return last_letters(s.back(), kappa); });
}

FiniteStatistic length_mod(std::size_t modulus) {
    if (modulus == 0) throw std::invalid_argument("length_mod needs a positive modulus");
    return FiniteStatistic(
        "length_mod(" + std::to_string(modulus) + ")",
        {"Z/" + std::to_string(modulus),
         [modulus](const StatValue& v) { return v.size() == 1 && v[0] < modulus; }},
        [modulus](const Sentence& s) { return StatValue{static_cast<Letter>(s.back().size() % modulus)}; });
}

FiniteStatistic predicate_stat(std::string name, std::function<bool(const Sentence&)> q) {
    return FiniteStatistic(std::move(name),
                           {"{no, yes}", [](const StatValue& v) { return v.size() == 1 && v[0] <= kYes; }},
                           [q = std::move(q)](const Sentence& s) { return StatValue{q(s) ? kYes : kNo}; });
}

StatValue pack_product(const std::vector<StatValue>& parts) {
    StatValue out;
    for (const auto& p : parts) {
        out.push_back(static_cast<Letter>(p.size()));
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

std::vector<StatValue> unpack_product(const StatValue& v) {
    std::vector<StatValue> parts;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t len = v[i++];
        if (i + len > v.size()) throw std::invalid_argument("malformed product value");
        parts.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i),
                           v.begin() + static_cast<std::ptrdiff_t>(i + len));
        i += len;
    }
    return parts;
}

FiniteStatistic product_stat(std::vector<FiniteStatistic> stats) {
    std::string name = "product(";
    std::string desc;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (i) {
            name += ",";
            desc += " x ";
        }
        name += stats[i].name();
        desc += stats[i].codomain().description;
    }
    name += ")";
    if (stats.empty()) desc = "unit";
    auto shared = std::make_shared<const std::vector<FiniteStatistic>>(std::move(stats));
    FiniteCodomain codomain{desc, [shared](const StatValue& v) {
                                std::vector<StatValue> parts;
                                try {
                                    parts = unpack_product(v);
                                } catch (const std::invalid_argument&) {
                                    return false;
                                }
                                if (parts.size() != shared->size()) return false;
                                for (std::size_t i = 0; i < parts.size(); ++i)
                                    if (!(*shared)[i].codomain().contains(parts[i])) return false;
                                return true;
                            }};
    return FiniteStatistic(std::move(name), std::move(codomain), [shared](const Sentence& s) {
        std::vector<StatValue> parts;
        parts.reserve(shared->size());
        for (const auto& st : *shared) parts.push_back(st(s));
        return pack_product(parts);
    });
}

namespace {

Word take_prefix(const Word& w, std::size_t n) {
    return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size())));
}

Word decimal_letters_reversed(std::size_t n) {
    Word out;
    do {
        out.push_back(static_cast<Letter>(n % 10));
        n /= 10;
    } while (n > 0);
    return out;
}

// Linear statistic whose stat_c is the first floor(tau c) letters of stat_oo.
LinearStatistic prefix_family(std::string name, Rational tau, std::string codomain,
                              LinearStatistic::EvalInfinite infinite) {
    auto eval = [tau, infinite](std::size_t c, const Sentence& s) {
        return take_prefix(infinite(s), linear_budget(tau, c));
    };
    return LinearStatistic(std::move(name), tau, std::move(codomain), std::move(eval), std::move(infinite));
}

}  // namespace

LinearStatistic trunc_linear(std::size_t tau) {
    if (tau == 0) throw std::invalid_argument("trunc_linear needs tau >= 1");
    return prefix_family("trunc_linear(" + std::to_string(tau) + ")", Rational(static_cast<std::int64_t>(tau)),
                         "A", [](const Sentence& s) { return reversed(s.back()); });
}

LinearStatistic howmany() {
    auto eval = [](std::size_t c, const Sentence& s) { return s.back().size() > c ? Word{} : Word{0}; };
    auto infinite = [](const Sentence&) { return Word{0}; };
    return LinearStatistic("howmany", Rational(1), "{0}", eval, infinite);
}

LinearStatistic base10_length_linear(std::size_t tau) {
    if (tau == 0) throw std::invalid_argument("base10_length_linear needs tau >= 1");
    return prefix_family("base10_length(" + std::to_string(tau) + ")", Rational(static_cast<std::int64_t>(tau)),
                         "{0..9}", [](const Sentence& s) { return decimal_letters_reversed(s.back().size()); });
}

LinearStatistic oop(PriorityOrder order, std::size_t tau) {
    if (tau == 0) throw std::invalid_argument("oop needs tau >= 1");
    auto infinite = [order = std::move(order)](const Sentence& s) {
        Word stream;
        for (const auto& w : s) stream.insert(stream.end(), w.begin(), w.end());
        std::vector<std::size_t> sigma = order(stream.size());
        if (sigma.size() != stream.size()) throw std::invalid_argument("priority order has the wrong size");
        std::vector<bool> used(stream.size(), false);
        Word out;
        out.reserve(stream.size());
        for (std::size_t idx : sigma) {
            if (idx >= stream.size() || used[idx])
                throw std::invalid_argument("priority order is not a permutation");
            used[idx] = true;
            out.push_back(stream[idx]);
        }
        return out;
    };
    return prefix_family("oop(" + std::to_string(tau) + ")", Rational(static_cast<std::int64_t>(tau)), "A",
                         std::move(infinite));
}

std::vector<std::size_t> identity_priority(std::size_t l) {
    std::vector<std::size_t> v(l);
    for (std::size_t i = 0; i < l; ++i) v[i] = i;
    return v;
}

std::vector<std::size_t> reversal_priority(std::size_t l) {
    std::vector<std::size_t> v(l);
    for (std::size_t i = 0; i < l; ++i) v[i] = l - 1 - i;
    return v;
}

}  // namespace treembed
