#include "treembed/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace treembed {

namespace {

constexpr std::string_view kStarName = "*";
constexpr std::string_view kBlackStarName = "#";

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names, std::string separator)
    : names_(std::move(names)), separator_(std::move(separator)) {
    if (names_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("alphabet letters must have nonempty names");
        if (n == kStarName || n == kBlackStarName)
            throw std::invalid_argument("letter name '" + n + "' is reserved");
        if (!separator_.empty() && n.find(separator_) != std::string::npos)
            throw std::invalid_argument("letter name '" + n + "' contains the separator");
        if (!seen.insert(n).second) throw std::invalid_argument("duplicate letter '" + n + "'");
    }
}

Alphabet Alphabet::from_chars(std::string_view chars) {
    std::vector<std::string> names;
    for (char c : chars) names.emplace_back(1, c);
    return Alphabet(std::move(names));
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
    if (name == kStarName) return kStar;
    if (name == kBlackStarName) return kBlackStar;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Letter>(i);
    return std::nullopt;
}

std::string Alphabet::name(Letter l) const {
    if (l == kStar) return std::string(kStarName);
    if (l == kBlackStar) return std::string(kBlackStarName);
    if (l >= names_.size()) throw std::out_of_range("letter not in alphabet");
    return names_[l];
}

Word Alphabet::parse(std::string_view text) const {
    Word out;
    if (!separator_.empty()) {
        if (text.empty()) return out;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = text.find(separator_, start);
            auto token = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
            auto l = find(token);
            if (!l) throw std::invalid_argument("unknown letter '" + std::string(token) + "'");
            out.push_back(*l);
            if (pos == std::string_view::npos) break;
            start = pos + separator_.size();
        }
        return out;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t best_len = 0;
        Letter best = 0;
        auto consider = [&](std::string_view name, Letter l) {
            if (name.size() > best_len && text.substr(i, name.size()) == name) {
                best_len = name.size();
                best = l;
            }
        };
        consider(kStarName, kStar);
        consider(kBlackStarName, kBlackStar);
        for (std::size_t k = 0; k < names_.size(); ++k) consider(names_[k], static_cast<Letter>(k));
        if (best_len == 0)
            throw std::invalid_argument("cannot tokenize '" + std::string(text.substr(i)) + "'");
        out.push_back(best);
        i += best_len;
    }
    return out;
}

std::string Alphabet::render(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += separator_;
        out += name(w[i]);
    }
    return out;
}

void Alphabet::validate(const Word& w) const {
    for (Letter l : w)
        if (!contains(l)) throw std::invalid_argument("word uses a letter outside the alphabet");
}

Sentence::Sentence(std::vector<Word> words) : words_(std::move(words)) {
    for (const auto& w : words_)
        if (w.empty()) throw std::invalid_argument("sentences cannot contain empty words");
}

Sentence Sentence::prefix(std::size_t n) const {
    if (n > words_.size()) throw std::out_of_range("prefix longer than sentence");
    Sentence s;
    s.words_.assign(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(n));
    return s;
}

Sentence Sentence::suffix_from(std::size_t from) const {
    Sentence s;
    if (from < words_.size())
        s.words_.assign(words_.begin() + static_cast<std::ptrdiff_t>(from), words_.end());
    return s;
}

void Sentence::push_back(Word w) {
    if (w.empty()) throw std::invalid_argument("sentences cannot contain empty words");
    words_.push_back(std::move(w));
}

std::size_t Sentence::letter_count() const {
    std::size_t n = 0;
    for (const auto& w : words_) n += w.size();
    return n;
}

bool is_starred(const Sentence& s) {
    for (const auto& w : s) {
        if (w.size() < 2 || w.front() != kStar) return false;
        if (std::find(w.begin() + 1, w.end(), kStar) != w.end()) return false;
    }
    return true;
}

std::size_t word_tree_distance(const Word& w, const Word& w2) {
    return prefix_tree_distance<Letter>(w, w2);
}

std::size_t word_tree_distance(const Alphabet& alphabet, const Word& w, const Word& w2) {
    alphabet.validate(w);
    alphabet.validate(w2);
    return word_tree_distance(w, w2);
}

std::size_t sentence_tree_distance(const Sentence& a, const Sentence& b) {
    return prefix_tree_distance<Word>(a.words(), b.words());
}

DivergenceDecomposition split_at_divergence(const Sentence& a, const Sentence& b) {
    DivergenceDecomposition d;
    d.p = common_prefix_length<Word>(a.words(), b.words());
    d.m = a.size() - d.p;
    d.n = b.size() - d.p;
    d.shared = a.prefix(d.p);
    d.tail_a = a.suffix_from(d.p);
    d.tail_b = b.suffix_from(d.p);
    return d;
}

Rational awl(const Sentence& s) {
    if (s.empty()) throw std::invalid_argument("average word length of the empty sentence");
    return Rational(static_cast<std::int64_t>(s.letter_count()), static_cast<std::int64_t>(s.size()));
}

Rational awl_or_zero(const Sentence& s) { return s.empty() ? Rational(0) : awl(s); }

namespace {

void check_coord(const Sentence& s, EventCoord at) {
    if (at.day < 1 || at.day > s.size() || at.position < 1 || at.position > s[at.day - 1].size())
        throw std::out_of_range("event coordinate does not address a letter");
}

}  // namespace

Sentence tail_sentence(const Sentence& s, EventCoord at) {
    check_coord(s, at);
    const Word& u = s[at.day - 1];
    std::vector<Word> words;
    words.emplace_back(u.begin() + static_cast<std::ptrdiff_t>(at.position - 1), u.end());
    for (std::size_t i = at.day; i < s.size(); ++i) words.push_back(s[i]);
    return Sentence(std::move(words));
}

Sentence head_sentence(const Sentence& s, EventCoord at) {
    check_coord(s, at);
    const Word& u = s[at.day - 1];
    std::vector<Word> words(s.words().begin(), s.words().begin() + static_cast<std::ptrdiff_t>(at.day - 1));
    words.emplace_back(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(at.position));
    return Sentence(std::move(words));
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word last_letters(const Word& w, std::size_t k) {
    std::size_t take = std::min(k, w.size());
    return Word(w.end() - static_cast<std::ptrdiff_t>(take), w.end());
}

Word norm(const Word& u, std::size_t r) {
    if (r <= u.size()) return Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(r));
    Word out = u;
    out.resize(r, kStar);
    return out;
}

std::string last_decimal_digits(std::size_t n, std::size_t k) {
    std::string s = std::to_string(n);
    if (s.size() > k) s.erase(0, s.size() - k);
    return s;
}

CloseWordWitness discriminate_close_words(const Word& w, const Word& w2, std::size_t k) {
    if (w == w2) throw std::invalid_argument("words must be distinct");
    if (word_tree_distance(w, w2) > k) throw std::invalid_argument("words are further apart than k");
    if (last_letters(w, k) != last_letters(w2, k)) return CloseWordWitness::LastLetters;
    if (last_decimal_digits(w.size(), k) != last_decimal_digits(w2.size(), k))
        return CloseWordWitness::LengthDigits;
    throw std::logic_error("neither separating fact holds for close words");
}

const char* to_string(CloseWordWitness w) {
    return w == CloseWordWitness::LastLetters ? "LastLetters" : "LengthDigits";
}

nlohmann::json sentence_to_json(const Alphabet& alphabet, const Sentence& s) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& w : s) words.push_back(alphabet.render(w));
    nlohmann::json j;
    j["alphabet"] = alphabet.names();
    if (!alphabet.separator().empty()) j["separator"] = alphabet.separator();
    j["sentence"] = std::move(words);
    return j;
}

Alphabet alphabet_from_json(const nlohmann::json& j) {
    std::string sep = j.contains("separator") ? j.at("separator").get<std::string>() : std::string{};
    return Alphabet(j.at("alphabet").get<std::vector<std::string>>(), sep);
}

Sentence sentence_from_json(const Alphabet& alphabet, const nlohmann::json& j) {
    const auto& arr = j.is_array() ? j : j.at("sentence");
    std::vector<Word> words;
    for (const auto& w : arr) words.push_back(alphabet.parse(w.get<std::string>()));
    return Sentence(std::move(words));
}

}  // namespace treembed
