#pragma once

// Letter-level rewriting to PBW normal form.
//
// Letters are ordered z0 < z1 < z1s < z0s.  Local rules:
//
//   z1s z1 -> z1 z1s            z1 z0   -> q^-1 z0 z1
//   z1s z0 -> q^-1 z0 z1s       z0s z1  -> q^-1 z1 z0s
//   z0s z1s -> q^-1 z1s z0s     z0 z0s  -> 1 - z1 z1s
//   z0s z0 -> 1 - q^-2 z1 z1s
//
// The local rules alone leave z0 w z0s irreducible when w is a nonempty
// word in {z1, z1s}.  The bridge rule closes that gap:
//
//   z0 w z0s -> q^{|w|} (1 - z1 z1s) w
//
// Every rule lowers (number of z0/z0s letters, number of inversions)
// lexicographically, so rewriting terminates under any strategy.  The
// irreducible words are exactly z0^a z1^r z1s^s z0s^c with min(a,c) = 0.

#include "qnc/error.hpp"
#include "qnc/laurent.hpp"
#include "qnc/ncpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnc {

enum class Letter : std::uint8_t { z0 = 0, z1 = 1, z1s = 2, z0s = 3 };

using Word = std::vector<Letter>;
using WordPoly = std::map<Word, LaurentPoly>;

constexpr Letter star(Letter x) noexcept
{
    switch (x) {
    case Letter::z0: return Letter::z0s;
    case Letter::z0s: return Letter::z0;
    case Letter::z1: return Letter::z1s;
    case Letter::z1s: return Letter::z1;
    }
    return x;
}

constexpr std::string_view name(Letter x) noexcept
{
    switch (x) {
    case Letter::z0: return "z0";
    case Letter::z1: return "z1";
    case Letter::z1s: return "z1s";
    case Letter::z0s: return "z0s";
    }
    return "?";
}

inline Word star(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) x = star(x);
    return out;
}

inline Word concat(Word a, const Word& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::string to_string(const Word& w)
{
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += name(w[i]);
    }
    return out;
}

/// Parses whitespace-separated letters, e.g. "z1 z0 z1s z0s".  "1" or the
/// empty string is the empty word.
inline Word parse_word(std::string_view text)
{
    Word w;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        if (tok == "z0") w.push_back(Letter::z0);
        else if (tok == "z1") w.push_back(Letter::z1);
        else if (tok == "z1s") w.push_back(Letter::z1s);
        else if (tok == "z0s") w.push_back(Letter::z0s);
        else if (tok == "1") continue;
        else throw DomainError("unknown letter '" + tok + "'");
    }
    return w;
}

inline Word word_of(const Monomial& m)
{
    Word w;
    if (m.p > 0) w.insert(w.end(), static_cast<std::size_t>(m.p), Letter::z0);
    w.insert(w.end(), static_cast<std::size_t>(m.r), Letter::z1);
    w.insert(w.end(), static_cast<std::size_t>(m.s), Letter::z1s);
    if (m.p < 0) w.insert(w.end(), static_cast<std::size_t>(-m.p), Letter::z0s);
    return w;
}

inline WordPoly to_word_poly(const NCPoly& x)
{
    WordPoly out;
    for (const auto& [m, c] : x.terms()) out.emplace(word_of(m), c);
    return out;
}

inline void add_term(WordPoly& poly, const Word& w, const LaurentPoly& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = poly.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) poly.erase(it);
    }
}

struct Rule {
    enum class Kind { local, bridge };

    std::string name;
    Kind kind = Kind::local;
    Letter first = Letter::z0;   ///< local: left letter of the redex
    Letter second = Letter::z0;  ///< local: right letter of the redex
    /// local: replacement; bridge: contraction applied in front of w.
    std::vector<std::pair<LaurentPoly, Word>> rhs;
    /// bridge: factor per letter of w picked up moving z0s leftwards.
    LaurentPoly bridge_factor = LaurentPoly::q_power(1);
};

struct Redex {
    std::size_t position = 0;
    std::size_t length = 0;
    std::size_t rule = 0;
};

class RuleSet {
public:
    RuleSet() = default;
    explicit RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {}

    static RuleSet standard()
    {
        using L = Letter;
        const LaurentPoly qi = LaurentPoly::q_power(-1);
        std::vector<Rule> r;
        auto local = [&](std::string nm, L a, L b, std::vector<std::pair<LaurentPoly, Word>> rhs) {
            Rule rule;
            rule.name = std::move(nm);
            rule.first = a;
            rule.second = b;
            rule.rhs = std::move(rhs);
            r.push_back(std::move(rule));
        };
        local("z1s.z1", L::z1s, L::z1, {{1, {L::z1, L::z1s}}});
        local("z1.z0", L::z1, L::z0, {{qi, {L::z0, L::z1}}});
        local("z1s.z0", L::z1s, L::z0, {{qi, {L::z0, L::z1s}}});
        local("z0s.z1", L::z0s, L::z1, {{qi, {L::z1, L::z0s}}});
        local("z0s.z1s", L::z0s, L::z1s, {{qi, {L::z1s, L::z0s}}});
        local("z0.z0s", L::z0, L::z0s, {{1, {}}, {-1, {L::z1, L::z1s}}});
        local("z0s.z0", L::z0s, L::z0, {{1, {}}, {-LaurentPoly::q_power(-2), {L::z1, L::z1s}}});
        Rule bridge;
        bridge.name = "bridge";
        bridge.kind = Rule::Kind::bridge;
        bridge.first = L::z0;
        bridge.second = L::z0s;
        bridge.rhs = {{1, {}}, {-1, {L::z1, L::z1s}}};
        r.push_back(std::move(bridge));
        return RuleSet(std::move(r));
    }

    const std::vector<Rule>& rules() const noexcept { return rules_; }

    const Rule& rule(std::string_view nm) const
    {
        for (const auto& r : rules_)
            if (r.name == nm) return r;
        throw DomainError("no rewrite rule named '" + std::string(nm) + "'");
    }
    Rule& rule(std::string_view nm) { return const_cast<Rule&>(std::as_const(*this).rule(nm)); }

    std::vector<Redex> redexes(const Word& w) const
    {
        std::vector<Redex> out;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
                const Rule& r = rules_[ri];
                if (r.kind == Rule::Kind::local) {
                    if (w[i] == r.first && w[i + 1] == r.second) out.push_back({i, 2, ri});
                    continue;
                }
                if (w[i] != r.first) continue;
                std::size_t j = i + 1;
                while (j < w.size() && (w[j] == Letter::z1 || w[j] == Letter::z1s)) ++j;
                if (j > i + 1 && j < w.size() && w[j] == r.second) out.push_back({i, j - i + 1, ri});
            }
        }
        return out;
    }

    /// One rewrite step at the given redex of w, scaled by c, into out.
    void apply(const Word& w, const LaurentPoly& c, const Redex& rx, WordPoly& out) const
    {
        const Rule& r = rules_[rx.rule];
        Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(rx.position));
        Word suffix(w.begin() + static_cast<std::ptrdiff_t>(rx.position + rx.length), w.end());
        if (r.kind == Rule::Kind::local) {
            for (const auto& [rc, rw] : r.rhs) add_term(out, concat(concat(prefix, rw), suffix), c * rc);
            return;
        }
        Word middle(w.begin() + static_cast<std::ptrdiff_t>(rx.position + 1),
                    w.begin() + static_cast<std::ptrdiff_t>(rx.position + rx.length - 1));
        const LaurentPoly factor = pow(r.bridge_factor, static_cast<unsigned>(middle.size()));
        for (const auto& [rc, rw] : r.rhs)
            add_term(out, concat(concat(concat(prefix, rw), middle), suffix), c * rc * factor);
    }

private:
    std::vector<Rule> rules_;
};

enum class Strategy { leftmost, rightmost, random };

struct RewriteOptions {
    Strategy strategy = Strategy::leftmost;
    std::uint64_t seed = 0;
    std::size_t max_steps = 10'000'000;
};

/// Rewrites until every word is irreducible.
inline WordPoly rewrite(WordPoly poly, const RuleSet& rules, const RewriteOptions& opt = {})
{
    std::mt19937_64 rng(opt.seed);
    WordPoly done;
    std::size_t steps = 0;
    while (!poly.empty()) {
        auto node = poly.extract(poly.begin());
        const Word& w = node.key();
        const auto rx = rules.redexes(w);
        if (rx.empty()) {
            add_term(done, w, node.mapped());
            continue;
        }
        if (++steps > opt.max_steps) throw ResourceError("rewriting exceeded step budget");
        std::size_t pick = 0;
        switch (opt.strategy) {
        case Strategy::leftmost: pick = 0; break;
        case Strategy::rightmost: pick = rx.size() - 1; break;
        case Strategy::random: pick = std::uniform_int_distribution<std::size_t>(0, rx.size() - 1)(rng); break;
        }
        WordPoly produced;
        rules.apply(w, node.mapped(), rx[pick], produced);
        for (const auto& [pw, pc] : produced) add_term(poly, pw, pc);
    }
    return done;
}

/// Reads an irreducible word as a basis monomial.  Throws InternalError if
/// the word is irreducible but outside the basis, which can only happen
/// with an incomplete rule set.
inline Monomial monomial_of_irreducible(const Word& w)
{
    std::size_t i = 0;
    int a = 0, r = 0, s = 0, c = 0;
    while (i < w.size() && w[i] == Letter::z0) ++a, ++i;
    while (i < w.size() && w[i] == Letter::z1) ++r, ++i;
    while (i < w.size() && w[i] == Letter::z1s) ++s, ++i;
    while (i < w.size() && w[i] == Letter::z0s) ++c, ++i;
    if (i != w.size() || (a > 0 && c > 0))
        throw InternalError("irreducible word '" + to_string(w) + "' is not a PBW monomial");
    return Monomial{a - c, r, s};
}

inline NCPoly to_ncpoly(const WordPoly& irreducible)
{
    NCPoly out;
    for (const auto& [w, c] : irreducible) out.add_term(monomial_of_irreducible(w), c);
    return out;
}

inline NCPoly normal_form(const WordPoly& poly, const RuleSet& rules = RuleSet::standard(),
                          const RewriteOptions& opt = {})
{
    return to_ncpoly(rewrite(poly, rules, opt));
}

inline NCPoly normal_form(const Word& w, const LaurentPoly& prefactor = 1,
                          const RuleSet& rules = RuleSet::standard(), const RewriteOptions& opt = {})
{
    WordPoly poly;
    add_term(poly, w, prefactor);
    return normal_form(poly, rules, opt);
}

/// Product of the letters of w computed with the closed-form multiply.
inline NCPoly product_of_letters(const Word& w)
{
    NCPoly acc = 1;
    for (Letter x : w) {
        switch (x) {
        case Letter::z0: acc = multiply(acc, NCPoly::z0()); break;
        case Letter::z1: acc = multiply(acc, NCPoly::z1()); break;
        case Letter::z1s: acc = multiply(acc, NCPoly::z1s()); break;
        case Letter::z0s: acc = multiply(acc, NCPoly::z0s()); break;
        }
    }
    return acc;
}

/// Charge of a word under the (k,l) weighting.
inline int charge(const Word& w, int k, int l)
{
    int ch = 0;
    for (Letter x : w) {
        switch (x) {
        case Letter::z0: ch += k; break;
        case Letter::z0s: ch -= k; break;
        case Letter::z1: ch += l; break;
        case Letter::z1s: ch -= l; break;
        }
    }
    return ch;
}

inline Word random_word(std::mt19937_64& rng, std::size_t max_len)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> letter(0, 3);
    Word w(len(rng));
    for (auto& x : w) x = static_cast<Letter>(letter(rng));
    return w;
}

/// One defining relation lhs = rhs of the sphere algebra, as word sums.
struct Relation {
    std::string name;
    WordPoly lhs;
    WordPoly rhs;
};

/// z0 z1 = q z1 z0, z0 z1s = q z1s z0, z1 z0s = q z0s z1,
/// z0 z0s = z0s z0 + (q^-2 - 1) z1 z1s, z1 z1s = z1s z1,
/// z0 z0s + z1 z1s = 1.
inline std::vector<Relation> sphere_relations()
{
    using L = Letter;
    const LaurentPoly q = LaurentPoly::q_power(1);
    auto wp = [](std::initializer_list<std::pair<LaurentPoly, Word>> terms) {
        WordPoly p;
        for (const auto& [c, w] : terms) add_term(p, w, c);
        return p;
    };
    return {
        {"z0z1=q.z1z0", wp({{1, {L::z0, L::z1}}}), wp({{q, {L::z1, L::z0}}})},
        {"z0z1s=q.z1sz0", wp({{1, {L::z0, L::z1s}}}), wp({{q, {L::z1s, L::z0}}})},
        {"z1z0s=q.z0sz1", wp({{1, {L::z1, L::z0s}}}), wp({{q, {L::z0s, L::z1}}})},
        {"z0z0s-z0sz0=(q^-2-1)b", wp({{1, {L::z0, L::z0s}}}),
         wp({{1, {L::z0s, L::z0}}, {LaurentPoly::q_power(-2) - 1, {L::z1, L::z1s}}})},
        {"z1z1s=z1sz1", wp({{1, {L::z1, L::z1s}}}), wp({{1, {L::z1s, L::z1}}})},
        {"z0z0s+z1z1s=1", wp({{1, {L::z0, L::z0s}}, {1, {L::z1, L::z1s}}}), wp({{1, {}}})},
    };
}

/// u * poly * v.
inline WordPoly sandwich(const Word& u, const WordPoly& poly, const Word& v)
{
    WordPoly out;
    for (const auto& [w, c] : poly) add_term(out, concat(concat(u, w), v), c);
    return out;
}

}  // namespace qnc
