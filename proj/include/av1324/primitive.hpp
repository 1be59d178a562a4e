#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avoiders.hpp"
#include "permutation.hpp"

namespace av1324 {

/// n >= 2, avoids 1324, and 1 sits immediately left of n.
inline bool is_primitive(const Permutation& p) {
    if (p.size() < 2 || !avoids_1324(p.span())) return false;
    return p.pos(static_cast<int>(p.size())) == p.pos(1) + 1;
}

/// Members of A_{2,1}(m): S_{m,1}^{2<m}(1324) minus the permutations that
/// end with 1. The smallest one has size 4 (2413).
inline bool is_a21(const Permutation& p) {
    return p.size() >= 3 && in_class(p, 2, 1) && p.back() != 1;
}

/// Result of a product together with where every entry of each operand
/// landed (0-based positions). The entry m of the result is the image of
/// both the m of the left operand and the 1 of the right one.
struct TracedProduct {
    Permutation result;
    std::vector<std::vector<std::size_t>> placement; // placement[f][i]
};

namespace detail {

inline std::size_t index_of(const Permutation& p, int v) { return p.pos(v) - 1; }

inline void require_odot_operands(const Permutation& left, const Permutation& right) {
    if (!is_primitive(left)) throw std::domain_error("left operand of odot must be primitive: " + to_string(left));
    if (!in_one_before_max(right))
        throw std::domain_error("right operand of odot must avoid 1324 with 1 left of its maximum: " + to_string(right));
}

} // namespace detail

/// left ⊙ right for a primitive left = pi1 1 m tau1 and
/// right = pi2 1 theta2 l tau2: the result is
/// pi2^ pi1 1 m theta2^ n tau2^ tau1 with hats shifting values up by m-1.
inline TracedProduct odot_traced(const Permutation& left, const Permutation& right) {
    detail::require_odot_operands(left, right);
    const auto& l = left.values();
    const auto& r = right.values();
    const int m = static_cast<int>(l.size());
    const std::size_t one_l = detail::index_of(left, 1);
    const std::size_t one_r = detail::index_of(right, 1);

    std::vector<int> out;
    out.reserve(l.size() + r.size() - 1);
    TracedProduct tp;
    tp.placement.assign(2, {});
    tp.placement[0].resize(l.size());
    tp.placement[1].resize(r.size());

    for (std::size_t j = 0; j < one_r; ++j) {
        tp.placement[1][j] = out.size();
        out.push_back(r[j] + m - 1);
    }
    for (std::size_t i = 0; i <= one_l; ++i) {
        tp.placement[0][i] = out.size();
        out.push_back(l[i]);
    }
    tp.placement[0][one_l + 1] = out.size();
    for (std::size_t j = one_r; j < r.size(); ++j) {
        tp.placement[1][j] = out.size();
        out.push_back(r[j] + m - 1);
    }
    for (std::size_t i = one_l + 2; i < l.size(); ++i) {
        tp.placement[0][i] = out.size();
        out.push_back(l[i]);
    }
    tp.result = Permutation(Permutation::unchecked, std::move(out));
    return tp;
}

inline Permutation odot(const Permutation& left, const Permutation& right) {
    return odot_traced(left, right).result;
}

/// factors[0] ⊙ (factors[1] ⊙ (... ⊙ factors[k-1])), with placements for
/// every factor.
inline TracedProduct fold_traced(const std::vector<Permutation>& factors) {
    if (factors.empty()) throw std::invalid_argument("cannot fold an empty factor list");
    TracedProduct acc;
    acc.result = factors.back();
    acc.placement.assign(1, std::vector<std::size_t>(factors.back().size()));
    for (std::size_t i = 0; i < factors.back().size(); ++i) acc.placement[0][i] = i;

    for (std::size_t f = factors.size() - 1; f-- > 0;) {
        TracedProduct step = odot_traced(factors[f], acc.result);
        TracedProduct next;
        next.result = std::move(step.result);
        next.placement.reserve(acc.placement.size() + 1);
        next.placement.push_back(std::move(step.placement[0]));
        for (auto& inner : acc.placement) {
            for (auto& p : inner) p = step.placement[1][p];
            next.placement.push_back(std::move(inner));
        }
        acc = std::move(next);
    }
    return acc;
}

inline Permutation fold(const std::vector<Permutation>& factors) { return fold_traced(factors).result; }

/// The unique list of primitives whose right-nested product is the source.
struct PrimitiveDecomposition {
    std::vector<Permutation> factors;

    std::size_t k() const noexcept { return factors.size(); }
    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s;
        for (const auto& f : factors) s.push_back(f.size());
        return s;
    }
    Permutation recompose() const { return fold(factors); }
    friend bool operator==(const PrimitiveDecomposition&, const PrimitiveDecomposition&) = default;
};

/// Splits p = pi 1 theta n tau in S_n^{1<n}(1324) into primitives.
///
/// With m = min(theta), pi = pi2 pi1 and tau = tau2 tau1 where the
/// "2" blocks hold values above m and the "1" blocks values below. The first
/// factor is pi1 1 m tau1; the rest is the factorization of
/// red(pi2 m theta' n tau2).
inline PrimitiveDecomposition factorize(const Permutation& p) {
    if (!in_one_before_max(p))
        throw std::domain_error("factorize needs a 1324-avoider with 1 left of n: " + to_string(p));
    PrimitiveDecomposition out;
    Permutation cur = p;
    while (true) {
        const auto& v = cur.values();
        const int n = static_cast<int>(v.size());
        const std::size_t one = detail::index_of(cur, 1);
        const std::size_t top = detail::index_of(cur, n);
        if (top == one + 1) {
            out.factors.push_back(cur);
            return out;
        }
        const int m = v[one + 1];
        for (std::size_t i = one + 2; i < top; ++i)
            if (v[i] < v[i - 1]) throw std::domain_error("entries between 1 and n are not increasing: " + to_string(cur));

        // Each side must be a block of values above m followed by a block
        // of values below m.
        auto split_point = [&](std::size_t begin, std::size_t end) {
            std::size_t s = begin;
            while (s < end && v[s] > m) ++s;
            for (std::size_t i = s; i < end; ++i)
                if (v[i] > m) throw std::domain_error("cannot split about the smallest middle entry: " + to_string(cur));
            return s;
        };
        const std::size_t pi_split = split_point(0, one);
        const std::size_t tau_split = split_point(top + 1, v.size());

        std::vector<int> first;
        first.insert(first.end(), v.begin() + pi_split, v.begin() + one + 2); // pi1 1 m
        first.insert(first.end(), v.begin() + tau_split, v.end());             // tau1
        std::vector<int> rest;
        rest.insert(rest.end(), v.begin(), v.begin() + pi_split);               // pi2
        rest.insert(rest.end(), v.begin() + one + 1, v.begin() + tau_split);   // m theta' n tau2

        Permutation factor(std::move(first));
        if (!is_primitive(factor)) throw std::domain_error("extracted factor is not primitive: " + to_string(factor));
        out.factors.push_back(std::move(factor));
        cur = reduce(rest);
    }
}

/// Shifts p up by one and inserts 1 into each gap right of the maximum.
inline std::vector<Permutation> expand_with_one(const Permutation& p) {
    if (!in_one_before_max(p))
        throw std::domain_error("expand_with_one needs a 1324-avoider with 1 left of n: " + to_string(p));
    std::vector<int> shifted;
    for (int x : p.values()) shifted.push_back(x + 1);
    const std::size_t top = detail::index_of(p, static_cast<int>(p.size()));
    std::vector<Permutation> out;
    for (std::size_t gap = top + 1; gap <= shifted.size(); ++gap) {
        std::vector<int> w = shifted;
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(gap), 1);
        out.emplace_back(Permutation::unchecked, std::move(w));
    }
    return out;
}

/// Removes 1 from an element of S_{n,k}^{2<n}(1324) and reduces.
inline Permutation contract_one(const Permutation& p) {
    auto c = avoids_1324(p.span()) ? classify(p) : std::nullopt;
    if (!c || c->a != 2) throw std::domain_error("contract_one needs an element of S^{2<n}(1324): " + to_string(p));
    std::vector<int> w;
    for (int x : p.values())
        if (x != 1) w.push_back(x);
    return reduce(w);
}

/// k components, one of which (index `marked`, 0-based) is in A_{2,1} and
/// the rest primitive.
struct MarkedTuple {
    std::vector<Permutation> components;
    std::size_t marked = 0;

    std::size_t k() const noexcept { return components.size(); }
    /// Size n of the permutation the tuple encodes.
    std::size_t target_size() const {
        std::size_t s = 0;
        for (const auto& c : components) s += c.size();
        return s + 1 - components.size();
    }
    friend bool operator==(const MarkedTuple&, const MarkedTuple&) = default;
    friend auto operator<=>(const MarkedTuple& a, const MarkedTuple& b) {
        if (auto c = a.components <=> b.components; c != 0) return c;
        return a.marked <=> b.marked;
    }
};

inline bool is_valid_tuple(const MarkedTuple& t) {
    if (t.components.empty() || t.marked >= t.components.size()) return false;
    for (std::size_t j = 0; j < t.components.size(); ++j) {
        const auto& c = t.components[j];
        if (j == t.marked ? !(c.size() >= 4 && is_a21(c)) : !is_primitive(c)) return false;
    }
    return true;
}

/// Builds sigma in S_{n,k}^{2<n}(1324), sigma(n) > 1, from a marked tuple:
/// the entry right of 1 in the marked component carries the mark, 1 is
/// removed, the components are multiplied, and 1 is re-inserted just left
/// of wherever the mark ended up.
inline Permutation decode_tuple(const MarkedTuple& t) {
    if (!is_valid_tuple(t)) throw std::domain_error("invalid marked tuple");
    std::vector<Permutation> parts = t.components;
    const Permutation& marked = t.components[t.marked];
    const std::size_t one = detail::index_of(marked, 1);
    std::vector<int> rest;
    for (int x : marked.values())
        if (x != 1) rest.push_back(x);
    parts[t.marked] = reduce(rest);
    // After deleting 1, the marked entry sits at the old index of 1.
    TracedProduct tp = fold_traced(parts);
    const std::size_t at = tp.placement[t.marked][one];

    std::vector<int> out;
    out.reserve(tp.result.size() + 1);
    for (int x : tp.result.values()) out.push_back(x + 1);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), 1);
    return Permutation(Permutation::unchecked, std::move(out));
}

/// Inverse of decode_tuple.
inline MarkedTuple encode_perm(const Permutation& p) {
    auto c = avoids_1324(p.span()) ? classify(p) : std::nullopt;
    if (!c || c->a != 2) throw std::domain_error("encode_perm needs an element of S^{2<n}(1324): " + to_string(p));
    if (p.back() == 1) throw std::domain_error("encode_perm needs a permutation not ending with 1: " + to_string(p));

    const std::size_t mark = detail::index_of(p, 1); // index of the marked entry once 1 is gone
    PrimitiveDecomposition dec = factorize(contract_one(p));
    TracedProduct tp = fold_traced(dec.factors);

    MarkedTuple t;
    bool found = false;
    for (std::size_t f = 0; f < tp.placement.size(); ++f)
        for (std::size_t i = 0; i < tp.placement[f].size(); ++i)
            if (tp.placement[f][i] == mark) {
                if (found) throw std::logic_error("mark lands on a shared entry");
                found = true;
                t.marked = f;
                std::vector<int> w;
                for (int x : dec.factors[f].values()) w.push_back(x + 1);
                w.insert(w.begin() + static_cast<std::ptrdiff_t>(i), 1);
                dec.factors[f] = Permutation(Permutation::unchecked, std::move(w));
            }
    if (!found) throw std::logic_error("mark not found in factorization");
    t.components = std::move(dec.factors);
    return t;
}

// ---------------------------------------------------------------------------
// Text forms.

/// "12 ⊙ 132"
inline std::string format_product(const std::vector<Permutation>& factors) {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " ⊙ ";
        s += to_compact_string(factors[i]);
    }
    return s;
}

/// "(12, ^2413, 132)"
inline std::string format_tuple(const MarkedTuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.components.size(); ++i) {
        if (i) s += ", ";
        if (i == t.marked) s += '^';
        s += to_compact_string(t.components[i]);
    }
    return s + ")";
}

inline MarkedTuple parse_tuple(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("bad tuple text: " + std::string(text)); };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw fail();
    text = text.substr(1, text.size() - 2);

    MarkedTuple t;
    int marks = 0;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '[') ++depth;
        if (i < text.size() && text[i] == ']') --depth;
        if (i < text.size() && (text[i] != ',' || depth > 0)) continue;
        std::string_view tok = text.substr(start, i - start);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (!tok.empty() && tok.front() == '^') {
            t.marked = t.components.size();
            ++marks;
            tok.remove_prefix(1);
        }
        if (tok.empty()) throw fail();
        if (tok.front() == '[') {
            if (tok.back() != ']') throw fail();
            t.components.push_back(parse_permutation(tok.substr(1, tok.size() - 2)));
        } else {
            t.components.push_back(parse_permutation(tok));
        }
        start = i + 1;
    }
    if (marks != 1) throw fail();
    return t;
}

} // namespace av1324
