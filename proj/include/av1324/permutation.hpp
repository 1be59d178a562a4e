#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace av1324 {

/// Raised when a word has repeated letters or a permutation is not a
/// rearrangement of 1..n.
struct invalid_word : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A sequence of distinct positive integers. Values are not required to be
/// 1..n, so fragments of a permutation can be sliced and shifted before
/// reduction.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> values) : values_(std::move(values)) {
        std::vector<int> sorted = values_;
        std::sort(sorted.begin(), sorted.end());
        if (!sorted.empty() && sorted.front() < 1)
            throw invalid_word("word letters must be positive");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw invalid_word("word letters must be distinct");
    }
    Word(std::initializer_list<int> values) : Word(std::vector<int>(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const std::vector<int>& values() const noexcept { return values_; }
    int operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<int> values_;
};

/// A permutation of 1..n in one-line notation. Positions and values are
/// 1-based in the public accessors (`at`, `pos`); `values()` exposes the
/// underlying 0-indexed storage.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> values) : values_(std::move(values)) {
        const int n = static_cast<int>(values_.size());
        std::vector<char> seen(values_.size() + 1, 0);
        for (int v : values_) {
            if (v < 1 || v > n || seen[v])
                throw invalid_word("not a permutation of 1.." + std::to_string(n));
            seen[v] = 1;
        }
    }
    Permutation(std::initializer_list<int> values) : Permutation(std::vector<int>(values)) {}

    static Permutation identity(std::size_t n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(unchecked, std::move(v));
    }

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const std::vector<int>& values() const noexcept { return values_; }
    std::span<const int> span() const noexcept { return values_; }

    /// Value at 1-based position i.
    int at(std::size_t i) const { return values_.at(i - 1); }
    /// 1-based position of value v.
    std::size_t pos(int v) const {
        auto it = std::find(values_.begin(), values_.end(), v);
        if (it == values_.end()) throw std::out_of_range("value not in permutation");
        return static_cast<std::size_t>(it - values_.begin()) + 1;
    }
    int front() const { return values_.front(); }
    int back() const { return values_.back(); }

    Word as_word() const { return Word(values_); }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) {
        return a.values_ <=> b.values_;
    }

    // Skips validation; callers guarantee the values form a permutation.
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};
    Permutation(unchecked_t, std::vector<int> values) : values_(std::move(values)) {}

private:
    std::vector<int> values_;
};

/// Replaces the i-th smallest letter by i.
inline Permutation reduce(std::span<const int> w) {
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
    std::vector<int> out(w.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && w[order[r]] == w[order[r - 1]])
            throw invalid_word("cannot reduce a word with repeated letters");
        out[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation(Permutation::unchecked, std::move(out));
}
inline Permutation reduce(const Word& w) { return reduce(std::span<const int>(w.values())); }

inline Permutation inverse(const Permutation& p) {
    std::vector<int> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p.values()[i] - 1] = static_cast<int>(i) + 1;
    return Permutation(Permutation::unchecked, std::move(out));
}

inline Permutation reverse_complement(const Permutation& p) {
    const int n = static_cast<int>(p.size());
    std::vector<int> out(p.size());
    for (int i = 0; i < n; ++i) out[i] = n + 1 - p.values()[n - 1 - i];
    return Permutation(Permutation::unchecked, std::move(out));
}

/// p ⊖ 1: values shifted up by one, followed by a final 1.
inline Permutation skew_sum_one(const Permutation& p) {
    std::vector<int> out;
    out.reserve(p.size() + 1);
    for (int v : p.values()) out.push_back(v + 1);
    out.push_back(1);
    return Permutation(Permutation::unchecked, std::move(out));
}

// ---------------------------------------------------------------------------
// Pattern containment. All checkers accept arbitrary sequences of distinct
// integers; only relative order matters.

namespace detail {

// Generic backtracking over increasing index tuples. Used for patterns that
// have no dedicated checker.
inline bool contains_generic(std::span<const int> w, std::span<const int> pat) {
    const std::size_t k = pat.size();
    if (k > w.size()) return false;
    std::vector<std::size_t> idx(k);
    // place(j, start): choose idx[j] >= start consistent with the pattern
    // against all previously chosen entries.
    auto consistent = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            if ((pat[i] < pat[j]) != (w[idx[i]] < w[idx[j]])) return false;
        return true;
    };
    std::size_t j = 0;
    idx[0] = 0;
    while (true) {
        if (idx[j] + (k - j) > w.size()) {
            if (j == 0) return false;
            --j;
            ++idx[j];
            continue;
        }
        if (consistent(j)) {
            if (j + 1 == k) return true;
            idx[j + 1] = idx[j] + 1;
            ++j;
        } else {
            ++idx[j];
        }
    }
}

} // namespace detail

/// True iff the sequence is increasing (avoids 21).
inline bool avoids_21(std::span<const int> w) {
    return std::is_sorted(w.begin(), w.end());
}

/// Stack scan from the right: the popped entries are candidates for the
/// "2" of a 132, and any later-scanned entry below the best candidate is
/// the "1".
inline bool avoids_132(std::span<const int> w) {
    std::vector<int> stack;
    stack.reserve(w.size());
    bool have_two = false;
    int two = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        const int x = w[i];
        if (have_two && x < two) return false;
        while (!stack.empty() && stack.back() < x) {
            two = stack.back();
            have_two = true;
            stack.pop_back();
        }
        stack.push_back(x);
    }
    return true;
}

/// w contains 213 iff its reverse-complement contains 132.
inline bool avoids_213(std::span<const int> w) {
    std::vector<int> rc(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) rc[i] = -w[w.size() - 1 - i];
    return avoids_132(rc);
}

/// Threshold scan for 1324, O(n^2).
///
/// `threshold` is the smallest "3" over all 132 occurrences seen so far; an
/// incoming entry larger than it completes a 1324. Each entry x, taken as a
/// "2", creates 132 occurrences whose "3" is any earlier entry y > x that
/// has a smaller entry somewhere before it.
inline bool avoids_1324(std::span<const int> w) {
    bool have = false;
    int threshold = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const int x = w[k];
        if (have && x > threshold) return false;
        int prefix_min = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const int y = w[j];
            if (j > 0 && y > x && prefix_min < x && (!have || y < threshold)) {
                threshold = y;
                have = true;
            }
            if (j == 0 || y < prefix_min) prefix_min = y;
        }
    }
    return true;
}

/// True iff some subsequence of w reduces to pat.
inline bool contains_pattern(std::span<const int> w, const Permutation& pat) {
    if (pat.empty()) throw std::invalid_argument("empty pattern");
    const auto& p = pat.values();
    if (p == std::vector<int>{2, 1}) return !avoids_21(w);
    if (p == std::vector<int>{1, 3, 2}) return !avoids_132(w);
    if (p == std::vector<int>{2, 1, 3}) return !avoids_213(w);
    if (p == std::vector<int>{1, 3, 2, 4}) return !avoids_1324(w);
    return detail::contains_generic(w, p);
}
inline bool contains_pattern(const Permutation& p, const Permutation& pat) {
    return contains_pattern(p.span(), pat);
}
inline bool avoids(std::span<const int> w, const Permutation& pat) { return !contains_pattern(w, pat); }
inline bool avoids(const Permutation& p, const Permutation& pat) { return !contains_pattern(p, pat); }

namespace patterns {
inline const Permutation p21{2, 1};
inline const Permutation p132{1, 3, 2};
inline const Permutation p213{2, 1, 3};
inline const Permutation p1324{1, 3, 2, 4};
} // namespace patterns

// ---------------------------------------------------------------------------
// Text forms.

/// Accepts "2,5,1,3,4" or, for n <= 9, the digit string "25134". The empty
/// string is the empty permutation.
inline Permutation parse_permutation(std::string_view text) {
    std::vector<int> v;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return {};
    if (text.find(',') == std::string_view::npos) {
        for (char c : text) {
            if (c < '1' || c > '9') throw invalid_word("bad permutation text: " + std::string(text));
            v.push_back(c - '0');
        }
        return Permutation(std::move(v));
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        auto tok = trim(text.substr(start, comma - start));
        if (tok.empty()) throw invalid_word("bad permutation text: " + std::string(text));
        int x = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') throw invalid_word("bad permutation text: " + std::string(text));
            x = x * 10 + (c - '0');
        }
        v.push_back(x);
        start = comma + 1;
    }
    return Permutation(std::move(v));
}

/// Comma form, e.g. "2,5,1,3,4".
inline std::string to_string(std::span<const int> w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}
inline std::string to_string(const Permutation& p) { return to_string(p.span()); }

/// Digit string when every value is a single digit, "[..]"-wrapped comma
/// form otherwise. Used inside products and tuples, where commas separate
/// components.
inline std::string to_compact_string(const Permutation& p) {
    if (p.size() <= 9) {
        std::string s;
        for (int v : p.values()) s += static_cast<char>('0' + v);
        return s;
    }
    return "[" + to_string(p) + "]";
}

} // namespace av1324
