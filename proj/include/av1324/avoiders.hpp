#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permutation.hpp"

namespace av1324 {

using BigInt = boost::multiprecision::cpp_int;

/// (a, k) of a 1324-avoider: a is the smallest value left of n, and k is
/// pos(n) - pos(a). Every value below a then sits right of n.
struct PositionalClass {
    int a = 0;
    int k = 0;
    friend bool operator==(const PositionalClass&, const PositionalClass&) = default;
    friend auto operator<=>(const PositionalClass&, const PositionalClass&) = default;
};

/// Undefined (nullopt) when p starts with its maximum, including n <= 1.
/// The caller is responsible for p avoiding 1324.
inline std::optional<PositionalClass> classify(std::span<const int> p) {
    const int n = static_cast<int>(p.size());
    if (n <= 1 || p[0] == n) return std::nullopt;
    int a = p[0], a_pos = 0;
    int i = 1;
    for (; p[i] != n; ++i) {
        if (p[i] < a) {
            a = p[i];
            a_pos = i;
        }
    }
    return PositionalClass{a, i - a_pos};
}
inline std::optional<PositionalClass> classify(const Permutation& p) { return classify(p.span()); }

/// True iff p avoids 1324 and lies in S_{n,k}^{a<n}(1324).
inline bool in_class(const Permutation& p, int a, int k) {
    if (!avoids_1324(p.span())) return false;
    auto c = classify(p);
    return c && c->a == a && c->k == k;
}

/// True iff p avoids 1324 and has 1 left of n, i.e. p is in S_n^{1<n}(1324).
inline bool in_one_before_max(const Permutation& p) {
    if (p.size() < 2 || !avoids_1324(p.span())) return false;
    auto c = classify(p);
    return c && c->a == 1;
}

namespace detail {

/// Depth-first generation of Av_n(1324) in lexicographic order, restricted
/// to permutations whose first entry is `first` (0 = unrestricted).
///
/// Each node stores the threshold of avoids_1324: a candidate entry larger
/// than the smallest "3" of a 132 in the prefix is pruned. The visitor is
/// called as visit(values, max_pos, min_left, min_left_pos) where max_pos is
/// the 0-based position of n and min_left/min_left_pos describe the
/// smallest entry before it (undefined when max_pos == 0).
template <class Visit>
class Av1324Walker {
public:
    Av1324Walker(int n, Visit& visit) : n_(n), visit_(visit) {
        w_.resize(n);
        prefix_min_.resize(n + 1);
        prefix_min_pos_.resize(n + 1);
        threshold_.resize(n + 1);
        used_.assign(n + 2, 0);
    }

    void run(int first) {
        if (n_ == 0) {
            visit_(std::span<const int>(w_), -1, 0, 0);
            return;
        }
        threshold_[0] = kNone;
        if (first == 0) {
            step(0);
        } else {
            place(0, first);
        }
    }

private:
    static constexpr int kNone = 1 << 30;

    void step(int depth) {
        if (depth == n_) {
            visit_(std::span<const int>(w_), max_pos_, prefix_min_[max_pos_], prefix_min_pos_[max_pos_]);
            return;
        }
        const int limit = std::min(n_, threshold_[depth]);
        for (int x = 1; x <= limit; ++x)
            if (!used_[x]) place(depth, x);
    }

    void place(int depth, int x) {
        // prefix_min_[j] = min(w_0..w_{j-1}); defined for j >= 1.
        int t = threshold_[depth];
        for (int j = 1; j < depth; ++j)
            if (w_[j] > x && prefix_min_[j] < x && w_[j] < t) t = w_[j];
        w_[depth] = x;
        threshold_[depth + 1] = t;
        if (depth == 0 || x < prefix_min_[depth]) {
            prefix_min_[depth + 1] = x;
            prefix_min_pos_[depth + 1] = depth;
        } else {
            prefix_min_[depth + 1] = prefix_min_[depth];
            prefix_min_pos_[depth + 1] = prefix_min_pos_[depth];
        }
        if (x == n_) max_pos_ = depth;
        used_[x] = 1;
        step(depth + 1);
        used_[x] = 0;
    }

    int n_;
    Visit& visit_;
    std::vector<int> w_;
    std::vector<int> prefix_min_;
    std::vector<int> prefix_min_pos_;
    std::vector<int> threshold_;
    std::vector<char> used_;
    int max_pos_ = -1;
};

inline unsigned resolve_workers(unsigned workers) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return workers;
}

/// Runs job(v) for v = 1..n on a pool of workers. Jobs write to disjoint
/// slots, so no further synchronisation is needed.
template <class Job>
void parallel_over_first_value(int n, unsigned workers, Job job) {
    workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max(n, 1)));
    if (workers <= 1) {
        for (int v = 1; v <= n; ++v) job(v);
        return;
    }
    std::atomic<int> next{1};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int v = next++; v <= n; v = next++) job(v);
        });
}

} // namespace detail

/// Calls fn(span) for every permutation of size n avoiding 1324, in
/// lexicographic order.
template <class Fn>
void for_each_1324_avoider(int n, Fn&& fn) {
    auto visit = [&](std::span<const int> w, int, int, int) { fn(w); };
    detail::Av1324Walker<decltype(visit)> walker(n, visit);
    walker.run(0);
}

/// Calls fn(span, class) for every 1324-avoider of size n that does not
/// start with n, in lexicographic order.
template <class Fn>
void for_each_classified(int n, Fn&& fn) {
    auto visit = [&](std::span<const int> w, int max_pos, int a, int a_pos) {
        if (max_pos > 0) fn(w, PositionalClass{a, max_pos - a_pos});
    };
    detail::Av1324Walker<decltype(visit)> walker(n, visit);
    walker.run(0);
}

/// Calls fn(span) for every permutation of size n avoiding `pattern`, in
/// lexicographic order. 1324 uses the dedicated walker; other patterns are
/// generated by prefix extension with a containment check at every node.
template <class Fn>
void for_each_avoider(int n, const Permutation& pattern, Fn&& fn) {
    if (pattern == patterns::p1324) {
        for_each_1324_avoider(n, fn);
        return;
    }
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    std::vector<int> w;
    std::vector<char> used(n + 1, 0);
    std::function<void()> rec = [&] {
        if (static_cast<int>(w.size()) == n) {
            fn(std::span<const int>(w));
            return;
        }
        for (int x = 1; x <= n; ++x) {
            if (used[x]) continue;
            w.push_back(x);
            if (!contains_pattern(std::span<const int>(w), pattern)) {
                used[x] = 1;
                rec();
                used[x] = 0;
            }
            w.pop_back();
        }
    };
    rec();
}

/// All permutations of size n avoiding `pattern`, lexicographically ordered.
inline std::vector<Permutation> generate_avoiders(int n, const Permutation& pattern) {
    std::vector<Permutation> out;
    for_each_avoider(n, pattern, [&](std::span<const int> w) {
        out.emplace_back(Permutation::unchecked, std::vector<int>(w.begin(), w.end()));
    });
    return out;
}

/// Exact counts |S_{n,k}^{a<n}(1324)| for one size n.
struct ClassCountTable {
    int n = 0;
    BigInt total;
    std::map<std::pair<int, int>, BigInt> counts; // (a, k) -> count, nonzero only

    BigInt count(int a, int k) const {
        auto it = counts.find({a, k});
        return it == counts.end() ? BigInt(0) : it->second;
    }
    BigInt classified_sum() const {
        BigInt s = 0;
        for (const auto& [key, c] : counts) s += c;
        return s;
    }
    friend bool operator==(const ClassCountTable&, const ClassCountTable&) = default;
};

/// Enumerates Av_n(1324), partitioned by first value across `workers`
/// threads (0 = hardware concurrency). The result does not depend on the
/// worker count.
inline ClassCountTable count_table(int n, unsigned workers = 1) {
    if (n < 1) throw std::invalid_argument("count_table needs n >= 1");
    const int width = n + 1;
    struct Partial {
        BigInt total = 0;
        std::vector<BigInt> cells;
    };
    std::vector<Partial> parts(n + 1);
    detail::parallel_over_first_value(n, workers, [&](int first) {
        Partial& part = parts[first];
        part.cells.assign(static_cast<std::size_t>(width) * width, BigInt(0));
        auto visit = [&](std::span<const int>, int max_pos, int a, int a_pos) {
            ++part.total;
            if (max_pos > 0) ++part.cells[static_cast<std::size_t>(a) * width + (max_pos - a_pos)];
        };
        detail::Av1324Walker<decltype(visit)> walker(n, visit);
        walker.run(first);
    });
    ClassCountTable table;
    table.n = n;
    table.total = 0;
    for (int v = 1; v <= n; ++v) {
        const Partial& part = parts[v];
        table.total += part.total;
        for (int a = 1; a <= n; ++a)
            for (int k = 1; k <= n; ++k) {
                const BigInt& c = part.cells[static_cast<std::size_t>(a) * width + k];
                if (c != 0) table.counts[{a, k}] += c;
            }
    }
    return table;
}

/// Number of sigma in S_{n,k}^{2<n}(1324) with sigma(n) = 1.
inline BigInt count_ending_with_one(int n, int k) {
    if (n < 2) throw std::invalid_argument("count_ending_with_one needs n >= 2");
    BigInt count = 0;
    for_each_classified(n, [&](std::span<const int> w, PositionalClass c) {
        if (c.a == 2 && c.k == k && w.back() == 1) ++count;
    });
    return count;
}

} // namespace av1324
