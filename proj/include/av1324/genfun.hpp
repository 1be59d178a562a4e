#pragma once

#include <chrono>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "avoiders.hpp"
#include "count_cache.hpp"
#include "series.hpp"

namespace av1324 {

// ---------------------------------------------------------------------------
// Closed forms and series assembly.

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// |S_{n,1}^{1<n}(1324)| = 2(3n-3)! / ((2n-1)! n!), n >= 2.
inline BigInt primitive_count(int n) {
    if (n < 2) throw std::invalid_argument("primitive_count needs n >= 2");
    const BigInt num = 2 * factorial(3 * n - 3);
    const BigInt den = factorial(2 * n - 1) * factorial(n);
    if (num % den != 0) throw std::logic_error("closed form is not integral");
    return num / den;
}

/// f(x) = sum_{m>=1} |S_{m+1,1}^{1<m+1}(1324)| x^m, truncated at x^N.
inline TruncatedSeries f_series(int order) {
    if (order < 1) throw std::invalid_argument("f_series needs order >= 1");
    TruncatedSeries f(order);
    for (int m = 1; m <= order; ++m) f[m] = Rational(primitive_count(m + 1));
    return f;
}

namespace detail {
inline BigInt a_nk(int n, int k, std::map<std::pair<int, int>, BigInt>& memo) {
    if (k == 1) return primitive_count(n);
    if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
    BigInt s = 0;
    for (int m = 2; m <= n - k + 1; ++m) s += primitive_count(m) * a_nk(n - m + 1, k - 1, memo);
    memo[{n, k}] = s;
    return s;
}
} // namespace detail

/// a_{n,k} = sum_{m=2}^{n-k+1} a_{m,1} a_{n-m+1,k-1}, bottoming out at the
/// closed form for k = 1. Valid for n >= 2, 1 <= k <= n-1.
inline BigInt a_nk_recurrence(int n, int k) {
    if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("a_nk_recurrence: (n,k) out of range");
    std::map<std::pair<int, int>, BigInt> memo;
    return detail::a_nk(n, k, memo);
}

/// T_{1,k}(x) = x f(x)^k.
inline TruncatedSeries t1k_series(int k, int order) {
    if (k < 0) throw std::invalid_argument("negative k");
    if (k == 0) return TruncatedSeries::monomial(1, order);
    return shift(pow(f_series(order), k), 1).truncated(order);
}

/// g_1(x,t) = x t f(x) / (1 - t f(x)).
inline BivariateSeries g1_series(int order_x, int order_t) {
    const TruncatedSeries f = f_series(std::max(order_x, 1));
    const BivariateSeries tf = shift(BivariateSeries::from_x(f, order_t), 0, 1).truncated(f.order(), order_t);
    const BivariateSeries xtf = shift(tf, 1, 0);
    return (xtf * geometric_inverse(tf)).truncated(order_x, order_t);
}

/// The same function assembled term by term as sum_k t^k T_{1,k}(x).
inline BivariateSeries g1_from_t1k(int order_x, int order_t) {
    BivariateSeries g(order_x, order_t);
    for (int k = 1; k <= order_t; ++k) {
        const TruncatedSeries t = t1k_series(k, order_x);
        for (int n = 0; n <= order_x; ++n) g(n, k) = t[n];
    }
    return g;
}

/// g_2 by its two derivations:
///   statement: (x^2 d/dx g1 - g1^2) / 2
///   pde:       (x^2 d/dx g1 + x g1 - t x d/dt g1) / 2
struct G2Routes {
    BivariateSeries statement;
    BivariateSeries pde;
};

inline G2Routes g2_routes(int order_x, int order_t) {
    const BivariateSeries g1 = g1_series(order_x + 1, order_t + 1);
    const Rational half(1, 2);
    const BivariateSeries x2_dg1 = shift(dx(g1), 2, 0);
    G2Routes r;
    r.statement = (half * (x2_dg1 - g1 * g1)).truncated(order_x, order_t);
    r.pde = (half * (x2_dg1 + shift(g1, 1, 0) - shift(dt(g1), 1, 1))).truncated(order_x, order_t);
    return r;
}

inline BivariateSeries g2_series(int order_x, int order_t) {
    G2Routes r = g2_routes(order_x, order_t);
    if (!(r.statement == r.pde)) throw std::logic_error("g2 assembly routes disagree");
    return r.statement;
}

/// T_{2,0} = x^2, T_{2,1} = x^2 (x f)' / 2, and for k >= 2
/// T_{2,k} = f^k T_{2,0} + k f^{k-1} (T_{2,1} - f T_{2,0}).
inline TruncatedSeries t2k_series(int k, int order) {
    if (k < 0) throw std::invalid_argument("negative k");
    const TruncatedSeries t20 = TruncatedSeries::monomial(2, order);
    if (k == 0) return t20;
    const TruncatedSeries f = f_series(std::max(order, 1));
    const TruncatedSeries t21 =
        (Rational(1, 2) * shift(dx(shift(f, 1)), 2)).truncated(order);
    if (k == 1) return t21;
    const TruncatedSeries fo = f.truncated(order);
    return pow(fo, k) * t20 + Rational(k) * pow(fo, k - 1) * (t21 - fo * t20);
}

/// T_{a,k}(x) read off the enumeration tables up to x^N. For k = 0 the
/// convention is T_{1,0} = x and T_{a,0} = |S_{a-1}(1324)| x^a.
inline TruncatedSeries t_ak_bruteforce(CountOracle& oracle, int a, int k, int order) {
    if (a < 1 || k < 0) throw std::invalid_argument("t_ak_bruteforce: bad (a,k)");
    if (k == 0) {
        if (a == 1) return TruncatedSeries::monomial(1, order);
        return TruncatedSeries::monomial(a, order, Rational(oracle.total(a - 1)));
    }
    TruncatedSeries s(order);
    for (int n = 1; n <= order; ++n) s[n] = Rational(oracle.count(n, a, k));
    return s;
}

// ---------------------------------------------------------------------------
// Identity reports.

struct ResidualTerm {
    int n;
    int k;
    Rational value;
    friend bool operator==(const ResidualTerm&, const ResidualTerm&) = default;
};

/// Outcome of one exact identity check. `pass` holds iff every residual
/// coefficient is zero; the residual is kept in full either way.
struct IdentityReport {
    std::string identity;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    bool pass = false;
    std::vector<ResidualTerm> residual;
    long long millis = 0;

    void add_residual(const TruncatedSeries& s, int k) {
        for (int n = 0; n <= s.order(); ++n) residual.push_back({n, k, s[n]});
    }
    void add_residual(const BivariateSeries& b) {
        for (int n = 0; n <= b.order_x(); ++n)
            for (int k = 0; k <= b.order_t(); ++k) residual.push_back({n, k, b(n, k)});
    }
    void settle() {
        pass = true;
        for (const auto& r : residual)
            if (r.value != 0) pass = false;
    }
};

inline nlohmann::ordered_json to_json(const IdentityReport& r, bool with_timing = true) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["params"] = r.params;
    j["pass"] = r.pass;
    auto res = nlohmann::ordered_json::array();
    for (const auto& t : r.residual) res.push_back(nlohmann::ordered_json::array({t.n, t.k, t.value.str()}));
    j["residual"] = std::move(res);
    if (with_timing) j["millis"] = r.millis;
    return j;
}

namespace detail {
class Stopwatch {
public:
    long long millis() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};
} // namespace detail

/// The three conjectured forms for T_{a,k}, k >= a, plus two consistency
/// checks between them. Every T_{a,j} input comes from enumeration.
struct ConjectureResult {
    IdentityReport form_i;       // sum_j (-1)^j C(k,j) f^j T_{a,k-j}
    IdentityReport form_ii;      // prediction (ii) - T_{a,k}
    IdentityReport form_iii;     // prediction (iii) - T_{a,k}
    IdentityReport ii_vs_iii;    // prediction (ii) - prediction (iii)
    IdentityReport i_on_ii;      // form (i) with T_{a,m}, a <= m <= k, replaced by prediction (ii)

    bool pass() const {
        return form_i.pass && form_ii.pass && form_iii.pass && ii_vs_iii.pass && i_on_ii.pass;
    }
    std::vector<const IdentityReport*> reports() const {
        return {&form_i, &form_ii, &form_iii, &ii_vs_iii, &i_on_ii};
    }
};

namespace detail {

// Prediction (ii): sum_{j<a} C(k,j) f^{k-j} sum_{i<=j} (-1)^i C(j,i) f^i T_{a,j-i}.
inline TruncatedSeries conjecture_form_ii(const std::vector<TruncatedSeries>& t, const TruncatedSeries& f, int a,
                                          int k) {
    TruncatedSeries out(f.order());
    for (int j = 0; j <= std::min(a - 1, k); ++j) {
        TruncatedSeries inner(f.order());
        for (int i = 0; i <= j; ++i) {
            Rational c(binomial(j, i));
            if (i & 1) c = -c;
            inner += c * pow(f, i) * t[j - i];
        }
        out += Rational(binomial(k, j)) * pow(f, k - j) * inner;
    }
    return out;
}

// Prediction (iii): sum_{j<a} (-1)^{a-j-1} C(k,j) C(k-j-1,a-j-1) f^{k-j} T_{a,j}.
inline TruncatedSeries conjecture_form_iii(const std::vector<TruncatedSeries>& t, const TruncatedSeries& f, int a,
                                           int k) {
    TruncatedSeries out(f.order());
    for (int j = 0; j <= a - 1; ++j) {
        Rational c(binomial(k, j) * binomial(k - j - 1, a - j - 1));
        if ((a - j - 1) & 1) c = -c;
        out += c * pow(f, k - j) * t[j];
    }
    return out;
}

inline TruncatedSeries conjecture_form_i(const std::vector<TruncatedSeries>& t, const TruncatedSeries& f, int k) {
    TruncatedSeries out(f.order());
    for (int j = 0; j <= k; ++j) {
        Rational c(binomial(k, j));
        if (j & 1) c = -c;
        out += c * pow(f, j) * t[k - j];
    }
    return out;
}

} // namespace detail

inline ConjectureResult conjecture_check(CountOracle& oracle, int a, int k, int order) {
    if (a < 1) throw std::invalid_argument("conjecture_check needs a >= 1");
    if (k < a) throw std::invalid_argument("conjecture_check needs k >= a");
    detail::Stopwatch clock;
    const TruncatedSeries f = f_series(std::max(order, 1)).truncated(order);
    std::vector<TruncatedSeries> t;
    for (int j = 0; j <= k; ++j) t.push_back(t_ak_bruteforce(oracle, a, j, order));

    auto make = [&](const std::string& name, const TruncatedSeries& residual) {
        IdentityReport r;
        r.identity = name;
        r.params["a"] = a;
        r.params["k"] = k;
        r.params["order"] = order;
        r.add_residual(residual, k);
        r.settle();
        return r;
    };

    const TruncatedSeries p2 = detail::conjecture_form_ii(t, f, a, k);
    const TruncatedSeries p3 = detail::conjecture_form_iii(t, f, a, k);
    std::vector<TruncatedSeries> predicted = t;
    for (int m = a; m <= k; ++m) predicted[m] = detail::conjecture_form_ii(t, f, a, m);

    ConjectureResult out;
    out.form_i = make("conjecture_form_i", detail::conjecture_form_i(t, f, k));
    out.form_ii = make("conjecture_form_ii", p2 - t[k]);
    out.form_iii = make("conjecture_form_iii", p3 - t[k]);
    out.ii_vs_iii = make("conjecture_ii_vs_iii", p2 - p3);
    out.i_on_ii = make("conjecture_i_on_ii_predictions", detail::conjecture_form_i(predicted, f, k));
    const long long ms = clock.millis();
    for (IdentityReport* r : {&out.form_i, &out.form_ii, &out.form_iii, &out.ii_vs_iii, &out.i_on_ii}) r->millis = ms;
    return out;
}

/// G = x + x G + sum_a g_a(x,1) coefficientwise, i.e. for 2 <= n <= N,
/// |S_n| = |S_{n-1}| + sum_{a,k} |S_{n,k}^{a<n}|. The residual is
/// G - x - xG - sum_a g_a(x,1), checked from x^0.
inline IdentityReport g_identity_check(CountOracle& oracle, int order) {
    if (order < 1) throw std::invalid_argument("g_identity_check needs order >= 1");
    detail::Stopwatch clock;
    TruncatedSeries g(order), classified(order);
    for (int n = 1; n <= order; ++n) {
        const ClassCountTable& t = oracle.table(n);
        g[n] = Rational(t.total);
        classified[n] = Rational(t.classified_sum());
    }
    const TruncatedSeries x = TruncatedSeries::monomial(1, order);
    const TruncatedSeries residual = g - x - shift(g, 1).truncated(order) - classified;
    IdentityReport r;
    r.identity = "g_identity";
    r.params["order"] = order;
    r.add_residual(residual, 0);
    r.settle();
    r.millis = clock.millis();
    return r;
}

} // namespace av1324
