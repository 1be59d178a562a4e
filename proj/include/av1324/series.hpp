#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace av1324 {

using Rational = boost::multiprecision::cpp_rational;

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

/// Canonical text of an exact rational: "p" or "p/q".
inline std::string to_string(const Rational& q) { return q.str(); }

/// c_0 + c_1 x + ... + c_N x^N over the rationals, everything above x^N
/// unknown. Binary operations return the smaller of the two orders.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order = 0) : c_(check_order(order) + 1) {}
    explicit TruncatedSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("series needs at least one coefficient");
    }

    static TruncatedSeries constant(const Rational& c, int order) {
        TruncatedSeries s(order);
        s.c_[0] = c;
        return s;
    }
    /// x^d, zero when d > order.
    static TruncatedSeries monomial(int d, int order, const Rational& c = 1) {
        TruncatedSeries s(order);
        if (d <= order) s.c_[d] = c;
        return s;
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int n) const { return c_.at(n); }
    Rational& operator[](int n) { return c_.at(n); }
    /// Coefficient of x^n; throws past the order.
    const Rational& coeff(int n) const {
        if (n < 0 || n > order()) throw std::out_of_range("coefficient beyond truncation order");
        return c_[n];
    }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }
    bool is_integral() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return av1324::is_integral(q); });
    }

    TruncatedSeries truncated(int order) const {
        if (order > this->order()) throw std::invalid_argument("cannot extend a truncated series");
        return TruncatedSeries(std::vector<Rational>(c_.begin(), c_.begin() + check_order(order) + 1));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a) {
        TruncatedSeries r = a;
        for (auto& q : r.c_) q = -q;
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= r.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend TruncatedSeries operator*(const Rational& s, const TruncatedSeries& a) {
        TruncatedSeries r = a;
        for (auto& q : r.c_) q *= s;
        return r;
    }
    TruncatedSeries& operator+=(const TruncatedSeries& b) { return *this = *this + b; }
    TruncatedSeries& operator-=(const TruncatedSeries& b) { return *this = *this - b; }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("negative truncation order");
        return order;
    }
    std::vector<Rational> c_;
};

/// x^d * s; the order grows by d since the product is exact.
inline TruncatedSeries shift(const TruncatedSeries& s, int d) {
    if (d < 0) throw std::invalid_argument("negative shift");
    TruncatedSeries r(s.order() + d);
    for (int i = 0; i <= s.order(); ++i) r[i + d] = s[i];
    return r;
}

inline TruncatedSeries pow(const TruncatedSeries& s, int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    TruncatedSeries result = TruncatedSeries::constant(1, s.order());
    TruncatedSeries base = s;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

/// Formal d/dx; output order is one less.
inline TruncatedSeries dx(const TruncatedSeries& s) {
    if (s.order() < 1) throw std::invalid_argument("derivative of an order-0 series is undetermined");
    TruncatedSeries r(s.order() - 1);
    for (int i = 1; i <= s.order(); ++i) r[i - 1] = Rational(i) * s[i];
    return r;
}

/// 1/(1-u) for u with zero constant term, same order as u.
inline TruncatedSeries geometric_inverse(const TruncatedSeries& u) {
    if (u[0] != 0) throw std::domain_error("geometric_inverse needs a zero constant term");
    const TruncatedSeries one = TruncatedSeries::constant(1, u.order());
    TruncatedSeries y = one;
    // Each pass fixes one more coefficient of y = 1 + u*y.
    for (int i = 0; i < u.order(); ++i) y = one + u * y;
    return y;
}

/// "c0 + c1*x + c2*x^2 + ..." listing nonzero terms; "0" when all vanish.
inline std::string to_string(const TruncatedSeries& s) {
    std::string out;
    for (int i = 0; i <= s.order(); ++i) {
        const Rational& q = s[i];
        if (q == 0) continue;
        std::string c = (q < 0 ? Rational(-q) : q).str();
        std::string term = c;
        if (i == 1) term += "*x";
        if (i > 1) term += "*x^" + std::to_string(i);
        if (out.empty())
            out = (q < 0 ? "-" : "") + term;
        else
            out += (q < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

/// Bivariate analogue in (x, t), truncated independently at x^N and t^K.
class BivariateSeries {
public:
    BivariateSeries(int order_x = 0, int order_t = 0)
        : nx_(check(order_x)), nt_(check(order_t)), c_(static_cast<std::size_t>(nx_ + 1) * (nt_ + 1)) {}

    int order_x() const noexcept { return nx_; }
    int order_t() const noexcept { return nt_; }

    /// Coefficient of x^n t^k.
    const Rational& operator()(int n, int k) const { return c_.at(index(n, k)); }
    Rational& operator()(int n, int k) { return c_.at(index(n, k)); }

    /// Embeds s as the t^0 slice.
    static BivariateSeries from_x(const TruncatedSeries& s, int order_t) {
        BivariateSeries b(s.order(), order_t);
        for (int n = 0; n <= s.order(); ++n) b(n, 0) = s[n];
        return b;
    }
    static BivariateSeries constant(const Rational& c, int order_x, int order_t) {
        BivariateSeries b(order_x, order_t);
        b(0, 0) = c;
        return b;
    }

    /// Coefficient of t^k as a series in x.
    TruncatedSeries t_slice(int k) const {
        TruncatedSeries s(nx_);
        for (int n = 0; n <= nx_; ++n) s[n] = (*this)(n, k);
        return s;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }
    bool is_integral() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return av1324::is_integral(q); });
    }

    BivariateSeries truncated(int order_x, int order_t) const {
        if (order_x > nx_ || order_t > nt_) throw std::invalid_argument("cannot extend a truncated series");
        BivariateSeries r(order_x, order_t);
        for (int n = 0; n <= order_x; ++n)
            for (int k = 0; k <= order_t; ++k) r(n, k) = (*this)(n, k);
        return r;
    }

    friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
        return combine(a, b, [](const Rational& x, const Rational& y) { return x + y; });
    }
    friend BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) {
        return combine(a, b, [](const Rational& x, const Rational& y) { return x - y; });
    }
    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        BivariateSeries r(std::min(a.nx_, b.nx_), std::min(a.nt_, b.nt_));
        for (int n1 = 0; n1 <= r.nx_; ++n1)
            for (int k1 = 0; k1 <= r.nt_; ++k1) {
                const Rational& x = a(n1, k1);
                if (x == 0) continue;
                for (int n2 = 0; n1 + n2 <= r.nx_; ++n2)
                    for (int k2 = 0; k1 + k2 <= r.nt_; ++k2) {
                        const Rational& y = b(n2, k2);
                        if (y != 0) r(n1 + n2, k1 + k2) += x * y;
                    }
            }
        return r;
    }
    friend BivariateSeries operator*(const Rational& s, const BivariateSeries& a) {
        BivariateSeries r = a;
        for (auto& q : r.c_) q *= s;
        return r;
    }

    friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

private:
    static int check(int order) {
        if (order < 0) throw std::invalid_argument("negative truncation order");
        return order;
    }
    std::size_t index(int n, int k) const {
        if (n < 0 || n > nx_ || k < 0 || k > nt_) throw std::out_of_range("coefficient beyond truncation order");
        return static_cast<std::size_t>(n) * (nt_ + 1) + k;
    }
    template <class Op>
    static BivariateSeries combine(const BivariateSeries& a, const BivariateSeries& b, Op op) {
        BivariateSeries r(std::min(a.nx_, b.nx_), std::min(a.nt_, b.nt_));
        for (int n = 0; n <= r.nx_; ++n)
            for (int k = 0; k <= r.nt_; ++k) r(n, k) = op(a(n, k), b(n, k));
        return r;
    }

    int nx_, nt_;
    std::vector<Rational> c_;
};

/// x^dx_shift t^dt_shift * b, exact, orders grow accordingly.
inline BivariateSeries shift(const BivariateSeries& b, int dx_shift, int dt_shift) {
    if (dx_shift < 0 || dt_shift < 0) throw std::invalid_argument("negative shift");
    BivariateSeries r(b.order_x() + dx_shift, b.order_t() + dt_shift);
    for (int n = 0; n <= b.order_x(); ++n)
        for (int k = 0; k <= b.order_t(); ++k) r(n + dx_shift, k + dt_shift) = b(n, k);
    return r;
}

/// d/dx; the x order drops by one.
inline BivariateSeries dx(const BivariateSeries& b) {
    if (b.order_x() < 1) throw std::invalid_argument("derivative of an order-0 series is undetermined");
    BivariateSeries r(b.order_x() - 1, b.order_t());
    for (int n = 1; n <= b.order_x(); ++n)
        for (int k = 0; k <= b.order_t(); ++k) r(n - 1, k) = Rational(n) * b(n, k);
    return r;
}

/// d/dt; the t order drops by one.
inline BivariateSeries dt(const BivariateSeries& b) {
    if (b.order_t() < 1) throw std::invalid_argument("derivative of an order-0 series is undetermined");
    BivariateSeries r(b.order_x(), b.order_t() - 1);
    for (int n = 0; n <= b.order_x(); ++n)
        for (int k = 1; k <= b.order_t(); ++k) r(n, k - 1) = Rational(k) * b(n, k);
    return r;
}

inline BivariateSeries geometric_inverse(const BivariateSeries& u) {
    if (u(0, 0) != 0) throw std::domain_error("geometric_inverse needs a zero constant term");
    const BivariateSeries one = BivariateSeries::constant(1, u.order_x(), u.order_t());
    BivariateSeries y = one;
    for (int i = 0; i < u.order_x() + u.order_t(); ++i) y = one + u * y;
    return y;
}

/// Substitutes t = 1.
inline TruncatedSeries eval_t_one(const BivariateSeries& b) {
    TruncatedSeries s(b.order_x());
    for (int n = 0; n <= b.order_x(); ++n)
        for (int k = 0; k <= b.order_t(); ++k) s[n] += b(n, k);
    return s;
}

/// CSV with one row per power of x and one column per power of t.
inline std::string to_csv(const BivariateSeries& b) {
    std::string out = "n";
    for (int k = 0; k <= b.order_t(); ++k) out += ",k" + std::to_string(k);
    out += '\n';
    for (int n = 0; n <= b.order_x(); ++n) {
        out += std::to_string(n);
        for (int k = 0; k <= b.order_t(); ++k) out += "," + b(n, k).str();
        out += '\n';
    }
    return out;
}

} // namespace av1324
