#pragma once

// Truncated bivariate Taylor arithmetic ("jets").
//
// A Jet2 of order m at base point (u0, v0) stores the normalized Taylor
// coefficients  c_{ab} = d^{a+b} f / (du^a dv^b) (u0, v0) / (a! b!)  for all
// a + b <= m, so there are (m+1)(m+2)/2 of them.  Coefficients are kept in
// graded lexicographic order: total degree ascending, and within one degree
// the u-exponent a descending, i.e. (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
// The flat index of (a,b) is tri(a+b) + b with tri(d) = d(d+1)/2.
//
// Arithmetic is exact polynomial arithmetic truncated at total degree m, so a
// coefficient of the result equals the corresponding derivative of the exact
// composition; truncating inputs first and operating is the same as operating
// and truncating after (coherence).  Binary operations insist on equal orders
// and identical base points (MismatchedJets) -- use truncated() or the loose_*
// helpers to mix orders deliberately.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace beltrami {

constexpr int kMaxJetOrder = 64;
constexpr double kDefaultEpsDiv = 1e-12;

namespace detail {

inline constexpr std::size_t tri(int d) {
    return static_cast<std::size_t>(d) * (d + 1) / 2;
}

inline constexpr std::size_t jet_size(int order) {
    return tri(order + 1);
}

// exponent pair and total degree for each flat coefficient index
struct ExpEntry {
    int a, b, deg;
};

inline const std::vector<ExpEntry>& exp_table() {
    static const std::vector<ExpEntry> table = [] {
        std::vector<ExpEntry> t;
        t.reserve(jet_size(kMaxJetOrder));
        for (int d = 0; d <= kMaxJetOrder; ++d)
            for (int b = 0; b <= d; ++b) t.push_back({d - b, b, d});
        return t;
    }();
    return table;
}

inline std::size_t coeff_index(int a, int b) {
    return tri(a + b) + static_cast<std::size_t>(b);
}

} // namespace detail

enum class Var { u, v };

class Jet2 {
public:
    Jet2() : order_(0), u0_(0), v0_(0), c_(1, 0.0) {}

    static Jet2 constant(int order, double u0, double v0, double value) {
        Jet2 j(order, u0, v0);
        j.c_[0] = value;
        return j;
    }

    // The coordinate function u as a jet: value u0, du = 1.
    static Jet2 variable_u(int order, double u0, double v0) {
        Jet2 j(order, u0, v0);
        j.c_[0] = u0;
        if (order >= 1) j.c_[detail::coeff_index(1, 0)] = 1.0;
        return j;
    }

    static Jet2 variable_v(int order, double u0, double v0) {
        Jet2 j(order, u0, v0);
        j.c_[0] = v0;
        if (order >= 1) j.c_[detail::coeff_index(0, 1)] = 1.0;
        return j;
    }

    int order() const { return order_; }
    double base_u() const { return u0_; }
    double base_v() const { return v0_; }
    std::size_t size() const { return c_.size(); }

    double value() const { return c_[0]; }

    // normalized Taylor coefficient c_{ab} = f_{(a,b)} / (a! b!)
    double coeff(int a, int b) const {
        check_exponents(a, b);
        return c_[detail::coeff_index(a, b)];
    }
    double& coeff(int a, int b) {
        check_exponents(a, b);
        return c_[detail::coeff_index(a, b)];
    }
    double coeff_at(std::size_t flat) const { return c_[flat]; }

    // raw partial derivative d^{a+b} f / du^a dv^b at the base point
    double derivative(int a, int b) const {
        double f = coeff(a, b);
        for (int i = 2; i <= a; ++i) f *= i;
        for (int i = 2; i <= b; ++i) f *= i;
        return f;
    }

    Jet2 truncated(int new_order) const {
        if (new_order < 0 || new_order > order_)
            throw OrderExhausted("truncated: requested order " + std::to_string(new_order) +
                                 " outside [0, " + std::to_string(order_) + "]");
        Jet2 out(new_order, u0_, v0_);
        std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
        return out;
    }

    Jet2 operator-() const {
        Jet2 out = *this;
        for (double& x : out.c_) x = -x;
        return out;
    }

    Jet2& operator+=(const Jet2& rhs) {
        check_compatible(rhs, "+");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
        return *this;
    }
    Jet2& operator-=(const Jet2& rhs) {
        check_compatible(rhs, "-");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
        return *this;
    }
    Jet2& operator*=(double s) {
        for (double& x : c_) x *= s;
        return *this;
    }
    Jet2& operator+=(double s) {
        c_[0] += s;
        return *this;
    }
    Jet2& operator-=(double s) {
        c_[0] -= s;
        return *this;
    }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator+(Jet2 a, double s) { return a += s; }
    friend Jet2 operator+(double s, Jet2 a) { return a += s; }
    friend Jet2 operator-(Jet2 a, double s) { return a -= s; }
    friend Jet2 operator-(double s, const Jet2& a) { return (-a) += s; }
    friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
    friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
    friend Jet2 operator/(Jet2 a, double s) { return a *= (1.0 / s); }

    // truncated product
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        a.check_compatible(b, "*");
        const auto& tab = detail::exp_table();
        Jet2 out(a.order_, a.u0_, a.v0_);
        const int m = a.order_;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            const double ca = a.c_[i];
            if (ca == 0.0) continue;
            const auto& ea = tab[i];
            const std::size_t jmax = detail::jet_size(m - ea.deg);
            for (std::size_t j = 0; j < jmax; ++j) {
                const double cb = b.c_[j];
                if (cb == 0.0) continue;
                const auto& eb = tab[j];
                out.c_[detail::tri(ea.deg + eb.deg) + static_cast<std::size_t>(ea.b + eb.b)] +=
                    ca * cb;
            }
        }
        return out;
    }

    bool same_frame(const Jet2& o) const {
        return order_ == o.order_ && u0_ == o.u0_ && v0_ == o.v0_;
    }

private:
    Jet2(int order, double u0, double v0) : order_(order), u0_(u0), v0_(v0) {
        if (order < 0 || order > kMaxJetOrder)
            throw OrderExhausted("jet order " + std::to_string(order) + " outside [0, " +
                                 std::to_string(kMaxJetOrder) + "]");
        c_.assign(detail::jet_size(order), 0.0);
    }

    void check_exponents(int a, int b) const {
        if (a < 0 || b < 0 || a + b > order_)
            throw OrderExhausted("coefficient (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") outside order-" + std::to_string(order_) + " jet");
    }

    void check_compatible(const Jet2& rhs, const char* op) const {
        if (!same_frame(rhs))
            throw MismatchedJets(std::string("operator") + op + ": orders (" +
                                 std::to_string(order_) + " vs " + std::to_string(rhs.order_) +
                                 ") or base points differ");
    }

    int order_;
    double u0_, v0_;
    std::vector<double> c_;

    friend Jet2 derive(const Jet2&, Var);
};

// Partial derivative: an order-(m-1) jet, coefficients shifted and scaled by
// the exponent, c'_{ab} = (a+1) c_{a+1,b} for d/du (and symmetrically for v).
inline Jet2 derive(const Jet2& f, Var dir) {
    if (f.order() < 1) throw OrderExhausted("derive: order-0 jet has no derivatives left");
    Jet2 out = Jet2::constant(f.order() - 1, f.base_u(), f.base_v(), 0.0);
    for (int a = 0; a + 0 <= out.order(); ++a)
        for (int b = 0; a + b <= out.order(); ++b)
            out.c_[detail::coeff_index(a, b)] =
                (dir == Var::u) ? (a + 1) * f.coeff(a + 1, b) : (b + 1) * f.coeff(a, b + 1);
    return out;
}

namespace detail {

// Composition g = sum_k d_k * s^k where s = f - f.value() has no constant
// term, so s^(m+1) truncates to zero and the sum is exact at order m.
// series(k) must return F^{(k)}(f.value()) / k!.
template <class SeriesFn>
Jet2 compose_series(const Jet2& f, SeriesFn series) {
    const int m = f.order();
    Jet2 s = f;
    s -= f.value();
    Jet2 acc = Jet2::constant(m, f.base_u(), f.base_v(), series(0));
    Jet2 pw = s;
    for (int k = 1; k <= m; ++k) {
        acc += pw * series(k);
        if (k < m) pw = pw * s;
    }
    return acc;
}

} // namespace detail

// 1 / f.  Requires |f(base)| > eps_div.
inline Jet2 recip(const Jet2& f, double eps_div = kDefaultEpsDiv) {
    const double f0 = f.value();
    if (std::abs(f0) <= eps_div)
        throw DivisionNearZero("recip: jet value " + std::to_string(f0) + " within eps_div " +
                               std::to_string(eps_div) + " of zero");
    // 1/(f0+s) = sum_k (-1)^k s^k / f0^{k+1}
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    d[0] = 1.0 / f0;
    for (std::size_t k = 1; k < d.size(); ++k) d[k] = -d[k - 1] / f0;
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }

inline Jet2 sin(const Jet2& f) {
    const double s0 = std::sin(f.value()), c0 = std::cos(f.value());
    const double cyc[4] = {s0, c0, -s0, -c0};
    double kfac = 1.0;
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (k > 1) kfac *= k;
        else kfac = 1.0;
        d[k] = cyc[k % 4] / kfac;
    }
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

inline Jet2 cos(const Jet2& f) {
    const double s0 = std::sin(f.value()), c0 = std::cos(f.value());
    const double cyc[4] = {c0, -s0, -c0, s0};
    double kfac = 1.0;
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (k > 1) kfac *= k;
        else kfac = 1.0;
        d[k] = cyc[k % 4] / kfac;
    }
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

inline Jet2 exp(const Jet2& f) {
    const double e0 = std::exp(f.value());
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    d[0] = e0;
    for (std::size_t k = 1; k < d.size(); ++k) d[k] = d[k - 1] / static_cast<double>(k);
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

inline Jet2 cosh(const Jet2& f) {
    const double ch = std::cosh(f.value()), sh = std::sinh(f.value());
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    double kfac = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (k > 1) kfac *= k;
        d[k] = ((k % 2 == 0) ? ch : sh) / kfac;
    }
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

inline Jet2 sinh(const Jet2& f) {
    const double ch = std::cosh(f.value()), sh = std::sinh(f.value());
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    double kfac = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (k > 1) kfac *= k;
        d[k] = ((k % 2 == 0) ? sh : ch) / kfac;
    }
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

// sqrt requires value > eps_div; F^{(k)}/k! follows the binomial-series ratio.
inline Jet2 sqrt(const Jet2& f, double eps_div = kDefaultEpsDiv) {
    const double f0 = f.value();
    if (f0 <= eps_div)
        throw DomainError("sqrt: jet value " + std::to_string(f0) + " not positive");
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    d[0] = std::sqrt(f0);
    for (std::size_t k = 1; k < d.size(); ++k)
        d[k] = d[k - 1] * (0.5 - (static_cast<double>(k) - 1.0)) / (static_cast<double>(k) * f0);
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

// natural logarithm, value > eps_div required
inline Jet2 log(const Jet2& f, double eps_div = kDefaultEpsDiv) {
    const double f0 = f.value();
    if (f0 <= eps_div)
        throw DomainError("log: jet value " + std::to_string(f0) + " not positive");
    std::vector<double> d(static_cast<std::size_t>(f.order()) + 1);
    d[0] = std::log(f0);
    double p = 1.0; // f0^k
    for (std::size_t k = 1; k < d.size(); ++k) {
        p *= f0;
        d[k] = ((k % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(k) * p);
    }
    return detail::compose_series(f, [&](int k) { return d[k]; });
}

enum class Elem { sin, cos, exp, sqrt, cosh, sinh, ln };

inline Jet2 elementary(Elem kind, const Jet2& f) {
    switch (kind) {
        case Elem::sin: return sin(f);
        case Elem::cos: return cos(f);
        case Elem::exp: return exp(f);
        case Elem::sqrt: return sqrt(f);
        case Elem::cosh: return cosh(f);
        case Elem::sinh: return sinh(f);
        case Elem::ln: return log(f);
    }
    throw BadParameter("elementary: unknown kind");
}

// --- loose helpers ------------------------------------------------------------
// Deliberate mixed-order combination: truncate both operands to the smaller
// order first.  Geometry code uses these where operands legitimately carry
// different amounts of derivative information.

inline Jet2 loose_mul(const Jet2& a, const Jet2& b) {
    const int m = std::min(a.order(), b.order());
    return (a.order() == m ? a : a.truncated(m)) * (b.order() == m ? b : b.truncated(m));
}

inline Jet2 loose_add(const Jet2& a, const Jet2& b) {
    const int m = std::min(a.order(), b.order());
    return (a.order() == m ? a : a.truncated(m)) + (b.order() == m ? b : b.truncated(m));
}

inline Jet2 loose_sub(const Jet2& a, const Jet2& b) {
    const int m = std::min(a.order(), b.order());
    return (a.order() == m ? a : a.truncated(m)) - (b.order() == m ? b : b.truncated(m));
}

} // namespace beltrami
