#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace edgefol {

/// Univariate polynomial, coefficients in ascending degree.
template <typename T>
class Poly1 {
public:
    Poly1() = default;
    Poly1(std::initializer_list<T> coeffs) : c_(coeffs) {}
    explicit Poly1(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

    std::size_t size() const noexcept { return c_.size(); }
    bool empty() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    T operator[](std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    std::span<const T> coefficients() const noexcept { return c_; }

    template <typename X>
    auto operator()(const X& x) const
    {
        using R = decltype(T(0) * x);
        R acc = R(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    Poly1 derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            d[k - 1] = c_[k] * T(static_cast<int>(k));
        return Poly1(std::move(d));
    }

    friend bool operator==(const Poly1&, const Poly1&) = default;

private:
    std::vector<T> c_;
};

/// Bivariate polynomial in (u, v), dense storage of every monomial u^i v^j with
/// i + j <= degree bound.
template <typename T>
class Poly2 {
public:
    Poly2() : Poly2(0) {}

    explicit Poly2(int degree_bound)
        : n_(std::max(degree_bound, 0)), c_(static_cast<std::size_t>((n_ + 1) * (n_ + 1)), T(0))
    {
    }

    static Poly2 constant(T value)
    {
        Poly2 p(0);
        p.c_[0] = value;
        return p;
    }

    static Poly2 monomial(int i, int j, T value)
    {
        Poly2 p(i + j);
        p.at(i, j) = value;
        return p;
    }

    int degree_bound() const noexcept { return n_; }

    /// Coefficient of u^i v^j; zero outside the stored range.
    T coeff(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > n_)
            return T(0);
        return c_[index(i, j)];
    }

    T& at(int i, int j) { return c_[index(i, j)]; }

    void add(int i, int j, T value)
    {
        if (i + j > n_)
            grow(i + j);
        at(i, j) += value;
    }

    template <typename X>
    auto operator()(const X& u, const X& v) const
    {
        using R = decltype(T(0) * u);
        // Horner in v for each power of u, then Horner in u.
        R outer = R(0);
        for (int i = n_; i >= 0; --i) {
            R inner = R(0);
            for (int j = n_ - i; j >= 0; --j)
                inner = inner * v + c_[index(i, j)];
            outer = outer * u + inner;
        }
        return outer;
    }

    Poly2 diff_u() const
    {
        Poly2 d(std::max(n_ - 1, 0));
        for (int i = 1; i <= n_; ++i)
            for (int j = 0; i + j <= n_; ++j)
                d.at(i - 1, j) = c_[index(i, j)] * T(i);
        return d;
    }

    Poly2 diff_v() const
    {
        Poly2 d(std::max(n_ - 1, 0));
        for (int i = 0; i <= n_; ++i)
            for (int j = 1; i + j <= n_; ++j)
                d.at(i, j - 1) = c_[index(i, j)] * T(j);
        return d;
    }

    /// Quotient by v^k. Monomials with v-degree below k are discarded; callers
    /// use this only where those coefficients vanish identically.
    Poly2 divided_by_v_power(int k) const
    {
        Poly2 q(std::max(n_ - k, 0));
        for (int i = 0; i <= n_; ++i)
            for (int j = k; i + j <= n_; ++j)
                q.at(i, j - k) = c_[index(i, j)];
        return q;
    }

    Poly2 times_v_power(int k) const
    {
        Poly2 q(n_ + k);
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; i + j <= n_; ++j)
                q.at(i, j + k) = c_[index(i, j)];
        return q;
    }

    /// Drops every monomial of total degree above `max_degree`.
    Poly2 truncated(int max_degree) const
    {
        Poly2 t(std::min(n_, std::max(max_degree, 0)));
        for (int i = 0; i <= t.n_; ++i)
            for (int j = 0; i + j <= t.n_; ++j)
                t.at(i, j) = c_[index(i, j)];
        return t;
    }

    /// Smallest degree bound that still holds every nonzero coefficient.
    Poly2 trimmed() const
    {
        int top = 0;
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; i + j <= n_; ++j)
                if (c_[index(i, j)] != T(0))
                    top = std::max(top, i + j);
        return truncated(top);
    }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const T& x) { return x == T(0); });
    }

    Poly2& operator+=(const Poly2& o)
    {
        if (o.n_ > n_)
            grow(o.n_);
        for (int i = 0; i <= o.n_; ++i)
            for (int j = 0; i + j <= o.n_; ++j)
                at(i, j) += o.c_[o.index(i, j)];
        return *this;
    }

    Poly2& operator-=(const Poly2& o)
    {
        if (o.n_ > n_)
            grow(o.n_);
        for (int i = 0; i <= o.n_; ++i)
            for (int j = 0; i + j <= o.n_; ++j)
                at(i, j) -= o.c_[o.index(i, j)];
        return *this;
    }

    Poly2& operator*=(const T& s)
    {
        for (auto& x : c_)
            x *= s;
        return *this;
    }

    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator-(Poly2 a)
    {
        for (auto& x : a.c_)
            x = -x;
        return a;
    }
    friend Poly2 operator*(Poly2 a, const T& s) { return a *= s; }
    friend Poly2 operator*(const T& s, Poly2 a) { return a *= s; }

    friend Poly2 operator*(const Poly2& a, const Poly2& b) { return multiply(a, b, a.n_ + b.n_); }

    /// Product keeping only monomials of total degree <= max_degree.
    static Poly2 multiply(const Poly2& a, const Poly2& b, int max_degree)
    {
        Poly2 r(std::min(a.n_ + b.n_, max_degree));
        for (int i = 0; i <= a.n_; ++i)
            for (int j = 0; i + j <= a.n_; ++j) {
                const T& x = a.c_[a.index(i, j)];
                if (x == T(0))
                    continue;
                for (int k = 0; k <= b.n_ && i + j + k <= r.n_; ++k)
                    for (int l = 0; k + l <= b.n_ && i + j + k + l <= r.n_; ++l)
                        r.at(i + k, j + l) += x * b.c_[b.index(k, l)];
            }
        return r;
    }

private:
    std::size_t index(int i, int j) const noexcept { return static_cast<std::size_t>(i * (n_ + 1) + j); }

    void grow(int new_bound)
    {
        Poly2 g(new_bound);
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; i + j <= n_; ++j)
                g.at(i, j) = c_[index(i, j)];
        *this = std::move(g);
    }

    int n_;
    std::vector<T> c_;
};

/// Largest coefficient magnitude; the usual scale for relative zero tests.
template <typename T>
double max_abs_coefficient(const Poly2<T>& p)
{
    double m = 0.0;
    for (int i = 0; i <= p.degree_bound(); ++i)
        for (int j = 0; i + j <= p.degree_bound(); ++j)
            m = std::max(m, std::abs(static_cast<double>(p.coeff(i, j))));
    return m;
}

} // namespace edgefol
