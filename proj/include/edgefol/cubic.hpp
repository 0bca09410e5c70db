#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "polynomial.hpp"

namespace edgefol {

/// Discriminant of c3 p^3 + c2 p^2 + c1 p + c0.
template <typename T>
T cubic_discriminant(const T& c3, const T& c2, const T& c1, const T& c0)
{
    return T(18) * c3 * c2 * c1 * c0 - T(4) * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 - T(4) * c3 * c1 * c1 * c1
           - T(27) * c3 * c3 * c0 * c0;
}

template <typename T>
T cubic_discriminant(const Poly1<T>& phi)
{
    return cubic_discriminant(phi[3], phi[2], phi[1], phi[0]);
}

/// Discriminant after scaling the cubic to unit largest coefficient, so that
/// zero tests against it are scale-free.
inline double normalized_discriminant(const Poly1<double>& phi)
{
    double m = 0.0;
    for (int k = 0; k <= 3; ++k)
        m = std::max(m, std::abs(phi[k]));
    if (m == 0.0)
        return 0.0;
    return cubic_discriminant(phi[3] / m, phi[2] / m, phi[1] / m, phi[0] / m);
}

namespace detail {

inline double newton_polish(const Poly1<double>& f, double x)
{
    const Poly1<double> df = f.derivative();
    const double d = df(x);
    if (d == 0.0)
        return x;
    const double y = x - f(x) / d;
    return std::abs(f(y)) <= std::abs(f(x)) ? y : x;
}

inline std::vector<double> quadratic_roots(double a, double b, double c)
{
    if (a == 0.0) {
        if (b == 0.0)
            return {};
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        return {};
    const double s = std::sqrt(disc);
    // Avoid cancellation by pairing the larger-magnitude root with Vieta.
    const double q = -0.5 * (b + std::copysign(s, b));
    std::vector<double> r;
    if (q != 0.0) {
        r = {q / a, c / q};
    } else {
        r = {0.0, 0.0};
    }
    std::sort(r.begin(), r.end());
    return r;
}

} // namespace detail

/// Real roots of c3 p^3 + c2 p^2 + c1 p + c0 in ascending order. The number of
/// roots follows the sign of the discriminant: three when D > 0, one when
/// D <= 0. A vanishing leading coefficient falls back to the quadratic.
inline std::vector<double> real_cubic_roots(const Poly1<double>& phi)
{
    const double c3 = phi[3], c2 = phi[2], c1 = phi[1], c0 = phi[0];
    if (c3 == 0.0)
        return detail::quadratic_roots(c2, c1, c0);

    const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = cubic_discriminant(c3, c2, c1, c0);

    std::vector<double> roots;
    if (disc > 0.0 && p < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    } else {
        const double h = q * q / 4.0 + p * p * p / 27.0;
        const double s = std::sqrt(std::max(h, 0.0));
        const double a = -std::copysign(std::cbrt(std::abs(q) / 2.0 + s), q);
        const double t = a == 0.0 ? 0.0 : a - p / (3.0 * a);
        roots.push_back(t - shift);
    }
    for (double& r : roots)
        r = detail::newton_polish(phi, r);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace edgefol
