#pragma once

// Closed-form invariants of the asymptotic and characteristic equations of a
// cuspidal edge with vanishing limiting normal curvature (b20 = 0). All
// functions are generic over the scalar so that they can be checked in exact
// rational arithmetic.

#include "jet.hpp"
#include "polynomial.hpp"

namespace edgefol {

/// b30 - a20 b12: the derivative of the limiting normal curvature along the
/// edge. Its vanishing makes the lifted surface singular.
template <typename T>
T limiting_curvature_slope(const JetCoefficients<T>& c)
{
    return c.b30 - c.a20 * c.b12;
}

/// 4 b12^3 + b03^2 b30. Vanishes exactly when the cubic and the second
/// eigenvalue share a root.
template <typename T>
T parallel_surface_factor(const JetCoefficients<T>& c)
{
    return T(4) * c.b12 * c.b12 * c.b12 + c.b03 * c.b03 * c.b30;
}

template <typename T>
Poly1<T> asymptotic_phi(const JetCoefficients<T>& c)
{
    return {c.b03 / T(2), T(2) * c.b12, -c.a20 * c.b03 / T(2), limiting_curvature_slope(c)};
}

template <typename T>
Poly1<T> asymptotic_alpha(const JetCoefficients<T>& c)
{
    return {T(2) * c.b12, -c.a20 * c.b03, T(2) * limiting_curvature_slope(c)};
}

template <typename T>
T asymptotic_discriminant(const JetCoefficients<T>& c)
{
    const T& a = c.a20;
    const T& b12 = c.b12;
    const T& b03 = c.b03;
    const T& b30 = c.b30;
    const T b03s = b03 * b03;
    const T four_d = a * a * a * b03s * b03s + T(13) * a * a * b03s * b12 * b12
                     - b30 * (T(128) * b12 * b12 * b12 + T(27) * b03s * b30)
                     + T(2) * a * (T(64) * b12 * b12 * b12 * b12 + T(9) * b03s * b12 * b30);
    return four_d / T(4);
}

template <typename T>
Poly1<T> characteristic_phi(const JetCoefficients<T>& c)
{
    const T& b03 = c.b03;
    return {b03 * b03 / T(4), b03 * c.b12, (c.a20 * b03 * b03 + T(8) * c.b12 * c.b12) / T(4),
            -T(2) * b03 * limiting_curvature_slope(c) / T(4)};
}

/// Second eigenvalue for the characteristic equation:
/// 2 alpha = 2 b03 (a20 b12 - b30) p^2 + (a20 b03^2 + 8 b12^2) p + 2 b12 b03.
template <typename T>
Poly1<T> characteristic_alpha(const JetCoefficients<T>& c)
{
    const T& b03 = c.b03;
    return {c.b12 * b03, (c.a20 * b03 * b03 + T(8) * c.b12 * c.b12) / T(2), -b03 * limiting_curvature_slope(c)};
}

/// Half of characteristic_alpha (the same quadratic divided by 4 instead of 2).
/// Only used to report the normalization discrepancy.
template <typename T>
Poly1<T> characteristic_alpha_quarter_variant(const JetCoefficients<T>& c)
{
    Poly1<T> a = characteristic_alpha(c);
    return {a[0] / T(2), a[1] / T(2), a[2] / T(2)};
}

template <typename T>
T characteristic_discriminant(const JetCoefficients<T>& c)
{
    const T& a = c.a20;
    const T& b12 = c.b12;
    const T& b30 = c.b30;
    const T b2 = c.b03 * c.b03;
    const T b4 = b2 * b2;
    const T b6 = b4 * b2;
    const T b12_2 = b12 * b12;
    const T b12_3 = b12_2 * b12;
    const T b12_4 = b12_2 * b12_2;
    const T inner = a * a * a * b6 + T(11) * a * a * b4 * b12_2
                    - T(2) * a * (T(16) * b2 * b12_4 + T(9) * b4 * b12 * b30) + T(256) * b12_4 * b12_2
                    + T(160) * b2 * b12_3 * b30 + T(27) * b4 * b30 * b30;
    return -b2 / T(64) * inner;
}

/// phi_as at the root of p alpha_as(p) - 2 phi_as(p) = -(b03 + 2 b12 p),
/// p = -b03 / (2 b12). Requires b12 != 0.
template <typename T>
T asymptotic_phi_at_torsion_root(const JetCoefficients<T>& c)
{
    return -c.b03 * parallel_surface_factor(c) / (T(8) * c.b12 * c.b12 * c.b12);
}

/// The same value with the b12^3 factor dropped from the first summand:
/// -(1 / (8 b12^3)) b03 (4 + b03^2 b30). Only used in the discrepancy report.
template <typename T>
T asymptotic_phi_at_torsion_root_dropped_factor(const JetCoefficients<T>& c)
{
    return -c.b03 * (T(4) + c.b03 * c.b03 * c.b30) / (T(8) * c.b12 * c.b12 * c.b12);
}

} // namespace edgefol
