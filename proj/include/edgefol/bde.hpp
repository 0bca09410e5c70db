#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubic.hpp"
#include "error.hpp"
#include "polynomial.hpp"
#include "vec3.hpp"

namespace edgefol {

enum class Provenance { lc, asymptotic, characteristic, synthetic };

constexpr std::string_view to_string(Provenance p) noexcept
{
    switch (p) {
    case Provenance::lc: return "lc";
    case Provenance::asymptotic: return "asymptotic";
    case Provenance::characteristic: return "characteristic";
    case Provenance::synthetic: return "synthetic";
    }
    return "synthetic";
}

/// Binary differential equation A dv^2 + 2B du dv + C du^2 = 0.
struct BdeField {
    Poly2<double> A, B, C;
    Provenance provenance = Provenance::synthetic;

    Poly2<double> delta() const { return B * B - A * C; }

    double scale() const
    {
        return std::max({max_abs_coefficient(A), max_abs_coefficient(B), max_abs_coefficient(C)});
    }
};

inline BdeField make_bde(Poly2<double> a, Poly2<double> b, Poly2<double> c,
                         Provenance provenance = Provenance::synthetic)
{
    return {std::move(a), std::move(b), std::move(c), provenance};
}

struct Tolerances {
    double zero = 1e-10;          ///< origin-case zero tests after normalization
    double discriminant = 1e-9;   ///< |D| of the unit-normalized cubic
    double common_root = 1e-9;    ///< |alpha(p_i)| relative to alpha's coefficients
};

// ---------------------------------------------------------------------------
// Origin case
// ---------------------------------------------------------------------------

enum class OriginCase { Case1Regular, Case1Discriminant, Case2Transverse, Case2Tangent, Case3 };

constexpr std::string_view to_string(OriginCase c) noexcept
{
    switch (c) {
    case OriginCase::Case1Regular: return "Case1Regular";
    case OriginCase::Case1Discriminant: return "Case1Discriminant";
    case OriginCase::Case2Transverse: return "Case2Transverse";
    case OriginCase::Case2Tangent: return "Case2Tangent";
    case OriginCase::Case3: return "Case3";
    }
    return "Case3";
}

struct CaseResult {
    Poly2<double> delta;
    OriginCase origin_case = OriginCase::Case3;
    /// Unit (du, dv) of the unique direction at the origin in Case 2.
    std::optional<std::array<double, 2>> unique_direction;
};

inline CaseResult delta_and_case(const BdeField& bde, const Tolerances& tol = {})
{
    CaseResult out;
    out.delta = bde.delta();
    const double s = bde.scale();
    if (s == 0.0) {
        out.origin_case = OriginCase::Case3;
        return out;
    }
    const double a0 = bde.A.coeff(0, 0) / s;
    const double b0 = bde.B.coeff(0, 0) / s;
    const double c0 = bde.C.coeff(0, 0) / s;
    if (std::max({std::abs(a0), std::abs(b0), std::abs(c0)}) <= tol.zero) {
        out.origin_case = OriginCase::Case3;
        return out;
    }
    const double d0 = b0 * b0 - a0 * c0;
    if (d0 > tol.zero) {
        out.origin_case = OriginCase::Case1Regular;
        return out;
    }
    if (d0 < -tol.zero) {
        out.origin_case = OriginCase::Case1Discriminant;
        return out;
    }

    const double du = out.delta.coeff(1, 0) / (s * s);
    const double dv = out.delta.coeff(0, 1) / (s * s);
    const double grad = std::hypot(du, dv);
    if (grad <= tol.zero)
        throw Error(ErrorKind::DegenerateDiscriminant, "delta(0) = 0 with vanishing gradient");

    // A dv^2 + 2B du dv + C du^2 = 0 with B^2 = AC has the double direction
    // (A, -B) or equivalently (-B, C); use the better conditioned one.
    std::array<double, 2> dir = std::abs(a0) >= std::abs(c0) ? std::array<double, 2>{a0, -b0}
                                                              : std::array<double, 2>{-b0, c0};
    const double len = std::hypot(dir[0], dir[1]);
    dir = {dir[0] / len, dir[1] / len};
    out.unique_direction = dir;
    const double along = (du * dir[0] + dv * dir[1]) / grad;
    out.origin_case = std::abs(along) > tol.zero ? OriginCase::Case2Transverse : OriginCase::Case2Tangent;
    return out;
}

/// det Hess delta at the origin.
inline double delta_hessian_determinant(const Poly2<double>& delta)
{
    const double duu = 2.0 * delta.coeff(2, 0);
    const double duv = delta.coeff(1, 1);
    const double dvv = 2.0 * delta.coeff(0, 2);
    return duu * dvv - duv * duv;
}

namespace detail {

inline double det4(std::array<std::array<double, 4>, 4> m)
{
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col]))
                pivot = r;
        if (m[pivot][col] == 0.0)
            return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int k = col; k < 4; ++k)
                m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

} // namespace detail

/// Resultant-type determinant built from the first partials of (A, 2B, C) at
/// the origin; nonzero means the lifted surface is smooth over a Type 2 point.
inline double mmfd_determinant(const BdeField& bde)
{
    const double au = bde.A.coeff(1, 0), bu = 2.0 * bde.B.coeff(1, 0), cu = bde.C.coeff(1, 0);
    const double av = bde.A.coeff(0, 1), bv = 2.0 * bde.B.coeff(0, 1), cv = bde.C.coeff(0, 1);
    return detail::det4({{{au, bu, cu, 0.0}, {0.0, au, bu, cu}, {av, bv, cv, 0.0}, {0.0, av, bv, cv}}});
}

// ---------------------------------------------------------------------------
// Lifted surface and field
// ---------------------------------------------------------------------------

/// Affine chart on the projectivized direction. In `du_dv` the fibre
/// coordinate is s = du/dv and F = A + 2B s + C s^2; in `dv_du` it is
/// s = dv/du and F = A s^2 + 2B s + C.
enum class Chart { du_dv, dv_du };

constexpr std::string_view to_string(Chart c) noexcept { return c == Chart::du_dv ? "du_dv" : "dv_du"; }
constexpr Chart dual(Chart c) noexcept { return c == Chart::du_dv ? Chart::dv_du : Chart::du_dv; }

/// F(u, v, s) = P0 + P1 s + P2 s^2 on one chart, with the first and mixed
/// partials of the coefficient polynomials cached for repeated evaluation.
class LiftedEquation {
public:
    LiftedEquation(const BdeField& bde, Chart chart) : chart_(chart)
    {
        if (chart == Chart::du_dv)
            p_ = {bde.A, 2.0 * bde.B, bde.C};
        else
            p_ = {bde.C, 2.0 * bde.B, bde.A};
        for (int k = 0; k < 3; ++k) {
            pu_[k] = p_[k].diff_u();
            pv_[k] = p_[k].diff_v();
        }
    }

    Chart chart() const noexcept { return chart_; }
    const std::array<Poly2<double>, 3>& coefficient_polynomials() const noexcept { return p_; }

    double value(double u, double v, double s) const { return p_[0](u, v) + s * (p_[1](u, v) + s * p_[2](u, v)); }

    /// (F_u, F_v, F_s).
    Vec3 gradient(double u, double v, double s) const
    {
        return {pu_[0](u, v) + s * (pu_[1](u, v) + s * pu_[2](u, v)),
                pv_[0](u, v) + s * (pv_[1](u, v) + s * pv_[2](u, v)), p_[1](u, v) + 2.0 * s * p_[2](u, v)};
    }

    /// Lifted field, tangent to every level set of F. In du_dv:
    /// (s F_s, F_s, -(s F_u + F_v)); in dv_du: (F_s, s F_s, -(F_u + s F_v)).
    Vec3 field(double u, double v, double s) const
    {
        const Vec3 g = gradient(u, v, s);
        if (chart_ == Chart::du_dv)
            return {s * g[2], g[2], -(s * g[0] + g[1])};
        return {g[2], s * g[2], -(g[0] + s * g[1])};
    }

    /// Cubic whose real roots are the zeros of the field over the origin.
    Poly1<double> phi() const
    {
        if (chart_ == Chart::du_dv)
            return {pv_[0].coeff(0, 0), pu_[0].coeff(0, 0) + pv_[1].coeff(0, 0),
                    pu_[1].coeff(0, 0) + pv_[2].coeff(0, 0), pu_[2].coeff(0, 0)};
        return {pu_[0].coeff(0, 0), pu_[1].coeff(0, 0) + pv_[0].coeff(0, 0), pu_[2].coeff(0, 0) + pv_[1].coeff(0, 0),
                pv_[2].coeff(0, 0)};
    }

    /// Eigenvalue of the linearization along the base direction at a zero
    /// (the other one is -phi').
    Poly1<double> alpha() const
    {
        if (chart_ == Chart::du_dv)
            return {pv_[1].coeff(0, 0), pu_[1].coeff(0, 0) + 2.0 * pv_[2].coeff(0, 0), 2.0 * pu_[2].coeff(0, 0)};
        return {pu_[1].coeff(0, 0), pv_[1].coeff(0, 0) + 2.0 * pu_[2].coeff(0, 0), 2.0 * pv_[2].coeff(0, 0)};
    }

private:
    Chart chart_;
    std::array<Poly2<double>, 3> p_;
    std::array<Poly2<double>, 3> pu_, pv_;
};

inline Vec3 lifted_field(const LiftedEquation& eq, double u, double v, double s) { return eq.field(u, v, s); }

// ---------------------------------------------------------------------------
// Cubic analysis
// ---------------------------------------------------------------------------

enum class LiftedType { saddle, node };

constexpr std::string_view to_string(LiftedType t) noexcept { return t == LiftedType::saddle ? "saddle" : "node"; }

struct RootData {
    double root = 0.0;            ///< fibre coordinate in `chart`
    Chart chart = Chart::du_dv;
    double alpha = 0.0;           ///< alpha(root)
    double minus_phi_prime = 0.0; ///< -phi'(root)
    double eigen_product = 0.0;
    LiftedType lifted_type = LiftedType::node;

    /// The root as a du/dv slope; infinite for the direction dv = 0.
    double slope_du_dv() const
    {
        if (chart == Chart::du_dv)
            return root;
        return root == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / root;
    }
};

struct CubicAnalysis {
    Poly1<double> phi;   ///< in chart du_dv, ascending coefficients
    Poly1<double> alpha; ///< in chart du_dv
    double D = 0.0;
    double D_normalized = 0.0;
    std::vector<RootData> roots; ///< ascending in the du/dv slope
};

namespace detail {

inline RootData root_data(const Poly1<double>& phi, const Poly1<double>& alpha, double root, Chart chart)
{
    RootData r;
    r.root = root;
    r.chart = chart;
    r.alpha = alpha(root);
    r.minus_phi_prime = -phi.derivative()(root);
    r.eigen_product = r.alpha * r.minus_phi_prime;
    r.lifted_type = r.eigen_product < 0.0 ? LiftedType::saddle : LiftedType::node;
    return r;
}

inline double max_abs(const Poly1<double>& p)
{
    double m = 0.0;
    for (double c : p.coefficients())
        m = std::max(m, std::abs(c));
    return m;
}

} // namespace detail

/// Analyzes the zeros of the lifted field over the origin from an explicit
/// cubic and eigenvalue quadratic in chart du_dv. Roots with |p| <= 1 are
/// taken in chart du_dv and the rest in chart dv_du (reversed polynomials), so
/// a root at infinity is handled like any other.
inline CubicAnalysis analyze_cubic(const Poly1<double>& phi, const Poly1<double>& alpha, const Tolerances& tol = {})
{
    CubicAnalysis out;
    out.phi = phi;
    out.alpha = alpha;
    out.D = cubic_discriminant(phi);
    out.D_normalized = normalized_discriminant(phi);
    if (std::abs(out.D_normalized) < tol.discriminant)
        throw Error(ErrorKind::DiscriminantNearZero, "cubic discriminant vanishes within tolerance");

    // In chart dv_du the cubic is the reversal q^3 phi(1/q). The eigenvalue is
    // not the reversal of alpha: recovering the first partials of (A, 2B, C)
    // from (phi, alpha) gives alpha~ = (2 c2 - a1) + (2 c1 - a0) q + 2 c0 q^2,
    // which equals -q alpha(1/q) at every common zero.
    const Poly1<double> phi_dual{phi[3], phi[2], phi[1], phi[0]};
    const Poly1<double> alpha_dual{2.0 * phi[2] - alpha[1], 2.0 * phi[1] - alpha[0], 2.0 * phi[0]};

    for (double p : real_cubic_roots(phi))
        if (std::abs(p) <= 1.0)
            out.roots.push_back(detail::root_data(phi, alpha, p, Chart::du_dv));
    for (double q : real_cubic_roots(phi_dual))
        if (std::abs(q) < 1.0)
            out.roots.push_back(detail::root_data(phi_dual, alpha_dual, q, Chart::dv_du));

    const std::size_t expected = out.D > 0.0 ? 3 : 1;
    if (out.roots.size() != expected)
        throw Error(ErrorKind::DiscriminantNearZero, "root count disagrees with the discriminant sign");

    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootData& a, const RootData& b) { return a.slope_du_dv() < b.slope_du_dv(); });

    const double alpha_scale = std::max(detail::max_abs(alpha), 1e-300);
    for (const RootData& r : out.roots) {
        if (std::abs(r.alpha) <= tol.common_root * alpha_scale)
            throw Error(ErrorKind::CommonRoot, "phi and alpha share a root");
    }
    return out;
}

inline CubicAnalysis cubic_analysis(const BdeField& bde, const Tolerances& tol = {})
{
    const LiftedEquation eq(bde, Chart::du_dv);
    return analyze_cubic(eq.phi(), eq.alpha(), tol);
}

// ---------------------------------------------------------------------------
// Topological class
// ---------------------------------------------------------------------------

struct TopClass {
    enum class Kind {
        RegularPair,
        CuspFamily,
        ThreeSaddles,
        TwoSaddlesOneNode,
        OneSaddleTwoNodes,
        OneSaddle,
        OneNode,
        Degenerate
    };

    Kind kind = Kind::Degenerate;
    std::string reason; ///< only for Degenerate

    static TopClass degenerate(std::string why) { return {Kind::Degenerate, std::move(why)}; }

    friend bool operator==(const TopClass& a, const TopClass& b) { return a.kind == b.kind; }

    /// Saddle count implied by the class; -1 when not a Type 2 class.
    int saddles() const
    {
        switch (kind) {
        case Kind::ThreeSaddles: return 3;
        case Kind::TwoSaddlesOneNode: return 2;
        case Kind::OneSaddleTwoNodes: return 1;
        case Kind::OneSaddle: return 1;
        case Kind::OneNode: return 0;
        default: return -1;
        }
    }
};

constexpr std::string_view to_string(TopClass::Kind k) noexcept
{
    using K = TopClass::Kind;
    switch (k) {
    case K::RegularPair: return "RegularPair";
    case K::CuspFamily: return "CuspFamily";
    case K::ThreeSaddles: return "ThreeSaddles";
    case K::TwoSaddlesOneNode: return "TwoSaddlesOneNode";
    case K::OneSaddleTwoNodes: return "OneSaddleTwoNodes";
    case K::OneSaddle: return "OneSaddle";
    case K::OneNode: return "OneNode";
    case K::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

inline std::string_view to_string(const TopClass& c) noexcept { return to_string(c.kind); }

/// Sign convention: a lifted zero is a saddle iff alpha and -phi' have
/// opposite signs, for both signs of the discriminant.
inline constexpr std::string_view saddle_convention_note =
    "lifted zero is a saddle iff alpha(p_i) * (-phi'(p_i)) < 0 (applied for D > 0 and D < 0 alike)";

/// Topological class of a Type 2 point with det Hess delta < 0.
inline TopClass classify_type2(const CubicAnalysis& analysis, double hess)
{
    using K = TopClass::Kind;
    if (!(hess < 0.0))
        throw Error(ErrorKind::HessianNonNegative, "det Hess delta(0) must be negative");

    int negative = 0;
    for (const RootData& r : analysis.roots)
        if (r.eigen_product < 0.0)
            ++negative;

    if (analysis.D > 0.0) {
        if (analysis.roots.size() != 3)
            throw Error(ErrorKind::InvariantViolation, "D > 0 requires three real roots");
        switch (negative) {
        case 3: return {K::ThreeSaddles, {}};
        case 2: return {K::TwoSaddlesOneNode, {}};
        case 1: return {K::OneSaddleTwoNodes, {}};
        default:
            throw Error(ErrorKind::InvariantViolation, "three lifted nodes cannot occur when D > 0");
        }
    }
    if (analysis.roots.size() != 1)
        throw Error(ErrorKind::InvariantViolation, "D < 0 requires exactly one real root");
    return negative == 1 ? TopClass{K::OneSaddle, {}} : TopClass{K::OneNode, {}};
}

/// Full classification of an arbitrary BDE at the origin.
inline TopClass classify_bde(const BdeField& bde, const Tolerances& tol = {})
{
    using K = TopClass::Kind;
    try {
        const CaseResult cr = delta_and_case(bde, tol);
        switch (cr.origin_case) {
        case OriginCase::Case1Regular: return {K::RegularPair, {}};
        case OriginCase::Case1Discriminant: return TopClass::degenerate("no real directions at the origin");
        case OriginCase::Case2Transverse: return {K::CuspFamily, {}};
        case OriginCase::Case2Tangent: return TopClass::degenerate("unique direction tangent to the discriminant");
        case OriginCase::Case3: break;
        }
        const double scale = bde.scale();
        const double mmfd = mmfd_determinant(bde);
        if (scale == 0.0 || std::abs(mmfd) <= tol.zero * std::pow(scale, 4))
            return TopClass::degenerate("lifted surface is singular over the origin");
        return classify_type2(cubic_analysis(bde, tol), delta_hessian_determinant(cr.delta));
    } catch (const Error& e) {
        return TopClass::degenerate(e.what());
    }
}

} // namespace edgefol
