#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bde.hpp"
#include "closed_forms.hpp"
#include "jet.hpp"
#include "surface.hpp"

namespace edgefol {

enum class FoliationKind { LinesOfCurvature, Asymptotic, Characteristic };

constexpr std::string_view to_string(FoliationKind k) noexcept
{
    switch (k) {
    case FoliationKind::LinesOfCurvature: return "lc";
    case FoliationKind::Asymptotic: return "asymptotic";
    case FoliationKind::Characteristic: return "characteristic";
    }
    return "lc";
}

inline std::optional<FoliationKind> parse_foliation_kind(std::string_view s)
{
    if (s == "lc" || s == "lines-of-curvature" || s == "principal")
        return FoliationKind::LinesOfCurvature;
    if (s == "asymptotic" || s == "as")
        return FoliationKind::Asymptotic;
    if (s == "characteristic" || s == "ch")
        return FoliationKind::Characteristic;
    return std::nullopt;
}

struct BuildOptions {
    int truncation = 6; ///< total degree kept in the coefficients; negative keeps everything
};

/// The v-factored equation of the requested foliation, built from the exact
/// fundamental-form polynomials.
///
///  lines of curvature: (v (Ft Nt - v Gt Mt), (E Nt - v Gt L2) / 2, E Mt - Ft L2)
///  asymptotic:         (N2, M2, L2)
///  characteristic:     the cubic-in-(L, M, N) equation divided by v
inline BdeField build_geometric_bde(const FormPolynomials& forms, FoliationKind kind, const BuildOptions& opts = {})
{
    const int deg = opts.truncation < 0 ? 1 << 20 : opts.truncation;
    auto mul = [deg](const Poly2<double>& a, const Poly2<double>& b) { return Poly2<double>::multiply(a, b, deg); };
    auto tv = [deg](const Poly2<double>& a) { return a.times_v_power(1).truncated(deg); };

    const Poly2<double>& E = forms.E;
    const Poly2<double>& Ft = forms.Ft;
    const Poly2<double>& Gt = forms.Gt;
    const Poly2<double>& L = forms.L2;
    const Poly2<double>& Mt = forms.Mt;
    const Poly2<double>& Nt = forms.Nt;

    switch (kind) {
    case FoliationKind::LinesOfCurvature: {
        Poly2<double> a = tv(mul(Ft, Nt) - tv(mul(Gt, Mt)));
        Poly2<double> b = 0.5 * (mul(E, Nt) - tv(mul(Gt, L)));
        Poly2<double> c = mul(E, Mt) - mul(Ft, L);
        return make_bde(a.truncated(deg), b.truncated(deg), c.truncated(deg), Provenance::lc);
    }
    case FoliationKind::Asymptotic:
        return make_bde(forms.N2.truncated(deg), forms.M2.truncated(deg), forms.L2.truncated(deg),
                        Provenance::asymptotic);
    case FoliationKind::Characteristic: {
        const Poly2<double> GM = mul(Gt, Mt);
        const Poly2<double> LN = mul(L, Nt);
        // a = v (E Nt^2 - v (Gt L Nt + 2 Ft Mt Nt) + 2 v^2 Gt Mt^2)
        Poly2<double> a = mul(E, mul(Nt, Nt)) - tv(mul(Gt, LN) + 2.0 * mul(Ft, mul(Mt, Nt)))
                          + 2.0 * tv(tv(mul(GM, Mt)));
        a = tv(a);
        // b = v (-2 Ft L Nt + E Mt Nt + v Gt L Mt)
        Poly2<double> b = tv(-2.0 * mul(Ft, LN) + mul(E, mul(Mt, Nt)) + tv(mul(GM, L)));
        // c = -E L Nt + v (Gt L^2 - 2 Ft L Mt + 2 E Mt^2)
        Poly2<double> c = -mul(E, LN) + tv(mul(Gt, mul(L, L)) - 2.0 * mul(Ft, mul(L, Mt)) + 2.0 * mul(E, mul(Mt, Mt)));
        return make_bde(a.truncated(deg), b.truncated(deg), c.truncated(deg), Provenance::characteristic);
    }
    }
    return {};
}

inline BdeField build_geometric_bde(const EdgeJet& jet, FoliationKind kind, const BuildOptions& opts = {})
{
    return build_geometric_bde(form_polynomials(jet), kind, opts);
}

// ---------------------------------------------------------------------------
// Closed-form analysis
// ---------------------------------------------------------------------------

struct HypothesisCheck {
    bool b20_zero = false;
    bool slope_nonzero = false;    ///< b30 - a20 b12 != 0
    bool disc_nonzero = false;     ///< D != 0
    bool parallel_nonzero = false; ///< 4 b12^3 + b03^2 b30 != 0

    bool all() const { return b20_zero && slope_nonzero && disc_nonzero && parallel_nonzero; }

    std::string failures() const
    {
        std::string s;
        auto add = [&s](bool ok, const char* what) {
            if (!ok)
                s += s.empty() ? what : std::string(", ") + what;
        };
        add(b20_zero, "b20=0");
        add(slope_nonzero, "b30-a20*b12!=0");
        add(disc_nonzero, "D!=0");
        add(parallel_nonzero, "4*b12^3+b03^2*b30!=0");
        return s;
    }
};

struct ClosedForms {
    Poly1<double> phi;
    Poly1<double> alpha;
    double D = 0.0;
};

inline ClosedForms closed_forms(const EdgeJet& jet, FoliationKind kind)
{
    const auto c = jet.coefficients();
    if (kind == FoliationKind::Asymptotic)
        return {asymptotic_phi(c), asymptotic_alpha(c), asymptotic_discriminant(c)};
    return {characteristic_phi(c), characteristic_alpha(c), characteristic_discriminant(c)};
}

inline double leading_scale(const EdgeJet& jet)
{
    double s = 0.0;
    for (double x : {jet.a20, jet.b30, jet.b12, jet.b03})
        s = std::max(s, std::abs(x));
    return std::max(s, 1e-300);
}

inline HypothesisCheck check_hypotheses(const EdgeJet& jet, FoliationKind kind, const Tolerances& tol = {})
{
    const auto c = jet.coefficients();
    const double s = leading_scale(jet);
    HypothesisCheck h;
    h.b20_zero = std::abs(jet.b20) <= 1e-12 * jet.scale();
    h.slope_nonzero = std::abs(limiting_curvature_slope(c)) > tol.discriminant * s * s;
    h.parallel_nonzero = std::abs(parallel_surface_factor(c)) > tol.discriminant * s * s * s;
    const ClosedForms cf = closed_forms(jet, kind == FoliationKind::LinesOfCurvature ? FoliationKind::Asymptotic : kind);
    h.disc_nonzero = std::abs(normalized_discriminant(cf.phi)) >= tol.discriminant;
    return h;
}

/// Cubic analysis of the asymptotic or characteristic equation from the
/// closed-form cubic and eigenvalue quadratic. Requires b20 = 0.
inline CubicAnalysis closed_form_analysis(const EdgeJet& jet, FoliationKind kind, const Tolerances& tol = {})
{
    if (kind == FoliationKind::LinesOfCurvature)
        throw Error(ErrorKind::InvalidConfig, "closed forms exist for asymptotic and characteristic curves only");
    const HypothesisCheck h = check_hypotheses(jet, kind, tol);
    if (!h.all())
        throw Error(ErrorKind::PropositionHypothesisViolated, "failing: " + h.failures());
    const ClosedForms cf = closed_forms(jet, kind);
    CubicAnalysis a = analyze_cubic(cf.phi, cf.alpha, tol);
    a.D = cf.D;
    return a;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct EdgeInvariants {
    double b20 = 0.0;
    double slope = 0.0;           ///< b30 - a20 b12
    double parallel_factor = 0.0; ///< 4 b12^3 + b03^2 b30
    std::optional<double> D;
    Poly1<double> phi;
    Poly1<double> alpha;
    std::vector<RootData> roots;
    std::optional<double> hessian; ///< det Hess delta(0)
};

struct EdgeClassification {
    FoliationKind kind = FoliationKind::LinesOfCurvature;
    TopClass top_class;
    OriginCase origin_case = OriginCase::Case1Regular;
    EdgeInvariants invariants;
    std::string convention_note{saddle_convention_note};
};

inline EdgeClassification classify_edge_foliation(const EdgeJet& jet, FoliationKind kind, const Tolerances& tol = {})
{
    using K = TopClass::Kind;
    EdgeClassification out;
    out.kind = kind;
    const auto c = jet.coefficients();
    out.invariants.b20 = jet.b20;
    out.invariants.slope = limiting_curvature_slope(c);
    out.invariants.parallel_factor = parallel_surface_factor(c);

    if (kind == FoliationKind::LinesOfCurvature) {
        out.top_class = {K::RegularPair, {}};
        out.origin_case = OriginCase::Case1Regular;
        return out;
    }

    const ClosedForms cf = closed_forms(jet, kind);
    out.invariants.phi = cf.phi;
    out.invariants.alpha = cf.alpha;

    const bool b20_zero = std::abs(jet.b20) <= 1e-12 * jet.scale();
    if (!b20_zero) {
        out.top_class = {K::CuspFamily, {}};
        out.origin_case = OriginCase::Case2Transverse;
        return out;
    }

    out.origin_case = OriginCase::Case3;
    out.invariants.D = cf.D;
    try {
        const CubicAnalysis a = closed_form_analysis(jet, kind, tol);
        out.invariants.roots = a.roots;
        const BdeField bde = build_geometric_bde(jet, kind, BuildOptions{3});
        const double hess = delta_hessian_determinant(bde.delta());
        out.invariants.hessian = hess;
        out.top_class = classify_type2(a, hess);
    } catch (const Error& e) {
        out.top_class = TopClass::degenerate(e.what());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Genericity
// ---------------------------------------------------------------------------

struct GenericityReport {
    double b20 = 0.0;
    bool applicable = false; ///< every stratum requires b20 = 0
    double slope = 0.0;
    double asymptotic_disc = 0.0;
    double parallel_factor = 0.0;
    double characteristic_disc = 0.0;
    bool slope_zero = false;
    bool asymptotic_disc_zero = false;
    bool parallel_zero = false;
    bool characteristic_disc_zero = false;

    bool in_nongeneric_set() const
    {
        return applicable && (slope_zero || asymptotic_disc_zero || parallel_zero || characteristic_disc_zero);
    }
};

inline GenericityReport genericity_membership(const EdgeJet& jet, double tolerance = 1e-9)
{
    const auto c = jet.coefficients();
    GenericityReport r;
    r.b20 = jet.b20;
    r.applicable = std::abs(jet.b20) <= tolerance;
    if (!r.applicable)
        return r;
    r.slope = limiting_curvature_slope(c);
    r.asymptotic_disc = asymptotic_discriminant(c);
    r.parallel_factor = parallel_surface_factor(c);
    r.characteristic_disc = characteristic_discriminant(c);
    r.slope_zero = std::abs(r.slope) <= tolerance;
    r.asymptotic_disc_zero = std::abs(r.asymptotic_disc) <= tolerance;
    r.parallel_zero = std::abs(r.parallel_factor) <= tolerance;
    r.characteristic_disc_zero = std::abs(r.characteristic_disc) <= tolerance;
    return r;
}

} // namespace edgefol
