#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "error.hpp"
#include "jet.hpp"
#include "polynomial.hpp"
#include "vec3.hpp"

namespace edgefol {

using PolyVec3 = std::array<Poly2<double>, 3>;

namespace detail {

inline PolyVec3 diff_u(const PolyVec3& f) { return {f[0].diff_u(), f[1].diff_u(), f[2].diff_u()}; }
inline PolyVec3 diff_v(const PolyVec3& f) { return {f[0].diff_v(), f[1].diff_v(), f[2].diff_v()}; }

inline PolyVec3 div_v(const PolyVec3& f)
{
    return {f[0].divided_by_v_power(1), f[1].divided_by_v_power(1), f[2].divided_by_v_power(1)};
}

inline Poly2<double> inner(const PolyVec3& a, const PolyVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline PolyVec3 cross(const PolyVec3& a, const PolyVec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Adds c u^i * h(u) to `out`.
inline void add_shifted(Poly2<double>& out, const Poly1<double>& h, int i, int j, double c = 1.0)
{
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h[k] != 0.0)
            out.add(i + static_cast<int>(k), j, c * h[k]);
}

} // namespace detail

/// The normal-form parametrization f(u, v) as three exact polynomials.
inline PolyVec3 surface_polynomials(const EdgeJet& jet)
{
    PolyVec3 f{Poly2<double>(3), Poly2<double>(3), Poly2<double>(3)};
    f[0].add(1, 0, 1.0);

    f[1].add(2, 0, jet.a20 / 2.0);
    f[1].add(3, 0, jet.a30 / 6.0);
    f[1].add(0, 2, 0.5);

    f[2].add(2, 0, jet.b20 / 2.0);
    f[2].add(3, 0, jet.b30 / 6.0);
    f[2].add(1, 2, jet.b12 / 2.0);
    f[2].add(0, 3, jet.b03 / 6.0);

    const HigherTerms& h = jet.higher;
    detail::add_shifted(f[1], h.h1, 4, 0);
    detail::add_shifted(f[2], h.h2, 4, 0);
    detail::add_shifted(f[2], h.h3, 2, 2);
    detail::add_shifted(f[2], h.h4, 1, 3);
    for (int i = 0; i <= h.h5.degree_bound(); ++i)
        for (int j = 0; i + j <= h.h5.degree_bound(); ++j)
            if (h.h5.coeff(i, j) != 0.0)
                f[2].add(i, j + 4, h.h5.coeff(i, j));
    return f;
}

/// f and its partial derivatives at a point.
struct SurfaceEval {
    Vec3 point{};
    int order = 0;
    std::vector<Vec3> partials; ///< row-major over (i, j) with i + j <= order

    const Vec3& partial(int i, int j) const { return partials.at(static_cast<std::size_t>(i * (order + 1) + j)); }
};

inline SurfaceEval eval_surface(const PolyVec3& f, double u, double v, int order)
{
    if (order < 0 || order > 6)
        throw Error(ErrorKind::InvalidConfig, "derivative order must be in [0, 6]");
    SurfaceEval out;
    out.order = order;
    out.partials.assign(static_cast<std::size_t>((order + 1) * (order + 1)), Vec3{});
    PolyVec3 du = f;
    for (int i = 0; i <= order; ++i) {
        PolyVec3 d = du;
        for (int j = 0; i + j <= order; ++j) {
            out.partials[static_cast<std::size_t>(i * (order + 1) + j)] = {d[0](u, v), d[1](u, v), d[2](u, v)};
            d = detail::diff_v(d);
        }
        du = detail::diff_u(du);
    }
    out.point = out.partials[0];
    return out;
}

inline SurfaceEval eval_surface(const EdgeJet& jet, double u, double v, int order)
{
    return eval_surface(surface_polynomials(jet), u, v, order);
}

/// Exact polynomial fundamental forms. The second form is taken against the
/// scaled normal nu2 = f_u x (f_v / v), which does not vanish on the edge. The
/// tilde quantities are the exact quotients F/v, G/v^2, M2/v and N2/v.
struct FormPolynomials {
    Poly2<double> E, F, G, L2, M2, N2;
    Poly2<double> Ft, Gt, Mt, Nt;
    PolyVec3 nu2;

    const Poly2<double>& Et() const { return E; }
    const Poly2<double>& Lt() const { return L2; }
};

inline FormPolynomials form_polynomials(const PolyVec3& f)
{
    using namespace detail;
    const PolyVec3 fu = diff_u(f);
    const PolyVec3 fv = diff_v(f);
    const PolyVec3 fuu = diff_u(fu);
    const PolyVec3 fuv = diff_v(fu);
    const PolyVec3 fvv = diff_v(fv);

    // fv is divisible by v monomial by monomial, so g = fv / v is exact.
    const PolyVec3 g = div_v(fv);
    const PolyVec3 gu = diff_u(g);
    // fvv - g has no v-free monomials either: for u^i v^j the two
    // contributions are j (j - 1) and j times the same coefficient.
    const PolyVec3 w = div_v({fvv[0] - g[0], fvv[1] - g[1], fvv[2] - g[2]});

    FormPolynomials out;
    out.nu2 = cross(fu, g);
    out.E = inner(fu, fu);
    out.F = inner(fu, fv);
    out.G = inner(fv, fv);
    out.L2 = inner(fuu, out.nu2);
    out.M2 = inner(fuv, out.nu2);
    out.N2 = inner(fvv, out.nu2);
    out.Ft = inner(fu, g);
    out.Gt = inner(g, g);
    out.Mt = inner(gu, out.nu2);
    // <g, nu2> vanishes identically, so N2 = v <w, nu2>.
    out.Nt = inner(w, out.nu2);
    return out;
}

inline FormPolynomials form_polynomials(const EdgeJet& jet) { return form_polynomials(surface_polynomials(jet)); }

struct FormCoefficients {
    double E = 0, F = 0, G = 0, L2 = 0, M2 = 0, N2 = 0;
    double Et = 0, Ft = 0, Gt = 0, Lt = 0, Mt = 0, Nt = 0;
};

inline FormCoefficients evaluate(const FormPolynomials& p, double u, double v)
{
    FormCoefficients c;
    c.E = p.E(u, v);
    c.F = p.F(u, v);
    c.G = p.G(u, v);
    c.L2 = p.L2(u, v);
    c.M2 = p.M2(u, v);
    c.N2 = p.N2(u, v);
    c.Et = c.E;
    c.Ft = p.Ft(u, v);
    c.Gt = p.Gt(u, v);
    c.Lt = c.L2;
    c.Mt = p.Mt(u, v);
    c.Nt = p.Nt(u, v);
    return c;
}

inline FormCoefficients fundamental_forms(const EdgeJet& jet, double u, double v)
{
    return evaluate(form_polynomials(jet), u, v);
}

/// One row of the comparison between the reference Taylor expansions of the
/// fundamental forms (fourth-order symbols set to zero) and direct computation.
struct SeriesRow {
    std::string quantity;
    int u_power = 0;
    int v_power = 0;
    double reference = 0.0;
    double computed = 0.0;
    bool agree = false;
};

namespace detail {

struct ReferenceTerm {
    int i, j;
    double value;
};

/// Reference expansions for h = 0: E, F, G through order 4 and L2, M2, N2
/// through order 2. Monomials not listed have reference value 0.
inline std::vector<std::pair<std::string, std::vector<ReferenceTerm>>> reference_expansions(const EdgeJet& j)
{
    const double a20 = j.a20, a30 = j.a30, b20 = j.b20, b30 = j.b30, b12 = j.b12, b03 = j.b03;
    return {
        {"E",
         {{0, 0, 1.0},
          {2, 0, a20 * a20 + b20 * b20},
          {3, 0, a20 * a30 + b20 * b30},
          {1, 2, b12 * b20},
          {4, 0, 0.25 * (a30 * a30 + b30 * b30)},
          {2, 2, 0.5 * b12 * b30},
          {0, 4, 0.25 * b12 * b12}}},
        {"F",
         {{1, 1, a20},
          {2, 1, 0.5 * a30 + b12 * b20},
          {1, 2, 0.5 * b03 * b20},
          {0, 4, 0.25 * b03 * b12},
          {1, 3, 0.5 * b12 * b12},
          {2, 2, 0.25 * b03 * b30},
          {3, 1, 0.5 * b12 * b30}}},
        {"G", {{0, 2, 1.0}, {0, 4, 0.25 * b03 * b03}, {1, 3, b03 * b12}, {2, 2, b12 * b12}}},
        {"L2",
         {{0, 0, b20}, {1, 0, b30 - a20 * b12}, {0, 1, -0.5 * a20 * b03}, {2, 0, -a30 * b12}, {1, 1, -a30 * b03}}},
        {"M2", {{0, 1, b12}}},
        {"N2", {{0, 1, 0.5 * b03}}},
    };
}

} // namespace detail

/// Compares every Taylor coefficient of the reference expansions against the
/// exact polynomials. Disagreements are reported, never thrown.
inline std::vector<SeriesRow> series_expansion_report(const EdgeJet& jet, double tolerance = 1e-12)
{
    if (!jet.higher.is_zero())
        throw Error(ErrorKind::HigherTermsPresent, "the reference expansions assume h = 0");

    const FormPolynomials forms = form_polynomials(jet);
    auto poly = [&](const std::string& name) -> const Poly2<double>& {
        if (name == "E") return forms.E;
        if (name == "F") return forms.F;
        if (name == "G") return forms.G;
        if (name == "L2") return forms.L2;
        if (name == "M2") return forms.M2;
        return forms.N2;
    };

    std::vector<SeriesRow> rows;
    for (const auto& [name, terms] : detail::reference_expansions(jet)) {
        const int max_order = (name == "E" || name == "F" || name == "G") ? 4 : 2;
        const Poly2<double>& p = poly(name);
        for (int total = 0; total <= max_order; ++total)
            for (int i = total; i >= 0; --i) {
                const int j = total - i;
                double ref = 0.0;
                for (const auto& t : terms)
                    if (t.i == i && t.j == j)
                        ref = t.value;
                const double got = p.coeff(i, j);
                const double scale = std::max({1.0, std::abs(ref), std::abs(got)});
                rows.push_back({name, i, j, ref, got, std::abs(ref - got) <= tolerance * scale});
            }
    }
    return rows;
}

inline std::string series_report_csv(const std::vector<SeriesRow>& rows)
{
    std::string out = "coefficient,reference,computed,flag\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s[u^%d v^%d],%.17g,%.17g,%s\n", r.quantity.c_str(), r.u_power, r.v_power,
                      r.reference, r.computed, r.agree ? "agree" : "disagree");
        out += buf;
    }
    return out;
}

} // namespace edgefol
