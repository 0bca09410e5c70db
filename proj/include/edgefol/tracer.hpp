#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bde.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "surface.hpp"
#include "vec3.hpp"

namespace edgefol {

enum class Termination { box_exit, step_cap, singular_point };

constexpr std::string_view to_string(Termination t) noexcept
{
    switch (t) {
    case Termination::box_exit: return "box_exit";
    case Termination::step_cap: return "step_cap";
    case Termination::singular_point: return "singular_point";
    }
    return "step_cap";
}

/// A point of the lifted surface with its fibre coordinate in `chart`.
struct LiftedPoint {
    double u = 0.0, v = 0.0, s = 0.0;
    Chart chart = Chart::du_dv;

    /// Slope du/dv; infinite for the direction dv = 0.
    double slope_du_dv() const
    {
        if (chart == Chart::du_dv)
            return s;
        return s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
    }

    /// The same point in the other chart; nullopt when s = 0 there.
    std::optional<LiftedPoint> in_chart(Chart c) const
    {
        if (c == chart)
            return *this;
        if (s == 0.0)
            return std::nullopt;
        return LiftedPoint{u, v, 1.0 / s, c};
    }
};

struct CurveSample {
    double t = 0.0; ///< arclength in (u, v, s), signed from the seed
    LiftedPoint point;
};

struct TracedCurve {
    std::vector<CurveSample> samples;
    Chart branch = Chart::du_dv; ///< chart of the seed
    Termination backward_end = Termination::step_cap;
    Termination forward_end = Termination::step_cap;
    bool separatrix = false;
    int seed_index = -1;
    int family = 0; ///< order of the seed direction among the directions at the seed point

    Termination termination() const { return forward_end; }

    std::vector<std::array<double, 2>> projected() const
    {
        std::vector<std::array<double, 2>> out;
        out.reserve(samples.size());
        for (const auto& s : samples)
            out.push_back({s.point.u, s.point.v});
        return out;
    }
};

struct SingularPoint {
    LiftedPoint point;
    LiftedType type = LiftedType::node;
    double alpha = 0.0;
    double minus_phi_prime = 0.0;
};

struct TraceSettings {
    double step = 1e-3;
    int max_steps = 20000;
    double box = 0.5;
    double singular_radius = 1e-5;
    int reproject_every = 50;
    double max_fibre = 1e3;     ///< ChartBreakdown threshold without chart switching
    double switch_fibre = 2.0;  ///< chart switch threshold when switching is allowed
    bool allow_chart_switch = false;
};

/// Both charts of one BDE.
class LiftedPair {
public:
    explicit LiftedPair(const BdeField& bde) : du_dv_(bde, Chart::du_dv), dv_du_(bde, Chart::dv_du) {}

    const LiftedEquation& operator[](Chart c) const { return c == Chart::du_dv ? du_dv_ : dv_du_; }

    double residual(const LiftedPoint& p) const { return (*this)[p.chart].value(p.u, p.v, p.s); }

private:
    LiftedEquation du_dv_, dv_du_;
};

namespace detail {

inline Vec3 unit_field(const LiftedEquation& eq, const Vec3& x, double sign)
{
    const Vec3 f = eq.field(x[0], x[1], x[2]);
    const double n = norm(f);
    if (n == 0.0 || !std::isfinite(n))
        return {0.0, 0.0, 0.0};
    return (sign / n) * f;
}

/// Moves x back to {F = 0}: Newton in the fibre coordinate, or along the full
/// gradient where F_s is too small for that.
inline void project_to_level(const LiftedEquation& eq, Vec3& x, bool fibre_only = false)
{
    for (int it = 0; it < 8; ++it) {
        const double F = eq.value(x[0], x[1], x[2]);
        const Vec3 g = eq.gradient(x[0], x[1], x[2]);
        const double gn2 = dot(g, g);
        if (gn2 == 0.0)
            return;
        if (fibre_only || std::abs(g[2]) >= 1e-3 * std::sqrt(gn2)) {
            if (g[2] == 0.0)
                return;
            x[2] -= F / g[2];
        } else {
            x = x - (F / gn2) * g;
        }
        if (std::abs(F) < 1e-15)
            return;
    }
}

inline double distance(const LiftedPoint& a, const LiftedPoint& b)
{
    const auto bb = b.in_chart(a.chart);
    if (!bb)
        return std::numeric_limits<double>::infinity();
    return norm(Vec3{a.u - bb->u, a.v - bb->v, a.s - bb->s});
}

struct HalfTrace {
    std::vector<LiftedPoint> points;
    Termination end = Termination::step_cap;
};

inline HalfTrace trace_direction(const LiftedPair& pair, LiftedPoint start, double sign, const TraceSettings& cfg,
                                 std::span<const SingularPoint> singular)
{
    HalfTrace out;
    out.points.push_back(start);
    Chart chart = start.chart;
    Vec3 x{start.u, start.v, start.s};
    const double h = cfg.step;
    // A fixed step cannot land inside a 1e-5 ball reliably, so a ball of one
    // step is used once the curve has been outside it; seeds placed closer
    // than that (separatrix seeds) only stop at the small radius or on a
    // direction reversal, which a fixed step produces when it passes a zero.
    const double stop_radius = std::max(cfg.singular_radius, h);
    std::vector<bool> armed;
    for (const SingularPoint& sp : singular)
        armed.push_back(distance(start, sp.point) >= stop_radius);
    Vec3 previous{0.0, 0.0, 0.0};

    for (int k = 0; k < cfg.max_steps; ++k) {
        const LiftedEquation& eq = pair[chart];
        const Vec3 k1 = unit_field(eq, x, sign);
        if (norm(k1) == 0.0 || dot(k1, previous) < 0.0) {
            out.end = Termination::singular_point;
            return out;
        }
        const Vec3 k2 = unit_field(eq, x + (0.5 * h) * k1, sign);
        const Vec3 k3 = unit_field(eq, x + (0.5 * h) * k2, sign);
        const Vec3 k4 = unit_field(eq, x + h * k3, sign);
        Vec3 y = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double reach = std::max(std::abs(y[0]), std::abs(y[1]));
        if (reach > cfg.box) {
            // Clip the step at the boundary and return to the surface with u, v fixed.
            const double before = std::max(std::abs(x[0]), std::abs(x[1]));
            double lam = 1.0;
            for (int c = 0; c < 2; ++c)
                if (std::abs(y[c]) > cfg.box && y[c] != x[c]) {
                    const double target = std::copysign(cfg.box, y[c]);
                    lam = std::min(lam, (target - x[c]) / (y[c] - x[c]));
                }
            lam = std::clamp(lam, 0.0, 1.0);
            if (before >= cfg.box)
                lam = 0.0;
            Vec3 z = x + lam * (y - x);
            project_to_level(eq, z, true);
            out.points.push_back({z[0], z[1], z[2], chart});
            out.end = Termination::box_exit;
            return out;
        }

        x = y;
        if ((k + 1) % cfg.reproject_every == 0)
            project_to_level(eq, x);

        if (std::abs(x[2]) > (cfg.allow_chart_switch ? cfg.switch_fibre : cfg.max_fibre)) {
            if (!cfg.allow_chart_switch)
                throw Error(ErrorKind::ChartBreakdown, "fibre coordinate left the chart; re-seed in the dual chart");
            project_to_level(eq, x);
            const Vec3 before = eq.field(x[0], x[1], x[2]);
            const Chart next = dual(chart);
            Vec3 z{x[0], x[1], 1.0 / x[2]};
            const Vec3 after = pair[next].field(z[0], z[1], z[2]);
            if (before[0] * after[0] + before[1] * after[1] < 0.0)
                sign = -sign;
            chart = next;
            x = z;
            project_to_level(pair[chart], x);
        }

        const LiftedPoint here{x[0], x[1], x[2], chart};
        out.points.push_back(here);
        previous = unit_field(pair[chart], x, sign);
        for (std::size_t i = 0; i < singular.size(); ++i) {
            const double d = distance(here, singular[i].point);
            if (d < cfg.singular_radius || (armed[i] && d < stop_radius)) {
                out.end = Termination::singular_point;
                return out;
            }
            if (d >= stop_radius)
                armed[i] = true;
        }
    }
    out.end = Termination::step_cap;
    return out;
}

inline TracedCurve join_halves(const HalfTrace& back, const HalfTrace& fwd, Chart branch)
{
    TracedCurve c;
    c.branch = branch;
    c.backward_end = back.end;
    c.forward_end = fwd.end;
    auto step_length = [](const LiftedPoint& a, const LiftedPoint& b) {
        const auto bb = b.in_chart(a.chart);
        if (bb)
            return norm(Vec3{a.u - bb->u, a.v - bb->v, a.s - bb->s});
        return std::hypot(a.u - b.u, a.v - b.v);
    };
    double t = 0.0;
    std::vector<CurveSample> rev;
    rev.reserve(back.points.size());
    rev.push_back({0.0, back.points.front()});
    for (std::size_t i = 1; i < back.points.size(); ++i) {
        t -= step_length(back.points[i], back.points[i - 1]);
        rev.push_back({t, back.points[i]});
    }
    std::reverse(rev.begin(), rev.end());
    c.samples = std::move(rev);
    t = 0.0;
    for (std::size_t i = 1; i < fwd.points.size(); ++i) {
        t += step_length(fwd.points[i], fwd.points[i - 1]);
        c.samples.push_back({t, fwd.points[i]});
    }
    return c;
}

} // namespace detail

/// Traces the integral curve of the lifted field through `seed`, both ways.
inline TracedCurve integrate_lifted(const LiftedPair& pair, const LiftedPoint& seed, const TraceSettings& cfg,
                                    std::span<const SingularPoint> singular = {})
{
    if (!(cfg.step > 0.0) || cfg.max_steps <= 0 || !(cfg.box > 0.0))
        throw Error(ErrorKind::InvalidConfig, "step, max_steps and box must be positive");
    const double r = pair.residual(seed);
    if (!(std::abs(r) <= 1e-8))
        throw Error(ErrorKind::SeedOffSurface, "seed residual exceeds 1e-8");
    const detail::HalfTrace back = detail::trace_direction(pair, seed, -1.0, cfg, singular);
    const detail::HalfTrace fwd = detail::trace_direction(pair, seed, 1.0, cfg, singular);
    return detail::join_halves(back, fwd, seed.chart);
}

/// Single-chart form: the curve must stay in eq's chart.
inline TracedCurve integrate_lifted(const LiftedEquation& eq, const BdeField& bde, const Vec3& seed, double step,
                                    int max_steps, double box, std::span<const SingularPoint> singular = {})
{
    TraceSettings cfg;
    cfg.step = step;
    cfg.max_steps = max_steps;
    cfg.box = box;
    cfg.allow_chart_switch = false;
    return integrate_lifted(LiftedPair(bde), LiftedPoint{seed[0], seed[1], seed[2], eq.chart()}, cfg, singular);
}

// ---------------------------------------------------------------------------
// Discriminant locus
// ---------------------------------------------------------------------------

using Polyline2 = std::vector<std::array<double, 2>>;

/// Zero set of `f` on [-box, box]^2 by marching squares on an n x n cell grid,
/// chained into polylines.
inline std::vector<Polyline2> marching_squares(const Poly2<double>& f, double box, int n)
{
    if (n < 2)
        throw Error(ErrorKind::InvalidConfig, "grid must have at least 2 cells per side");
    const double h = 2.0 * box / n;
    std::vector<double> val(static_cast<std::size_t>((n + 1) * (n + 1)));
    auto at = [&](int i, int j) -> double& { return val[static_cast<std::size_t>(j * (n + 1) + i)]; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            at(i, j) = f(-box + i * h, -box + j * h);

    // Edge ids: horizontal edge (i, j)-(i+1, j) -> 2 * (j * (n + 1) + i); vertical (i, j)-(i, j+1) -> +1.
    auto hid = [n](int i, int j) { return 2L * (j * (n + 1) + i); };
    auto vid = [n](int i, int j) { return 2L * (j * (n + 1) + i) + 1; };
    std::map<long, std::array<double, 2>> pos;
    auto crossing = [&](long id, double x0, double y0, double f0, double x1, double y1, double f1) {
        if (!pos.count(id)) {
            const double t = f0 / (f0 - f1);
            pos[id] = {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
        }
        return id;
    };

    std::vector<std::array<long, 2>> segs;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x0 = -box + i * h, y0 = -box + j * h, x1 = x0 + h, y1 = y0 + h;
            const double f00 = at(i, j), f10 = at(i + 1, j), f11 = at(i + 1, j + 1), f01 = at(i, j + 1);
            const int code = (f00 > 0) | ((f10 > 0) << 1) | ((f11 > 0) << 2) | ((f01 > 0) << 3);
            if (code == 0 || code == 15)
                continue;
            std::vector<long> e;
            auto edge = [&](int which) {
                switch (which) {
                case 0: return crossing(hid(i, j), x0, y0, f00, x1, y0, f10);         // bottom
                case 1: return crossing(vid(i + 1, j), x1, y0, f10, x1, y1, f11);     // right
                case 2: return crossing(hid(i, j + 1), x0, y1, f01, x1, y1, f11);     // top
                default: return crossing(vid(i, j), x0, y0, f00, x0, y1, f01);        // left
                }
            };
            auto sign_change = [](double a, double b) { return (a > 0) != (b > 0); };
            const bool sb = sign_change(f00, f10), sr = sign_change(f10, f11), st = sign_change(f01, f11),
                       sl = sign_change(f00, f01);
            if (sb && sr && st && sl) {
                const double centre = 0.25 * (f00 + f10 + f11 + f01);
                if ((centre > 0) == (f00 > 0)) {
                    segs.push_back({edge(0), edge(1)});
                    segs.push_back({edge(2), edge(3)});
                } else {
                    segs.push_back({edge(0), edge(3)});
                    segs.push_back({edge(1), edge(2)});
                }
                continue;
            }
            if (sb) e.push_back(edge(0));
            if (sr) e.push_back(edge(1));
            if (st) e.push_back(edge(2));
            if (sl) e.push_back(edge(3));
            if (e.size() == 2)
                segs.push_back({e[0], e[1]});
        }

    std::map<long, std::vector<std::size_t>> incident;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        incident[segs[k][0]].push_back(k);
        incident[segs[k][1]].push_back(k);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<Polyline2> lines;
    auto walk = [&](std::size_t k, long from, std::vector<long>& chain) {
        long cur = from;
        while (true) {
            used[k] = true;
            const long next = segs[k][0] == cur ? segs[k][1] : segs[k][0];
            chain.push_back(next);
            cur = next;
            std::optional<std::size_t> nk;
            for (std::size_t c : incident[cur])
                if (!used[c])
                    nk = c;
            if (!nk)
                return;
            k = *nk;
        }
    };
    // Open chains first (start at an edge point with one incident segment), then loops.
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < segs.size(); ++k) {
            if (used[k])
                continue;
            long start = segs[k][0];
            if (pass == 0) {
                if (incident[segs[k][0]].size() == 1)
                    start = segs[k][0];
                else if (incident[segs[k][1]].size() == 1)
                    start = segs[k][1];
                else
                    continue;
            }
            std::vector<long> chain{start};
            walk(k, start, chain);
            Polyline2 line;
            for (long id : chain)
                line.push_back(pos[id]);
            lines.push_back(std::move(line));
        }
    return lines;
}

// ---------------------------------------------------------------------------
// Portrait
// ---------------------------------------------------------------------------

struct PortraitConfig {
    double box = 0.5;
    int seeds_per_side = 24;
    double step = 1e-3;
    int max_steps = 20000;
    double separatrix_offset = 1e-4;
    int grid = 512;
    unsigned workers = 1;
};

struct Portrait {
    std::vector<TracedCurve> curves;
    std::vector<SingularPoint> singular_points;
    std::vector<Polyline2> discriminant_locus;
    double box = 0.5;
    TopClass top_class;
    OriginCase origin_case = OriginCase::Case1Regular;
    int failed_curves = 0;

    std::size_t separatrix_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(curves.begin(), curves.end(), [](const TracedCurve& c) { return c.separatrix; }));
    }
};

/// Points of the lifted surface over (u, v), one per real direction, each in
/// the chart where its fibre coordinate is at most 1 in magnitude.
inline std::vector<LiftedPoint> fibre_points(const BdeField& bde, double u, double v)
{
    const double a = bde.A(u, v), b = bde.B(u, v), c = bde.C(u, v);
    std::vector<LiftedPoint> out;
    for (double s : detail::quadratic_roots(c, 2.0 * b, a)) // C s^2 + 2B s + A, s = du/dv
        if (std::abs(s) <= 1.0)
            out.push_back({u, v, s, Chart::du_dv});
    for (double q : detail::quadratic_roots(a, 2.0 * b, c)) // A q^2 + 2B q + C, q = dv/du
        if (std::abs(q) < 1.0)
            out.push_back({u, v, q, Chart::dv_du});
    return out;
}

/// Eigen-directions of the lifted field at a zero over the origin, in ambient
/// (u, v, s) coordinates of the zero's chart: the fibre direction (eigenvalue
/// -phi') and the transverse one (eigenvalue alpha).
inline std::array<Vec3, 2> singular_eigenvectors(const BdeField& bde, const SingularPoint& sp)
{
    const LiftedEquation eq(bde, sp.point.chart);
    const auto& P = eq.coefficient_polynomials();
    const double s = sp.point.s;
    auto second = [&](int i, int j) {
        double acc = 0.0;
        for (int k = 2; k >= 0; --k)
            acc = acc * s + P[static_cast<std::size_t>(k)].coeff(i, j) * (i == 2 || j == 2 ? 2.0 : 1.0);
        return acc;
    };
    const double Fuu = second(2, 0), Fuv = second(1, 1), Fvv = second(0, 2);
    const double a = sp.alpha, m = sp.minus_phi_prime;
    if (sp.point.chart == Chart::du_dv) {
        // (v, s) coordinates with u_v = s: row two of the Jacobian is (g21, -phi').
        const double g21 = -(s * s * Fuu + 2.0 * s * Fuv + Fvv);
        Vec3 e{s * (a - m), a - m, g21};
        return {Vec3{0.0, 0.0, 1.0}, (1.0 / norm(e)) * e};
    }
    // (u, q) coordinates with v_u = q.
    const double g21 = -(Fuu + 2.0 * s * Fuv + s * s * Fvv);
    Vec3 e{a - m, s * (a - m), g21};
    return {Vec3{0.0, 0.0, 1.0}, (1.0 / norm(e)) * e};
}

inline std::vector<SingularPoint> singular_points_of(const CubicAnalysis& analysis)
{
    std::vector<SingularPoint> out;
    for (const RootData& r : analysis.roots)
        out.push_back({LiftedPoint{0.0, 0.0, r.root, r.chart}, r.lifted_type, r.alpha, r.minus_phi_prime});
    return out;
}

inline Portrait trace_portrait(const BdeField& bde, const PortraitConfig& cfg = {})
{
    if (!(cfg.box > 0.0) || cfg.box > 2.0 || cfg.seeds_per_side <= 0 || !(cfg.step > 0.0) || cfg.max_steps <= 0)
        throw Error(ErrorKind::InvalidConfig, "portrait settings must be positive with box <= 2");

    Portrait out;
    out.box = cfg.box;
    out.top_class = classify_bde(bde);
    try {
        out.origin_case = delta_and_case(bde).origin_case;
    } catch (const Error&) {
        out.origin_case = OriginCase::Case2Tangent;
    }

    if (out.origin_case == OriginCase::Case3 && out.top_class.kind != TopClass::Kind::Degenerate)
        out.singular_points = singular_points_of(cubic_analysis(bde));

    struct Seed {
        LiftedPoint point;
        bool separatrix;
        int family = 0;
    };
    std::vector<Seed> seeds;
    const int n = cfg.seeds_per_side;
    for (int side = 0; side < 4; ++side)
        for (int k = 0; k < n; ++k) {
            const double t = -cfg.box + (k + 0.5) * (2.0 * cfg.box / n);
            double u = 0, v = 0;
            switch (side) {
            case 0: u = t; v = -cfg.box; break;
            case 1: u = cfg.box; v = t; break;
            case 2: u = -t; v = cfg.box; break;
            default: u = -cfg.box; v = -t; break;
            }
            auto pts = fibre_points(bde, u, v);
            // Families ordered by the angle of (du, dv) in [0, pi).
            auto angle = [](const LiftedPoint& p) {
                const double a = p.chart == Chart::du_dv ? std::atan2(1.0, p.s) : std::atan2(p.s, 1.0);
                return a < 0.0 ? a + std::numbers::pi : a;
            };
            std::sort(pts.begin(), pts.end(),
                      [&](const LiftedPoint& a, const LiftedPoint& b) { return angle(a) < angle(b); });
            for (std::size_t f = 0; f < pts.size(); ++f)
                seeds.push_back({pts[f], false, static_cast<int>(f)});
        }

    const LiftedPair pair(bde);
    for (const SingularPoint& sp : out.singular_points) {
        if (sp.type != LiftedType::saddle)
            continue;
        const auto dirs = singular_eigenvectors(bde, sp);
        for (const Vec3& d : dirs)
            for (double sgn : {1.0, -1.0}) {
                Vec3 x = Vec3{sp.point.u, sp.point.v, sp.point.s} + (sgn * cfg.separatrix_offset) * d;
                detail::project_to_level(pair[sp.point.chart], x, true);
                seeds.push_back({LiftedPoint{x[0], x[1], x[2], sp.point.chart}, true, 0});
            }
    }

    TraceSettings ts;
    ts.step = cfg.step;
    ts.max_steps = cfg.max_steps;
    ts.box = cfg.box;
    ts.allow_chart_switch = true;

    std::vector<std::optional<TracedCurve>> slots(seeds.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t k = begin; k < seeds.size(); k += stride) {
            try {
                TracedCurve c = integrate_lifted(pair, seeds[k].point, ts, out.singular_points);
                c.separatrix = seeds[k].separatrix;
                c.family = seeds[k].family;
                c.seed_index = static_cast<int>(k);
                slots[k] = std::move(c);
            } catch (const Error&) {
            }
        }
    };
    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w, workers);
        for (auto& t : pool)
            t.join();
    }
    for (auto& s : slots) {
        if (s)
            out.curves.push_back(std::move(*s));
        else
            ++out.failed_curves;
    }

    out.discriminant_locus = marching_squares(bde.delta(), cfg.box, cfg.grid);
    return out;
}

// ---------------------------------------------------------------------------
// Surface image
// ---------------------------------------------------------------------------

struct Polyline3 {
    enum class Role { curve, separatrix, edge };
    std::vector<Vec3> points;
    Role role = Role::curve;
};

inline std::vector<Polyline3> project_to_surface(const EdgeJet& jet, const Portrait& portrait, int edge_samples = 201)
{
    const PolyVec3 f = surface_polynomials(jet);
    auto map = [&f](double u, double v) { return Vec3{f[0](u, v), f[1](u, v), f[2](u, v)}; };
    std::vector<Polyline3> out;
    for (const TracedCurve& c : portrait.curves) {
        Polyline3 p;
        p.role = c.separatrix ? Polyline3::Role::separatrix : Polyline3::Role::curve;
        p.points.reserve(c.samples.size());
        for (const CurveSample& s : c.samples)
            p.points.push_back(map(s.point.u, s.point.v));
        out.push_back(std::move(p));
    }
    Polyline3 edge;
    edge.role = Polyline3::Role::edge;
    for (int k = 0; k < edge_samples; ++k) {
        const double u = -portrait.box + 2.0 * portrait.box * k / (edge_samples - 1);
        edge.points.push_back(map(u, 0.0));
    }
    out.push_back(std::move(edge));
    return out;
}

/// Columns t, u, v, p, x, y, z, curve_id, separatrix; p is the du/dv slope.
inline std::string curves_csv(const EdgeJet& jet, const Portrait& portrait)
{
    const PolyVec3 f = surface_polynomials(jet);
    std::string out = "t,u,v,p,x,y,z,curve_id,separatrix\n";
    char buf[256];
    for (std::size_t id = 0; id < portrait.curves.size(); ++id) {
        const TracedCurve& c = portrait.curves[id];
        for (const CurveSample& s : c.samples) {
            const double u = s.point.u, v = s.point.v;
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%zu,%d\n", s.t, u, v,
                          s.point.slope_du_dv(), f[0](u, v), f[1](u, v), f[2](u, v), id, c.separatrix ? 1 : 0);
            out += buf;
        }
    }
    return out;
}

} // namespace edgefol
