#pragma once

// Local analysis of the lifted field at a zero over the origin, in the
// parametrization of the lifted surface by (b, s): b = v in chart du_dv and
// b = u in chart dv_du, the remaining base coordinate solved from F = 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bde.hpp"
#include "tracer.hpp"

namespace edgefol {

namespace detail {

/// Ambient point over (b, s), or nullopt when Newton fails. Newton starts
/// from `guess` for the solved coordinate.
inline std::optional<Vec3> lift_param(const LiftedEquation& eq, double b, double s, double guess)
{
    const bool du_dv = eq.chart() == Chart::du_dv;
    double w = guess;
    for (int it = 0; it < 50; ++it) {
        const double u = du_dv ? w : b, v = du_dv ? b : w;
        const double F = eq.value(u, v, s);
        const Vec3 g = eq.gradient(u, v, s);
        const double d = du_dv ? g[0] : g[1];
        if (d == 0.0)
            return std::nullopt;
        const double dw = F / d;
        w -= dw;
        if (std::abs(dw) <= 1e-16 * std::max(1.0, std::abs(w)))
            break;
    }
    const double u = du_dv ? w : b, v = du_dv ? b : w;
    if (!std::isfinite(u) || !std::isfinite(v))
        return std::nullopt;
    return Vec3{u, v, s};
}

inline std::optional<Vec3> lift_param(const LiftedEquation& eq, double b, double s)
{
    return lift_param(eq, b, s, s * b); // u_v = s on the fibre over the origin (v_u = q in the dual chart)
}

/// Lift of (b, s0 + db, s0 + ds) by continuation along the segment from the
/// zero, so the solve stays on the sheet through the zero.
inline std::optional<Vec3> lift_by_continuation(const LiftedEquation& eq, double s0, double db, double ds,
                                                int stages = 16)
{
    double w = 0.0;
    std::optional<Vec3> x;
    for (int k = 1; k <= stages; ++k) {
        const double f = static_cast<double>(k) / stages;
        x = lift_param(eq, f * db, s0 + f * ds, w + (s0 + f * ds) * db / stages);
        if (!x)
            return std::nullopt;
        w = eq.chart() == Chart::du_dv ? (*x)[0] : (*x)[1];
    }
    return x;
}

/// The field expressed in (b, s).
inline std::array<double, 2> param_field(const LiftedEquation& eq, double b, double s)
{
    const auto x = lift_param(eq, b, s);
    if (!x)
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const Vec3 f = eq.field((*x)[0], (*x)[1], (*x)[2]);
    return {eq.chart() == Chart::du_dv ? f[1] : f[0], f[2]};
}

} // namespace detail

/// Central-difference Jacobian of the field on the lifted surface at a zero
/// over the origin, with one Richardson extrapolation step.
inline std::array<std::array<double, 2>, 2> restricted_jacobian(const BdeField& bde, const SingularPoint& sp,
                                                                double h = 1e-3)
{
    const LiftedEquation eq(bde, sp.point.chart);
    const double s0 = sp.point.s;
    auto central = [&](double eta) {
        std::array<std::array<double, 2>, 2> J{};
        const auto fbp = detail::param_field(eq, eta, s0), fbm = detail::param_field(eq, -eta, s0);
        const auto fsp = detail::param_field(eq, 0.0, s0 + eta), fsm = detail::param_field(eq, 0.0, s0 - eta);
        for (int r = 0; r < 2; ++r) {
            J[r][0] = (fbp[r] - fbm[r]) / (2.0 * eta);
            J[r][1] = (fsp[r] - fsm[r]) / (2.0 * eta);
        }
        return J;
    };
    const auto J1 = central(h);
    const auto J2 = central(h / 2.0);
    std::array<std::array<double, 2>, 2> J{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            J[r][c] = (4.0 * J2[r][c] - J1[r][c]) / 3.0;
    return J;
}

/// Eigenvalues of a real 2x2 matrix, ascending by real part.
inline std::array<std::complex<double>, 2> eigenvalues(const std::array<std::array<double, 2>, 2>& J)
{
    const double tr = J[0][0] + J[1][1];
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr / 4.0 - det));
    std::array<std::complex<double>, 2> e{tr / 2.0 - root, tr / 2.0 + root};
    if (e[0].real() > e[1].real())
        std::swap(e[0], e[1]);
    return e;
}

// ---------------------------------------------------------------------------
// Sector counting
// ---------------------------------------------------------------------------

struct SectorConfig {
    int ring_seeds = 48;
    double max_radius = 1e-3;    ///< ring radius cap, in eigen-coordinates
    double exit_factor = 5.0;    ///< exit when the eigen-coordinate distance exceeds exit_factor * r
    double max_growth = 0.05;    ///< largest relative change of the distance per step
    int max_steps = 20000;
    double graph_fraction = 0.1; ///< of |grad F| / |Hess F| at the zero
    int refine_depth = 8;        ///< bisections between neighbouring seeds with different labels
};

struct SectorReport {
    int hyperbolic = 0;   ///< circular runs of seeds escaping both ways
    int parabolic = 0;    ///< circular runs of seeds converging one way
    int escaping = 0;
    int converging = 0;
    int undecided = 0;
    double radius = 0.0;

    LiftedType observed() const { return hyperbolic == 4 ? LiftedType::saddle : LiftedType::node; }

    bool consistent_with(LiftedType t) const
    {
        if (t == LiftedType::saddle)
            return hyperbolic == 4;
        return hyperbolic == 0 && parabolic == 2;
    }
};

namespace detail {

enum class Fate { exit, converge, undecided };

struct Outcome {
    Fate fate = Fate::undecided;
    std::array<double, 2> where{}; ///< exit point in eigen-coordinates
};

using Mat2 = std::array<std::array<double, 2>, 2>;

inline std::array<double, 2> apply(const Mat2& m, const std::array<double, 2>& x)
{
    return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
}

inline Mat2 inverse(const Mat2& m)
{
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

/// Flow of the field on the lifted surface in (b, s), with the surface solved
/// by continuation from the previous point so it stays on one sheet.
class LocalFlow {
public:
    LocalFlow(const LiftedEquation& eq, double s0, const Mat2& J, const Mat2& V)
        : eq_(eq), s0_(s0), J_(J), V_(V), Vinv_(inverse(V))
    {
    }

    std::array<double, 2> to_eigen(const std::array<double, 2>& p) const { return apply(Vinv_, p); }
    std::array<double, 2> from_eigen(const std::array<double, 2>& c) const { return apply(V_, c); }

    /// Offset p = (b, s - s0) lifted from the zero by continuation; returns the solved coordinate.
    std::optional<double> seed(const std::array<double, 2>& p) const
    {
        const auto x = lift_by_continuation(eq_, s0_, p[0], p[1]);
        if (!x)
            return std::nullopt;
        return eq_.chart() == Chart::du_dv ? (*x)[0] : (*x)[1];
    }

    /// Field in (b, s) at offset p; `w` is the solved coordinate, updated in place.
    std::optional<std::array<double, 2>> field(const std::array<double, 2>& p, double& w) const
    {
        const auto x = lift_param(eq_, p[0], s0_ + p[1], w);
        if (!x)
            return std::nullopt;
        const bool du_dv = eq_.chart() == Chart::du_dv;
        w = du_dv ? (*x)[0] : (*x)[1];
        const Vec3 f = eq_.field((*x)[0], (*x)[1], (*x)[2]);
        return std::array<double, 2>{du_dv ? f[1] : f[0], f[2]};
    }

    /// Linearly implicit Euler in time with the Jacobian at the zero, so a
    /// stiff stable direction is damped instead of resolved. The step adapts
    /// to keep the change of the eigen-coordinate distance below `growth`.
    Outcome run(std::array<double, 2> p, double w, double sign, double R, double growth, int max_steps) const
    {
        const double tiny = 1e-6 * R / 5.0;
        double lmax = 0.0;
        for (const auto& e : eigenvalues(J_))
            lmax = std::max(lmax, std::abs(e.real()));
        double pos = 0.0;
        for (const auto& e : eigenvalues(J_))
            pos = std::max(pos, sign * e.real());
        const double t_cap = pos > 0.0 ? 0.5 / pos : std::numeric_limits<double>::infinity();
        double dt = std::min(t_cap, growth / std::max(lmax, 1e-300));

        for (int k = 0; k < max_steps; ++k) {
            const auto c = to_eigen(p);
            const double d = std::hypot(c[0], c[1]);
            if (d > R)
                return {Fate::exit, c};
            if (d < tiny)
                return {Fate::converge, {}};
            double wk = w;
            const auto f = field(p, wk);
            if (!f)
                return {Fate::undecided, {}};
            for (int tries = 0;; ++tries) {
                // (I - dt sign J) dp = dt sign f
                Mat2 M{{{1.0 - dt * sign * J_[0][0], -dt * sign * J_[0][1]},
                        {-dt * sign * J_[1][0], 1.0 - dt * sign * J_[1][1]}}};
                const auto dp = apply(inverse(M), {dt * sign * (*f)[0], dt * sign * (*f)[1]});
                const std::array<double, 2> q{p[0] + dp[0], p[1] + dp[1]};
                const auto cq = to_eigen(q);
                const double change = std::hypot(cq[0] - c[0], cq[1] - c[1]);
                if (change <= growth * d || tries > 60) {
                    p = q;
                    w = wk;
                    if (change < 0.4 * growth * d)
                        dt = std::min(t_cap, 2.0 * dt);
                    break;
                }
                dt *= 0.5;
            }
        }
        return {Fate::undecided, {}};
    }

private:
    const LiftedEquation& eq_;
    double s0_;
    Mat2 J_, V_, Vinv_;
};

/// Unit eigenvectors of a 2x2 matrix with real eigenvalues, as columns.
inline std::optional<Mat2> eigenbasis(const Mat2& J)
{
    const auto e = eigenvalues(J);
    if (std::abs(e[0].imag()) > 0.0 || e[0].real() == e[1].real())
        return std::nullopt;
    Mat2 V{};
    for (int k = 0; k < 2; ++k) {
        const double l = e[static_cast<std::size_t>(k)].real();
        // Null vector of J - l I from its larger row.
        const double a = J[0][0] - l, b = J[0][1], c = J[1][0], d = J[1][1] - l;
        std::array<double, 2> v = std::hypot(a, b) >= std::hypot(c, d) ? std::array<double, 2>{-b, a}
                                                                         : std::array<double, 2>{-d, c};
        const double n = std::hypot(v[0], v[1]);
        if (n == 0.0)
            return std::nullopt;
        V[0][static_cast<std::size_t>(k)] = v[0] / n;
        V[1][static_cast<std::size_t>(k)] = v[1] / n;
    }
    const double det = V[0][0] * V[1][1] - V[0][1] * V[1][0];
    if (std::abs(det) < 1e-12)
        return std::nullopt;
    return V;
}

/// |grad F| / |Hess F| at x, the radius over which F is close to linear.
inline double graph_scale(const LiftedEquation& eq, const Vec3& x)
{
    const Vec3 g = eq.gradient(x[0], x[1], x[2]);
    const double e = 1e-5;
    double hess = 0.0;
    for (int c = 0; c < 3; ++c) {
        Vec3 p = x, m = x;
        p[static_cast<std::size_t>(c)] += e;
        m[static_cast<std::size_t>(c)] -= e;
        const Vec3 d = (1.0 / (2.0 * e)) * (eq.gradient(p[0], p[1], p[2]) - eq.gradient(m[0], m[1], m[2]));
        hess += dot(d, d);
    }
    hess = std::sqrt(hess);
    return hess > 0.0 ? norm(g) / hess : std::numeric_limits<double>::infinity();
}

inline Vec3 principal_axis(const std::vector<Vec3>& pts)
{
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (const Vec3& p : pts) {
        const Eigen::Vector3d e(p[0], p[1], p[2]);
        m += e * e.transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    const Eigen::Vector3d a = es.eigenvectors().col(2);
    return {a(0), a(1), a(2)};
}

inline int circular_runs(const std::vector<int>& labels)
{
    if (labels.empty())
        return 0;
    int runs = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != labels[(i + labels.size() - 1) % labels.size()])
            ++runs;
    return runs == 0 ? 1 : runs;
}

} // namespace detail

/// Classifies a ring of seeds around a zero by their fate in both time
/// directions, integrating the field on the lifted surface in the (b, s)
/// parametrization. Distances are measured in the coordinates of the
/// differenced linearization, where the linear flow has no transient growth.
/// Escaping seeds are labelled by the sides of the principal exit axes they
/// leave through; converging seeds by their side of b = 0. `gap` is the
/// distance to the nearest other zero on the same fibre.
inline SectorReport count_sectors(const BdeField& bde, const SingularPoint& sp, double gap,
                                  const SectorConfig& cfg = {})
{
    const LiftedEquation eq(bde, sp.point.chart);
    const double s0 = sp.point.s;
    const Vec3 zero{sp.point.u, sp.point.v, s0};

    SectorReport rep;
    const auto J = restricted_jacobian(bde, sp);
    const auto V = detail::eigenbasis(J);
    if (!V) {
        rep.undecided = cfg.ring_seeds;
        return rep;
    }
    const detail::LocalFlow flow(eq, s0, J, *V);

    // Keep the exit circle clear of the neighbouring zeros and inside the
    // region where the surface is a graph over (b, s); a slow eigen-direction
    // shrinks the region where the linear part dominates.
    const auto ev = eigenvalues(J);
    const double lo = std::min(std::abs(ev[0].real()), std::abs(ev[1].real()));
    const double hi = std::max(std::abs(ev[0].real()), std::abs(ev[1].real()));
    const double ratio = hi > 0.0 ? std::min(1.0, lo / hi) : 1.0;
    const double r = std::min({cfg.max_radius, 0.75 * gap / cfg.exit_factor,
                               cfg.graph_fraction * ratio * detail::graph_scale(eq, zero) / cfg.exit_factor});
    const double R = cfg.exit_factor * r;
    rep.radius = r;

    struct Seed {
        double angle;
        detail::Outcome fwd, bwd;
        double side;
    };
    auto run_seed = [&](double th) {
        const auto p = flow.from_eigen({r * std::cos(th), r * std::sin(th)});
        Seed sd{th, {}, {}, p[0]};
        if (const auto w = flow.seed(p)) {
            sd.fwd = flow.run(p, *w, 1.0, R, cfg.max_growth, cfg.max_steps);
            sd.bwd = flow.run(p, *w, -1.0, R, cfg.max_growth, cfg.max_steps);
        }
        return sd;
    };
    std::vector<Seed> seeds;
    for (int k = 0; k < cfg.ring_seeds; ++k)
        seeds.push_back(run_seed(2.0 * std::numbers::pi * (k + 0.5) / cfg.ring_seeds));

    auto as_vec = [](const std::array<double, 2>& c) { return Vec3{c[0], c[1], 0.0}; };
    std::vector<Vec3> fwd_exits, bwd_exits;
    for (const Seed& sd : seeds)
        if (sd.fwd.fate == detail::Fate::exit && sd.bwd.fate == detail::Fate::exit) {
            fwd_exits.push_back(as_vec(sd.fwd.where));
            bwd_exits.push_back(as_vec(sd.bwd.where));
        }
    const Vec3 axis_f = fwd_exits.empty() ? Vec3{1, 0, 0} : detail::principal_axis(fwd_exits);
    const Vec3 axis_b = bwd_exits.empty() ? Vec3{1, 0, 0} : detail::principal_axis(bwd_exits);

    // 0..3 escaping by exit sides, 4..5 converging by side, 6 undecided.
    auto label = [&](const Seed& sd) {
        const bool fe = sd.fwd.fate == detail::Fate::exit, be = sd.bwd.fate == detail::Fate::exit;
        const bool fc = sd.fwd.fate == detail::Fate::converge, bc = sd.bwd.fate == detail::Fate::converge;
        if (fe && be)
            return 2 * (dot(as_vec(sd.fwd.where), axis_f) > 0 ? 1 : 0) +
                   (dot(as_vec(sd.bwd.where), axis_b) > 0 ? 1 : 0);
        if ((fc && be) || (bc && fe))
            return sd.side > 0 ? 5 : 4;
        return 6;
    };

    // Sectors narrower than the ring spacing sit between differently labelled neighbours.
    std::vector<Seed> refined;
    std::function<void(const Seed&, const Seed&, int)> bisect = [&](const Seed& a, const Seed& b, int depth) {
        if (depth == 0 || label(a) == label(b))
            return;
        double top = b.angle;
        if (top < a.angle)
            top += 2.0 * std::numbers::pi;
        const Seed m = run_seed(0.5 * (a.angle + top));
        bisect(a, m, depth - 1);
        refined.push_back(m);
        bisect(m, b, depth - 1);
    };
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        refined.push_back(seeds[k]);
        bisect(seeds[k], seeds[(k + 1) % seeds.size()], cfg.refine_depth);
    }

    std::vector<int> hyper, para;
    for (const Seed& sd : refined) {
        const int l = label(sd);
        if (l < 4) {
            ++rep.escaping;
            hyper.push_back(l);
        } else if (l < 6) {
            ++rep.converging;
            para.push_back(l);
        } else {
            ++rep.undecided;
        }
    }
    rep.hyperbolic = hyper.empty() ? 0 : detail::circular_runs(hyper);
    rep.parabolic = para.empty() ? 0 : detail::circular_runs(para);
    return rep;
}

/// Distance from each zero over the origin to its nearest neighbour, in the
/// fibre coordinate of its own chart.
inline std::vector<double> fibre_gaps(const std::vector<SingularPoint>& pts)
{
    std::vector<double> gaps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double g = 1.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j)
                continue;
            const auto o = pts[j].point.in_chart(pts[i].point.chart);
            if (o)
                g = std::min(g, std::abs(o->s - pts[i].point.s));
        }
        gaps.push_back(g);
    }
    return gaps;
}

} // namespace edgefol
