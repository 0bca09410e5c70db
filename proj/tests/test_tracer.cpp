#include <gtest/gtest.h>

#include <cmath>
#include <ostream>

#include <edgefol/cusp.hpp>
#include <edgefol/foliations.hpp>
#include <edgefol/sampling.hpp>
#include <edgefol/sectors.hpp>
#include <edgefol/tracer.hpp>

using namespace edgefol;

namespace edgefol {
inline void PrintTo(CuspClass c, std::ostream* os) { *os << to_string(c); }
} // namespace edgefol

namespace {

using P = Poly2<double>;
const P one = P::constant(1.0);
const P u = P::monomial(1, 0, 1.0);

EdgeJet jet_of(double a20, double b20, double b30, double b12, double b03)
{
    EdgeJet j;
    j.a20 = a20;
    j.b20 = b20;
    j.b30 = b30;
    j.b12 = b12;
    j.b03 = b03;
    return j;
}

double max_residual(const LiftedPair& pair, const TracedCurve& c)
{
    double r = 0.0;
    for (const auto& s : c.samples)
        r = std::max(r, std::abs(pair.residual(s.point)));
    return r;
}

} // namespace

TEST(Integrate, ConstantLineFamily)
{
    const BdeField b = make_bde(one, P{}, -1.0 * one);
    const LiftedEquation eq(b, Chart::du_dv);
    const TracedCurve c = integrate_lifted(eq, b, Vec3{0, 0, 1}, 1e-3, 20000, 0.5);
    EXPECT_EQ(c.forward_end, Termination::box_exit);
    EXPECT_EQ(c.backward_end, Termination::box_exit);
    for (const auto& s : c.samples) {
        EXPECT_NEAR(s.point.u, s.point.v, 1e-12);
        EXPECT_NEAR(s.point.s, 1.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(c.samples.front().point.v), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(c.samples.back().point.v), 0.5, 1e-12);
    EXPECT_LT(c.samples.front().t, 0.0);
    EXPECT_GT(c.samples.back().t, 0.0);
}

TEST(Integrate, SeedOffSurfaceRejected)
{
    const BdeField b = make_bde(one, P{}, -1.0 * one);
    const LiftedEquation eq(b, Chart::du_dv);
    try {
        integrate_lifted(eq, b, Vec3{0, 0, 0.5}, 1e-3, 100, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SeedOffSurface);
    }
}

TEST(Integrate, ChartBreakdownWithoutSwitching)
{
    // (1,0,u): curves reach u = 0 with dv = 0, where s = du/dv blows up.
    // Unit-speed integration needs arclength ~|s| to get there, so the
    // threshold is lowered to keep the run short.
    const BdeField b = make_bde(one, P{}, u);
    const LiftedPair pair(b);
    TraceSettings cfg;
    cfg.max_fibre = 10.0;
    // F = 1 + u s^2; s = 2 at u = -1/4.
    try {
        integrate_lifted(pair, LiftedPoint{-0.25, 0.0, 2.0, Chart::du_dv}, cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ChartBreakdown);
    }
    cfg.allow_chart_switch = true;
    const TracedCurve c = integrate_lifted(pair, LiftedPoint{-0.25, 0.0, 2.0, Chart::du_dv}, cfg);
    EXPECT_TRUE(std::any_of(c.samples.begin(), c.samples.end(),
                            [](const CurveSample& x) { return x.point.chart == Chart::dv_du; }));
}

TEST(Integrate, OneSaddleSeedReachesSingularPoint)
{
    const EdgeJet j = jet_of(0, 0, 1, 0, 1);
    const BdeField b = build_geometric_bde(j, FoliationKind::Asymptotic);
    const auto sps = singular_points_of(cubic_analysis(b));
    ASSERT_EQ(sps.size(), 1u);
    EXPECT_NEAR(sps[0].point.slope_du_dv(), -0.7937005259840998, 1e-9);

    // Seed on the stable fibre direction above the zero.
    const LiftedPair pair(b);
    Vec3 x{sps[0].point.u, sps[0].point.v, sps[0].point.s + 0.05};
    ASSERT_EQ(sps[0].point.chart, Chart::du_dv);
    TraceSettings cfg;
    cfg.allow_chart_switch = true;
    const TracedCurve c = integrate_lifted(pair, LiftedPoint{x[0], x[1], x[2], Chart::du_dv}, cfg, sps);
    const bool hit = c.forward_end == Termination::singular_point || c.backward_end == Termination::singular_point;
    EXPECT_TRUE(hit);
    EXPECT_LE(max_residual(pair, c), 1e-8);
}

TEST(Integrate, ResidualStaysSmallOnRandomJets)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const EdgeJet j = sample_generic_jet(mix_seed(11, s), s % 2 ? Scenario::generic : Scenario::edge_degenerate);
        for (FoliationKind k : {FoliationKind::LinesOfCurvature, FoliationKind::Asymptotic}) {
            const BdeField b = build_geometric_bde(j, k);
            const LiftedPair pair(b);
            TraceSettings cfg;
            cfg.allow_chart_switch = true;
            for (const LiftedPoint& p : fibre_points(b, 0.3, -0.2)) {
                const TracedCurve c = integrate_lifted(pair, p, cfg);
                EXPECT_LE(max_residual(pair, c), 1e-8) << "seed " << s;
            }
        }
    }
}

TEST(Integrate, StepHalvingMovesEndpointsLittle)
{
    const EdgeJet j = jet_of(0.3, 0.7, 0.4, -0.6, 1.1);
    const BdeField b = build_geometric_bde(j, FoliationKind::LinesOfCurvature);
    const LiftedPair pair(b);
    for (const LiftedPoint& p : fibre_points(b, 0.2, 0.1)) {
        TraceSettings coarse;
        coarse.allow_chart_switch = true;
        TraceSettings fine = coarse;
        fine.step = coarse.step / 2.0;
        fine.max_steps = 2 * coarse.max_steps;
        const TracedCurve a = integrate_lifted(pair, p, coarse);
        const TracedCurve c = integrate_lifted(pair, p, fine);
        ASSERT_EQ(a.forward_end, Termination::box_exit);
        ASSERT_EQ(c.forward_end, Termination::box_exit);
        EXPECT_NEAR(a.samples.back().point.u, c.samples.back().point.u, 1e-6);
        EXPECT_NEAR(a.samples.back().point.v, c.samples.back().point.v, 1e-6);
        EXPECT_NEAR(a.samples.front().point.u, c.samples.front().point.u, 1e-6);
        EXPECT_NEAR(a.samples.front().point.v, c.samples.front().point.v, 1e-6);
    }
}

TEST(MarchingSquares, LineAndEmpty)
{
    const auto lines = marching_squares(u, 0.5, 64);
    ASSERT_EQ(lines.size(), 1u);
    for (const auto& p : lines[0])
        EXPECT_NEAR(p[0], 0.0, 1e-12);
    EXPECT_TRUE(marching_squares(one, 0.5, 64).empty());
}

TEST(MarchingSquares, CircleIsClosed)
{
    const P circle = P::monomial(2, 0, 1.0) + P::monomial(0, 2, 1.0) - 0.09 * one;
    const auto lines = marching_squares(circle, 0.5, 128);
    ASSERT_EQ(lines.size(), 1u);
    const auto& l = lines[0];
    EXPECT_NEAR(l.front()[0], l.back()[0], 1e-12);
    EXPECT_NEAR(l.front()[1], l.back()[1], 1e-12);
    for (const auto& p : l)
        EXPECT_NEAR(std::hypot(p[0], p[1]), 0.3, 2e-3);
}

TEST(Portrait, RegularConstantPair)
{
    PortraitConfig cfg;
    cfg.seeds_per_side = 6;
    cfg.grid = 64;
    const Portrait p = trace_portrait(make_bde(one, P{}, -1.0 * one), cfg);
    EXPECT_TRUE(p.singular_points.empty());
    EXPECT_TRUE(p.discriminant_locus.empty());
    EXPECT_EQ(p.separatrix_count(), 0u);
    EXPECT_EQ(p.top_class.kind, TopClass::Kind::RegularPair);
    EXPECT_EQ(p.failed_curves, 0);
    for (const auto& c : p.curves) {
        const double s = c.samples.front().point.slope_du_dv();
        EXPECT_NEAR(std::abs(s), 1.0, 1e-9);
        for (const auto& x : c.samples)
            EXPECT_NEAR(x.point.slope_du_dv(), s, 1e-9);
    }
}

TEST(Portrait, CuspFamily)
{
    PortraitConfig cfg;
    cfg.seeds_per_side = 8;
    cfg.grid = 64;
    const Portrait p = trace_portrait(make_bde(one, P{}, u), cfg);
    EXPECT_TRUE(p.singular_points.empty());
    EXPECT_EQ(p.top_class.kind, TopClass::Kind::CuspFamily);
    ASSERT_EQ(p.discriminant_locus.size(), 1u);
    for (const auto& q : p.discriminant_locus[0])
        EXPECT_NEAR(q[0], 0.0, 1e-12);
    // Curves live in u <= 0 and reach the discriminant with the vertical direction.
    int touching = 0;
    for (const auto& c : p.curves)
        for (const auto& s : c.samples) {
            EXPECT_LE(s.point.u, 1e-9);
            if (std::abs(s.point.u) < 1e-3 && s.point.chart == Chart::dv_du && std::abs(s.point.s) < 0.1)
                ++touching;
        }
    EXPECT_GT(touching, 0);
}

TEST(Portrait, ThreeSaddlesSeparatricesAndSectors)
{
    const EdgeJet j = jet_of(0, 0, 0.1, -1, 1);
    const BdeField b = build_geometric_bde(j, FoliationKind::Asymptotic);
    PortraitConfig cfg;
    cfg.seeds_per_side = 4;
    cfg.grid = 64;
    const Portrait p = trace_portrait(b, cfg);
    EXPECT_EQ(p.top_class.kind, TopClass::Kind::ThreeSaddles);
    ASSERT_EQ(p.singular_points.size(), 3u);
    EXPECT_EQ(p.separatrix_count(), 12u);

    const auto gaps = fibre_gaps(p.singular_points);
    for (std::size_t i = 0; i < p.singular_points.size(); ++i) {
        const SectorReport r = count_sectors(b, p.singular_points[i], gaps[i]);
        EXPECT_EQ(r.hyperbolic, 4) << i;
        EXPECT_TRUE(r.consistent_with(LiftedType::saddle));
    }
}

TEST(Portrait, WorkerCountDoesNotChangeOutput)
{
    const EdgeJet j = jet_of(0, 0, 1, 0, 1);
    const BdeField b = build_geometric_bde(j, FoliationKind::Asymptotic);
    PortraitConfig cfg;
    cfg.seeds_per_side = 3;
    cfg.grid = 32;
    const Portrait a = trace_portrait(b, cfg);
    cfg.workers = 3;
    const Portrait c = trace_portrait(b, cfg);
    EXPECT_EQ(curves_csv(j, a), curves_csv(j, c));
}

TEST(Sectors, JacobianEigenvaluesMatchCubic)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const EdgeJet j = sample_generic_jet(mix_seed(12, s), Scenario::edge_degenerate);
        const BdeField b = build_geometric_bde(j, FoliationKind::Asymptotic);
        for (const SingularPoint& sp : singular_points_of(cubic_analysis(b))) {
            const auto e = eigenvalues(restricted_jacobian(b, sp));
            const double lo = std::min(sp.alpha, sp.minus_phi_prime), hi = std::max(sp.alpha, sp.minus_phi_prime);
            const double scale = std::max(std::abs(lo), std::abs(hi));
            EXPECT_NEAR(e[0].real(), lo, 1e-6 * scale);
            EXPECT_NEAR(e[1].real(), hi, 1e-6 * scale);
            EXPECT_NEAR(e[0].imag(), 0.0, 1e-6 * scale);
        }
    }
}

TEST(Sectors, CountsMatchLiftedTypes)
{
    int nodes = 0;
    for (std::uint64_t s = 0; s < 12; ++s) {
        const EdgeJet j = sample_generic_jet(mix_seed(13, s), Scenario::edge_degenerate);
        for (FoliationKind k : {FoliationKind::Asymptotic, FoliationKind::Characteristic}) {
            const BdeField b = build_geometric_bde(j, k);
            const auto sps = singular_points_of(cubic_analysis(b));
            const auto gaps = fibre_gaps(sps);
            for (std::size_t i = 0; i < sps.size(); ++i) {
                const SectorReport r = count_sectors(b, sps[i], gaps[i]);
                EXPECT_TRUE(r.consistent_with(sps[i].type))
                    << "seed " << s << " kind " << to_string(k) << " h=" << r.hyperbolic << " p=" << r.parabolic;
                nodes += sps[i].type == LiftedType::node;
            }
        }
    }
    EXPECT_GT(nodes, 0);
}

// Zeros with a slow eigen-direction, nearly parallel eigen-directions, or a
// large admissible radius.
TEST(Sectors, HardZeros)
{
    struct Case {
        std::uint64_t master, index;
        FoliationKind kind;
        std::size_t point;
    };
    for (const Case& c : {Case{1, 108, FoliationKind::Characteristic, 0}, Case{1, 253, FoliationKind::Asymptotic, 0},
                          Case{1, 272, FoliationKind::Characteristic, 0}, Case{7, 137, FoliationKind::Asymptotic, 0},
                          Case{42, 89, FoliationKind::Asymptotic, 2}, Case{42, 89, FoliationKind::Characteristic, 0}}) {
        const EdgeJet j = sample_generic_jet(mix_seed(c.master, c.index), Scenario::edge_degenerate);
        const BdeField b = build_geometric_bde(j, c.kind);
        const auto sps = singular_points_of(cubic_analysis(b));
        ASSERT_LT(c.point, sps.size());
        const SingularPoint& sp = sps[c.point];
        const SectorReport r = count_sectors(b, sp, fibre_gaps(sps)[c.point]);
        EXPECT_TRUE(r.consistent_with(sp.type)) << c.master << "/" << c.index << " h=" << r.hyperbolic
                                                << " p=" << r.parabolic << " u=" << r.undecided;
        EXPECT_EQ(r.observed(), sp.type);
        // The report does not depend on the type it is compared with.
        EXPECT_FALSE(r.consistent_with(sp.type == LiftedType::saddle ? LiftedType::node : LiftedType::saddle));
    }
}

TEST(Surface, EdgeCurveAndFirstCoordinate)
{
    const EdgeJet j = jet_of(0, 0, 0, 0, 1);
    const BdeField b = build_geometric_bde(j, FoliationKind::LinesOfCurvature);
    PortraitConfig cfg;
    cfg.seeds_per_side = 3;
    cfg.grid = 32;
    const Portrait p = trace_portrait(b, cfg);
    const auto lines = project_to_surface(j, p);
    ASSERT_EQ(lines.size(), p.curves.size() + 1);
    for (const Vec3& x : lines.back().points) {
        EXPECT_EQ(x[1], 0.0);
        EXPECT_EQ(x[2], 0.0);
    }
    for (std::size_t i = 0; i < p.curves.size(); ++i)
        for (std::size_t k = 0; k < p.curves[i].samples.size(); ++k)
            EXPECT_EQ(lines[i].points[k][0], p.curves[i].samples[k].point.u);
}

TEST(Csv, HeaderAndRowCount)
{
    const EdgeJet j = jet_of(0, 1, 0, 0, 1);
    PortraitConfig cfg;
    cfg.seeds_per_side = 2;
    cfg.grid = 16;
    const Portrait p = trace_portrait(build_geometric_bde(j, FoliationKind::LinesOfCurvature), cfg);
    const std::string csv = curves_csv(j, p);
    EXPECT_EQ(csv.rfind("t,u,v,p,x,y,z,curve_id,separatrix\n", 0), 0u);
    std::size_t rows = 0;
    for (const auto& c : p.curves)
        rows += c.samples.size();
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rows + 1);
}

// ---------------------------------------------------------------------------
// Cusp detection
// ---------------------------------------------------------------------------

namespace {

template <class G>
CuspClass detect_param(G g, int dim, int n = 201, double w = 0.1)
{
    std::vector<double> t(static_cast<std::size_t>(n));
    Eigen::MatrixXd pts(n, dim);
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = -w + 2.0 * w * i / (n - 1);
        const auto x = g(t[static_cast<std::size_t>(i)]);
        for (int c = 0; c < dim; ++c)
            pts(i, c) = x[static_cast<std::size_t>(c)];
    }
    return detect_cusp_order(t, pts, 0.0);
}

// Samples are stored in absolute coordinates, so a crossing away from u = 0
// loses the t^5 term to rounding once the window is small enough to suppress
// the t^6 leakage. Crossings are taken at the origin.
TraceSettings cusp_trace()
{
    TraceSettings cfg;
    cfg.step = 1e-5;
    cfg.max_steps = 100;
    return cfg;
}

CuspClass detect_on_surface(const EdgeJet& j, const TracedCurve& c)
{
    const PolyVec3 f = surface_polynomials(j);
    std::vector<double> t;
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(c.samples.size()), 3);
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        const auto& s = c.samples[i];
        t.push_back(s.t);
        for (int k = 0; k < 3; ++k)
            pts(static_cast<Eigen::Index>(i), k) = f[static_cast<std::size_t>(k)](s.point.u, s.point.v);
    }
    return detect_cusp_order(t, pts, 0.0);
}

} // namespace

TEST(Cusp, ModelCurves)
{
    EXPECT_EQ(detect_param([](double t) { return std::array<double, 3>{t * t * t, t * t * t * t, 0.0}; }, 3),
              CuspClass::Cusp34);
    EXPECT_EQ(detect_param([](double t) { return std::array<double, 2>{t * t, t * t * t}; }, 2), CuspClass::Cusp23);
    EXPECT_EQ(detect_param([](double t) { return std::array<double, 2>{t, t * t}; }, 2), CuspClass::NoCusp);
    EXPECT_EQ(detect_param([](double t) { return std::array<double, 3>{t * t * t, std::pow(t, 4), std::pow(t, 5)}; },
                           3),
              CuspClass::Cusp345);
    EXPECT_EQ(detect_param([](double t) { return std::array<double, 2>{t * t * t, std::pow(t, 4)}; }, 2),
              CuspClass::Cusp34);
}

TEST(Cusp, WindowAndConditioningErrors)
{
    try {
        detect_param([](double t) { return std::array<double, 2>{t * t, t * t * t}; }, 2, 41);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
    }
    std::vector<double> t(60, 0.0);
    for (int i = 0; i < 60; ++i)
        t[static_cast<std::size_t>(i)] = i < 30 ? -1.0 : 1.0;
    Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(60, 2);
    CuspConfig cfg;
    cfg.window = 1.0;
    try {
        detect_cusp_order(t, pts, 0.0, cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FitIllConditioned);
    }
}

TEST(Cusp, CompositionWithNullDirection)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const EdgeJet j = sample_generic_jet(mix_seed(14, s), Scenario::generic);
        const PolyVec3 f = surface_polynomials(j);
        EXPECT_EQ(detect_param(
                      [&](double t) {
                          const double a = t * t * t, b = t * t;
                          return std::array<double, 3>{f[0](a, b), f[1](a, b), f[2](a, b)};
                      },
                      3),
                  CuspClass::Cusp34)
            << s;
    }
}

TEST(Cusp, LinesOfCurvatureThroughEdge)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const EdgeJet j = sample_generic_jet(mix_seed(15, s), Scenario::generic);
        const BdeField b = build_geometric_bde(j, FoliationKind::LinesOfCurvature);
        const TracedCurve c = integrate_lifted(LiftedPair(b), LiftedPoint{0.0, 0.0, 0.0, Chart::du_dv}, cusp_trace());
        EXPECT_EQ(detect_on_surface(j, c), CuspClass::Cusp23) << s;
    }
}

TEST(Cusp, LinesOfCurvatureAwayFromOrigin)
{
    for (std::uint64_t s = 0; s < 5; ++s) {
        const EdgeJet j = sample_generic_jet(mix_seed(17, s), Scenario::generic);
        const BdeField b = build_geometric_bde(j, FoliationKind::LinesOfCurvature);
        TraceSettings cfg;
        cfg.step = 1e-4;
        cfg.max_steps = 100;
        const TracedCurve c = integrate_lifted(LiftedPair(b), LiftedPoint{0.05, 0.0, 0.0, Chart::du_dv}, cfg);
        EXPECT_EQ(detect_on_surface(j, c), CuspClass::Cusp23) << s;
    }
}

TEST(Cusp, AsymptoticAndCharacteristicThroughEdge)
{
    for (FoliationKind k : {FoliationKind::Asymptotic, FoliationKind::Characteristic})
        for (std::uint64_t s = 0; s < 20; ++s) {
            EdgeJet j = sample_generic_jet(mix_seed(16, s), Scenario::generic);
            j.b20 = std::max(j.b20, 0.1);
            const BdeField b = build_geometric_bde(j, k);
            const TracedCurve c =
                integrate_lifted(LiftedPair(b), LiftedPoint{0.0, 0.0, 0.0, Chart::du_dv}, cusp_trace());
            EXPECT_EQ(detect_on_surface(j, c), CuspClass::Cusp34) << to_string(k) << " " << s;
        }
}
