#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

#include "closed_forms.hpp"
#include "cubic.hpp"
#include "foliations.hpp"
#include "sampling.hpp"
#include "sectors.hpp"

namespace edgefol {

/// Runs fn(i) for i in [0, n) on `workers` threads, strided by index.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn)
{
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                fn(i);
        });
    for (auto& t : pool)
        t.join();
}

struct VerifyConfig {
    int trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-8;        ///< tangency tolerance; other suites use their own thresholds
    unsigned workers = 1;
    int heavy_trials = 100;   ///< cap for the Jacobian and sector suites
};

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    double worst = 0.0;     ///< largest relative error seen (or failure count for counting suites)
    double threshold = 0.0;

    bool passed() const { return failures == 0; }
};

struct DiscrepancyRow {
    std::string item;
    std::string printed;
    std::string derived;
    std::string computed;
    bool reproduced = false; ///< computed == derived and != printed
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    std::vector<DiscrepancyRow> discrepancies;

    bool passed() const
    {
        return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); }) &&
               std::all_of(discrepancies.begin(), discrepancies.end(), [](const DiscrepancyRow& d) { return d.reproduced; });
    }

    std::string table() const;
};

namespace detail {

inline double rel_err(double got, double want, double scale)
{
    return std::abs(got - want) / std::max(scale, 1e-300);
}

inline EdgeJet trial_jet(std::uint64_t seed, std::size_t i)
{
    return sample_generic_jet(mix_seed(seed, i), Scenario::edge_degenerate);
}

/// Per-trial outcome of one suite; merged in index order.
struct Partial {
    int checks = 0, failures = 0;
    double worst = 0.0;

    void record(double err, double threshold)
    {
        ++checks;
        worst = std::max(worst, err);
        if (!(err <= threshold))
            ++failures;
    }
    void record(bool ok)
    {
        ++checks;
        if (!ok)
            ++failures;
    }
};

inline SuiteResult merge(std::string name, double threshold, const std::vector<Partial>& parts)
{
    SuiteResult r{std::move(name), 0, 0, 0.0, threshold};
    for (const Partial& p : parts) {
        r.checks += p.checks;
        r.failures += p.failures;
        r.worst = std::max(r.worst, p.worst);
    }
    return r;
}

constexpr std::array<FoliationKind, 2> type2_kinds{FoliationKind::Asymptotic, FoliationKind::Characteristic};

} // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Closed-form phi and alpha against extraction from the constructed equation.
inline SuiteResult suite_closed_forms(const VerifyConfig& cfg, double threshold = 1e-10)
{
    std::vector<detail::Partial> parts(static_cast<std::size_t>(cfg.trials));
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        const EdgeJet j = detail::trial_jet(cfg.seed, i);
        for (FoliationKind k : detail::type2_kinds) {
            const LiftedEquation eq(build_geometric_bde(j, k), Chart::du_dv);
            const ClosedForms cf = closed_forms(j, k);
            const Poly1<double> phi = eq.phi(), alpha = eq.alpha();
            const double sp = detail::max_abs(cf.phi), sa = detail::max_abs(cf.alpha);
            double err = 0.0;
            for (std::size_t c = 0; c < 4; ++c)
                err = std::max(err, detail::rel_err(phi[c], cf.phi[c], sp));
            for (std::size_t c = 0; c < 3; ++c)
                err = std::max(err, detail::rel_err(alpha[c], cf.alpha[c], sa));
            parts[i].record(err, threshold);
        }
    });
    return detail::merge("closed_form_vs_derivative", threshold, parts);
}

/// D against the discriminant of phi, and the real-root count against sign(D).
inline SuiteResult suite_discriminants(const VerifyConfig& cfg, double threshold = 1e-12)
{
    std::vector<detail::Partial> parts(static_cast<std::size_t>(cfg.trials));
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        const auto c = detail::trial_jet(cfg.seed, i).coefficients();
        const std::array<std::pair<double, Poly1<double>>, 2> pairs{
            std::pair{asymptotic_discriminant(c), asymptotic_phi(c)},
            std::pair{characteristic_discriminant(c), characteristic_phi(c)}};
        for (const auto& [D, phi] : pairs) {
            parts[i].record(detail::rel_err(D, cubic_discriminant(phi), std::abs(D)), threshold);
            const std::size_t n = real_cubic_roots(phi).size();
            parts[i].record(D > 0 ? n == 3 : n == 1);
        }
    });
    return detail::merge("discriminant_vs_roots", threshold, parts);
}

/// Differenced Jacobian of the field on the lifted surface at each zero.
inline SuiteResult suite_eigenvalues(const VerifyConfig& cfg, double threshold = 1e-6)
{
    const int n = std::min(cfg.trials, cfg.heavy_trials);
    std::vector<detail::Partial> parts(static_cast<std::size_t>(n));
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        const EdgeJet j = detail::trial_jet(cfg.seed, i);
        for (FoliationKind k : detail::type2_kinds) {
            const BdeField b = build_geometric_bde(j, k);
            for (const SingularPoint& sp : singular_points_of(cubic_analysis(b))) {
                auto e = eigenvalues(restricted_jacobian(b, sp));
                if (e[1].real() < e[0].real())
                    std::swap(e[0], e[1]);
                const double lo = std::min(sp.alpha, sp.minus_phi_prime);
                const double hi = std::max(sp.alpha, sp.minus_phi_prime);
                const double scale = std::max(std::abs(lo), std::abs(hi));
                const double err = std::max({std::abs(e[0].real() - lo), std::abs(e[1].real() - hi),
                                             std::abs(e[0].imag()), std::abs(e[1].imag())}) /
                                   scale;
                parts[i].record(err, threshold);
            }
        }
    });
    return detail::merge("eigenvalue_jacobian", threshold, parts);
}

/// grad F . xi = 0 at random points, both charts and all three foliations.
inline SuiteResult suite_tangency(const VerifyConfig& cfg)
{
    std::vector<detail::Partial> parts(static_cast<std::size_t>(cfg.trials));
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        const EdgeJet j = detail::trial_jet(cfg.seed, i);
        std::mt19937_64 rng(mix_seed(cfg.seed ^ 0x7a6e67656e7479ULL, i));
        std::uniform_real_distribution<double> box(-0.5, 0.5), fib(-2.0, 2.0);
        for (FoliationKind k : {FoliationKind::LinesOfCurvature, FoliationKind::Asymptotic,
                                FoliationKind::Characteristic}) {
            const BdeField b = build_geometric_bde(j, k);
            for (Chart ch : {Chart::du_dv, Chart::dv_du}) {
                const LiftedEquation eq(b, ch);
                const double u = box(rng), v = box(rng), s = fib(rng);
                const Vec3 g = eq.gradient(u, v, s), x = eq.field(u, v, s);
                const double scale = norm(g) * norm(x);
                parts[i].record(scale == 0.0 ? 0.0 : std::abs(dot(g, x)) / scale, cfg.tol);
            }
        }
    });
    return detail::merge("tangency_identity", cfg.tol, parts);
}

/// Local sector counts on the lifted surface against the lifted types.
inline SuiteResult suite_sectors(const VerifyConfig& cfg)
{
    const int n = std::min(cfg.trials, cfg.heavy_trials);
    std::vector<detail::Partial> parts(static_cast<std::size_t>(n));
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        const EdgeJet j = detail::trial_jet(cfg.seed, i);
        for (FoliationKind k : detail::type2_kinds) {
            const BdeField b = build_geometric_bde(j, k);
            const auto sps = singular_points_of(cubic_analysis(b));
            const auto gaps = fibre_gaps(sps);
            for (std::size_t p = 0; p < sps.size(); ++p)
                parts[i].record(count_sectors(b, sps[p], gaps[p]).consistent_with(sps[p].type));
        }
    });
    return detail::merge("sector_counts", 0.0, parts);
}

/// D > 0 with three positive eigen-products never occurs.
inline SuiteResult suite_no_three_nodes(const VerifyConfig& cfg)
{
    std::vector<detail::Partial> parts(static_cast<std::size_t>(cfg.trials));
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        const EdgeJet j = detail::trial_jet(cfg.seed, i);
        for (FoliationKind k : detail::type2_kinds) {
            const ClosedForms cf = closed_forms(j, k);
            const CubicAnalysis a = analyze_cubic(cf.phi, cf.alpha);
            const bool three_nodes = a.roots.size() == 3 &&
                                     std::all_of(a.roots.begin(), a.roots.end(), [](const RootData& r) {
                                         return r.lifted_type == LiftedType::node;
                                     });
            parts[i].record(!three_nodes);
        }
    });
    return detail::merge("no_three_nodes", 0.0, parts);
}

// ---------------------------------------------------------------------------
// Discrepancy ledger, in exact arithmetic
// ---------------------------------------------------------------------------

using Rational = boost::rational<long long>;

namespace detail {

inline std::string str(const Rational& q)
{
    return q.denominator() == 1 ? std::to_string(q.numerator())
                                : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

template <typename T>
using PolyVec3T = std::array<Poly2<T>, 3>;

/// L2 = <f_uu, f_u x (f_v / v)> for h = 0, in exact arithmetic.
template <typename T>
Poly2<T> exact_l2(const JetCoefficients<T>& c)
{
    PolyVec3T<T> f{Poly2<T>(3), Poly2<T>(3), Poly2<T>(3)};
    f[0].add(1, 0, T(1));
    f[1].add(2, 0, c.a20 / T(2));
    f[1].add(3, 0, c.a30 / T(6));
    f[1].add(0, 2, T(1) / T(2));
    f[2].add(2, 0, c.b20 / T(2));
    f[2].add(3, 0, c.b30 / T(6));
    f[2].add(1, 2, c.b12 / T(2));
    f[2].add(0, 3, c.b03 / T(6));
    PolyVec3T<T> fu, fuu, g;
    for (int k = 0; k < 3; ++k) {
        fu[k] = f[k].diff_u();
        fuu[k] = fu[k].diff_u();
        g[k] = f[k].diff_v().divided_by_v_power(1);
    }
    const PolyVec3T<T> nu{fu[1] * g[2] - fu[2] * g[1], fu[2] * g[0] - fu[0] * g[2], fu[0] * g[1] - fu[1] * g[0]};
    return fuu[0] * nu[0] + fuu[1] * nu[1] + fuu[2] * nu[2];
}

} // namespace detail

inline std::vector<DiscrepancyRow> discrepancy_ledger()
{
    using Q = Rational;
    std::vector<DiscrepancyRow> rows;

    {
        // uv coefficient of L2.
        const JetCoefficients<Q> c{Q(1), Q(2), Q(0), Q(3), Q(5), Q(7)};
        const Q computed = detail::exact_l2(c).coeff(1, 1);
        const Q printed = -c.a30 * c.b03;
        const Q derived = -c.a30 * c.b03 / Q(2);
        rows.push_back({"L2 uv coefficient (a30=2, b03=7)", detail::str(printed), detail::str(derived),
                        detail::str(computed), computed == derived && computed != printed});
    }
    {
        // phi_as at the root of the torsion factor.
        const JetCoefficients<Q> c{Q(1), Q(0), Q(0), Q(2), Q(3), Q(5)};
        const Q computed = asymptotic_phi(c)(-c.b03 / (Q(2) * c.b12));
        const Q printed = asymptotic_phi_at_torsion_root_dropped_factor(c);
        const Q derived = asymptotic_phi_at_torsion_root(c);
        rows.push_back({"phi_as(-b03/(2 b12)) (a20=1, b30=2, b12=3, b03=5)", detail::str(printed),
                        detail::str(derived), detail::str(computed), computed == derived && computed != printed});
    }
    {
        // D_as = D_ch claimed when b12 = 0.
        const JetCoefficients<Q> c{Q(4), Q(0), Q(0), Q(1), Q(0), Q(1)};
        const Q das = cubic_discriminant(asymptotic_phi(c)), dch = cubic_discriminant(characteristic_phi(c));
        rows.push_back({"D_as vs D_ch at b12=0 (a20=4, b30=1, b03=1)", "D_as = D_ch",
                        "D_as = 37/4, D_ch = -91/64", "D_as = " + detail::str(das) + ", D_ch = " + detail::str(dch),
                        das == Q(37, 4) && dch == Q(-91, 64)});
    }
    {
        // alpha_ch normalization.
        EdgeJet j;
        j.a20 = 0.5;
        j.b30 = 1.0;
        j.b12 = -0.75;
        j.b03 = 1.25;
        const LiftedEquation eq(build_geometric_bde(j, FoliationKind::Characteristic), Chart::du_dv);
        const Poly1<double> got = eq.alpha();
        const Poly1<double> quarter = characteristic_alpha_quarter_variant(j.coefficients());
        const Poly1<double> full = characteristic_alpha(j.coefficients());
        const double scale = detail::max_abs(full);
        bool ok = true;
        for (std::size_t k = 0; k < 3; ++k)
            ok = ok && std::abs(got[k] - full[k]) <= 1e-12 * scale && std::abs(got[k] - 2.0 * quarter[k]) <= 1e-12 * scale;
        char buf[160];
        std::snprintf(buf, sizeof buf, "ratio %.17g", got[1] / quarter[1]);
        rows.push_back({"alpha_ch normalization (a20=1/2, b30=1, b12=-3/4, b03=5/4)", "ratio 1", "ratio 2", buf,
                        ok});
    }
    return rows;
}

inline VerifyReport run_verify(const VerifyConfig& cfg)
{
    if (cfg.trials <= 0 || !(cfg.tol > 0.0))
        throw Error(ErrorKind::InvalidConfig, "trials and tolerance must be positive");
    VerifyReport r;
    r.suites.push_back(suite_closed_forms(cfg));
    r.suites.push_back(suite_discriminants(cfg));
    r.suites.push_back(suite_eigenvalues(cfg));
    r.suites.push_back(suite_tangency(cfg));
    r.suites.push_back(suite_sectors(cfg));
    r.suites.push_back(suite_no_three_nodes(cfg));
    r.discrepancies = discrepancy_ledger();
    return r;
}

inline std::string VerifyReport::table() const
{
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-28s %8s %8s %12s %12s %s\n", "suite", "checks", "failed", "worst", "threshold",
                  "status");
    out += buf;
    for (const SuiteResult& s : suites) {
        std::snprintf(buf, sizeof buf, "%-28s %8d %8d %12.3e %12.3e %s\n", s.name.c_str(), s.checks, s.failures,
                      s.worst, s.threshold, s.passed() ? "PASS" : "FAIL");
        out += buf;
    }
    out += "\ndiscrepancies (printed | derived | computed)\n";
    for (const DiscrepancyRow& d : discrepancies)
        out += "  " + d.item + ": " + d.printed + " | " + d.derived + " | " + d.computed + "  " +
               (d.reproduced ? "REPRODUCED" : "NOT REPRODUCED") + "\n";
    out += passed() ? "\nverify: PASS\n" : "\nverify: FAIL\n";
    return out;
}

// ---------------------------------------------------------------------------
// Survey
// ---------------------------------------------------------------------------

struct SurveyConfig {
    int trials = 1000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

struct SurveyReport {
    int trials = 0;
    std::map<std::string, int> asymptotic;
    std::map<std::string, int> characteristic;
    std::map<std::pair<std::string, std::string>, int> co_occurrence; ///< (asymptotic, characteristic)

    std::string table() const;
};

inline SurveyReport run_survey(const SurveyConfig& cfg)
{
    if (cfg.trials <= 0)
        throw Error(ErrorKind::InvalidConfig, "trials must be positive");
    std::vector<std::pair<std::string, std::string>> got(static_cast<std::size_t>(cfg.trials));
    parallel_for(got.size(), cfg.workers, [&](std::size_t i) {
        const EdgeJet j = detail::trial_jet(cfg.seed, i);
        got[i] = {std::string(to_string(classify_edge_foliation(j, FoliationKind::Asymptotic).top_class)),
                  std::string(to_string(classify_edge_foliation(j, FoliationKind::Characteristic).top_class))};
    });
    SurveyReport r;
    r.trials = cfg.trials;
    for (const auto& [a, c] : got) {
        ++r.asymptotic[a];
        ++r.characteristic[c];
        ++r.co_occurrence[{a, c}];
    }
    return r;
}

inline std::string SurveyReport::table() const
{
    static const std::array<std::pair<const char*, const char*>, 6> classes{{{"ThreeSaddles", "3S"},
                                                                               {"TwoSaddlesOneNode", "2S1N"},
                                                                               {"OneSaddleTwoNodes", "1S2N"},
                                                                               {"OneSaddle", "1S"},
                                                                               {"OneNode", "1N"},
                                                                               {"Degenerate", "Deg"}}};
    auto get = [](const std::map<std::string, int>& m, const std::string& k) {
        const auto it = m.find(k);
        return it == m.end() ? 0 : it->second;
    };
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "survey over %d edge-degenerate jets\n\n%-20s %5s %12s %15s\n", trials, "class",
                  "code", "asymptotic", "characteristic");
    out += buf;
    for (const auto& [name, code] : classes) {
        std::snprintf(buf, sizeof buf, "%-20s %5s %12d %15d\n", name, code, get(asymptotic, name),
                      get(characteristic, name));
        out += buf;
    }
    out += "\nco-occurrence (rows asymptotic, columns characteristic)\n";
    std::snprintf(buf, sizeof buf, "%-6s", "");
    out += buf;
    for (const auto& c : classes) {
        std::snprintf(buf, sizeof buf, " %6s", c.second);
        out += buf;
    }
    out += "\n";
    for (const auto& a : classes) {
        std::snprintf(buf, sizeof buf, "%-6s", a.second);
        out += buf;
        for (const auto& c : classes) {
            const auto it = co_occurrence.find({a.first, c.first});
            std::snprintf(buf, sizeof buf, " %6d", it == co_occurrence.end() ? 0 : it->second);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

} // namespace edgefol
