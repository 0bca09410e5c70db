#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <edgefol/command.hpp>
#include <edgefol/serialize.hpp>
#include <edgefol/verify.hpp>

using namespace edgefol;

namespace {

const std::string data_dir = EDGEFOL_DATA_DIR;

std::string jet_file(const std::string& name) { return data_dir + "/jets/" + name + ".json"; }

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "edgefol_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const CommandConfig& cfg)
{
    std::ostringstream out, log;
    Logger lg;
    lg.sink = &log;
    const int code = run_command(cfg, out, lg);
    return {code, out.str()};
}

VerifyConfig small(unsigned workers = 1)
{
    VerifyConfig c;
    c.trials = 40;
    c.heavy_trials = 10;
    c.seed = 7;
    c.workers = workers;
    return c;
}

} // namespace

TEST(Serialize, ClassificationFields)
{
    const EdgeJet j = load_jet(jet_file("three_saddles"));
    const auto js = nlohmann::json::parse(serialize_classification(classify_edge_foliation(j, FoliationKind::Asymptotic)));
    EXPECT_EQ(js["top_class"], "ThreeSaddles");
    EXPECT_EQ(js["origin_case"], "Case3");
    EXPECT_EQ(js["foliation"], "asymptotic");
    ASSERT_EQ(js["invariants"]["roots"].size(), 3u);
    for (const auto& r : js["invariants"]["roots"]) {
        EXPECT_EQ(r["lifted_type"], "saddle");
        EXPECT_LT(r["eigen_product"].get<double>(), 0.0);
    }
    EXPECT_FALSE(js["convention_note"].get<std::string>().empty());
}

TEST(Serialize, CubicAnalysisAndTopClass)
{
    const EdgeJet j = load_jet(jet_file("one_saddle"));
    const CubicAnalysis a = cubic_analysis(build_geometric_bde(j, FoliationKind::Asymptotic));
    const auto js = to_json(a);
    EXPECT_EQ(js["roots"].size(), a.roots.size());
    EXPECT_EQ(js["phi"].size(), 4u);
    EXPECT_TRUE(js.contains("convention_note"));
    const auto t = to_json(TopClass::degenerate("why"));
    EXPECT_EQ(t["kind"], "Degenerate");
    EXPECT_EQ(t["reason"], "why");
    // Infinite slopes are written as null.
    RootData r;
    r.chart = Chart::dv_du;
    r.root = 0.0;
    EXPECT_TRUE(to_json(r)["slope_du_dv"].is_null());
}

TEST(Verify, SmallRunPasses)
{
    const VerifyReport r = run_verify(small());
    ASSERT_EQ(r.suites.size(), 6u);
    for (const SuiteResult& s : r.suites) {
        EXPECT_TRUE(s.passed()) << s.name << " worst " << s.worst;
        EXPECT_GT(s.checks, 0) << s.name;
    }
    EXPECT_TRUE(r.passed());
    EXPECT_NE(r.table().find("verify: PASS"), std::string::npos);
}

TEST(Verify, DeterministicAcrossWorkers)
{
    EXPECT_EQ(run_verify(small(1)).table(), run_verify(small(3)).table());
}

TEST(Verify, DiscrepancyLedgerExact)
{
    const auto rows = discrepancy_ledger();
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& d : rows)
        EXPECT_TRUE(d.reproduced) << d.item;
    EXPECT_EQ(rows[0].computed, "-7");
    EXPECT_EQ(rows[0].printed, "-14");
    EXPECT_EQ(rows[1].computed, "-395/108");
    EXPECT_EQ(rows[1].printed, "-5/4");
    EXPECT_EQ(rows[2].computed, "D_as = 37/4, D_ch = -91/64");
}

TEST(Verify, ExactL2AgreesWithFloatingSurface)
{
    using Q = Rational;
    const JetCoefficients<Q> c{Q(1), Q(2), Q(0), Q(3), Q(5), Q(7)};
    const Poly2<Q> l2 = detail::exact_l2(c);
    EdgeJet j;
    j.a20 = 1;
    j.a30 = 2;
    j.b30 = 3;
    j.b12 = 5;
    j.b03 = 7;
    const FormPolynomials f = form_polynomials(j);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            EXPECT_NEAR(boost::rational_cast<double>(l2.coeff(a, b)), f.L2.coeff(a, b), 1e-12) << a << "," << b;
}

TEST(Verify, InvalidConfigRejected)
{
    VerifyConfig c = small();
    c.trials = 0;
    EXPECT_THROW(run_verify(c), Error);
    SurveyConfig s;
    s.trials = -1;
    EXPECT_THROW(run_survey(s), Error);
}

TEST(Survey, CountsAndDeterminism)
{
    SurveyConfig c;
    c.trials = 200;
    c.seed = 3;
    const SurveyReport a = run_survey(c);
    c.workers = 4;
    const SurveyReport b = run_survey(c);
    EXPECT_EQ(a.table(), b.table());
    int as = 0, ch = 0, co = 0;
    for (const auto& [k, n] : a.asymptotic)
        as += n;
    for (const auto& [k, n] : a.characteristic)
        ch += n;
    for (const auto& [k, n] : a.co_occurrence)
        co += n;
    EXPECT_EQ(as, 200);
    EXPECT_EQ(ch, 200);
    EXPECT_EQ(co, 200);
    for (const auto& [k, n] : a.asymptotic)
        EXPECT_NE(k, "CuspFamily");
}

TEST(Command, ClassifyMatchesLibrary)
{
    CommandConfig cfg;
    cfg.jet_path = jet_file("three_saddles");
    cfg.foliation = "characteristic";
    const Outcome r = run(cfg);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, serialize_classification(
                         classify_edge_foliation(load_jet(cfg.jet_path), FoliationKind::Characteristic)));
}

TEST(Command, ClassifyExamples)
{
    CommandConfig cfg;
    cfg.jet_path = jet_file("one_saddle");
    cfg.foliation = "lc";
    EXPECT_EQ(nlohmann::json::parse(run(cfg).out)["top_class"], "RegularPair");
    cfg.jet_path = jet_file("cusp_family");
    cfg.foliation = "asymptotic";
    EXPECT_EQ(nlohmann::json::parse(run(cfg).out)["top_class"], "CuspFamily");
}

TEST(Command, ConfigErrorsExitTwo)
{
    CommandConfig cfg;
    cfg.jet_path = jet_file("one_saddle");
    cfg.box = 2.5;
    EXPECT_EQ(run(cfg).code, 2);
    cfg.box = 0.5;
    cfg.step = 0.0;
    EXPECT_EQ(run(cfg).code, 2);
    cfg.step = 1e-3;
    cfg.foliation = "geodesic";
    EXPECT_EQ(run(cfg).code, 2);
    cfg.foliation = "lc";
    cfg.jet_path = jet_file("bad_key");
    cfg.json = true;
    const Outcome r = run(cfg);
    EXPECT_EQ(r.code, 2);
    const auto js = nlohmann::json::parse(r.out);
    EXPECT_EQ(js["error"], "MalformedJetFile");
    cfg.jet_path = jet_file("one_saddle");
    cfg.command = Command::trace;
    EXPECT_EQ(run(cfg).code, 2); // no --out
}

TEST(Command, TraceAndRenderWriteFiles)
{
    CommandConfig cfg;
    cfg.jet_path = jet_file("three_saddles");
    cfg.seeds = 4;
    cfg.command = Command::trace;
    cfg.out = scratch("trace.csv").string();
    ASSERT_EQ(run(cfg).code, 0);
    EXPECT_EQ(slurp(cfg.out).rfind("t,u,v,p,x,y,z,curve_id,separatrix\n", 0), 0u);

    cfg.command = Command::render;
    cfg.out = scratch("portrait.svg").string();
    cfg.surface = true;
    std::filesystem::remove(scratch("portrait_surface.svg"));
    ASSERT_EQ(run(cfg).code, 0);
    EXPECT_NE(slurp(cfg.out).find("<!-- top_class: ThreeSaddles -->"), std::string::npos);
    EXPECT_NE(slurp(scratch("portrait_surface.svg")).find("class=\"edge\""), std::string::npos);
}

TEST(Command, VerifyAndSurveyOutput)
{
    CommandConfig cfg;
    cfg.command = Command::verify;
    cfg.trials = 20;
    cfg.json = true;
    const Outcome v = run(cfg);
    EXPECT_EQ(v.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(v.out)["passed"].get<bool>());
    cfg.command = Command::survey;
    cfg.json = false;
    const Outcome s = run(cfg);
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("co-occurrence"), std::string::npos);
}

TEST(Command, SurfacePath)
{
    EXPECT_EQ(detail::surface_path("out/a.svg"), "out/a_surface.svg");
    EXPECT_EQ(detail::surface_path("out.d/a"), "out.d/a_surface.svg");
}

TEST(Command, LogLevels)
{
    EXPECT_EQ(log_level_from(nullptr), LogLevel::warn);
    EXPECT_EQ(log_level_from("debug"), LogLevel::debug);
    EXPECT_EQ(log_level_from("error"), LogLevel::error);
    std::ostringstream sink;
    Logger lg{LogLevel::warn, &sink};
    lg.log(LogLevel::info, "hidden");
    lg.log(LogLevel::error, "shown");
    EXPECT_EQ(sink.str(), "edgefol error: shown\n");
}
