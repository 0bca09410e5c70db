#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "error.hpp"
#include "foliations.hpp"
#include "jet_io.hpp"
#include "render.hpp"
#include "serialize.hpp"
#include "tracer.hpp"
#include "verify.hpp"

namespace edgefol {

enum class Command { classify, trace, render, verify, survey };

constexpr std::string_view to_string(Command c) noexcept
{
    switch (c) {
    case Command::classify: return "classify";
    case Command::trace: return "trace";
    case Command::render: return "render";
    case Command::verify: return "verify";
    case Command::survey: return "survey";
    }
    return "classify";
}

inline std::optional<Command> parse_command(std::string_view s)
{
    for (Command c : {Command::classify, Command::trace, Command::render, Command::verify, Command::survey})
        if (s == to_string(c))
            return c;
    return std::nullopt;
}

enum class LogLevel { error, warn, info, debug };

inline LogLevel log_level_from(const char* value)
{
    const std::string_view s = value ? value : "";
    if (s == "error") return LogLevel::error;
    if (s == "info") return LogLevel::info;
    if (s == "debug") return LogLevel::debug;
    return LogLevel::warn;
}

struct Logger {
    LogLevel level = LogLevel::warn;
    std::ostream* sink = &std::cerr;

    void log(LogLevel at, const std::string& msg) const
    {
        static constexpr const char* names[] = {"error", "warn", "info", "debug"};
        if (at <= level && sink)
            *sink << "edgefol " << names[static_cast<int>(at)] << ": " << msg << '\n';
    }
};

struct CommandConfig {
    Command command = Command::classify;
    std::string jet_path;
    std::string foliation = "asymptotic";
    double box = 0.5;
    double step = 1e-3;
    int seeds = 24;     ///< per side of the box
    int max_steps = 20000;
    int trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::string out;
    bool json = false;
    bool surface = false;
    unsigned workers = 1;

    void validate() const
    {
        if (!(box > 0.0) || box > 2.0)
            throw Error(ErrorKind::InvalidConfig, "box must lie in (0, 2]");
        if (!(step > 0.0) || seeds <= 0 || max_steps <= 0 || trials <= 0 || !(tol > 0.0) || workers == 0)
            throw Error(ErrorKind::InvalidConfig, "numeric settings must be positive");
        if (!parse_foliation_kind(foliation))
            throw Error(ErrorKind::InvalidConfig, "unknown foliation '" + foliation + "'");
        const bool needs_jet =
            command == Command::classify || command == Command::trace || command == Command::render;
        if (needs_jet && jet_path.empty())
            throw Error(ErrorKind::InvalidConfig, std::string(to_string(command)) + " requires --jet");
        if ((command == Command::trace || command == Command::render) && out.empty())
            throw Error(ErrorKind::InvalidConfig, std::string(to_string(command)) + " requires --out");
    }

    PortraitConfig portrait() const
    {
        PortraitConfig p;
        p.box = box;
        p.step = step;
        p.seeds_per_side = seeds;
        p.max_steps = max_steps;
        p.workers = workers;
        return p;
    }
};

/// Config and input errors exit with 2; everything else that fails exits with 1.
inline int exit_code_for(ErrorKind k) noexcept
{
    switch (k) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::MalformedJetFile:
    case ErrorKind::NonFinite:
    case ErrorKind::ZeroCuspidalCurvature:
    case ErrorKind::NegativeLimitingNormalCurvature:
    case ErrorKind::HigherTermsPresent:
        return 2;
    default:
        return 1;
    }
}

inline nlohmann::ordered_json to_json(const VerifyReport& r)
{
    nlohmann::ordered_json j;
    j["passed"] = r.passed();
    j["suites"] = nlohmann::ordered_json::array();
    for (const SuiteResult& s : r.suites)
        j["suites"].push_back({{"name", s.name},
                               {"checks", s.checks},
                               {"failures", s.failures},
                               {"worst", s.worst},
                               {"threshold", s.threshold},
                               {"passed", s.passed()}});
    j["discrepancies"] = nlohmann::ordered_json::array();
    for (const DiscrepancyRow& d : r.discrepancies)
        j["discrepancies"].push_back({{"item", d.item},
                                      {"printed", d.printed},
                                      {"derived", d.derived},
                                      {"computed", d.computed},
                                      {"reproduced", d.reproduced}});
    return j;
}

inline nlohmann::ordered_json to_json(const SurveyReport& r)
{
    nlohmann::ordered_json j;
    j["trials"] = r.trials;
    j["asymptotic"] = r.asymptotic;
    j["characteristic"] = r.characteristic;
    j["co_occurrence"] = nlohmann::ordered_json::array();
    for (const auto& [key, n] : r.co_occurrence)
        j["co_occurrence"].push_back({{"asymptotic", key.first}, {"characteristic", key.second}, {"count", n}});
    return j;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::InvalidConfig, "cannot write '" + path + "'");
    f << text;
    if (!f)
        throw Error(ErrorKind::InvalidConfig, "failed writing '" + path + "'");
}

/// out.svg -> out_surface.svg
inline std::string surface_path(const std::string& out)
{
    const auto dot = out.rfind('.');
    const auto slash = out.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + "_surface.svg";
    return out.substr(0, dot) + "_surface" + out.substr(dot);
}

} // namespace detail

/// Runs one command; results go to `out`, diagnostics to `log`.
inline int run_command(const CommandConfig& cfg, std::ostream& out, const Logger& log = {})
{
    try {
        cfg.validate();
        const FoliationKind kind = *parse_foliation_kind(cfg.foliation);
        log.log(LogLevel::info, std::string("command ") + std::string(to_string(cfg.command)));

        switch (cfg.command) {
        case Command::classify: {
            const EdgeJet jet = load_jet(cfg.jet_path);
            out << serialize_classification(classify_edge_foliation(jet, kind));
            return 0;
        }
        case Command::trace:
        case Command::render: {
            const EdgeJet jet = load_jet(cfg.jet_path);
            const Portrait p = trace_portrait(build_geometric_bde(jet, kind), cfg.portrait());
            log.log(LogLevel::info, std::to_string(p.curves.size()) + " curves, " +
                                        std::to_string(p.singular_points.size()) + " singular points");
            if (cfg.command == Command::trace) {
                detail::write_file(cfg.out, curves_csv(jet, p));
            } else {
                detail::write_file(cfg.out, portrait_to_svg(p));
                if (cfg.surface) {
                    const std::string path = detail::surface_path(cfg.out);
                    detail::write_file(path, surface_view_to_svg(project_to_surface(jet, p)));
                    log.log(LogLevel::info, "wrote " + path);
                }
            }
            log.log(LogLevel::info, "wrote " + cfg.out);
            if (cfg.json)
                out << nlohmann::ordered_json{{"top_class", std::string(to_string(p.top_class))},
                                              {"curves", p.curves.size()},
                                              {"singular_points", p.singular_points.size()},
                                              {"out", cfg.out}}
                           .dump()
                    << '\n';
            return 0;
        }
        case Command::verify: {
            VerifyConfig vc;
            vc.trials = cfg.trials;
            vc.seed = cfg.seed;
            vc.tol = cfg.tol;
            vc.workers = cfg.workers;
            const VerifyReport r = run_verify(vc);
            const std::string text = cfg.json ? to_json(r).dump(2) + "\n" : r.table();
            out << text;
            if (!cfg.out.empty())
                detail::write_file(cfg.out, text);
            if (!r.passed())
                log.log(LogLevel::error, "verification failed");
            return r.passed() ? 0 : 1;
        }
        case Command::survey: {
            SurveyConfig sc;
            sc.trials = cfg.trials;
            sc.seed = cfg.seed;
            sc.workers = cfg.workers;
            const SurveyReport r = run_survey(sc);
            const std::string text = cfg.json ? to_json(r).dump(2) + "\n" : r.table();
            out << text;
            if (!cfg.out.empty())
                detail::write_file(cfg.out, text);
            return 0;
        }
        }
        return 0;
    } catch (const Error& e) {
        log.log(LogLevel::error, e.what());
        if (cfg.json)
            out << nlohmann::ordered_json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump()
                << '\n';
        return exit_code_for(e.kind());
    }
}

} // namespace edgefol
