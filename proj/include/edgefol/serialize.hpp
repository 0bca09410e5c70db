#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "bde.hpp"
#include "foliations.hpp"

namespace edgefol {

namespace detail {

/// Non-finite values become null; JSON has no infinities.
inline nlohmann::ordered_json number(double x)
{
    if (!std::isfinite(x))
        return nullptr;
    return x == 0.0 ? 0.0 : x;
}

inline nlohmann::ordered_json poly_json(const Poly1<double>& p)
{
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (double c : p.coefficients())
        a.push_back(number(c));
    return a;
}

} // namespace detail

inline nlohmann::ordered_json to_json(const TopClass& c)
{
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(c.kind));
    if (!c.reason.empty())
        j["reason"] = c.reason;
    return j;
}

inline nlohmann::ordered_json to_json(const RootData& r)
{
    nlohmann::ordered_json j;
    j["root"] = detail::number(r.root);
    j["chart"] = std::string(to_string(r.chart));
    j["slope_du_dv"] = detail::number(r.slope_du_dv());
    j["alpha"] = detail::number(r.alpha);
    j["minus_phi_prime"] = detail::number(r.minus_phi_prime);
    j["eigen_product"] = detail::number(r.eigen_product);
    j["lifted_type"] = std::string(to_string(r.lifted_type));
    return j;
}

inline nlohmann::ordered_json to_json(const CubicAnalysis& a)
{
    nlohmann::ordered_json j;
    j["phi"] = detail::poly_json(a.phi);
    j["alpha"] = detail::poly_json(a.alpha);
    j["D"] = detail::number(a.D);
    j["D_normalized"] = detail::number(a.D_normalized);
    j["roots"] = nlohmann::ordered_json::array();
    for (const RootData& r : a.roots)
        j["roots"].push_back(to_json(r));
    j["convention_note"] = std::string(saddle_convention_note);
    return j;
}

inline nlohmann::ordered_json to_json(const EdgeClassification& c)
{
    nlohmann::ordered_json j;
    j["top_class"] = std::string(to_string(c.top_class));
    if (!c.top_class.reason.empty())
        j["reason"] = c.top_class.reason;
    j["foliation"] = std::string(to_string(c.kind));
    j["origin_case"] = std::string(to_string(c.origin_case));

    const EdgeInvariants& inv = c.invariants;
    nlohmann::ordered_json in;
    in["b20"] = detail::number(inv.b20);
    in["slope"] = detail::number(inv.slope);
    in["parallel_factor"] = detail::number(inv.parallel_factor);
    if (!inv.phi.empty())
        in["phi"] = detail::poly_json(inv.phi);
    if (!inv.alpha.empty())
        in["alpha"] = detail::poly_json(inv.alpha);
    if (inv.D)
        in["D"] = detail::number(*inv.D);
    if (inv.hessian)
        in["hessian"] = detail::number(*inv.hessian);
    in["roots"] = nlohmann::ordered_json::array();
    for (const RootData& r : inv.roots)
        in["roots"].push_back(to_json(r));
    j["invariants"] = std::move(in);
    j["convention_note"] = c.convention_note;
    return j;
}

inline std::string serialize_classification(const EdgeClassification& c) { return to_json(c).dump(2) + "\n"; }

} // namespace edgefol
