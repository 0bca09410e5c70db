#pragma once

// Jet file format: a JSON object with the six keys a20, a30, b20, b30, b12, b03
// and optional h1..h4 (coefficient arrays, ascending degree) and h5 (array of
// [i, j, c] monomial triples). Unknown keys are rejected.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "jet.hpp"

namespace edgefol {

namespace detail {

inline double json_number(const nlohmann::json& value, const std::string& key)
{
    if (!value.is_number())
        throw Error(ErrorKind::MalformedJetFile, "key '" + key + "' must be a number");
    return value.get<double>();
}

inline Poly1<double> json_poly1(const nlohmann::json& value, const std::string& key)
{
    if (!value.is_array())
        throw Error(ErrorKind::MalformedJetFile, "key '" + key + "' must be an array of numbers");
    std::vector<double> c;
    for (const auto& x : value)
        c.push_back(json_number(x, key));
    return Poly1<double>(std::move(c));
}

inline Poly2<double> json_poly2(const nlohmann::json& value, const std::string& key)
{
    if (!value.is_array())
        throw Error(ErrorKind::MalformedJetFile, "key '" + key + "' must be an array of [i, j, c] triples");
    Poly2<double> p;
    for (const auto& t : value) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
            throw Error(ErrorKind::MalformedJetFile, "key '" + key + "' entries must be [i, j, c]");
        const int i = t[0].get<int>();
        const int j = t[1].get<int>();
        if (i < 0 || j < 0)
            throw Error(ErrorKind::MalformedJetFile, "negative exponent in '" + key + "'");
        p.add(i, j, json_number(t[2], key));
    }
    return p;
}

} // namespace detail

inline RawJet parse_raw_jet(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::MalformedJetFile, e.what());
    }
    if (!doc.is_object())
        throw Error(ErrorKind::MalformedJetFile, "top level must be an object");

    RawJet raw;
    HigherTerms higher;
    bool has_higher = false;
    int seen = 0;
    for (const auto& [key, value] : doc.items()) {
        if (key == "a20") raw.a20 = detail::json_number(value, key), ++seen;
        else if (key == "a30") raw.a30 = detail::json_number(value, key), ++seen;
        else if (key == "b20") raw.b20 = detail::json_number(value, key), ++seen;
        else if (key == "b30") raw.b30 = detail::json_number(value, key), ++seen;
        else if (key == "b12") raw.b12 = detail::json_number(value, key), ++seen;
        else if (key == "b03") raw.b03 = detail::json_number(value, key), ++seen;
        else if (key == "h1") higher.h1 = detail::json_poly1(value, key), has_higher = true;
        else if (key == "h2") higher.h2 = detail::json_poly1(value, key), has_higher = true;
        else if (key == "h3") higher.h3 = detail::json_poly1(value, key), has_higher = true;
        else if (key == "h4") higher.h4 = detail::json_poly1(value, key), has_higher = true;
        else if (key == "h5") higher.h5 = detail::json_poly2(value, key), has_higher = true;
        else
            throw Error(ErrorKind::MalformedJetFile, "unknown key '" + key + "'");
    }
    if (seen != 6)
        throw Error(ErrorKind::MalformedJetFile, "all of a20, a30, b20, b30, b12, b03 are required");
    if (has_higher)
        raw.higher = std::move(higher);
    return raw;
}

inline EdgeJet parse_jet(const std::string& text, const JetValidation& opts = {})
{
    return validate_jet(parse_raw_jet(text), opts);
}

inline EdgeJet load_jet(const std::string& path, const JetValidation& opts = {})
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::MalformedJetFile, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_jet(ss.str(), opts);
}

inline nlohmann::ordered_json jet_to_json(const EdgeJet& jet)
{
    nlohmann::ordered_json j;
    j["a20"] = jet.a20;
    j["a30"] = jet.a30;
    j["b20"] = jet.b20;
    j["b30"] = jet.b30;
    j["b12"] = jet.b12;
    j["b03"] = jet.b03;
    if (jet.higher.is_zero())
        return j;

    auto poly1 = [](const Poly1<double>& p) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (double c : p.coefficients())
            a.push_back(c);
        return a;
    };
    j["h1"] = poly1(jet.higher.h1);
    j["h2"] = poly1(jet.higher.h2);
    j["h3"] = poly1(jet.higher.h3);
    j["h4"] = poly1(jet.higher.h4);
    nlohmann::ordered_json h5 = nlohmann::ordered_json::array();
    const auto& p = jet.higher.h5;
    for (int i = 0; i <= p.degree_bound(); ++i)
        for (int k = 0; i + k <= p.degree_bound(); ++k)
            if (p.coeff(i, k) != 0.0)
                h5.push_back({i, k, p.coeff(i, k)});
    j["h5"] = h5;
    return j;
}

inline std::string serialize_jet(const EdgeJet& jet) { return jet_to_json(jet).dump(2) + "\n"; }

} // namespace edgefol
