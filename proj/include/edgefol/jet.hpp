#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "error.hpp"
#include "polynomial.hpp"

namespace edgefol {

/// The six leading normal-form coefficients, generic over the scalar so the
/// closed-form invariants can be evaluated in exact arithmetic as well.
template <typename T>
struct JetCoefficients {
    T a20{}, a30{}, b20{}, b30{}, b12{}, b03{};
};

/// Remainder h(u,v) = (0, u^4 h1, u^4 h2 + u^2 v^2 h3 + u v^3 h4 + v^4 h5).
struct HigherTerms {
    Poly1<double> h1, h2, h3, h4;
    Poly2<double> h5;

    bool is_zero() const
    {
        auto zero1 = [](const Poly1<double>& p) {
            for (double c : p.coefficients())
                if (c != 0.0)
                    return false;
            return true;
        };
        return zero1(h1) && zero1(h2) && zero1(h3) && zero1(h4) && h5.is_zero();
    }
};

/// Normal-form jet of a cuspidal edge. a20 is the singular curvature, b20 the
/// limiting normal curvature, b03 the cuspidal curvature and b12 the
/// cusp-directional torsion at the origin.
struct EdgeJet {
    double a20 = 0.0;
    double a30 = 0.0;
    double b20 = 0.0;
    double b30 = 0.0;
    double b12 = 0.0;
    double b03 = 1.0;
    HigherTerms higher;

    JetCoefficients<double> coefficients() const { return {a20, a30, b20, b30, b12, b03}; }

    /// Largest leading coefficient magnitude, floored at 1.
    double scale() const
    {
        double s = 1.0;
        for (double c : {a20, a30, b20, b30, b12, b03})
            s = std::max(s, std::abs(c));
        return s;
    }
};

/// Unvalidated coefficient record, as read from a file or built by hand.
struct RawJet {
    double a20 = 0.0, a30 = 0.0, b20 = 0.0, b30 = 0.0, b12 = 0.0, b03 = 0.0;
    std::optional<HigherTerms> higher;
};

struct JetValidation {
    double zero_tolerance = 1e-12;
    int degree_cap = 3;
};

namespace detail {

inline void require_finite(double x, const char* name)
{
    if (!std::isfinite(x))
        throw Error(ErrorKind::NonFinite, std::string("coefficient ") + name + " is not finite");
}

inline void check_poly(const Poly1<double>& p, const char* name, int cap)
{
    for (double c : p.coefficients())
        require_finite(c, name);
    if (p.degree() > cap)
        throw Error(ErrorKind::MalformedJetFile,
                    std::string(name) + " exceeds degree cap " + std::to_string(cap));
}

} // namespace detail

inline EdgeJet validate_jet(const RawJet& raw, const JetValidation& opts = {})
{
    detail::require_finite(raw.a20, "a20");
    detail::require_finite(raw.a30, "a30");
    detail::require_finite(raw.b20, "b20");
    detail::require_finite(raw.b30, "b30");
    detail::require_finite(raw.b12, "b12");
    detail::require_finite(raw.b03, "b03");

    if (std::abs(raw.b03) <= opts.zero_tolerance)
        throw Error(ErrorKind::ZeroCuspidalCurvature, "b03 must be nonzero");
    if (raw.b20 < 0.0)
        throw Error(ErrorKind::NegativeLimitingNormalCurvature, "b20 must be >= 0");

    EdgeJet jet{raw.a20, raw.a30, raw.b20, raw.b30, raw.b12, raw.b03, {}};
    if (raw.higher) {
        const HigherTerms& h = *raw.higher;
        detail::check_poly(h.h1, "h1", opts.degree_cap);
        detail::check_poly(h.h2, "h2", opts.degree_cap);
        detail::check_poly(h.h3, "h3", opts.degree_cap);
        detail::check_poly(h.h4, "h4", opts.degree_cap);
        for (int i = 0; i <= h.h5.degree_bound(); ++i)
            for (int j = 0; i + j <= h.h5.degree_bound(); ++j) {
                detail::require_finite(h.h5.coeff(i, j), "h5");
                if (h.h5.coeff(i, j) != 0.0 && i + j > opts.degree_cap)
                    throw Error(ErrorKind::MalformedJetFile,
                                "h5 exceeds degree cap " + std::to_string(opts.degree_cap));
            }
        jet.higher = h;
    }
    return jet;
}

inline RawJet to_raw(const EdgeJet& jet)
{
    RawJet r{jet.a20, jet.a30, jet.b20, jet.b30, jet.b12, jet.b03, std::nullopt};
    if (!jet.higher.is_zero())
        r.higher = jet.higher;
    return r;
}

} // namespace edgefol
