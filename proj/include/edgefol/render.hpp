#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "tracer.hpp"
#include "vec3.hpp"

namespace edgefol {

struct RenderStyle {
    int width = 800;
    int height = 800;
    double curve_width = 0.8;      ///< pixels
    double separatrix_width = 1.4;
    double locus_width = 1.6;
    double edge_width = 2.4;
    double marker_radius = 4.0;
    std::array<std::string, 2> family_colors{"#1f4e9c", "#b8431f"};
    std::string separatrix_color = "#111111";
    std::string locus_color = "#2a9d3f";
    std::string edge_color = "#000000";
    std::string saddle_color = "#d62728";
    std::string node_color = "#6a3d9a";
    std::string background = "#ffffff";
    std::string dash = "6 4";
    double min_segment_px = 0.5; ///< samples closer than this to the last kept one are dropped
    Vec3 camera{0.0, 0.0, 1.0};  ///< points toward the viewer
    Vec3 up{0.0, 1.0, 0.0};

    void validate() const
    {
        if (width <= 0 || height <= 0)
            throw Error(ErrorKind::InvalidConfig, "image size must be positive");
        if (std::abs(norm(camera) - 1.0) > 1e-9 || std::abs(norm(up) - 1.0) > 1e-9)
            throw Error(ErrorKind::InvalidConfig, "camera direction and up-vector must be unit vectors");
        if (norm(cross(camera, up)) < 1e-9)
            throw Error(ErrorKind::InvalidConfig, "camera direction and up-vector are parallel");
        for (double w : {curve_width, separatrix_width, locus_width, edge_width, marker_radius})
            if (!(w > 0.0))
                throw Error(ErrorKind::InvalidConfig, "stroke widths and marker radius must be positive");
    }
};

/// Orthographic screen frame: x along `right`, y along the projected up-vector,
/// depth along the camera direction (larger is nearer).
struct Camera {
    Vec3 right, up, toward;

    explicit Camera(const RenderStyle& s)
    {
        toward = s.camera;
        Vec3 u = s.up - dot(s.up, toward) * toward;
        up = (1.0 / norm(u)) * u;
        right = cross(up, toward);
    }

    std::array<double, 3> project(const Vec3& x) const { return {dot(x, right), dot(x, up), dot(x, toward)}; }
};

namespace detail {

inline std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x == 0.0 ? 0.0 : x);
    return buf;
}

/// SVG points attribute with near-duplicate samples dropped; y is flipped.
inline std::string points_attr(const std::vector<std::array<double, 2>>& pts, double min_dist)
{
    std::string out;
    std::array<double, 2> last{};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool keep = i == 0 || i + 1 == pts.size() || std::hypot(pts[i][0] - last[0], pts[i][1] - last[1]) >= min_dist;
        if (!keep)
            continue;
        if (!out.empty())
            out += ' ';
        out += fmt(pts[i][0]);
        out += ',';
        out += fmt(-pts[i][1]);
        last = pts[i];
    }
    return out;
}

/// Dash pattern given in pixels, rescaled to user units.
inline std::string dash_attr(const std::string& pattern, double px)
{
    std::string out, tok;
    for (char ch : pattern + " ") {
        if (ch == ' ' || ch == ',') {
            if (!tok.empty()) {
                out += (out.empty() ? "" : " ") + fmt(std::stod(tok) * px);
                tok.clear();
            }
        } else {
            tok += ch;
        }
    }
    return out;
}

inline std::string header(const RenderStyle& st, double x0, double y0, double w, double h)
{
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(st.width) +
         "\" height=\"" + std::to_string(st.height) + "\" viewBox=\"" + fmt(x0) + " " + fmt(y0) + " " + fmt(w) +
         " " + fmt(h) + "\">\n";
    return s;
}

} // namespace detail

/// Domain phase portrait over [-box, box]^2.
inline std::string portrait_to_svg(const Portrait& p, const RenderStyle& st = {})
{
    st.validate();
    if (p.curves.empty() && p.singular_points.empty() && p.discriminant_locus.empty())
        throw Error(ErrorKind::EmptyPortrait, "nothing to draw");

    const double span = 2.0 * p.box;
    const double px = span / std::min(st.width, st.height); // user units per pixel
    const double min_dist = st.min_segment_px * px;

    std::string s = detail::header(st, -p.box, -p.box, span, span);
    s += "<!-- top_class: " + std::string(to_string(p.top_class)) + " -->\n";
    s += "<!-- origin_case: " + std::string(to_string(p.origin_case)) + " -->\n";
    s += "<rect x=\"" + detail::fmt(-p.box) + "\" y=\"" + detail::fmt(-p.box) + "\" width=\"" + detail::fmt(span) +
         "\" height=\"" + detail::fmt(span) + "\" fill=\"" + st.background + "\"/>\n";

    s += "<g id=\"discriminant\" fill=\"none\" stroke=\"" + st.locus_color + "\" stroke-width=\"" +
         detail::fmt(st.locus_width * px) + "\">\n";
    for (const Polyline2& l : p.discriminant_locus)
        s += "<polyline class=\"locus\" points=\"" + detail::points_attr(l, min_dist) + "\"/>\n";
    s += "</g>\n";

    s += "<g id=\"curves\" fill=\"none\" stroke-width=\"" + detail::fmt(st.curve_width * px) + "\">\n";
    for (const TracedCurve& c : p.curves) {
        if (c.separatrix)
            continue;
        const std::string& col = st.family_colors[static_cast<std::size_t>(std::clamp(c.family, 0, 1))];
        s += "<polyline class=\"curve\" stroke=\"" + col + "\" points=\"" +
             detail::points_attr(c.projected(), min_dist) + "\"/>\n";
    }
    s += "</g>\n";

    s += "<g id=\"separatrices\" fill=\"none\" stroke=\"" + st.separatrix_color + "\" stroke-width=\"" +
         detail::fmt(st.separatrix_width * px) + "\">\n";
    const std::string dash = detail::dash_attr(st.dash, px);
    for (const TracedCurve& c : p.curves)
        if (c.separatrix)
            s += "<polyline class=\"separatrix\" stroke-dasharray=\"" + dash + "\" points=\"" +
                 detail::points_attr(c.projected(), min_dist) + "\"/>\n";
    s += "</g>\n";

    s += "<g id=\"singular-points\">\n";
    for (const SingularPoint& sp : p.singular_points) {
        const bool saddle = sp.type == LiftedType::saddle;
        s += "<circle class=\"marker " + std::string(to_string(sp.type)) + "\" cx=\"" + detail::fmt(sp.point.u) +
             "\" cy=\"" + detail::fmt(-sp.point.v) + "\" r=\"" + detail::fmt(st.marker_radius * px) + "\" fill=\"" +
             (saddle ? st.saddle_color : st.node_color) + "\"><title>" + std::string(to_string(sp.type)) +
             " du/dv=" + detail::fmt(sp.point.slope_du_dv()) + "</title></circle>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

/// Orthographic view of 3-space polylines, painted far to near by mean depth.
inline std::string surface_view_to_svg(const std::vector<Polyline3>& lines, const RenderStyle& st = {})
{
    st.validate();
    const Camera cam(st);

    struct Item {
        std::vector<std::array<double, 2>> pts;
        double depth = 0.0;
        Polyline3::Role role;
        std::size_t index;
    };
    std::vector<Item> items;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Item it{{}, 0.0, lines[i].role, i};
        for (const Vec3& x : lines[i].points) {
            const auto q = cam.project(x);
            it.pts.push_back({q[0], q[1]});
            it.depth += q[2];
            xmin = std::min(xmin, q[0]);
            xmax = std::max(xmax, q[0]);
            ymin = std::min(ymin, q[1]);
            ymax = std::max(ymax, q[1]);
        }
        if (!it.pts.empty())
            it.depth /= static_cast<double>(it.pts.size());
        items.push_back(std::move(it));
    }
    if (xmin > xmax) {
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.depth < b.depth; });

    const double w = std::max(xmax - xmin, 1e-12), h = std::max(ymax - ymin, 1e-12);
    const double pad = 0.05 * std::max(w, h);
    const double vw = w + 2 * pad, vh = h + 2 * pad;
    const double px = std::max(vw / st.width, vh / st.height);
    const double min_dist = st.min_segment_px * px;

    std::string s = detail::header(st, xmin - pad, -(ymax + pad), vw, vh);
    s += "<rect x=\"" + detail::fmt(xmin - pad) + "\" y=\"" + detail::fmt(-(ymax + pad)) + "\" width=\"" +
         detail::fmt(vw) + "\" height=\"" + detail::fmt(vh) + "\" fill=\"" + st.background + "\"/>\n";
    s += "<g fill=\"none\">\n";
    for (const Item& it : items) {
        std::string cls, stroke, width, extra;
        switch (it.role) {
        case Polyline3::Role::edge:
            cls = "edge";
            stroke = st.edge_color;
            width = detail::fmt(st.edge_width * px);
            break;
        case Polyline3::Role::separatrix:
            cls = "separatrix";
            stroke = st.separatrix_color;
            width = detail::fmt(st.separatrix_width * px);
            extra = " stroke-dasharray=\"" + detail::dash_attr(st.dash, px) + "\"";
            break;
        case Polyline3::Role::curve:
            cls = "curve";
            stroke = st.family_colors[0];
            width = detail::fmt(st.curve_width * px);
            break;
        }
        s += "<polyline class=\"" + cls + "\" stroke=\"" + stroke + "\" stroke-width=\"" + width + "\"" + extra +
             " points=\"" + detail::points_attr(it.pts, min_dist) + "\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

} // namespace edgefol
