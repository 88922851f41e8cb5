#pragma once

#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "farey_nielsen/boundary.hpp"
#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/farey_graph.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/matrix_actions.hpp"
#include "farey_nielsen/orbits.hpp"

namespace farey_nielsen {

struct RenderSpec {
    Rational x_min{Int(-2)};
    Rational x_max{Int(2)};
    int depth = 6;           // mediant recursion depth
    int width = 800;
    int height = 400;
    int orbit_window = 8;    // orbit edges drawn for A^k rep, |k| <= window
    // explicit (representative, color) highlights; derived from the matrix
    // when empty
    std::vector<std::pair<FareyVertex, std::string>> highlights;
};

inline constexpr int kMaxRenderDepth = 12;

namespace detail {

struct Canvas {
    double x0, x1;  // value range
    int width, height;
    double axis_y, top_y;

    double to_x(const Rational& v) const {
        double t = (to_double(Int(v.num())) / to_double(Int(v.den())) - x0) / (x1 - x0);
        return t * (width - 40) + 20;
    }
};

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline bool in_range(const FareyVertex& v, const Rational& lo, const Rational& hi) {
    if (v.is_infinity()) return false;
    BoundaryPoint b(v.boundary_value());
    return qi_compare(b, BoundaryPoint(lo)) >= 0 && qi_compare(b, BoundaryPoint(hi)) <= 0;
}

inline void mediant_edges(const FareyVertex& u, const FareyVertex& v, int depth, std::set<FareyEdge>& out) {
    if (depth <= 0) return;
    FareyVertex m(u.p() + v.p(), u.q() + v.q());
    out.insert(FareyEdge(u, m));
    out.insert(FareyEdge(m, v));
    mediant_edges(u, m, depth - 1, out);
    mediant_edges(m, v, depth - 1, out);
}

inline void draw_edge(std::ostringstream& svg, const Canvas& cv, const FareyEdge& e) {
    if (e.second().is_infinity()) {
        double x = cv.to_x(e.first().boundary_value());
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(cv.axis_y) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(cv.top_y) << "\"/>\n";
        return;
    }
    double xa = cv.to_x(e.first().boundary_value());
    double xb = cv.to_x(e.second().boundary_value());
    double r = (xb - xa) / 2.0;
    svg << "<path d=\"M " << fmt(xa) << " " << fmt(cv.axis_y) << " A " << fmt(r) << " " << fmt(r)
        << " 0 0 1 " << fmt(xb) << " " << fmt(cv.axis_y) << "\"/>\n";
}

}  // namespace detail

// Upper half-plane picture: Farey edges as semicircles over the axis (edges
// at infinity as vertical rays), with the 1-orbits of A highlighted.
inline std::string render_svg(const IntMatrix2& m, const RenderSpec& spec) {
    if (!(qi_compare(BoundaryPoint(spec.x_min), BoundaryPoint(spec.x_max)) < 0) || spec.x_min.is_infinity() ||
        spec.x_max.is_infinity())
        throw Error(Errc::RangeEmpty, "x range is empty");
    if (spec.depth < 0 || spec.depth > kMaxRenderDepth)
        throw Error(Errc::DepthOverflow, "mediant depth out of range");
    if (spec.width <= 0 || spec.height <= 0) throw Error(Errc::RangeEmpty, "image dimensions must be positive");

    static const char* default_colors[] = {"#d62728", "#1f77b4"};
    std::vector<std::pair<FareyVertex, std::string>> highlights = spec.highlights;
    if (highlights.empty()) {
        std::vector<FareyVertex> reps = one_orbit_representatives(m);  // NotTwoGenerated propagates
        for (std::size_t i = 0; i < reps.size(); ++i) highlights.emplace_back(reps[i], default_colors[i % 2]);
    } else {
        for (const auto& [rep, color] : highlights) {
            if (!in_sa(m, rep)) throw Error(Errc::NotInSA, "highlight vertex " + rep.str() + " is not on a 1-orbit");
        }
    }

    detail::Canvas cv{to_double(Int(spec.x_min.num())) / to_double(Int(spec.x_min.den())),
                      to_double(Int(spec.x_max.num())) / to_double(Int(spec.x_max.den())),
                      spec.width, spec.height, spec.height - 40.0, 20.0};

    // background tessellation: integer edges in range + mediant subdivision
    std::set<FareyEdge> base;
    Int lo = floor_div(spec.x_min.num(), spec.x_min.den());
    Int hi = floor_div(spec.x_max.num(), spec.x_max.den()) + 1;
    for (Int n = lo; n < hi; ++n) {
        FareyVertex a = FareyVertex::from_integer(n), b = FareyVertex::from_integer(n + 1);
        if (detail::in_range(a, spec.x_min, spec.x_max)) base.insert(FareyEdge(a, FareyVertex::infinity()));
        if (detail::in_range(a, spec.x_min, spec.x_max) && detail::in_range(b, spec.x_min, spec.x_max)) {
            base.insert(FareyEdge(a, b));
            detail::mediant_edges(a, b, spec.depth, base);
        }
    }
    FareyVertex last = FareyVertex::from_integer(hi);
    if (detail::in_range(last, spec.x_min, spec.x_max)) base.insert(FareyEdge(last, FareyVertex::infinity()));

    // orbit edges v -> Av over a symmetric window around each representative
    auto orbit_edges = [&](const FareyVertex& rep) {
        std::set<FareyEdge> out;
        OneOrbit orbit = one_orbit_of(m, rep, spec.orbit_window);
        const std::vector<FareyVertex>& w = orbit.window;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) out.insert(FareyEdge(w[i], w[i + 1]));
        if (orbit.finite && w.size() >= 2) out.insert(FareyEdge(w.back(), w.front()));
        return out;
    };
    auto visible = [&](const FareyEdge& e) {
        if (e.second().is_infinity()) return detail::in_range(e.first(), spec.x_min, spec.x_max);
        return detail::in_range(e.first(), spec.x_min, spec.x_max) &&
               detail::in_range(e.second(), spec.x_min, spec.x_max);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"0\" y1=\"" << detail::fmt(cv.axis_y) << "\" x2=\"" << spec.width << "\" y2=\""
        << detail::fmt(cv.axis_y) << "\" stroke=\"#222\" stroke-width=\"1\"/>\n";

    svg << "<g fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.8\">\n";
    for (const FareyEdge& e : base) {
        if (visible(e)) detail::draw_edge(svg, cv, e);
    }
    svg << "</g>\n";

    for (std::size_t i = 0; i < highlights.size(); ++i) {
        svg << "<g class=\"orbit\" id=\"orbit-" << i << "\" fill=\"none\" stroke=\"" << highlights[i].second
            << "\" stroke-width=\"1.8\">\n";
        for (const FareyEdge& e : orbit_edges(highlights[i].first)) {
            if (visible(e)) detail::draw_edge(svg, cv, e);
        }
        svg << "</g>\n";
    }

    // integer tick labels
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\" text-anchor=\"middle\">\n";
    for (Int n = lo; n <= hi; ++n) {
        FareyVertex a = FareyVertex::from_integer(n);
        if (!detail::in_range(a, spec.x_min, spec.x_max)) continue;
        svg << "<text x=\"" << detail::fmt(cv.to_x(a.boundary_value())) << "\" y=\""
            << detail::fmt(cv.axis_y + 16) << "\">" << to_string(n) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace farey_nielsen
