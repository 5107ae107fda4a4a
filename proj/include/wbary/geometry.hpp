#pragma once

#include <optional>
#include <vector>

#include "wbary/model.hpp"
#include "wbary/rational.hpp"
#include "wbary/vec2.hpp"

namespace wbary {

// Oriented line {y : a.y = b} with a != 0. The open half-plane a.y < b is
// the "below" side; bisector() puts the first site's cell below.
struct Line {
  Vec2 a;
  Rational b;

  Rational eval(const Vec2& y) const { return dot(a, y) - b; }
};

// Power bisector of sites (x,w) and (x2,w2): the locus where
// |x-y|^2 - w = |x2-y|^2 - w2. Throws std::invalid_argument when x == x2.
Line bisector(const Vec2& x, const Rational& w, const Vec2& x2, const Rational& w2);

// Intersection point of two lines, or nullopt when parallel (or identical).
std::optional<Vec2> line_intersection(const Line& l, const Line& m);

// Closest point of the line to the origin.
Vec2 closest_point_to_origin(const Line& l);

// Clips a convex polygon to the closed half-plane a.y <= b (Sutherland-Hodgman).
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Line& l);

// Twice the signed area of a polygon (shoelace).
Rational polygon_area2(const std::vector<Vec2>& poly);

// Power diagram of distinct sites, built by per-cell half-plane
// intersection. facets holds exactly the bisector lines supporting a
// positive-length edge of some nonempty cell; cell_facets[j] lists the
// facets bounding cell j.
struct PowerDiagram {
  std::vector<Vec2> sites;
  std::vector<Rational> weights;

  struct Facet {
    Line line;  // oriented so site lo's cell is on the below side
    int lo = 0;
    int hi = 0;
  };
  std::vector<Facet> facets;
  std::vector<std::vector<int>> cell_facets;
};

// Requires pairwise-distinct site points (deduplicate first; see oracle).
PowerDiagram power_diagram(const std::vector<Vec2>& sites, const std::vector<Rational>& weights);

// One interior representative point for every 2-cell of the line
// arrangement. sites_hint only enlarges the sampling box. Representatives
// are deduplicated by their sign vector against the input lines.
std::vector<Vec2> enumerate_arrangement_cells(const std::vector<Line>& lines,
                                              const std::vector<Vec2>& sites_hint);

// For each marginal, the lexicographically smallest index attaining
// min_j |x_{i,j} - y|^2 - w_i[j]. Indices are 1-based.
IndexTuple locate_tuple(const Vec2& y, const BarycenterInstance& inst,
                        const std::vector<std::vector<Rational>>& w);

}  // namespace wbary
