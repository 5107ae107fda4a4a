#include "wbary/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace wbary {

Line bisector(const Vec2& x, const Rational& w, const Vec2& x2, const Rational& w2) {
  if (x == x2) throw std::invalid_argument("bisector: coincident sites");
  // |x-y|^2 - w = |x2-y|^2 - w2  <=>  2(x2-x).y = |x2|^2 - |x|^2 + w - w2,
  // and x's cell satisfies a.y < b.
  Line l;
  l.a = Rational(2) * (x2 - x);
  l.b = norm2(x2) - norm2(x) + w - w2;
  return l;
}

std::optional<Vec2> line_intersection(const Line& l, const Line& m) {
  const Rational det = cross(l.a, m.a);
  if (det.is_zero()) return std::nullopt;
  return Vec2{(l.b * m.a.y - l.a.y * m.b) / det, (l.a.x * m.b - l.b * m.a.x) / det};
}

Vec2 closest_point_to_origin(const Line& l) {
  const Rational s = l.b / norm2(l.a);
  return s * l.a;
}

std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Line& l) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = poly[i];
    const Vec2& nxt = poly[(i + 1) % n];
    const Rational sc = l.b - dot(l.a, cur);  // >= 0 means kept side
    const Rational sn = l.b - dot(l.a, nxt);
    if (sc.sign() >= 0) out.push_back(cur);
    if ((sc.sign() > 0 && sn.sign() < 0) || (sc.sign() < 0 && sn.sign() > 0)) {
      const Rational t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

Rational polygon_area2(const std::vector<Vec2>& poly) {
  Rational acc;
  for (std::size_t i = 0; i < poly.size(); ++i) acc += cross(poly[i], poly[(i + 1) % poly.size()]);
  return acc;
}

namespace {

std::vector<Vec2> dedup_consecutive(std::vector<Vec2> poly) {
  std::vector<Vec2> out;
  for (auto& v : poly)
    if (out.empty() || !(out.back() == v)) out.push_back(std::move(v));
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

void grow_bound(Rational& maxabs, const Rational& v) {
  Rational a = v.abs();
  if (a > maxabs) maxabs = std::move(a);
}

void grow_bound(Rational& maxabs, const Vec2& v) {
  grow_bound(maxabs, v.x);
  grow_bound(maxabs, v.y);
}

std::vector<Vec2> box_polygon(const Rational& m) {
  return {Vec2{-m, -m}, Vec2{m, -m}, Vec2{m, m}, Vec2{-m, m}};
}

}  // namespace

PowerDiagram power_diagram(const std::vector<Vec2>& sites, const std::vector<Rational>& weights) {
  const int n = static_cast<int>(sites.size());
  if (sites.size() != weights.size())
    throw std::invalid_argument("power_diagram: sites/weights length mismatch");
  if (n == 0) throw std::invalid_argument("power_diagram: no sites");
  {
    std::set<Vec2> seen(sites.begin(), sites.end());
    if (static_cast<int>(seen.size()) != n)
      throw std::invalid_argument("power_diagram: duplicate site points (deduplicate first)");
  }

  PowerDiagram pd;
  pd.sites = sites;
  pd.weights = weights;
  pd.cell_facets.assign(static_cast<std::size_t>(n), {});
  std::map<std::pair<int, int>, int> facet_index;

  for (int j = 0; j < n; ++j) {
    // Bisectors bounding cell j, oriented with j's side below.
    std::vector<Line> bis;
    std::vector<int> other;
    bis.reserve(static_cast<std::size_t>(n) - 1);
    for (int j2 = 0; j2 < n; ++j2) {
      if (j2 == j) continue;
      bis.push_back(bisector(sites[static_cast<std::size_t>(j)], weights[static_cast<std::size_t>(j)],
                             sites[static_cast<std::size_t>(j2)], weights[static_cast<std::size_t>(j2)]));
      other.push_back(j2);
    }

    // A box large enough to contain every candidate cell vertex, each
    // bisector's closest approach to the origin, and the sites. Any facet of
    // the unbounded cell then meets the box in a positive-length edge.
    Rational maxabs;
    for (const auto& s : sites) grow_bound(maxabs, s);
    for (const auto& l : bis) grow_bound(maxabs, closest_point_to_origin(l));
    for (std::size_t u = 0; u < bis.size(); ++u)
      for (std::size_t v = u + 1; v < bis.size(); ++v)
        if (auto p = line_intersection(bis[u], bis[v])) grow_bound(maxabs, *p);
    const Rational m = maxabs + Rational(1);

    std::vector<Vec2> poly = box_polygon(m);
    for (const auto& l : bis) {
      poly = clip_polygon(poly, l);
      if (poly.size() < 3) break;
    }
    poly = dedup_consecutive(std::move(poly));
    if (poly.size() < 3 || polygon_area2(poly).is_zero()) continue;  // empty cell

    for (std::size_t bi = 0; bi < bis.size(); ++bi) {
      // Facet survives iff the clipped cell has a positive-length edge on it.
      bool has_edge = false;
      for (std::size_t v = 0; v < poly.size() && !has_edge; ++v) {
        const Vec2& p = poly[v];
        const Vec2& q = poly[(v + 1) % poly.size()];
        if (bis[bi].eval(p).is_zero() && bis[bi].eval(q).is_zero()) has_edge = true;
      }
      if (!has_edge) continue;
      const int lo = std::min(j, other[bi]);
      const int hi = std::max(j, other[bi]);
      auto it = facet_index.find({lo, hi});
      int fidx;
      if (it == facet_index.end()) {
        PowerDiagram::Facet f;
        f.lo = lo;
        f.hi = hi;
        f.line = bisector(sites[static_cast<std::size_t>(lo)], weights[static_cast<std::size_t>(lo)],
                          sites[static_cast<std::size_t>(hi)], weights[static_cast<std::size_t>(hi)]);
        fidx = static_cast<int>(pd.facets.size());
        pd.facets.push_back(std::move(f));
        facet_index.emplace(std::make_pair(lo, hi), fidx);
      } else {
        fidx = it->second;
      }
      pd.cell_facets[static_cast<std::size_t>(j)].push_back(fidx);
    }
  }
  return pd;
}

std::vector<Vec2> enumerate_arrangement_cells(const std::vector<Line>& lines,
                                              const std::vector<Vec2>& sites_hint) {
  if (lines.empty()) return {Vec2{Rational(0), Rational(0)}};

  // Bounding box: half-width 1 beyond the sites, every pairwise line
  // intersection, and each line's closest approach to the origin; the box
  // edges join the arrangement so every cell of the augmented arrangement is
  // a bounded polygon with a vertex.
  Rational maxabs;
  for (const auto& s : sites_hint) grow_bound(maxabs, s);
  for (const auto& l : lines) grow_bound(maxabs, closest_point_to_origin(l));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = line_intersection(lines[i], lines[j])) grow_bound(maxabs, *p);
  const Rational m = maxabs + Rational(1);

  std::vector<Line> aug = lines;
  aug.push_back(Line{Vec2{Rational(1), Rational(0)}, m});
  aug.push_back(Line{Vec2{Rational(1), Rational(0)}, -m});
  aug.push_back(Line{Vec2{Rational(0), Rational(1)}, m});
  aug.push_back(Line{Vec2{Rational(0), Rational(1)}, -m});

  std::set<Vec2> vertex_set;
  for (std::size_t i = 0; i < aug.size(); ++i)
    for (std::size_t j = i + 1; j < aug.size(); ++j)
      if (auto p = line_intersection(aug[i], aug[j])) vertex_set.insert(*p);

  // delta below the smallest vertex-to-nonincident-line distance, kept
  // rational by bounding sqrt(dmin2) from below with min(1, dmin2).
  Rational dmin2;
  bool have = false;
  for (const auto& v : vertex_set) {
    for (const auto& l : aug) {
      const Rational e = l.eval(v);
      if (e.is_zero()) continue;
      Rational d2 = (e * e) / norm2(l.a);
      if (!have || d2 < dmin2) {
        dmin2 = std::move(d2);
        have = true;
      }
    }
  }
  Rational delta = have ? std::min(Rational(1), dmin2) / Rational(4) : Rational(1, 4);

  static const int offs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  std::vector<Vec2> candidates;
  candidates.reserve(vertex_set.size() * 8 + 1);
  for (const auto& v : vertex_set)
    for (const auto& o : offs)
      candidates.push_back(Vec2{v.x + Rational(o[0]) * delta, v.y + Rational(o[1]) * delta});
  candidates.push_back(Vec2{Rational(0), Rational(0)});  // box center

  std::map<std::vector<int>, Vec2> cells;  // sign vector -> first representative
  for (const auto& c : candidates) {
    std::vector<int> sig;
    sig.reserve(lines.size());
    bool on_line = false;
    for (const auto& l : lines) {
      const int s = l.eval(c).sign();
      if (s == 0) {
        on_line = true;
        break;
      }
      sig.push_back(s);
    }
    if (on_line) continue;
    cells.try_emplace(std::move(sig), c);
  }

  std::vector<Vec2> reps;
  reps.reserve(cells.size());
  for (auto& [sig, rep] : cells) reps.push_back(rep);
  return reps;
}

IndexTuple locate_tuple(const Vec2& y, const BarycenterInstance& inst,
                        const std::vector<std::vector<Rational>>& w) {
  IndexTuple t;
  t.indices.reserve(static_cast<std::size_t>(inst.k()));
  for (int i = 0; i < inst.k(); ++i) {
    const auto& mu = inst.measures[static_cast<std::size_t>(i)];
    const auto& wi = w[static_cast<std::size_t>(i)];
    if (static_cast<int>(wi.size()) != mu.size())
      throw std::invalid_argument("locate_tuple: weight vector length mismatch");
    int best = 0;
    Rational best_power = norm2(mu.atoms[0] - y) - wi[0];
    for (int j = 1; j < mu.size(); ++j) {
      Rational p = norm2(mu.atoms[static_cast<std::size_t>(j)] - y) - wi[static_cast<std::size_t>(j)];
      if (p < best_power) {
        best = j;
        best_power = std::move(p);
      }
    }
    t.indices.push_back(best + 1);
  }
  return t;
}

}  // namespace wbary
