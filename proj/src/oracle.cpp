#include "wbary/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace wbary {

std::vector<std::vector<Rational>> weights_from_potentials(const DualPotentials& p,
                                                           const std::vector<Rational>& lambda) {
  if (p.p.size() != lambda.size())
    throw std::invalid_argument("weights_from_potentials: arity mismatch");
  std::vector<std::vector<Rational>> w(p.p.size());
  for (std::size_t i = 0; i < p.p.size(); ++i) {
    if (lambda[i].sign() <= 0)
      throw std::invalid_argument("weights_from_potentials: nonpositive weight");
    w[i].reserve(p.p[i].size());
    for (const auto& v : p.p[i]) w[i].push_back(v / lambda[i]);
  }
  return w;
}

Vec2 tuple_mean(const IndexTuple& t, const BarycenterInstance& inst) {
  Vec2 y;
  for (int i = 0; i < inst.k(); ++i) {
    const int j = t[i];
    if (j < 1 || j > inst.atoms_of(i))
      throw std::out_of_range("tuple_mean: index out of bounds in " + t.str());
    y += inst.weights[static_cast<std::size_t>(i)] *
         inst.measures[static_cast<std::size_t>(i)].atoms[static_cast<std::size_t>(j - 1)];
  }
  return y;
}

Rational tuple_cost(const IndexTuple& t, const BarycenterInstance& inst) {
  if (t.size() != inst.k()) throw std::invalid_argument("tuple_cost: arity mismatch");
  const Vec2 y = tuple_mean(t, inst);
  Rational c;
  for (int i = 0; i < inst.k(); ++i) {
    const auto& x = inst.measures[static_cast<std::size_t>(i)].atoms[static_cast<std::size_t>(t[i] - 1)];
    c += inst.weights[static_cast<std::size_t>(i)] * norm2(x - y);
  }
  return c;
}

namespace {

// One marginal's sites with exact duplicates collapsed: per distinct point
// the largest power weight survives (lower weights are dominated everywhere)
// and ties keep the smallest original index. Slots are sorted by original
// index so that first-wins scans realize the lexicographic tie-break.
struct MarginalSites {
  std::vector<Vec2> pts;
  std::vector<Rational> w;
  std::vector<Rational> pot;  // dual potential of the surviving site
  std::vector<int> orig;      // 1-based original index

  int size() const { return static_cast<int>(pts.size()); }
};

MarginalSites dedup_marginal(const DiscreteMeasure& mu, const std::vector<Rational>& wi,
                             const std::vector<Rational>& pi) {
  MarginalSites out;
  std::map<Vec2, std::size_t> slot_of;
  for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
    auto it = slot_of.find(mu.atoms[j]);
    if (it == slot_of.end()) {
      slot_of.emplace(mu.atoms[j], out.pts.size());
      out.pts.push_back(mu.atoms[j]);
      out.w.push_back(wi[j]);
      out.pot.push_back(pi[j]);
      out.orig.push_back(static_cast<int>(j) + 1);
    } else if (wi[j] > out.w[it->second]) {
      out.w[it->second] = wi[j];
      out.pot[it->second] = pi[j];
      out.orig[it->second] = static_cast<int>(j) + 1;
    }
  }
  // Reorder slots by original index.
  std::vector<std::size_t> order(out.pts.size());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.orig[a] < out.orig[b]; });
  MarginalSites sorted;
  for (std::size_t s : order) {
    sorted.pts.push_back(std::move(out.pts[s]));
    sorted.w.push_back(std::move(out.w[s]));
    sorted.pot.push_back(std::move(out.pot[s]));
    sorted.orig.push_back(out.orig[s]);
  }
  return sorted;
}

// Winner of one marginal at the symbolically perturbed point
// v + t*u + eps*w_dir with 0 < eps << t infinitesimal: lexicographic argmin
// of (power(v), d/dt, d/deps); the second-order terms are site-independent.
// With u, w_dir linearly independent the winner is unique.
int locate_sym(const MarginalSites& ms, const Vec2& v, const Vec2& u, const Vec2& w_dir) {
  std::vector<int> tied;
  Rational best;
  for (int j = 0; j < ms.size(); ++j) {
    Rational p = norm2(ms.pts[static_cast<std::size_t>(j)] - v) - ms.w[static_cast<std::size_t>(j)];
    if (tied.empty() || p < best) {
      best = std::move(p);
      tied.assign(1, j);
    } else if (p == best) {
      tied.push_back(j);
    }
  }
  for (const Vec2* dir : {&u, &w_dir}) {
    if (tied.size() <= 1) break;
    std::vector<int> next;
    Rational bd;
    for (int j : tied) {
      // derivative of |x - (v + s*dir)|^2 at s=0 is -2 (x - v).dir
      Rational d = Rational(-2) * dot(ms.pts[static_cast<std::size_t>(j)] - v, *dir);
      if (next.empty() || d < bd) {
        bd = std::move(d);
        next.assign(1, j);
      } else if (d == bd) {
        next.push_back(j);
      }
    }
    tied = std::move(next);
  }
  return tied.front();  // slots are sorted by original index
}

// Exact canonical form of a line as a primitive integer triple so that
// geometrically identical facet lines from different diagrams merge.
struct LineKey {
  mpz_class ax, ay, b;
  friend bool operator<(const LineKey& l, const LineKey& r) {
    if (int c = cmp(l.ax, r.ax); c != 0) return c < 0;
    if (int c = cmp(l.ay, r.ay); c != 0) return c < 0;
    return cmp(l.b, r.b) < 0;
  }
};

struct CanonLine {
  LineKey key;
  bool flipped = false;  // canonical below-side is the input's above-side
};

CanonLine canonicalize_line(const Line& l) {
  mpz_class scale = l.a.x.den();
  mpz_class tmp;
  mpz_lcm(tmp.get_mpz_t(), scale.get_mpz_t(), l.a.y.den().get_mpz_t());
  mpz_lcm(scale.get_mpz_t(), tmp.get_mpz_t(), l.b.den().get_mpz_t());
  CanonLine c;
  c.key.ax = l.a.x.num() * (scale / l.a.x.den());
  c.key.ay = l.a.y.num() * (scale / l.a.y.den());
  c.key.b = l.b.num() * (scale / l.b.den());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.key.ax.get_mpz_t(), c.key.ay.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.key.b.get_mpz_t());
  if (g != 0) {
    c.key.ax /= g;
    c.key.ay /= g;
    c.key.b /= g;
  }
  if (c.key.ax < 0 || (c.key.ax == 0 && c.key.ay < 0)) {
    c.key.ax = -c.key.ax;
    c.key.ay = -c.key.ay;
    c.key.b = -c.key.b;
    c.flipped = true;
  }
  return c;
}

struct WalkLabel {
  int marg = 0;
  int lo = 0, hi = 0;   // dedup slot indices of the facet's sites
  bool lo_below = true; // lo wins on the canonical a.y < b side
};

struct WalkLine {
  Line geom;  // canonical orientation
  Vec2 dir;   // (-a.y, a.x)
  std::vector<WalkLabel> labels;
};

// A crossing of `other` on the walked line, precomputed once.
struct Station {
  Rational tau;  // parameter dir . point along the walked line
  Vec2 point;
  int other = 0;
  int dir_side = 0;  // sign of other.a . dir: side of `other` after the crossing
};

// Walk state: current winner slot per marginal plus running aggregates of
// the reduced-cost closed form sum lam|x|^2 - |sum lam x|^2 - sum p.
struct WalkState {
  std::vector<int> winner;
  Rational s_norm;
  Vec2 s_mean;
  Rational s_pot;

  Rational value() const { return s_norm - norm2(s_mean) - s_pot; }
};

class SepEngine {
 public:
  SepEngine(const DualPotentials& p, const BarycenterInstance& inst) : inst_(inst) {
    const auto w = weights_from_potentials(p, inst.weights);
    margs_.reserve(static_cast<std::size_t>(inst.k()));
    for (int i = 0; i < inst.k(); ++i)
      margs_.push_back(dedup_marginal(inst.measures[static_cast<std::size_t>(i)],
                                      w[static_cast<std::size_t>(i)], p.p[static_cast<std::size_t>(i)]));
    build_lines();
  }

  SepReport run() {
    if (lines_.empty()) {
      WalkState st = initial_state(Vec2{Rational(0), Rational(0)}, Vec2{Rational(1), Rational(0)},
                                   Vec2{Rational(0), Rational(1)});
      record(st);
    } else {
      std::vector<std::vector<Station>> stations = all_stations();
      for (std::size_t li = 0; li < lines_.size(); ++li) {
        walk_line(li, stations[li], +1);
        walk_line(li, stations[li], -1);
      }
    }
    return finalize();
  }

 private:
  void build_lines() {
    std::map<LineKey, std::size_t> index;
    for (int i = 0; i < inst_.k(); ++i) {
      const MarginalSites& ms = margs_[static_cast<std::size_t>(i)];
      if (ms.size() < 2) continue;
      PowerDiagram pd = power_diagram(ms.pts, ms.w);
      for (const auto& f : pd.facets) {
        CanonLine cl = canonicalize_line(f.line);
        auto it = index.find(cl.key);
        std::size_t li;
        if (it == index.end()) {
          li = lines_.size();
          index.emplace(cl.key, li);
          WalkLine wl;
          wl.geom.a = Vec2{Rational(mpz_class(cl.key.ax)), Rational(mpz_class(cl.key.ay))};
          wl.geom.b = Rational(mpz_class(cl.key.b));
          wl.dir = Vec2{-wl.geom.a.y, wl.geom.a.x};
          lines_.push_back(std::move(wl));
        } else {
          li = it->second;
        }
        WalkLabel lab;
        lab.marg = i;
        lab.lo = f.lo;
        lab.hi = f.hi;
        lab.lo_below = !cl.flipped;
        lines_[li].labels.push_back(lab);
      }
    }
  }

  std::vector<std::vector<Station>> all_stations() const {
    std::vector<std::vector<Station>> st(lines_.size());
    for (std::size_t i = 0; i < lines_.size(); ++i)
      for (std::size_t j = i + 1; j < lines_.size(); ++j) {
        auto p = line_intersection(lines_[i].geom, lines_[j].geom);
        if (!p) continue;
        Station si;
        si.point = *p;
        si.other = static_cast<int>(j);
        si.tau = dot(lines_[i].dir, *p);
        si.dir_side = dot(lines_[j].geom.a, lines_[i].dir).sign();
        st[i].push_back(std::move(si));
        Station sj;
        sj.point = std::move(*p);
        sj.other = static_cast<int>(i);
        sj.tau = dot(lines_[j].dir, sj.point);
        sj.dir_side = dot(lines_[i].geom.a, lines_[j].dir).sign();
        st[j].push_back(std::move(sj));
      }
    for (auto& v : st)
      std::sort(v.begin(), v.end(), [](const Station& a, const Station& b) { return a.tau < b.tau; });
    return st;
  }

  WalkState initial_state(const Vec2& v, const Vec2& u, const Vec2& w_dir) const {
    WalkState st;
    st.winner.resize(margs_.size());
    for (std::size_t i = 0; i < margs_.size(); ++i) {
      st.winner[i] = locate_sym(margs_[i], v, u, w_dir);
      accumulate(st, static_cast<int>(i), st.winner[i], +1);
    }
    return st;
  }

  void accumulate(WalkState& st, int marg, int slot, int sign) const {
    const auto& ms = margs_[static_cast<std::size_t>(marg)];
    const Rational& lam = inst_.weights[static_cast<std::size_t>(marg)];
    const Vec2& x = ms.pts[static_cast<std::size_t>(slot)];
    if (sign > 0) {
      st.s_norm.add_mul(lam, norm2(x));
      st.s_mean += lam * x;
      st.s_pot += ms.pot[static_cast<std::size_t>(slot)];
    } else {
      st.s_norm.sub_mul(lam, norm2(x));
      st.s_mean -= lam * x;
      st.s_pot -= ms.pot[static_cast<std::size_t>(slot)];
    }
  }

  void set_winner(WalkState& st, int marg, int slot) const {
    if (st.winner[static_cast<std::size_t>(marg)] == slot) return;
    accumulate(st, marg, st.winner[static_cast<std::size_t>(marg)], -1);
    accumulate(st, marg, slot, +1);
    st.winner[static_cast<std::size_t>(marg)] = slot;
  }

  void record(const WalkState& st) {
    IndexTuple t;
    t.indices.resize(margs_.size());
    for (std::size_t i = 0; i < margs_.size(); ++i)
      t.indices[i] = margs_[i].orig[static_cast<std::size_t>(st.winner[i])];
    candidates_.try_emplace(std::move(t), st.value());
  }

  void walk_line(std::size_t li, const std::vector<Station>& stations, int side) {
    const WalkLine& wl = lines_[li];
    const Vec2 n_side = side > 0 ? wl.geom.a : -wl.geom.a;

    if (stations.empty()) {
      // No crossings: one cell spans the whole side of this line.
      WalkState st = initial_state(closest_point_to_origin(wl.geom), n_side, wl.dir);
      record(st);
      return;
    }

    // Cell on the ray before the first crossing.
    WalkState st = initial_state(stations.front().point, -wl.dir, n_side);
    record(st);

    std::size_t g = 0;
    while (g < stations.size()) {
      std::size_t h = g;
      while (h < stations.size() && stations[h].tau == stations[g].tau) ++h;

      // Count crossing labels per marginal; single-label marginals toggle in
      // O(1), anything denser is recomputed symbolically.
      touched_.clear();
      for (std::size_t s = g; s < h; ++s)
        for (const auto& lab : lines_[static_cast<std::size_t>(stations[s].other)].labels) {
          auto [it, fresh] = touched_.try_emplace(lab.marg, std::make_pair(&lab, stations[s].dir_side));
          if (!fresh) it->second.first = nullptr;  // multiple labels: force recompute
        }

      bool changed = false;
      for (const auto& [marg, entry] : touched_) {
        const auto& [lab, dir_side] = entry;
        if (lab != nullptr) {
          const int cur = st.winner[static_cast<std::size_t>(marg)];
          if (cur != lab->lo && cur != lab->hi) continue;
          const bool below_after = dir_side < 0;
          const int target = below_after == lab->lo_below ? lab->lo : lab->hi;
          if (target != cur) {
            set_winner(st, marg, target);
            changed = true;
          }
        } else {
          const int fresh = locate_sym(margs_[static_cast<std::size_t>(marg)], stations[g].point,
                                       wl.dir, n_side);
          if (fresh != st.winner[static_cast<std::size_t>(marg)]) {
            set_winner(st, marg, fresh);
            changed = true;
          }
        }
      }
      if (changed) record(st);
      g = h;
    }
  }

  SepReport finalize() {
    SepReport rep;
    rep.facet_lines = lines_.size();
    bool first = true;
    for (const auto& [t, v] : candidates_) {
      if (first || v < rep.best.value || (v == rep.best.value && t < rep.best.tuple)) {
        rep.best.tuple = t;
        rep.best.value = v;
        first = false;
      }
      if (v.sign() < 0) rep.violated.push_back(SepCandidate{t, v});
    }
    std::sort(rep.violated.begin(), rep.violated.end(), [](const SepCandidate& a, const SepCandidate& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.tuple < b.tuple;
    });
    rep.candidates.reserve(candidates_.size());
    for (const auto& [t, v] : candidates_) rep.candidates.push_back(t);
    std::sort(rep.candidates.begin(), rep.candidates.end());
    rep.best.witness = tuple_mean(rep.best.tuple, inst_);
    return rep;
  }

  const BarycenterInstance& inst_;
  std::vector<MarginalSites> margs_;
  std::vector<WalkLine> lines_;
  std::unordered_map<IndexTuple, Rational, IndexTupleHash> candidates_;
  std::map<int, std::pair<const WalkLabel*, int>> touched_;
};

}  // namespace

SepReport sep_report(const DualPotentials& p, const BarycenterInstance& inst) {
  if (inst.dimension != 2) throw std::invalid_argument("sep: geometric oracle requires dimension 2");
  SepEngine engine(p, inst);
  return engine.run();
}

SepResult sep(const DualPotentials& p, const BarycenterInstance& inst) {
  return sep_report(p, inst).best;
}

SepResult sep_bruteforce(const DualPotentials& p, const BarycenterInstance& inst,
                         std::uint64_t budget) {
  const int k = inst.k();
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) {
    const auto n = static_cast<std::uint64_t>(inst.atoms_of(i));
    if (count > budget / n) throw BudgetExceeded("sep_bruteforce: enumeration budget exceeded");
    count *= n;
  }

  SepResult best;
  IndexTuple t;
  t.indices.assign(static_cast<std::size_t>(k), 1);
  bool first = true;
  for (;;) {
    Rational v = tuple_cost(t, inst);
    for (int i = 0; i < k; ++i)
      v -= p.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(t[i] - 1)];
    if (first || v < best.value) {
      best.tuple = t;
      best.value = std::move(v);
      first = false;
    }
    // lexicographic odometer: increments the last coordinate first, so the
    // first minimizer seen is the lexicographically smallest
    int i = k - 1;
    while (i >= 0 && t.indices[static_cast<std::size_t>(i)] == inst.atoms_of(i)) {
      t.indices[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++t.indices[static_cast<std::size_t>(i)];
  }
  best.witness = tuple_mean(best.tuple, inst);
  return best;
}

}  // namespace wbary
