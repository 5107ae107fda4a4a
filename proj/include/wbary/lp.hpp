#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wbary/model.hpp"
#include "wbary/rational.hpp"

namespace wbary {

// minimize c.x subject to A x = b, x >= 0.
struct StandardLP {
  std::vector<std::vector<Rational>> A;  // rows x cols, dense
  std::vector<Rational> b;
  std::vector<Rational> c;

  std::size_t rows() const { return A.size(); }
  std::size_t cols() const { return c.size(); }
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  Rational value;
  std::vector<Rational> primal;  // vertex (basic feasible solution) when optimal
  std::vector<Rational> dual;    // one multiplier per row when optimal
  // Basis column per row: structural index >= 0, or -(row+1) for a Phase I
  // artificial that remained basic at zero (redundant row).
  std::vector<int> basis;
};

// Anti-cycling pivot rules. Both terminate on every input; the
// lexicographic rule (Dantzig entering, lexicographic ratio test) takes far
// fewer degenerate pivots on transportation-style problems and is the
// default. Bland's rule is kept for reference and tests.
enum class PivotRule { lexicographic, bland };

// Revised primal simplex over exact rationals: the session maintains the
// basis inverse and the right-hand side; tableau columns are recomputed on
// demand from the (sparse) originals. It stays alive so that column
// generation can append columns and reoptimize from the current basis
// instead of restarting.
class SimplexSession {
 public:
  explicit SimplexSession(const StandardLP& lp, PivotRule rule = PivotRule::lexicographic);

  // Phase I + Phase II from scratch. Call once per session.
  LPStatus solve();

  // Phase II from the current basis; valid after a previous optimal solve
  // (appending columns keeps the basis feasible).
  LPStatus reoptimize();

  // Appends a structural column given as (row, coefficient) pairs over the
  // original row indexing. Only valid after solve() succeeded.
  void add_column(const Rational& cost, const std::vector<std::pair<int, Rational>>& col);

  LPStatus status() const { return status_; }
  LPSolution extract() const;
  std::size_t structural_columns() const { return n_; }
  std::size_t pivots() const { return pivot_count_; }

 private:
  using SparseCol = std::vector<std::pair<int, Rational>>;

  LPStatus run_phase(bool phase1);
  void drive_out_artificials();
  std::vector<Rational> basic_duals(bool phase1) const;
  std::vector<Rational> pricing(const std::vector<Rational>& y, bool phase1) const;
  std::vector<Rational> ftran(std::size_t structural) const;  // B^-1 * column
  void pivot(std::size_t row, std::size_t col_id, const std::vector<Rational>& tcol);
  void devex_update(std::size_t row, std::size_t enter, const std::vector<Rational>& tcol);
  std::size_t pick_leaving_bland(const std::vector<Rational>& tcol) const;
  std::size_t pick_leaving_lex(const std::vector<Rational>& tcol) const;
  bool col_is_artificial(std::size_t id) const { return id >= n_; }

  PivotRule rule_ = PivotRule::lexicographic;
  std::size_t m_ = 0;  // rows
  std::size_t n_ = 0;  // structural columns (grows)
  std::vector<int> row_sign_;
  std::vector<Rational> cost_;              // structural costs
  std::vector<SparseCol> cols_;             // sparse structural columns, sign-adjusted
  std::vector<std::vector<Rational>> binv_; // m_ x m_ basis inverse
  std::vector<Rational> rhs_;               // >= 0 invariant
  std::vector<std::size_t> basis_;          // internal id per row (< n_: structural, n_+r: artificial)
  std::vector<Rational> devex_;             // reference weights for the entering choice
  LPStatus status_ = LPStatus::infeasible;
  bool solved_ = false;
  std::size_t pivot_count_ = 0;
};

// One-shot solve; terminates on every input.
LPSolution simplex_solve(const StandardLP& lp, PivotRule rule = PivotRule::lexicographic);

// The restricted problem (MOT_S): one column per tuple in S, one row per
// (marginal, atom) with the atom's mass on the right-hand side.
struct RestrictedMot {
  StandardLP lp;
  std::vector<IndexTuple> columns;
  std::vector<int> row_offset;  // size k+1; rows of marginal i are [row_offset[i], row_offset[i+1])

  int row_of(int marginal0, int atom0) const {
    return row_offset[static_cast<std::size_t>(marginal0)] + atom0;
  }
};

RestrictedMot build_restricted_mot(const std::vector<IndexTuple>& S, const BarycenterInstance& inst);

// Two-marginal transport problem min sum gamma(a,b) |mu_a - nu_b|^2 in
// standard form; column of (a, b) is a * nu.size() + b.
StandardLP build_transport_lp(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Reads the dual vector back into per-marginal potential vectors using the
// restricted problem's row map. Requires an optimal solution.
DualPotentials duals_to_potentials(const LPSolution& sol, const RestrictedMot& rm,
                                   const BarycenterInstance& inst);

}  // namespace wbary
