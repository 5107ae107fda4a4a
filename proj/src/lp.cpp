#include "wbary/lp.hpp"

#include <stdexcept>

#include "wbary/oracle.hpp"

namespace wbary {

SimplexSession::SimplexSession(const StandardLP& lp, PivotRule rule) : rule_(rule) {
  m_ = lp.rows();
  n_ = lp.cols();
  if (lp.b.size() != m_) throw std::invalid_argument("SimplexSession: b size mismatch");
  for (const auto& row : lp.A)
    if (row.size() != n_) throw std::invalid_argument("SimplexSession: A row size mismatch");

  cost_ = lp.c;
  row_sign_.assign(m_, 1);
  rhs_.assign(m_, Rational());
  for (std::size_t r = 0; r < m_; ++r) {
    const bool flip = lp.b[r].sign() < 0;  // working rows keep rhs >= 0
    row_sign_[r] = flip ? -1 : 1;
    rhs_[r] = flip ? -lp.b[r] : lp.b[r];
  }
  cols_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t r = 0; r < m_; ++r) {
      if (lp.A[r][j].is_zero()) continue;
      cols_[j].emplace_back(static_cast<int>(r), row_sign_[r] < 0 ? -lp.A[r][j] : lp.A[r][j]);
    }

  binv_.assign(m_, std::vector<Rational>(m_));
  basis_.resize(m_);
  for (std::size_t r = 0; r < m_; ++r) {
    binv_[r][r] = Rational(1);
    basis_[r] = n_ + r;
  }
}

std::vector<Rational> SimplexSession::ftran(std::size_t structural) const {
  std::vector<Rational> u(m_);
  for (std::size_t r = 0; r < m_; ++r)
    for (const auto& [row, val] : cols_[structural])
      u[r].add_mul(binv_[r][static_cast<std::size_t>(row)], val);
  return u;
}

// y = cB . B^-1 under the phase's cost vector.
std::vector<Rational> SimplexSession::basic_duals(bool phase1) const {
  std::vector<Rational> y(m_);
  for (std::size_t r = 0; r < m_; ++r) {
    Rational cb;
    if (col_is_artificial(basis_[r]))
      cb = phase1 ? Rational(1) : Rational(0);
    else
      cb = phase1 ? Rational(0) : cost_[basis_[r]];
    if (cb.is_zero()) continue;
    for (std::size_t j = 0; j < m_; ++j) y[j].add_mul(cb, binv_[r][j]);
  }
  return y;
}

// Reduced costs of every structural column from the duals; columns are
// sparse, so this is cheap even with thousands of columns.
std::vector<Rational> SimplexSession::pricing(const std::vector<Rational>& y, bool phase1) const {
  std::vector<Rational> d(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (!phase1) d[j] = cost_[j];
    for (const auto& [row, val] : cols_[j]) d[j].sub_mul(y[static_cast<std::size_t>(row)], val);
  }
  return d;
}

void SimplexSession::pivot(std::size_t row, std::size_t col_id, const std::vector<Rational>& tcol) {
  const Rational& piv = tcol[row];
  if (piv.is_zero()) throw std::logic_error("SimplexSession: zero pivot");
  const Rational inv = piv.reciprocal();
  for (auto& v : binv_[row]) v *= inv;
  rhs_[row] *= inv;
  for (std::size_t r = 0; r < m_; ++r) {
    if (r == row) continue;
    const Rational& f = tcol[r];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < m_; ++j) binv_[r][j].sub_mul(f, binv_[row][j]);
    rhs_[r].sub_mul(f, rhs_[row]);
  }
  basis_[row] = col_id;
  ++pivot_count_;
}

std::size_t SimplexSession::pick_leaving_bland(const std::vector<Rational>& tcol) const {
  std::size_t leave = m_;
  Rational best_ratio;
  for (std::size_t r = 0; r < m_; ++r) {
    if (tcol[r].sign() <= 0) continue;
    Rational ratio = rhs_[r] / tcol[r];
    if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
      leave = r;
      best_ratio = std::move(ratio);
    }
  }
  return leave;
}

std::size_t SimplexSession::pick_leaving_lex(const std::vector<Rational>& tcol) const {
  // Lexicographic ratio test on the rows (rhs | B^-1) / pivot entry; the
  // comparison never ties, so the method cannot cycle.
  std::size_t leave = m_;
  for (std::size_t r = 0; r < m_; ++r) {
    if (tcol[r].sign() <= 0) continue;
    if (leave == m_) {
      leave = r;
      continue;
    }
    const Rational& tr = tcol[r];
    const Rational& tl = tcol[leave];
    std::strong_ordering ord = rhs_[r] * tl <=> rhs_[leave] * tr;
    for (std::size_t c = 0; c < m_ && ord == 0; ++c)
      ord = binv_[r][c] * tl <=> binv_[leave][c] * tr;
    if (ord < 0) leave = r;
  }
  return leave;
}

// Devex reference weights: after pivoting column `enter` into `row`, every
// structural column j with a nonzero entry alpha_j in the (old) pivot row
// inherits weight max(w_j, (alpha_j / alpha_q)^2 w_q). Kept exact; weights
// only steer the entering choice, never correctness.
void SimplexSession::devex_update(std::size_t row, std::size_t enter,
                                  const std::vector<Rational>& tcol) {
  const std::vector<Rational>& beta = binv_[row];  // old basis inverse row
  const Rational& alpha_q = tcol[row];
  const Rational wq_scaled = devex_[enter] / (alpha_q * alpha_q);
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == enter) continue;
    Rational alpha;
    for (const auto& [r, val] : cols_[j]) alpha.add_mul(beta[static_cast<std::size_t>(r)], val);
    if (alpha.is_zero()) continue;
    Rational cand = alpha * alpha * wq_scaled;
    if (cand > devex_[j]) devex_[j] = std::move(cand);
  }
  // weight of the variable that just left
  if (!col_is_artificial(basis_[row])) {
    Rational leave_w = std::max(wq_scaled, Rational(1));
    devex_[basis_[row]] = std::move(leave_w);
  }
  devex_[enter] = Rational(1);
  // reference reset once the weights get out of hand
  for (const auto& w : devex_)
    if (w.num().get_str().size() > 24 || w.den().get_str().size() > 24) {
      devex_.assign(n_, Rational(1));
      break;
    }
}

LPStatus SimplexSession::run_phase(bool phase1) {
  if (devex_.size() != n_) devex_.assign(n_, Rational(1));
  for (;;) {
    const std::vector<Rational> d = pricing(basic_duals(phase1), phase1);
    // Entering column: Bland takes the smallest index with a negative
    // reduced cost; the lexicographic rule takes the Devex winner, i.e. the
    // largest d^2 / weight. Ties go to the smallest index, so runs are
    // deterministic either way.
    std::size_t enter = n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (d[j].sign() >= 0) continue;
      if (rule_ == PivotRule::bland) {
        enter = j;
        break;
      }
      if (enter == n_ || d[j] * d[j] * devex_[enter] > d[enter] * d[enter] * devex_[j]) enter = j;
    }
    if (enter == n_) return LPStatus::optimal;  // phase optimum

    const std::vector<Rational> tcol = ftran(enter);
    const std::size_t leave =
        rule_ == PivotRule::bland ? pick_leaving_bland(tcol) : pick_leaving_lex(tcol);
    if (leave == m_) return LPStatus::unbounded;
    if (rule_ != PivotRule::bland) devex_update(leave, enter, tcol);
    pivot(leave, enter, tcol);
  }
}

void SimplexSession::drive_out_artificials() {
  // Degenerate pivots replace basic-at-zero artificials with structural
  // columns where possible; rows whose tableau row vanishes on every
  // structural column are redundant and keep their artificial basic at zero.
  for (std::size_t r = 0; r < m_; ++r) {
    if (!col_is_artificial(basis_[r])) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      // basic structural columns have a unit tableau column, so their entry
      // in this artificial row is zero and they skip themselves
      Rational trj;
      for (const auto& [row, val] : cols_[j]) trj.add_mul(binv_[r][static_cast<std::size_t>(row)], val);
      if (trj.is_zero()) continue;
      pivot(r, j, ftran(j));
      break;
    }
  }
}

LPStatus SimplexSession::solve() {
  if (m_ == 0) {
    for (std::size_t j = 0; j < n_; ++j)
      if (cost_[j].sign() < 0) return status_ = LPStatus::unbounded;
    solved_ = true;
    return status_ = LPStatus::optimal;
  }
  LPStatus s = run_phase(true);
  if (s != LPStatus::optimal) throw std::logic_error("SimplexSession: phase I cannot be unbounded");
  Rational infeas;
  for (std::size_t r = 0; r < m_; ++r)
    if (col_is_artificial(basis_[r])) infeas += rhs_[r];
  if (infeas.sign() > 0) return status_ = LPStatus::infeasible;
  drive_out_artificials();
  status_ = run_phase(false);
  solved_ = (status_ == LPStatus::optimal);
  return status_;
}

LPStatus SimplexSession::reoptimize() {
  if (!solved_) throw std::logic_error("SimplexSession: reoptimize before successful solve");
  status_ = run_phase(false);
  solved_ = (status_ == LPStatus::optimal);
  return status_;
}

void SimplexSession::add_column(const Rational& cost, const std::vector<std::pair<int, Rational>>& col) {
  if (!solved_) throw std::logic_error("SimplexSession: add_column before successful solve");
  SparseCol adjusted;
  adjusted.reserve(col.size());
  for (const auto& [orow, val] : col) {
    const auto wr = static_cast<std::size_t>(orow);
    if (wr >= m_) throw std::out_of_range("SimplexSession: column row out of range");
    adjusted.emplace_back(orow, row_sign_[wr] < 0 ? -val : val);
  }
  cols_.push_back(std::move(adjusted));
  cost_.push_back(cost);
  if (!devex_.empty()) devex_.push_back(Rational(1));
  // Artificial internal ids shift up by one.
  for (auto& b : basis_)
    if (b >= n_) ++b;
  ++n_;
}

LPSolution SimplexSession::extract() const {
  LPSolution sol;
  sol.status = status_;
  if (status_ != LPStatus::optimal) return sol;
  sol.primal.assign(n_, Rational());
  sol.basis.assign(m_, 0);
  for (std::size_t r = 0; r < m_; ++r) {
    if (col_is_artificial(basis_[r]))
      sol.basis[r] = -static_cast<int>(r) - 1;
    else {
      sol.basis[r] = static_cast<int>(basis_[r]);
      sol.primal[basis_[r]] = rhs_[r];
    }
  }
  sol.value = Rational();
  for (std::size_t j = 0; j < n_; ++j)
    if (!sol.primal[j].is_zero()) sol.value.add_mul(cost_[j], sol.primal[j]);
  // y = cB . B^-1, mapped back through the row signs.
  sol.dual = basic_duals(false);
  for (std::size_t j = 0; j < m_; ++j)
    if (row_sign_[j] < 0) sol.dual[j] = -sol.dual[j];
  return sol;
}

LPSolution simplex_solve(const StandardLP& lp, PivotRule rule) {
  SimplexSession session(lp, rule);
  session.solve();
  return session.extract();
}

RestrictedMot build_restricted_mot(const std::vector<IndexTuple>& S, const BarycenterInstance& inst) {
  if (S.empty()) throw std::invalid_argument("build_restricted_mot: empty tuple set");
  RestrictedMot rm;
  const int k = inst.k();
  rm.row_offset.resize(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 0; i < k; ++i)
    rm.row_offset[static_cast<std::size_t>(i) + 1] =
        rm.row_offset[static_cast<std::size_t>(i)] + inst.atoms_of(i);
  const int rows = rm.row_offset.back();

  rm.columns = S;
  rm.lp.A.assign(static_cast<std::size_t>(rows), std::vector<Rational>(S.size()));
  rm.lp.b.resize(static_cast<std::size_t>(rows));
  rm.lp.c.resize(S.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < inst.atoms_of(i); ++j)
      rm.lp.b[static_cast<std::size_t>(rm.row_of(i, j))] =
          inst.measures[static_cast<std::size_t>(i)].masses[static_cast<std::size_t>(j)];

  for (std::size_t col = 0; col < S.size(); ++col) {
    const IndexTuple& t = S[col];
    if (t.size() != k) throw std::invalid_argument("build_restricted_mot: tuple arity mismatch");
    for (int i = 0; i < k; ++i) {
      const int j = t[i];
      if (j < 1 || j > inst.atoms_of(i))
        throw std::out_of_range("build_restricted_mot: tuple entry out of range in " + t.str());
      rm.lp.A[static_cast<std::size_t>(rm.row_of(i, j - 1))][col] = Rational(1);
    }
    rm.lp.c[col] = tuple_cost(t, inst);
  }
  return rm;
}

StandardLP build_transport_lp(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const int nm = mu.size();
  const int nn = nu.size();
  StandardLP lp;
  lp.A.assign(static_cast<std::size_t>(nm + nn),
              std::vector<Rational>(static_cast<std::size_t>(nm) * static_cast<std::size_t>(nn)));
  lp.b.resize(static_cast<std::size_t>(nm + nn));
  lp.c.resize(static_cast<std::size_t>(nm) * static_cast<std::size_t>(nn));
  for (int a = 0; a < nm; ++a) lp.b[static_cast<std::size_t>(a)] = mu.masses[static_cast<std::size_t>(a)];
  for (int b = 0; b < nn; ++b)
    lp.b[static_cast<std::size_t>(nm + b)] = nu.masses[static_cast<std::size_t>(b)];
  for (int a = 0; a < nm; ++a)
    for (int b = 0; b < nn; ++b) {
      const std::size_t col = static_cast<std::size_t>(a) * static_cast<std::size_t>(nn) +
                              static_cast<std::size_t>(b);
      lp.A[static_cast<std::size_t>(a)][col] = Rational(1);
      lp.A[static_cast<std::size_t>(nm + b)][col] = Rational(1);
      lp.c[col] = norm2(mu.atoms[static_cast<std::size_t>(a)] - nu.atoms[static_cast<std::size_t>(b)]);
    }
  return lp;
}

DualPotentials duals_to_potentials(const LPSolution& sol, const RestrictedMot& rm,
                                   const BarycenterInstance& inst) {
  if (sol.status != LPStatus::optimal)
    throw std::invalid_argument("duals_to_potentials: solution is not optimal");
  DualPotentials d = DualPotentials::zeros(inst);
  for (int i = 0; i < inst.k(); ++i)
    for (int j = 0; j < inst.atoms_of(i); ++j)
      d.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          sol.dual[static_cast<std::size_t>(rm.row_of(i, j))];
  return d;
}

}  // namespace wbary
