#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tvg/linalg.hpp"

namespace tvg {

/// Linear constraint system over the rationals:
///   eq_lhs * x == eq_rhs   and   ineq_lhs * x <= ineq_rhs.
struct LinSystem {
  QMatrix eq_lhs;    // (#equalities) x dim
  QVector eq_rhs;
  QMatrix ineq_lhs;  // (#inequalities) x dim
  QVector ineq_rhs;
  Eigen::Index dim = 0;
};

inline LinSystem make_system(Eigen::Index dim) {
  LinSystem s;
  s.dim = dim;
  s.eq_lhs.resize(0, dim);
  s.eq_rhs.resize(0);
  s.ineq_lhs.resize(0, dim);
  s.ineq_rhs.resize(0);
  return s;
}

inline void add_equality(LinSystem& s, const QVector& a, const Rational& b) {
  if (a.size() != s.dim)
    throw std::invalid_argument("LinSystem: equality row has wrong dimension");
  s.eq_lhs.conservativeResize(s.eq_lhs.rows() + 1, s.dim);
  s.eq_lhs.row(s.eq_lhs.rows() - 1) = a.transpose();
  s.eq_rhs.conservativeResize(s.eq_rhs.size() + 1);
  s.eq_rhs(s.eq_rhs.size() - 1) = b;
}

inline void add_inequality(LinSystem& s, const QVector& a, const Rational& b) {
  if (a.size() != s.dim)
    throw std::invalid_argument("LinSystem: inequality row has wrong dimension");
  s.ineq_lhs.conservativeResize(s.ineq_lhs.rows() + 1, s.dim);
  s.ineq_lhs.row(s.ineq_lhs.rows() - 1) = a.transpose();
  s.ineq_rhs.conservativeResize(s.ineq_rhs.size() + 1);
  s.ineq_rhs(s.ineq_rhs.size() - 1) = b;
}

/// Outcome of an exact feasibility query. Exactly one of the two certificate
/// kinds is populated:
///  - feasible:   witness satisfies every constraint with exact arithmetic;
///  - infeasible: farkas_eq (signed, per equality) and farkas_ineq
///    (nonnegative, per inequality) combine the rows into 0 <= negative.
struct Feasibility {
  bool feasible = false;
  QVector witness;
  QVector farkas_eq;
  QVector farkas_ineq;
};

namespace detail {

enum class LpStatus { optimal, infeasible, unbounded };

/// Internal problem form shared by the public feasibility entry point and the
/// engine's relative-interior tests:
///   maximize objective . x   s.t.  eq x == eq_rhs,  ineq x <= ineq_rhs,
///   and x_j >= 0 wherever nonneg[j] (free variables are split internally).
/// An empty objective requests pure feasibility (phase one only).
struct LpProblem {
  QMatrix eq_lhs;
  QVector eq_rhs;
  QMatrix ineq_lhs;
  QVector ineq_rhs;
  std::vector<bool> nonneg;
  QVector objective;
  Eigen::Index dim = 0;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  QVector x;
  Rational value = 0;
  QVector farkas_eq;
  QVector farkas_ineq;
};

/*
 * Exact two-phase primal simplex on a dense rational tableau.
 *
 * Pivot rule is Bland's (lowest eligible column index enters, ratio ties
 * broken by lowest basic variable index), which guarantees termination and
 * makes every answer deterministic. Phase one minimizes the sum of artificial
 * variables; its optimal dual prices, read off the final reduced-cost row,
 * yield the Farkas certificate on infeasibility. Basic artificials left at
 * zero after phase one are pivoted out, and rows that cannot be pivoted are
 * redundant and deactivated before phase two.
 */
class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : p_(p) { build(); }

  LpResult run() {
    LpResult res;
    phase_one();
    if (objective_value_ > 0) {
      res.status = LpStatus::infeasible;
      extract_farkas(res);
      return res;
    }
    if (p_.objective.size() == 0) {
      res.status = LpStatus::optimal;
      res.x = extract_x();
      res.value = 0;
      return res;
    }
    if (!phase_two()) {
      res.status = LpStatus::unbounded;
      res.x = extract_x();
      return res;
    }
    res.status = LpStatus::optimal;
    res.x = extract_x();
    res.value = p_.objective.dot(res.x);
    return res;
  }

 private:
  const LpProblem& p_;

  // tableau: rows_ x (num_cols_ + 1); last column is the rhs
  QMatrix t_;
  QRowVector cost_;           // reduced-cost row, last entry = -objective value
  std::vector<int> basis_;    // basic column per row
  std::vector<bool> active_;  // rows disabled when found redundant
  std::vector<bool> banned_;  // artificial columns are banned in phase two
  std::vector<int> col_u_, col_v_;      // variable -> column (v: -1 if nonneg)
  std::vector<int> slack_col_;          // inequality row -> slack column
  std::vector<int> art_col_;            // tableau row -> artificial column or -1
  std::vector<Rational> row_sign_;      // +-1 applied to normalize rhs >= 0
  Eigen::Index rows_ = 0, num_cols_ = 0;
  Rational objective_value_ = 0;        // current phase-one objective

  void build() {
    const Eigen::Index k = p_.eq_lhs.rows(), l = p_.ineq_lhs.rows();
    const Eigen::Index n = p_.dim;
    rows_ = k + l;

    col_u_.resize(n);
    col_v_.assign(n, -1);
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < n; ++j) col_u_[j] = static_cast<int>(c++);
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(j < static_cast<Eigen::Index>(p_.nonneg.size()) && p_.nonneg[j]))
        col_v_[j] = static_cast<int>(c++);
    slack_col_.resize(l);
    for (Eigen::Index i = 0; i < l; ++i) slack_col_[i] = static_cast<int>(c++);

    row_sign_.assign(rows_, Rational(1));
    art_col_.assign(rows_, -1);
    Eigen::Index num_art = 0;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const bool is_eq = r < k;
      const Rational& rhs = is_eq ? p_.eq_rhs(r) : p_.ineq_rhs(r - k);
      if (rhs < 0) row_sign_[r] = -1;
      if (is_eq || row_sign_[r] < 0) art_col_[r] = static_cast<int>(c + num_art++);
    }
    num_cols_ = c + num_art;

    t_ = QMatrix::Zero(rows_, num_cols_ + 1);
    basis_.assign(rows_, -1);
    active_.assign(rows_, true);
    banned_.assign(num_cols_, false);

    for (Eigen::Index r = 0; r < rows_; ++r) {
      const bool is_eq = r < k;
      const auto lhs_row = is_eq ? p_.eq_lhs.row(r) : p_.ineq_lhs.row(r - k);
      const Rational rhs = (is_eq ? p_.eq_rhs(r) : p_.ineq_rhs(r - k));
      const Rational s = row_sign_[r];
      for (Eigen::Index j = 0; j < n; ++j) {
        const Rational a = s * lhs_row(j);
        if (a == 0) continue;
        t_(r, col_u_[j]) = a;
        if (col_v_[j] >= 0) t_(r, col_v_[j]) = -a;
      }
      if (!is_eq) t_(r, slack_col_[r - k]) = s;
      t_(r, num_cols_) = s * rhs;
      if (art_col_[r] >= 0) {
        t_(r, art_col_[r]) = 1;
        basis_[r] = art_col_[r];
        banned_[art_col_[r]] = true;
      } else {
        basis_[r] = slack_col_[r - k];
      }
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Rational inv = Rational(1) / t_(row, col);
    for (Eigen::Index j = 0; j <= num_cols_; ++j) t_(row, j) *= inv;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (r == row || t_(r, col) == 0) continue;
      const Rational f = t_(r, col);
      for (Eigen::Index j = 0; j <= num_cols_; ++j)
        t_(r, j) -= f * t_(row, j);
    }
    if (cost_(col) != 0) {
      const Rational f = cost_(col);
      for (Eigen::Index j = 0; j <= num_cols_; ++j)
        cost_(j) -= f * t_(row, j);
    }
    basis_[row] = static_cast<int>(col);
  }

  // Bland: returns false when optimal, throws never; `allow_banned` admits
  // artificial columns (phase one only).
  bool bland_step(bool allow_banned) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < num_cols_; ++j) {
      if (!allow_banned && banned_[j]) continue;
      if (cost_(j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;

    Eigen::Index leave = -1;
    Rational best_ratio = 0;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (!active_[r] || t_(r, enter) <= 0) continue;
      const Rational ratio = t_(r, num_cols_) / t_(r, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw UnboundedSignal{};
    pivot(leave, enter);
    return true;
  }

  struct UnboundedSignal {};

  void phase_one() {
    cost_ = QRowVector::Zero(num_cols_ + 1);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (art_col_[r] < 0) continue;
      for (Eigen::Index j = 0; j <= num_cols_; ++j) cost_(j) -= t_(r, j);
      cost_(art_col_[r]) += 1;
    }
    // cost_ now holds phase-one reduced costs; last entry is -(sum of
    // artificial values) = -objective.
    try {
      while (bland_step(true)) {
      }
    } catch (const UnboundedSignal&) {
      // the phase-one objective is bounded below by zero
      throw std::logic_error("simplex: phase one reported unbounded");
    }
    objective_value_ = -cost_(num_cols_);
  }

  void extract_farkas(LpResult& res) const {
    const Eigen::Index k = p_.eq_lhs.rows(), l = p_.ineq_lhs.rows();
    res.farkas_eq.resize(k);
    res.farkas_ineq.resize(l);
    for (Eigen::Index r = 0; r < k; ++r) {
      // dual price y_r = 1 - reduced cost of the row's artificial column
      const Rational y = 1 - cost_(art_col_[r]);
      res.farkas_eq(r) = -row_sign_[r] * y;
    }
    for (Eigen::Index i = 0; i < l; ++i)
      res.farkas_ineq(i) = cost_(slack_col_[i]);
  }

  QVector extract_x() const {
    QVector vals = QVector::Zero(num_cols_);
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (active_[r] && basis_[r] >= 0) vals(basis_[r]) = t_(r, num_cols_);
    QVector x(p_.dim);
    for (Eigen::Index j = 0; j < p_.dim; ++j) {
      x(j) = vals(col_u_[j]);
      if (col_v_[j] >= 0) x(j) -= vals(col_v_[j]);
    }
    return x;
  }

  // Returns false on unboundedness.
  bool phase_two() {
    // Pivot remaining artificials (all at value zero) out of the basis; rows
    // that offer no pivot are redundant combinations of earlier rows.
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (!active_[r] || !banned_[basis_[r]]) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < num_cols_; ++j)
        if (!banned_[j] && t_(r, j) != 0) {
          col = j;
          break;
        }
      if (col < 0) {
        active_[r] = false;
        continue;
      }
      pivot(r, col);  // cost row is rebuilt from scratch below
    }

    cost_ = QRowVector::Zero(num_cols_ + 1);
    for (Eigen::Index j = 0; j < p_.dim; ++j) {
      // maximize c.x == minimize (-c).(u - v)
      cost_(col_u_[j]) = -p_.objective(j);
      if (col_v_[j] >= 0) cost_(col_v_[j]) = p_.objective(j);
    }
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (!active_[r] || cost_(basis_[r]) == 0) continue;
      const Rational f = cost_(basis_[r]);
      for (Eigen::Index j = 0; j <= num_cols_; ++j)
        cost_(j) -= f * t_(r, j);
    }
    try {
      while (bland_step(false)) {
      }
    } catch (const UnboundedSignal&) {
      return false;
    }
    return true;
  }
};

inline LpResult simplex_solve(const LpProblem& p) {
  if (p.eq_lhs.rows() != p.eq_rhs.size() ||
      p.ineq_lhs.rows() != p.ineq_rhs.size())
    throw std::invalid_argument("LpProblem: lhs/rhs row counts differ");
  if ((p.eq_lhs.rows() > 0 && p.eq_lhs.cols() != p.dim) ||
      (p.ineq_lhs.rows() > 0 && p.ineq_lhs.cols() != p.dim))
    throw std::invalid_argument("LpProblem: row dimension mismatch");
  if (p.objective.size() != 0 && p.objective.size() != p.dim)
    throw std::invalid_argument("LpProblem: objective dimension mismatch");
  Simplex s(p);
  return s.run();
}

}  // namespace detail

/// Exact feasibility of a mixed equality/inequality system with free
/// variables. Deterministic: identical systems produce identical witnesses.
inline Feasibility lp_feasible(const LinSystem& sys) {
  if ((sys.eq_lhs.rows() > 0 && sys.eq_lhs.cols() != sys.dim) ||
      (sys.ineq_lhs.rows() > 0 && sys.ineq_lhs.cols() != sys.dim))
    throw std::invalid_argument("lp_feasible: row dimension mismatch");
  detail::LpProblem p;
  p.eq_lhs = sys.eq_lhs;
  p.eq_rhs = sys.eq_rhs;
  p.ineq_lhs = sys.ineq_lhs;
  p.ineq_rhs = sys.ineq_rhs;
  p.nonneg.assign(static_cast<std::size_t>(sys.dim), false);
  p.dim = sys.dim;
  const detail::LpResult r = detail::simplex_solve(p);
  Feasibility f;
  if (r.status == detail::LpStatus::optimal) {
    f.feasible = true;
    f.witness = r.x;
  } else {
    f.feasible = false;
    f.farkas_eq = r.farkas_eq;
    f.farkas_ineq = r.farkas_ineq;
  }
  return f;
}

/// Substitutes a witness into every constraint; exact, zero tolerance.
inline bool check_feasible_witness(const LinSystem& sys, const QVector& x) {
  if (x.size() != sys.dim) return false;
  for (Eigen::Index r = 0; r < sys.eq_lhs.rows(); ++r)
    if ((sys.eq_lhs.row(r) * x)(0) != sys.eq_rhs(r)) return false;
  for (Eigen::Index r = 0; r < sys.ineq_lhs.rows(); ++r)
    if ((sys.ineq_lhs.row(r) * x)(0) > sys.ineq_rhs(r)) return false;
  return true;
}

/// Re-derives 0 <= negative from the certificate: inequality multipliers must
/// be nonnegative, the combined left side must vanish identically, and the
/// combined right side must be negative.
inline bool check_farkas_certificate(const LinSystem& sys, const QVector& lam,
                                     const QVector& mu) {
  if (lam.size() != sys.eq_lhs.rows() || mu.size() != sys.ineq_lhs.rows())
    return false;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu(i) < 0) return false;
  QVector combo = QVector::Zero(sys.dim);
  Rational rhs = 0;
  for (Eigen::Index r = 0; r < sys.eq_lhs.rows(); ++r) {
    combo += lam(r) * sys.eq_lhs.row(r).transpose();
    rhs += lam(r) * sys.eq_rhs(r);
  }
  for (Eigen::Index r = 0; r < sys.ineq_lhs.rows(); ++r) {
    combo += mu(r) * sys.ineq_lhs.row(r).transpose();
    rhs += mu(r) * sys.ineq_rhs(r);
  }
  return is_zero(combo) && rhs < 0;
}

}  // namespace tvg
