#include "motlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace motlab {

LinearProgram LinearProgram::zeros(std::size_t rows, std::size_t vars) {
  LinearProgram lp;
  lp.num_rows = rows;
  lp.num_vars = vars;
  lp.objective.assign(vars, 0.0);
  lp.matrix.assign(rows * vars, 0.0);
  lp.rhs.assign(rows, 0.0);
  return lp;
}

void LinearProgram::validate() const {
  if (num_vars == 0) throw std::invalid_argument("lp: no variables");
  if (objective.size() != num_vars)
    throw std::invalid_argument("lp: objective length does not match num_vars");
  if (matrix.size() != num_rows * num_vars)
    throw std::invalid_argument("lp: matrix size does not match num_rows x num_vars");
  if (rhs.size() != num_rows)
    throw std::invalid_argument("lp: rhs length does not match num_rows");
  for (double v : objective)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite objective entry");
  for (double v : matrix)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite matrix entry");
  for (double v : rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite rhs entry");
}

std::string lp_status_name(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
    case LPStatus::IterationLimit: return "iteration_limit";
    case LPStatus::NumericalError: return "numerical_error";
  }
  return "unknown";
}

namespace {

constexpr double kPhase1FeasTol = 1e-8;  // feasibility threshold on the phase-1 optimum
constexpr double kStrongPivot = 1e-7;    // preferred minimum pivot element magnitude
constexpr double kValueSnap = 1e-12;     // basic values below this count as exact zero
constexpr int kRefactorInterval = 25;    // eta updates between basis refactorizations
constexpr std::size_t kParallelCells = 1u << 20;  // Auto mode switch point

// Degenerate vertices only stay degenerate in floating point if the zero
// basic values are exactly zero: otherwise ratio ties break on noise and the
// anti-cycling rule loses its guarantee.
void snap_small_to_zero(std::vector<double> &v) {
  for (double &x : v)
    if (std::abs(x) < kValueSnap) x = 0.0;
}

// Dense LU factorization with partial pivoting; row i of the factored system
// is original row perm[i].
struct DenseLU {
  std::size_t dim = 0;
  std::vector<double> factors;   // L below the diagonal (unit), U on and above
  std::vector<std::size_t> perm;

  bool factor(std::vector<double> matrix, std::size_t k) {
    dim = k;
    factors = std::move(matrix);
    perm.resize(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t best = col;
      for (std::size_t r = col + 1; r < k; ++r)
        if (std::abs(factors[r * k + col]) > std::abs(factors[best * k + col])) best = r;
      if (std::abs(factors[best * k + col]) < 1e-12) return false;
      if (best != col) {
        for (std::size_t c = 0; c < k; ++c)
          std::swap(factors[col * k + c], factors[best * k + c]);
        std::swap(perm[col], perm[best]);
      }
      const double piv = factors[col * k + col];
      for (std::size_t r = col + 1; r < k; ++r) {
        const double f = factors[r * k + col] / piv;
        factors[r * k + col] = f;
        if (f == 0.0) continue;
        for (std::size_t c = col + 1; c < k; ++c)
          factors[r * k + c] -= f * factors[col * k + c];
      }
    }
    return true;
  }

  // Solves B x = v.
  void solve(const double *v, double *x) const {
    const std::size_t k = dim;
    for (std::size_t i = 0; i < k; ++i) x[i] = v[perm[i]];
    for (std::size_t i = 1; i < k; ++i) {
      double acc = x[i];
      const double *row = factors.data() + i * k;
      for (std::size_t j = 0; j < i; ++j) acc -= row[j] * x[j];
      x[i] = acc;
    }
    for (std::size_t i = k; i-- > 0;) {
      double acc = x[i];
      const double *row = factors.data() + i * k;
      for (std::size_t j = i + 1; j < k; ++j) acc -= row[j] * x[j];
      x[i] = acc / row[i];
    }
  }

  // Solves B^T y = v.
  void solve_transposed(const double *v, double *y) const {
    const std::size_t k = dim;
    std::vector<double> z(k);
    for (std::size_t i = 0; i < k; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < i; ++j) acc -= factors[j * k + i] * z[j];
      z[i] = acc / factors[i * k + i];
    }
    for (std::size_t i = k; i-- > 0;) {
      double acc = z[i];
      for (std::size_t j = i + 1; j < k; ++j) acc -= factors[j * k + i] * z[j];
      z[i] = acc;
    }
    for (std::size_t i = 0; i < k; ++i) y[perm[i]] = z[i];
  }
};

// Revised primal simplex over the column space [original vars | artificial
// slots]. The basis inverse is carried as a dense LU plus a product-form eta
// file and is refactorized from the original data every kRefactorInterval
// pivots, so numerical state cannot drift across a long solve. Pricing is
// Dantzig's rule; the ratio test is lexicographic. Pricing sweeps are the
// data-parallel hot loop (OpenMP when enabled).
class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram &lp, const SimplexOptions &options)
      : lp_(lp), opt_(options), m_(lp.num_rows), n_(lp.num_vars) {
    lp.validate();
    iter_limit_ = opt_.max_iters > 0 ? opt_.max_iters
                                     : static_cast<int>(10000 + 100 * (m_ + n_));
    row_sign_.assign(m_, 1.0);
    work_b_ = lp.rhs;
    cols_.assign(m_ * n_, 0.0);  // column-major copy for pricing and ftran
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
      row_sign_[i] = sign;
      work_b_[i] = sign * lp.rhs[i];
      for (std::size_t j = 0; j < n_; ++j)
        cols_[j * m_ + i] = sign * lp.matrix[i * n_ + j];
    }
  }

  LPSolution run(bool phase1_only) {
    LPSolution sol;
    if (m_ == 0) return solve_row_free(sol, phase1_only);

    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = static_cast<int>(n_ + i);
    is_basic_.assign(n_, false);
    if (!refactorize()) {
      sol.status = LPStatus::NumericalError;
      return sol;
    }

    phase1_ = true;
    const LPStatus phase1_status = iterate(sol);
    if (phase1_status != LPStatus::Optimal) {
      sol.status = phase1_status == LPStatus::Unbounded ? LPStatus::NumericalError
                                                        : phase1_status;
      return sol;
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= static_cast<int>(n_)) infeasibility += std::max(x_basic_[i], 0.0);
    sol.phase1_infeasibility = infeasibility;
    if (infeasibility > kPhase1FeasTol) {
      sol.status = LPStatus::Infeasible;
      return sol;
    }
    if (phase1_only) {
      sol.status = LPStatus::Optimal;
      return sol;
    }

    phase1_ = false;
    const LPStatus status = iterate(sol);
    sol.status = status;
    if (status == LPStatus::Unbounded) {
      sol.ray.assign(n_, 0.0);
      sol.ray[entering_] = 1.0;
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] < static_cast<int>(n_))
          sol.ray[static_cast<std::size_t>(basis_[i])] = -direction_[i];
      return sol;
    }
    if (status != LPStatus::Optimal) return sol;
    extract(sol);
    return sol;
  }

 private:
  const LinearProgram &lp_;
  SimplexOptions opt_;
  std::size_t m_ = 0, n_ = 0;
  std::vector<double> cols_;      // sign-adjusted A, column-major
  std::vector<double> work_b_;    // sign-adjusted rhs (nonnegative)
  std::vector<double> row_sign_;

  std::vector<int> basis_;        // per row; >= n_ marks an artificial slot
  std::vector<bool> is_basic_;    // original columns only
  std::vector<double> x_basic_;   // basic variable values, per row
  DenseLU lu_;
  struct Eta {
    std::size_t row;
    std::vector<double> d;  // B^-1 * entering column at update time
  };
  std::vector<Eta> etas_;
  std::vector<double> reduced_;   // pricing buffer
  std::vector<double> direction_; // last ftran of the entering column
  std::size_t entering_ = 0;
  bool phase1_ = true;
  int iterations_ = 0;
  int iter_limit_ = 0;

  bool parallel_pricing() const {
    switch (opt_.mode) {
      case ExecMode::Serial: return false;
      case ExecMode::Parallel: return true;
      case ExecMode::Auto: return m_ * n_ >= kParallelCells;
    }
    return false;
  }

  // B x = v through the LU and the eta file.
  void ftran(std::vector<double> &v) const {
    std::vector<double> tmp(m_);
    lu_.solve(v.data(), tmp.data());
    for (const Eta &e : etas_) {
      const double pivot_val = tmp[e.row] / e.d[e.row];
      if (pivot_val != 0.0) {
        for (std::size_t i = 0; i < m_; ++i) tmp[i] -= e.d[i] * pivot_val;
      }
      tmp[e.row] = pivot_val;
    }
    v = std::move(tmp);
  }

  // B^T y = v through the eta file (reverse order) and the LU.
  void btran(std::vector<double> &v) const {
    for (std::size_t k = etas_.size(); k-- > 0;) {
      const Eta &e = etas_[k];
      double acc = v[e.row];
      for (std::size_t i = 0; i < m_; ++i)
        if (i != e.row) acc -= e.d[i] * v[i];
      v[e.row] = acc / e.d[e.row];
    }
    std::vector<double> out(m_);
    lu_.solve_transposed(v.data(), out.data());
    v = std::move(out);
  }

  double objective_coeff(int col) const {
    if (phase1_) return col >= static_cast<int>(n_) ? 1.0 : 0.0;
    return col >= static_cast<int>(n_) ? 0.0 : lp_.objective[static_cast<std::size_t>(col)];
  }

  // Rebuilds the LU of the current basis from the original data and
  // recomputes the basic solution; clears the eta file.
  bool refactorize() {
    std::vector<double> b_mat(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const int col = basis_[i];
      if (col >= static_cast<int>(n_)) {
        b_mat[(static_cast<std::size_t>(col) - n_) * m_ + i] = 1.0;
      } else {
        const double *a_col = cols_.data() + static_cast<std::size_t>(col) * m_;
        for (std::size_t r = 0; r < m_; ++r) b_mat[r * m_ + i] = a_col[r];
      }
    }
    if (!lu_.factor(std::move(b_mat), m_)) return false;
    etas_.clear();
    x_basic_ = work_b_;
    ftran(x_basic_);
    snap_small_to_zero(x_basic_);
    return true;
  }

  // Reduced costs of the original columns under the current basis; the
  // per-column loop is the data-parallel kernel.
  void price() {
    std::vector<double> y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) y[i] = objective_coeff(basis_[i]);
    btran(y);
    reduced_.assign(n_, 0.0);
    const bool parallel = parallel_pricing();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n_); ++j) {
      if (is_basic_[static_cast<std::size_t>(j)]) {
        reduced_[static_cast<std::size_t>(j)] = 0.0;
        continue;
      }
      const double *a_col = cols_.data() + static_cast<std::size_t>(j) * m_;
      double acc = phase1_ ? 0.0 : lp_.objective[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < m_; ++i) acc -= y[i] * a_col[i];
      reduced_[static_cast<std::size_t>(j)] = acc;
    }
#ifndef _OPENMP
    (void)parallel;
#endif
  }

  // Entering column by Dantzig pricing; n_ when none improves.
  std::size_t select_entering() const {
    std::size_t jc = n_;
    double most_negative = -opt_.pivot_tol;
    for (std::size_t j = 0; j < n_; ++j) {
      if (reduced_[j] < most_negative) {
        most_negative = reduced_[j];
        jc = j;
      }
    }
    return jc;
  }

  // Leaving row for the entering direction d: min-ratio over rows with d_i
  // above the element floor; exact ties fall to the lexicographic comparison
  // of the B^-1 rows, which makes every pivot a strict lexicographic decrease
  // and hence rules out cycling on degenerate vertices. In phase 2 rows
  // holding an artificial at zero block at ratio zero for either sign of
  // d_i, so artificials can never climb back above zero.
  std::size_t select_leaving(const std::vector<double> &d) {
    std::vector<std::size_t> ties;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (double floor_mag : {kStrongPivot, opt_.pivot_tol}) {
      for (std::size_t i = 0; i < m_; ++i) {
        const bool artificial = basis_[i] >= static_cast<int>(n_);
        const double di = d[i];
        double mag = di;
        if (!phase1_ && artificial) mag = std::abs(di);
        if (mag <= floor_mag) continue;
        const double ratio = std::max(x_basic_[i], 0.0) / mag;
        if (ties.empty() || ratio < best_ratio) {
          best_ratio = ratio;
          ties.assign(1, i);
        } else if (ratio == best_ratio) {
          ties.push_back(i);
        }
      }
      if (!ties.empty()) break;
    }
    if (ties.empty()) return m_;
    for (std::size_t k = 0; k < m_ && ties.size() > 1; ++k) {
      std::vector<double> unit(m_, 0.0);
      unit[k] = 1.0;
      ftran(unit);  // column k of B^-1
      std::vector<std::size_t> keep;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i : ties) {
        const double v = unit[i] / std::abs(d[i]);
        if (keep.empty() || v < best) {
          best = v;
          keep.assign(1, i);
        } else if (v == best) {
          keep.push_back(i);
        }
      }
      ties = std::move(keep);
    }
    return ties.front();
  }

  LPStatus iterate(LPSolution &sol) {
    bool fresh = etas_.empty();
    for (;;) {
      if (iterations_ >= iter_limit_) return LPStatus::IterationLimit;
      price();
      const std::size_t jc = select_entering();
      if (jc == n_) {
        // Re-check optimality against a freshly factorized basis.
        if (fresh) return LPStatus::Optimal;
        if (!refactorize()) return LPStatus::NumericalError;
        fresh = true;
        continue;
      }

      std::vector<double> d(cols_.begin() + static_cast<std::ptrdiff_t>(jc * m_),
                            cols_.begin() + static_cast<std::ptrdiff_t>((jc + 1) * m_));
      ftran(d);
      const std::size_t leave = select_leaving(d);
      if (leave == m_) {
        entering_ = jc;
        direction_ = std::move(d);
        return LPStatus::Unbounded;
      }

      // d[leave] < 0 only on an artificial row pivoting out at level ~0; the
      // swap is then forced degenerate.
      double step = std::max(x_basic_[leave], 0.0) / d[leave];
      if (step < kValueSnap) step = 0.0;
      if (step != 0.0) {
        for (std::size_t i = 0; i < m_; ++i) {
          const double v = x_basic_[i] - step * d[i];
          x_basic_[i] = std::abs(v) < kValueSnap ? 0.0 : v;
        }
      }
      x_basic_[leave] = step;
      const int leaving_col = basis_[leave];
      if (leaving_col < static_cast<int>(n_))
        is_basic_[static_cast<std::size_t>(leaving_col)] = false;
      basis_[leave] = static_cast<int>(jc);
      is_basic_[jc] = true;
      ++iterations_;
      sol.iterations = iterations_;

      etas_.push_back({leave, std::move(d)});
      if (etas_.size() >= static_cast<std::size_t>(kRefactorInterval)) {
        if (!refactorize()) return LPStatus::NumericalError;
        fresh = true;
      } else {
        fresh = false;
      }
    }
  }

  void extract(LPSolution &sol) {
    if (!refactorize()) {
      sol.status = LPStatus::NumericalError;
      return;
    }
    sol.primal.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < static_cast<int>(n_))
        sol.primal[static_cast<std::size_t>(basis_[i])] = std::max(x_basic_[i], 0.0);
    sol.value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) sol.value += lp_.objective[j] * sol.primal[j];

    // Duals from the final basis; rows kept by an artificial at zero solve to
    // exactly zero because the artificial column is a unit vector of cost 0.
    std::vector<double> y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) y[i] = objective_coeff(basis_[i]);
    btran(y);
    sol.dual.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) sol.dual[i] = row_sign_[i] * y[i];

    double residual = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      double acc = -lp_.rhs[i];
      for (std::size_t j = 0; j < n_; ++j) acc += lp_.matrix[i * n_ + j] * sol.primal[j];
      residual = std::max(residual, std::abs(acc));
    }
    double by = 0.0;
    for (std::size_t i = 0; i < m_; ++i) by += lp_.rhs[i] * sol.dual[i];
    sol.residual_inf = residual;
    sol.duality_gap = std::abs(sol.value - by);
    if (residual > opt_.feas_tol || sol.duality_gap > 1e-7 * (1.0 + std::abs(sol.value)))
      sol.status = LPStatus::NumericalError;
  }

  // No constraints: the optimum is 0 at the origin unless a negative
  // objective coefficient makes the problem unbounded.
  LPSolution solve_row_free(LPSolution &sol, bool phase1_only) {
    sol.phase1_infeasibility = 0.0;
    if (phase1_only) {
      sol.status = LPStatus::Optimal;
      return sol;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (lp_.objective[j] < -opt_.pivot_tol) {
        sol.status = LPStatus::Unbounded;
        sol.ray.assign(n_, 0.0);
        sol.ray[j] = 1.0;
        return sol;
      }
    }
    sol.status = LPStatus::Optimal;
    sol.primal.assign(n_, 0.0);
    sol.dual.clear();
    sol.value = 0.0;
    return sol;
  }
};

}  // namespace

LPSolution solve(const LinearProgram &lp, const SimplexOptions &options) {
  return RevisedSimplex(lp, options).run(false);
}

bool feasible(const LinearProgram &lp, const SimplexOptions &options) {
  LPSolution sol = RevisedSimplex(lp, options).run(true);
  if (sol.status == LPStatus::IterationLimit)
    throw std::runtime_error("feasibility phase hit the iteration limit");
  if (sol.status == LPStatus::NumericalError)
    throw std::runtime_error("feasibility phase failed numerically");
  return sol.status == LPStatus::Optimal;
}

}  // namespace motlab
