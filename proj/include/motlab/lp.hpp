#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace motlab {

// Equality-form linear program: min c.x subject to A x = b, x >= 0.
struct LinearProgram {
  std::size_t num_rows = 0;
  std::size_t num_vars = 0;
  std::vector<double> objective;  // num_vars
  std::vector<double> matrix;     // row-major, num_rows x num_vars
  std::vector<double> rhs;        // num_rows

  static LinearProgram zeros(std::size_t rows, std::size_t vars);

  double at(std::size_t r, std::size_t c) const { return matrix[r * num_vars + c]; }
  double &at(std::size_t r, std::size_t c) { return matrix[r * num_vars + c]; }

  void validate() const;  // throws std::invalid_argument on shape mismatch
};

enum class LPStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalError };

std::string lp_status_name(LPStatus status);

// Execution mode of the tableau elimination kernel. Serial and Parallel run
// the same arithmetic per row, so solutions are bit-identical; Auto picks
// Parallel once the tableau is large enough to pay for the fork.
enum class ExecMode { Auto, Serial, Parallel };

struct SimplexOptions {
  double pivot_tol = 1e-10;
  double feas_tol = 1e-9;
  int max_iters = 0;  // 0: derived from problem size
  ExecMode mode = ExecMode::Auto;
};

struct LPSolution {
  LPStatus status = LPStatus::NumericalError;
  double value = 0.0;
  std::vector<double> primal;  // num_vars (optimal)
  std::vector<double> dual;    // num_rows; 0 on rows found redundant (optimal)
  std::vector<double> ray;     // improving ray (unbounded)
  double phase1_infeasibility = 0.0;  // phase-1 optimum (infeasible certificate)
  double residual_inf = 0.0;          // ||Ax - b||_inf at the reported primal
  double duality_gap = 0.0;           // |c.x - b.y|
  int iterations = 0;
};

// Two-phase dense primal simplex with Bland's anti-cycling rule. Deterministic:
// the same program always yields the same solution.
LPSolution solve(const LinearProgram &lp, const SimplexOptions &options = {});

// Phase 1 only: true iff the phase-1 optimum is <= 1e-8.
bool feasible(const LinearProgram &lp, const SimplexOptions &options = {});

}  // namespace motlab
