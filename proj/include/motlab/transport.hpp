#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "motlab/coupling.hpp"
#include "motlab/lp.hpp"
#include "motlab/measure.hpp"

namespace motlab {

// The martingale problem is infeasible: the marginals are not in convex order.
struct NotInConvexOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The LP engine failed (iteration limit or numerical breakdown).
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TransportResult {
  double value = 0.0;
  Coupling plan;
};

// Marginal-constrained LP over mass[i][j]; variable index i * |target| + j.
LinearProgram ot_program(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                         const CostSpec &cost);

// Same with the barycenter rows appended: for each source atom i and each
// coordinate k, sum_j mass[i][j] * (y_j - x_i)_k = 0.
LinearProgram mot_program(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                          const CostSpec &cost);

// Minimal transport cost and an optimal plan. Euclidean norm gives the
// 1-Wasserstein distance.
TransportResult ot_value(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                         const CostSpec &cost, const SimplexOptions &options = {});

// Minimal cost over martingale couplings. Throws NotInConvexOrder when the
// martingale polytope is empty, SolverFailure on engine failure.
TransportResult mot_value(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                          const CostSpec &cost, const SimplexOptions &options = {});

// True iff a martingale coupling exists; for finitely supported measures this
// is equivalent to mu <=_c nu.
bool check_convex_order(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                        const SimplexOptions &options = {});

struct UniquenessReport {
  bool unique = false;
  Coupling witness;       // the common plan when unique, else the first optimum
  double max_value_gap = 0.0;  // largest max-min objective gap over the trials
  double max_tv_gap = 0.0;     // largest TV distance between optimal plans
};

// Probes whether the martingale polytope is a single point: minimizes and
// maximizes `trials` random linear objectives (plus any extra objectives
// supplied) and reports unique=true iff all optima coincide within 1e-7 in
// value and total variation. Trial t draws its objective from a generator
// seeded by (seed, t), so parallel and serial runs agree.
UniquenessReport uniqueness_probe(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                                  int trials, std::uint64_t seed,
                                  const std::vector<std::vector<double>> &extra_objectives = {},
                                  const SimplexOptions &options = {});

// Applies the line projection at angle theta (see line_projection) to both
// coordinates of a plan on R^2, merging collapsed atoms. theta must lie in
// (0, pi/2]; the projection is undefined at theta = 0.
Coupling project_coupling(const Coupling &plan, double theta);

// One-dimensional convex-order criterion: equal means within 1e-9 and the
// potential t -> sum_i w_i |t - x_i| of mu below the one of nu at every atom
// location of either measure.
bool potential_function_check(const DiscreteMeasure &mu, const DiscreteMeasure &nu);

}  // namespace motlab
