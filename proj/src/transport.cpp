#include "motlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "motlab/constructions.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace motlab {

namespace {

void require_compatible(const DiscreteMeasure &mu, const DiscreteMeasure &nu) {
  if (mu.dim() != nu.dim())
    throw std::invalid_argument("transport: marginal dimension mismatch (" +
                                std::to_string(mu.dim()) + " vs " + std::to_string(nu.dim()) +
                                ")");
}

// Marginal constraints shared by the plain and martingale programs; variable
// (i,j) has index i * |nu| + j.
void fill_marginal_rows(LinearProgram &lp, const DiscreteMeasure &mu,
                        const DiscreteMeasure &nu) {
  const std::size_t s = mu.size(), t = nu.size();
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < t; ++j) lp.at(i, i * t + j) = 1.0;
    lp.rhs[i] = mu.weight(i);
  }
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t i = 0; i < s; ++i) lp.at(s + j, i * t + j) = 1.0;
    lp.rhs[s + j] = nu.weight(j);
  }
}

void fill_cost_objective(LinearProgram &lp, const DiscreteMeasure &mu,
                         const DiscreteMeasure &nu, const CostSpec &cost) {
  const std::size_t t = nu.size();
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < t; ++j)
      lp.objective[i * t + j] = cost(mu.point(i), nu.point(j));
}

Coupling plan_from_primal(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                          const std::vector<double> &primal) {
  Coupling plan;
  plan.source = mu.points();
  plan.target = nu.points();
  plan.mass.assign(mu.size(), std::vector<double>(nu.size(), 0.0));
  const std::size_t t = nu.size();
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < t; ++j)
      plan.mass[i][j] = std::max(primal[i * t + j], 0.0);
  return plan;
}

[[noreturn]] void raise_solver_failure(const LPSolution &sol, const char *what) {
  throw SolverFailure(std::string(what) + ": " + lp_status_name(sol.status) + " after " +
                      std::to_string(sol.iterations) + " iterations");
}

LPSolution solve_transport(const LinearProgram &lp, const SimplexOptions &options,
                           bool martingale, const char *what) {
  LPSolution sol = solve(lp, options);
  if (sol.status == LPStatus::Infeasible) {
    if (martingale)
      throw NotInConvexOrder("martingale program infeasible: marginals are not in convex "
                             "order (phase-1 optimum " +
                             std::to_string(sol.phase1_infeasibility) + ")");
    raise_solver_failure(sol, what);
  }
  if (sol.status != LPStatus::Optimal) raise_solver_failure(sol, what);
  return sol;
}

}  // namespace

LinearProgram ot_program(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                         const CostSpec &cost) {
  require_compatible(mu, nu);
  const std::size_t s = mu.size(), t = nu.size();
  LinearProgram lp = LinearProgram::zeros(s + t, s * t);
  fill_marginal_rows(lp, mu, nu);
  fill_cost_objective(lp, mu, nu, cost);
  return lp;
}

LinearProgram mot_program(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                          const CostSpec &cost) {
  require_compatible(mu, nu);
  const std::size_t s = mu.size(), t = nu.size(), d = mu.dim();
  LinearProgram lp = LinearProgram::zeros(s + t + s * d, s * t);
  fill_marginal_rows(lp, mu, nu);
  // Barycenter rows: sum_j mass[i][j] * (y_j - x_i)_k = 0.
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t row = s + t + i * d + k;
      for (std::size_t j = 0; j < t; ++j)
        lp.at(row, i * t + j) = nu.point(j)[k] - mu.point(i)[k];
      lp.rhs[row] = 0.0;
    }
  fill_cost_objective(lp, mu, nu, cost);
  return lp;
}

TransportResult ot_value(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                         const CostSpec &cost, const SimplexOptions &options) {
  const LinearProgram lp = ot_program(mu, nu, cost);
  const LPSolution sol = solve_transport(lp, options, false, "transport LP");
  return {sol.value, plan_from_primal(mu, nu, sol.primal)};
}

TransportResult mot_value(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                          const CostSpec &cost, const SimplexOptions &options) {
  const LinearProgram lp = mot_program(mu, nu, cost);
  const LPSolution sol = solve_transport(lp, options, true, "martingale transport LP");
  return {sol.value, plan_from_primal(mu, nu, sol.primal)};
}

bool check_convex_order(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                        const SimplexOptions &options) {
  return feasible(mot_program(mu, nu, CostSpec{}), options);
}

UniquenessReport uniqueness_probe(const DiscreteMeasure &mu, const DiscreteMeasure &nu,
                                  int trials, std::uint64_t seed,
                                  const std::vector<std::vector<double>> &extra_objectives,
                                  const SimplexOptions &options) {
  if (trials < 1) throw std::invalid_argument("uniqueness probe: trials must be positive");
  LinearProgram lp = mot_program(mu, nu, CostSpec{});
  if (!feasible(lp, options))
    throw NotInConvexOrder("uniqueness probe: no martingale coupling exists");
  const std::size_t nvars = lp.num_vars;
  for (const auto &c : extra_objectives)
    if (c.size() != nvars)
      throw std::invalid_argument("uniqueness probe: extra objective length mismatch");

  const std::size_t total = extra_objectives.size() + static_cast<std::size_t>(trials);
  std::vector<double> value_gap(total, 0.0);
  std::vector<double> tv_gap(total, 0.0);
  std::vector<Coupling> min_plans(total);

  // Per-trial objective derived from (seed, trial) only, so any execution
  // order produces the same probes.
  auto objective_for = [&](std::size_t t) -> std::vector<double> {
    if (t < extra_objectives.size()) return extra_objectives[t];
    const std::uint64_t trial = t - extra_objectives.size() + 1;
    std::uint64_t mixed = seed ^ (trial * 0x9E3779B97F4A7C15ull);
    mixed ^= mixed >> 30;
    mixed *= 0xBF58476D1CE4E5B9ull;
    mixed ^= mixed >> 27;
    std::mt19937_64 rng(mixed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> c(nvars);
    for (double &v : c) v = unit(rng);
    return c;
  };

  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(total); ++t) {
    try {
      LinearProgram probe = lp;
      probe.objective = objective_for(static_cast<std::size_t>(t));
      const LPSolution lo = solve(probe, options);
      for (double &v : probe.objective) v = -v;
      const LPSolution hi = solve(probe, options);
      if (lo.status != LPStatus::Optimal || hi.status != LPStatus::Optimal)
        raise_solver_failure(lo.status == LPStatus::Optimal ? hi : lo, "uniqueness probe");
      const Coupling plan_lo = plan_from_primal(mu, nu, lo.primal);
      const Coupling plan_hi = plan_from_primal(mu, nu, hi.primal);
      value_gap[t] = std::abs(-hi.value - lo.value);
      tv_gap[t] = tv_distance(plan_lo, plan_hi);
      min_plans[t] = plan_lo;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  UniquenessReport report;
  report.witness = min_plans.front();
  for (std::size_t t = 0; t < total; ++t) {
    report.max_value_gap = std::max(report.max_value_gap, value_gap[t]);
    report.max_tv_gap = std::max(report.max_tv_gap, tv_gap[t]);
    if (t > 0)
      report.max_tv_gap =
          std::max(report.max_tv_gap, tv_distance(min_plans[t], report.witness));
  }
  report.unique = report.max_value_gap <= 1e-7 && report.max_tv_gap <= 1e-7;
  return report;
}

Coupling project_coupling(const Coupling &plan, double theta) {
  if (plan.dim() != 2)
    throw std::invalid_argument("project_coupling: plan must live on R^2");
  const AffineMap proj = line_projection(theta);  // rejects theta outside (0, pi/2]
  Coupling mapped;
  mapped.source.reserve(plan.source.size());
  mapped.target.reserve(plan.target.size());
  for (const Point &p : plan.source) mapped.source.push_back(proj.apply(p));
  for (const Point &p : plan.target) mapped.target.push_back(proj.apply(p));
  mapped.mass = plan.mass;
  return consolidate_coupling(mapped);
}

bool potential_function_check(const DiscreteMeasure &mu, const DiscreteMeasure &nu) {
  if (mu.dim() != 1 || nu.dim() != 1)
    throw std::invalid_argument("potential check: defined for dimension 1 only");
  if (std::abs(mu.mean()[0] - nu.mean()[0]) > 1e-9) return false;
  auto potential = [](const DiscreteMeasure &m, double t) {
    double acc = 0.0;
    for (const Atom &a : m.atoms()) acc += a.w * std::abs(t - a.p[0]);
    return acc;
  };
  std::vector<double> locations;
  for (const Atom &a : mu.atoms()) locations.push_back(a.p[0]);
  for (const Atom &a : nu.atoms()) locations.push_back(a.p[0]);
  for (double t : locations)
    if (potential(mu, t) > potential(nu, t) + 1e-9) return false;
  return true;
}

}  // namespace motlab
