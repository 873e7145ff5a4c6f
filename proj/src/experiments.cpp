#include "motlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "motlab/constructions.hpp"
#include "motlab/transport.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace motlab {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// One checked claim: value compared against target under cmp ("le", "ge",
// "eq") with slack tol. Every numeric claim in a report carries its bound.
Json check_row(const std::string &check, int n, double value, double target,
               const std::string &cmp, double tol) {
  bool pass = false;
  if (cmp == "le")
    pass = value <= target + tol;
  else if (cmp == "ge")
    pass = value >= target - tol;
  else if (cmp == "eq")
    pass = std::abs(value - target) <= tol;
  else
    throw std::logic_error("unknown comparator " + cmp);
  Json row;
  row["check"] = check;
  row["n"] = n;
  row["value"] = value;
  row["target"] = target;
  row["cmp"] = cmp;
  row["tol"] = tol;
  row["pass"] = pass;
  return row;
}

// The coupling the split couplings converge to: each source atom of
// row_measure(3) sends mass 1/6 one unit left and one unit right.
Coupling limit_split_coupling() {
  const DiscreteMeasure mu = row_measure(3);
  const DiscreteMeasure nu = axis_split_measure(3);
  Coupling plan;
  plan.source = mu.points();
  plan.target = nu.points();
  plan.mass.assign(mu.size(), std::vector<double>(nu.size(), 0.0));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double dx = nu.point(j)[0] - mu.point(i)[0];
      if (std::abs(std::abs(dx) - 1.0) < 1e-12) plan.mass[i][j] = 1.0 / 6.0;
    }
  }
  return plan;
}

// Snaps every target atom to the nearest point of the limit support when it
// lies within `radius` of it.
Coupling snap_targets(const Coupling &plan, const std::vector<Point> &support,
                      double radius) {
  Coupling snapped = plan;
  for (Point &p : snapped.target) {
    double best = radius + 1e-12;
    const Point *hit = nullptr;
    for (const Point &s : support) {
      const double d = distance(p, s, Norm::Euclidean);
      if (d < best) {
        best = d;
        hit = &s;
      }
    }
    if (hit) p = *hit;
  }
  return consolidate_coupling(snapped);
}

// True iff the plan only moves mass along the lines collapsed by the
// projection at `theta` (the structural statement behind uniqueness).
bool moves_along_lines(const Coupling &plan, double theta) {
  const AffineMap proj = line_projection(theta);
  for (std::size_t i = 0; i < plan.source.size(); ++i) {
    const double lx = proj.apply(plan.source[i])[0];
    for (std::size_t j = 0; j < plan.target.size(); ++j) {
      if (plan.mass[i][j] <= 1e-9) continue;
      if (std::abs(proj.apply(plan.target[j])[0] - lx) > 1e-9) return false;
    }
  }
  return true;
}

struct StabilityRow {
  double w1 = 0.0;
  double mot = 0.0;
  bool unique = false;
  bool on_lines = false;
  double tv_snapped = 0.0;
  double tv_shared = 0.0;
};

// Minimum and maximum, over all martingale couplings, of the mass placed on
// pairs closer than `threshold`.
std::pair<double, double> near_mass_extremes(const DiscreteMeasure &mu,
                                             const DiscreteMeasure &nu, double threshold) {
  LinearProgram lp = mot_program(mu, nu, CostSpec{});
  const std::size_t t = nu.size();
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < t; ++j)
      lp.objective[i * t + j] =
          distance(mu.point(i), nu.point(j), Norm::Euclidean) < threshold ? 1.0 : 0.0;
  const LPSolution lo = solve(lp);
  for (double &c : lp.objective) c = -c;
  const LPSolution hi = solve(lp);
  if (lo.status != LPStatus::Optimal || hi.status != LPStatus::Optimal)
    throw SolverFailure("near-mass extremes: LP did not reach optimality");
  return {lo.value, -hi.value};
}

}  // namespace

std::vector<double> default_theta_grid(int count) {
  if (count < 2) throw std::invalid_argument("theta grid needs at least 2 values");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = (kPi / 2.0) * i / (count - 1);
  return grid;
}

ExperimentReport run_stability(int nmax, std::uint64_t seed) {
  if (nmax < 2) throw std::invalid_argument("stability: nmax must be >= 2");
  const auto start = Clock::now();
  ExperimentReport report;
  report.name = "stability";
  report.params["nmax"] = nmax;
  report.params["seed"] = seed;

  const DiscreteMeasure mu3 = row_measure(3);
  const DiscreteMeasure limit = axis_split_measure(3);
  const Coupling limit_plan = limit_split_coupling();
  const Coupling shared = shared_mass_coupling();

  std::vector<StabilityRow> data(static_cast<std::size_t>(nmax - 1));
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int n = 2; n <= nmax; ++n) {
    try {
      const double theta = split_angle(n);
      const DiscreteMeasure nu = split_measure(3, n);
      StabilityRow row;
      row.w1 = ot_value(nu, limit, CostSpec{}).value;
      row.mot = mot_value(mu3, nu, CostSpec{}).value;
      const UniquenessReport probe = uniqueness_probe(mu3, nu, 20, seed);
      row.unique = probe.unique;
      row.on_lines = moves_along_lines(probe.witness, theta);
      const double radius = 2.0 * std::sin(kPi / (4.0 * n));
      row.tv_snapped =
          tv_distance(snap_targets(probe.witness, limit.points(), radius), limit_plan);
      row.tv_shared = tv_distance(shared, probe.witness);
      data[static_cast<std::size_t>(n - 2)] = row;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (int n = 2; n <= nmax; ++n) {
    const StabilityRow &row = data[static_cast<std::size_t>(n - 2)];
    report.rows.push_back(
        check_row("w1_split_to_limit", n, row.w1, kPi / (2.0 * n), "le", 1e-9));
    report.rows.push_back(check_row("mot_value", n, row.mot, 1.0, "eq", 1e-7));
    report.rows.push_back(
        check_row("unique_coupling", n, row.unique ? 1.0 : 0.0, 1.0, "eq", 0.0));
    report.rows.push_back(
        check_row("witness_on_split_lines", n, row.on_lines ? 1.0 : 0.0, 1.0, "eq", 0.0));
    report.rows.push_back(
        check_row("tv_snapped_to_limit_coupling", n, row.tv_snapped, 0.0, "eq", 1e-7));
    report.rows.push_back(
        check_row("tv_from_shared_mass_coupling", n, row.tv_shared, 0.25, "ge", 1e-6));
  }

  bool decreasing = true;
  for (std::size_t i = 1; i < data.size(); ++i)
    if (!(data[i].w1 < data[i - 1].w1)) decreasing = false;
  report.rows.push_back(
      check_row("w1_strictly_decreasing", 0, decreasing ? 1.0 : 0.0, 1.0, "eq", 0.0));

  const double limit_mot = mot_value(mu3, limit, CostSpec{}).value;
  report.rows.push_back(check_row("limit_mot_value", 0, limit_mot, 0.5, "eq", 1e-7));
  report.rows.push_back(check_row("persistent_value_gap", 0, data.back().mot - limit_mot,
                                  0.5, "eq", 1e-6));

  const UniquenessReport limit_probe = uniqueness_probe(mu3, limit, 20, seed);
  report.rows.push_back(check_row("limit_coupling_not_unique", 0,
                                  limit_probe.unique ? 1.0 : 0.0, 0.0, "eq", 0.0));

  report.rows.push_back(check_row("shared_mass_coupling_cost", 0,
                                  coupling_cost(shared, CostSpec{}), 0.5, "eq", 1e-12));
  report.rows.push_back(check_row("shared_mass_coupling_martingale", 0,
                                  is_martingale_coupling(shared, 1e-12) ? 1.0 : 0.0, 1.0,
                                  "eq", 0.0));
  const auto [shared_src, shared_tgt] = coupling_marginals(shared);
  const double marg_err = std::max(measure_linf_discrepancy(shared_src, mu3),
                                   measure_linf_discrepancy(shared_tgt, limit));
  report.rows.push_back(
      check_row("shared_mass_coupling_marginals", 0, marg_err, 0.0, "eq", 1e-12));

  int first_n = nmax + 1;
  for (int n = nmax; n >= 2; --n) {
    if (data[static_cast<std::size_t>(n - 2)].tv_shared >= 0.25 - 1e-6)
      first_n = n;
    else
      break;
  }
  report.rows.push_back(check_row("tv_floor_holds_from_n", 0, first_n, 2.0, "le", 0.0));

  report.finalize();
  report.runtime_ms = elapsed_ms(start);
  return report;
}

ExperimentReport run_ratio(int nmax, CostSpec cost) {
  if (nmax < 2) throw std::invalid_argument("ratio: nmax must be >= 2");
  const auto start = Clock::now();
  ExperimentReport report;
  report.name = "ratio";
  report.params["nmax"] = nmax;
  report.params["norm"] = norm_name(cost.norm);

  const bool euclidean = cost.norm == Norm::Euclidean;
  std::vector<double> mot_vals(static_cast<std::size_t>(nmax - 1));
  std::vector<double> ot_vals(static_cast<std::size_t>(nmax - 1));
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int n = 2; n <= nmax; ++n) {
    try {
      const DiscreteMeasure mu = row_measure(n);
      const DiscreteMeasure nu = split_measure(n, n);
      mot_vals[static_cast<std::size_t>(n - 2)] = mot_value(mu, nu, cost).value;
      ot_vals[static_cast<std::size_t>(n - 2)] = ot_value(mu, nu, cost).value;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double prev_ratio = 0.0;
  for (int n = 2; n <= nmax; ++n) {
    const double m_val = mot_vals[static_cast<std::size_t>(n - 2)];
    const double w_val = ot_vals[static_cast<std::size_t>(n - 2)];
    const double ratio = m_val / w_val;
    // Euclidean: the ratio must clear n / (1 + pi/2); every norm: strict
    // growth against the previous row.
    const double bound = euclidean ? n / (1.0 + kPi / 2.0) : prev_ratio;
    const bool pass =
        (euclidean ? ratio >= bound - 1e-6 : true) && ratio > prev_ratio;
    Json row;
    row["n"] = n;
    row["M"] = m_val;
    row["W"] = w_val;
    row["ratio"] = ratio;
    row["bound"] = bound;
    row["pass"] = pass;
    report.rows.push_back(std::move(row));
    prev_ratio = ratio;
  }

  report.finalize();
  report.runtime_ms = elapsed_ms(start);
  return report;
}

ExperimentReport run_lemma2(int m, const std::vector<double> &thetas) {
  if (m < 1) throw std::invalid_argument("lemma2: m must be >= 1");
  for (double theta : thetas)
    if (!(theta >= 0.0 && theta <= kPi / 2.0 + 1e-12))
      throw std::invalid_argument("lemma2: thetas must lie in [0, pi/2]");
  const auto start = Clock::now();
  ExperimentReport report;
  report.name = "lemma2";
  report.params["m"] = m;
  report.params["thetas"] = thetas.size();

  const DiscreteMeasure base = axis_split_measure(m);
  std::vector<double> w1(thetas.size());
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(thetas.size()); ++i) {
    try {
      const DiscreteMeasure stepped =
          apply_kernel(row_measure(m), random_walk_kernel(thetas[static_cast<std::size_t>(i)]));
      w1[static_cast<std::size_t>(i)] = ot_value(base, stepped, CostSpec{}).value;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double chord = 2.0 * std::sin(thetas[i] / 2.0);
    Json row;
    row["m"] = m;
    row["theta"] = thetas[i];
    row["w1"] = w1[i];
    row["chord_bound"] = chord;
    row["angle_bound"] = thetas[i];
    row["pass"] = w1[i] <= chord + 1e-8 && w1[i] <= thetas[i] + 1e-8;
    report.rows.push_back(std::move(row));
  }

  report.finalize();
  report.runtime_ms = elapsed_ms(start);
  return report;
}

ExperimentReport run_variants(int m, int n, int grid, double eps) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.name = "variants";
  report.params["m"] = m;
  report.params["n"] = n;
  report.params["grid"] = grid;
  report.params["eps"] = eps;

  const auto [par_mu, par_nu] = parallelogram_pair(m, n, grid);
  const auto [near_min, near_max] = near_mass_extremes(par_mu, par_nu, 1.0 / 3.0);
  report.rows.push_back(
      check_row("parallelogram_near_mass_min", n, near_min, 0.0, "eq", 1e-9));
  report.rows.push_back(
      check_row("parallelogram_near_mass_max", n, near_max, 0.0, "eq", 1e-8));
  report.rows.push_back(check_row("parallelogram_convex_order", n,
                                  check_convex_order(par_mu, par_nu) ? 1.0 : 0.0, 1.0,
                                  "eq", 0.0));

  const DiscreteMeasure gamma = gaussian_lattice();
  const auto [mix_mu, mix_nu] = mixture_pair(m, n, eps, gamma);
  const DiscreteMeasure mu = row_measure(m);
  const DiscreteMeasure nu = split_measure(m, n);
  const double w_base = ot_value(mu, nu, CostSpec{}).value;
  const double m_base = mot_value(mu, nu, CostSpec{}).value;
  const double w_mix = ot_value(mix_mu, mix_nu, CostSpec{}).value;
  const double m_mix = mot_value(mix_mu, mix_nu, CostSpec{}).value;
  report.rows.push_back(
      check_row("mixture_w1_scaling", n, w_mix, (1.0 - eps) * w_base, "eq", 1e-6));
  report.rows.push_back(
      check_row("mixture_mot_scaling", n, m_mix, (1.0 - eps) * m_base, "eq", 1e-6));

  report.finalize();
  report.runtime_ms = elapsed_ms(start);
  return report;
}

}  // namespace motlab
