#include "motlab/constructions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace motlab {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;

Point walk_step(double theta) { return Point{std::cos(theta), std::sin(theta)}; }
}  // namespace

double split_angle(int n) {
  if (n < 1) throw std::invalid_argument("split_angle: n must be >= 1");
  return kPi / (2.0 * n);
}

AtomicKernel random_walk_kernel(double theta) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0 + 1e-15))
    throw std::invalid_argument("random_walk_kernel: theta must lie in [0, pi/2]");
  const Point step = walk_step(theta);
  return AtomicKernel{[step](const Point &p) {
    if (p.dim() != 2)
      throw std::invalid_argument("random_walk_kernel: expects points of R^2");
    return DiscreteMeasure({p + step, p - step}, {0.5, 0.5});
  }};
}

DiscreteMeasure row_measure(int m) {
  if (m < 1) throw std::invalid_argument("row_measure: m must be >= 1");
  std::vector<Point> pts;
  std::vector<double> wts;
  for (int i = 1; i <= m; ++i) {
    pts.push_back(Point{static_cast<double>(i), 0.0});
    wts.push_back(1.0 / m);
  }
  return DiscreteMeasure(std::move(pts), std::move(wts));
}

DiscreteMeasure split_measure(int m, int n) {
  return apply_kernel(row_measure(m), random_walk_kernel(split_angle(n)));
}

DiscreteMeasure axis_split_measure(int m) {
  return apply_kernel(row_measure(m), random_walk_kernel(0.0));
}

AffineMap line_projection(double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("line_projection: undefined at theta = 0");
  if (theta > kPi / 2.0 + 1e-15)
    throw std::invalid_argument("line_projection: theta must lie in (0, pi/2]");
  AffineMap map;
  map.linear = {{1.0, -1.0 / std::tan(theta)}};
  map.shift = {0.0};
  return map;
}

Coupling split_coupling(int m, int n) {
  const double theta = split_angle(n);
  const Point step = walk_step(theta);
  const DiscreteMeasure mu = row_measure(m);
  const DiscreteMeasure nu = split_measure(m, n);

  Coupling plan;
  plan.source = mu.points();
  plan.target = nu.points();
  plan.mass.assign(mu.size(), std::vector<double>(nu.size(), 0.0));
  auto target_index = [&](const Point &p) {
    for (std::size_t j = 0; j < plan.target.size(); ++j)
      if (close(plan.target[j], p, 1e-12)) return j;
    throw std::logic_error("split_coupling: target atom not found");
  };
  const double half = 1.0 / (2.0 * m);
  for (std::size_t i = 0; i < plan.source.size(); ++i) {
    plan.mass[i][target_index(plan.source[i] + step)] = half;
    plan.mass[i][target_index(plan.source[i] - step)] = half;
  }
  return plan;
}

Coupling shared_mass_coupling() {
  Coupling plan;
  plan.source = {Point{1.0, 0.0}, Point{2.0, 0.0}, Point{3.0, 0.0}};
  plan.target = {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{2.0, 0.0}, Point{3.0, 0.0},
                 Point{4.0, 0.0}};
  plan.mass.assign(3, std::vector<double>(5, 0.0));
  plan.mass[0][1] = 1.0 / 6.0;   // (1,0) stays
  plan.mass[0][0] = 3.0 / 24.0;  // (1,0) -> (0,0)
  plan.mass[0][4] = 1.0 / 24.0;  // (1,0) -> (4,0)
  plan.mass[1][2] = 2.0 / 6.0;   // (2,0) stays
  plan.mass[2][3] = 1.0 / 6.0;   // (3,0) stays
  plan.mass[2][0] = 1.0 / 24.0;  // (3,0) -> (0,0)
  plan.mass[2][4] = 3.0 / 24.0;  // (3,0) -> (4,0)
  return plan;
}

std::pair<DiscreteMeasure, DiscreteMeasure> parallelogram_pair(int m, int n, int grid) {
  if (m < 1 || n < 1) throw std::invalid_argument("parallelogram_pair: m, n must be >= 1");
  if (grid < 1) throw std::invalid_argument("parallelogram_pair: grid must be >= 1");
  const double theta = split_angle(n);
  const Point v = (1.0 / 3.0) * walk_step(theta);
  const Point base{static_cast<double>(m), 0.0};

  // Midpoint lattice in parallelogram coordinates: keeps every sample inside
  // the closed parallelogram and puts grid=1 at the center.
  std::vector<Point> lattice;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      const double s = (a + 0.5) / grid;
      const double t = (b + 0.5) / grid;
      lattice.push_back(s * base + (2.0 * t - 1.0) * v);
    }
  const double w = 1.0 / static_cast<double>(lattice.size());

  std::vector<Point> src_pts, tgt_pts;
  std::vector<double> src_wts, tgt_wts;
  const Point offset = 3.0 * v;
  for (const Point &p : lattice) {
    src_pts.push_back(p);
    src_wts.push_back(w);
    tgt_pts.push_back(p + offset);
    tgt_wts.push_back(0.5 * w);
    tgt_pts.push_back(p - offset);
    tgt_wts.push_back(0.5 * w);
  }
  return {consolidate(DiscreteMeasure(std::move(src_pts), std::move(src_wts))),
          consolidate(DiscreteMeasure(std::move(tgt_pts), std::move(tgt_wts)))};
}

std::pair<DiscreteMeasure, DiscreteMeasure> mixture_pair(int m, int n, double eps,
                                                         const DiscreteMeasure &gamma) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("mixture_pair: eps must lie strictly inside (0,1)");
  if (gamma.dim() != 2) throw std::invalid_argument("mixture_pair: gamma must live on R^2");
  return {mixture(eps, row_measure(m), gamma), mixture(eps, split_measure(m, n), gamma)};
}

DiscreteMeasure gaussian_lattice(int per_axis, double half_width) {
  if (per_axis < 1) throw std::invalid_argument("gaussian_lattice: per_axis must be >= 1");
  if (!(half_width > 0.0))
    throw std::invalid_argument("gaussian_lattice: half_width must be positive");
  std::vector<Point> pts;
  std::vector<double> wts;
  double total = 0.0;
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j) {
      const double x =
          per_axis == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (per_axis - 1);
      const double y =
          per_axis == 1 ? 0.0 : -half_width + 2.0 * half_width * j / (per_axis - 1);
      const double density = std::exp(-0.5 * (x * x + y * y));
      pts.push_back(Point{x, y});
      wts.push_back(density);
      total += density;
    }
  for (double &w : wts) w /= total;
  return consolidate(DiscreteMeasure(std::move(pts), std::move(wts)));
}

}  // namespace motlab
