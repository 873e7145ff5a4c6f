#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "motlab/geometry.hpp"

namespace motlab {

struct Atom {
  Point p;
  double w = 0.0;
};

// Finitely supported probability measure on R^d. Immutable value type: all
// operations return new measures. Weights are >= 0 and sum to 1 within
// kWeightSumTol; atoms may repeat until consolidate() is called.
class DiscreteMeasure {
 public:
  static constexpr double kWeightSumTol = 1e-9;

  DiscreteMeasure(std::vector<Point> points, std::vector<double> weights);
  static DiscreteMeasure dirac(Point p);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const Atom &atom(std::size_t i) const { return atoms_[i]; }

  Point point(std::size_t i) const { return atoms_[i].p; }
  double weight(std::size_t i) const { return atoms_[i].w; }
  std::vector<Point> points() const;
  std::vector<double> weights() const;

  double total_mass() const;
  Point mean() const;

 private:
  DiscreteMeasure() = default;
  std::vector<Atom> atoms_;
  std::size_t dim_ = 0;

  friend DiscreteMeasure consolidate(const DiscreteMeasure &mu, double tol);
  friend DiscreteMeasure unchecked_measure(std::vector<Atom> atoms, std::size_t dim);
};

// Skips the probability validation; for internal construction of partial
// sums that are consolidated or reweighted later.
DiscreteMeasure unchecked_measure(std::vector<Atom> atoms, std::size_t dim);

// Map from a point to a finitely supported probability measure of the same
// dimension.
struct AtomicKernel {
  std::function<DiscreteMeasure(const Point &)> rule;
  DiscreteMeasure operator()(const Point &p) const { return rule(p); }
};

AtomicKernel identity_kernel();

// Mixture sum_i w_i K(x_i), consolidated.
DiscreteMeasure apply_kernel(const DiscreteMeasure &mu, const AtomicKernel &kernel);

// (1-eps) * a + eps * b, consolidated.
DiscreteMeasure mixture(double eps, const DiscreteMeasure &a, const DiscreteMeasure &b);

// Push-forward under an affine map; weights unchanged, result consolidated.
DiscreteMeasure pushforward_affine(const DiscreteMeasure &mu, const AffineMap &map);

// Merge atoms lying within Euclidean distance tol of each other; the merged
// group is represented by its lexicographically smallest point and the output
// atom list is sorted lexicographically.
DiscreteMeasure consolidate(const DiscreteMeasure &mu, double tol = 1e-9);

// Max absolute discrepancy between two measures viewed as signed atomic
// vectors on the merged support (atoms matched within atol).
double measure_linf_discrepancy(const DiscreteMeasure &a, const DiscreteMeasure &b,
                                double atol = 1e-9);

// JSON form: {"dim": d, "atoms": [{"p": [...], "w": w}, ...]}
std::string measure_to_json_string(const DiscreteMeasure &mu);
DiscreteMeasure measure_from_json_string(const std::string &text);
void save_measure(const DiscreteMeasure &mu, const std::string &path);
DiscreteMeasure load_measure(const std::string &path);

}  // namespace motlab
