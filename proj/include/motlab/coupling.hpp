#pragma once

#include <string>
#include <utility>
#include <vector>

#include "motlab/geometry.hpp"
#include "motlab/measure.hpp"

namespace motlab {

// Weighted atoms on R^d x R^d with designated source/target atom lists.
// mass[i][j] is the mass moved from source[i] to target[j].
struct Coupling {
  std::vector<Point> source;
  std::vector<Point> target;
  std::vector<std::vector<double>> mass;

  std::size_t dim() const { return source.empty() ? 0 : source.front().dim(); }
  double total_mass() const;
  void validate() const;  // shape and nonnegativity
};

// Cost of (x,y) pairs under norm(y - x).
struct CostSpec {
  Norm norm = Norm::Euclidean;
  double operator()(const Point &x, const Point &y) const { return distance(x, y, norm); }
};

double coupling_cost(const Coupling &plan, const CostSpec &cost);

// Row-sum measure on the source atoms and column-sum measure on the target
// atoms, both consolidated.
std::pair<DiscreteMeasure, DiscreteMeasure> coupling_marginals(const Coupling &plan);

// True iff every source atom with row mass r > tol has barycenter within
// tol * r of itself (in the weighted linf sense).
bool is_martingale_coupling(const Coupling &plan, double tol = 1e-9);

// Merge coincident source atoms and coincident target atoms (within tol),
// accumulating mass; atom lists come out lexicographically sorted.
Coupling consolidate_coupling(const Coupling &plan, double tol = 1e-9);

// Total variation distance: half the l1 distance between the two mass
// vectors on the merged pair support (pairs matched within atol per side).
double tv_distance(const Coupling &a, const Coupling &b, double atol = 1e-9);

// Plan x -> x (requires no transport); mass stays on the diagonal.
Coupling identity_coupling(const DiscreteMeasure &mu);

// Independent product plan mu (x) nu.
Coupling product_coupling(const DiscreteMeasure &mu, const DiscreteMeasure &nu);

// JSON form: {"source": [[...],...], "target": [[...],...], "mass": [[...],...]}
std::string coupling_to_json_string(const Coupling &plan);
Coupling coupling_from_json_string(const std::string &text);
void save_coupling(const Coupling &plan, const std::string &path);
Coupling load_coupling(const std::string &path);

}  // namespace motlab
