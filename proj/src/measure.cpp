#include "motlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace motlab {

DiscreteMeasure unchecked_measure(std::vector<Atom> atoms, std::size_t dim) {
  DiscreteMeasure mu;
  mu.atoms_ = std::move(atoms);
  mu.dim_ = dim;
  return mu;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Point> points, std::vector<double> weights) {
  if (points.size() != weights.size())
    throw std::invalid_argument("measure: points and weights differ in length");
  if (points.empty()) throw std::invalid_argument("measure: no atoms");
  dim_ = points.front().dim();
  if (dim_ == 0) throw std::invalid_argument("measure: zero-dimensional points");
  double sum = 0.0;
  atoms_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != dim_)
      throw std::invalid_argument("measure: atom dimension mismatch at index " +
                                  std::to_string(i));
    if (!points[i].finite())
      throw std::invalid_argument("measure: non-finite coordinate at index " +
                                  std::to_string(i));
    if (!(weights[i] >= 0.0))
      throw std::invalid_argument("measure: negative weight at index " + std::to_string(i));
    sum += weights[i];
    atoms_.push_back({std::move(points[i]), weights[i]});
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("measure: weights sum to " + std::to_string(sum) +
                                ", expected 1");
}

DiscreteMeasure DiscreteMeasure::dirac(Point p) {
  std::vector<Point> pts;
  pts.push_back(std::move(p));
  return DiscreteMeasure(std::move(pts), {1.0});
}

std::vector<Point> DiscreteMeasure::points() const {
  std::vector<Point> out;
  out.reserve(atoms_.size());
  for (const Atom &a : atoms_) out.push_back(a.p);
  return out;
}

std::vector<double> DiscreteMeasure::weights() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const Atom &a : atoms_) out.push_back(a.w);
  return out;
}

double DiscreteMeasure::total_mass() const {
  double sum = 0.0;
  for (const Atom &a : atoms_) sum += a.w;
  return sum;
}

Point DiscreteMeasure::mean() const {
  Point acc{std::vector<double>(dim_, 0.0)};
  for (const Atom &a : atoms_)
    for (std::size_t k = 0; k < dim_; ++k) acc[k] += a.w * a.p[k];
  return acc;
}

AtomicKernel identity_kernel() {
  return AtomicKernel{[](const Point &p) { return DiscreteMeasure::dirac(p); }};
}

DiscreteMeasure apply_kernel(const DiscreteMeasure &mu, const AtomicKernel &kernel) {
  std::vector<Atom> out;
  for (const Atom &a : mu.atoms()) {
    DiscreteMeasure step = kernel(a.p);
    if (step.dim() != mu.dim())
      throw std::invalid_argument("kernel output dimension " + std::to_string(step.dim()) +
                                  " does not match measure dimension " +
                                  std::to_string(mu.dim()));
    for (const Atom &s : step.atoms()) out.push_back({s.p, a.w * s.w});
  }
  return consolidate(unchecked_measure(std::move(out), mu.dim()));
}

DiscreteMeasure mixture(double eps, const DiscreteMeasure &a, const DiscreteMeasure &b) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("mixture weight must lie in [0,1]");
  if (a.dim() != b.dim()) throw std::invalid_argument("mixture: dimension mismatch");
  std::vector<Atom> out;
  out.reserve(a.size() + b.size());
  for (const Atom &atom : a.atoms()) out.push_back({atom.p, (1.0 - eps) * atom.w});
  for (const Atom &atom : b.atoms()) out.push_back({atom.p, eps * atom.w});
  return consolidate(unchecked_measure(std::move(out), a.dim()));
}

DiscreteMeasure pushforward_affine(const DiscreteMeasure &mu, const AffineMap &map) {
  if (map.in_dim() != mu.dim())
    throw std::invalid_argument("pushforward: map expects dimension " +
                                std::to_string(map.in_dim()) + ", measure has " +
                                std::to_string(mu.dim()));
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const Atom &a : mu.atoms()) out.push_back({map.apply(a.p), a.w});
  return consolidate(unchecked_measure(std::move(out), map.out_dim()));
}

DiscreteMeasure consolidate(const DiscreteMeasure &mu, double tol) {
  if (tol < 0.0) throw std::invalid_argument("consolidate: negative tolerance");
  // Greedy grouping against the lexicographically smallest representative
  // seen so far; with tol well below the atom spacing this is exact.
  std::vector<Atom> sorted = mu.atoms();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Atom &a, const Atom &b) { return lex_less(a.p, b.p); });
  std::vector<Atom> merged;
  for (const Atom &a : sorted) {
    bool absorbed = false;
    for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
      if (close(it->p, a.p, tol)) {
        it->w += a.w;
        absorbed = true;
        break;
      }
      // sorted input: once the x-gap alone exceeds tol nothing earlier matches
      if (a.p[0] - it->p[0] > tol) break;
    }
    if (!absorbed) merged.push_back(a);
  }
  return unchecked_measure(std::move(merged), mu.dim());
}

double measure_linf_discrepancy(const DiscreteMeasure &a, const DiscreteMeasure &b,
                                double atol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("discrepancy: dimension mismatch");
  const DiscreteMeasure bc = consolidate(b, atol);
  std::vector<Atom> net = consolidate(a, atol).atoms();
  for (const Atom &atom : bc.atoms()) {
    bool matched = false;
    for (Atom &n : net) {
      if (close(n.p, atom.p, atol)) {
        n.w -= atom.w;
        matched = true;
        break;
      }
    }
    if (!matched) net.push_back({atom.p, -atom.w});
  }
  double worst = 0.0;
  for (const Atom &n : net) worst = std::max(worst, std::abs(n.w));
  return worst;
}

namespace {
using Json = nlohmann::ordered_json;

Json measure_to_json(const DiscreteMeasure &mu) {
  Json j;
  j["dim"] = mu.dim();
  Json atoms = Json::array();
  for (const Atom &a : mu.atoms()) {
    Json entry;
    entry["p"] = a.p.coords;
    entry["w"] = a.w;
    atoms.push_back(std::move(entry));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

DiscreteMeasure measure_from_json(const Json &j) {
  if (!j.contains("dim") || !j.contains("atoms"))
    throw std::invalid_argument("measure JSON: missing 'dim' or 'atoms'");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<Point> points;
  std::vector<double> weights;
  for (const Json &entry : j.at("atoms")) {
    points.emplace_back(entry.at("p").get<std::vector<double>>());
    weights.push_back(entry.at("w").get<double>());
  }
  DiscreteMeasure mu(std::move(points), std::move(weights));
  if (mu.dim() != dim)
    throw std::invalid_argument("measure JSON: declared dim does not match atoms");
  return mu;
}
}  // namespace

std::string measure_to_json_string(const DiscreteMeasure &mu) {
  return measure_to_json(mu).dump(2) + "\n";
}

DiscreteMeasure measure_from_json_string(const std::string &text) {
  return measure_from_json(Json::parse(text));
}

void save_measure(const DiscreteMeasure &mu, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << measure_to_json_string(mu);
}

DiscreteMeasure load_measure(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return measure_from_json_string(buf.str());
}

}  // namespace motlab
