#include "motlab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace motlab {

double Coupling::total_mass() const {
  double sum = 0.0;
  for (const auto &row : mass)
    for (double m : row) sum += m;
  return sum;
}

void Coupling::validate() const {
  if (source.empty() || target.empty()) throw std::invalid_argument("coupling: empty atom list");
  const std::size_t d = source.front().dim();
  for (const Point &p : source)
    if (p.dim() != d) throw std::invalid_argument("coupling: source dimension mismatch");
  for (const Point &p : target)
    if (p.dim() != d) throw std::invalid_argument("coupling: target dimension mismatch");
  if (mass.size() != source.size())
    throw std::invalid_argument("coupling: mass row count does not match source atoms");
  for (const auto &row : mass) {
    if (row.size() != target.size())
      throw std::invalid_argument("coupling: mass column count does not match target atoms");
    for (double m : row)
      if (!(m >= -1e-12) || !std::isfinite(m))
        throw std::invalid_argument("coupling: negative or non-finite mass entry");
  }
  if (std::abs(total_mass() - 1.0) > 1e-9)
    throw std::invalid_argument("coupling: total mass is not 1");
}

double coupling_cost(const Coupling &plan, const CostSpec &cost) {
  double acc = 0.0;
  for (std::size_t i = 0; i < plan.source.size(); ++i)
    for (std::size_t j = 0; j < plan.target.size(); ++j) {
      const double m = plan.mass[i][j];
      if (m != 0.0) acc += m * cost(plan.source[i], plan.target[j]);
    }
  return acc;
}

std::pair<DiscreteMeasure, DiscreteMeasure> coupling_marginals(const Coupling &plan) {
  std::vector<Atom> rows, cols;
  rows.reserve(plan.source.size());
  cols.reserve(plan.target.size());
  for (std::size_t i = 0; i < plan.source.size(); ++i) {
    double w = 0.0;
    for (double m : plan.mass[i]) w += m;
    rows.push_back({plan.source[i], w});
  }
  for (std::size_t j = 0; j < plan.target.size(); ++j) {
    double w = 0.0;
    for (std::size_t i = 0; i < plan.source.size(); ++i) w += plan.mass[i][j];
    cols.push_back({plan.target[j], w});
  }
  const std::size_t d = plan.dim();
  return {consolidate(unchecked_measure(std::move(rows), d)),
          consolidate(unchecked_measure(std::move(cols), d))};
}

bool is_martingale_coupling(const Coupling &plan, double tol) {
  const std::size_t d = plan.dim();
  for (std::size_t i = 0; i < plan.source.size(); ++i) {
    double row_mass = 0.0;
    std::vector<double> bary(d, 0.0);
    for (std::size_t j = 0; j < plan.target.size(); ++j) {
      const double m = plan.mass[i][j];
      row_mass += m;
      for (std::size_t k = 0; k < d; ++k) bary[k] += m * plan.target[j][k];
    }
    if (row_mass <= tol) continue;
    for (std::size_t k = 0; k < d; ++k)
      if (std::abs(bary[k] - row_mass * plan.source[i][k]) > tol * row_mass) return false;
  }
  return true;
}

namespace {
// Deduplicates points within tol; returns the sorted representatives and the
// index each input point maps to.
std::vector<Point> dedupe(const std::vector<Point> &pts, double tol,
                          std::vector<std::size_t> &index_of) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(pts[a], pts[b]);
  });
  std::vector<Point> reps;
  index_of.assign(pts.size(), 0);
  for (std::size_t oi : order) {
    bool found = false;
    for (std::size_t r = reps.size(); r-- > 0;) {
      if (close(reps[r], pts[oi], tol)) {
        index_of[oi] = r;
        found = true;
        break;
      }
      if (pts[oi][0] - reps[r][0] > tol) break;
    }
    if (!found) {
      index_of[oi] = reps.size();
      reps.push_back(pts[oi]);
    }
  }
  return reps;
}
}  // namespace

Coupling consolidate_coupling(const Coupling &plan, double tol) {
  std::vector<std::size_t> smap, tmap;
  Coupling out;
  out.source = dedupe(plan.source, tol, smap);
  out.target = dedupe(plan.target, tol, tmap);
  out.mass.assign(out.source.size(), std::vector<double>(out.target.size(), 0.0));
  for (std::size_t i = 0; i < plan.source.size(); ++i)
    for (std::size_t j = 0; j < plan.target.size(); ++j)
      out.mass[smap[i]][tmap[j]] += plan.mass[i][j];
  return out;
}

double tv_distance(const Coupling &a, const Coupling &b, double atol) {
  // Net signed mass on the merged pair support.
  struct Entry {
    Point x, y;
    double net;
  };
  std::vector<Entry> entries;
  auto accumulate = [&](const Coupling &plan, double sign) {
    for (std::size_t i = 0; i < plan.source.size(); ++i)
      for (std::size_t j = 0; j < plan.target.size(); ++j) {
        const double m = plan.mass[i][j];
        if (m == 0.0) continue;
        bool found = false;
        for (Entry &e : entries) {
          if (close(e.x, plan.source[i], atol) && close(e.y, plan.target[j], atol)) {
            e.net += sign * m;
            found = true;
            break;
          }
        }
        if (!found) entries.push_back({plan.source[i], plan.target[j], sign * m});
      }
  };
  accumulate(a, 1.0);
  accumulate(b, -1.0);
  double l1 = 0.0;
  for (const Entry &e : entries) l1 += std::abs(e.net);
  return 0.5 * l1;
}

Coupling identity_coupling(const DiscreteMeasure &mu) {
  Coupling plan;
  plan.source = mu.points();
  plan.target = mu.points();
  plan.mass.assign(mu.size(), std::vector<double>(mu.size(), 0.0));
  for (std::size_t i = 0; i < mu.size(); ++i) plan.mass[i][i] = mu.weight(i);
  return plan;
}

Coupling product_coupling(const DiscreteMeasure &mu, const DiscreteMeasure &nu) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("product coupling: dimension mismatch");
  Coupling plan;
  plan.source = mu.points();
  plan.target = nu.points();
  plan.mass.assign(mu.size(), std::vector<double>(nu.size(), 0.0));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) plan.mass[i][j] = mu.weight(i) * nu.weight(j);
  return plan;
}

namespace {
using Json = nlohmann::ordered_json;

Json points_to_json(const std::vector<Point> &pts) {
  Json arr = Json::array();
  for (const Point &p : pts) arr.push_back(p.coords);
  return arr;
}

std::vector<Point> points_from_json(const Json &arr) {
  std::vector<Point> pts;
  for (const Json &entry : arr) pts.emplace_back(entry.get<std::vector<double>>());
  return pts;
}
}  // namespace

std::string coupling_to_json_string(const Coupling &plan) {
  Json j;
  j["source"] = points_to_json(plan.source);
  j["target"] = points_to_json(plan.target);
  j["mass"] = plan.mass;
  return j.dump(2) + "\n";
}

Coupling coupling_from_json_string(const std::string &text) {
  const Json j = Json::parse(text);
  Coupling plan;
  plan.source = points_from_json(j.at("source"));
  plan.target = points_from_json(j.at("target"));
  plan.mass = j.at("mass").get<std::vector<std::vector<double>>>();
  plan.validate();
  return plan;
}

void save_coupling(const Coupling &plan, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << coupling_to_json_string(plan);
}

Coupling load_coupling(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coupling file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return coupling_from_json_string(buf.str());
}

}  // namespace motlab
