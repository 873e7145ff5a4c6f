#include "motlab/geometry.hpp"

#include <algorithm>

namespace motlab {

namespace {
void require_same_dim(const Point &a, const Point &b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("point dimension mismatch: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
}
}  // namespace

Point operator+(const Point &a, const Point &b) {
  require_same_dim(a, b);
  Point r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

Point operator-(const Point &a, const Point &b) {
  require_same_dim(a, b);
  Point r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

Point operator*(double s, const Point &a) {
  Point r = a;
  for (double &c : r.coords) c *= s;
  return r;
}

bool operator==(const Point &a, const Point &b) { return a.coords == b.coords; }

bool lex_less(const Point &a, const Point &b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                      b.coords.end());
}

double norm_of(const Point &v, Norm norm) {
  double acc = 0.0;
  switch (norm) {
    case Norm::Euclidean:
      for (double c : v.coords) acc += c * c;
      return std::sqrt(acc);
    case Norm::L1:
      for (double c : v.coords) acc += std::abs(c);
      return acc;
    case Norm::Linf:
      for (double c : v.coords) acc = std::max(acc, std::abs(c));
      return acc;
  }
  throw std::logic_error("unreachable norm kind");
}

double distance(const Point &a, const Point &b, Norm norm) { return norm_of(b - a, norm); }

bool close(const Point &a, const Point &b, double tol) {
  return a.dim() == b.dim() && distance(a, b, Norm::Euclidean) <= tol;
}

Norm parse_norm(const std::string &name) {
  if (name == "euclidean") return Norm::Euclidean;
  if (name == "l1") return Norm::L1;
  if (name == "linf") return Norm::Linf;
  throw std::invalid_argument("unknown norm '" + name + "' (expected euclidean, l1, linf)");
}

std::string norm_name(Norm norm) {
  switch (norm) {
    case Norm::Euclidean: return "euclidean";
    case Norm::L1: return "l1";
    case Norm::Linf: return "linf";
  }
  throw std::logic_error("unreachable norm kind");
}

Point AffineMap::apply(const Point &p) const {
  if (p.dim() != in_dim())
    throw std::invalid_argument("affine map expects dimension " + std::to_string(in_dim()) +
                                ", got " + std::to_string(p.dim()));
  Point out{std::vector<double>(out_dim(), 0.0)};
  for (std::size_t r = 0; r < out_dim(); ++r) {
    double acc = shift[r];
    for (std::size_t c = 0; c < in_dim(); ++c) acc += linear[r][c] * p[c];
    out[r] = acc;
  }
  return out;
}

AffineMap AffineMap::identity(std::size_t d) {
  AffineMap map;
  map.linear.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) map.linear[i][i] = 1.0;
  map.shift.assign(d, 0.0);
  return map;
}

AffineMap AffineMap::embedding(std::size_t from, std::size_t to) {
  if (to < from) throw std::invalid_argument("embedding target dimension below source");
  AffineMap map;
  map.linear.assign(to, std::vector<double>(from, 0.0));
  for (std::size_t i = 0; i < from; ++i) map.linear[i][i] = 1.0;
  map.shift.assign(to, 0.0);
  return map;
}

}  // namespace motlab
