#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace motlab {

// A point of R^d. Thin wrapper so dimension checks and comparisons live in
// one place.
struct Point {
  std::vector<double> coords;

  Point() = default;
  Point(std::initializer_list<double> v) : coords(v) {}
  explicit Point(std::vector<double> v) : coords(std::move(v)) {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double &operator[](std::size_t i) { return coords[i]; }

  bool finite() const {
    for (double c : coords)
      if (!std::isfinite(c)) return false;
    return true;
  }
};

Point operator+(const Point &a, const Point &b);
Point operator-(const Point &a, const Point &b);
Point operator*(double s, const Point &a);
bool operator==(const Point &a, const Point &b);

// Strict lexicographic order; used as the deterministic tie-breaker when
// merging coincident atoms.
bool lex_less(const Point &a, const Point &b);

enum class Norm { Euclidean, L1, Linf };

double norm_of(const Point &v, Norm norm);
double distance(const Point &a, const Point &b, Norm norm);

// Euclidean distance within tol.
bool close(const Point &a, const Point &b, double tol);

Norm parse_norm(const std::string &name);        // "euclidean" | "l1" | "linf"
std::string norm_name(Norm norm);

// Affine map x -> A x + shift between Euclidean spaces of fixed dimensions.
struct AffineMap {
  std::vector<std::vector<double>> linear;  // out_dim rows, each of in_dim
  std::vector<double> shift;                // out_dim entries

  std::size_t in_dim() const { return linear.empty() ? 0 : linear.front().size(); }
  std::size_t out_dim() const { return linear.size(); }
  Point apply(const Point &p) const;

  static AffineMap identity(std::size_t d);
  // (x_1,...,x_k) -> (x_1,...,x_k,0,...,0) into dimension d.
  static AffineMap embedding(std::size_t from, std::size_t to);
};

}  // namespace motlab
