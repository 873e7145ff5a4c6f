#pragma once

// Brute-force LP oracle: enumerates every basic solution of
//   min c.x  s.t.  A x = b, x >= 0
// by trying all column subsets of size rank(A). Self-contained (own
// elimination code) so it stays independent of the simplex engine it
// cross-checks. Assumes the feasible region is bounded, which holds for
// every use in this suite (transport polytopes and simplex-bounded random
// programs).

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "motlab/lp.hpp"

namespace oracle {

struct Result {
  bool feasible = false;
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

namespace detail {

struct Reduced {
  bool consistent = true;
  std::size_t rank = 0;
  std::vector<double> rows;  // rank x (nvars + 1), echelon form
};

inline Reduced echelon(const motlab::LinearProgram &lp) {
  const std::size_t m = lp.num_rows, n = lp.num_vars, w = n + 1;
  std::vector<double> a(m * w, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * w + j] = lp.at(i, j);
    a[i * w + n] = lp.rhs[i];
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t best = rank;
    for (std::size_t r = rank + 1; r < m; ++r)
      if (std::abs(a[r * w + col]) > std::abs(a[best * w + col])) best = r;
    if (std::abs(a[best * w + col]) < 1e-9) continue;
    for (std::size_t c = 0; c <= n; ++c) std::swap(a[rank * w + c], a[best * w + c]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank) continue;
      const double f = a[r * w + col] / a[rank * w + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) a[r * w + c] -= f * a[rank * w + c];
      a[r * w + col] = 0.0;
    }
    ++rank;
  }
  Reduced out;
  out.rank = rank;
  for (std::size_t r = rank; r < m; ++r)
    if (std::abs(a[r * w + n]) > 1e-9) out.consistent = false;
  out.rows.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(rank * w));
  return out;
}

// Solves the square system given by the chosen columns; false if singular.
inline bool solve_square(const std::vector<double> &rows, std::size_t w,
                         const std::vector<std::size_t> &cols, std::vector<double> &z) {
  const std::size_t k = cols.size();
  std::vector<double> m(k * k), rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r * k + c] = rows[r * w + cols[c]];
    rhs[r] = rows[r * w + (w - 1)];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(m[r * k + col]) > std::abs(m[best * k + col])) best = r;
    if (std::abs(m[best * k + col]) < 1e-9) return false;
    if (best != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(m[col * k + c], m[best * k + c]);
      std::swap(rhs[col], rhs[best]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = m[r * k + col] / m[col * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) m[r * k + c] -= f * m[col * k + c];
      rhs[r] -= f * rhs[col];
    }
  }
  z.assign(k, 0.0);
  for (std::size_t r = k; r-- > 0;) {
    double acc = rhs[r];
    for (std::size_t c = r + 1; c < k; ++c) acc -= m[r * k + c] * z[c];
    z[r] = acc / m[r * k + r];
  }
  return true;
}

}  // namespace detail

inline Result solve(const motlab::LinearProgram &lp) {
  Result out;
  const detail::Reduced red = detail::echelon(lp);
  if (!red.consistent) return out;
  const std::size_t n = lp.num_vars, w = n + 1, r = red.rank;
  if (r == 0) {
    out.feasible = true;
    out.value = 0.0;
    out.x.assign(n, 0.0);
    return out;
  }
  if (r > n) return out;

  std::vector<std::size_t> cols(r);
  for (std::size_t i = 0; i < r; ++i) cols[i] = i;
  std::vector<double> z;
  for (;;) {
    if (detail::solve_square(red.rows, w, cols, z)) {
      bool nonneg = true;
      for (double v : z)
        if (v < -1e-9) {
          nonneg = false;
          break;
        }
      if (nonneg) {
        double value = 0.0;
        for (std::size_t i = 0; i < r; ++i) value += lp.objective[cols[i]] * z[i];
        if (!out.feasible || value < out.value) {
          out.feasible = true;
          out.value = value;
          out.x.assign(n, 0.0);
          for (std::size_t i = 0; i < r; ++i) out.x[cols[i]] = std::max(z[i], 0.0);
        }
      }
    }
    // next combination in lexicographic order
    std::size_t i = r;
    while (i-- > 0) {
      if (cols[i] + (r - i) < n) {
        ++cols[i];
        for (std::size_t k = i + 1; k < r; ++k) cols[k] = cols[k - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

}  // namespace oracle
