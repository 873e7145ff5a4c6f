// Times the simplex engine with the serial and the OpenMP elimination kernel
// on growing transport instances and checks that both produce identical
// solutions. Run with --quick for the small sizes used in the test suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "motlab/constructions.hpp"
#include "motlab/lp.hpp"
#include "motlab/transport.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using motlab::CostSpec;
using motlab::DiscreteMeasure;
using motlab::LinearProgram;
using motlab::LPSolution;
using motlab::Point;

DiscreteMeasure random_measure(int atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> mass(0.5, 1.5);
  std::vector<Point> pts;
  std::vector<double> wts;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    pts.push_back(Point{coord(rng), coord(rng)});
    wts.push_back(mass(rng));
    total += wts.back();
  }
  for (double &w : wts) w /= total;
  return DiscreteMeasure(std::move(pts), std::move(wts));
}

double time_solve_ms(const LinearProgram &lp, motlab::ExecMode mode, LPSolution &out) {
  motlab::SimplexOptions options;
  options.mode = mode;
  const auto start = std::chrono::steady_clock::now();
  out = motlab::solve(lp, options);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

bool identical(const LPSolution &a, const LPSolution &b) {
  return a.status == b.status && a.value == b.value && a.primal == b.primal;
}

void run_case(const char *label, const LinearProgram &lp, int repeats) {
  LPSolution serial_sol, parallel_sol;
  double serial_ms = 1e300, parallel_ms = 1e300;
  for (int r = 0; r < repeats; ++r) {
    LPSolution sol;
    serial_ms = std::min(serial_ms, time_solve_ms(lp, motlab::ExecMode::Serial, sol));
    if (r == 0) serial_sol = sol;
    parallel_ms = std::min(parallel_ms, time_solve_ms(lp, motlab::ExecMode::Parallel, sol));
    if (r == 0) parallel_sol = sol;
  }
  std::printf("%-28s %5zu x %-6zu %9.2f %9.2f %7.2fx   %s\n", label, lp.num_rows,
              lp.num_vars, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical(serial_sol, parallel_sol) ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char **argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP; both kernels run serially)\n");
#endif
  std::printf("%-28s %14s %9s %9s %8s\n", "instance", "rows x vars", "serial", "openmp",
              "speedup");

  const int repeats = quick ? 1 : 3;
  const std::vector<int> ot_sizes = quick ? std::vector<int>{10, 20} : std::vector<int>{20, 40, 60, 80};
  const std::vector<int> mot_sizes = quick ? std::vector<int>{6, 10} : std::vector<int>{10, 15, 20, 25};

  for (int k : ot_sizes) {
    const DiscreteMeasure mu = random_measure(k, 11 + static_cast<std::uint64_t>(k));
    const DiscreteMeasure nu = random_measure(k, 97 + static_cast<std::uint64_t>(k));
    const std::string label = "ot random  k=" + std::to_string(k);
    run_case(label.c_str(), motlab::ot_program(mu, nu, CostSpec{}), repeats);
  }
  for (int n : mot_sizes) {
    const DiscreteMeasure mu = motlab::row_measure(n);
    const DiscreteMeasure nu = motlab::split_measure(n, n);
    const std::string label = "mot split  n=" + std::to_string(n);
    run_case(label.c_str(), motlab::mot_program(mu, nu, CostSpec{}), repeats);
  }
  return 0;
}
