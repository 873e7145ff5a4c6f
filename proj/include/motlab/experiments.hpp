#pragma once

#include <cstdint>
#include <vector>

#include "motlab/coupling.hpp"
#include "motlab/report.hpp"

namespace motlab {

// Instability of the value and of the minimizer set as n grows: the distance
// between split_measure(3,n) and the limit marginal shrinks like pi/2n while
// the martingale value stays at 1 against 1/2 in the limit, and the unique
// couplings stay at total variation >= 1/4 from shared_mass_coupling().
ExperimentReport run_stability(int nmax, std::uint64_t seed = 7);

// Martingale-to-plain transport cost ratio for (row_measure(n),
// split_measure(n,n)): grows at least like n / (1 + pi/2) under the
// Euclidean norm and increases strictly under every supported norm.
ExperimentReport run_ratio(int nmax, CostSpec cost);

// Chord-versus-angle bound: W1 between the angle-0 and angle-theta step
// measures is at most 2 sin(theta/2) <= theta.
ExperimentReport run_lemma2(int m, const std::vector<double> &thetas);

// Parallelogram and mixture variants: no martingale coupling of the
// parallelogram pair moves mass less than 1/3, and both transport values of
// the mixture pair scale by (1 - eps).
ExperimentReport run_variants(int m, int n, int grid, double eps);

// Default theta grid for run_lemma2: `count` evenly spaced values spanning
// [0, pi/2].
std::vector<double> default_theta_grid(int count = 10);

}  // namespace motlab
