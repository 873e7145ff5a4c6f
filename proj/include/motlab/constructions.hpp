#pragma once

#include <utility>

#include "motlab/coupling.hpp"
#include "motlab/measure.hpp"

namespace motlab {

// Angle of the n-th member of the construction family: pi / (2n).
double split_angle(int n);

// One-step simple-random-walk kernel along the line at angle theta to the
// x-axis: x -> (delta_{x + (cos t, sin t)} + delta_{x - (cos t, sin t)}) / 2.
// theta must lie in [0, pi/2].
AtomicKernel random_walk_kernel(double theta);

// m atoms of weight 1/m at (1,0), ..., (m,0).
DiscreteMeasure row_measure(int m);

// row_measure(m) after one random-walk step at angle pi/2n: 2m atoms of
// weight 1/(2m) on two parallel rows.
DiscreteMeasure split_measure(int m, int n);

// row_measure(m) after one axis-aligned step (angle 0); for m >= 2 interior
// atoms overlap and merge.
DiscreteMeasure axis_split_measure(int m);

// Projection parallel to the line at angle theta onto the x-axis:
// (x1, x2) -> x1 - x2 / tan(theta). Rejects theta = 0.
AffineMap line_projection(double theta);

// The coupling that applies the random-walk step atom by atom: source atom
// (i,0) sends mass 1/(2m) to each of (i,0) +- (cos(pi/2n), sin(pi/2n)).
// It is a martingale coupling between row_measure(m) and split_measure(m,n).
Coupling split_coupling(int m, int n);

// The martingale coupling between row_measure(3) and axis_split_measure(3)
// that leaves all mass shared by the two marginals in place and rebalances
// only the rest through the endpoints 0 and 4.
Coupling shared_mass_coupling();

// Uniform lattice discretizations of the parallelogram variant: the source is
// a grid x grid midpoint lattice of the parallelogram spanned by
// -v, -v+(m,0), v+(m,0), v with v = (cos(pi/2n), sin(pi/2n)) / 3, and the
// target mixes the same lattice translated by +3v and -3v.
std::pair<DiscreteMeasure, DiscreteMeasure> parallelogram_pair(int m, int n, int grid);

// Mixture variant: ((1-eps) row + eps gamma, (1-eps) split + eps gamma) for
// eps in (0,1).
std::pair<DiscreteMeasure, DiscreteMeasure> mixture_pair(int m, int n, double eps,
                                                         const DiscreteMeasure &gamma);

// Default background measure for the mixture variant: a per_axis x per_axis
// lattice on [-half_width, half_width]^2 weighted by the standard bivariate
// normal density, renormalized.
DiscreteMeasure gaussian_lattice(int per_axis = 7, double half_width = 3.0);

}  // namespace motlab
