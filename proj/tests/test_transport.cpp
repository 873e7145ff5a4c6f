#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "motlab/constructions.hpp"
#include "motlab/transport.hpp"
#include "oracle.hpp"

using namespace motlab;

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

DiscreteMeasure random_measure(std::mt19937_64 &rng, std::size_t dim, int max_atoms) {
  std::uniform_int_distribution<int> natoms(1, max_atoms);
  std::uniform_int_distribution<int> coord(-6, 6);
  std::uniform_int_distribution<int> mass(1, 4);
  const int k = natoms(rng);
  std::vector<Point> pts;
  std::vector<double> wts;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    std::vector<double> c(dim);
    for (double &v : c) v = coord(rng) / 2.0;
    pts.emplace_back(std::move(c));
    wts.push_back(mass(rng));
    total += wts.back();
  }
  for (double &w : wts) w /= total;
  return consolidate(DiscreteMeasure(std::move(pts), std::move(wts)));
}

// Mean-preserving spread: every atom splits into a +/- delta pair.
DiscreteMeasure spread(std::mt19937_64 &rng, const DiscreteMeasure &mu) {
  std::uniform_int_distribution<int> offs(0, 3);
  std::vector<Atom> atoms;
  for (const Atom &a : mu.atoms()) {
    std::vector<double> delta(mu.dim());
    for (double &v : delta) v = offs(rng) / 2.0;
    const Point d{delta};
    atoms.push_back({a.p + d, 0.5 * a.w});
    atoms.push_back({a.p - d, 0.5 * a.w});
  }
  return consolidate(unchecked_measure(std::move(atoms), mu.dim()));
}

double max_convex_gap(std::mt19937_64 &rng, const DiscreteMeasure &mu,
                      const DiscreteMeasure &nu, int functions) {
  std::uniform_real_distribution<double> slope(-2.0, 2.0);
  std::uniform_real_distribution<double> intercept(-4.0, 4.0);
  std::uniform_int_distribution<int> pieces(1, 5);
  double gap = 0.0;
  for (int f = 0; f < functions; ++f) {
    const int k = pieces(rng);
    std::vector<std::vector<double>> slopes(k, std::vector<double>(mu.dim()));
    std::vector<double> offsets(k);
    for (int p = 0; p < k; ++p) {
      for (double &s : slopes[p]) s = slope(rng);
      offsets[p] = intercept(rng);
    }
    auto eval = [&](const Point &x) {
      double best = -1e300;
      for (int p = 0; p < k; ++p) {
        double v = offsets[p];
        for (std::size_t i = 0; i < x.dim(); ++i) v += slopes[p][i] * x[i];
        best = std::max(best, v);
      }
      return best;
    };
    double int_mu = 0.0, int_nu = 0.0;
    for (const Atom &a : mu.atoms()) int_mu += a.w * eval(a.p);
    for (const Atom &a : nu.atoms()) int_nu += a.w * eval(a.p);
    gap = std::max(gap, int_mu - int_nu);
  }
  return gap;
}

}  // namespace

TEST_CASE("ot_value on pinned instances") {
  const CostSpec euclid{};
  SUBCASE("dirac to dirac") {
    const auto [value, plan] = ot_value(DiscreteMeasure::dirac(Point{1.0, 2.0}),
                                        DiscreteMeasure::dirac(Point{4.0, 6.0}), euclid);
    CHECK(value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(plan.total_mass() == doctest::Approx(1.0));
  }
  SUBCASE("one kernel step costs exactly 1/3 to undo") {
    const auto [value, plan] = ot_value(row_measure(3), axis_split_measure(3), euclid);
    CHECK(value == doctest::Approx(1.0 / 3).epsilon(1e-9));
  }
  SUBCASE("distance to the n=8 split stays under the angle bound") {
    const auto [value, plan] = ot_value(row_measure(3), split_measure(3, 8), euclid);
    CHECK(value <= 1.0 / 3 + kPi / 16 + 1e-9);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(ot_value(row_measure(2), DiscreteMeasure::dirac(Point{0.0}), euclid),
                    std::invalid_argument);
  }
}

TEST_CASE("mot_program dimensions") {
  const CostSpec euclid{};
  SUBCASE("dirac source in one dimension is fully forced") {
    const DiscreteMeasure mu = DiscreteMeasure::dirac(Point{0.0});
    const DiscreteMeasure nu = DiscreteMeasure({Point{-1.0}, Point{1.0}}, {0.5, 0.5});
    const LinearProgram lp = mot_program(mu, nu, euclid);
    CHECK(lp.num_rows == 4);
    CHECK(lp.num_vars == 2);
    const auto [value, plan] = mot_value(mu, nu, euclid);
    CHECK(plan.mass[0][0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(plan.mass[0][1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("row counts for the split families") {
    CHECK(mot_program(row_measure(3), split_measure(3, 5), euclid).num_rows == 15);
    CHECK(mot_program(row_measure(3), split_measure(3, 5), euclid).num_vars == 18);
    CHECK(mot_program(row_measure(3), axis_split_measure(3), euclid).num_rows == 14);
    CHECK(mot_program(row_measure(3), axis_split_measure(3), euclid).num_vars == 15);
  }
}

TEST_CASE("mot_value on pinned instances") {
  const CostSpec euclid{};
  SUBCASE("limit pair has value one half") {
    const auto [value, plan] = mot_value(row_measure(3), axis_split_measure(3), euclid);
    CHECK(value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(is_martingale_coupling(plan, 1e-7));
  }
  SUBCASE("split pairs have value one") {
    for (int n : {2, 3, 7}) {
      const auto [value, plan] = mot_value(row_measure(n), split_measure(n, n), euclid);
      CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("identical marginals couple by the identity at zero cost") {
    const DiscreteMeasure mu = split_measure(2, 3);
    const auto [value, plan] = mot_value(mu, mu, euclid);
    CHECK(value <= 1e-9);
    CHECK(tv_distance(plan, identity_coupling(mu)) <= 1e-7);
  }
  SUBCASE("reversed order throws NotInConvexOrder") {
    CHECK_THROWS_AS(mot_value(split_measure(3, 3), row_measure(3), euclid), NotInConvexOrder);
  }
}

TEST_CASE("check_convex_order") {
  for (int m = 2; m <= 6; ++m)
    for (int n = 2; n <= 6; ++n) CHECK(check_convex_order(row_measure(m), split_measure(m, n)));
  const DiscreteMeasure mu = split_measure(4, 2);
  CHECK(check_convex_order(mu, mu));
  CHECK_FALSE(check_convex_order(split_measure(3, 3), row_measure(3)));
}

TEST_CASE("is_martingale_coupling and coupling_marginals") {
  const Coupling shared = shared_mass_coupling();
  CHECK(is_martingale_coupling(shared, 1e-12));
  const auto [src, tgt] = coupling_marginals(shared);
  CHECK(measure_linf_discrepancy(src, row_measure(3)) <= 1e-12);
  CHECK(measure_linf_discrepancy(tgt, axis_split_measure(3)) <= 1e-12);

  const Coupling prod = product_coupling(row_measure(3), split_measure(3, 3));
  CHECK_FALSE(is_martingale_coupling(prod, 1e-9));
  const auto [psrc, ptgt] = coupling_marginals(prod);
  CHECK(measure_linf_discrepancy(psrc, row_measure(3)) <= 1e-12);
  CHECK(measure_linf_discrepancy(ptgt, split_measure(3, 3)) <= 1e-12);

  const Coupling ident = identity_coupling(split_measure(2, 2));
  CHECK(is_martingale_coupling(ident, 1e-12));
}

TEST_CASE("tv_distance") {
  const Coupling a = split_coupling(3, 4);
  CHECK(tv_distance(a, a) == 0.0);
  // disjoint pair supports: the split targets sit off the axis
  CHECK(tv_distance(a, shared_mass_coupling()) == doctest::Approx(1.0).epsilon(1e-12));
  // against the limit coupling, only the diagonal mass differs
  Coupling limit;
  limit.source = row_measure(3).points();
  limit.target = axis_split_measure(3).points();
  limit.mass.assign(3, std::vector<double>(5, 0.0));
  for (std::size_t i = 0; i < 3; ++i) {
    limit.mass[i][i] = 1.0 / 6;      // one step left
    limit.mass[i][i + 2] = 1.0 / 6;  // one step right
  }
  CHECK(tv_distance(shared_mass_coupling(), limit) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("coupling JSON round trip") {
  const Coupling plan = split_coupling(3, 4);
  const Coupling back = coupling_from_json_string(coupling_to_json_string(plan));
  CHECK(tv_distance(plan, back) == 0.0);
  CHECK(back.source.size() == plan.source.size());
  CHECK_THROWS(coupling_from_json_string(R"({"source":[[0,0]],"target":[[1,0]]})"));
  CHECK_THROWS(coupling_from_json_string(
      R"({"source":[[0,0]],"target":[[1,0]],"mass":[[-0.5]]})"));
  CHECK_THROWS(coupling_from_json_string(
      R"({"source":[[0,0]],"target":[[1,0]],"mass":[[0.5]]})"));
}

TEST_CASE("uniqueness_probe") {
  SUBCASE("split pairs are uniquely coupled and the witness is the split coupling") {
    for (int m = 2; m <= 4; ++m)
      for (int n = 2; n <= 4; ++n) {
        const UniquenessReport rep = uniqueness_probe(row_measure(m), split_measure(m, n), 20, 7);
        CHECK(rep.unique);
        CHECK(tv_distance(rep.witness, split_coupling(m, n)) <= 1e-7);
      }
  }
  SUBCASE("the limit pair admits many couplings") {
    const UniquenessReport rep = uniqueness_probe(row_measure(3), axis_split_measure(3), 20, 7);
    CHECK_FALSE(rep.unique);
    CHECK(rep.max_tv_gap > 1e-4);
  }
  SUBCASE("dirac to itself") {
    const DiscreteMeasure d0 = DiscreteMeasure::dirac(Point{0.0, 0.0});
    const UniquenessReport rep = uniqueness_probe(d0, d0, 5, 7);
    CHECK(rep.unique);
    CHECK(rep.witness.mass[0][0] == doctest::Approx(1.0));
  }
  SUBCASE("outcome is stable under cost-vector extra objectives of every norm") {
    const DiscreteMeasure mu = row_measure(3);
    for (const DiscreteMeasure &nu : {split_measure(3, 3), axis_split_measure(3)}) {
      std::vector<bool> outcomes;
      for (Norm norm : {Norm::Euclidean, Norm::L1, Norm::Linf}) {
        std::vector<double> cost_vec;
        for (const Atom &a : mu.atoms())
          for (const Atom &b : nu.atoms()) cost_vec.push_back(distance(a.p, b.p, norm));
        outcomes.push_back(uniqueness_probe(mu, nu, 10, 7, {cost_vec}).unique);
      }
      CHECK(outcomes[0] == outcomes[1]);
      CHECK(outcomes[1] == outcomes[2]);
    }
  }
  SUBCASE("probing a reversed pair throws") {
    CHECK_THROWS_AS(uniqueness_probe(split_measure(2, 2), row_measure(2), 5, 7),
                    NotInConvexOrder);
  }
}

TEST_CASE("project_coupling") {
  SUBCASE("the split coupling collapses to the identity on the integers") {
    for (int m : {2, 3})
      for (int n : {2, 5}) {
        const Coupling flat = project_coupling(split_coupling(m, n), split_angle(n));
        std::vector<Point> pts;
        std::vector<double> wts;
        for (int i = 1; i <= m; ++i) {
          pts.push_back(Point{static_cast<double>(i)});
          wts.push_back(1.0 / m);
        }
        const DiscreteMeasure integers(std::move(pts), std::move(wts));
        CHECK(tv_distance(flat, identity_coupling(integers), 1e-9) <= 1e-9);
      }
  }
  SUBCASE("identity couplings stay identity couplings") {
    const Coupling ident = identity_coupling(row_measure(3));
    const Coupling flat = project_coupling(ident, 0.7);
    const DiscreteMeasure expect = pushforward_affine(row_measure(3), line_projection(0.7));
    CHECK(tv_distance(flat, identity_coupling(expect)) <= 1e-12);
  }
  SUBCASE("points on the axis are fixed by the projection") {
    const Coupling shared = shared_mass_coupling();
    const Coupling flat = project_coupling(shared, kPi / 4);
    CHECK(flat.dim() == 1);
    // same transport pattern on the x coordinates
    CHECK(coupling_cost(flat, CostSpec{}) ==
          doctest::Approx(coupling_cost(shared, CostSpec{})).epsilon(1e-12));
  }
  SUBCASE("theta = 0 is rejected") {
    CHECK_THROWS_AS(project_coupling(identity_coupling(row_measure(2)), 0.0),
                    std::invalid_argument);
  }
  SUBCASE("martingale property survives projection") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteMeasure mu = random_measure(rng, 2, 3);
      const DiscreteMeasure nu = spread(rng, mu);
      const auto [value, plan] = mot_value(mu, nu, CostSpec{});
      REQUIRE(is_martingale_coupling(plan, 1e-7));
      CHECK(is_martingale_coupling(project_coupling(plan, 0.9), 1e-6));
    }
  }
}

TEST_CASE("potential_function_check") {
  const DiscreteMeasure d0 = DiscreteMeasure::dirac(Point{0.0});
  const DiscreteMeasure pm = DiscreteMeasure({Point{-1.0}, Point{1.0}}, {0.5, 0.5});
  CHECK(potential_function_check(d0, pm));
  CHECK_FALSE(potential_function_check(pm, d0));
  CHECK_THROWS_AS(potential_function_check(row_measure(2), split_measure(2, 2)),
                  std::invalid_argument);

  // both projections of a split pair coincide, so the potentials agree
  const double theta = split_angle(4);
  const AffineMap proj = line_projection(theta);
  const DiscreteMeasure pm_mu = pushforward_affine(row_measure(4), proj);
  const DiscreteMeasure pm_nu = pushforward_affine(split_measure(4, 4), proj);
  CHECK(potential_function_check(pm_mu, pm_nu));
  CHECK(potential_function_check(pm_nu, pm_mu));
}

TEST_CASE("transport invariants on random instances") {
  std::mt19937_64 rng(31337);
  const CostSpec euclid{};

  SUBCASE("plans match their marginals and martingale plans check out") {
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t dim = 1 + (trial % 2);
      const DiscreteMeasure mu = random_measure(rng, dim, 4);
      const DiscreteMeasure nu = random_measure(rng, dim, 4);
      const auto [w, plan] = ot_value(mu, nu, euclid);
      const auto [psrc, ptgt] = coupling_marginals(plan);
      CHECK(measure_linf_discrepancy(psrc, mu) <= 1e-8);
      CHECK(measure_linf_discrepancy(ptgt, nu) <= 1e-8);

      const DiscreteMeasure spread_nu = spread(rng, mu);
      const auto [m, mplan] = mot_value(mu, spread_nu, euclid);
      CHECK(is_martingale_coupling(mplan, 1e-7));
      const auto [msrc, mtgt] = coupling_marginals(mplan);
      CHECK(measure_linf_discrepancy(msrc, mu) <= 1e-8);
      CHECK(measure_linf_discrepancy(mtgt, spread_nu) <= 1e-8);
      // martingale transport can never beat free transport
      CHECK(m >= ot_value(mu, spread_nu, euclid).value - 1e-8);
    }
  }

  SUBCASE("euclidean ot is symmetric and satisfies the triangle inequality") {
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteMeasure a = random_measure(rng, 2, 4);
      const DiscreteMeasure b = random_measure(rng, 2, 4);
      const DiscreteMeasure c = random_measure(rng, 2, 4);
      const double ab = ot_value(a, b, euclid).value;
      const double ba = ot_value(b, a, euclid).value;
      const double ac = ot_value(a, c, euclid).value;
      const double cb = ot_value(c, b, euclid).value;
      CHECK(std::abs(ab - ba) <= 1e-8);
      CHECK(ab <= ac + cb + 1e-8);
    }
  }

  SUBCASE("convex order implies monotone integrals of random convex functions") {
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteMeasure mu = random_measure(rng, 2, 4);
      const DiscreteMeasure nu = spread(rng, mu);
      REQUIRE(check_convex_order(mu, nu));
      CHECK(max_convex_gap(rng, mu, nu, 100) <= 1e-8);
    }
  }

  SUBCASE("kernels with centered outputs produce convex-order successors") {
    std::uniform_real_distribution<double> angle(0.05, 1.5);
    for (int trial = 0; trial < 8; ++trial) {
      const DiscreteMeasure mu = random_measure(rng, 2, 4);
      CHECK(check_convex_order(mu, apply_kernel(mu, random_walk_kernel(angle(rng)))));
    }
  }

  SUBCASE("values match the vertex-enumeration oracle on small instances") {
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteMeasure mu = random_measure(rng, 2, 4);
      const DiscreteMeasure nu = random_measure(rng, 2, 4);
      const oracle::Result expect = oracle::solve(ot_program(mu, nu, euclid));
      REQUIRE(expect.feasible);
      CHECK(ot_value(mu, nu, euclid).value == doctest::Approx(expect.value).epsilon(1e-6));
    }
  }
}
