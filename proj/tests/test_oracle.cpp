#include <doctest.h>

#include <cmath>
#include <random>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/fixtures.hpp"
#include "holoschwarz/oracle.hpp"
#include "holoschwarz/schwarzian.hpp"

using namespace holoschwarz;

TEST_SUITE("oracle") {
  TEST_CASE("disk samples: annulus, antithetic pairs, determinism") {
    const auto a = disk_samples(1000, 7, 0.2, 0.8);
    REQUIRE(a.size() == 1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i]) >= 0.2 - 1e-15);
      CHECK(std::abs(a[i]) <= 0.8 + 1e-15);
    }
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) CHECK(a[i + 1] == -a[i]);
    CHECK(disk_samples(1000, 7, 0.2, 0.8) == a);
    CHECK(disk_samples(1000, 8, 0.2, 0.8) != a);

    // area uniformity: the fraction inside radius 0.5 of the unit disk is 1/4
    const auto u = disk_samples(20000, 1, 0.0, 1.0 - 1e-9);
    std::size_t inside = 0;
    for (auto z : u) inside += std::abs(z) < 0.5;
    CHECK(static_cast<double>(inside) / u.size() == doctest::Approx(0.25).epsilon(0.01));
  }

  TEST_CASE("injectivity: identity, collisions, and Example 1") {
    const InjectivityReport id = injectivity_scan(HoloCurve::identity(), 2000, 0.05, 3);
    CHECK_FALSE(id.collision);
    CHECK(id.min_distance >= 0.05);
    CHECK(id.min_distance < 0.06);

    InjectivityOptions ann;
    ann.r_min = 0.1;
    const InjectivityReport sq = injectivity_scan(HoloCurve::polynomial({{0.0, 0.0, 1.0}}), 2000, 0.05, 3, ann);
    CHECK(sq.collision);
    CHECK(std::abs(sq.min_z1 + sq.min_z2) < 1e-12);

    const InjectivityReport e2 = injectivity_scan(example2_curve(), 2000, 0.05, 3);
    CHECK_FALSE(e2.collision);
  }

  TEST_CASE("finite-difference second form agrees with half the curvature") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> rad(0.0, 0.9), ang(0.0, 2 * kPi);
    for (const auto& c : {example1_curve(), example2_curve(), HoloCurve::polynomial({{0.0, 1.0, 0.4}, {0.0, 0.0, 0.0, 0.5}})}) {
      for (int k = 0; k < 40; ++k) {
        const cplx z = std::polar(rad(rng), ang(rng));
        const ConformalData d = conformal_data(eval_curve(c, z));
        const SecondFormEstimate e = second_form_sq_fd(c, z);
        CHECK(std::abs(e.value - 0.5 * std::abs(d.curvature)) <= 1e-6 * e.scale);
      }
    }
    // planar curve: no normal component
    const SecondFormEstimate flat = second_form_sq_fd(HoloCurve::polynomial({{0.0, 1.0, 0.5}}), cplx(0.2, 0.1));
    CHECK(flat.value <= 1e-9 * flat.scale);
  }

  TEST_CASE("identity suite passes on the built-in roster") {
    std::vector<HoloCurve> curves;
    for (const auto& nc : builtin_curves()) curves.push_back(nc.curve);
    const std::vector<PlaneCurve> paths{PlaneCurve::diameter(0.3), PlaneCurve::circle_arc(0.0, 0.6)};
    IdentitySuiteOptions o;
    o.points_per_curve = 6;
    o.times_per_path = 2;
    const IdentitySuiteReport r = identity_suite(curves, paths, 5, o);
    REQUIRE(r.identities.size() == 4);
    for (const auto& id : r.identities) {
      INFO(id.name, " worst ", id.worst, " at ", id.location);
      CHECK(id.pass());
      CHECK(id.checks > 0);
    }
    CHECK(r.pass());
  }

  TEST_CASE("path parameter range") {
    const auto [a, b] = path_parameter_range(PlaneCurve::diameter(0.0), 0.9);
    CHECK(a == doctest::Approx(-0.9));
    CHECK(b == doctest::Approx(0.9));
    const auto [c, d] = path_parameter_range(PlaneCurve::circle_arc(0.0, 0.5), 0.9);
    CHECK(d - c == doctest::Approx(2 * kPi * 0.5));
  }

  TEST_CASE("standard range Mobius map is finite at the origin") {
    const MobiusRn m = standard_range_mobius(4);
    CHECK(m.dim() == 4);
    CHECK(m.apply(Eigen::VectorXd::Zero(4)).allFinite());
  }
}
