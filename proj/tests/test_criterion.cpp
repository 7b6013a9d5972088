#include <doctest.h>

#include <cmath>
#include <sstream>

#include "holoschwarz/criterion.hpp"
#include "holoschwarz/errors.hpp"
#include "holoschwarz/fixtures.hpp"
#include "holoschwarz/schwarzian.hpp"

using namespace holoschwarz;

namespace {
const double kQuarterPi2 = kPi * kPi / 4.0;
}

TEST_SUITE("criterion") {
  TEST_CASE("grid validation and layout") {
    GridSpec g{8, 8, 0.5, 0};
    const auto pts = g.points();
    CHECK(pts.size() == 65);
    CHECK(pts.front() == cplx(0.0, 0.0));
    CHECK(std::abs(pts.back()) == doctest::Approx(0.5));
    CHECK_THROWS_AS((GridSpec{4, 8, 0.5, 0}.validate()), DomainError);
    CHECK_THROWS_AS((GridSpec{8, 8, 1.0, 0}.validate()), DomainError);
    CHECK_THROWS_AS((GridSpec{8, 8, -0.1, 0}.validate()), DomainError);
  }

  TEST_CASE("identity holds strictly, Example 1 holds with equality") {
    const GridSpec g{16, 16, 0.99, 0};
    const CriterionReport id = scan(HoloCurve::identity(), NehariFunction::constant(), g, 1);
    CHECK(id.verdict == Verdict::Holds);
    CHECK(id.min_margin == doctest::Approx(2 * kQuarterPi2));
    CHECK(id.equality_locus.empty());

    const CriterionReport ex1 = scan(example1_curve(), NehariFunction::constant(), g, 1);
    CHECK(ex1.verdict == Verdict::HoldsWithEquality);
    CHECK(ex1.equality_locus.size() == ex1.points.size());
    for (const auto& pt : ex1.points) CHECK(std::abs(pt.margin) < 1e-9);
  }

  TEST_CASE("a steep curve fails") {
    // S(tan(a z)) = 2 a^2, so a = 2 gives |S| = 8 > pi^2/2
    const CriterionReport r =
        scan(HoloCurve::from_components({component::Tangent{1.0, 2.0}}, "tan2"), NehariFunction::constant(),
             GridSpec{8, 8, 0.5, 0}, 1);
    CHECK(r.verdict == Verdict::Fails);
    CHECK(r.min_margin == doctest::Approx(kPi * kPi / 2 - 8.0).epsilon(1e-10));
  }

  TEST_CASE("refinement never raises the minimum") {
    const HoloCurve c = example2_curve();
    const NehariFunction p = NehariFunction::inverse_square();
    const CriterionReport a = scan(c, p, GridSpec{12, 12, 0.95, 0}, 1);
    const CriterionReport b = scan(c, p, GridSpec{12, 12, 0.95, 2}, 1);
    CHECK(b.min_margin <= a.min_margin);
    CHECK(b.points.size() > a.points.size());
  }

  TEST_CASE("scan is independent of the worker count") {
    const HoloCurve c = HoloCurve::polynomial({{0.0, 1.0, 0.3}, {0.0, 0.0, 0.2}});
    const GridSpec g{16, 16, 0.9, 1};
    const CriterionReport a = scan(c, NehariFunction::constant(), g, 1);
    const CriterionReport b = scan(c, NehariFunction::constant(), g, 3);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].margin == b.points[i].margin);
    CHECK(a.min_margin == b.min_margin);
  }

  TEST_CASE("scan CSV and summary") {
    const CriterionReport r = scan(HoloCurve::identity(), NehariFunction::constant(), GridSpec{8, 8, 0.5, 0}, 1);
    std::ostringstream csv, sum;
    write_scan_csv(csv, r);
    write_scan_summary(sum, r);
    CHECK(csv.str().rfind("re_z,im_z,abs_schwarzian,curv_term,bound,margin\n", 0) == 0);
    CHECK(sum.str().find("verdict=holds") != std::string::npos);
    CHECK(sum.str().find("points=65") != std::string::npos);
  }

  TEST_CASE("normalization") {
    const NormalizedCurve n1 = normalize(example1_curve());
    CHECK(n1.tangent_at_0 == doctest::Approx(kPi * std::sqrt(1700.0 * 1700.0 + 1.0)));
    CHECK(n1.phi2_at_0 == doctest::Approx(kPi).epsilon(1e-12));
    const NormalizedCurve ni = normalize(HoloCurve::identity().scaled(3.0));
    CHECK(ni.tangent_at_0 == doctest::Approx(3.0));
    CHECK(ni.phi2_at_0 == 0.0);
    CHECK_THROWS_AS(normalize(HoloCurve::polynomial({{0.0, 0.0, 1.0}})), DomainError);
  }

  TEST_CASE("covering bound and geodesic distance") {
    const ExtremalProfile prof = extremal_profile(NehariFunction::constant());
    CHECK(covering_bound(prof, 0.0, 0.5) == doctest::Approx(prof.at(0.5).Psi));
    CHECK(covering_bound(prof, 2.0, 0.5) < covering_bound(prof, 0.0, 0.5));
    const NehariFunction falling = NehariFunction::custom([](double x) { return 2.0 - x * x; }, "falling");
    CHECK_THROWS_AS(covering_bound(extremal_profile(falling), 0.0, 0.5), DomainError);
    CHECK_NOTHROW(covering_bound(extremal_profile(NehariFunction::half_strip()), 0.0, 0.5));

    // flat metric: the distance is the Euclidean radius
    GeodesicOptions opts;
    opts.resolution = 80;
    CHECK(intrinsic_min_distance(HoloCurve::identity(), 0.5, opts) == doctest::Approx(0.5).epsilon(1e-9));
    // radially symmetric conformal factor: |exp'| = e^x, shortest path runs along the negative axis
    const HoloCurve ex = HoloCurve::from_components({component::Exponential{1.0, 1.0}}, "exp");
    const double d = intrinsic_min_distance(ex, 0.5, opts);
    // midpoint-rule edges dip a hair below the exact length for convex weights
    CHECK(d >= (1.0 - std::exp(-0.5)) * (1.0 - 1e-4));
    CHECK(d <= (1.0 - std::exp(-0.5)) * 1.03);

    const CoveringProfile cp = covering_profile(HoloCurve::identity(), prof, {0.3, 0.6}, opts);
    REQUIRE(cp.measured.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(cp.measured[i] >= cp.bound[i] - 2e-3);
  }

  TEST_CASE("radial margin against the extremal profile") {
    const ExtremalProfile con = extremal_profile(NehariFunction::constant());
    const ExtremalProfile inv = extremal_profile(NehariFunction::inverse_square());
    const HoloCurve e1 = normalize(example1_curve()).curve;
    const HoloCurve e2 = normalize(example2_curve()).curve;
    for (double r : {0.1, 0.4, 0.8, 0.95})
      for (double th : {0.0, 0.7, 1.6, 3.0}) {
        CHECK(lemma4_margin(e1, con, std::polar(r, th)) >= -1e-8);
        CHECK(lemma4_margin(e2, inv, std::polar(r, th)) >= -1e-8);
      }
    CHECK_THROWS_AS(lemma4_margin(e1, con, 0.0), DomainError);
  }

  TEST_CASE("boundary diagnostics") {
    const ExtremalProfile con = extremal_profile(NehariFunction::constant());
    const HoloCurve e1 = normalize(example1_curve()).curve;
    const BoundaryDiagnostics d = boundary_diagnostics(e1, con, GridSpec{32, 32, 0.99, 0}, {16, 40, 0.5});
    CHECK(d.worst_omega2 >= -1e-6);
    CHECK(d.lambda == 0.0);
    CHECK(d.holder_exponent == doctest::Approx(1.0));
    CHECK_FALSE(d.logarithmic_regime);
    CHECK(d.w.size() == d.grid.size());

    const ExtremalProfile inv = extremal_profile(NehariFunction::inverse_square());
    const BoundaryDiagnostics d2 =
        boundary_diagnostics(normalize(example2_curve()).curve, inv, GridSpec{16, 16, 0.99, 0}, {8, 20, 0.5});
    CHECK(d2.logarithmic_regime);
    CHECK(d2.holder_exponent == doctest::Approx(0.0));

    // w is the ratio of the profile speed to |phi'|; for the identity and p = pi^2/4 it is sqrt(Phi')
    CHECK(boundary_weight(HoloCurve::identity(), con, 0.5) == doctest::Approx(std::sqrt(con.at(0.5).PhiP)));
    CHECK_THROWS_AS(boundary_weight(HoloCurve::identity(), con, 0.9999999), DomainError);
  }

  TEST_CASE("boundary trace") {
    const BoundaryTrace id = boundary_trace(HoloCurve::identity(), 1e-3, 256);
    CHECK(id.radius == doctest::Approx(0.999));
    CHECK(id.min_distance == doctest::Approx(2 * 0.999 * std::sin(kPi / 16)).epsilon(1e-3));
    // Example 1 identifies +i and -i on the boundary
    const BoundaryTrace e1 = boundary_trace(example1_curve(), 1e-3, 512);
    CHECK(e1.min_distance < 1e-2 * normalize(example1_curve()).tangent_at_0);
    CHECK(std::abs(std::abs(e1.z1.imag()) - 1.0) < 0.05);
  }
}
