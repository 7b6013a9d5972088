#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/nehari.hpp"

using namespace holoschwarz;

namespace {
const double kQuarterPi2 = kPi * kPi / 4.0;
}

TEST_SUITE("nehari") {
  TEST_CASE("validation verdicts") {
    CHECK(validate_nehari(NehariFunction::constant()).valid());
    const NehariFunction inv = NehariFunction::inverse_square();
    CHECK(validate_nehari(inv).valid());
    for (double x : {0.0, 0.5, 0.999}) CHECK(inv.weighted(x) == doctest::Approx(1.0).epsilon(1e-12));

    const NehariValidation bad = validate_nehari(NehariFunction::constant(1.05 * kQuarterPi2));
    CHECK_FALSE(bad.valid());
    CHECK_FALSE(bad.disconjugate);
    CHECK(bad.zero_count >= 1);

    const NehariValidation odd =
        validate_nehari(NehariFunction::custom([](double x) { return 1.0 + 0.1 * x; }, "skewed"));
    CHECK_FALSE(odd.even);
    CHECK(odd.worst_x.has_value());

    const NehariValidation rising = validate_nehari(
        NehariFunction::custom([](double x) { return 0.5 * (1 + x * x) / std::pow(1 - x * x, 2); }, "rising"));
    CHECK_FALSE(rising.weighted_nonincreasing);

    CHECK_THROWS_AS(validate_nehari(NehariFunction::custom([](double) { return std::nan(""); }, "nan")),
                    NumericalError);
  }

  TEST_CASE("disconjugacy counts") {
    CHECK(disconjugacy_count(NehariFunction::constant()) == 0);
    CHECK(disconjugacy_count(NehariFunction::constant(1.2 * kQuarterPi2)) >= 1);
    CHECK(disconjugacy_count(NehariFunction::constant(0.0)) == 0);
    CHECK(disconjugacy_count(NehariFunction::constant(1.05 * kQuarterPi2)) >= 1);
    // nine times the constant weight: cos(3 pi x/2) has three zeros, the solution from -1 has two more
    CHECK(disconjugacy_count(NehariFunction::constant(9.0 * kQuarterPi2).scaled(1.1)) == 3);
  }

  TEST_CASE("Sturm scaling keeps disconjugacy") {
    const NehariFunction ws[] = {NehariFunction::constant(), NehariFunction::inverse_square(),
                                 NehariFunction::half_strip()};
    for (const auto& p : ws)
      for (double k : {0.3, 0.7, 0.99}) CHECK(disconjugacy_count(p.scaled(k)) == 0);
  }

  TEST_CASE("extremality margins") {
    CHECK(extremality_margin(NehariFunction::constant()) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(is_extremal_margin(extremality_margin(NehariFunction::inverse_square())));
    CHECK(extremality_margin(NehariFunction::inverse_square()) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(extremality_margin(NehariFunction::constant(0.5 * kQuarterPi2)) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_THROWS_AS(extremality_margin(NehariFunction::constant(0.2 * kQuarterPi2)), NumericalError);
    CHECK_THROWS_AS(extremality_margin(NehariFunction::constant(1.5 * kQuarterPi2)), NumericalError);
  }

  TEST_CASE("lambda: closed form and extrapolation") {
    CHECK(NehariFunction::constant().lambda() == 0.0);
    CHECK(NehariFunction::inverse_square().lambda() == 1.0);
    CHECK(NehariFunction::inverse_square().scaled(0.5).lambda() == 0.5);
    CHECK(std::abs(extrapolate_lambda(NehariFunction::constant())) < 1e-12);
    CHECK(extrapolate_lambda(NehariFunction::inverse_square()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(extrapolate_lambda(NehariFunction::half_strip())) < 1e-9);
    const NehariFunction mixed =
        NehariFunction::custom([](double x) { return 0.75 / std::pow(1 - x * x, 2) + 1.0 / (1 - x * x); }, "mixed");
    CHECK(mixed.lambda() == doctest::Approx(0.75).epsilon(1e-9));
  }

  TEST_CASE("tabulated weight") {
    std::vector<double> x{0.0, 0.25, 0.5, 0.75, 0.9};
    std::vector<double> p;
    for (double t : x) p.push_back(1.0 / std::pow(1 - t * t, 2));
    const NehariFunction tab = NehariFunction::tabulated(x, p);
    CHECK(tab(-0.5) == doctest::Approx(tab(0.5)));
    CHECK(tab(0.95) == doctest::Approx(1.0 / std::pow(1 - 0.95 * 0.95, 2)).epsilon(1e-12));
    CHECK(tab.lambda() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(validate_nehari(tab).positive);
    CHECK_THROWS_AS(NehariFunction::tabulated({0.0, 0.5}, {1.0, 1.0}), DomainError);
  }

  TEST_CASE("profile closed forms for (1 - x^2)^{-2}") {
    const ExtremalProfile prof = extremal_profile(NehariFunction::inverse_square());
    CHECK(prof.at(0.5).Phi == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    for (int k = 1; k <= 9; ++k) {
      const double r = 0.1 * k;
      const ProfilePoint pt = prof.at(r);
      CHECK(std::abs(pt.A - pt.p) < 1e-8);
      CHECK(pt.u0 == doctest::Approx(std::sqrt(1 - r * r)).epsilon(1e-11));
    }
    CHECK(prof.phi_divergent());
    CHECK(prof.mu() == doctest::Approx(1.0));
  }

  TEST_CASE("profile closed forms for pi^2/4") {
    const ExtremalProfile prof = extremal_profile(NehariFunction::constant());
    CHECK(std::abs(prof.at(0.99).Psi - 2 / kPi * std::tanh(0.99 * kPi / 2)) < 1e-9);
    CHECK(prof.at(0.7).Phi == doctest::Approx(2 / kPi * std::tan(0.7 * kPi / 2)).epsilon(1e-11));
    CHECK(prof.at(0.7).U == doctest::Approx(std::cosh(0.7 * kPi / 2)).epsilon(1e-12));
    CHECK(prof.phi_divergent());
    CHECK(prof.nodes().back().Phi > 10.0);
    CHECK(prof.mu() == 2.0);
    CHECK(prof.alpha() == 0.0);
    CHECK(prof.inverse_phi(prof.at(0.42).Phi) == doctest::Approx(0.42).epsilon(1e-12));
  }

  TEST_CASE("profile invariants") {
    const NehariFunction ws[] = {NehariFunction::constant(), NehariFunction::inverse_square(),
                                 NehariFunction::constant(0.5 * kQuarterPi2), NehariFunction::half_strip()};
    for (const auto& p : ws) {
      const ExtremalProfile prof = extremal_profile(p);
      const ProfilePoint& o = prof.nodes().front();
      CHECK(o.Phi == 0.0);
      CHECK(o.PhiP == 1.0);
      CHECK(o.PhiPP == 0.0);
      CHECK(o.A == p(0.0));
      CHECK(prof.at(1e-4).A == doctest::Approx(p(0.0)).epsilon(1e-6));
      CHECK(prof.lambda() <= 1.0);
      for (const auto& n : prof.nodes()) {
        CHECK(n.u0 > 0.0);
        if (n.x > 0.0 && n.x < 0.99)
          CHECK(std::abs(n.riccati - n.log_derivative) <= 1e-8 * std::max(1.0, std::abs(n.log_derivative)));
      }
    }
    // extremal weights dominate by A
    for (const auto& p : {NehariFunction::constant(), NehariFunction::inverse_square()}) {
      const ExtremalProfile prof = extremal_profile(p);
      for (const auto& n : prof.nodes())
        if (n.x <= 0.999) CHECK(n.p <= n.A + 1e-8 * std::max(1.0, n.A));
    }
    // a non-extremal multiple has bounded Phi
    CHECK_FALSE(extremal_profile(NehariFunction::constant(0.5 * kQuarterPi2)).phi_divergent());
  }

  TEST_CASE("u0 crossing zero is reported") {
    CHECK_THROWS_AS(extremal_profile(NehariFunction::constant(1.5 * kQuarterPi2)), NumericalError);
  }

  TEST_CASE("metric quantities") {
    const ExtremalProfile inv = extremal_profile(NehariFunction::inverse_square());
    const MetricQuantities m0 = metric_quantities(inv, 0.0);
    CHECK(m0.distance == 0.0);
    CHECK(m0.curvature == doctest::Approx(-4.0));
    CHECK(metric_quantities(inv, 0.5).curvature == doctest::Approx(-4.0).epsilon(1e-9));

    // -e^{-2 rho} Laplacian(rho), rho = log Phi'(r), radial Laplacian rho'' + rho'/r
    const ExtremalProfile con = extremal_profile(NehariFunction::constant());
    const double r = 0.3, h = 1e-3;
    auto rho = [&](double s) { return std::log(con.at(s).PhiP); };
    const double d1 = (rho(r + h) - rho(r - h)) / (2 * h);
    const double d2 = (rho(r + h) - 2 * rho(r) + rho(r - h)) / (h * h);
    const double k_fd = -std::exp(-2 * rho(r)) * (d2 + d1 / r);
    CHECK(metric_quantities(con, r).curvature == doctest::Approx(k_fd).epsilon(1e-6));
    CHECK_THROWS_AS(metric_quantities(con, 0.9999999), DomainError);
  }

  TEST_CASE("Mobius weight comparison") {
    const NehariFunction con = NehariFunction::constant();
    const NehariFunction inv = NehariFunction::inverse_square();
    CHECK(mobius_weight_check(con, DiskMobius(0.0, 0.0), 0.4) == 0.0);
    CHECK(mobius_weight_check(con, DiskMobius(0.5, 0.0), 0.3) > 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.95, 0.95);
    for (int k = 0; k < 200; ++k) {
      const DiskMobius t(u(rng), 0.0);
      const double x = u(rng);
      CHECK(std::abs(mobius_weight_check(inv, t, x)) <= 1e-12 * inv(x));
      CHECK(mobius_weight_check(con, t, x) >= -1e-12);
      CHECK(std::abs(t(cplx(x, 0.0))) >= std::abs(x) - 1e-15);
    }
  }

  TEST_CASE("profile CSV") {
    std::ostringstream os;
    write_profile_csv(os, extremal_profile(NehariFunction::constant()));
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "x,u0,Phi,PhiP,U,Psi,A,p");
    CHECK(std::count(row.begin(), row.end(), ',') == 7);
  }
}
