#include <doctest.h>

#include <cmath>

#include "bernegger/errors.hpp"
#include "bernegger/mbbefd.hpp"
#include "support/oracle.hpp"

using namespace bernegger;

TEST_SUITE("mbbefd") {
  TEST_CASE("branches of the curve") {
    const auto id = mbbefd_curve({0.3, 1.0});
    for (double z : {0.0, 0.4, 1.0}) CHECK(id.g(z) == doctest::Approx(z));
    CHECK(mbbefd_branch({0.0, 2.0}) == MbbefdBranch::identity);

    const auto bg1 = mbbefd_curve({0.5, 2.0});
    CHECK(mbbefd_branch({0.5, 2.0}) == MbbefdBranch::bg_equals_one);
    for (double z : {0.0, 0.25, 0.5, 1.0})
      CHECK(bg1.g(z) == doctest::Approx((1 - std::pow(0.5, z)) / 0.5).epsilon(1e-14));

    const auto general = mbbefd_curve({0.1, 3.0});
    CHECK(std::abs(general.g(0.0)) < 1e-12);
    CHECK(std::abs(general.g(1.0) - 1.0) < 1e-12);
    CHECK(validate_exposure_curve(general).passed());
    CHECK_THROWS_AS(mbbefd_curve({0.1, 0.5}), DomainError);
    CHECK_THROWS_AS(mbbefd_curve({-0.1, 2.0}), DomainError);
  }

  TEST_CASE("closed-form distribution") {
    const auto b1 = mbbefd_distribution({1.0, 3.0});
    CHECK(b1.mean() == doctest::Approx(std::log(3.0) / 2).epsilon(1e-14));
    CHECK(oracle::integrate([](double z) { return 1.0 / (1.0 + 2.0 * z); }, 0.0, 1.0) ==
          doctest::Approx(b1.mean()).epsilon(1e-12));

    const auto d = mbbefd_distribution({0.1, 3.0});
    CHECK(d.pdf(0.0) == doctest::Approx(2.0 * std::log(0.1) * 0.1 / (0.1 - 1.0)).epsilon(1e-14));
    CHECK(d.pdf(0.0) == doctest::Approx(0.511685).epsilon(1e-6));
    CHECK(d.point_mass() == 1.0 / 3.0);
    CHECK(oracle::integrate(d.pdf_function(), 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const auto e = mbbefd_distribution({0.5, 2.0});
    for (double z : {0.0, 0.3, 0.9})
      CHECK(e.pdf(z) == doctest::Approx(-std::log(0.5) * std::pow(0.5, z)).epsilon(1e-14));
    CHECK(e.mean() == doctest::Approx(-0.5 / std::log(0.5)).epsilon(1e-14));
    CHECK(e.mean() == doctest::Approx(0.721348).epsilon(1e-6));

    CHECK_THROWS_AS(mbbefd_distribution({0.3, 1.0}), DegenerateError);
  }

  TEST_CASE("log_pdf agrees with log(pdf)") {
    oracle::Draws draws(5);
    for (int k = 0; k < 50; ++k) {
      const auto t = draws.valid("mbbefd");
      const auto d = mbbefd_distribution({t[0], t[1]});
      for (int i = 0; i < 20; ++i) {
        const double z = i / 20.0;
        CHECK(d.log_pdf(z) == doctest::Approx(std::log(d.pdf(z))).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("p = 1/g and branch continuity") {
    oracle::Draws draws(6);
    for (int k = 0; k < 100; ++k) {
      const auto t = draws.valid("mbbefd");
      CHECK(mbbefd_distribution({t[0], t[1]}).point_mass() == 1.0 / t[1]);
    }
    const double g = 3.0;
    const auto limit_b = mbbefd_distribution({1.0, g});
    const auto limit_bg = mbbefd_distribution({0.5, 2.0});
    for (double eps : {1e-6, -1e-6}) {
      const auto near_b = mbbefd_distribution({1.0 + eps, g});
      const auto near_bg = mbbefd_distribution({(1.0 + eps) / 2.0, 2.0});
      CHECK(mbbefd_branch({1.0 + eps, g}) == MbbefdBranch::general);
      double sup_b = 0, sup_bg = 0;
      for (int i = 0; i < 1000; ++i) {
        const double z = i / 1000.0;
        sup_b = std::max(sup_b, std::abs(near_b.cdf(z) - limit_b.cdf(z)));
        sup_bg = std::max(sup_bg, std::abs(near_bg.cdf(z) - limit_bg.cdf(z)));
      }
      CHECK(sup_b < 1e-4);
      CHECK(sup_bg < 1e-4);
      CHECK(near_b.mean() == doctest::Approx(limit_b.mean()).epsilon(1e-4));
    }
  }

  TEST_CASE("shape classification") {
    const auto s = classify_shape({0.1, 3.0});
    REQUIRE(s.shape == Shape::unimodal);
    CHECK(*s.mode == doctest::Approx(1.0 - std::log(0.35) / std::log(0.1)).epsilon(1e-14));
    const auto d = mbbefd_distribution({0.1, 3.0});
    CHECK(std::abs(oracle::grid_argmax(d.pdf_function(), 1000000) - *s.mode) < 2e-6);

    CHECK(classify_shape(swiss_re_params(5.0)).shape == Shape::monotone_decreasing);
    CHECK(classify_shape({0.5, 2.0}).shape == Shape::monotone_decreasing);
    // (1-bg)/(g-1) >= 1: density increasing.
    CHECK(classify_shape({0.2, 1.5}).shape == Shape::monotone_increasing);
  }

  TEST_CASE("mode correctness on random unimodal draws") {
    oracle::Draws draws(8);
    int checked = 0;
    while (checked < 100) {
      const double g = draws.log_uniform(1.1, 50.0);
      const double b = draws.uniform(std::max(0.0, (2 - g) / g), 1.0 / (2 * g - 1));
      const auto s = classify_shape({b, g});
      if (s.shape != Shape::unimodal) continue;
      const auto d = mbbefd_distribution({b, g});
      CHECK(std::abs(oracle::grid_argmax(d.pdf_function(), 100000) - *s.mode) < 1e-4);
      ++checked;
    }
  }

  TEST_CASE("pdf derivative matches finite differences") {
    oracle::Draws draws(9);
    for (int k = 0; k < 30; ++k) {
      const auto t = draws.valid("mbbefd");
      const MbbefdParams p{t[0], t[1]};
      const auto d = mbbefd_distribution(p);
      for (int i = 1; i <= 99; ++i) {
        const double z = i / 100.0, h = 1e-6;
        const double fd = (d.pdf(z + h) - d.pdf(z - h)) / (2 * h);
        const double exact = mbbefd_pdf_derivative(p, z);
        CHECK(std::abs(fd - exact) <= 1e-6 * (1 + std::abs(exact)) * 10);
        if (std::abs(exact) > 1e-6) CHECK((fd > 0) == (exact > 0));
      }
    }
  }

  TEST_CASE("logistic form") {
    const MbbefdParams p{0.1, 3.0};
    const auto d = mbbefd_distribution(p);
    const double a = to_ab(p).a;
    const double z_star = *classify_shape(p).mode;
    CHECK(logistic_form_pdf(p, z_star) == doctest::Approx((a + 1) * std::log(10.0) / 4).epsilon(1e-14));
    CHECK(logistic_form_pdf(p, z_star) == doctest::Approx(0.740117).epsilon(1e-6));
    CHECK(logistic_form_pdf(p, z_star) == doctest::Approx(d.pdf(z_star)).epsilon(1e-12));
    CHECK(std::abs(logistic_form_pdf(p, z_star + 0.1) - logistic_form_pdf(p, z_star - 0.1)) < 1e-12);
    CHECK(logistic_form_pdf(p, 0.0) == doctest::Approx(d.pdf(0.0)).epsilon(1e-12));
    CHECK_THROWS_AS(logistic_form_pdf({0.5, 3.0}, 0.5), DomainError);
  }

  TEST_CASE("(a, b) reparametrization") {
    CHECK(to_ab({0.1, 3.0}).a == doctest::Approx(0.2 / 0.7).epsilon(1e-14));
    const auto back = from_ab(to_ab({0.3, 2.0}));
    CHECK(std::abs(back.b - 0.3) < 1e-14);
    CHECK(std::abs(back.g - 2.0) < 1e-14);

    // a = b sits on the unimodality boundary (1-bg)/(g-1) = 1.
    const auto edge = from_ab({0.4, 0.4});
    CHECK((1 - edge.b * edge.g) / (edge.g - 1) == doctest::Approx(1.0).epsilon(1e-12));

    oracle::Draws draws(10);
    for (int k = 0; k < 1000; ++k) {
      const auto t = draws.valid("mbbefd");
      const auto r = from_ab(to_ab({t[0], t[1]}));
      CHECK(std::abs(r.b - t[0]) <= 1e-12 * t[0]);
      CHECK(std::abs(r.g - t[1]) <= 1e-12 * t[1]);
    }
    CHECK_THROWS_AS(to_ab({0.5, 2.0}), DomainError);
  }

  TEST_CASE("Swiss Re parameters") {
    auto p = swiss_re_params(1.5);
    CHECK(p.b == doctest::Approx(std::exp(2.5375)).epsilon(1e-14));
    CHECK(p.b == doctest::Approx(12.6481).epsilon(1e-5));
    CHECK(p.g == doctest::Approx(4.22070).epsilon(1e-5));
    p = swiss_re_params(5.0);
    CHECK(p.b == doctest::Approx(0.246597).epsilon(1e-5));
    CHECK(p.g == doctest::Approx(992.275).epsilon(1e-6));
    CHECK(p.b * p.g > 1.0);
    p = swiss_re_params(2.0);
    CHECK(p.b == doctest::Approx(9.02501).epsilon(1e-5));
    CHECK(p.g == doctest::Approx(7.69061).epsilon(1e-5));
    for (double c : {1.5, 2.0, 3.0, 4.0, 5.0})
      CHECK(classify_shape(swiss_re_params(c)).shape == Shape::monotone_decreasing);
    CHECK_THROWS_AS(swiss_re_params(0.0), DomainError);
  }
}
