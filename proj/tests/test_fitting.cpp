#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bernegger/errors.hpp"
#include "bernegger/families.hpp"
#include "bernegger/fitting.hpp"
#include "bernegger/linked_families.hpp"
#include "support/oracle.hpp"

using namespace bernegger;

namespace {

// Censored-exponential MLE: the score n_u/lambda - sum z_i vanishes.
double exponential_mle(const std::vector<double>& z) {
  const auto s = split_sample(z);
  return static_cast<double>(s.uncensored.size()) / std::accumulate(z.begin(), z.end(), 0.0);
}

std::vector<double> exponential_sample(std::size_t n, std::uint64_t seed) {
  return sample(censored_exponential(2.0), n, seed);
}

}  // namespace

TEST_SUITE("fitting") {
  TEST_CASE("censoring tolerance") {
    const std::vector<double> z{0.5, 1.0, 1.0 - 1e-13, 1.0 - 1e-11, 1.0 + 1e-13};
    const auto s = split_sample(z);
    CHECK(s.censored == 3);
    CHECK(s.uncensored.size() == 2);
    CHECK_THROWS_AS(split_sample(std::vector<double>{1.0 + 1e-9}), DataError);
    CHECK_THROWS_AS(split_sample(std::vector<double>{-0.1}), DataError);
  }

  TEST_CASE("loglik_standard small cases") {
    const Family& expo = find_family("exponential");
    const std::vector<double> ln2{std::log(2.0)};
    CHECK(loglik_standard(expo, ln2, std::vector<double>{1.0}) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    const std::vector<double> two{2.0};
    CHECK(loglik_standard(expo, two, std::vector<double>{0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }

  TEST_CASE("average log-likelihood matches the expected value") {
    const auto d = censored_exponential(2.0);
    const auto z = exponential_sample(100000, 11);
    const double avg = loglik_standard(d, split_sample(z)) / z.size();
    const double p = d.point_mass();
    const double expected =
        oracle::integrate([&](double x) { return d.pdf(x) * std::log(d.pdf(x)); }, 0.0, 1.0) + p * std::log(p);
    CHECK(std::abs(avg - expected) < 0.01);
  }

  TEST_CASE("non-positive density gives -inf with a diagnostic") {
    const CensoredDistribution bad([](double z) { return z; }, [](double z) { return z < 0.5 ? 2.0 : 0.0; },
                                   0.0, 0.25);
    std::string why;
    const auto s = split_sample(std::vector<double>{0.2, 0.7});
    CHECK(loglik_standard(bad, s, &why) == -INFINITY);
    CHECK(why.find("z = 0.7") != std::string::npos);
    const auto censored = split_sample(std::vector<double>{0.2, 1.0});
    CHECK(loglik_standard(bad, censored, &why) == -INFINITY);
    CHECK(why.find("point mass") != std::string::npos);
  }

  TEST_CASE("loglik_extended") {
    const auto d = mbbefd_distribution({0.1, 3.0});
    const auto all_censored = split_sample(std::vector<double>(7, 1.0));
    CHECK(loglik_extended(d, 0.3, all_censored) == doctest::Approx(7 * std::log(0.3)).epsilon(1e-14));
    CHECK(loglik_extended(d, 0.9, all_censored) > loglik_extended(d, 0.3, all_censored));
    CHECK(loglik_extended(d, 1.0, all_censored) == 0.0);

    const auto z = sample(d, 1000, 12);
    const auto s = split_sample(z);
    CHECK(std::abs(loglik_extended(d, d.point_mass(), s) - loglik_standard(d, s)) < 1e-10);

    // q-part decouples: Bernoulli MLE at the censored fraction.
    const double q_hat = s.censored_fraction();
    for (double dq : {-1e-3, 1e-3}) CHECK(loglik_extended(d, q_hat + dq, s) < loglik_extended(d, q_hat, s));
  }

  TEST_CASE("aic anchors") {
    CHECK(aic(14587, 3) == -29168);
    CHECK(aic(15199, 4) == -30390);
    CHECK(aic(12425, 2) == -24846);
    CHECK_THROWS_AS(aic(1.0, 0), DomainError);
  }

  TEST_CASE("exponential fit recovers the closed-form MLE") {
    const auto z = exponential_sample(50000, 13);
    const auto r = fit(find_family("exponential"), z, FitMode::standard);
    CHECK(r.converged);
    CHECK_FALSE(r.at_boundary);
    CHECK(r.theta_hat["lambda"] == doctest::Approx(exponential_mle(z)).epsilon(1e-6));
    CHECK(std::abs(r.theta_hat["lambda"] / 2.0 - 1.0) < 0.05);
    CHECK(r.k == 1);
    CHECK(r.aic == 2.0 - 2.0 * r.loglik_total);
  }

  TEST_CASE("extended fit: q equals the censored fraction") {
    const auto z = sample(mbbefd_distribution({0.1, 3.0}), 50000, 14);
    const auto r = fit(find_family("mbbefd"), z, FitMode::extended);
    const auto s = split_sample(z);
    REQUIRE(r.q_hat.has_value());
    CHECK(std::abs(*r.q_hat - s.censored_fraction()) <= 1e-12);
    CHECK(r.point_mass == *r.q_hat);
    CHECK(r.k == 3);
    CHECK(r.aic == doctest::Approx(6.0 - 2.0 * r.loglik_total).epsilon(1e-15));
    CHECK(r.theta_hat["b"] == doctest::Approx(0.1).epsilon(0.1));
    CHECK(r.theta_hat["g"] == doctest::Approx(3.0).epsilon(0.1));
  }

  TEST_CASE("degenerate samples never give a silent answer") {
    CHECK_THROWS_AS(fit(find_family("exponential"), std::vector<double>{0.4}, FitMode::standard), FitError);
    CHECK_THROWS_AS(fit(find_family("mbbefd"), std::vector<double>(50, 1.0), FitMode::standard), FitError);
    CHECK_THROWS_AS(fit(find_family("mbbefd"), std::vector<double>{}, FitMode::standard), DataError);

    // No censored points in extended mode: q_hat sits on the boundary.
    const std::vector<double> z{0.1, 0.2, 0.35, 0.5, 0.6, 0.8};
    const auto r = fit(find_family("exponential"), z, FitMode::extended);
    CHECK(*r.q_hat == 0.0);
    CHECK(r.at_boundary);
  }

  TEST_CASE("a fit that collapses onto a domain edge is flagged") {
    // Sine-log on power-log data drives beta to -pi/2, which squeezes a into (1, 1 + 1e-7).
    const auto z = sample(find_family("power-log").distribution(std::vector<double>{1.2, 3.0, 1.0}), 2000, 7);
    const auto r = fit(find_family("sine-log"), z, FitMode::extended);
    CHECK(r.theta_hat["beta"] < -1.57);
    CHECK(r.boundary_proximity > kBoundaryThreshold);
    CHECK(r.at_boundary);
  }

  TEST_CASE("optimum improves on every initial point and is self-consistent") {
    const auto z = sample(mbbefd_distribution({0.2, 2.5}), 20000, 15);
    const auto s = split_sample(z);
    for (const Family* f : all_families()) {
      INFO(f->name());
      const auto r = fit(*f, z, FitMode::standard);
      for (const auto& start : f->initial_points())
        CHECK(r.loglik_total >= loglik_standard(f->distribution(start), s));
      const auto d = r.theta_hat.distribution();
      const double mass = oracle::integrate(d.pdf_function(), 0.0, 1.0);
      const double mean = oracle::integrate([&](double x) { return 1.0 - d.cdf(x); }, 0.0, 1.0);
      CHECK(std::abs(r.point_mass - (1.0 - mass)) < 1e-6);
      CHECK(std::abs(r.mean - mean) < 1e-6);
    }
  }

  TEST_CASE("user starting points are used") {
    const auto z = exponential_sample(5000, 16);
    FitOptions options;
    options.extra_starts = {{2.0}};
    const auto r = fit(find_family("exponential"), z, FitMode::standard, options);
    CHECK(r.theta_hat["lambda"] == doctest::Approx(exponential_mle(z)).epsilon(1e-6));
  }

  TEST_CASE("empirical_stats") {
    const auto e = empirical_stats(std::vector<double>{0.2, 1.0, 0.5, 1.0});
    CHECK(e.n == 4);
    CHECK(e.point_mass_at_1 == 0.5);
    CHECK(e.mean == doctest::Approx(0.675).epsilon(1e-15));

    const auto ones = empirical_stats(std::vector<double>(10, 1.0));
    CHECK(ones.point_mass_at_1 == 1.0);
    CHECK(ones.mean == 1.0);
    CHECK(std::accumulate(ones.histogram.counts.begin(), ones.histogram.counts.end(), std::size_t{0}) == 0);
    CHECK(ones.kde.empty());

    const auto z = exponential_sample(100000, 17);
    const auto big = empirical_stats(z);
    const double p = std::exp(-2.0);
    CHECK(std::abs(big.point_mass_at_1 - p) < 3 * std::sqrt(p * (1 - p) / 1e5));
    CHECK(big.point_mass_at_1 * big.n == std::round(big.point_mass_at_1 * big.n));
    CHECK(big.bandwidth > 0.0);
    // The kde roughly follows the conditional density 2e^{-2z}/(1-p).
    CHECK(big.kde[100] == doctest::Approx(2 * std::exp(-1.0) / (1 - p)).epsilon(0.05));

    CHECK_THROWS_AS(empirical_stats(std::vector<double>{}), DataError);
    CHECK_THROWS_AS(empirical_stats(std::vector<double>{0.0, 0.5}), DataError);
    CHECK_THROWS_AS(empirical_stats(std::vector<double>{1.0 + 1e-9}), DataError);
  }

  TEST_CASE("compare") {
    const auto z = exponential_sample(50000, 18);
    const std::vector<FitMode> standard{FitMode::standard};

    const std::vector<const Family*> one{&find_family("exponential")};
    const auto single = compare(one, z, standard);
    REQUIRE(single.rows.size() == 2);
    const auto stats = empirical_stats(z);
    CHECK(single.rows[0].family == "empirical");
    CHECK(single.rows[0].point_mass == stats.point_mass_at_1);
    CHECK(single.rows[0].mean == stats.mean);
    CHECK_FALSE(single.rows[0].aic.has_value());

    const std::vector<const Family*> two{&find_family("mbbefd"), &find_family("exponential")};
    const auto table = compare(two, z, standard);
    REQUIRE(table.rows.size() == 3);
    double aic_exp = 0, aic_mbbefd = 0;
    for (const auto& r : table.rows) {
      if (r.family == "exponential") aic_exp = *r.aic;
      if (r.family == "mbbefd") aic_mbbefd = *r.aic;
    }
    CHECK(aic_exp <= aic_mbbefd + 2.0);
    CHECK(*table.rows[1].aic <= *table.rows[2].aic);

    const std::string csv = to_csv(table);
    CHECK(csv.rfind("family,mode,point_mass,mean,loglik_conditional,loglik_total,aic,status\n", 0) == 0);
    CHECK(to_json(table).find("\"loglik_conditional\"") != std::string::npos);
  }

  TEST_CASE("compare records failures per row") {
    const std::vector<double> z{0.3, 1.0};
    const std::vector<const Family*> fams{&find_family("power-exp"), &find_family("exponential")};
    const std::vector<FitMode> modes{FitMode::standard};
    const auto table = compare(fams, z, modes);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[1].family == "exponential");
    CHECK(table.rows[2].status.rfind("failed", 0) == 0);
  }
}
