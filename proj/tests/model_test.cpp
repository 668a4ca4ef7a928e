#include <doctest.h>

#include <cmath>
#include <random>

#include "mplab/errors.hpp"
#include "mplab/model.hpp"
#include "mplab/stone.hpp"
#include "oracles.hpp"

using namespace mplab;

namespace {

struct Moments {
  double mean;
  double variance;
};

Moments moments(const NormalizedDensity& d) {
  const Grid1D& g = d.grid();
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) m += g.weight(i) * g[i] * d[i];
  double v = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) v += g.weight(i) * (g[i] - m) * (g[i] - m) * d[i];
  return {m, v};
}

NormalizedDensity gaussian_on(const Grid1D& g, double mean, double var) {
  return normalize(GriddedDensity::tabulate(g, [&](double t) { return oracle::normal_pdf(t, mean, var); }));
}

const LikelihoodModel kLocation = LikelihoodModel::gaussian_location(1.0);

}  // namespace

TEST_CASE("posterior under the Stone prior, n = 1, a = 1") {
  const Grid1D theta(-12.0, 12.0, 4001);
  const auto prior = stone_prior_sequence(1.0).tabulate(1.0, theta);
  const auto post = posterior(kLocation, prior, 0.0);
  const auto mom = moments(post);
  CHECK(mom.mean == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(mom.variance == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("posterior under a flat prior is the renormalized likelihood slice") {
  const Grid1D theta(-10.0, 10.0, 2001);
  const auto flat = GriddedDensity::tabulate(theta, [](double) { return 3.0; });
  const auto post = posterior(kLocation, flat, 1.25);
  const auto slice = normalize(GriddedDensity::tabulate(theta, [](double t) { return kLocation.density(t, 1.25); }));
  CHECK(l1_distance(post, slice) < 1e-14);
}

TEST_CASE("conjugate Gaussian posterior") {
  const Grid1D theta(-40.0, 40.0, 8001);
  for (double n : {1.0, 4.0, 25.0}) {
    const auto prior = GriddedDensity::tabulate(theta, [n](double t) { return oracle::normal_pdf(t, 0.0, n); });
    for (double x : {-2.0, 0.0, 3.5}) {
      const auto mom = moments(posterior(kLocation, prior, x));
      CHECK(mom.mean == doctest::Approx(n * x / (n + 1)).epsilon(1e-9));
      CHECK(mom.variance == doctest::Approx(n / (n + 1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("posterior reports impossible data") {
  const Grid1D theta(0.0, 1.0, 11);
  const auto zero = GriddedDensity(theta, std::vector<double>(11, 0.0));
  CHECK_THROWS_AS(posterior(kLocation, zero, 0.5), ZeroMass);
}

TEST_CASE("marginal data density") {
  SUBCASE("Stone prior gives N(a n, 1 + n)") {
    const Grid1D theta(-12.0, 14.0, 2601);
    const Grid1D x(-14.0, 16.0, 3001);
    const auto prior = stone_prior_sequence(1.0).normalized(1.0, theta);
    const auto m = marginal_data_density(kLocation, prior, x);
    CHECK(l1_distance(m, gaussian_on(x, 1.0, 2.0)) < 1e-6);
  }
  SUBCASE("near-degenerate prior reproduces the sampling density") {
    const Grid1D theta(-1.0, 1.0, 4001);
    const Grid1D x(-9.0, 9.0, 1801);
    const auto prior = gaussian_on(theta, 0.3, 1e-6);
    const auto m = marginal_data_density(kLocation, prior, x);
    CHECK(l1_distance(m, gaussian_on(x, 0.3, 1.0)) < 0.01);
  }
  SUBCASE("N(0,1) prior convolves to N(0,2)") {
    const Grid1D theta(-9.0, 9.0, 1801);
    const Grid1D x(-12.0, 12.0, 2401);
    const auto m = marginal_data_density(kLocation, gaussian_on(theta, 0.0, 1.0), x);
    CHECK(l1_distance(m, gaussian_on(x, 0.0, 2.0)) < 1e-4);
    for (double v : m.values()) CHECK(v >= 0.0);
    CHECK(std::abs(integrate(m) - 1.0) < 1e-8);
  }
  SUBCASE("a narrow x-grid is reported") {
    const Grid1D theta(-9.0, 9.0, 1801);
    const Grid1D x(-1.0, 1.0, 201);
    CHECK_THROWS_AS(marginal_data_density(kLocation, gaussian_on(theta, 0.0, 1.0), x), TruncationError);
  }
}

TEST_CASE("posterior_field") {
  const Grid1D theta = Grid1D::lattice(-30.0, 40.0, 1201);
  const Grid1D x = Grid1D::lattice(-20.0, 25.0, 401);
  const auto prior = stone_prior_sequence(1.0).tabulate(10.0, theta);
  const auto field = posterior_field(kLocation, prior, x);
  REQUIRE(field.size() == x.size());
  for (std::size_t j = 0; j < x.size(); j += 37) {
    const auto col = field.column(j);
    CHECK(std::abs(integrate(col) - 1.0) < 1e-8);
    const auto direct = posterior(kLocation, prior, x[j]);
    bool identical = true;
    for (std::size_t i = 0; i < theta.size(); ++i) identical = identical && col[i] == direct[i];
    CHECK(identical);
  }
  const stone::StoneConfig cfg(1.0, 10.0);
  const auto exact = stone::tabulate_field(theta, x, [&](double xv) { return stone::posterior_exact(cfg, xv); });
  for (std::size_t j = 0; j < x.size(); ++j) {
    CHECK(l1_distance(theta, field.band(j), exact.band(j)) < 1e-6);
  }
  CHECK(field.index_of(0.0) < x.size());
  CHECK_THROWS_AS(field.index_of(0.1), GridMismatch);
}

TEST_CASE("property: Stone posterior field matches the closed form") {
  for (double a : {0.0, 1.0}) {
    for (double n : {1.0, 10.0, 100.0}) {
      const double sd = std::sqrt(1.0 + n);
      const Grid1D x = Grid1D::lattice(a * n - 8 * sd, a * n + 8 * sd, 301);
      const Grid1D theta = Grid1D::lattice(std::min(x.lo() - 8, a * n - 8 * std::sqrt(n)),
                                           std::max(x.hi() + a + 8, a * n + 8 * std::sqrt(n)), 1201);
      const auto field = posterior_field(kLocation, stone_prior_sequence(a).tabulate(n, theta), x);
      const stone::StoneConfig cfg(a, n);
      const auto exact = stone::tabulate_field(theta, x, [&](double xv) { return stone::posterior_exact(cfg, xv); });
      double worst = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, l1_distance(theta, field.band(j), exact.band(j)));
      }
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("property: Bayes consistency p(x|theta) pi(theta) = posterior x marginal x const") {
  const Grid1D theta(-15.0, 15.0, 1501);
  const Grid1D x(-20.0, 20.0, 801);
  const auto prior = gaussian_on(theta, 0.5, 4.0);
  const auto m = marginal_data_density(kLocation, prior, x);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> xi(200, 600);
  std::uniform_int_distribution<std::size_t> off(0, 60);
  double reference = 0.0;
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t j = xi(rng);
    const auto post = posterior(kLocation, prior, x[j]);
    const std::size_t i = theta.nearest(x[j] * 0.8) + off(rng) - 30;
    const double ratio = post[i] * m[j] / (kLocation.density(theta[i], x[j]) * prior[i]);
    if (trial == 0) reference = ratio;
    CHECK(std::abs(ratio / reference - 1.0) < 1e-8);
  }
}

TEST_CASE("formal posteriors") {
  const Grid1D theta = Grid1D::lattice(-20.0, 22.0, 2001);
  const Grid1D x = Grid1D::lattice(-8.0, 8.0, 161);

  SUBCASE("uniform prior gives N(x, 1)") {
    const auto flat = GriddedLogDensity::tabulate(theta, [](double) { return 0.0; });
    const auto field = formal_posterior(kLocation, flat, x);
    const auto exact = stone::tabulate_field(theta, x, [](double xv) { return stone::GaussianParams(xv, 1.0); });
    for (std::size_t j = 0; j < x.size(); ++j) CHECK(l1_distance(theta, field.band(j), exact.band(j)) < 1e-6);
  }
  SUBCASE("improper e^{theta} gives N(x + 1, 1)") {
    const auto tilt = GriddedLogDensity::tabulate(theta, [](double t) { return t; });
    const auto field = formal_posterior(kLocation, tilt, x);
    const auto exact = stone::tabulate_field(theta, x, [](double xv) { return stone::pointwise_limit(1.0, xv); });
    for (std::size_t j = 0; j < x.size(); ++j) CHECK(l1_distance(theta, field.band(j), exact.band(j)) < 1e-6);
  }
  SUBCASE("with a proper prior it coincides with posterior_field") {
    const auto prior = stone_prior_sequence(0.5).tabulate(3.0, theta);
    const auto a = formal_posterior(kLocation, prior, x);
    const auto b = posterior_field(kLocation, prior, x);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(a.band(j).offset == b.band(j).offset);
      CHECK(a.band(j).values == b.band(j).values);
    }
  }
}

TEST_CASE("scale model with prior 1/sigma") {
  const double lo = std::exp(-6.0), hi = 50.0;
  const Grid1D sigma(lo, hi, 40001);
  const auto jeffreys = GriddedDensity::tabulate(sigma, [](double s) { return 1.0 / s; });
  const auto model = LikelihoodModel::gaussian_scale();
  for (double x : {0.5, -1.0, 2.0, 5.0}) {
    const auto post = posterior(model, jeffreys, x);
    CHECK(std::abs(integrate(post) - 1.0) < 1e-8);
    // unnormalized grid mass vs the closed form integral over (0, inf)
    double on_grid = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) on_grid += sigma.weight(i) * model.density(sigma[i], x) * jeffreys[i];
    const double total = 0.5 / std::abs(x);  // integral of sigma^-2 phi(x / sigma) d sigma
    const double fraction = 2.0 * (oracle::Phi(std::abs(x) / lo) - oracle::Phi(std::abs(x) / hi));
    CHECK(std::abs(on_grid / total - fraction) < 1e-4);
  }
}

TEST_CASE("stone_prior_sequence") {
  const auto seq = stone_prior_sequence(1.0);
  const Grid1D theta(-10.0, 12.0, 2201);
  CHECK(l1_distance(seq.normalized(1.0, theta), gaussian_on(theta, 1.0, 1.0)) < 1e-12);

  const auto flat_taper = stone_prior_sequence(0.0);
  const Grid1D wide(-90.0, 90.0, 3601);
  CHECK(l1_distance(flat_taper.normalized(100.0, wide), gaussian_on(wide, 0.0, 100.0)) < 1e-12);

  const double ratio = seq.value(1e6, 2.0) / seq.value(1e6, 0.0);
  CHECK(std::abs(ratio - std::exp(2.0) * std::exp(-2e-6)) < 1e-12);
  CHECK(std::abs(ratio / std::exp(2.0) - 1.0) < 1e-5);
}

TEST_CASE("validate_likelihood") {
  const Grid1D theta(-5.0, 5.0, 101);
  const Grid1D x(-15.0, 15.0, 3001);
  CHECK(validate_likelihood(kLocation, theta, x, -5.0, 5.0) < 1e-10);
  const Grid1D narrow(-6.0, 6.0, 1201);
  CHECK_THROWS_AS(validate_likelihood(kLocation, theta, narrow, -5.0, 5.0), TruncationError);
  CHECK(validate_likelihood(LikelihoodModel::log_abs_gaussian_scale(), Grid1D(-2.0, 2.0, 41),
                            Grid1D(-40.0, 8.0, 4801), -2.0, 2.0) < 1e-10);
}
