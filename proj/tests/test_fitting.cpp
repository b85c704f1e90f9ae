#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "whitpack/fitting.hpp"
#include "whitpack/packet.hpp"

using namespace whitpack;

TEST_CASE("exact power-law data is recovered to machine precision") {
  std::vector<std::pair<double, double>> s;
  for (double x : {0.001, 0.01, 0.1, 1.0, 10.0})
    s.emplace_back(x, 3.0 * std::pow(x, -0.5));
  const auto fit = fit_power_law(s);
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.coefficient == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.residual_rms < 1e-12);
  CHECK(fit.sample_count == 5);

  const auto pinned = fit_power_law(s, -0.5);
  CHECK(pinned.exponent == -0.5);
  CHECK(pinned.coefficient == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("multiplicative noise moves the coefficient, not the exponent") {
  std::mt19937 rng(42);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 40; ++i) {
    const double x = std::pow(10.0, -3.0 + 4.0 * i / 39.0);
    s.emplace_back(x, 2.5 * std::pow(x, -0.5) * std::exp(noise(rng)));
  }
  const auto fit = fit_power_law(s);
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(0.01));
  CHECK(fit.coefficient == doctest::Approx(2.5).epsilon(0.02));
  CHECK(fit.residual_rms < 0.05);
}

TEST_CASE("a pinned exponent fits the intercept through the data") {
  // y = 4 x^-0.6 fitted with exponent pinned at -0.5: coefficient lands at
  // the geometric-mean compensation point, not at 4
  std::vector<std::pair<double, double>> s;
  for (double x : {0.01, 0.1, 1.0, 10.0})
    s.emplace_back(x, 4.0 * std::pow(x, -0.6));
  const auto pinned = fit_power_law(s, -0.5);
  // intercept in logs: mean(ln y + 0.5 ln x) = ln 4 - 0.1 * mean(ln x)
  double acc = 0.0;
  for (const auto& [x, y] : s) acc += std::log(y) + 0.5 * std::log(x);
  CHECK(pinned.coefficient ==
        doctest::Approx(std::exp(acc / s.size())).epsilon(1e-12));
  CHECK(pinned.residual_rms > 0.0);
}

TEST_CASE("degenerate inputs raise typed errors") {
  std::vector<std::pair<double, double>> flat = {
      {1.0, 2.0}, {1.0, 2.1}, {1.0, 1.9}, {1.0, 2.05}};
  CHECK_THROWS_AS(fit_power_law(flat), RankDeficient);

  std::vector<std::pair<double, double>> few = {{1.0, 2.0}, {2.0, 1.5}};
  CHECK_THROWS_AS(fit_power_law(few), DomainError);

  std::vector<std::pair<double, double>> neg = {
      {0.1, 1.0}, {1.0, -2.0}, {2.0, 1.0}, {3.0, 0.5}};
  CHECK_THROWS_AS(fit_power_law(neg), DomainError);
}

TEST_CASE("default calibration inputs are sane") {
  CHECK(default_spread_energy_eV() > 0.0);
  const auto grid = default_spread_grid_eV();
  REQUIRE(grid.size() >= 4);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  // spread sweep stays unclipped at the default energy
  for (double dE : grid) {
    const auto p = map_energy_params(default_spread_energy_eV(), dE);
    CHECK_FALSE(p.clipped);
  }
  const auto pairs = default_lifetime_pairs();
  REQUIRE(pairs.size() >= 5);
  double lo = 1e300, hi = 0.0;
  for (const auto& [e, de] : pairs) {
    lo = std::min(lo, e * de);
    hi = std::max(hi, e * de);
  }
  CHECK(hi / lo > 50.0);  // abscissa spans > 1.7 decades
}
