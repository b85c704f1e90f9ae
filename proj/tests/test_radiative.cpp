#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "whitpack/constants.hpp"
#include "whitpack/radiative.hpp"

#ifdef WPTEST_HAVE_GSL
#include <gsl/gsl_sf_coulomb.h>
#endif

using namespace whitpack;

TEST_CASE("bound shell energies") {
  CHECK(bound_energy_eV(1) == doctest::Approx(-13.605693122994).epsilon(1e-12));
  CHECK(bound_energy_eV(2) == doctest::Approx(-3.4014232807485).epsilon(1e-12));
  CHECK(bound_energy_eV(4) / bound_energy_eV(2) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(bound_energy_eV(0), DomainError);
}

TEST_CASE("radial functions are normalized and mutually orthogonal") {
  for (int n : {2, 3, 8}) {
    const double rc = bound_radial_cutoff_a0(n);
    const double norm = wptest::tanh_sinh(
        [n](double r) {
          const double v = bound_radial(n, r);
          return v * v * r * r;
        },
        0.0, rc);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
  }
  const double cross = wptest::tanh_sinh(
      [](double r) {
        return bound_radial(2, r) * bound_radial(3, r) * r * r;
      },
      0.0, bound_radial_cutoff_a0(3));
  CHECK(std::abs(cross) < 1e-8);
}

TEST_CASE("radial function boundary and tail behavior") {
  for (int n : {2, 5}) {
    CHECK(bound_radial(n, 0.0) == 0.0);
    const double rc = bound_radial_cutoff_a0(n);
    // the cutoff leaves only a negligible normalization tail
    const double tail = wptest::tanh_sinh(
        [n](double r) {
          const double v = bound_radial(n, r);
          return v * v * r * r;
        },
        rc, 2.0 * rc);
    CHECK(tail < 1e-8);
  }
  CHECK_THROWS_AS(bound_radial(1, 1.0), DomainError);  // no (1,1) shell
  CHECK_THROWS_AS(bound_radial(2, -1.0), DomainError);
}

#ifdef WPTEST_HAVE_GSL
TEST_CASE("radial functions against the GSL hydrogenic reference") {
  for (int n : {2, 3, 5}) {
    for (double r : {0.5, 2.0, 8.0, 20.0}) {
      gsl_sf_result ref;
      if (gsl_sf_hydrogenicR_e(n, 1, 1.0, r, &ref) != 0) continue;
      CHECK(bound_radial(n, r) ==
            doctest::Approx(ref.val).epsilon(1e-11));
    }
  }
}
#endif

TEST_CASE("first-order time kernel") {
  CHECK(time_kernel(0.7, 0.0) == std::complex<double>(0.0, 0.0));
  CHECK(time_kernel(0.0, 2.5) == std::complex<double>(2.5, 0.0));

  // |T|^2 = t^2 sinc^2(Delta t / 2)
  const double d = 1.3, t = 4.0;
  const double phase = 0.5 * d * t;
  const double expected = t * t * std::pow(std::sin(phase) / phase, 2);
  CHECK(std::norm(time_kernel(d, t)) ==
        doctest::Approx(expected).epsilon(1e-12));

  // first zero of the kernel at Delta t = 2 pi
  const double dz = 2.0 * M_PI / t;
  CHECK(std::abs(time_kernel(dz, t)) < 1e-14);

  // the series branch agrees with the direct formula at the switch point to
  // within the direct formula's own cancellation error (~eps * t / |u|)
  const double du = 0.99e-6 / t;
  const std::complex<double> direct =
      (std::exp(std::complex<double>(0.0, du * t)) - 1.0) /
      std::complex<double>(0.0, du);
  CHECK(std::abs(time_kernel(du, t) - direct) < 2e-9 * t);
}

TEST_CASE("transition elements are purely imaginary and shell-ordered") {
  // at kappa ~ 0.5 the sequence |M_n| decreases strictly from n=2; at very
  // low kappa the maximum shifts to n=3, so only the high-n falloff is
  // universal
  double prev = 1e300;
  for (int n = 2; n <= 8; ++n) {
    const std::complex<double> mn = radial_matrix_element(n, 0.5);
    CHECK(mn.real() == 0.0);
    CHECK(std::abs(mn) > 0.0);
    CHECK(std::abs(mn) < prev);
    prev = std::abs(mn);
  }
  const double low2 = std::abs(radial_matrix_element(2, 0.1356));
  for (int n : {5, 6, 7}) {
    CHECK(low2 > std::abs(radial_matrix_element(n, 0.1356)));
  }
  CHECK_THROWS_AS(radial_matrix_element(2, 1e-5), DomainError);
}

TEST_CASE("decay pipeline basics on a coarse model") {
  const auto p = map_energy_params(1.0, 0.01);
  DecayModel model(p, {}, 24);

  CHECK(model.probability(2, 0.0) == 0.0);
  CHECK(model.packet_norm() > 0.0);

  // monotone growth of the n=2 channel
  double prev = 0.0;
  for (double t : {0.5, 1.5, 3.0, 6.0}) {
    const double pn = model.probability(2, t);
    CHECK(pn > prev * (1.0 - 1e-12));
    CHECK(pn > 0.0);
    prev = pn;
  }

  // the three m channels of one shell are equivalent
  const double t = 2.0;
  const double p0 = model.probability_m(2, 0, t);
  const double pm = model.probability_m(2, -1, t);
  const double pp = model.probability_m(2, 1, t);
  CHECK(std::abs(pm - p0) <= 1e-6 * p0);
  CHECK(std::abs(pp - p0) <= 1e-6 * p0);
  CHECK(model.probability(2, t) ==
        doctest::Approx(pm + p0 + pp).epsilon(1e-12));
  CHECK_THROWS_AS(model.probability_m(2, 2, t), DomainError);

  // kernel accessor: one sample per kappa node, imaginary elements
  const auto& ker = model.kernel(2);
  REQUIRE(ker.size() == 24);
  for (const auto& s : ker) {
    CHECK(s.matrix_element.real() == 0.0);
    CHECK(s.omega_n == doctest::Approx(bound_energy_eV(2) / HBAR_EV_FS));
  }
}

TEST_CASE("photon spectrum peaks at the energy-conserving frequency") {
  const auto p = map_energy_params(1.0, 0.01);
  DecayModel model(p, {}, 24);
  const double t = 5.0;
  // E - E_2 in frequency units
  const double omega_star = (1.0 - bound_energy_eV(2)) / HBAR_EV_FS;
  const double lobe = 2.0 * M_PI / t;

  double best_w = 0.0, best_v = -1.0;
  for (double w = omega_star - 3.0 * lobe; w <= omega_star + 3.0 * lobe;
       w += lobe / 40.0) {
    const double v = model.frequency_integrand(2, w, t);
    if (v > best_v) {
      best_v = v;
      best_w = w;
    }
  }
  CHECK(std::abs(best_w - omega_star) < lobe);
}

TEST_CASE("decay table accumulates shells and matches the total") {
  const auto p = map_energy_params(1.0, 0.01);
  DecayModel model(p, {}, 16);
  const std::vector<double> times = {0.0, 1.0, 3.0};
  const auto table = model.table(times, 6, 1e-2);
  REQUIRE(table.times.size() == times.size());
  CHECK(table.n_max_used >= 2);
  CHECK(table.per_n.count(2) == 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    double acc = 0.0;
    for (const auto& [n, curve] : table.per_n) acc += curve[i];
    CHECK(table.total[i] == doctest::Approx(acc).epsilon(1e-12));
  }
  CHECK(table.total[0] == 0.0);
  CHECK(table.total[2] > table.total[1]);

  // n = 2 is the single largest channel (plurality, ~37% of the budget;
  // the per-shell fractions fall off monotonically toward high n)
  const double p2 = table.per_n.at(2)[2];
  CHECK(p2 > 0.3 * table.total[2]);
  for (const auto& [n, curve] : table.per_n) {
    if (n != 2) CHECK(p2 > curve[2]);
  }
}
