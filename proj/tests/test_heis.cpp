#include <doctest.h>

#include <cmath>

#include "ctspec/heis_model.hpp"

using namespace ctspec;

TEST_CASE("anisotropic homogeneity") {
  const HeisKernel k;
  for (double lam : {0.5, 2.0}) {
    const HomogeneityReport h = homogeneity_check(k, lam);
    CHECK(h.points == 20);
    CHECK(h.max_deviation < 1e-6);
  }
  CHECK_THROWS_AS(homogeneity_check(k, 0.0), std::domain_error);
}

TEST_CASE("kernel symmetries") {
  const HeisKernel k;
  const double p = k(1.0, 0.6, 0.8, 0.3);
  CHECK(p > 0.0);
  // rotation about the vertical axis and z -> -z
  CHECK(k(1.0, 1.0, 0.0, 0.3) == doctest::Approx(p).epsilon(1e-12));
  CHECK(k(1.0, 0.6, 0.8, -0.3) == doctest::Approx(p).epsilon(1e-12));
  CHECK(k.at(1.0, 1.0, 0.3) == doctest::Approx(p).epsilon(1e-12));
  // the origin is the maximum
  CHECK(k(1.0, 0.0, 0.0, 0.0) > p);
  CHECK_THROWS_AS(k(0.0, 1.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(k(-1.0, 1.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("decay along a horizontal ray") {
  const DecayReport d = decay_on_ray(HeisKernel{});
  CHECK(d.values.size() == 5u);
  CHECK(d.monotone);
  CHECK(d.superpolynomial);
}

TEST_CASE("unit mass") {
  CHECK(total_mass(HeisKernel{}, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}
