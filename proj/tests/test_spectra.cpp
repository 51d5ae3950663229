#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "ctspec/spectra.hpp"

using namespace ctspec;

namespace {
RVec vec(std::initializer_list<double> v) {
  RVec r(v.size());
  int i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

const Holonomy kTwist{0.3, 0.1, 0.45};
const Holonomy kTwist2{0.2, 0.35, 0.15};
}  // namespace

TEST_CASE("eigensolve rejects bad input") {
  CHECK_THROWS_AS(eigensolve(CMat::Zero(2, 3)), std::invalid_argument);
  CMat a = CMat::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(eigensolve(a), std::invalid_argument);
  const SpectralData s = eigensolve(CMat::Identity(3, 3) * 2.0, SolveMode::LowestK, 2);
  CHECK(s.values.size() == 2);
  CHECK(s.values(0) == doctest::Approx(2.0));
}

TEST_CASE("zeta scaling on a synthetic spectrum") {
  const RVec s = vec({1.0, 4.0});
  const double eps = 0.5;
  CHECK(zeta(s / (eps * eps), 1.0) == doctest::Approx(0.3125).epsilon(1e-14));
  CHECK(zeta(s / (eps * eps), 1.0) == doctest::Approx(std::pow(eps, 2.0) * zeta(s, 1.0)).epsilon(1e-14));
  const double e = std::exp(1.0);
  CHECK(zeta_prime0(vec({e, e})) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(zeta_prime0(vec({0.0, e})) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(nonzero_count(vec({0.0, 1e-12, 1.0})) == 1);
  CHECK(kernel_ambiguous(vec({5e-9, 1.0})));
  CHECK_FALSE(kernel_ambiguous(vec({0.0, 1.0})));
  // ζ'(cA)(0) = ζ'(A)(0) - ζ(A)(0) log c on finite spectra
  const RVec a = vec({0.5, 2.0, 7.0});
  CHECK(zeta_prime0(3.0 * a) == doctest::Approx(zeta_prime0(a) - 3.0 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("Kitaoka identity on synthetic spectra") {
  const KitaokaResult k = kitaoka_identity(2, {vec({1.0, 2.0}), vec({3.0})}, vec({5.0}));
  CHECK(k.closed_form == doctest::Approx(-4.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(k.residual < 1e-12);
  const KitaokaResult k3 = kitaoka_identity(3, {vec({0.7, 1.3}), vec({2.0, 0.0}), vec({4.5})}, vec({1.1, 9.0}));
  CHECK(k3.residual < 1e-12);
  CHECK_THROWS_AS(kitaoka_identity(2, {vec({1.0})}, vec({1.0})), std::invalid_argument);
}

TEST_CASE("Richardson extrapolation in eps^2") {
  std::vector<double> e{0.4, 0.2, 0.1}, v;
  for (double x : e) v.push_back(3.0 + 2.0 * x * x + 5.0 * std::pow(x, 4));
  CHECK(richardson_eps2(e, v) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(richardson_eps2({0.1}, {}), std::invalid_argument);
}

TEST_CASE("finite part integral") {
  std::vector<double> t, f;
  for (int i = 1; i <= 400; ++i) {
    const double x = i / 400.0;
    t.push_back(x);
    f.push_back(1.0 / x + std::cos(x));
  }
  CHECK(finite_part_integral(t, f, {-1.0}) == doctest::Approx(std::sin(1.0)).epsilon(1e-6));
  std::vector<double> g;
  for (double x : t) g.push_back(2.0 * std::pow(x, -1.5) + x * x);
  // FP ∫₀¹ 2t^{-3/2} = -4
  CHECK(finite_part_integral(t, g, {-1.5}) == doctest::Approx(-4.0 + 1.0 / 3.0).epsilon(1e-6));
  CHECK_THROWS_AS(finite_part_integral({0.0, 0.5}, {1.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("power-law fit") {
  std::vector<double> t, f;
  for (double x : {0.1, 0.2, 0.4, 0.8}) {
    t.push_back(x);
    f.push_back(7.0 * std::pow(x, -1.5));
  }
  CHECK(fit_power(t, f) == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("Branson identity against a matrix-exponential oracle") {
  const DerhamComplex cx(make_grid(4, kTwist));
  const double t = 0.7;
  double lhs = 0.0, rhs = 0.0;
  for (int b = 0; b < cx.num_blocks(); ++b) {
    const RuminBlock r = build_rumin(cx.block(b));
    const CMat K = r.coclosed_basis();
    const CMat dd = K.adjoint() * r.dstar_d() * K;
    lhs += (-t * dd).exp().trace().real();
    const CMat l0 = r.laplacian(0);
    rhs += (-t * r.laplacian(1)).exp().trace().real() - (-t * l0 * l0).exp().trace().real();
  }
  // the twist is acyclic, so there is no kernel correction
  const BransonReport rep = branson_check(rumin_spectra(cx), t);
  CHECK(rep.lhs == doctest::Approx(lhs).epsilon(1e-10));
  CHECK(rep.rhs == doctest::Approx(rhs).epsilon(1e-10));
  CHECK(rep.residual < 1e-8);
}

TEST_CASE("torsion weights") {
  for (int p = 0; p < 4; ++p) CHECK(torsion_weight(TorsionConvention::DeRham, p) == p);
  CHECK(torsion_weight(TorsionConvention::RuminSeshadri, 1) == 1);
  CHECK(torsion_weight(TorsionConvention::RuminSeshadri, 2) == 3);
  CHECK(torsion_weight(TorsionConvention::Tilde, 0) == 1);
  CHECK(torsion_weight(TorsionConvention::Tilde, 1) == 1);
  CHECK(torsion_weight(TorsionConvention::Tilde, 2) == 2);
  CHECK(torsion_weight(TorsionConvention::Tilde, 3) == 5);
  CHECK(torsion_weight(TorsionConvention::TildeAsPrinted, 3) == 1);
}

// Frozen values from an independent dense prototype (N = 8, first twist).
TEST_CASE("frozen Rumin determinants and torsion") {
  const RuminSpectra rs = rumin_spectra(DerhamComplex(make_grid(8, kTwist)));
  CHECK(log_det(rs.half0) == doctest::Approx(1053.2898848971915).epsilon(1e-10));
  CHECK(log_det(rs.dstard) == doctest::Approx(1825.3350238953465).epsilon(1e-10));
  CHECK(torsion_rumin(rs, TorsionConvention::RuminSeshadri).log_at == doctest::Approx(281.2447458990366).epsilon(1e-10));
  const RuminSpectra rs2 = rumin_spectra(DerhamComplex(make_grid(8, kTwist2)));
  CHECK(torsion_rumin(rs2, TorsionConvention::RuminSeshadri).log_at == doctest::Approx(281.24474589903616).epsilon(1e-10));
}

TEST_CASE("serial and parallel Rumin spectra agree") {
  const DerhamComplex cx(make_grid(6, kTwist));
  const RuminSpectra a = rumin_spectra(cx, true), b = rumin_spectra(cx, false);
  for (int p = 0; p < 4; ++p) CHECK(a.laplacian[p] == b.laplacian[p]);
  CHECK(a.dstard_e4 == b.dstard_e4);
}

TEST_CASE("middle degree count and exact branch") {
  const DerhamComplex cx(make_grid(8, {0, 0, 0}));
  const MiddleCount m = middle_count(cx, 0.05, 10.0);
  CHECK(m.scaled_count == 76);
  CHECK(m.e4_count == 76);
  CHECK(m.ginf_dim == 3);
  CHECK(exact_branch_gap(cx, 0.2) < 1e-9);
}

TEST_CASE("heat trace and eta") {
  const RVec s = vec({0.0, 1.0, 2.0});
  CHECK(heat_trace(s, 1.0) == doctest::Approx(1.0 + std::exp(-1.0) + std::exp(-2.0)));
  CHECK_THROWS_AS(heat_trace(s, 0.0), std::invalid_argument);
  const RVec e = vec({-2.0, 0.0, 1.0, 3.0});
  CHECK(eta_heat(e, 0.5) == doctest::Approx(-std::erfc(2.0 * std::sqrt(0.5)) + std::erfc(std::sqrt(0.5)) +
                                           std::erfc(3.0 * std::sqrt(0.5))));
  CHECK(eta_heat(vec({-1.0, 1.0}), 0.3) == doctest::Approx(0.0));
}

TEST_CASE("small-t fit on a truncated flat 2-torus spectrum") {
  // Tr e^{-tΔ} ~ π/t on the square torus
  const int K = 40;
  RVec s((2 * K + 1) * (2 * K + 1));
  int i = 0;
  for (int m = -K; m <= K; ++m)
    for (int n = -K; n <= K; ++n) s(i++) = double(m * m + n * n);
  const RegimeFit f = fit_small_t(s);
  CHECK(f.valid);
  CHECK(f.points >= 5);
  CHECK(f.t_min >= 20.0 / s.maxCoeff() - 1e-12);
  CHECK(f.exponent == doctest::Approx(-1.0).epsilon(0.05));
  RVec tiny(3);
  tiny << 1.0, 2.0, 3.0;
  CHECK_FALSE(fit_small_t(tiny).valid);
}

TEST_CASE("relative torsion error paths") {
  CHECK_THROWS_AS(relative_torsion(4, kTwist, kTwist2, TorsionConvention::Tilde, TorsionSource::DeRham),
                  std::invalid_argument);
  CHECK_THROWS_AS(relative_torsion(4, {0, 0, 0}, kTwist2, TorsionConvention::RuminSeshadri, TorsionSource::Rumin),
                  std::invalid_argument);
  CHECK_THROWS_AS(eps_sweep(make_grid(4, {0, 0, 0}), 0, {0.1, 0.2}, 3), std::invalid_argument);
  CHECK_THROWS_AS(eps_sweep(make_grid(4, {0, 0, 0}), 4, {0.2, 0.1}, 3), std::out_of_range);
}
