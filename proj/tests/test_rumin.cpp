#include <doctest.h>

#include "ctspec/linalg.hpp"
#include "ctspec/rumin.hpp"

using namespace ctspec;

namespace {
DerhamBlock block(int N, int kx, int ky, const Holonomy& al = {0, 0, 0}) {
  const DerhamComplex cx(make_grid(N, al));
  return cx.block_at({kx, ky, kx + al[0], ky + al[1]});
}
}  // namespace

// Hand computation: with η² = dz and θ = cos z dx + sin z dy,
// D(e^{ix} η²) = θ̂∧(e^{ix} sin²z η¹ + 2i e^{ix} cos z η²).
TEST_CASE("D on e^{ix} dz") {
  const int N = 8;
  const RuminBlock r = build_rumin(block(N, 1, 0));
  CVec u = CVec::Zero(2 * N);
  u.tail(N).setOnes();
  const CVec v = r.D * u;
  const Grid g = make_grid(N, {0, 0, 0});
  for (int j = 0; j < N; ++j) {
    const double z = g.node(j);
    CHECK(std::abs(v(j) - std::sin(z) * std::sin(z)) < 1e-12);
    CHECK(std::abs(v(N + j) - 2.0 * kI * std::cos(z)) < 1e-12);
  }
}

TEST_CASE("D vanishes on e^{iz} eta^1 and e^{iz} eta^2") {
  const int N = 8;
  const RuminBlock r = build_rumin(block(N, 0, 0));
  const Grid g = make_grid(N, {0, 0, 0});
  for (int c = 0; c < 2; ++c) {
    CVec u = CVec::Zero(2 * N);
    for (int j = 0; j < N; ++j) u(c * N + j) = std::exp(kI * g.node(j));
    CHECK((r.D * u).norm() < 1e-12);
  }
}

TEST_CASE("Rumin complex property") {
  for (const Holonomy& al : {Holonomy{0, 0, 0}, Holonomy{0.3, 0.1, 0.45}}) {
    const RuminBlock r = build_rumin(block(8, 2, -1, al));
    CHECK((r.D * r.d0).norm() < 1e-11 * std::max(1.0, r.D.norm() * r.d0.norm()));
    CHECK((r.d2 * r.D).norm() < 1e-11 * std::max(1.0, r.D.norm() * r.d2.norm()));
    for (int p = 0; p < 4; ++p) CHECK(hermitian_defect(r.laplacian(p)) < 1e-12);
  }
}

TEST_CASE("coclosed basis is annihilated by the adjoint of d0") {
  const RuminBlock r = build_rumin(block(8, 1, 1, {0.3, 0.1, 0.45}));
  const CMat k = r.coclosed_basis();
  CHECK(k.cols() == 2 * 8 - 8);
  CHECK((r.d0.adjoint() * k).norm() < 1e-10);
}

TEST_CASE("fibre pseudo-inverse") {
  const DerhamBlock b = block(8, 1, 2);
  const CMat a = a_minus1(b);
  CHECK(hermitian_defect(kI * a) < 1e-14);  // skew-Hermitian
  const FibreInverse f = pseudo_inverse_a(a);
  CHECK((a * f.pinv * a - a).norm() < 1e-10);
  CHECK((f.pinv * a * f.pinv - f.pinv).norm() < 1e-10);
  CHECK((f.pi_ker * f.pi_ker - f.pi_ker).norm() < 1e-10);
  CHECK((a * f.pi_ker).norm() < 1e-10);
  CHECK_FALSE(f.unstable);
}

TEST_CASE("Rumin star and error paths") {
  const CMat s = rumin_star(4);
  CHECK((s.adjoint() * s - CMat::Identity(8, 8)).norm() < 1e-15);
  CHECK_THROWS_AS(kitaoka_factor(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(kitaoka_factor(1, 2), std::invalid_argument);
  CHECK(kitaoka_factor(1, 0) == doctest::Approx(1.0));
  CHECK(kitaoka_factor(3, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(d_rumin(block(4, 0, 0), 1), std::invalid_argument);
}

TEST_CASE("middle signature blocks are Hermitian") {
  const RuminBlock r = build_rumin(block(8, 1, -2, {0.3, 0.1, 0.45}));
  const auto s = rumin_signature_blocks(r);
  CHECK(hermitian_defect(s[0]) < 1e-10);
  CHECK(hermitian_defect(s[1]) < 1e-10);
}
