#include <doctest.h>

#include "ctspec/linalg.hpp"
#include "ctspec/spectral_sequence.hpp"

using namespace ctspec;

namespace {
CMat random_cmat(int r, int c, unsigned seed) {
  std::srand(seed);
  return CMat::Random(r, c);
}
}  // namespace

TEST_CASE("kernel basis of a rank-deficient product") {
  const CMat a = random_cmat(9, 4, 1) * random_cmat(4, 7, 2);
  const KernelResult k = kernel_basis(a, 1e-9);
  CHECK(k.rank == 4);
  CHECK(k.basis.cols() == 3);
  CHECK((a * k.basis).norm() < 1e-12);
  CHECK((k.basis.adjoint() * k.basis - CMat::Identity(3, 3)).norm() < 1e-12);
  CHECK(k.largest_dropped < 1e-14);
  CHECK(k.smallest_kept > 1e-3);
  CHECK_FALSE(k.ambiguous);
}

TEST_CASE("kernel basis flags a singular value near the cut") {
  RVec s(3);
  s << 1.0, 2e-9, 0.0;
  const CMat a = s.cast<cplx>().asDiagonal();
  CHECK(kernel_basis(a, 1e-9).ambiguous);
}

TEST_CASE("empty operator has the full space as kernel") {
  const KernelResult k = kernel_basis(CMat(0, 5), 1e-9);
  CHECK(k.basis.cols() == 5);
}

TEST_CASE("pseudo-inverse satisfies the Moore-Penrose equations") {
  const CMat a = random_cmat(6, 3, 3) * random_cmat(3, 5, 4);
  const CMat p = pseudo_inverse(a, 1e-10);
  CHECK((a * p * a - a).norm() < 1e-10);
  CHECK((p * a * p - p).norm() < 1e-10);
  CHECK(hermitian_defect(a * p) < 1e-10);
  CHECK(hermitian_defect(p * a) < 1e-10);
}

TEST_CASE("principal angles of known planes") {
  CMat u = CMat::Zero(3, 1), v = CMat::Zero(3, 1);
  u(0, 0) = 1.0;
  const double th = 0.3;
  v(0, 0) = std::cos(th);
  v(1, 0) = std::sin(th);
  CHECK(principal_angle_sines(u, v)(0) == doctest::Approx(std::sin(th)).epsilon(1e-14));
  CHECK(subspace_distance(u, u) < 1e-15);
  CHECK(subspace_distance(u, CMat::Identity(3, 2)) == 1.0);
}

TEST_CASE("probe norm bounds the operator norm from below") {
  RVec d(4);
  d << 3.0, 1.0, 0.5, 0.1;
  const CMat a = d.cast<cplx>().asDiagonal();
  const double est = probe_norm([&](const CVec& x) { return CVec(a * x); }, 4, 64);
  CHECK(est <= 3.0 + 1e-12);
  CHECK(est > 1.5);
}

TEST_CASE("select and embed_rows are inverse on the chosen rows") {
  const CMat a = random_cmat(5, 5, 7);
  const std::vector<int> rows{1, 3}, cols{0, 4};
  const CMat s = select(a, rows, cols);
  CHECK(s(1, 0) == a(3, 0));
  const CMat e = embed_rows(s, rows, 5);
  CHECK(e.row(3) == s.row(1));
  CHECK(e.row(0).norm() == 0.0);
}

// Regression: a stacked [a₋₁; Πa₀Π] at N = 8 where a divide-and-conquer SVD returned
// "kernel" vectors with O(1) residual.
TEST_CASE("E3 basis lies in Ker a_{-1} on the block that exposed the SVD defect") {
  const DerhamComplex cx(make_grid(8, {0, 0, 0}));
  const EpsFamily fam = eps_expansion(cx.block_at({-4, -1, -4.0, -1.0}));
  const Subspace e3 = compute_Ek(fam, 1, 3), e4 = compute_Ek(fam, 1, 4);
  CHECK((fam.am1 * e3.basis).norm() < 1e-12);
  CHECK(subspace_distance(e3.basis, e4.basis) < 1e-9);
}
