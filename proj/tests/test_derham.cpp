#include <doctest.h>

#include <algorithm>

#include "ctspec/derham.hpp"
#include "ctspec/linalg.hpp"
#include "ctspec/reference.hpp"
#include "ctspec/spectra.hpp"

using namespace ctspec;

namespace {
DerhamBlock block(int N, int kx, int ky, const Holonomy& al = {0, 0, 0}) {
  const DerhamComplex cx(make_grid(N, al));
  return cx.block_at({kx, ky, kx + al[0], ky + al[1]});
}
}  // namespace

TEST_CASE("layout ranks and tags") {
  CHECK(FormBundleLayout::horizontal_rank(0) == 1);
  CHECK(FormBundleLayout::horizontal_rank(1) == 2);
  CHECK(FormBundleLayout::horizontal_rank(2) == 1);
  CHECK(FormBundleLayout::horizontal_rank(3) == 0);
  CHECK(FormBundleLayout::tag(1, 2) == 1);
  CHECK(FormBundleLayout::tag(2, 0) == 0);
  CHECK_THROWS_AS(FormBundleLayout::tag(1, 3), std::out_of_range);
  const DerhamBlock b = block(4, 0, 0);
  CHECK(b.dim() == 32);
  CHECK(b.offset(2) == 16);
  CHECK(b.all_indices(1).size() == 16u);
}

TEST_CASE("d of e^{ix} in the frame basis") {
  const int N = 8;
  const DerhamBlock b = block(N, 1, 0);
  const CVec f = CVec::Ones(N);
  const CVec df = b.d[0] * f;
  const Grid g = make_grid(N, {0, 0, 0});
  for (int j = 0; j < N; ++j) {
    const double z = g.node(j);
    CHECK(std::abs(df(j) - kI * (-std::sin(z))) < 1e-13);
    CHECK(std::abs(df(N + j)) < 1e-13);
    CHECK(std::abs(df(2 * N + j) - kI * std::cos(z)) < 1e-13);
  }
}

TEST_CASE("d squares to zero on twisted blocks") {
  for (const auto& [kx, ky] : {std::pair{0, 0}, std::pair{2, -1}, std::pair{-4, 3}}) {
    const DerhamBlock b = block(8, kx, ky, {0.3, 0.1, 0.45});
    CHECK((b.d[1] * b.d[0]).norm() < 1e-12);
    CHECK((b.d[2] * b.d[1]).norm() < 1e-12);
  }
}

TEST_CASE("bidegree split reassembles d") {
  const DerhamBlock b = block(8, 1, 2, {0.3, 0.1, 0.45});
  const BidegreeSplit s = split_bidegree(b);
  CHECK((s.reassemble() - b.total()).norm() < 1e-12);
  CHECK((s.Ph + s.Pv - CMat::Identity(b.dim(), b.dim())).norm() == 0.0);
}

TEST_CASE("chirality phases and signature operator") {
  const auto& c = chirality_phases();
  CHECK(c[0] == kI);
  CHECK(c[1] == kI);
  CHECK(c[2] == -kI);
  CHECK(c[3] == -kI);
  const DerhamBlock b = block(6, 1, -1, {0.3, 0.1, 0.45});
  const CMat t = chirality(b);
  CHECK((t * t - CMat::Identity(b.dim(), b.dim())).norm() < 1e-12);
  for (double e : {1.0, 0.3}) {
    const CMat S = signature_operator(b, e);
    CHECK(hermitian_defect(S) < 1e-12);
    CHECK((S * S - laplacian_total(b, e)).norm() / laplacian_total(b, e).norm() < 1e-12);
  }
}

TEST_CASE("hodge Laplacian is the degree block of the total Laplacian") {
  const DerhamBlock b = block(6, 2, 1);
  const CMat L = laplacian_total(b, 0.4);
  for (int p = 0; p < 4; ++p) {
    const auto ix = b.indices(p);
    CHECK((select(L, ix, ix) - hodge_laplacian(b, 0.4, p)).norm() < 1e-11);
  }
  CHECK_THROWS_AS(d_eps(b, 0.0), std::invalid_argument);
}

TEST_CASE("block spectra agree with the full-grid reference") {
  for (const Holonomy& al : {Holonomy{0, 0, 0}, Holonomy{0.3, 0.1, 0.45}}) {
    const Grid g = make_grid(4, al);
    const DerhamComplex cx(g);
    for (int p = 0; p < 4; ++p) {
      const RVec a = derham_spectrum(cx, 0.5, p);
      const RVec r = reference::laplacian_spectrum_full(g, 0.5, p);
      REQUIRE(a.size() == r.size());
      CHECK((a - r).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, r.maxCoeff()));
    }
  }
}

TEST_CASE("parallel and serial block spectra are identical") {
  const DerhamComplex cx(make_grid(6, {0.3, 0.1, 0.45}));
  for (int p = 0; p < 4; ++p) CHECK(derham_spectrum(cx, 0.3, p, false, true) == derham_spectrum(cx, 0.3, p, false, false));
}

TEST_CASE("reference rejects large grids") {
  CHECK_THROWS_AS(reference::laplacian_spectrum_full(make_grid(10, {0, 0, 0}), 1.0, 0), std::invalid_argument);
}
