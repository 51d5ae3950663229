#include <doctest.h>

#include "ctspec/spectral_sequence.hpp"
#include "ctspec/suites.hpp"

using namespace ctspec;

namespace {
EpsFamily family(int kx, int ky, const Holonomy& al = {0, 0, 0}) {
  const DerhamComplex cx(make_grid(8, al));
  return eps_expansion(cx.block_at({kx, ky, kx + al[0], ky + al[1]}));
}

CVec mix(const CMat& basis) {
  CVec c(basis.cols());
  for (int i = 0; i < c.size(); ++i) c(i) = cplx(1.0 + 0.1 * i, 0.3 - 0.05 * i);
  return basis * c / c.norm();
}
}  // namespace

TEST_CASE("Laurent pieces reproduce d_eps - delta_eps and the Laplacian") {
  const EpsFamily f = family(2, -1, {0.3, 0.1, 0.45});
  for (double e : {0.7, 0.2}) {
    const CMat de = d_eps(f.blk, e), dl = delta_eps(f.blk, e);
    CHECK((f.reconstruct(e) - (de - dl)).norm() < 1e-11 * de.norm());
    CMat lap = CMat::Zero(f.dim(), f.dim());
    for (int i = -2; i <= 2; ++i) lap -= std::pow(e, i) * f.A_at(i);
    CHECK((lap - f.laplacian(e)).norm() < 1e-10 * f.laplacian(e).norm());
  }
}

TEST_CASE("filtration is nested with the known degree-1 dimensions") {
  const auto rows = filtration_table(make_grid(8, {0, 0, 0}), 1);
  const std::vector<int> expect{1536, 1024, 1024, 513, 513, 3, 3};
  REQUIRE(rows.size() == expect.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].dim == expect[i]);
    CHECK_FALSE(rows[i].ambiguous);
  }
}

TEST_CASE("graded decomposition is an orthogonal splitting") {
  const EpsFamily f = family(1, 0);
  for (int p = 0; p < 4; ++p) {
    const GradedDecomposition g = graded_decomposition(f, p);
    const CMat sum = g.G0 + g.G2 + g.G4 + g.Ginf;
    const auto ix = f.blk.indices(p);
    CHECK(std::abs(sum.trace().real() - double(ix.size())) < 1e-9);
    CHECK((sum * sum - sum).norm() < 1e-9);
    CHECK((g.G0 * g.G2).norm() < 1e-9);
    CHECK((g.G2 * g.G4).norm() < 1e-9);
    CHECK((g.G4 * g.Ginf).norm() < 1e-9);
    CHECK(g.dims[0] + g.dims[1] + g.dims[2] + g.dims[3] == int(ix.size()));
  }
}

TEST_CASE("the E3 vanishing defect is zero on model blocks") {
  for (const auto& [kx, ky] : {std::pair{1, 0}, std::pair{-2, 3}}) {
    const EpsFamily f = family(kx, ky, {0.3, 0.1, 0.45});
    for (int p = 0; p < 4; ++p) CHECK(e3_vanishing_defect(f, p) < 1e-9);
  }
}

TEST_CASE("Phi2 extension is first order on another block") {
  const EpsFamily f = family(0, 1, {0.3, 0.1, 0.45});
  const CVec u = mix(compute_Ek(f, 1, 2).basis);
  const CMat n2 = effective_normal(f, 2, 1).full;
  const PhiExtension ext = phi2(f, u);
  double prev = 0.0;
  for (double e : {0.1, 0.05, 0.025}) {
    const double r = (f.laplacian(e) * ext(e) - n2 * u).norm();
    if (prev > 0.0) CHECK(r / prev == doctest::Approx(0.5).epsilon(0.2));
    prev = r;
  }
}

TEST_CASE("extension rejects bad seeds") {
  const EpsFamily f = family(1, 0);
  CHECK_THROWS_AS(phi2(f, CVec::Zero(f.dim())), std::invalid_argument);
  CVec mixed = CVec::Zero(f.dim());
  mixed(0) = 1.0;
  mixed(f.blk.offset(1)) = 1.0;
  CHECK_THROWS_AS(phi2(f, mixed), std::invalid_argument);
  // a vertical degree-1 vector is outside E₂
  CVec v = CVec::Zero(f.dim());
  v(f.blk.indices(1, 1).front()) = 1.0;
  CHECK_THROWS_AS(phi4(f, v), std::invalid_argument);
  CHECK_THROWS_AS(compute_Ek(f, 4, 1), std::out_of_range);
  CHECK_THROWS_AS(compute_Ek(f, 1, -1), std::out_of_range);
  CHECK_THROWS_AS(effective_normal(f, 3, 1), std::invalid_argument);
}
