#include <doctest.h>

#include <cmath>

#include "ctspec/geometry.hpp"

using namespace ctspec;

TEST_CASE("model frame and contact form") {
  const ContactModel m = build_t3_model();
  for (double z : {0.0, 0.7, 2.9}) {
    const Eigen::Vector3d th = m.theta(z);
    CHECK(th(0) == doctest::Approx(std::cos(z)));
    CHECK(th(1) == doctest::Approx(std::sin(z)));
    CHECK(std::abs(th(2)) < 1e-15);
    // θ(R) = 1, θ(e1) = θ(e2) = 0
    const Eigen::Matrix3d f = m.frame(z);
    CHECK(th.dot(f.row(2)) == doctest::Approx(1.0));
    CHECK(std::abs(th.dot(f.row(0))) < 1e-15);
    CHECK(std::abs(th.dot(f.row(1))) < 1e-15);
    // θ∧dθ = -dx∧dy∧dz for this θ
    CHECK(m.contact_volume(z) == doctest::Approx(-1.0));
  }
}

TEST_CASE("structure constants match spectral brackets") {
  const GeometryCheck g = check_model(build_t3_model(), make_grid(8, {0, 0, 0}));
  CHECK(g.brackets < 1e-12);
  CHECK(g.reeb_contraction < 1e-12);
  CHECK(g.coframe_duality < 1e-12);
  CHECK(g.horizontal_metric < 1e-12);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(5, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, {1.0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, {-0.1, 0, 0}), std::invalid_argument);
  CHECK_FALSE(make_grid(8, {0, 0, 0}).acyclic());
  CHECK(make_grid(8, {0, 0, 0.5}).acyclic());
}

TEST_CASE("twisted spectral derivative is exact on resolved modes") {
  const Grid g = make_grid(8, {0, 0, 0.25});
  const CMat dz = g.derivative(2);
  for (int k : {-3, 0, 2}) {
    CVec f(8), df(8);
    for (int j = 0; j < 8; ++j) {
      const double z = g.node(j);
      f(j) = std::exp(kI * double(k) * z);
      df(j) = kI * (k + 0.25) * f(j);
    }
    CHECK((dz * f - df).norm() < 1e-12);
  }
}

TEST_CASE("unitary DFT") {
  const CMat F = unitary_dft(6);
  CHECK((F.adjoint() * F - CMat::Identity(6, 6)).norm() < 1e-13);
}

namespace {

// Levi-Civita symbols of g_ε in the frame (εR, e1, e2) from coordinate Christoffels with
// central differences in z; independent of the frame Koszul routine.
double fd_gamma(const ContactModel& m, double eps, double z, int k, int i, int j) {
  const double h = 1e-4;
  auto W = [&](double zz) {
    const Eigen::Matrix3d f = m.frame(zz);
    Eigen::Matrix3d w;
    w.row(0) = eps * f.row(2);
    w.row(1) = f.row(0);
    w.row(2) = f.row(1);
    return w;
  };
  auto g = [&](double zz) { return m.metric(zz, eps); };
  const Eigen::Matrix3d dg = (g(z + h) - g(z - h)) / (2 * h);
  const Eigen::Matrix3d gi = g(z).inverse();
  // Γ^μ_{νρ}: only ∂_z of g is nonzero
  auto chris = [&](int mu, int nu, int rho) {
    double s = 0.0;
    for (int sg = 0; sg < 3; ++sg) {
      const double a = (nu == 2 ? dg(sg, rho) : 0.0) + (rho == 2 ? dg(sg, nu) : 0.0) - (sg == 2 ? dg(nu, rho) : 0.0);
      s += 0.5 * gi(mu, sg) * a;
    }
    return s;
  };
  const Eigen::Matrix3d w = W(z), dw = (W(z + h) - W(z - h)) / (2 * h);
  Eigen::Vector3d v;  // ∇_{W_i} W_j in coordinates
  for (int mu = 0; mu < 3; ++mu) {
    double s = w(i, 2) * dw(j, mu);
    for (int nu = 0; nu < 3; ++nu)
      for (int rho = 0; rho < 3; ++rho) s += w(i, nu) * w(j, rho) * chris(mu, nu, rho);
    v(mu) = s;
  }
  // coefficient on W_k
  const Eigen::Vector3d c = w.transpose().fullPivLu().solve(v);
  return c(k);
}

}  // namespace

TEST_CASE("Laurent fit of the Levi-Civita connection against a finite-difference oracle") {
  const ContactModel m = build_t3_model();
  const ChristoffelTable fit = levi_civita_laurent_fit(m, {1.0, 0.7, 0.5, 0.35, 0.25});
  CHECK(fit.fit_residual < 1e-10);
  for (double eps : {0.6, 0.3})
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(fit.at(k, i, j)(eps) == doctest::Approx(fd_gamma(m, eps, 0.9, k, i, j)).epsilon(1e-6).scale(1.0));
}

TEST_CASE("Tanno closed form against the Laurent fit") {
  const ContactModel m = build_t3_model();
  const ChristoffelTable t = tanno_christoffels(m);
  // [e1, e2] = R, so θ([e1, e2]) = 1
  const double a12 = m.c[2](0, 1);
  CHECK(a12 == doctest::Approx(1.0));
  CHECK(t.at(0, 1, 2).m1 == doctest::Approx(0.5 * a12));
  CHECK(t.at(0, 2, 1).m1 == doctest::Approx(-0.5 * a12));
  CHECK(t.at(2, 1, 0).m1 == doctest::Approx(-0.5 * a12));
  CHECK(t.at(1, 0, 2).m1 == doctest::Approx(0.5 * a12));
  for (int q = 0; q < 27; ++q) CHECK(t.gamma[q].c0 == doctest::Approx(0.0));
  const ChristoffelTable fit = levi_civita_laurent_fit(m, {1.0, 0.7, 0.5, 0.35, 0.25});
  for (int q = 0; q < 27; ++q) {
    CHECK(std::abs(t.gamma[q].m1 - fit.gamma[q].m1) < 1e-8);
    CHECK(std::abs(t.gamma[q].c0 - fit.gamma[q].c0) < 1e-8);
  }
}

TEST_CASE("Levi-Civita frame symbols are metric and torsion free") {
  const ContactModel m = build_t3_model();
  for (double e : {1.0, 0.2}) {
    double spread = 0.0;
    const FrameChristoffel g = levi_civita_frame(m, e, 8, &spread);
    const ConnectionDefects d = connection_defects(m, g, e);
    CHECK(d.metric < 1e-12);
    CHECK(d.torsion < 1e-12);
    CHECK(spread < 1e-12);
  }
}

TEST_CASE("Laurent fit rejects bad eps sets") {
  const ContactModel m = build_t3_model();
  CHECK_THROWS_AS(levi_civita_laurent_fit(m, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(levi_civita_laurent_fit(m, {1.0, 0.5, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(levi_civita_laurent_fit(m, {1.0, 0.5, 0.5}), std::invalid_argument);
}
