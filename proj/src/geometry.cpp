#include "ctspec/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ctspec {

Eigen::Matrix3d ContactModel::frame(double z) const {
  const double c = std::cos(z), s = std::sin(z);
  Eigen::Matrix3d f;
  f << -s, c, 0.0,
       0.0, 0.0, 1.0,
       c, s, 0.0;
  return f;
}

Eigen::Matrix3d ContactModel::coframe(double z) const {
  // the frame is orthonormal for the flat coordinate metric, so the dual rows coincide
  return frame(z).transpose().inverse();
}

Eigen::Vector3d ContactModel::theta(double z) const { return coframe(z).row(2).transpose(); }

Eigen::Matrix3d ContactModel::metric(double z, double eps) const {
  const Eigen::Matrix3d th = coframe(z);
  const Eigen::Vector3d w(1.0, 1.0, 1.0 / (eps * eps));
  return th.transpose() * w.asDiagonal() * th;
}

Eigen::Matrix2d ContactModel::horizontal_metric() const {
  // dθ(X, Y) = -θ([X, Y]) for frame fields with constant θ-pairing
  Eigen::Matrix2d g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double v = 0.0;
      for (int l = 0; l < 2; ++l) v += -c[2](i, l) * J(l, j);
      g(i, j) = v;
    }
  return g;
}

double ContactModel::contact_volume(double z) const {
  const Eigen::Matrix3d th = coframe(z);
  Eigen::Matrix3d ordered;
  ordered.row(0) = th.row(2);
  ordered.row(1) = th.row(0);
  ordered.row(2) = th.row(1);
  // θ∧dθ = dθ(e1, e2) θ∧η¹∧η²
  return -c[2](0, 1) * ordered.determinant();
}

ContactModel build_t3_model() {
  ContactModel m;
  m.J << 0.0, 1.0,
        -1.0, 0.0;
  for (auto& ck : m.c) ck.setZero();
  m.c[2](0, 1) = 1.0;   // [e1, e2] = R
  m.c[2](1, 0) = -1.0;
  m.c[0](1, 2) = 1.0;   // [e2, R] = e1
  m.c[0](2, 1) = -1.0;
  return m;
}

double Grid::weight() const {
  const double h = 2.0 * kPi / N;
  return h * h * h;
}

double Grid::node(int j) const { return 2.0 * kPi * j / N; }

std::vector<double> Grid::nodes() const {
  std::vector<double> z(N);
  for (int j = 0; j < N; ++j) z[j] = node(j);
  return z;
}

std::vector<int> Grid::modes() const {
  std::vector<int> k(N);
  for (int j = 0; j < N; ++j) k[j] = j < N / 2 ? j : j - N;
  return k;
}

CMat unitary_dft(int N) {
  CMat f(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) f(k, j) = std::polar(1.0 / std::sqrt(double(N)), -2.0 * kPi * j * k / N);
  return f;
}

CMat Grid::derivative(int axis) const {
  const CMat f = unitary_dft(N);
  const auto k = modes();
  CVec sym(N);
  for (int j = 0; j < N; ++j) sym(j) = kI * (k[j] + alpha[axis]);
  return f.adjoint() * sym.asDiagonal() * f;
}

bool Grid::acyclic() const { return alpha[0] != 0.0 || alpha[1] != 0.0 || alpha[2] != 0.0; }

Grid make_grid(int N, const Holonomy& alpha) {
  if (N < 4 || N % 2 != 0) throw std::invalid_argument("grid: N must be even and at least 4");
  for (double a : alpha)
    if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("grid: holonomy components must lie in [0,1)");
  Grid g;
  g.N = N;
  g.alpha = alpha;
  return g;
}

namespace {

// Real spectral z-derivative of sampled coefficient functions.
RMat real_dz(int N) {
  Grid g;
  g.N = N;
  return g.derivative(2).real();
}

// Coefficient fields (rows = nodes) of each frame vector, in coordinates.
std::array<RMat, 3> sample_frame(const ContactModel& m, int N, const std::array<double, 3>& scale) {
  std::array<RMat, 3> f;
  for (auto& x : f) x.resize(N, 3);
  for (int j = 0; j < N; ++j) {
    const Eigen::Matrix3d fr = m.frame(2.0 * kPi * j / N);
    for (int a = 0; a < 3; ++a) f[a].row(j) = scale[a] * fr.row(a);
  }
  return f;
}

// [X, Y] at node j for z-dependent coefficient fields.
Eigen::Vector3d bracket(const RMat& x, const RMat& y, const RMat& dx, const RMat& dy, int j) {
  return (x(j, 2) * dy.row(j) - y(j, 2) * dx.row(j)).transpose();
}

}  // namespace

GeometryCheck check_model(const ContactModel& model, const Grid& grid) {
  GeometryCheck out;
  const int N = grid.N;
  const RMat dz = real_dz(N);
  const auto fr = sample_frame(model, N, {1.0, 1.0, 1.0});
  std::array<RMat, 3> dfr;
  for (int a = 0; a < 3; ++a) dfr[a] = dz * fr[a];
  RMat th(N, 3);
  for (int j = 0; j < N; ++j) th.row(j) = model.theta(grid.node(j)).transpose();
  const RMat dth = dz * th;
  out.min_contact_volume = 1e300;
  for (int j = 0; j < N; ++j) {
    const double z = grid.node(j);
    const Eigen::Matrix3d F = model.frame(z), C = model.coframe(z);
    out.coframe_duality = std::max(out.coframe_duality, (C * F.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    out.theta_reeb = std::max(out.theta_reeb, std::abs(th.row(j).dot(F.row(2)) - 1.0));
    // dθ = Σ_ν ∂zθ_ν dz∧dx^ν, so ι_R dθ = R^z ∂zθ - (R·∂zθ) dz
    Eigen::Vector3d contr = F(2, 2) * dth.row(j).transpose();
    contr(2) -= F.row(2).dot(dth.row(j));
    out.reeb_contraction = std::max(out.reeb_contraction, contr.cwiseAbs().maxCoeff());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Eigen::Vector3d expect = Eigen::Vector3d::Zero();
        for (int k = 0; k < 3; ++k) expect += model.c[k](a, b) * F.row(k).transpose();
        const Eigen::Vector3d got = bracket(fr[a], fr[b], dfr[a], dfr[b], j);
        out.brackets = std::max(out.brackets, (got - expect).cwiseAbs().maxCoeff());
      }
    out.min_contact_volume = std::min(out.min_contact_volume, std::abs(model.contact_volume(z)));
  }
  out.horizontal_metric = (model.horizontal_metric() - Eigen::Matrix2d::Identity()).norm();
  return out;
}

namespace {

// Weight exponents: W0 = εR carries one power of ε.
constexpr std::array<int, 3> kWeight{1, 0, 0};
// W index -> model frame index.
constexpr std::array<int, 3> kModelIndex{2, 0, 1};

}  // namespace

ChristoffelTable tanno_christoffels(const ContactModel& model) {
  ChristoffelTable t;
  auto alpha = [&](int i, int j) { return model.c[2](kModelIndex[i], kModelIndex[j]); };
  for (int i = 1; i < 3; ++i)
    for (int j = 1; j < 3; ++j) t.at(0, i, j).m1 = 0.5 * alpha(i, j);
  for (int i = 1; i < 3; ++i)
    for (int k = 1; k < 3; ++k) {
      t.at(k, i, 0).m1 = -0.5 * alpha(i, k);
      t.at(k, 0, i).m1 = -0.5 * alpha(i, k);
    }
  auto h = [&](int a, int b, int c) { return model.c[kModelIndex[c]](kModelIndex[a], kModelIndex[b]); };
  for (int i = 1; i < 3; ++i)
    for (int j = 1; j < 3; ++j)
      for (int k = 1; k < 3; ++k) t.at(k, i, j).c0 = 0.5 * (h(i, j, k) - h(j, k, i) + h(k, i, j));
  // ε^1: -R(g_ij)/2 vanishes because the frame metric is constant
  return t;
}

FrameChristoffel levi_civita_frame(const ContactModel& model, double eps, int N, double* node_spread) {
  if (!(eps > 0.0)) throw std::invalid_argument("levi_civita_frame: eps must be positive");
  const RMat dz = real_dz(N);
  // W fields in coordinates: rows are nodes
  std::array<RMat, 3> w;
  for (auto& x : w) x.resize(N, 3);
  for (int j = 0; j < N; ++j) {
    const Eigen::Matrix3d F = model.frame(2.0 * kPi * j / N);
    w[0].row(j) = eps * F.row(2);
    w[1].row(j) = F.row(0);
    w[2].row(j) = F.row(1);
  }
  std::array<RMat, 3> dw;
  for (int a = 0; a < 3; ++a) dw[a] = dz * w[a];
  FrameChristoffel first{};
  double spread = 0.0;
  for (int j = 0; j < N; ++j) {
    const Eigen::Matrix3d C = model.coframe(2.0 * kPi * j / N);
    Eigen::Matrix3d dual;
    dual.row(0) = C.row(2) / eps;
    dual.row(1) = C.row(0);
    dual.row(2) = C.row(1);
    double cc[3][3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const Eigen::Vector3d br = bracket(w[a], w[b], dw[a], dw[b], j);
        for (int k = 0; k < 3; ++k) cc[a][b][k] = dual.row(k).dot(br);
      }
    FrameChristoffel g{};
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l)
          g[k * 9 + i * 3 + l] = 0.5 * (cc[i][l][k] - cc[l][k][i] + cc[k][i][l]);
    if (j == 0) {
      first = g;
    } else {
      for (int q = 0; q < 27; ++q) spread = std::max(spread, std::abs(g[q] - first[q]));
    }
  }
  if (node_spread) *node_spread = spread;
  return first;
}

ConnectionDefects connection_defects(const ContactModel& model, const FrameChristoffel& g, double eps) {
  ConnectionDefects d;
  auto C = [&](int a, int b, int c) {
    const int e = kWeight[a] + kWeight[b] - kWeight[c];
    return model.c[kModelIndex[c]](kModelIndex[a], kModelIndex[b]) * std::pow(eps, e);
  };
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        d.metric = std::max(d.metric, std::abs(g[k * 9 + i * 3 + j] + g[j * 9 + i * 3 + k]));
        d.torsion = std::max(d.torsion, std::abs(g[k * 9 + i * 3 + j] - g[k * 9 + j * 3 + i] - C(i, j, k)));
      }
  return d;
}

ChristoffelTable levi_civita_laurent_fit(const ContactModel& model, const std::vector<double>& eps, int N) {
  if (eps.size() < 3) throw std::invalid_argument("laurent fit: need at least 3 eps values");
  for (std::size_t a = 0; a < eps.size(); ++a) {
    if (!(eps[a] > 0.0 && eps[a] <= 1.0)) throw std::invalid_argument("laurent fit: eps must lie in (0,1]");
    for (std::size_t b = 0; b < a; ++b)
      if (std::abs(eps[a] - eps[b]) < 1e-6 * std::max(eps[a], eps[b]))
        throw std::invalid_argument("laurent fit: eps values nearly coincide (ill-conditioned)");
  }
  const int m = static_cast<int>(eps.size());
  RMat A(m, 3);
  RMat Y(m, 27);
  ChristoffelTable out;
  for (int r = 0; r < m; ++r) {
    A(r, 0) = 1.0 / eps[r];
    A(r, 1) = 1.0;
    A(r, 2) = eps[r];
    double spread = 0.0;
    const auto g = levi_civita_frame(model, eps[r], N, &spread);
    out.node_spread = std::max(out.node_spread, spread);
    for (int q = 0; q < 27; ++q) Y(r, q) = g[q];
  }
  const RMat X = A.colPivHouseholderQr().solve(Y);
  out.fit_residual = (A * X - Y).cwiseAbs().maxCoeff();
  for (int q = 0; q < 27; ++q) out.gamma[q] = Laurent3{X(0, q), X(1, q), X(2, q)};
  return out;
}

}  // namespace ctspec
