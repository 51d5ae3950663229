#include "ctspec/heis_model.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ctspec/parallel.hpp"

namespace ctspec {

namespace {

// x / tanh(x), x / sinh(x) without cancellation near 0
double x_coth(double x) { return std::abs(x) < 1e-6 ? 1.0 + x * x / 3.0 : x / std::tanh(x); }

double log_x_csch(double x) {
  if (x < 1e-6) return -x * x / 6.0;
  return std::log(2.0 * x) - x - std::log1p(-std::exp(-2.0 * x));
}

}  // namespace

double HeisKernel::at(double t, double r, double z) const {
  if (!(t > 0.0)) throw std::domain_error("heis kernel: tau must be positive");
  auto f = [&](double lam) {
    const double x = lam * t;
    // λ/(4π sinh λt) · exp(-(λr²/4) coth λt)
    const double e = log_x_csch(x) - std::log(4.0 * kPi * t) - 0.25 * r * r * x_coth(x) / t;
    return std::cos(lam * z) * std::exp(e);
  };
  double err = 0.0, l1 = 0.0;
  const double top = 60.0 / t;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, top, max_depth, rel_tol, &err, &l1);
  if (err > accept * l1 + 1e-300) throw std::runtime_error("heis kernel: quadrature did not converge");
  return v / kPi;
}

double HeisKernel::operator()(double tau, double wx, double wy, double wz) const {
  if (!(tau > 0.0)) throw std::domain_error("heis kernel: tau must be positive");
  return at(tau * tau, std::hypot(wx, wy), wz);
}

HomogeneityReport homogeneity_check(const HeisKernel& k, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("homogeneity: lambda must be positive");
  static const double taus[4] = {0.7, 1.0, 1.3, 1.8};
  static const double pts[5][3] = {{0.0, 0.0, 0.0}, {0.4, -0.3, 0.2}, {1.1, 0.5, -0.6}, {-0.8, 1.4, 1.1}, {0.2, 0.1, -1.7}};
  HomogeneityReport rep;
  rep.lambda = lambda;
  for (double tau : taus)
    for (const auto& w : pts) {
      const double base = k(tau, w[0], w[1], w[2]);
      const double scaled = k(lambda * tau, lambda * w[0], lambda * w[1], lambda * lambda * w[2]);
      const double l2 = lambda * lambda;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(l2 * l2 * scaled / base - 1.0));
      ++rep.points;
    }
  return rep;
}

double total_mass(const HeisKernel& k, double tau) {
  using GL = boost::math::quadrature::gauss<double, 30>;
  const double t = tau * tau;
  const double rmax = 12.0 * std::sqrt(t), zmax = 20.0 * t;
  const int rp = 6, zp = 16;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  // symmetric rule: nodes ±x_i, x_0 = 0 counted once
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i < x.size(); ++i) {
    nodes.push_back(x[i]);
    weights.push_back(w[i]);
    if (x[i] != 0.0) {
      nodes.push_back(-x[i]);
      weights.push_back(w[i]);
    }
  }
  std::vector<double> zs, zw;
  for (int p = 0; p < zp; ++p) {
    const double a = zmax * p / zp, b = zmax * (p + 1) / zp;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      zs.push_back(0.5 * (a + b) + 0.5 * (b - a) * nodes[i]);
      zw.push_back(0.5 * (b - a) * weights[i]);
    }
  }
  std::vector<double> rows(rp * nodes.size());
  parallel_for(static_cast<int>(rows.size()), [&](int idx) {
    const int p = idx / static_cast<int>(nodes.size());
    const std::size_t i = idx % nodes.size();
    const double a = rmax * p / rp, b = rmax * (p + 1) / rp;
    const double r = 0.5 * (a + b) + 0.5 * (b - a) * nodes[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < zs.size(); ++j) inner += zw[j] * k.at(t, r, zs[j]);
    rows[idx] = 0.5 * (b - a) * weights[i] * 2.0 * kPi * r * 2.0 * inner;
  });
  double m = 0.0;
  for (double v : rows) m += v;
  return m;
}

DecayReport decay_on_ray(const HeisKernel& k) {
  DecayReport d;
  for (double s : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    d.s.push_back(s);
    d.values.push_back(k(1.0, s, 0.0, 0.0));
  }
  d.monotone = true;
  d.superpolynomial = true;
  for (std::size_t i = 1; i < d.values.size(); ++i) {
    if (!(d.values[i] < d.values[i - 1]) || !(d.values[i] > 0.0)) d.monotone = false;
    d.log_ratios.push_back(std::log(d.values[i] / d.values[i - 1]));
  }
  for (std::size_t i = 1; i < d.log_ratios.size(); ++i)
    if (!(d.log_ratios[i] < d.log_ratios[i - 1])) d.superpolynomial = false;
  return d;
}

OracleReport landau_oracle(const HeisKernel& k, double t) {
  const double box = 12.0;                 // period in x and w
  const double dk = 2.0 * kPi / box;
  const double ly = 16.0;                  // Dirichlet interval [-ly/2, ly/2]
  const int M = 127;                       // interior DVR nodes; node (M+1)/2 sits at y = 0
  const double h = ly / (M + 1);
  const int j0 = (M + 1) / 2 - 1;
  const int nlam = static_cast<int>(std::ceil(24.0 / t / dk));

  static const double ys[3] = {0.0, 0.5, 1.0};
  static const double zs[3] = {0.0, 0.5, 1.0};
  std::vector<int> yidx;
  for (double y : ys) yidx.push_back(j0 + static_cast<int>(std::lround(y / h)));

  // kinetic part -∂y² in the sine basis, mapped to the node basis
  RMat S(M, M);
  for (int j = 0; j < M; ++j)
    for (int m = 0; m < M; ++m) S(j, m) = std::sqrt(2.0 / (M + 1)) * std::sin((j + 1) * (m + 1) * kPi / (M + 1));
  RVec kin(M);
  for (int m = 0; m < M; ++m) kin(m) = std::pow((m + 1) * kPi / ly, 2);
  const RMat T = S * kin.asDiagonal() * S.transpose();

  // g[l][point]: Σ_kx e^{-tH(kx, λ_l)}(y, 0) / h for λ_l = (l - nlam)·dk; both signs of λ are
  // evolved so the z-reflection check is not built in
  const int nl = 2 * nlam + 1;
  std::vector<std::vector<double>> g(nl, std::vector<double>(yidx.size(), 0.0));
  parallel_for(nl, [&](int l) {
    const double lam = (l - nlam) * dk;
    const double reach = std::sqrt(40.0 * std::max(1.0 / t, lam != 0.0 ? lam / std::tanh(lam * t) : 1.0 / t));
    const int nk = static_cast<int>(std::ceil(reach / dk));
    for (int n = -nk; n <= nk; ++n) {
      const double kx = n * dk;
      RMat H = T;
      for (int j = 0; j < M; ++j) {
        const double y = -0.5 * ly + (j + 1) * h;
        H(j, j) += (kx - lam * y) * (kx - lam * y);
      }
      Eigen::SelfAdjointEigenSolver<RMat> es(H);
      const RVec decay = (-t * es.eigenvalues().array()).exp();
      const RVec col = es.eigenvectors() * (decay.asDiagonal() * es.eigenvectors().row(j0).transpose());
      for (std::size_t q = 0; q < yidx.size(); ++q) g[l][q] += col(yidx[q]) / h;
    }
  });

  OracleReport rep;
  rep.modes = M;
  const double pref = dk * dk / (4.0 * kPi * kPi);
  for (std::size_t q = 0; q < yidx.size(); ++q)
    for (double z : zs) {
      auto sum = [&](double zz) {
        cplx v = 0.0;
        for (int l = 0; l < nl; ++l) v += std::exp(kI * ((l - nlam) * dk * zz)) * g[l][q];
        return pref * v.real();
      };
      OraclePoint pt;
      pt.y = ys[q];
      pt.z = z;
      pt.oracle = sum(z);
      pt.oracle_reflected = sum(-z);
      pt.closed = k.at(t, ys[q], z);
      rep.max_rel_error = std::max(rep.max_rel_error, std::abs(pt.oracle - pt.closed) / std::abs(pt.closed));
      rep.max_symmetry_defect =
          std::max(rep.max_symmetry_defect, std::abs(pt.oracle - pt.oracle_reflected) / std::abs(pt.oracle));
      rep.points.push_back(pt);
    }
  return rep;
}

}  // namespace ctspec
