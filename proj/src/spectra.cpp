#include "ctspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ctspec/linalg.hpp"
#include "ctspec/parallel.hpp"

namespace ctspec {

SpectralData eigensolve(const CMat& op, SolveMode mode, int k, bool vectors) {
  if (op.rows() != op.cols()) throw std::invalid_argument("eigensolve: matrix is not square");
  if (hermitian_defect(op) > 1e-9) throw std::invalid_argument("eigensolve: operator is not Hermitian");
  const CMat h = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: no convergence");
  SpectralData out;
  out.values = es.eigenvalues();
  if (vectors) out.vectors = es.eigenvectors();
  if (mode == SolveMode::LowestK) {
    const int m = std::min<int>(k, static_cast<int>(out.values.size()));
    out.values = out.values.head(m).eval();
    if (vectors) out.vectors = out.vectors.leftCols(m).eval();
  }
  return out;
}

namespace {

RVec eigenvalues(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

RVec merge_sorted(const std::vector<RVec>& parts) {
  Eigen::Index n = 0;
  for (const RVec& p : parts) n += p.size();
  RVec out(n);
  Eigen::Index off = 0;
  for (const RVec& p : parts) {
    out.segment(off, p.size()) = p;
    off += p.size();
  }
  std::sort(out.data(), out.data() + n);
  return out;
}

template <class F>
RVec over_blocks(const DerhamComplex& cx, bool parallel, F&& per_block) {
  std::vector<RVec> parts(cx.num_blocks());
  auto body = [&](int b) { parts[b] = per_block(cx.block(b)); };
  if (parallel)
    parallel_for(cx.num_blocks(), body);
  else
    serial_for(cx.num_blocks(), body);
  return merge_sorted(parts);
}

std::vector<double> nonzero_head(const RVec& spec, int k, double tol) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < spec.size() && static_cast<int>(out.size()) < k; ++i)
    if (spec(i) > tol) out.push_back(spec(i));
  return out;
}

}  // namespace

RVec derham_spectrum(const DerhamComplex& cx, double eps, int p, bool scaled, bool parallel) {
  const double s = scaled ? 1.0 / (eps * eps) : 1.0;
  return over_blocks(cx, parallel, [&](const DerhamBlock& blk) { return RVec(s * eigenvalues(hodge_laplacian(blk, eps, p))); });
}

RuminSpectra rumin_spectra(const DerhamComplex& cx, bool parallel) {
  const int nb = cx.num_blocks();
  std::vector<std::array<RVec, 9>> parts(nb);
  auto body = [&](int b) {
    const RuminBlock r = build_rumin(cx.block(b));
    auto& out = parts[b];
    for (int p = 0; p < 4; ++p) out[p] = eigenvalues(r.laplacian(p));
    const CMat dd = r.dstar_d();
    out[4] = eigenvalues(dd);
    const CMat K = r.coclosed_basis();
    out[5] = K.cols() ? eigenvalues(K.adjoint() * dd * K) : RVec();
    out[6] = eigenvalues(r.d0.adjoint() * r.d0);
    out[7] = eigenvalues(r.d0 * r.d0.adjoint());
  };
  if (parallel)
    parallel_for(nb, body);
  else
    serial_for(nb, body);
  auto gather = [&](int slot) {
    std::vector<RVec> v(nb);
    for (int b = 0; b < nb; ++b) v[b] = parts[b][slot];
    return merge_sorted(v);
  };
  RuminSpectra rs;
  for (int p = 0; p < 4; ++p) rs.laplacian[p] = gather(p);
  rs.dstard = gather(4);
  rs.dstard_e4 = gather(5);
  rs.half0 = gather(6);
  rs.half1 = gather(7);
  return rs;
}

RVec signature_spectrum(const DerhamComplex& cx, double eps) {
  return over_blocks(cx, true, [&](const DerhamBlock& blk) { return eigenvalues(signature_operator(blk, eps)); });
}

RVec rumin_signature_spectrum(const DerhamComplex& cx) {
  return over_blocks(cx, true, [&](const DerhamBlock& blk) {
    const auto b = rumin_signature_blocks(build_rumin(blk));
    const RVec e1 = eigenvalues(b[0]), e2 = eigenvalues(b[1]);
    RVec out(e1.size() + e2.size());
    out << e1, e2;
    return out;
  });
}

double heat_trace(const RVec& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_trace: t must be positive");
  return (-t * spec.array()).exp().sum();
}

BransonReport branson_check(const RuminSpectra& rs, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("branson: t must be positive");
  BransonReport r;
  r.t = t;
  r.lhs = heat_trace(rs.dstard_e4, t);
  double zero_part = 0.0;
  for (Eigen::Index i = 0; i < rs.laplacian[0].size(); ++i) {
    const double l = rs.laplacian[0](i);
    zero_part += std::exp(-t * l * l) - (std::abs(l) <= 1e-9 ? 1.0 : 0.0);
  }
  r.rhs = heat_trace(rs.laplacian[1], t) - zero_part;
  r.residual = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1.0);
  double full0 = 0.0;
  for (Eigen::Index i = 0; i < rs.laplacian[0].size(); ++i) full0 += std::exp(-t * rs.laplacian[0](i) * rs.laplacian[0](i));
  r.literal_residual = std::abs(heat_trace(rs.dstard, t) - (heat_trace(rs.laplacian[1], t) - full0));
  return r;
}

ConvergenceReport eps_sweep(const Grid& grid, int p, const std::vector<double>& eps, int k, double zero_tol) {
  if (p < 0 || p > 3) throw std::out_of_range("eps_sweep: degree");
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] < eps[i - 1])) throw std::invalid_argument("eps_sweep: eps list must be strictly descending");
  const DerhamComplex cx(grid);
  const RuminSpectra rs = rumin_spectra(cx);
  const bool mid = p == 1 || p == 2;
  const auto target = nonzero_head(mid ? rs.dstard_e4 : rs.laplacian[p], k, zero_tol);
  ConvergenceReport rep;
  rep.degree = p;
  rep.eps = eps;
  for (double e : eps) {
    const auto got = nonzero_head(derham_spectrum(cx, e, p, mid), k, zero_tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min(got.size(), target.size()); ++i) {
      const double gap = std::abs(got[i] - target[i]);
      worst = std::max(worst, gap);
      rep.rows.push_back({e, static_cast<int>(i), got[i], target[i], gap});
    }
    for (std::size_t i = 1; i < target.size(); ++i) {
      const double sep = target[i] - target[i - 1];
      if (sep > 1e-9 && sep < worst) rep.crossing_ambiguity = true;
    }
    rep.max_gap.push_back(worst);
  }
  for (std::size_t i = 1; i < rep.max_gap.size(); ++i) rep.ratios.push_back(rep.max_gap[i] / rep.max_gap[i - 1]);
  return rep;
}

double exact_branch_gap(const DerhamComplex& cx, double eps) {
  const RVec s = derham_spectrum(cx, eps, 0);
  return (s.array() - 1.0).abs().minCoeff();
}

MiddleCount middle_count(const DerhamComplex& cx, double eps, double threshold, double zero_tol) {
  MiddleCount m;
  const RVec s = derham_spectrum(cx, eps, 1, true);
  const RuminSpectra rs = rumin_spectra(cx);
  m.scaled_count = static_cast<int>((s.array() < threshold).count());
  m.e4_count = static_cast<int>((rs.dstard_e4.array() < threshold).count());
  m.ginf_dim = static_cast<int>((rs.dstard_e4.array().abs() <= zero_tol).count());
  return m;
}

double fit_power(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size() || t.size() < 2) throw std::invalid_argument("fit_power: need matched samples");
  const std::size_t n = t.size();
  RMat A(n, 2);
  RVec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, 0) = std::log(t[i]);
    A(i, 1) = 1.0;
    y(i) = std::log(f[i]);
  }
  return A.colPivHouseholderQr().solve(y)(0);
}

RegimeFit fit_small_t(const RVec& spec, double zero_tol) {
  RegimeFit r;
  const double lmax = spec.maxCoeff();
  const int kernel = static_cast<int>((spec.array().abs() <= zero_tol).count());
  const double floor = 10.0 * std::max(kernel, 1);
  if (!(lmax > 0.0)) {
    // a pure kernel: Tr e^{-tΔ} is constant
    r.exponent = 0.0;
    r.valid = true;
    r.note = "zero operator";
    return r;
  }
  const double t0 = 20.0 / lmax, t1 = 2.0;
  std::vector<double> ts, fs;
  for (int i = 0; i < 40; ++i) {
    const double t = t0 * std::pow(t1 / t0, i / 39.0);
    const double tr = heat_trace(spec, t);
    if (tr >= floor) {
      ts.push_back(t);
      fs.push_back(tr);
    }
  }
  r.points = static_cast<int>(ts.size());
  if (r.points < 5) {
    r.note = "validity window holds fewer than 5 points";
    return r;
  }
  r.t_min = ts.front();
  r.t_max = ts.back();
  r.exponent = fit_power(ts, fs);
  r.valid = true;
  return r;
}

RegimeFit regime_fit(const Grid& grid, int p, RegimeMode mode) {
  const DerhamComplex cx(grid);
  if (mode == RegimeMode::SmallT) return fit_small_t(derham_spectrum(cx, 1.0, p));
  RegimeFit r;
  std::vector<double> ts, fs;
  double tl = 1e300;
  for (double e : {0.4, 0.3, 0.2}) {
    const RVec s = derham_spectrum(cx, e, p);
    ts.push_back(e * e);
    fs.push_back(heat_trace(s, e * e));
    tl = std::min(tl, e * e * s.maxCoeff());
  }
  r.points = 3;
  r.t_min = ts.back();
  r.t_max = ts.front();
  r.valid = tl >= 20.0;
  if (!r.valid) r.note = "t*lambda_max below 20: spectrum truncation visible";
  r.exponent = fit_power(ts, fs);
  return r;
}

double zeta(const RVec& spec, double s, double zero_tol) {
  double z = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i)
    if (spec(i) > zero_tol) z += std::pow(spec(i), -s);
  return z;
}

double log_det(const RVec& spec, double zero_tol) {
  double l = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i)
    if (spec(i) > zero_tol) l += std::log(spec(i));
  return l;
}

double zeta_prime0(const RVec& spec, double zero_tol) { return -log_det(spec, zero_tol); }

int nonzero_count(const RVec& spec, double zero_tol) { return static_cast<int>((spec.array() > zero_tol).count()); }

bool kernel_ambiguous(const RVec& spec, double zero_tol) {
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const double a = std::abs(spec(i));
    if (a > zero_tol / 10.0 && a < zero_tol * 10.0) return true;
  }
  return false;
}

double finite_part_integral(const std::vector<double>& t, const std::vector<double>& f,
                            const std::vector<double>& exponents) {
  if (t.size() != f.size() || t.size() < exponents.size() + 6)
    throw std::invalid_argument("finite_part: not enough samples");
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  if (t[order.front()] <= 0.0 || t[order.back()] > 1.0 + 1e-12) throw std::invalid_argument("finite_part: samples must lie in (0,1]");
  // fit divergent powers plus a cubic on the small-t end
  std::vector<std::size_t> fit;
  for (std::size_t i : order)
    if (t[i] <= 0.1) fit.push_back(i);
  if (fit.size() < exponents.size() + 8) fit = order;
  const int nb = static_cast<int>(exponents.size()) + 4;
  RMat A(fit.size(), nb);
  RVec y(fit.size());
  for (std::size_t r = 0; r < fit.size(); ++r) {
    const double x = t[fit[r]];
    for (std::size_t j = 0; j < exponents.size(); ++j) A(r, j) = std::pow(x, exponents[j]);
    for (int q = 0; q < 4; ++q) A(r, exponents.size() + q) = std::pow(x, q);
    y(r) = f[fit[r]];
  }
  const RVec c = A.colPivHouseholderQr().solve(y);
  auto regular = [&](std::size_t i) {
    double g = f[i];
    for (std::size_t j = 0; j < exponents.size(); ++j) g -= c(j) * std::pow(t[i], exponents[j]);
    return g;
  };
  double integral = 0.0;
  for (std::size_t k = 1; k < order.size(); ++k)
    integral += 0.5 * (t[order[k]] - t[order[k - 1]]) * (regular(order[k]) + regular(order[k - 1]));
  // [0, t_min] from the fitted cubic
  const double a = t[order.front()];
  for (int q = 0; q < 4; ++q) integral += c(exponents.size() + q) * std::pow(a, q + 1) / (q + 1);
  // [t_max, 1] when the samples stop short of 1
  const double b = t[order.back()];
  if (b < 1.0) integral += (1.0 - b) * regular(order.back());
  for (std::size_t j = 0; j < exponents.size(); ++j)
    if (std::abs(exponents[j] + 1.0) > 1e-14) integral += c(j) / (exponents[j] + 1.0);
  return integral;
}

std::string to_string(TorsionConvention c) {
  switch (c) {
    case TorsionConvention::DeRham: return "deRham";
    case TorsionConvention::RuminSeshadri: return "ruminSeshadri";
    case TorsionConvention::Tilde: return "tilde";
    case TorsionConvention::TildeAsPrinted: return "tilde_as_printed";
    case TorsionConvention::Kitaoka: return "kitaoka";
  }
  return "unknown";
}

double torsion_weight(TorsionConvention c, int p, int n) {
  switch (c) {
    case TorsionConvention::DeRham:
      return p;
    case TorsionConvention::RuminSeshadri:
      return p <= n ? p : p + 1;
    case TorsionConvention::Tilde:
      if (p < n) return p + n;
      if (p <= n + 1) return p;
      return p + n + 1;
    case TorsionConvention::TildeAsPrinted:
      if (p < n) return p + n;
      if (p <= n + 1) return p;
      return p - (n + 1);
    case TorsionConvention::Kitaoka:
      return 0.0;
  }
  return 0.0;
}

TorsionReport torsion_derham(const DerhamComplex& cx, double eps, double zero_tol) {
  TorsionReport r;
  r.convention = TorsionConvention::DeRham;
  double total = 0.0;
  for (int p = 0; p < 4; ++p) {
    const bool mid = p == 1 || p == 2;
    const RVec s = derham_spectrum(cx, eps, p, mid);
    r.kernel_dims[p] = static_cast<int>(s.size()) - nonzero_count(s, zero_tol);
    r.zeta_prime[p] = zeta_prime0(s, zero_tol);
    r.weights[p] = p;
    total += (p % 2 ? -1.0 : 1.0) * p * r.zeta_prime[p];
  }
  r.log_at = total;
  return r;
}

TorsionReport torsion_rumin(const RuminSpectra& rs, TorsionConvention c, double zero_tol) {
  const int n = 1;
  TorsionReport r;
  r.convention = c;
  for (int p = 0; p < 4; ++p)
    r.kernel_dims[p] = static_cast<int>(rs.laplacian[p].size()) - nonzero_count(rs.laplacian[p], zero_tol);
  if (c == TorsionConvention::Kitaoka) {
    const KitaokaResult k = kitaoka_identity(n, {rs.half0}, rs.dstard, zero_tol);
    r.log_at = k.zeta_k;
    return r;
  }
  double total = 0.0;
  for (int p = 0; p < 4; ++p) {
    const double zp = zeta_prime0(rs.laplacian[p], zero_tol);
    const double sign = p % 2 ? -1.0 : 1.0;
    r.weights[p] = torsion_weight(c, p, n);
    if (c == TorsionConvention::RuminSeshadri) {
      // squares off the middle degrees: ζ'(A²)(0) = 2ζ'(A)(0) on finite spectra
      const bool mid = p == n || p == n + 1;
      r.zeta_prime[p] = mid ? zp : 2.0 * zp;
      total += 0.5 * sign * r.weights[p] * r.zeta_prime[p];
    } else {
      r.zeta_prime[p] = zp;
      total += sign * r.weights[p] * zp;
    }
  }
  r.log_at = total;
  return r;
}

RelativeTorsion relative_torsion(int N, const Holonomy& a1, const Holonomy& a2, TorsionConvention c,
                                 TorsionSource source, double eps) {
  auto one = [&](const Holonomy& a) {
    const DerhamComplex cx(make_grid(N, a));
    TorsionReport r;
    if (source == TorsionSource::DeRham) {
      if (c != TorsionConvention::DeRham) throw std::invalid_argument("relative_torsion: de Rham source uses weights p");
      r = torsion_derham(cx, eps);
    } else {
      r = torsion_rumin(rumin_spectra(cx), c);
    }
    for (int k : r.kernel_dims)
      if (k != 0) throw std::invalid_argument("relative_torsion: twist is not acyclic");
    return r;
  };
  RelativeTorsion out;
  out.first = one(a1);
  out.second = one(a2);
  out.difference = out.first.log_at - out.second.log_at;
  return out;
}

double richardson_eps2(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.empty()) throw std::invalid_argument("richardson: sizes");
  // Neville's scheme at x = 0 with x = ε²
  std::vector<double> x(eps.size()), p(values);
  for (std::size_t i = 0; i < eps.size(); ++i) x[i] = eps[i] * eps[i];
  for (std::size_t m = 1; m < x.size(); ++m)
    for (std::size_t i = 0; i + m < x.size(); ++i) p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
  return p[0];
}

KitaokaResult kitaoka_identity(int n, const std::vector<RVec>& h, const RVec& dstard, double zero_tol) {
  if (n < 1 || static_cast<int>(h.size()) != n) throw std::invalid_argument("kitaoka: need h_0..h_{n-1}");
  auto zp_scaled = [&](const RVec& s, double factor) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > zero_tol) v -= std::log(factor * s(i) * s(i));
    return v;
  };
  KitaokaResult k;
  for (int p = 0; p < n; ++p) {
    const double sign = (p + 1) % 2 ? -1.0 : 1.0;
    const double np = n - p;
    k.zeta_k += sign * zp_scaled(h[p], 1.0 / (np * np));
    k.zeta_h += sign * zp_scaled(h[p], 1.0);
  }
  const double sd = (n + 1) % 2 ? -1.0 : 1.0;
  k.zeta_k += sd * zeta_prime0(dstard, zero_tol);
  k.zeta_h += sd * zeta_prime0(dstard, zero_tol);
  k.direct = k.zeta_k - k.zeta_h;
  for (int p = 0; p < n; ++p) {
    const double sign = (p + 1) % 2 ? -1.0 : 1.0;
    const int count = nonzero_count(h[p], zero_tol) + (p > 0 ? nonzero_count(h[p - 1], zero_tol) : 0);
    k.closed_form += 2.0 * sign * std::lgamma(n - p + 1.0) * count;
  }
  k.residual = std::abs(k.direct - k.closed_form);
  return k;
}

double eta_heat(const RVec& spec, double t0, double zero_tol) {
  const double r = std::sqrt(t0);
  double e = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const double l = spec(i);
    if (std::abs(l) > zero_tol) e += (l > 0 ? 1.0 : -1.0) * std::erfc(std::abs(l) * r);
  }
  return e;
}

RhoReport relative_rho(int N, const Holonomy& alpha, const std::vector<double>& eps) {
  if (eps.size() < 3) throw std::invalid_argument("relative_rho: need at least 3 eps values");
  const DerhamComplex tw(make_grid(N, alpha)), triv(make_grid(N, {0.0, 0.0, 0.0}));
  const RVec r1 = rumin_signature_spectrum(tw), r0 = rumin_signature_spectrum(triv);
  const double mu = std::max(r1.cwiseAbs().maxCoeff(), r0.cwiseAbs().maxCoeff());
  RhoReport rep;
  rep.u0 = 4.0 / (mu * mu);
  rep.eps = eps;
  std::vector<std::pair<RVec, RVec>> sig;
  for (double e : eps) sig.emplace_back(signature_spectrum(tw, e), signature_spectrum(triv, e));
  auto rho_h = [&](double u) { return eta_heat(r1, u) - eta_heat(r0, u); };
  auto rho_e = [&](std::size_t i, double u) {
    const double t = u / (eps[i] * eps[i]);
    return eta_heat(sig[i].first, t) - eta_heat(sig[i].second, t);
  };
  auto agreement_at = [&](double u) {
    const std::size_t m = eps.size();
    std::vector<double> e3(eps.end() - 3, eps.end()), v3;
    for (std::size_t i = m - 3; i < m; ++i) v3.push_back(rho_e(i, u));
    return std::make_pair(richardson_eps2(e3, v3), std::abs(richardson_eps2(e3, v3) - rho_h(u)));
  };
  rep.rho_h = rho_h(rep.u0);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    rep.rho_eps.push_back(rho_e(i, rep.u0));
    rep.diffs.push_back(std::abs(rep.rho_eps.back() - rep.rho_h));
  }
  rep.monotone = rep.diffs[1] < rep.diffs[0] && rep.diffs[2] < rep.diffs[1];
  std::tie(rep.extrapolated, rep.agreement) = agreement_at(rep.u0);
  for (int j = 0; j < 5; ++j) {
    const double u = rep.u0 * std::pow(10.0, -0.5 + 0.25 * j);
    rep.scan_u.push_back(u);
    rep.scan_agreement.push_back(agreement_at(u).second);
  }
  rep.sensitivity = *std::max_element(rep.scan_agreement.begin(), rep.scan_agreement.end());
  return rep;
}

}  // namespace ctspec
