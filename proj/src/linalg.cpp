#include "ctspec/linalg.hpp"

#include <algorithm>
#include <random>

namespace ctspec {

KernelResult kernel_basis(const CMat& a, double rel_tol) {
  KernelResult out;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) {
    out.basis = CMat::Identity(n, n);
    return out;
  }
  // BDCSVD in Eigen 3.4 returned a wrong full V on some stacked operators here
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  out.smax = s.size() ? s(0) : 0.0;
  const double cut = rel_tol * std::max(out.smax, 1.0);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  out.rank = r;
  const double scale = std::max(out.smax, 1.0);
  out.smallest_kept = r > 0 ? s(r - 1) / scale : 0.0;
  out.largest_dropped = r < s.size() ? s(r) / scale : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s(i) / scale;
    if (rel > rel_tol / 10.0 && rel < rel_tol * 10.0) out.ambiguous = true;
  }
  out.basis = svd.matrixV().rightCols(n - r);
  return out;
}

CMat pseudo_inverse(const CMat& a, double rel_tol) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& s = svd.singularValues();
  const double cut = rel_tol * std::max(s.size() ? s(0) : 0.0, 1.0);
  RVec inv = RVec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMat orthonormalize(const CMat& a, double rel_tol) {
  if (a.cols() == 0) return a;
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
  const RVec& s = svd.singularValues();
  const double cut = rel_tol * std::max(s(0), 1e-300);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

RVec principal_angle_sines(const CMat& u, const CMat& v) {
  if (u.cols() == 0 || v.cols() == 0) return RVec();
  // singular values of (I - UU^H)V are the sines directly; 1 - cos^2 loses them near 0
  const CMat res = v - u * (u.adjoint() * v);
  return Eigen::JacobiSVD<CMat>(res).singularValues();
}

double subspace_distance(const CMat& u, const CMat& v) {
  if (u.cols() != v.cols()) return 1.0;
  if (u.cols() == 0) return 0.0;
  const CMat res = v - u * (u.adjoint() * v);
  return Eigen::JacobiSVD<CMat>(res).singularValues()(0);
}

double relative_residual(const CMat& x, const CMat& ref, double floor) {
  return x.norm() / std::max(ref.norm(), floor);
}

double probe_norm(const std::function<CVec(const CVec&)>& apply, int dim, int probes, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int k = 0; k < probes; ++k) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
    v.normalize();
    best = std::max(best, apply(v).norm());
  }
  return best;
}

double hermitian_defect(const CMat& a) {
  return (a - a.adjoint()).norm() / std::max(a.norm(), 1.0);
}

CMat embed_rows(const CMat& a, const std::vector<int>& rows, int total_rows) {
  CMat out = CMat::Zero(total_rows, a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(rows[i]) = a.row(static_cast<Eigen::Index>(i));
  return out;
}

CMat select(const CMat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  CMat out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows.size(); ++i) out(i, j) = a(rows[i], cols[j]);
  return out;
}

}  // namespace ctspec
