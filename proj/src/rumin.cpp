#include "ctspec/rumin.hpp"

#include <cmath>
#include <stdexcept>

#include "ctspec/linalg.hpp"

namespace ctspec {

CMat a_minus1(const DerhamBlock& blk) {
  const BidegreeSplit s = split_bidegree(blk);
  return s.L - s.L.adjoint();
}

FibreInverse pseudo_inverse_a(const CMat& am1, double rel_tol) {
  FibreInverse out;
  Eigen::JacobiSVD<CMat> svd(am1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double cut = rel_tol * std::max(smax, 1.0);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  out.rank = r;
  out.smallest_kept = r ? s(r - 1) / std::max(smax, 1.0) : 0.0;
  out.largest_dropped = r < s.size() ? s(r) / std::max(smax, 1.0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s(i) / std::max(smax, 1.0);
    if (rel > rel_tol / 10.0 && rel < rel_tol * 10.0) out.unstable = true;
  }
  const CMat U = svd.matrixU().leftCols(r), V = svd.matrixV().leftCols(r);
  const RVec inv = s.head(r).cwiseInverse();
  out.pinv = V * inv.asDiagonal() * U.adjoint();
  const CMat K = svd.matrixV().rightCols(am1.cols() - r);
  out.pi_ker = K * K.adjoint();
  out.pi_im = U * U.adjoint();
  return out;
}

CMat d_rumin(const DerhamBlock& blk, int p) {
  if (p == 0) return select(blk.total(), blk.indices(1, 0), blk.indices(0));
  if (p == 2) return select(blk.total(), blk.indices(3), blk.indices(2, 1));
  throw std::invalid_argument("d_rumin: only degrees 0 and 2; use D_rumin in the middle degree");
}

CMat D_rumin(const DerhamBlock& blk) {
  const CMat t = blk.total();
  const auto h1 = blk.indices(1, 0), v1 = blk.indices(1, 1), h2 = blk.indices(2, 0), v2 = blk.indices(2, 1);
  const CMat dvh = select(t, v2, h1), dvv = select(t, v2, v1), dhv = select(t, h2, v1), dhh = select(t, h2, h1);
  // lift α to α - θ̂ L⁻¹ d_H α so that dα̃ has no horizontal part, keep the θ̂-part
  return dvh - dvv * dhv.partialPivLu().solve(dhh);
}

RuminBlock build_rumin(const DerhamBlock& blk) {
  RuminBlock r;
  r.N = blk.N;
  r.key = blk.key;
  r.d0 = d_rumin(blk, 0);
  r.D = D_rumin(blk);
  r.d2 = d_rumin(blk, 2);
  return r;
}

CMat RuminBlock::laplacian(int p) const { return rumin_laplacian(*this, p); }

CMat RuminBlock::coclosed_basis(double rel_tol) const { return kernel_basis(d0.adjoint(), rel_tol).basis; }

CMat rumin_laplacian(const RuminBlock& r, int p) {
  switch (p) {
    case 0:
      return r.d0.adjoint() * r.d0;
    case 1: {
      const CMat dd = r.d0 * r.d0.adjoint();
      return dd * dd + r.D.adjoint() * r.D;
    }
    case 2: {
      const CMat dd = r.d2.adjoint() * r.d2;
      return dd * dd + r.D * r.D.adjoint();
    }
    case 3:
      return r.d2 * r.d2.adjoint();
    default:
      throw std::out_of_range("rumin_laplacian: degree");
  }
}

double kitaoka_factor(int n, int p) {
  if (p == n || p == n + 1) throw std::invalid_argument("kitaoka: degrees n and n+1 are not rescaled");
  if (p < 0 || p > 2 * n + 1) throw std::out_of_range("kitaoka: degree");
  return 1.0 / std::sqrt(std::abs(double(n - p)));
}

CMat kitaoka_differential(const RuminBlock& r, int p, int n) {
  const double a = kitaoka_factor(n, p);
  if (n != 1) throw std::invalid_argument("kitaoka_differential: model blocks have n = 1");
  // for n = 1 only d_ℋ on functions lies outside the middle degrees
  if (p == 0) return a * r.d0;
  throw std::invalid_argument("kitaoka_differential: degree");
}

CMat rumin_star(int N) {
  CMat s = CMat::Zero(2 * N, 2 * N);
  const CMat I = CMat::Identity(N, N);
  s.block(0, N, N, N) = -I;
  s.block(N, 0, N, N) = I;
  return s;
}

std::array<CMat, 2> rumin_signature_blocks(const RuminBlock& r) {
  const cplx c = chirality_phases()[1];
  const CMat st = rumin_star(r.N);
  return {CMat(-kI * c * st * r.D), CMat(-kI * c * r.D * st)};
}

}  // namespace ctspec
