#include "ctspec/spectral_sequence.hpp"

#include <stdexcept>

#include "ctspec/linalg.hpp"

namespace ctspec {

CMat EpsFamily::middle_operator() const {
  const CMat& P = inv.pi_ker;
  return P * (a1 - a0 * inv.pinv * a0) * P;
}

EpsFamily eps_expansion(const DerhamBlock& blk, double rank_tol) {
  EpsFamily f;
  f.blk = blk;
  f.degree = blk.degrees();
  const BidegreeSplit s = split_bidegree(blk);
  const CMat d = blk.total();
  const CMat diag = s.Ph * d * s.Ph + s.Pv * d * s.Pv;
  f.am1 = s.L - s.L.adjoint();
  f.a0 = diag - diag.adjoint();
  f.a1 = s.LR - s.LR.adjoint();
  f.A[0] = f.am1 * f.am1;
  f.A[1] = f.am1 * f.a0 + f.a0 * f.am1;
  f.A[2] = f.a0 * f.a0 + f.am1 * f.a1 + f.a1 * f.am1;
  f.A[3] = f.a1 * f.a0 + f.a0 * f.a1;
  f.A[4] = f.a1 * f.a1;
  f.inv = pseudo_inverse_a(f.am1, rank_tol);
  return f;
}

namespace {

std::vector<int> degree_indices(const EpsFamily& fam, int p) {
  std::vector<int> idx;
  for (int i = 0; i < fam.dim(); ++i)
    if (fam.degree(i) == p) idx.push_back(i);
  return idx;
}

Subspace kernel_in_degree(const EpsFamily& fam, int p, int level, const std::vector<const CMat*>& rows, double tol) {
  const auto cols = degree_indices(fam, p);
  Subspace s;
  s.degree = p;
  s.level = level;
  s.tol = tol;
  if (rows.empty()) {
    s.basis = embed_rows(CMat::Identity(cols.size(), cols.size()), cols, fam.dim());
    return s;
  }
  Eigen::Index total_rows = 0;
  for (const CMat* r : rows) total_rows += r->rows();
  CMat stack(total_rows, cols.size());
  Eigen::Index off = 0;
  for (const CMat* r : rows) {
    for (std::size_t j = 0; j < cols.size(); ++j) stack.block(off, j, r->rows(), 1) = r->col(cols[j]);
    off += r->rows();
  }
  const KernelResult k = kernel_basis(stack, tol);
  s.basis = embed_rows(k.basis, cols, fam.dim());
  s.smallest_kept = k.smallest_kept;
  s.largest_dropped = k.largest_dropped;
  s.ambiguous = k.ambiguous;
  return s;
}

bool middle(int p) { return p == 1 || p == 2; }

int degree_of(const EpsFamily& fam, const CVec& u) {
  int p = -1;
  const double floor = 1e-13 * u.norm();
  for (int i = 0; i < fam.dim(); ++i)
    if (std::abs(u(i)) > floor) {
      if (p >= 0 && fam.degree(i) != p) throw std::invalid_argument("extension: u0 mixes form degrees");
      p = fam.degree(i);
    }
  if (p < 0) throw std::invalid_argument("extension: u0 is zero");
  return p;
}

void require_member(const EpsFamily& fam, const CVec& u0, int level) {
  const Subspace s = compute_Ek(fam, degree_of(fam, u0), level);
  const CVec off = u0 - s.basis * (s.basis.adjoint() * u0);
  if (off.norm() > 1e-9 * std::max(1.0, u0.norm()))
    throw std::invalid_argument("extension: u0 lies outside the required subspace");
}

CVec u3_from(const EpsFamily& fam, const CVec& u0, const CVec& u1, const CVec& u2) {
  const CMat& ap = fam.inv.pinv;
  const CVec y = fam.inv.pi_ker * (fam.a1 - fam.a0 * ap * fam.a0) * u0;
  return ap * (-fam.a0 * u2 - fam.a1 * u1 - ap * fam.a0 * y);
}

CVec u4_from(const EpsFamily& fam, const CVec& u0, const CVec& u1, const CVec& u2, const CVec& u3) {
  const CMat& ap = fam.inv.pinv;
  const CVec z = fam.A_at(-1) * u3 + fam.A_at(0) * u2 + fam.A_at(1) * u1 + fam.A_at(2) * u0;
  return -(ap * (ap * (fam.inv.pi_im * z)));
}

}  // namespace

Subspace compute_Ek(const EpsFamily& fam, int p, int k, double tol) {
  if (p < 0 || p > 3) throw std::out_of_range("compute_Ek: degree");
  if (k < 0) throw std::out_of_range("compute_Ek: level");
  const CMat& P = fam.inv.pi_ker;
  const int last = middle(p) ? 5 : 3;
  const int level = k > last ? kLevelInfinity : k;
  const int eff = k > last ? last : k;
  if (eff == 0) return kernel_in_degree(fam, p, level, {}, tol);
  if (eff == 1) return kernel_in_degree(fam, p, level, {&fam.am1}, tol);
  if (eff == 2) {
    const CMat pa = P * fam.A_at(-1);
    return kernel_in_degree(fam, p, level, {&fam.am1, &pa}, tol);
  }
  const CMat b = P * fam.a0 * P;
  if (eff == 3) return kernel_in_degree(fam, p, level, {&fam.am1, &b}, tol);
  const CMat y = fam.middle_operator();
  if (eff == 4) {
    const CMat by = b * y;
    return kernel_in_degree(fam, p, level, {&fam.am1, &b, &by}, tol);
  }
  return kernel_in_degree(fam, p, level, {&fam.am1, &b, &y}, tol);
}

CVec PhiExtension::operator()(double eps) const {
  CVec out = CVec::Zero(u.front().size());
  double w = 1.0;
  for (const CVec& term : u) {
    out += w * term;
    w *= eps;
  }
  return out;
}

PhiExtension phi2(const EpsFamily& fam, const CVec& u0) {
  require_member(fam, u0, 2);
  const CMat& ap = fam.inv.pinv;
  const CMat& P = fam.inv.pi_ker;
  const CVec a0u = fam.a0 * u0;
  const CVec u1 = -(ap * a0u);
  const CVec u2 = ap * (fam.a0 * (ap * a0u) - fam.a1 * u0 - ap * (fam.a0 * (P * a0u)));
  return {{u0, u1, u2}};
}

PhiExtension phi4(const EpsFamily& fam, const CVec& u0) {
  require_member(fam, u0, 4);
  PhiExtension e = phi2(fam, u0);
  const CVec u3 = u3_from(fam, u0, e.u[1], e.u[2]);
  const CVec u4 = u4_from(fam, u0, e.u[1], e.u[2], u3);
  e.u.push_back(u3);
  e.u.push_back(u4);
  return e;
}

PhiExtension phi4_corrected(const EpsFamily& fam, const CVec& u0) {
  require_member(fam, u0, 4);
  PhiExtension e = phi2(fam, u0);
  const CMat& P = fam.inv.pi_ker;
  const CMat b = P * fam.a0 * P;
  const CVec extra = b * (fam.a0 * e.u[2] + fam.a1 * e.u[1]);
  const CVec u2 = e.u[2] - pseudo_inverse(b * b, 1e-10) * extra;
  const CVec u3 = u3_from(fam, u0, e.u[1], u2);
  const CVec u4 = u4_from(fam, u0, e.u[1], u2, u3);
  return {{u0, e.u[1], u2, u3, u4}};
}

EffectiveNormal effective_normal(const EpsFamily& fam, int level, int p) {
  EffectiveNormal out;
  if (level == 2) {
    const CMat b = fam.inv.pi_ker * fam.a0 * fam.inv.pi_ker;
    out.full = -(b * b);
  } else if (level == 4) {
    const CMat y = fam.middle_operator();
    out.full = -(y * y);
  } else {
    throw std::invalid_argument("effective_normal: level must be 2 or 4");
  }
  out.space = compute_Ek(fam, p, level);
  out.matrix = out.space.basis.adjoint() * out.full * out.space.basis;
  return out;
}

GradedDecomposition graded_decomposition(const EpsFamily& fam, int p) {
  GradedDecomposition g;
  g.degree = p;
  const CMat P0 = compute_Ek(fam, p, 0).projector();
  const CMat P2 = compute_Ek(fam, p, 2).projector();
  const CMat P4 = compute_Ek(fam, p, 4).projector();
  const CMat Pinf = compute_Ek(fam, p, kLevelInfinity).projector();
  g.G0 = P0 - P2;
  g.G2 = P2 - P4;
  g.G4 = P4 - Pinf;
  g.Ginf = Pinf;
  auto rank = [](const CMat& m) { return static_cast<int>(std::lround(m.trace().real())); };
  g.dims = {rank(g.G0), rank(g.G2), rank(g.G4), rank(g.Ginf)};
  return g;
}

double e3_vanishing_defect(const EpsFamily& fam, int p) {
  const Subspace e3 = compute_Ek(fam, p, 3);
  const CMat& P = fam.inv.pi_ker;
  return (P * fam.a0 * P * fam.middle_operator() * e3.basis).norm();
}

}  // namespace ctspec
