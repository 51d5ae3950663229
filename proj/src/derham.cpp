#include "ctspec/derham.hpp"

#include <stdexcept>

namespace ctspec {

namespace {

constexpr int kTags[4][3] = {{0, -1, -1}, {0, 0, 1}, {0, 1, 1}, {1, -1, -1}};

void require_eps(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

// Pointwise r x c matrix field -> block matrix of N x N diagonals.
CMat pointwise(const std::vector<Eigen::MatrixXd>& field, int rows, int cols) {
  const int N = static_cast<int>(field.size());
  CMat out = CMat::Zero(rows * N, cols * N);
  for (int j = 0; j < N; ++j)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out(r * N + j, c * N + j) = field[j](r, c);
  return out;
}

}  // namespace

int FormBundleLayout::tag(int p, int component) {
  if (p < 0 || p > 3 || component < 0 || component >= rank(p)) throw std::out_of_range("layout tag");
  return kTags[p][component];
}

int FormBundleLayout::horizontal_rank(int p) {
  int h = 0;
  for (int c = 0; c < rank(p); ++c) h += tag(p, c) == 0;
  return h;
}

int DerhamBlock::offset(int p) const {
  int off = 0;
  for (int q = 0; q < p; ++q) off += kFormRank[q] * N;
  return off;
}

std::vector<int> DerhamBlock::indices(int p) const {
  std::vector<int> idx(kFormRank[p] * N);
  for (int i = 0; i < kFormRank[p] * N; ++i) idx[i] = offset(p) + i;
  return idx;
}

std::vector<int> DerhamBlock::indices(int p, int tag) const {
  std::vector<int> idx;
  for (int c = 0; c < kFormRank[p]; ++c)
    if (kTags[p][c] == tag)
      for (int j = 0; j < N; ++j) idx.push_back(offset(p) + c * N + j);
  return idx;
}

std::vector<int> DerhamBlock::all_indices(int tag) const {
  std::vector<int> idx;
  for (int p = 0; p < 4; ++p) {
    auto part = indices(p, tag);
    idx.insert(idx.end(), part.begin(), part.end());
  }
  return idx;
}

Eigen::VectorXi DerhamBlock::degrees() const {
  Eigen::VectorXi deg(dim());
  for (int p = 0; p < 4; ++p)
    for (int i : indices(p)) deg(i) = p;
  return deg;
}

Eigen::VectorXi DerhamBlock::tags() const {
  Eigen::VectorXi t(dim());
  for (int p = 0; p < 4; ++p)
    for (int c = 0; c < kFormRank[p]; ++c)
      for (int j = 0; j < N; ++j) t(offset(p) + c * N + j) = kTags[p][c];
  return t;
}

CMat DerhamBlock::total() const {
  CMat t = CMat::Zero(dim(), dim());
  for (int p = 0; p < 3; ++p) t.block(offset(p + 1), offset(p), d[p].rows(), d[p].cols()) = d[p];
  return t;
}

std::array<CMat, 3> coordinate_d(const CMat& dz, double a, double b) {
  const int N = static_cast<int>(dz.rows());
  const CMat I = CMat::Identity(N, N);
  const CMat Z = CMat::Zero(N, N);
  const CMat dx = kI * a * I, dy = kI * b * I;
  std::array<CMat, 3> d;
  d[0].resize(3 * N, N);
  d[0] << dx, dy, dz;
  d[1].resize(3 * N, 3 * N);
  d[1] << -dy, dx, Z,
          -dz, Z, dx,
          Z, -dz, dy;
  d[2].resize(N, 3 * N);
  d[2] << dz, -dy, dx;
  return d;
}

DerhamComplex::DerhamComplex(const Grid& grid, ContactModel model) : grid_(grid), model_(std::move(model)) {
  const int N = grid_.N;
  dz_ = grid_.derivative(2);
  std::vector<Eigen::MatrixXd> m1(N), m2(N), m0(N, Eigen::MatrixXd::Ones(1, 1)), m3(N);
  for (int j = 0; j < N; ++j) {
    const Eigen::Matrix3d th = model_.coframe(grid_.node(j));  // rows η¹, η², θ
    // 1-forms: coordinate component μ of η^a is th(a, μ)
    m1[j] = th.transpose();
    // 2-forms: frame (η¹∧η², θ∧η¹, θ∧η²), coordinate (dx∧dy, dx∧dz, dy∧dz)
    const int fa[3][2] = {{0, 1}, {2, 0}, {2, 1}};
    const int ca[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    m2[j].resize(3, 3);
    for (int f = 0; f < 3; ++f)
      for (int c = 0; c < 3; ++c) {
        const int a = fa[f][0], b = fa[f][1], mu = ca[c][0], nu = ca[c][1];
        m2[j](c, f) = th(a, mu) * th(b, nu) - th(a, nu) * th(b, mu);
      }
    Eigen::Matrix3d vol;
    vol.row(0) = th.row(2);
    vol.row(1) = th.row(0);
    vol.row(2) = th.row(1);
    m3[j] = Eigen::MatrixXd::Constant(1, 1, vol.determinant());
  }
  m_ = {pointwise(m0, 1, 1), pointwise(m1, 3, 3), pointwise(m2, 3, 3), pointwise(m3, 1, 1)};
  auto inverted = [](std::vector<Eigen::MatrixXd> f) {
    for (auto& m : f) m = m.inverse().eval();
    return f;
  };
  m_inv_ = {pointwise(inverted(m0), 1, 1), pointwise(inverted(m1), 3, 3), pointwise(inverted(m2), 3, 3),
            pointwise(inverted(m3), 1, 1)};
  for (int kx = -N / 2; kx < N / 2; ++kx)
    for (int ky = -N / 2; ky < N / 2; ++ky)
      keys_.push_back({kx, ky, kx + grid_.alpha[0], ky + grid_.alpha[1]});
}

namespace {

// left * mid * right where left and right are pointwise (every N×N block diagonal)
CMat conjugate_pointwise(const CMat& left, const CMat& mid, const CMat& right, int N) {
  const int rt = static_cast<int>(left.rows()) / N, k1 = static_cast<int>(mid.rows()) / N;
  const int k2 = static_cast<int>(mid.cols()) / N, rs = static_cast<int>(right.cols()) / N;
  CMat tmp = CMat::Zero(k1 * N, rs * N);
  for (int l = 0; l < k2; ++l)
    for (int j = 0; j < rs; ++j) {
      const CVec w = right.block(l * N, j * N, N, N).diagonal();
      if (w.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int k = 0; k < k1; ++k)
        tmp.block(k * N, j * N, N, N) += mid.block(k * N, l * N, N, N) * w.asDiagonal();
    }
  CMat out = CMat::Zero(rt * N, rs * N);
  for (int i = 0; i < rt; ++i)
    for (int k = 0; k < k1; ++k) {
      const CVec w = left.block(i * N, k * N, N, N).diagonal();
      if (w.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int j = 0; j < rs; ++j) out.block(i * N, j * N, N, N) += w.asDiagonal() * tmp.block(k * N, j * N, N, N);
    }
  return out;
}

}  // namespace

DerhamBlock DerhamComplex::block_at(const BlockKey& key) const {
  DerhamBlock blk;
  blk.N = grid_.N;
  blk.key = key;
  const auto dc = coordinate_d(dz_, key.a, key.b);
  for (int p = 0; p < 3; ++p) blk.d[p] = conjugate_pointwise(m_inv_[p + 1], dc[p], m_[p], blk.N);
  return blk;
}

LinearOperator d_operator(const DerhamBlock& blk, int p, double gram_weight) {
  return {p, p + 1, blk.d.at(p), gram_weight};
}

RVec eps_weights(const DerhamBlock& blk, double eps) {
  const Eigen::VectorXi t = blk.tags();
  RVec w(blk.dim());
  for (int i = 0; i < blk.dim(); ++i) w(i) = t(i) ? eps : 1.0;
  return w;
}

CMat d_eps(const DerhamBlock& blk, double eps) {
  require_eps(eps);
  const RVec w = eps_weights(blk, eps);
  const RVec winv = w.cwiseInverse();
  return w.asDiagonal() * blk.total() * winv.asDiagonal();
}

CMat delta_eps(const DerhamBlock& blk, double eps) { return d_eps(blk, eps).adjoint(); }

CMat laplacian_total(const DerhamBlock& blk, double eps) {
  const CMat de = d_eps(blk, eps);
  return de * de.adjoint() + de.adjoint() * de;
}

CMat hodge_laplacian(const DerhamBlock& blk, double eps, int p) {
  require_eps(eps);
  if (p < 0 || p > 3) throw std::out_of_range("degree");
  const RVec w = eps_weights(blk, eps);
  auto scaled = [&](int q) {
    const RVec wt = w.segment(blk.offset(q + 1), kFormRank[q + 1] * blk.N);
    const RVec ws = w.segment(blk.offset(q), kFormRank[q] * blk.N).cwiseInverse();
    return CMat(wt.asDiagonal() * blk.d[q] * ws.asDiagonal());
  };
  const int n = kFormRank[p] * blk.N;
  CMat lap = CMat::Zero(n, n);
  if (p < 3) {
    const CMat dp = scaled(p);
    lap += dp.adjoint() * dp;
  }
  if (p > 0) {
    const CMat dm = scaled(p - 1);
    lap += dm * dm.adjoint();
  }
  return lap;
}

BidegreeSplit split_bidegree(const DerhamBlock& blk) {
  BidegreeSplit s;
  const Eigen::VectorXi t = blk.tags();
  RVec h(blk.dim());
  for (int i = 0; i < blk.dim(); ++i) h(i) = t(i) ? 0.0 : 1.0;
  s.Ph = h.cast<cplx>().asDiagonal();
  s.Pv = CMat::Identity(blk.dim(), blk.dim()) - s.Ph;
  const CMat d = blk.total();
  s.dH = s.Ph * d * s.Ph - s.Pv * d * s.Pv;
  s.L = s.Ph * d * s.Pv;
  s.LR = s.Pv * d * s.Ph;
  return s;
}

CMat theta_shift(const DerhamBlock& blk) {
  const int N = blk.N;
  CMat t = CMat::Zero(blk.dim(), blk.dim());
  // 1 -> θ̂, η^i -> θ̂∧η^i, η¹∧η² -> θ̂∧η¹∧η²
  const int pairs[4][2] = {{blk.offset(0), blk.offset(1) + 2 * N},
                           {blk.offset(1), blk.offset(2) + N},
                           {blk.offset(1) + N, blk.offset(2) + 2 * N},
                           {blk.offset(2), blk.offset(3)}};
  for (const auto& pr : pairs)
    for (int j = 0; j < N; ++j) t(pr[1] + j, pr[0] + j) = 1.0;
  return t;
}

CMat hodge_star(int N) {
  // frame components: ⋆1 = θ̂η¹η², ⋆η¹ = -θ̂η², ⋆η² = θ̂η¹, ⋆θ̂ = η¹η²
  std::array<Eigen::MatrixXd, 4> st;
  st[0] = Eigen::MatrixXd::Ones(1, 1);
  st[1] = Eigen::MatrixXd::Zero(3, 3);
  st[1](2, 0) = -1.0;
  st[1](1, 1) = 1.0;
  st[1](0, 2) = 1.0;
  st[2] = st[1].transpose();
  st[3] = Eigen::MatrixXd::Ones(1, 1);
  DerhamBlock shape;
  shape.N = N;
  CMat out = CMat::Zero(8 * N, 8 * N);
  const CMat I = CMat::Identity(N, N);
  for (int p = 0; p < 4; ++p) {
    const int q = 3 - p;
    for (int r = 0; r < st[p].rows(); ++r)
      for (int c = 0; c < st[p].cols(); ++c)
        if (st[p](r, c) != 0.0) out.block(shape.offset(q) + r * N, shape.offset(p) + c * N, N, N) = st[p](r, c) * I;
  }
  return out;
}

namespace {

CMat phase_diagonal(int N, const std::array<cplx, 4>& c) {
  CVec diag(8 * N);
  int off = 0;
  for (int q = 0; q < 4; ++q)
    for (int i = 0; i < kFormRank[q] * N; ++i) diag(off++) = c[q];
  return diag.asDiagonal();
}

std::array<cplx, 4> solve_phases() {
  const int N = 4;
  DerhamComplex cx(make_grid(N, {0.0, 0.0, 0.3}));
  const DerhamBlock blk = cx.block_at({1, 0, 1.0, 0.5});
  const CMat star = hodge_star(N);
  const CMat id = CMat::Identity(8 * N, 8 * N);
  const std::array<cplx, 4> choices{cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
  for (int code = 0; code < 256; ++code) {
    std::array<cplx, 4> c;
    for (int q = 0; q < 4; ++q) c[q] = choices[(code >> (2 * (3 - q))) & 3];  // c0 varies slowest
    const CMat inv = phase_diagonal(N, c) * star;
    if ((inv * inv - id).norm() > 1e-12) continue;
    bool ok = true;
    for (double eps : {1.0, 0.3}) {
      const CMat de = d_eps(blk, eps);
      const CMat s = -kI * (de * inv + inv * de);
      const CMat lap = laplacian_total(blk, eps);
      if ((s - s.adjoint()).norm() > 1e-10 || (s * s - lap).norm() > 1e-9 * std::max(1.0, lap.norm())) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  throw std::logic_error("chirality: no phase choice gives an involution with Hermitian S and S^2 = Delta");
}

}  // namespace

const std::array<cplx, 4>& chirality_phases() {
  static const std::array<cplx, 4> phases = solve_phases();
  return phases;
}

CMat chirality(const DerhamBlock& blk) { return phase_diagonal(blk.N, chirality_phases()) * hodge_star(blk.N); }

CMat signature_operator(const DerhamBlock& blk, double eps) {
  const CMat de = d_eps(blk, eps);
  const CMat inv = chirality(blk);
  return -kI * (de * inv + inv * de);
}

}  // namespace ctspec
