#include "ctspec/reference.hpp"

#include <stdexcept>

namespace ctspec::reference {

namespace {

using Trip = Eigen::Triplet<cplx>;

// kron over the three axes with a dense 1D factor on one of them
SpMat axis_operator(const CMat& d1, int axis, int N) {
  std::vector<Trip> t;
  t.reserve(static_cast<std::size_t>(N) * N * N * N);
  for (int ix = 0; ix < N; ++ix)
    for (int iy = 0; iy < N; ++iy)
      for (int iz = 0; iz < N; ++iz) {
        const int row = (ix * N + iy) * N + iz;
        const int i[3] = {ix, iy, iz};
        for (int m = 0; m < N; ++m) {
          const cplx v = d1(i[axis], m);
          if (v == cplx(0.0)) continue;
          int j[3] = {ix, iy, iz};
          j[axis] = m;
          t.emplace_back(row, (j[0] * N + j[1]) * N + j[2], v);
        }
      }
  SpMat out(N * N * N, N * N * N);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Block operator from a grid of component operators (rows x cols of n x n pieces).
SpMat assemble_blocks(const std::vector<std::vector<SpMat>>& parts, int n) {
  const int rows = static_cast<int>(parts.size());
  const int cols = static_cast<int>(parts[0].size());
  std::vector<Trip> t;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      for (int k = 0; k < parts[r][c].outerSize(); ++k)
        for (SpMat::InnerIterator it(parts[r][c], k); it; ++it) t.emplace_back(r * n + it.row(), c * n + it.col(), it.value());
  SpMat out(rows * n, cols * n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Pointwise change of basis; the coefficients depend on z only.
SpMat pointwise(const Grid& g, int rank, const std::function<Eigen::MatrixXd(double)>& m) {
  const int N = g.N, n = N * N * N;
  std::vector<Trip> t;
  for (int ix = 0; ix < N; ++ix)
    for (int iy = 0; iy < N; ++iy)
      for (int iz = 0; iz < N; ++iz) {
        const int node = (ix * N + iy) * N + iz;
        const Eigen::MatrixXd v = m(g.node(iz));
        for (int r = 0; r < rank; ++r)
          for (int c = 0; c < rank; ++c)
            if (v(r, c) != 0.0) t.emplace_back(r * n + node, c * n + node, v(r, c));
      }
  SpMat out(rank * n, rank * n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

std::array<SpMat, 3> assemble_d_full(const Grid& grid, const ContactModel& model) {
  const int N = grid.N, n = N * N * N;
  const SpMat dx = axis_operator(grid.derivative(0), 0, N);
  const SpMat dy = axis_operator(grid.derivative(1), 1, N);
  const SpMat dz = axis_operator(grid.derivative(2), 2, N);
  SpMat z(n, n);
  const SpMat d0 = assemble_blocks({{dx}, {dy}, {dz}}, n);
  const SpMat d1 = assemble_blocks({{-dy, dx, z}, {-dz, z, dx}, {z, -dz, dy}}, n);
  const SpMat d2 = assemble_blocks({{dz, -dy, dx}}, n);
  auto m1 = [&](double zz) { return Eigen::MatrixXd(model.coframe(zz).transpose()); };
  auto m2 = [&](double zz) {
    const Eigen::Matrix3d th = model.coframe(zz);
    const int fa[3][2] = {{0, 1}, {2, 0}, {2, 1}};
    const int ca[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    Eigen::MatrixXd m(3, 3);
    for (int f = 0; f < 3; ++f)
      for (int c = 0; c < 3; ++c)
        m(c, f) = th(fa[f][0], ca[c][0]) * th(fa[f][1], ca[c][1]) - th(fa[f][0], ca[c][1]) * th(fa[f][1], ca[c][0]);
    return m;
  };
  // both coordinate-from-frame maps are pointwise orthogonal, so their inverses are transposes
  const SpMat M1 = pointwise(grid, 3, m1);
  const SpMat M2 = pointwise(grid, 3, m2);
  const SpMat M1t = M1.transpose();
  const SpMat M2t = M2.transpose();
  return {SpMat(M1t * d0), SpMat(M2t * d1 * M1), SpMat(d2 * M2)};
}

RVec laplacian_spectrum_full(const Grid& grid, double eps, int p) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (grid.N > 8) throw std::invalid_argument("reference: dense full-grid solve limited to N <= 8");
  const int n = grid.N * grid.N * grid.N;
  const auto d = assemble_d_full(grid);
  // ε-weights on vertical components: degree 1 component 2, degree 2 components 1 and 2, degree 3
  auto weights = [&](int q) {
    static const int tags[4][3] = {{0, -1, -1}, {0, 0, 1}, {0, 1, 1}, {1, -1, -1}};
    RVec w(kFormRank[q] * n);
    for (int c = 0; c < kFormRank[q]; ++c) w.segment(c * n, n).setConstant(tags[q][c] ? eps : 1.0);
    return w;
  };
  auto scaled = [&](int q) {
    const RVec wt = weights(q + 1), ws = weights(q).cwiseInverse();
    return CMat(wt.asDiagonal() * CMat(d[q]) * ws.asDiagonal());
  };
  CMat lap = CMat::Zero(kFormRank[p] * n, kFormRank[p] * n);
  if (p < 3) {
    const CMat a = scaled(p);
    lap += a.adjoint() * a;
  }
  if (p > 0) {
    const CMat a = scaled(p - 1);
    lap += a * a.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(lap, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CVec sample_full(const Grid& grid, const std::function<cplx(double, double, double)>& f) {
  const int N = grid.N;
  CVec v(N * N * N);
  for (int ix = 0; ix < N; ++ix)
    for (int iy = 0; iy < N; ++iy)
      for (int iz = 0; iz < N; ++iz) v((ix * N + iy) * N + iz) = f(grid.node(ix), grid.node(iy), grid.node(iz));
  return v;
}

}  // namespace ctspec::reference
