#pragma once

#include <vector>

#include "ctspec/geometry.hpp"

namespace ctspec {

// Ordered sR frame bases per degree, with θ̂-count tags:
//   0: {1}                      tags (0)
//   1: {η¹, η², θ̂}              tags (0, 0, 1)
//   2: {η¹∧η², θ̂∧η¹, θ̂∧η²}      tags (0, 1, 1)
//   3: {θ̂∧η¹∧η²}                tags (1)
struct FormBundleLayout {
  static int rank(int p) { return kFormRank.at(p); }
  static int tag(int p, int component);
  static int horizontal_rank(int p);
  static int vertical_rank(int p) { return rank(p) - horizontal_rank(p); }
};

// Fourier block label: x and y wavenumbers with their twisted values a = kx + αx, b = ky + αy.
struct BlockKey {
  int kx = 0;
  int ky = 0;
  double a = 0.0;
  double b = 0.0;
};

// Degree-tagged matrix; the Gram matrix is the identity times a uniform quadrature
// weight, so the adjoint is the conjugate transpose.
struct LinearOperator {
  int source_degree = 0;
  int target_degree = 0;
  CMat matrix;
  double gram_weight = 1.0;
  LinearOperator adjoint() const { return {target_degree, source_degree, matrix.adjoint(), gram_weight}; }
};

// One (kx, ky) block of the complex; fields are component-major with N z-nodes each.
// Total layout orders degree 0..3, then components, then nodes (8N rows).
struct DerhamBlock {
  int N = 0;
  BlockKey key;
  std::array<CMat, 3> d;  // frame basis, degree p -> p+1

  int dim() const { return 8 * N; }
  int offset(int p) const;
  std::vector<int> indices(int p) const;
  std::vector<int> indices(int p, int tag) const;
  std::vector<int> all_indices(int tag) const;
  Eigen::VectorXi degrees() const;
  Eigen::VectorXi tags() const;
  CMat total() const;
};

class DerhamComplex {
 public:
  explicit DerhamComplex(const Grid& grid, ContactModel model = build_t3_model());

  const Grid& grid() const { return grid_; }
  const ContactModel& model() const { return model_; }
  int num_blocks() const { return static_cast<int>(keys_.size()); }
  const BlockKey& key(int b) const { return keys_.at(b); }
  DerhamBlock block(int b) const { return block_at(keys_.at(b)); }
  DerhamBlock block_at(const BlockKey& key) const;

  // Coordinate-to-frame change matrices per degree (pointwise, N-node blocks).
  const CMat& coord_from_frame(int p) const { return m_.at(p); }

 private:
  Grid grid_;
  ContactModel model_;
  CMat dz_;
  std::array<CMat, 4> m_;
  std::array<CMat, 4> m_inv_;
  std::vector<BlockKey> keys_;
};

// Coordinate exterior derivative of one block in the basis (dx, dy, dz) and
// (dx∧dy, dx∧dz, dy∧dz).
std::array<CMat, 3> coordinate_d(const CMat& dz, double a, double b);

LinearOperator d_operator(const DerhamBlock& blk, int p, double gram_weight);

// Diagonal ε-weights: 1 on horizontal components, ε on vertical ones.
RVec eps_weights(const DerhamBlock& blk, double eps);

CMat d_eps(const DerhamBlock& blk, double eps);
CMat delta_eps(const DerhamBlock& blk, double eps);
CMat laplacian_total(const DerhamBlock& blk, double eps);
// Δ_ε on degree p, built from the two adjacent differentials only.
CMat hodge_laplacian(const DerhamBlock& blk, double eps, int p);

// Bidegree pieces on the total space. d_H acts as -d on θ̂-parts, so
// d = d_H P_h - d_H P_v + L + 𝓛_R.
struct BidegreeSplit {
  CMat dH;
  CMat L;   // θ̂∧Ω^{q-1}H* -> Ω^{q+1}H*
  CMat LR;  // Ω^q H* -> θ̂∧Ω^q H*
  CMat Ph;
  CMat Pv;
  CMat reassemble() const { return dH * Ph - dH * Pv + L + LR; }
};

BidegreeSplit split_bidegree(const DerhamBlock& blk);

// Identification Ω^q H* -> θ̂∧Ω^q H* on the total space.
CMat theta_shift(const DerhamBlock& blk);

// Hodge star of the sR frame metric (orientation η¹∧η²∧θ̂), degree p -> 3-p.
CMat hodge_star(int N);

// Phases c_q applied on the target degree q of ⋆. Solved once by search over
// {±1, ±i}; throws if no choice gives an involution with Hermitian S_ε and S_ε² = Δ_ε.
const std::array<cplx, 4>& chirality_phases();

CMat chirality(const DerhamBlock& blk);
CMat signature_operator(const DerhamBlock& blk, double eps);

}  // namespace ctspec
