#pragma once

#include <vector>

#include "ctspec/rumin.hpp"

namespace ctspec {

// Laurent pieces of d_ε - δ_ε = ε⁻¹a₋₁ + a₀ + εa₁ and of -Δ_ε = Σ ε^i A_i on one block.
struct EpsFamily {
  DerhamBlock blk;
  CMat am1, a0, a1;
  std::array<CMat, 5> A;  // A[i + 2] = A_i
  FibreInverse inv;
  Eigen::VectorXi degree;

  const CMat& A_at(int i) const { return A.at(i + 2); }
  CMat reconstruct(double eps) const { return am1 / eps + a0 + eps * a1; }
  // Δ_ε assembled from d_ε directly, not from the expansion.
  CMat laplacian(double eps) const { return laplacian_total(blk, eps); }
  // Π(a₁ - a₀a₋₁†a₀)Π
  CMat middle_operator() const;
  int dim() const { return blk.dim(); }
};

EpsFamily eps_expansion(const DerhamBlock& blk, double rank_tol = 1e-10);

inline constexpr int kLevelInfinity = 99;

struct Subspace {
  int degree = 0;
  int level = 0;
  CMat basis;  // orthonormal columns in total-space coordinates
  double tol = 1e-9;
  double smallest_kept = 0.0;    // relative singular value just above the cut
  double largest_dropped = 0.0;  // relative singular value just below the cut
  bool ambiguous = false;

  int dim() const { return static_cast<int>(basis.cols()); }
  CMat projector() const { return basis * basis.adjoint(); }
};

// E_k from the algebraic characterisations:
//   E1 = Ker a₋₁, E2 = E1 ∩ Ker(Π A₋₁), E3 = E1 ∩ Ker(Πa₀Π),
//   E4 = E3 ∩ Ker(Πa₀Π(a₁ - a₀a₋₁†a₀)), E5 = E3 ∩ Ker(Π(a₁ - a₀a₋₁†a₀)Π).
// Levels beyond the last nontrivial one return E_∞ (E3 off middle degree, E5 in it).
Subspace compute_Ek(const EpsFamily& fam, int p, int k, double tol = 1e-9);

// Polynomial-in-ε extension u₀ + εu₁ + ε²u₂ + ...
struct PhiExtension {
  std::vector<CVec> u;
  CVec operator()(double eps) const;
};

PhiExtension phi2(const EpsFamily& fam, const CVec& u0);
PhiExtension phi4(const EpsFamily& fam, const CVec& u0);
// Φ₄ with u₂ shifted by -((Πa₀Π)²)†Πa₀Π(a₀u₂ + a₁u₁), which removes the O(1) G₂ term.
PhiExtension phi4_corrected(const EpsFamily& fam, const CVec& u0);

// N_eff,2 = -(Πa₀Π)², N_eff,4 = -(Π(a₁ - a₀a₋₁†a₀)Π)² on the total space, and the
// compression to the level's subspace in degree p.
struct EffectiveNormal {
  Subspace space;
  CMat full;
  CMat matrix;
};

EffectiveNormal effective_normal(const EpsFamily& fam, int level, int p);

struct GradedDecomposition {
  int degree = 0;
  CMat G0, G2, G4, Ginf;  // orthogonal projectors on the total space
  std::array<int, 4> dims{};
};

GradedDecomposition graded_decomposition(const EpsFamily& fam, int p);

// ‖Πa₀Π(a₁ - a₀a₋₁†a₀) restricted to E₃‖ in degree p.
double e3_vanishing_defect(const EpsFamily& fam, int p);

}  // namespace ctspec
