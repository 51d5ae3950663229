#pragma once

#include "ctspec/derham.hpp"

namespace ctspec {

// a₋₁ = P_h d P_v - (P_h d P_v)^H on the total space of one block.
CMat a_minus1(const DerhamBlock& blk);

struct FibreInverse {
  CMat pinv;     // a₋₁†
  CMat pi_ker;   // Π onto Ker a₋₁
  CMat pi_im;    // a₋₁ a₋₁†
  int rank = 0;
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  bool unstable = false;  // a singular value within 10x of the tolerance
};

FibreInverse pseudo_inverse_a(const CMat& am1, double rel_tol = 1e-10);

// Rumin complex of one block, stored on the Rumin subbundle:
// Ω⁰ (N), Ω¹_ℋ = Ω¹H* (2N), Ω²_ℋ = θ̂∧Ω¹H* (2N), Ω³ (N).
struct RuminBlock {
  int N = 0;
  BlockKey key;
  CMat d0;  // d_ℋ: Ω⁰ -> Ω¹_ℋ
  CMat D;   // D_ℋ: Ω¹_ℋ -> Ω²_ℋ
  CMat d2;  // d_ℋ: Ω²_ℋ -> Ω³

  CMat laplacian(int p) const;
  CMat dstar_d() const { return D.adjoint() * D; }
  // Orthonormal basis of Ker δ_ℋ ⊂ Ω¹_ℋ (the degree-1 part of E₄).
  CMat coclosed_basis(double rel_tol = 1e-9) const;
};

// d_ℋ for p ∈ {0, 2}: the de Rham d restricted to the Rumin subbundle.
CMat d_rumin(const DerhamBlock& blk, int p);

// D_ℋ = 𝓛_R + d_H L⁻¹ d_H with the discrete inverse of the L block.
CMat D_rumin(const DerhamBlock& blk);

RuminBlock build_rumin(const DerhamBlock& blk);

CMat rumin_laplacian(const RuminBlock& r, int p);

// a_p = |n - p|^{-1/2}; rejects p ∈ {n, n+1}.
double kitaoka_factor(int n, int p);
CMat kitaoka_differential(const RuminBlock& r, int p, int n = 1);

// ⋆ on Ω²_ℋ -> Ω¹_ℋ: θ̂∧η¹ -> η², θ̂∧η² -> -η¹.
CMat rumin_star(int N);

// Middle-degree signature blocks -i c (⋆D) on Ω¹_ℋ and -i c (D⋆) on Ω²_ℋ, with c the
// chirality phase used on degree-2 input.
std::array<CMat, 2> rumin_signature_blocks(const RuminBlock& r);

}  // namespace ctspec
