#pragma once

#include <functional>
#include <vector>

#include "ctspec/types.hpp"

namespace ctspec {

// Orthonormal kernel basis from a rank-revealing SVD.
struct KernelResult {
  CMat basis;                    // n x (n - rank)
  int rank = 0;
  double smax = 0.0;
  double smallest_kept = 0.0;    // relative to smax, 0 if rank == 0
  double largest_dropped = 0.0;  // relative to smax, 0 if full rank
  bool ambiguous = false;        // a singular value within 10x of the tolerance
};

KernelResult kernel_basis(const CMat& a, double rel_tol);

// Moore-Penrose inverse with a relative singular-value cutoff.
CMat pseudo_inverse(const CMat& a, double rel_tol);

CMat orthonormalize(const CMat& a, double rel_tol = 1e-12);

// Sines of the principal angles between two orthonormal bases of equal dimension.
RVec principal_angle_sines(const CMat& u, const CMat& v);

// Largest principal-angle sine; 1 when dimensions differ.
double subspace_distance(const CMat& u, const CMat& v);

// ‖x‖_F / max(‖ref‖_F, floor).
double relative_residual(const CMat& x, const CMat& ref, double floor = 1.0);

// Operator-norm estimate max ‖A v‖ over unit random probes.
double probe_norm(const std::function<CVec(const CVec&)>& apply, int dim, int probes = 32,
                  unsigned seed = 7);

// Asymmetry ‖A - A^H‖ / max(‖A‖, 1).
double hermitian_defect(const CMat& a);

CMat embed_rows(const CMat& a, const std::vector<int>& rows, int total_rows);

CMat select(const CMat& a, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace ctspec
