#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "ctspec/derham.hpp"

namespace ctspec::reference {

using SpMat = Eigen::SparseMatrix<cplx>;

// Serial full-grid assembly without the Fourier block decomposition. Fields are
// component-major; the node index is (ix*N + iy)*N + iz.
std::array<SpMat, 3> assemble_d_full(const Grid& grid, const ContactModel& model = build_t3_model());

// Sorted spectrum of Δ_ε on degree p from a dense eigensolve of the full grid operator.
RVec laplacian_spectrum_full(const Grid& grid, double eps, int p);

// Samples of a scalar field f(x, y, z) in full-grid order.
CVec sample_full(const Grid& grid, const std::function<cplx(double, double, double)>& f);

}  // namespace ctspec::reference
