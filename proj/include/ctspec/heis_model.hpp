#pragma once

#include <vector>

#include "ctspec/types.hpp"

namespace ctspec {

// Heat kernel of the sub-Laplacian -(X² + Y²) on ℍ³, X = ∂x - (y/2)∂z, Y = ∂y + (x/2)∂z,
// from the origin. Arguments follow the anisotropic convention: time t = τ².
struct HeisKernel {
  double rel_tol = 1e-13;
  unsigned max_depth = 18;
  double accept = 1e-9;  // error estimate above accept·L1 is reported as non-convergence

  double operator()(double tau, double wx, double wy, double wz) const;
  // p_t at horizontal radius r and height z
  double at(double t, double r, double z) const;
};

struct HomogeneityReport {
  double lambda = 1.0;
  double max_deviation = 0.0;
  int points = 0;
};

// max |λ⁴ k(λτ, λω, λ²ω_z) / k(τ, ω, ω_z) - 1| over a fixed 20-point set.
HomogeneityReport homogeneity_check(const HeisKernel& k, double lambda);

// ∫ p_t over ℍ³ by composite Gauss-Legendre in (r, z), r ≤ 12√t, |z| ≤ 20t.
double total_mass(const HeisKernel& k, double tau = 1.0);

struct DecayReport {
  std::vector<double> s, values, log_ratios;
  bool monotone = false;
  bool superpolynomial = false;  // log(v_{k+1}/v_k) strictly decreasing
};

// Values along the horizontal ray s ∈ {½, 1, 2, 4, 8} at τ = 1.
DecayReport decay_on_ray(const HeisKernel& k);

struct OraclePoint {
  double y = 0.0, z = 0.0;
  double closed = 0.0, oracle = 0.0, oracle_reflected = 0.0;
};

struct OracleReport {
  std::vector<OraclePoint> points;
  double max_rel_error = 0.0;
  double max_symmetry_defect = 0.0;  // |p(y, z) - p(y, -z)| relative, oracle side
  int modes = 0;
};

// Independent evaluation in the gauge X = ∂x - y∂w, Y = ∂y (w = z - xy/2, so w = z on x = 0):
// Fourier sums in x and w on a periodic box, sinc-DVR in y, e^{-tH} by eigendecomposition.
OracleReport landau_oracle(const HeisKernel& k, double t = 1.0);

}  // namespace ctspec
