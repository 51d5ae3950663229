#pragma once

#include <vector>

#include "ctspec/types.hpp"

namespace ctspec {

// Model contact 3-torus with θ = cos z dx + sin z dy.
// Frame order is (e1, e2, R); coframe order is (η¹, η², θ).
struct ContactModel {
  int m = 3;
  int n = 1;
  Eigen::Matrix2d J;                  // on H in the frame (e1, e2)
  std::array<Eigen::Matrix3d, 3> c;   // [X_i, X_j] = Σ_k c[k](i, j) X_k

  // Rows: e1, e2, R as coefficients on (∂x, ∂y, ∂z).
  Eigen::Matrix3d frame(double z) const;
  // Rows: η¹, η², θ as coefficients on (dx, dy, dz).
  Eigen::Matrix3d coframe(double z) const;
  Eigen::Vector3d theta(double z) const;
  // Coordinate metric of g_ε = η¹⊗η¹ + η²⊗η² + θ⊗θ/ε².
  Eigen::Matrix3d metric(double z, double eps) const;
  // Horizontal metric dθ(·, J·) in the frame, from the structure constants.
  Eigen::Matrix2d horizontal_metric() const;
  // Coefficient of θ∧dθ on dx∧dy∧dz.
  double contact_volume(double z) const;
};

ContactModel build_t3_model();

// Periodic grid on (R/2πZ)^3 with a flat U(1) twist e^{iα·x}.
struct Grid {
  int N = 8;
  Holonomy alpha{0.0, 0.0, 0.0};

  double weight() const;
  double node(int j) const;
  std::vector<double> nodes() const;
  // Integer wavenumbers in FFT order: 0, 1, ..., N/2-1, -N/2, ..., -1.
  std::vector<int> modes() const;
  // Twisted spectral derivative F^{-1} diag(i(k + α_axis)) F.
  CMat derivative(int axis) const;
  bool acyclic() const;
};

Grid make_grid(int N, const Holonomy& alpha);

// Unitary DFT matrix (forward, normalised by 1/√N).
CMat unitary_dft(int N);

struct GeometryCheck {
  double theta_reeb = 0.0;        // max |θ(R) - 1|
  double reeb_contraction = 0.0;  // max |ι_R dθ|
  double brackets = 0.0;          // max deviation from Σ c X_k
  double horizontal_metric = 0.0; // ‖g_H - I‖
  double coframe_duality = 0.0;   // max |η^a(X_b) - δ|
  double min_contact_volume = 0.0;
};

GeometryCheck check_model(const ContactModel& model, const Grid& grid);

// Laurent polynomial c_{-1}/ε + c_0 + c_1 ε.
struct Laurent3 {
  double m1 = 0.0;
  double c0 = 0.0;
  double p1 = 0.0;
  double operator()(double eps) const { return m1 / eps + c0 + p1 * eps; }
};

// Γ^k_{ij} of g_ε in the orthonormal frame W0 = εR, W1 = e1, W2 = e2.
struct ChristoffelTable {
  std::array<Laurent3, 27> gamma{};
  double fit_residual = 0.0;
  double node_spread = 0.0;

  Laurent3& at(int k, int i, int j) { return gamma[k * 9 + i * 3 + j]; }
  const Laurent3& at(int k, int i, int j) const { return gamma[k * 9 + i * 3 + j]; }
};

using FrameChristoffel = std::array<double, 27>;  // index k*9 + i*3 + j

// Closed form: ε^{-1} from α(i,j) = θ([e_i, e_j]), ε^0 from the horizontal
// brackets, ε^1 from -R(g_ij)/2 (zero here).
ChristoffelTable tanno_christoffels(const ContactModel& model);

// Frame Koszul formula with brackets differentiated spectrally on an N-node z grid,
// evaluated at every node; node_spread reports the largest deviation between nodes.
FrameChristoffel levi_civita_frame(const ContactModel& model, double eps, int N = 8,
                                   double* node_spread = nullptr);

struct ConnectionDefects {
  double metric = 0.0;   // max |Γ^k_ij + Γ^j_ik|
  double torsion = 0.0;  // max |Γ^k_ij - Γ^k_ji - C(i,j,k)|
};

ConnectionDefects connection_defects(const ContactModel& model, const FrameChristoffel& g, double eps);

ChristoffelTable levi_civita_laurent_fit(const ContactModel& model, const std::vector<double>& eps,
                                         int N = 8);

}  // namespace ctspec
