#pragma once

#include <array>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace ctspec {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Holonomy = std::array<double, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Fibre ranks of Λ^p on a 3-manifold.
inline constexpr std::array<int, 4> kFormRank{1, 3, 3, 1};

}  // namespace ctspec
