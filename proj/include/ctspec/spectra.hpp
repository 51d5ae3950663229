#pragma once

#include <string>
#include <vector>

#include "ctspec/spectral_sequence.hpp"

namespace ctspec {

enum class OpTag { DeltaEps, ScaledDeltaEps, DeltaH, DstarD, SigEps, SigH };
enum class SolveMode { Full, LowestK };

struct SpectralData {
  int degree = 0;
  double eps = 0.0;  // 0 marks a Rumin operator
  Holonomy alpha{};
  OpTag tag = OpTag::DeltaEps;
  RVec values;  // ascending
  CMat vectors;
};

// Dense Hermitian solve; rejects asymmetry above 1e-9 (relative).
SpectralData eigensolve(const CMat& op, SolveMode mode = SolveMode::Full, int k = 0, bool vectors = false);

// ---- global spectra over all Fourier blocks (parallel over blocks, ordered merge) ----

RVec derham_spectrum(const DerhamComplex& cx, double eps, int p, bool scaled = false, bool parallel = true);

struct RuminSpectra {
  std::array<RVec, 4> laplacian;  // Δ_ℋ,p
  RVec dstard;                    // D*D on all of Ω¹_ℋ
  RVec dstard_e4;                 // D*D on Ker δ_ℋ (E₄ in degree 1)
  RVec half0;                     // δ_ℋd_ℋ on Ω⁰
  RVec half1;                     // d_ℋδ_ℋ on Ω¹_ℋ
};

RuminSpectra rumin_spectra(const DerhamComplex& cx, bool parallel = true);

RVec signature_spectrum(const DerhamComplex& cx, double eps);
RVec rumin_signature_spectrum(const DerhamComplex& cx);

// ---- heat traces ----

double heat_trace(const RVec& spec, double t);

struct BransonReport {
  double t = 0.0;
  double lhs = 0.0;       // Tr_{E₄} e^{-tD*D}
  double rhs = 0.0;       // Tr_{Ω¹_ℋ} e^{-tΔ_ℋ,1} - Tr_{Ω⁰}(e^{-tΔ_ℋ,0²} - Π_ker)
  double residual = 0.0;  // relative
  double literal_residual = 0.0;  // |Tr_{Ω¹_ℋ} e^{-tD*D} - [Tr e^{-tΔ_ℋ,1} - Tr e^{-tΔ_ℋ,0²}]|
};

BransonReport branson_check(const RuminSpectra& rs, double t);

// ---- ε sweeps ----

struct SweepRow {
  double eps = 0.0;
  int index = 0;
  double lambda = 0.0;
  double rumin_lambda = 0.0;
  double gap = 0.0;
};

struct ConvergenceReport {
  int degree = 0;
  std::vector<double> eps;
  std::vector<SweepRow> rows;
  std::vector<double> max_gap;  // per ε
  std::vector<double> ratios;   // max_gap[i+1] / max_gap[i]
  bool crossing_ambiguity = false;
};

// Degrees 0, 3: first k nonzero eigenvalues of Δ_ε against Δ_ℋ.
// Degrees 1, 2: first k nonzero eigenvalues of ε⁻²Δ_ε against D*D (DD*) on E₄.
ConvergenceReport eps_sweep(const Grid& grid, int p, const std::vector<double>& eps, int k,
                            double zero_tol = 1e-9);

// min |λ - 1| over spec Δ_ε,0 (the separable e^{iz} branch).
double exact_branch_gap(const DerhamComplex& cx, double eps);

struct MiddleCount {
  int scaled_count = 0;  // #{ε⁻²Δ_ε,1 < threshold}
  int e4_count = 0;      // #{D*D on E₄ < threshold}, harmonic part included
  int ginf_dim = 0;
};

MiddleCount middle_count(const DerhamComplex& cx, double eps, double threshold, double zero_tol = 1e-9);

// ---- regime fits ----

struct RegimeFit {
  double exponent = 0.0;
  bool valid = false;
  double t_min = 0.0;
  double t_max = 0.0;
  int points = 0;
  std::string note;
};

// Least-squares slope of log f against log t.
double fit_power(const std::vector<double>& t, const std::vector<double>& f);

// Window t ∈ [20/λ_max, t*] with Tr ≥ 10·max(dim ker, 1) on 40 log-spaced points up to t = 2.
RegimeFit fit_small_t(const RVec& spec, double zero_tol = 1e-9);

enum class RegimeMode { SmallT, Diagonal };

// SmallT: Δ_ε,p at ε = 1. Diagonal: Tr e^{-tΔ_ε,p} along t = ε² for ε ∈ {0.4, 0.3, 0.2}.
RegimeFit regime_fit(const Grid& grid, int p, RegimeMode mode);

// ---- zeta functions and determinants ----

double zeta(const RVec& spec, double s, double zero_tol = 1e-9);
double zeta_prime0(const RVec& spec, double zero_tol = 1e-9);  // -Σ log λ over λ > tol
double log_det(const RVec& spec, double zero_tol = 1e-9);
int nonzero_count(const RVec& spec, double zero_tol = 1e-9);
// True when an eigenvalue sits within a factor 10 of the zero tolerance.
bool kernel_ambiguous(const RVec& spec, double zero_tol = 1e-9);

// FP ∫₀¹ f dt from samples on (0, 1], with declared divergent powers t^β removed by
// least squares together with a cubic in t; FP ∫₀¹ t^β = 1/(β+1), 0 for β = -1.
double finite_part_integral(const std::vector<double>& t, const std::vector<double>& f,
                            const std::vector<double>& exponents);

// ---- torsion ----

enum class TorsionConvention { DeRham, RuminSeshadri, Tilde, TildeAsPrinted, Kitaoka };
enum class TorsionSource { DeRham, Rumin };

std::string to_string(TorsionConvention c);

struct TorsionReport {
  TorsionConvention convention = TorsionConvention::DeRham;
  std::array<double, 4> zeta_prime{};  // ζ'(0) per degree, after any rescaling
  std::array<double, 4> weights{};
  double log_at = 0.0;
  double basis_correction = 0.0;  // [μ|ω]; only zero-kernel complexes are handled
  std::array<int, 4> kernel_dims{};
};

double torsion_weight(TorsionConvention c, int p, int n = 1);

// de Rham at fixed ε; middle degrees use ε⁻²Δ_ε via ζ-scaling.
TorsionReport torsion_derham(const DerhamComplex& cx, double eps, double zero_tol = 1e-9);
TorsionReport torsion_rumin(const RuminSpectra& rs, TorsionConvention c, double zero_tol = 1e-9);

struct RelativeTorsion {
  TorsionReport first, second;
  double difference = 0.0;
};

RelativeTorsion relative_torsion(int N, const Holonomy& a1, const Holonomy& a2, TorsionConvention c,
                                 TorsionSource source, double eps = 1.0);

// Polynomial extrapolation in ε² to ε = 0 (Richardson orders 2, 4, ... for 3+ points).
double richardson_eps2(const std::vector<double>& eps, const std::vector<double>& values);

// ---- Kitaoka ----

struct KitaokaResult {
  double zeta_k = 0.0;      // ζ'_{AT,𝒦}(0)
  double zeta_h = 0.0;      // ζ'_{AT,ℋ}(0)
  double direct = 0.0;      // zeta_k - zeta_h
  double closed_form = 0.0; // 2 Σ_{p<n} (-1)^{p+1} log((n-p)!) ζ(Δ_ℋ,p)(0)
  double residual = 0.0;
};

// h[p], p = 0..n-1: half-Laplacian spectra δd on Ω^p_ℋ; spec(Δ_ℋ,p) = h_p ∪ h_{p-1}.
KitaokaResult kitaoka_identity(int n, const std::vector<RVec>& h, const RVec& dstard, double zero_tol = 1e-9);

// ---- eta / rho ----

// Heat-smoothed η(t₀) = Σ sign(λ) erfc(|λ|√t₀) over |λ| > tol.
double eta_heat(const RVec& spec, double t0, double zero_tol = 1e-9);

struct RhoReport {
  double u0 = 0.0;            // 4 / μ_max² from the Rumin signature spectra
  double rho_h = 0.0;         // at u0
  std::vector<double> eps;
  std::vector<double> rho_eps;  // at t₀ = u0/ε²
  std::vector<double> diffs;    // |ρ_ε - ρ_ℋ|
  bool monotone = false;        // over the first three ε
  double extrapolated = 0.0;    // Richardson in ε² over the last three ε
  double agreement = 0.0;
  std::vector<double> scan_u;
  std::vector<double> scan_agreement;
  double sensitivity = 0.0;     // max agreement over the scan
};

RhoReport relative_rho(int N, const Holonomy& alpha, const std::vector<double>& eps);

}  // namespace ctspec
