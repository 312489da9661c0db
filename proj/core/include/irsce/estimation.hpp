#pragma once

#include <cstddef>
#include <vector>

#include "irsce/channel.hpp"
#include "irsce/pilot.hpp"
#include "irsce/tensor.hpp"

namespace irsce {

/// Integer conditions under which the LS and ALS pseudo-inverses exist.
struct IdentifiabilityCheck {
  bool ls_ok = false;     // T >= QN
  bool mode1_ok = false;  // L1L2 <= NK
  bool mode2_ok = false;  // L1L2 <= MQK
  bool mode3_ok = false;  // L1L2 <= MQN

  bool cp_ok() const noexcept { return mode1_ok && mode2_ok && mode3_ok; }
  bool all() const noexcept { return ls_ok && cp_ok(); }
};

IdentifiabilityCheck check_identifiability(std::size_t M, std::size_t Q, std::size_t N, std::size_t K,
                                           std::size_t T, std::size_t L1, std::size_t L2);

/// Throws IdentifiabilityError naming every failed condition.
void require_identifiable(std::size_t M, std::size_t Q, std::size_t N, std::size_t K, std::size_t T,
                          std::size_t L1, std::size_t L2);

struct LsBlockEstimate {
  ComplexVector u_hat;  // MQN
  ComplexMatrix R;      // MQ x N, unvec of u_hat
};

/// LS inversion of y_k = Omega u_k + v_k with Omega^+ computed once.
class LsEstimator {
 public:
  /// Throws IdentifiabilityError when T < QN.
  explicit LsEstimator(const PilotDesign& design, double tol = kPinvTolerance);

  LsBlockEstimate estimate(const ComplexVector& y) const;
  const ComplexMatrix& omega_pinv() const noexcept { return omega_pinv_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  ComplexMatrix omega_pinv_;
};

/// One-shot LS estimate; recomputes Omega^+ on every call.
LsBlockEstimate ls_combined(const ComplexVector& y, const PilotDesign& design);

/// Frontal slice k of the result equals blocks[k].
ComplexTensor3 stack_blocks(const std::vector<ComplexMatrix>& blocks);

struct KrfResult {
  ComplexMatrix G_hat;   // M x N
  ComplexMatrix Ht_hat;  // Q x N, estimate of H_k^T
  ComplexMatrix R_hat;   // Ht_hat kr G_hat
  std::size_t svd_calls = 0;
};

/**
 * Khatri-Rao factorization of one combined-channel block.
 *
 * Column n of R_k is reshaped to the M x Q matrix g_n h_n^T and replaced by
 * its dominant singular triplet; sqrt(sigma) goes to each factor. Zero
 * columns skip the SVD and yield zero factors. Only R_hat is unique.
 */
KrfResult krf_baseline(const ComplexMatrix& R_k, std::size_t M, std::size_t Q, std::size_t N);

enum class AlsInit {
  /// A and B from the leading left singular vectors of [R]_(1) and [R]_(2)
  /// (random CN(0, 1) columns pad when the rank exceeds the row count), F by LS.
  Svd,
  /// i.i.d. CN(0, 1) entries for A, B and F.
  Random,
};

struct AlsOptions {
  std::size_t rank = 4;
  AlsInit init = AlsInit::Svd;
  double eps = 1e-5;
  std::size_t max_iters = 100;
};

struct AlsReport {
  CPFactors factors;
  std::size_t iterations = 0;
  /// Squared Frobenius fit error after each sweep; error_trace.size() == iterations.
  std::vector<double> error_trace;
  bool converged = false;
};

/**
 * Rank-`opts.rank` CP fit of R by alternating least squares.
 *
 * Factors start from `opts.init`; `rng` feeds the random draws. Each sweep updates
 * A, B and F in turn with the exact LS solution of its unfolding, then
 * records e(i) = ||R - cp_build(A, B, F)||_F^2. The loop stops once
 * |e(i) - e(i-1)| <= eps (e(0) is the error of the initial factors) or after
 * max_iters sweeps. The threshold is absolute, so it depends on the scale
 * of R; see als_fit_normalized.
 *
 * Throws IdentifiabilityError if rank exceeds any of I2*I3, I1*I3, I1*I2.
 */
AlsReport als_fit(const ComplexTensor3& R, const AlsOptions& opts, Rng& rng);

/// als_fit on R / ||R||_F, with A rescaled afterwards so the factors model R
/// itself. The error trace stays on the unit-norm scale.
AlsReport als_fit_normalized(const ComplexTensor3& R, const AlsOptions& opts, Rng& rng);

/// ||R_true - R_est||_F^2 / ||R_true||_F^2. Throws ZeroReference if R_true == 0.
double nmse(const ComplexMatrix& truth, const ComplexMatrix& est);
double nmse(const ComplexTensor3& truth, const ComplexTensor3& est);

}  // namespace irsce
