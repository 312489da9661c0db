#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "irsce/tensor.hpp"

namespace irsce {

using Rng = std::mt19937_64;

/// Spatial frequencies (radians) of every propagation path.
struct GeometryParams {
  std::vector<double> mu_bs;       // BS receive, one per BS-IRS path
  std::vector<double> mu_ue;       // UE transmit, one per IRS-UE path
  std::vector<double> mu_irs_dep;  // IRS departure toward BS (L1)
  std::vector<double> psi_irs_dep;
  std::vector<double> mu_irs_arr;  // IRS arrival from UE (L2)
  std::vector<double> psi_irs_arr;

  std::size_t paths_bs() const noexcept { return mu_bs.size(); }
  std::size_t paths_ue() const noexcept { return mu_ue.size(); }
  /// Throws InvalidArgument on inconsistent lengths or frequencies outside [-pi, pi].
  void validate() const;
};

/// Rows x columns of the IRS panel; n1 * n2 == N.
struct UraShape {
  std::size_t n1 = 1;
  std::size_t n2 = 1;
};

/// Most-square factor pair of n (n1 <= n2); sqrt(n) x sqrt(n) for perfect squares.
UraShape default_ura_shape(std::size_t n);

struct ArFadingConfig {
  double lambda = 0.75;
  std::size_t blocks = 5;
  void validate() const;
};

/// Geometric channels of one Monte-Carlo realization.
/// G = A_rx diag(alpha) B_tx^H is static; H[k] = B_rx diag(beta[k]) A_tx^H ages per block.
struct ChannelRealization {
  ComplexMatrix A_rx;  // M x L1
  ComplexMatrix A_tx;  // Q x L2
  ComplexMatrix B_rx;  // N x L2
  ComplexMatrix B_tx;  // N x L1
  ComplexVector alpha;
  std::vector<ComplexVector> beta;
  ComplexMatrix G;
  std::vector<ComplexMatrix> H;

  std::size_t blocks() const noexcept { return H.size(); }
  /// H[k]^T kr G, the MQ x N matrix the receiver actually observes.
  ComplexMatrix combined(std::size_t k) const;
  /// All combined channels stacked as frontal slices (MQ x N x K).
  ComplexTensor3 combined_tensor() const;
};

/// exp(-j m mu), m = 0..n_elems-1.
ComplexVector ula_steering(double mu, std::size_t n_elems);

/// kron(ula(mu, n1), ula(psi, n2)). Throws DimMismatch if
/// `expected_len` is given and differs from n1 * n2.
ComplexVector ura_steering(double mu, double psi, std::size_t n1, std::size_t n2,
                           std::optional<std::size_t> expected_len = std::nullopt);

GeometryParams draw_geometry(Rng& rng, std::size_t paths_bs, std::size_t paths_ue);

/// L i.i.d. CN(0, 1) samples.
ComplexVector draw_gains(Rng& rng, std::size_t count);

/// One AR(1) step: lambda * prev + CN(0, (1 - lambda^2) I).
ComplexVector ar_step(const ComplexVector& prev, const ArFadingConfig& cfg, Rng& rng);

/// beta_1 ~ CN(0, I), then cfg.blocks - 1 AR steps.
std::vector<ComplexVector> draw_gain_sequence(Rng& rng, std::size_t paths_ue, const ArFadingConfig& cfg);

ChannelRealization build_channels(const GeometryParams& geom, const ComplexVector& alpha,
                                  const std::vector<ComplexVector>& beta, std::size_t M, std::size_t Q,
                                  std::size_t N, std::optional<UraShape> ura = std::nullopt);

/// Draws geometry, gains, and the AR gain sequence in that order.
ChannelRealization draw_realization(Rng& rng, std::size_t M, std::size_t Q, std::size_t N, std::size_t paths_bs,
                                    std::size_t paths_ue, const ArFadingConfig& fading);

}  // namespace irsce
