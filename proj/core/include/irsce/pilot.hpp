#pragma once

#include <cstddef>

#include "irsce/channel.hpp"
#include "irsce/tensor.hpp"

namespace irsce {

/// Training protocol shared by all blocks: IRS phases S (N x T), UE pilots
/// Z (Q x T) and the sensing operator Omega = (S kr Z)^T kron I_M (MT x MQN).
struct PilotDesign {
  std::size_t M = 0;
  std::size_t Q = 0;
  std::size_t N = 0;
  std::size_t T = 0;
  ComplexMatrix S;
  ComplexMatrix Z;
  ComplexMatrix Omega;

  /// T >= QN, i.e. Omega has at least as many rows as unknowns per receive antenna.
  bool identifiable() const noexcept { return T >= Q * N; }
};

/// Noisy stacked observation y_k = [y_{k,1}; ...; y_{k,T}] of one block.
struct ReceivedBlock {
  std::size_t k = 0;
  ComplexVector y;
  double snr_db = 0.0;
  double noise_var = 0.0;
};

/// First Q rows of the T x T Sylvester-Hadamard matrix.
ComplexMatrix hadamard_pilots(std::size_t Q, std::size_t T);

/// First N rows of the T x T DFT matrix, entries exp(-j 2 pi n t / T).
ComplexMatrix dft_phase_schedule(std::size_t N, std::size_t T);

ComplexMatrix build_omega(const ComplexMatrix& S, const ComplexMatrix& Z, std::size_t M);

/// Hadamard pilots, DFT phases, and the matching Omega.
PilotDesign make_design(std::size_t M, std::size_t Q, std::size_t N, std::size_t T);

/// Noiseless y_k computed slot by slot: G diag(s_t) H_k z_t.
ComplexVector noiseless_block(const ComplexMatrix& G, const ComplexMatrix& H_k, const PilotDesign& design);

/**
 * Synthesizes y_{k,t} = G diag(s_t) H_k z_t + v_{k,t} for t = 1..T.
 *
 * Noise is CN(0, sigma^2) with sigma^2 = ||y_k noiseless||^2 / (M T 10^(snr/10)),
 * i.e. the SNR is measured per receive antenna and slot on this realization.
 * An infinite snr_db disables noise and draws nothing from `rng`.
 */
ReceivedBlock simulate_block(const ComplexMatrix& G, const ComplexMatrix& H_k, const PilotDesign& design,
                             double snr_db, Rng& rng, std::size_t k = 0);

/// Same as simulate_block but with an absolute noise variance. The reported
/// snr_db is derived from the realized noiseless energy.
ReceivedBlock simulate_block_fixed_noise(const ComplexMatrix& G, const ComplexMatrix& H_k,
                                         const PilotDesign& design, double noise_var, Rng& rng,
                                         std::size_t k = 0);

}  // namespace irsce
