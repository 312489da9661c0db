#include "irsce/pilot.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "irsce/error.hpp"

namespace irsce {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_block_dims(const ComplexMatrix& G, const ComplexMatrix& H_k, const PilotDesign& d) {
  if (static_cast<std::size_t>(G.rows()) != d.M || static_cast<std::size_t>(G.cols()) != d.N ||
      static_cast<std::size_t>(H_k.rows()) != d.N || static_cast<std::size_t>(H_k.cols()) != d.Q) {
    throw Error(ErrorCode::DimMismatch, "channel shapes do not match the pilot design");
  }
}

void add_noise(ComplexVector& y, double noise_var, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(noise_var / 2.0));
  for (auto& v : y) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += Complex{re, im};
  }
}

}  // namespace

ComplexMatrix hadamard_pilots(std::size_t Q, std::size_t T) {
  if (!is_power_of_two(T)) throw Error(ErrorCode::NotPowerOfTwo, "Hadamard length T=" + std::to_string(T));
  if (Q > T) throw Error(ErrorCode::QExceedsT, "Q=" + std::to_string(Q) + " exceeds T=" + std::to_string(T));
  // Sylvester construction: H[r, c] = (-1)^popcount(r & c).
  ComplexMatrix Z(idx(Q), idx(T));
  for (std::size_t r = 0; r < Q; ++r) {
    for (std::size_t c = 0; c < T; ++c) {
      Z(idx(r), idx(c)) = (std::popcount(r & c) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return Z;
}

ComplexMatrix dft_phase_schedule(std::size_t N, std::size_t T) {
  if (N > T) throw Error(ErrorCode::NExceedsT, "N=" + std::to_string(N) + " exceeds T=" + std::to_string(T));
  ComplexMatrix S(idx(N), idx(T));
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t t = 0; t < T; ++t) {
      // Reduce the exponent mod T first so the phase argument stays small.
      const auto e = static_cast<double>((n * t) % T);
      S(idx(n), idx(t)) = std::polar(1.0, -2.0 * std::numbers::pi * e / static_cast<double>(T));
    }
  }
  return S;
}

ComplexMatrix build_omega(const ComplexMatrix& S, const ComplexMatrix& Z, std::size_t M) {
  if (S.cols() != Z.cols()) {
    throw Error(ErrorCode::DimMismatch, "S and Z must span the same number of slots");
  }
  if (M == 0) throw Error(ErrorCode::DimMismatch, "M must be >= 1");
  return kron(khatri_rao(S, Z).transpose(), ComplexMatrix::Identity(idx(M), idx(M)));
}

PilotDesign make_design(std::size_t M, std::size_t Q, std::size_t N, std::size_t T) {
  PilotDesign d;
  d.M = M;
  d.Q = Q;
  d.N = N;
  d.T = T;
  d.Z = hadamard_pilots(Q, T);
  d.S = dft_phase_schedule(N, T);
  d.Omega = build_omega(d.S, d.Z, M);
  return d;
}

ComplexVector noiseless_block(const ComplexMatrix& G, const ComplexMatrix& H_k, const PilotDesign& design) {
  check_block_dims(G, H_k, design);
  const auto M = idx(design.M);
  ComplexVector y(M * idx(design.T));
  for (std::size_t t = 0; t < design.T; ++t) {
    const auto tt = idx(t);
    y.segment(tt * M, M) = G * (design.S.col(tt).asDiagonal() * (H_k * design.Z.col(tt)));
  }
  return y;
}

ReceivedBlock simulate_block(const ComplexMatrix& G, const ComplexMatrix& H_k, const PilotDesign& design,
                             double snr_db, Rng& rng, std::size_t k) {
  ReceivedBlock out;
  out.k = k;
  out.snr_db = snr_db;
  out.y = noiseless_block(G, H_k, design);
  if (std::isinf(snr_db) && snr_db > 0) {
    out.noise_var = 0.0;
    return out;
  }
  if (std::isnan(snr_db)) throw Error(ErrorCode::InvalidArgument, "SNR is NaN");
  const double per_entry = out.y.squaredNorm() / static_cast<double>(out.y.size());
  out.noise_var = per_entry / std::pow(10.0, snr_db / 10.0);
  add_noise(out.y, out.noise_var, rng);
  return out;
}

ReceivedBlock simulate_block_fixed_noise(const ComplexMatrix& G, const ComplexMatrix& H_k,
                                         const PilotDesign& design, double noise_var, Rng& rng, std::size_t k) {
  if (!(noise_var >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise variance must be >= 0");
  ReceivedBlock out;
  out.k = k;
  out.y = noiseless_block(G, H_k, design);
  out.noise_var = noise_var;
  const double per_entry = out.y.squaredNorm() / static_cast<double>(out.y.size());
  if (noise_var == 0.0) {
    out.snr_db = std::numeric_limits<double>::infinity();
  } else {
    out.snr_db = 10.0 * std::log10(per_entry / noise_var);  // -inf for a silent channel
  }
  if (noise_var > 0.0) add_noise(out.y, noise_var, rng);
  return out;
}

}  // namespace irsce
