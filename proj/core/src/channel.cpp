#include "irsce/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "irsce/error.hpp"

namespace irsce {

namespace {

using std::numbers::pi;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_freqs(const std::vector<double>& v, const char* name) {
  for (double f : v) {
    if (!(f >= -pi && f <= pi)) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + ": spatial frequency outside [-pi, pi]");
    }
  }
}

Complex standard_cn(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

void GeometryParams::validate() const {
  const std::size_t l1 = mu_bs.size();
  const std::size_t l2 = mu_ue.size();
  if (l1 == 0 || l2 == 0) throw Error(ErrorCode::InvalidArgument, "geometry needs at least one path per link");
  if (mu_irs_dep.size() != l1 || psi_irs_dep.size() != l1 || mu_irs_arr.size() != l2 ||
      psi_irs_arr.size() != l2) {
    throw Error(ErrorCode::InvalidArgument, "geometry: path arrays disagree with L1/L2");
  }
  check_freqs(mu_bs, "mu_bs");
  check_freqs(mu_ue, "mu_ue");
  check_freqs(mu_irs_dep, "mu_irs_dep");
  check_freqs(psi_irs_dep, "psi_irs_dep");
  check_freqs(mu_irs_arr, "mu_irs_arr");
  check_freqs(psi_irs_arr, "psi_irs_arr");
}

UraShape default_ura_shape(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::NonFactorableArray, "IRS with zero elements");
  auto n1 = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (n1 * n1 > n) --n1;
  while ((n1 + 1) * (n1 + 1) <= n) ++n1;
  while (n % n1 != 0) --n1;
  return {n1, n / n1};
}

void ArFadingConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "AR correlation must lie in [0, 1]");
  }
  if (blocks == 0) throw Error(ErrorCode::InvalidArgument, "AR fading needs at least one block");
}

ComplexMatrix ChannelRealization::combined(std::size_t k) const {
  return khatri_rao(H.at(k).transpose(), G);
}

ComplexTensor3 ChannelRealization::combined_tensor() const {
  const auto rows = static_cast<std::size_t>(G.rows() * A_tx.rows());
  const auto cols = static_cast<std::size_t>(G.cols());
  ComplexTensor3 t(rows, cols, H.size());
  for (std::size_t k = 0; k < H.size(); ++k) t.set_slice(k, combined(k));
  return t;
}

ComplexVector ula_steering(double mu, std::size_t n_elems) {
  if (n_elems == 0) throw Error(ErrorCode::InvalidArgument, "steering vector needs at least one element");
  ComplexVector a(idx(n_elems));
  for (std::size_t m = 0; m < n_elems; ++m) {
    // std::polar keeps |a_m| == 1 to rounding; entry 0 is exactly 1.
    a(idx(m)) = std::polar(1.0, -static_cast<double>(m) * mu);
  }
  return a;
}

ComplexVector ura_steering(double mu, double psi, std::size_t n1, std::size_t n2,
                           std::optional<std::size_t> expected_len) {
  if (expected_len && *expected_len != n1 * n2) {
    throw Error(ErrorCode::DimMismatch, "URA shape " + std::to_string(n1) + "x" + std::to_string(n2) +
                                            " does not match N=" + std::to_string(*expected_len));
  }
  return kron(ula_steering(mu, n1), ula_steering(psi, n2));
}

GeometryParams draw_geometry(Rng& rng, std::size_t paths_bs, std::size_t paths_ue) {
  if (paths_bs == 0 || paths_ue == 0) throw Error(ErrorCode::InvalidArgument, "path counts must be >= 1");
  std::uniform_real_distribution<double> full(-pi, pi);
  std::uniform_real_distribution<double> half(-pi / 2, pi / 2);

  GeometryParams g;
  for (std::size_t l = 0; l < paths_bs; ++l) {
    g.mu_bs.push_back(pi * std::cos(full(rng)));
    const double az = half(rng);
    const double el = half(rng);
    g.mu_irs_dep.push_back(pi * std::cos(az) * std::sin(el));
    g.psi_irs_dep.push_back(pi * std::cos(az));
  }
  for (std::size_t l = 0; l < paths_ue; ++l) {
    g.mu_ue.push_back(pi * std::cos(full(rng)));
    const double az = half(rng);
    const double el = half(rng);
    g.mu_irs_arr.push_back(pi * std::cos(az) * std::sin(el));
    g.psi_irs_arr.push_back(pi * std::cos(az));
  }
  return g;
}

ComplexVector draw_gains(Rng& rng, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "draw_gains: count must be >= 1");
  ComplexVector g(idx(count));
  for (auto& x : g) x = standard_cn(rng);
  return g;
}

ComplexVector ar_step(const ComplexVector& prev, const ArFadingConfig& cfg, Rng& rng) {
  cfg.validate();
  const double innovation = std::sqrt(1.0 - cfg.lambda * cfg.lambda);
  ComplexVector next(prev.size());
  for (Eigen::Index i = 0; i < prev.size(); ++i) {
    next(i) = cfg.lambda * prev(i) + innovation * standard_cn(rng);
  }
  return next;
}

std::vector<ComplexVector> draw_gain_sequence(Rng& rng, std::size_t paths_ue, const ArFadingConfig& cfg) {
  cfg.validate();
  std::vector<ComplexVector> seq;
  seq.reserve(cfg.blocks);
  seq.push_back(draw_gains(rng, paths_ue));
  for (std::size_t k = 1; k < cfg.blocks; ++k) seq.push_back(ar_step(seq.back(), cfg, rng));
  return seq;
}

ChannelRealization build_channels(const GeometryParams& geom, const ComplexVector& alpha,
                                  const std::vector<ComplexVector>& beta, std::size_t M, std::size_t Q,
                                  std::size_t N, std::optional<UraShape> ura) {
  geom.validate();
  const std::size_t l1 = geom.paths_bs();
  const std::size_t l2 = geom.paths_ue();
  if (M == 0 || Q == 0) throw Error(ErrorCode::DimMismatch, "M and Q must be >= 1");
  if (static_cast<std::size_t>(alpha.size()) != l1) {
    throw Error(ErrorCode::DimMismatch, "alpha length does not match L1");
  }
  if (beta.empty()) throw Error(ErrorCode::DimMismatch, "need at least one block of IRS-UE gains");
  for (const auto& b : beta) {
    if (static_cast<std::size_t>(b.size()) != l2) throw Error(ErrorCode::DimMismatch, "beta length != L2");
  }
  const UraShape shape = ura ? *ura : default_ura_shape(N);
  if (shape.n1 * shape.n2 != N) {
    throw Error(ErrorCode::NonFactorableArray, "IRS panel " + std::to_string(shape.n1) + "x" +
                                                   std::to_string(shape.n2) + " does not hold N=" +
                                                   std::to_string(N) + " elements");
  }

  ChannelRealization ch;
  ch.A_rx.resize(idx(M), idx(l1));
  ch.B_tx.resize(idx(N), idx(l1));
  for (std::size_t l = 0; l < l1; ++l) {
    ch.A_rx.col(idx(l)) = ula_steering(geom.mu_bs[l], M);
    ch.B_tx.col(idx(l)) = ura_steering(geom.mu_irs_dep[l], geom.psi_irs_dep[l], shape.n1, shape.n2, N);
  }
  ch.A_tx.resize(idx(Q), idx(l2));
  ch.B_rx.resize(idx(N), idx(l2));
  for (std::size_t l = 0; l < l2; ++l) {
    ch.A_tx.col(idx(l)) = ula_steering(geom.mu_ue[l], Q);
    ch.B_rx.col(idx(l)) = ura_steering(geom.mu_irs_arr[l], geom.psi_irs_arr[l], shape.n1, shape.n2, N);
  }
  ch.alpha = alpha;
  ch.beta = beta;
  ch.G = ch.A_rx * alpha.asDiagonal() * ch.B_tx.adjoint();
  ch.H.reserve(beta.size());
  for (const auto& b : beta) ch.H.push_back(ch.B_rx * b.asDiagonal() * ch.A_tx.adjoint());
  return ch;
}

ChannelRealization draw_realization(Rng& rng, std::size_t M, std::size_t Q, std::size_t N, std::size_t paths_bs,
                                    std::size_t paths_ue, const ArFadingConfig& fading) {
  const GeometryParams geom = draw_geometry(rng, paths_bs, paths_ue);
  const ComplexVector alpha = draw_gains(rng, paths_bs);
  const auto beta = draw_gain_sequence(rng, paths_ue, fading);
  return build_channels(geom, alpha, beta, M, Q, N);
}

}  // namespace irsce
