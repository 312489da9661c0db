#include "irsce/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irsce/error.hpp"

namespace irsce {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix random_cn(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex{re, im};
    }
  }
  return m;
}

// Leading `rank` left singular vectors of m, padded with random columns.
ComplexMatrix leading_subspace(const ComplexMatrix& m, std::size_t rank, Rng& rng) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  if (svd.info() != Eigen::Success) throw Error(ErrorCode::SvdFailure, "ALS init: SVD did not converge");
  const Eigen::Index have = std::min<Eigen::Index>(svd.matrixU().cols(), idx(rank));
  ComplexMatrix out(m.rows(), idx(rank));
  out.leftCols(have) = svd.matrixU().leftCols(have);
  if (have < idx(rank)) out.rightCols(idx(rank) - have) = random_cn(rng, m.rows(), idx(rank) - have);
  return out;
}

}  // namespace

IdentifiabilityCheck check_identifiability(std::size_t M, std::size_t Q, std::size_t N, std::size_t K,
                                           std::size_t T, std::size_t L1, std::size_t L2) {
  const std::size_t rank = L1 * L2;
  IdentifiabilityCheck c;
  c.ls_ok = T >= Q * N;
  c.mode1_ok = rank <= N * K;
  c.mode2_ok = rank <= M * Q * K;
  c.mode3_ok = rank <= M * Q * N;
  return c;
}

void require_identifiable(std::size_t M, std::size_t Q, std::size_t N, std::size_t K, std::size_t T,
                          std::size_t L1, std::size_t L2) {
  if (M == 0 || Q == 0 || N == 0 || K == 0 || T == 0 || L1 == 0 || L2 == 0) {
    throw Error(ErrorCode::IdentifiabilityError, "all dimensions must be positive");
  }
  const auto c = check_identifiability(M, Q, N, K, T, L1, L2);
  if (c.all()) return;
  std::string msg = "configuration is not identifiable:";
  if (!c.ls_ok) msg += " T < QN";
  if (!c.mode1_ok) msg += " L1L2 > NK";
  if (!c.mode2_ok) msg += " L1L2 > MQK";
  if (!c.mode3_ok) msg += " L1L2 > MQN";
  throw Error(ErrorCode::IdentifiabilityError, msg);
}

LsEstimator::LsEstimator(const PilotDesign& design, double tol)
    : rows_(design.M * design.Q), cols_(design.N) {
  if (!design.identifiable()) {
    throw Error(ErrorCode::IdentifiabilityError,
                "LS needs T >= QN (T=" + std::to_string(design.T) + ", QN=" + std::to_string(design.Q * design.N) + ")");
  }
  omega_pinv_ = pinv(design.Omega, tol);
}

LsBlockEstimate LsEstimator::estimate(const ComplexVector& y) const {
  if (y.size() != omega_pinv_.cols()) {
    throw Error(ErrorCode::DimMismatch, "received block length " + std::to_string(y.size()) +
                                            " != MT=" + std::to_string(omega_pinv_.cols()));
  }
  LsBlockEstimate out;
  out.u_hat = omega_pinv_ * y;
  out.R = unvec(out.u_hat, rows_, cols_);
  return out;
}

LsBlockEstimate ls_combined(const ComplexVector& y, const PilotDesign& design) {
  return LsEstimator(design).estimate(y);
}

ComplexTensor3 stack_blocks(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw Error(ErrorCode::DimMismatch, "stack_blocks: no blocks");
  const auto rows = static_cast<std::size_t>(blocks.front().rows());
  const auto cols = static_cast<std::size_t>(blocks.front().cols());
  ComplexTensor3 t(rows, cols, blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) t.set_slice(k, blocks[k]);
  return t;
}

KrfResult krf_baseline(const ComplexMatrix& R_k, std::size_t M, std::size_t Q, std::size_t N) {
  if (static_cast<std::size_t>(R_k.rows()) != M * Q || static_cast<std::size_t>(R_k.cols()) != N) {
    throw Error(ErrorCode::DimMismatch, "KRF input must be MQ x N");
  }
  KrfResult out;
  out.G_hat = ComplexMatrix::Zero(idx(M), idx(N));
  out.Ht_hat = ComplexMatrix::Zero(idx(Q), idx(N));
  for (std::size_t n = 0; n < N; ++n) {
    const auto col = R_k.col(idx(n));
    if (col.isZero(0.0)) continue;
    // vec(g h^T) = h kron g, so the column reshapes to an M x Q rank-one matrix.
    const ComplexMatrix X = Eigen::Map<const ComplexMatrix>(col.data(), idx(M), idx(Q));
    if (!X.allFinite()) throw Error(ErrorCode::SvdFailure, "KRF: non-finite column");
    Eigen::JacobiSVD<ComplexMatrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ++out.svd_calls;
    const double root = std::sqrt(svd.singularValues()(0));
    out.G_hat.col(idx(n)) = root * svd.matrixU().col(0);
    out.Ht_hat.col(idx(n)) = root * svd.matrixV().col(0).conjugate();
  }
  out.R_hat = khatri_rao(out.Ht_hat, out.G_hat);
  return out;
}

AlsReport als_fit(const ComplexTensor3& R, const AlsOptions& opts, Rng& rng) {
  const auto [d1, d2, d3] = R.dims();
  const std::size_t rank = opts.rank;
  if (rank == 0 || rank > d2 * d3 || rank > d1 * d3 || rank > d1 * d2) {
    throw Error(ErrorCode::IdentifiabilityError,
                "CP rank " + std::to_string(rank) + " violates the unfolding rank conditions");
  }

  const ComplexMatrix R1 = unfold(R, 1);
  const ComplexMatrix R2 = unfold(R, 2);
  const ComplexMatrix R3 = unfold(R, 3);

  AlsReport report;
  CPFactors& f = report.factors;
  if (opts.init == AlsInit::Random) {
    f.A = random_cn(rng, idx(d1), idx(rank));
    f.B = random_cn(rng, idx(d2), idx(rank));
    f.F = random_cn(rng, idx(rank), idx(d3));
  } else {
    f.A = leading_subspace(R1, rank, rng);
    f.B = leading_subspace(R2, rank, rng);
    f.F = (R3 * pinv(khatri_rao(f.B, f.A).transpose())).transpose();
  }

  auto fit_error = [&](const ComplexMatrix& kr_ba) {
    return (R3 - f.F.transpose() * kr_ba.transpose()).squaredNorm();
  };

  double prev = fit_error(khatri_rao(f.B, f.A));
  while (report.iterations < opts.max_iters) {
    f.A = R1 * pinv(khatri_rao(f.F.transpose(), f.B).transpose());
    f.B = R2 * pinv(khatri_rao(f.F.transpose(), f.A).transpose());
    const ComplexMatrix kr_ba = khatri_rao(f.B, f.A);
    f.F = (R3 * pinv(kr_ba.transpose())).transpose();

    const double e = fit_error(kr_ba);
    report.error_trace.push_back(e);
    ++report.iterations;
    if (std::abs(e - prev) <= opts.eps) {
      report.converged = true;
      break;
    }
    prev = e;
  }
  return report;
}

AlsReport als_fit_normalized(const ComplexTensor3& R, const AlsOptions& opts, Rng& rng) {
  const double scale = fro_norm(R);
  if (scale == 0.0) throw Error(ErrorCode::ZeroReference, "ALS input tensor is identically zero");
  ComplexTensor3 unit = R;
  unit *= Complex{1.0 / scale, 0.0};
  AlsReport report = als_fit(unit, opts, rng);
  report.factors.A *= scale;
  return report;
}

double nmse(const ComplexMatrix& truth, const ComplexMatrix& est) {
  if (truth.rows() != est.rows() || truth.cols() != est.cols()) {
    throw Error(ErrorCode::DimMismatch, "nmse: shape mismatch");
  }
  const double ref = truth.squaredNorm();
  if (ref == 0.0) throw Error(ErrorCode::ZeroReference, "nmse: reference is zero");
  return (truth - est).squaredNorm() / ref;
}

double nmse(const ComplexTensor3& truth, const ComplexTensor3& est) {
  if (truth.dims() != est.dims()) throw Error(ErrorCode::DimMismatch, "nmse: shape mismatch");
  const double ref = fro_norm(truth);
  if (ref == 0.0) throw Error(ErrorCode::ZeroReference, "nmse: reference is zero");
  const double err = fro_norm(truth - est);
  return (err * err) / (ref * ref);
}

}  // namespace irsce
