#include "irsce/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irsce/error.hpp"

namespace irsce {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_mode(int mode) {
  if (mode < 1 || mode > 3) {
    throw Error(ErrorCode::InvalidMode, "unfold mode must be 1, 2 or 3, got " + std::to_string(mode));
  }
}

}  // namespace

ComplexTensor3::ComplexTensor3(std::size_t d1, std::size_t d2, std::size_t d3)
    : dims_{d1, d2, d3}, data_(d1 * d2 * d3, Complex{0.0, 0.0}) {}

std::size_t ComplexTensor3::dim(int mode) const {
  check_mode(mode);
  return dims_[static_cast<std::size_t>(mode - 1)];
}

ComplexMatrix ComplexTensor3::slice(std::size_t k) const {
  if (k >= dims_[2]) {
    throw Error(ErrorCode::IndexOutOfRange, "slice index " + std::to_string(k) + " out of range");
  }
  const std::size_t n = dims_[0] * dims_[1];
  return Eigen::Map<const ComplexMatrix>(data_.data() + k * n, idx(dims_[0]), idx(dims_[1]));
}

void ComplexTensor3::set_slice(std::size_t k, const ComplexMatrix& m) {
  if (k >= dims_[2]) {
    throw Error(ErrorCode::IndexOutOfRange, "slice index " + std::to_string(k) + " out of range");
  }
  if (m.rows() != idx(dims_[0]) || m.cols() != idx(dims_[1])) {
    throw Error(ErrorCode::DimMismatch, "slice shape does not match tensor");
  }
  const std::size_t n = dims_[0] * dims_[1];
  Eigen::Map<ComplexMatrix>(data_.data() + k * n, idx(dims_[0]), idx(dims_[1])) = m;
}

ComplexTensor3& ComplexTensor3::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexTensor3 operator-(const ComplexTensor3& a, const ComplexTensor3& b) {
  if (a.dims_ != b.dims_) throw Error(ErrorCode::DimMismatch, "tensor difference: shape mismatch");
  ComplexTensor3 out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

void CPFactors::validate() const {
  if (A.cols() != B.cols() || A.cols() != F.rows()) {
    throw Error(ErrorCode::DimMismatch, "CP factors disagree on rank: A.cols=" + std::to_string(A.cols()) +
                                            " B.cols=" + std::to_string(B.cols()) +
                                            " F.rows=" + std::to_string(F.rows()));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix khatri_rao(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::ColumnMismatch, "khatri_rao: column counts differ (" + std::to_string(a.cols()) +
                                               " vs " + std::to_string(b.cols()) + ")");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.col(j).segment(i * b.rows(), b.rows()) = a(i, j) * b.col(j);
    }
  }
  return out;
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    throw Error(ErrorCode::LengthMismatch, "unvec: length " + std::to_string(v.size()) + " != " +
                                               std::to_string(rows) + "x" + std::to_string(cols));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), idx(rows), idx(cols));
}

ComplexMatrix diag(const ComplexVector& v) {
  ComplexMatrix out = ComplexMatrix::Zero(v.size(), v.size());
  out.diagonal() = v;
  return out;
}

ComplexMatrix diag_row(const ComplexMatrix& b, std::size_t j) {
  if (j >= static_cast<std::size_t>(b.rows())) {
    throw Error(ErrorCode::IndexOutOfRange, "diag_row: row " + std::to_string(j) + " of " +
                                                std::to_string(b.rows()));
  }
  return diag(b.row(idx(j)).transpose());
}

ComplexMatrix unfold(const ComplexTensor3& t, int mode) {
  check_mode(mode);
  const auto [d1, d2, d3] = t.dims();
  switch (mode) {
    case 1:
      // Column-major storage already is the mode-1 unfolding.
      return Eigen::Map<const ComplexMatrix>(t.data().data(), idx(d1), idx(d2 * d3));
    case 2: {
      ComplexMatrix out(idx(d2), idx(d1 * d3));
      for (std::size_t k = 0; k < d3; ++k)
        for (std::size_t i = 0; i < d1; ++i)
          for (std::size_t j = 0; j < d2; ++j) out(idx(j), idx(i + d1 * k)) = t(i, j, k);
      return out;
    }
    default: {
      ComplexMatrix out(idx(d3), idx(d1 * d2));
      for (std::size_t k = 0; k < d3; ++k)
        for (std::size_t j = 0; j < d2; ++j)
          for (std::size_t i = 0; i < d1; ++i) out(idx(k), idx(i + d1 * j)) = t(i, j, k);
      return out;
    }
  }
}

ComplexTensor3 fold(const ComplexMatrix& m, int mode, std::array<std::size_t, 3> dims) {
  check_mode(mode);
  const auto [d1, d2, d3] = dims;
  const auto m_idx = static_cast<std::size_t>(mode - 1);
  if (static_cast<std::size_t>(m.rows()) != dims[m_idx] ||
      static_cast<std::size_t>(m.size()) != d1 * d2 * d3) {
    throw Error(ErrorCode::DimMismatch, "fold: matrix shape incompatible with tensor dims");
  }
  ComplexTensor3 t(d1, d2, d3);
  for (std::size_t k = 0; k < d3; ++k) {
    for (std::size_t j = 0; j < d2; ++j) {
      for (std::size_t i = 0; i < d1; ++i) {
        switch (mode) {
          case 1: t(i, j, k) = m(idx(i), idx(j + d2 * k)); break;
          case 2: t(i, j, k) = m(idx(j), idx(i + d1 * k)); break;
          default: t(i, j, k) = m(idx(k), idx(i + d1 * j)); break;
        }
      }
    }
  }
  return t;
}

ComplexTensor3 cp_build(const CPFactors& f) {
  f.validate();
  // [T]_(1) = A (F^T kr B)^T
  const ComplexMatrix mode1 = f.A * khatri_rao(f.F.transpose(), f.B).transpose();
  return fold(mode1, 1,
              {static_cast<std::size_t>(f.A.rows()), static_cast<std::size_t>(f.B.rows()),
               static_cast<std::size_t>(f.F.cols())});
}

ComplexMatrix pinv(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) throw Error(ErrorCode::InvalidArgument, "pinv of an empty matrix");
  if (!m.allFinite()) throw Error(ErrorCode::SvdFailure, "pinv: input has non-finite entries");

  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw Error(ErrorCode::SvdFailure, "pinv: SVD did not converge");

  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? tol * s(0) : 0.0;
  Eigen::VectorXd s_inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) s_inv(i) = 1.0 / s(i);
  }
  ComplexMatrix out = svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
  if (!out.allFinite()) throw Error(ErrorCode::SvdFailure, "pinv: non-finite result");
  return out;
}

double fro_norm(const ComplexMatrix& m) { return m.norm(); }

double fro_norm(const ComplexTensor3& t) { return fro_norm(t.data()); }

double fro_norm(std::span<const Complex> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

}  // namespace irsce
