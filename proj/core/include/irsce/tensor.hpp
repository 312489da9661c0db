#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace irsce {

using Complex = std::complex<double>;

/// Dense complex matrix, column-major (Eigen default).
using ComplexMatrix = Eigen::MatrixXcd;
/// Dense complex column vector.
using ComplexVector = Eigen::VectorXcd;

/// Default relative cutoff for pseudo-inverse singular values.
inline constexpr double kPinvTolerance = 1e-12;

/**
 * Dense third-order complex tensor of shape (I1, I2, I3).
 *
 * Storage is column-major: entry (i, j, k) lives at i + I1 * (j + I2 * k),
 * so frontal slice k is a contiguous I1 x I2 column-major matrix. With this
 * layout a CP tensor with factors A (I1 x R), B (I2 x R), C (I3 x R) unfolds
 * as
 *
 *   unfold(T, 1) = A (C kr B)^T      (I1 x I2*I3, column j + I2*k)
 *   unfold(T, 2) = B (C kr A)^T      (I2 x I1*I3, column i + I1*k)
 *   unfold(T, 3) = C (B kr A)^T      (I3 x I1*I2, column i + I1*j)
 *
 * where "kr" is the Khatri-Rao product.
 */
class ComplexTensor3 {
 public:
  ComplexTensor3() = default;
  ComplexTensor3(std::size_t d1, std::size_t d2, std::size_t d3);

  static ComplexTensor3 zeros(std::size_t d1, std::size_t d2, std::size_t d3) {
    return ComplexTensor3(d1, d2, d3);
  }

  std::array<std::size_t, 3> dims() const noexcept { return dims_; }
  std::size_t dim(int mode) const;
  std::size_t size() const noexcept { return data_.size(); }

  Complex& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[i + dims_[0] * (j + dims_[1] * k)];
  }
  const Complex& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[i + dims_[0] * (j + dims_[1] * k)];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  /// Frontal slice k as an I1 x I2 matrix.
  ComplexMatrix slice(std::size_t k) const;
  void set_slice(std::size_t k, const ComplexMatrix& m);

  ComplexTensor3& operator*=(Complex s);
  friend ComplexTensor3 operator-(const ComplexTensor3& a, const ComplexTensor3& b);
  friend bool operator==(const ComplexTensor3&, const ComplexTensor3&) = default;

 private:
  std::array<std::size_t, 3> dims_{0, 0, 0};
  std::vector<Complex> data_;
};

/// Factor matrices of a rank-R CP model: A (I1 x R), B (I2 x R), F (R x I3).
/// The third factor is stored transposed, matching the channel model where
/// column k of F holds the path-gain products of block k.
struct CPFactors {
  ComplexMatrix A;
  ComplexMatrix B;
  ComplexMatrix F;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(A.cols()); }
  /// Throws DimMismatch unless A.cols == B.cols == F.rows.
  void validate() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-wise Kronecker product; throws ColumnMismatch if a.cols != b.cols.
ComplexMatrix khatri_rao(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization.
ComplexVector vec(const ComplexMatrix& m);
/// Inverse of vec; throws LengthMismatch if v.size() != rows * cols.
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);

ComplexMatrix diag(const ComplexVector& v);
/// Diagonal matrix built from row j of b; throws IndexOutOfRange.
ComplexMatrix diag_row(const ComplexMatrix& b, std::size_t j);

/// Mode-n unfolding, mode in {1, 2, 3}; throws InvalidMode.
ComplexMatrix unfold(const ComplexTensor3& t, int mode);
/// Inverse of unfold for the given tensor dimensions.
ComplexTensor3 fold(const ComplexMatrix& m, int mode, std::array<std::size_t, 3> dims);

/// T(i,j,k) = sum_r A(i,r) B(j,r) F(r,k).
ComplexTensor3 cp_build(const CPFactors& f);

/// Moore-Penrose pseudo-inverse via SVD. Singular values at or below
/// tol * sigma_max are dropped. Throws SvdFailure on non-finite input or output.
ComplexMatrix pinv(const ComplexMatrix& m, double tol = kPinvTolerance);

double fro_norm(const ComplexMatrix& m);
double fro_norm(const ComplexTensor3& t);
double fro_norm(std::span<const Complex> x);

}  // namespace irsce
