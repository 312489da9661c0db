#include "irsce/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "irsce/error.hpp"
#include "test_util.hpp"

namespace irsce {
namespace {

using testing::max_abs_diff;
using testing::random_factors;
using testing::random_matrix;
using testing::random_vector;

// Independent oracles: plain index loops over the textbook definitions.

ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index p = 0; p < b.rows(); ++p)
        for (Eigen::Index q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return out;
}

ComplexMatrix khatri_rao_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) out.col(j) = kron_oracle(a.col(j), b.col(j));
  return out;
}

ComplexTensor3 cp_oracle(const CPFactors& f) {
  ComplexTensor3 t(f.A.rows(), f.B.rows(), f.F.cols());
  for (Eigen::Index i = 0; i < f.A.rows(); ++i)
    for (Eigen::Index j = 0; j < f.B.rows(); ++j)
      for (Eigen::Index k = 0; k < f.F.cols(); ++k) {
        Complex acc{};
        for (Eigen::Index r = 0; r < f.A.cols(); ++r) acc += f.A(i, r) * f.B(j, r) * f.F(r, k);
        t(i, j, k) = acc;
      }
  return t;
}

double tensor_max_diff(const ComplexTensor3& a, const ComplexTensor3& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

TEST(Kron, IdentityTimesIdentity) {
  const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(kron(I2, I2), ComplexMatrix::Identity(4, 4));
}

TEST(Kron, ScalarOneIsNeutral) {
  Rng rng(1);
  const ComplexMatrix m = random_matrix(rng, 3, 5);
  EXPECT_EQ(kron(ComplexMatrix::Ones(1, 1), m), m);
}

TEST(Kron, MatchesElementwiseDefinition) {
  Rng rng(2);
  const ComplexMatrix a = random_matrix(rng, 2, 3);
  const ComplexMatrix b = random_matrix(rng, 3, 2);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  EXPECT_LT(max_abs_diff(k, kron_oracle(a, b)), 1e-15);
}

TEST(KhatriRao, IdentityColumns) {
  const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 2);
  expected(0, 0) = 1.0;  // e1 kron e1
  expected(3, 1) = 1.0;  // e2 kron e2
  EXPECT_EQ(khatri_rao(I2, I2), expected);
}

TEST(KhatriRao, OnesRowIsNeutral) {
  Rng rng(3);
  const ComplexMatrix b = random_matrix(rng, 4, 3);
  EXPECT_EQ(khatri_rao(ComplexMatrix::Ones(1, 3), b), b);
}

TEST(KhatriRao, MatchesColumnwiseKron) {
  Rng rng(4);
  const ComplexMatrix a = random_matrix(rng, 3, 2);
  const ComplexMatrix b = random_matrix(rng, 4, 2);
  EXPECT_LT(max_abs_diff(khatri_rao(a, b), khatri_rao_oracle(a, b)), 1e-15);
}

TEST(KhatriRao, ColumnMismatchThrows) {
  const ComplexMatrix a = ComplexMatrix::Ones(2, 2);
  const ComplexMatrix b = ComplexMatrix::Ones(2, 3);
  try {
    khatri_rao(a, b);
    FAIL() << "expected ColumnMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ColumnMismatch);
  }
}

TEST(KhatriRao, MixedProductProperty) {
  // (A kron B)(C kr D) == (AC) kr (BD)
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix A = random_matrix(rng, 3, 4);
    const ComplexMatrix B = random_matrix(rng, 2, 5);
    const ComplexMatrix C = random_matrix(rng, 4, 3);
    const ComplexMatrix D = random_matrix(rng, 5, 3);
    EXPECT_LT(max_abs_diff(kron(A, B) * khatri_rao(C, D), khatri_rao(A * C, B * D)), 1e-10);
  }
}

TEST(Vec, ColumnStacking) {
  ComplexMatrix m(2, 2);
  m << 1.0, 3.0, 2.0, 4.0;
  ComplexVector expected(4);
  expected << 1.0, 2.0, 3.0, 4.0;
  EXPECT_EQ(vec(m), expected);
}

TEST(Vec, UnvecInvertsVec) {
  Rng rng(6);
  const ComplexMatrix m = random_matrix(rng, 3, 7);
  EXPECT_EQ(unvec(vec(m), 3, 7), m);
}

TEST(Vec, UnvecLengthMismatch) {
  try {
    unvec(ComplexVector::Ones(5), 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(Vec, DiagonalSandwichIdentity) {
  // vec(A diag(b) C) == (C^T kr A) b, compared against the direct product.
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix A = random_matrix(rng, 3, 4);
    const ComplexVector b = random_vector(rng, 4);
    const ComplexMatrix C = random_matrix(rng, 4, 5);
    const ComplexMatrix direct = A * diag(b) * C;
    EXPECT_LT(max_abs_diff(vec(direct), khatri_rao(C.transpose(), A) * b), 1e-10);
  }
}

TEST(Diag, OnesGiveIdentity) { EXPECT_EQ(diag(ComplexVector::Ones(3)), ComplexMatrix::Identity(3, 3)); }

TEST(Diag, RowOfMatrix) {
  ComplexMatrix b(2, 3);
  b << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  const ComplexMatrix d = diag_row(b, 1);
  ASSERT_EQ(d.rows(), 3);
  EXPECT_EQ(d(0, 0), Complex(4.0));
  EXPECT_EQ(d(1, 1), Complex(5.0));
  EXPECT_EQ(d(2, 2), Complex(6.0));
  EXPECT_EQ(d(0, 1), Complex(0.0));
  EXPECT_EQ(d(2, 0), Complex(0.0));
}

TEST(Diag, RowOutOfRange) {
  try {
    diag_row(ComplexMatrix::Ones(2, 3), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(Diag, ActsElementwise) {
  Rng rng(8);
  const ComplexVector v = random_vector(rng, 6);
  const ComplexVector x = random_vector(rng, 6);
  EXPECT_LT(max_abs_diff(diag(v) * x, v.cwiseProduct(x)), 1e-15);
  const ComplexMatrix d = diag(v);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      if (i != j) EXPECT_EQ(d(i, j), Complex(0.0));
}

TEST(Unfold, HandWrittenReshape2x2x1) {
  ComplexTensor3 t(2, 2, 1);
  t(0, 0, 0) = 1.0;
  t(1, 0, 0) = 2.0;
  t(0, 1, 0) = 3.0;
  t(1, 1, 0) = 4.0;
  ComplexMatrix m1(2, 2), m2(2, 2), m3(1, 4);
  m1 << 1.0, 3.0, 2.0, 4.0;  // rows i, columns j
  m2 << 1.0, 2.0, 3.0, 4.0;  // rows j, columns i
  m3 << 1.0, 2.0, 3.0, 4.0;  // column i + 2 j
  EXPECT_EQ(unfold(t, 1), m1);
  EXPECT_EQ(unfold(t, 2), m2);
  EXPECT_EQ(unfold(t, 3), m3);
}

TEST(Unfold, InvalidMode) {
  ComplexTensor3 t(2, 2, 2);
  for (int mode : {0, 4}) {
    try {
      unfold(t, mode);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidMode);
    }
  }
}

TEST(Unfold, FoldInvertsUnfold) {
  Rng rng(9);
  const ComplexMatrix data = random_matrix(rng, 3, 20);
  const ComplexTensor3 t = fold(data, 1, {3, 4, 5});
  for (int mode = 1; mode <= 3; ++mode) EXPECT_EQ(fold(unfold(t, mode), mode, t.dims()), t);
}

TEST(Unfold, CpClosedForms) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const CPFactors f = random_factors(rng, 6, 5, 4, 3);
    const ComplexTensor3 t = cp_build(f);
    const ComplexMatrix Ft = f.F.transpose();
    EXPECT_LT(fro_norm(unfold(t, 1) - f.A * khatri_rao(Ft, f.B).transpose()), 1e-12);
    EXPECT_LT(fro_norm(unfold(t, 2) - f.B * khatri_rao(Ft, f.A).transpose()), 1e-12);
    EXPECT_LT(fro_norm(unfold(t, 3) - Ft * khatri_rao(f.B, f.A).transpose()), 1e-12);
  }
}

TEST(CpBuild, RankOneOnes) {
  const CPFactors f{ComplexMatrix::Ones(3, 1), ComplexMatrix::Ones(2, 1), ComplexMatrix::Ones(1, 4)};
  const ComplexTensor3 t = cp_build(f);
  for (const auto& x : t.data()) EXPECT_EQ(x, Complex(1.0));
}

TEST(CpBuild, RankOneOuterProduct) {
  Rng rng(11);
  const CPFactors f = random_factors(rng, 3, 4, 2, 1);
  const ComplexTensor3 t = cp_build(f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        EXPECT_LT(std::abs(t(i, j, k) - f.A(i, 0) * f.B(j, 0) * f.F(0, k)), 1e-15);
}

TEST(CpBuild, MatchesTripleSum) {
  Rng rng(12);
  const CPFactors f = random_factors(rng, 5, 6, 7, 4);
  EXPECT_LT(tensor_max_diff(cp_build(f), cp_oracle(f)), 1e-12);
}

TEST(CpBuild, RankMismatchThrows) {
  const CPFactors f{ComplexMatrix::Ones(3, 2), ComplexMatrix::Ones(2, 2), ComplexMatrix::Ones(3, 4)};
  try {
    cp_build(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Tensor, SliceRoundTrip) {
  Rng rng(13);
  ComplexTensor3 t(3, 2, 4);
  const ComplexMatrix s = random_matrix(rng, 3, 2);
  t.set_slice(2, s);
  EXPECT_EQ(t.slice(2), s);
  EXPECT_EQ(t.slice(0), ComplexMatrix::Zero(3, 2));
  EXPECT_EQ(t(1, 1, 2), s(1, 1));
}

TEST(Pinv, Identity) {
  const ComplexMatrix I = ComplexMatrix::Identity(5, 5);
  EXPECT_LT(max_abs_diff(pinv(I), I), 1e-15);
}

TEST(Pinv, RankDeficientDiagonal) {
  ComplexVector d(2);
  d << 2.0, 0.0;
  ComplexVector e(2);
  e << 0.5, 0.0;
  EXPECT_LT(max_abs_diff(pinv(diag(d)), diag(e)), 1e-15);
}

TEST(Pinv, LeftInverseOfTallMatrix) {
  Rng rng(14);
  const ComplexMatrix m = random_matrix(rng, 8, 4);
  EXPECT_LT(max_abs_diff(pinv(m) * m, ComplexMatrix::Identity(4, 4)), 1e-8);
}

TEST(Pinv, PenroseIdentitiesAnyRank) {
  Rng rng(15);
  for (Eigen::Index rank : {1, 2, 3, 5}) {
    const ComplexMatrix m = random_matrix(rng, 7, rank) * random_matrix(rng, rank, 5);
    const ComplexMatrix p = pinv(m, 1e-10);
    const double scale = fro_norm(m);
    EXPECT_LT(fro_norm(m * p * m - m) / scale, 1e-8) << "rank " << rank;
    EXPECT_LT(fro_norm(p * m * p - p) / fro_norm(p), 1e-8);
    EXPECT_LT(fro_norm((m * p).adjoint() - m * p), 1e-8);
    EXPECT_LT(fro_norm((p * m).adjoint() - p * m), 1e-8);
  }
}

TEST(Pinv, NonFiniteInputFails) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = Complex(std::nan(""), 0.0);
  try {
    pinv(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SvdFailure);
  }
}

TEST(FroNorm, Basics) {
  EXPECT_EQ(fro_norm(ComplexTensor3(2, 3, 4)), 0.0);
  EXPECT_DOUBLE_EQ(fro_norm(ComplexMatrix::Identity(2, 2)), std::sqrt(2.0));
}

TEST(FroNorm, MatchesLoop) {
  Rng rng(16);
  const ComplexMatrix m = random_matrix(rng, 6, 9);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
  EXPECT_NEAR(fro_norm(m), std::sqrt(acc), 1e-12);
  EXPECT_NEAR(fro_norm(std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size()))), std::sqrt(acc),
              1e-12);
}

}  // namespace
}  // namespace irsce
