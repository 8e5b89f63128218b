#pragma once

// Small dense complex matrices. The design envelope is d <= 8 (matrices up to
// 64x64 for basis checks), so everything is stored row-major in a std::vector
// and no blocking or BLAS is attempted.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace telerev {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  /// Throws DimensionError if entries.size() != rows*cols, DomainError on NaN/Inf.
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  /// Row-major literal, e.g. from_rows({{1, 0}, {0, 1}}). Rows must be equal length.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix diagonal(std::span<const double> diag);
  /// Outer product |a><b|.
  static CMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> v);

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, Complex s);
CMatrix operator*(Complex s, CMatrix a);
/// Matrix product; throws DimensionError on inner-dimension mismatch.
CMatrix operator*(const CMatrix& a, const CMatrix& b);
/// Matrix-vector product; throws DimensionError.
CVector operator*(const CMatrix& a, std::span<const Complex> v);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& m);
CMatrix transpose(const CMatrix& m);
CMatrix conjugate(const CMatrix& m);
CMatrix kron(const CMatrix& a, const CMatrix& b);

Complex trace(const CMatrix& m);
/// LU with partial pivoting; throws DimensionError for non-square input.
Complex det(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
/// max |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
/// max |(m^dag m - I)_ij|.
double unitarity_residual(const CMatrix& m);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

/// Singular values below this are clamped to exactly 0.
inline constexpr double kSigmaFloor = 1e-12;

/// m = left * diag(sigmas) * adjoint(right).
struct SvdResult {
  CMatrix left;
  std::vector<double> sigmas;  // descending
  CMatrix right;
  bool rank_deficient = false;

  double sigma_max() const { return sigmas.front(); }
  double sigma_min() const { return sigmas.back(); }
  CMatrix reconstruct() const;
};

/// Square inputs only. 2x2 is solved in closed form from the eigenvalues of
/// m m^dag; larger matrices use one-sided (Hestenes) Jacobi.
SvdResult svd(const CMatrix& m);

namespace detail {
/// One-sided Jacobi for any square size; svd() uses it for n >= 3.
SvdResult svd_jacobi(const CMatrix& m);
}  // namespace detail

/// Unitary U = Q P^dag maximising |Tr(U m)|; the maximum is the nuclear norm.
CMatrix polar_unitary(const CMatrix& m);

/// Sum of singular values.
double nuclear_norm(const CMatrix& m);

}  // namespace telerev
