#include "telerev/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "telerev/errors.hpp"

namespace telerev {

namespace {

void require_square(const CMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionError(std::string(op) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch");
  }
}

// Relative off-diagonal level below which a Jacobi sweep counts as converged.
constexpr double kJacobiTolerance = 1e-12;
// Pairs are still rotated down to this level inside the final sweep.
constexpr double kJacobiRotateFloor = 1e-15;
constexpr int kJacobiMaxSweeps = 100;

SvdResult svd_2x2(const CMatrix& m) {
  const CMatrix h = m * adjoint(m);
  const double a = h(0, 0).real();
  const double c = h(1, 1).real();
  const Complex b = h(0, 1);
  const double det_abs = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));

  const double disc = std::hypot(a - c, 2.0 * std::abs(b));
  const double lambda_max = 0.5 * (a + c + disc);

  SvdResult out;
  if (lambda_max <= 0.0) {
    out.left = CMatrix::identity(2);
    out.right = CMatrix::identity(2);
    out.sigmas = {0.0, 0.0};
    out.rank_deficient = true;
    return out;
  }
  const double sigma0 = std::sqrt(lambda_max);
  double sigma1 = det_abs / sigma0;

  // Eigenvector of h for lambda_max; pick the better conditioned of the two
  // row-derived candidates.
  CVector p0(2);
  if (a >= c) {
    p0 = {Complex(lambda_max - c), std::conj(b)};
  } else {
    p0 = {b, Complex(lambda_max - a)};
  }
  double pn = norm(p0);
  if (pn == 0.0) {
    p0 = {1.0, 0.0};
    pn = 1.0;
  }
  for (auto& x : p0) x /= pn;
  const CVector p1 = {-std::conj(p0[1]), std::conj(p0[0])};

  CVector q0 = adjoint(m) * std::span<const Complex>(p0);
  for (auto& x : q0) x /= sigma0;
  const double qn = norm(q0);
  for (auto& x : q0) x /= qn;
  CVector q1 = {-std::conj(q0[1]), std::conj(q0[0])};
  const Complex z = inner(p1, m * std::span<const Complex>(q1));
  if (std::abs(z) > 0.0) {
    const Complex phase = std::conj(z) / std::abs(z);
    for (auto& x : q1) x *= phase;
  }

  if (sigma1 < kSigmaFloor) {
    sigma1 = 0.0;
    out.rank_deficient = true;
  }
  out.left = CMatrix(2, 2);
  out.left.set_column(0, p0);
  out.left.set_column(1, p1);
  out.right = CMatrix(2, 2);
  out.right.set_column(0, q0);
  out.right.set_column(1, q1);
  out.sigmas = {sigma0, sigma1};
  return out;
}

// Fills columns of u flagged in `missing` with an orthonormal completion.
void complete_basis(CMatrix& u, const std::vector<bool>& missing) {
  const std::size_t n = u.rows();
  std::vector<bool> have(n);
  for (std::size_t j = 0; j < n; ++j) have[j] = !missing[j];
  for (std::size_t j = 0; j < n; ++j) {
    if (have[j]) continue;
    CVector best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      CVector v(n, 0.0);
      v[k] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
          if (!have[i]) continue;
          const CVector col = u.column(i);
          const Complex proj = inner(col, v);
          for (std::size_t r = 0; r < n; ++r) v[r] -= proj * col[r];
        }
      }
      const double vn = norm(v);
      if (vn > best_norm) {
        best_norm = vn;
        best = std::move(v);
      }
    }
    for (auto& x : best) x /= best_norm;
    u.set_column(j, best);
    have[j] = true;
  }
}

}  // namespace

namespace detail {

SvdResult svd_jacobi(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("svd_jacobi: expected a square matrix");
  const std::size_t n = m.rows();
  CMatrix a = m;
  CMatrix v = CMatrix::identity(n);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          alpha += std::norm(a(k, i));
          beta += std::norm(a(k, j));
          gamma += std::conj(a(k, i)) * a(k, j);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || alpha == 0.0 || beta == 0.0) continue;
        const double rel = g / std::sqrt(alpha * beta);
        worst = std::max(worst, rel);
        if (rel <= kJacobiRotateFloor) continue;

        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex ai = a(k, i);
          const Complex aj = a(k, j) * phase;
          a(k, i) = cs * ai - sn * aj;
          a(k, j) = sn * ai + cs * aj;
          const Complex vi = v(k, i);
          const Complex vj = v(k, j) * phase;
          v(k, i) = cs * vi - sn * vj;
          v(k, j) = sn * vi + cs * vj;
        }
      }
    }
    if (worst <= kJacobiTolerance) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm(a.column(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.left = CMatrix(n, n);
  out.right = CMatrix(n, n);
  out.sigmas.resize(n);
  std::vector<bool> missing(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    double s = norms[src];
    out.right.set_column(j, v.column(src));
    if (s < kSigmaFloor) {
      s = 0.0;
      out.rank_deficient = true;
      missing[j] = true;
    } else {
      CVector col = a.column(src);
      for (auto& x : col) x /= s;
      out.left.set_column(j, col);
    }
    out.sigmas[j] = s;
  }
  if (out.rank_deficient) complete_basis(out.left, missing);
  return out;
}

}  // namespace detail

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("CMatrix: entry count does not match shape");
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("CMatrix: non-finite entry");
    }
  }
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("CMatrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return CMatrix(r, c, std::move(data));
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void CMatrix::set_column(std::size_t c, std::span<const Complex> v) {
  if (v.size() != rows_) throw DimensionError("CMatrix::set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CVector operator*(const CMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector: length mismatch");
  CVector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  }
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) { return a * b; }

CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

CMatrix conjugate(const CMatrix& m) {
  CMatrix out = m;
  for (auto& z : out.entries()) z = std::conj(z);
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

Complex trace(const CMatrix& m) {
  require_square(m, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Complex det(const CMatrix& m) {
  require_square(m, "det");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  CMatrix lu = m;
  Complex result = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (lu(pivot, col) == Complex(0.0, 0.0)) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(pivot, c), lu(col, c));
      result = -result;
    }
    const Complex p = lu(col, col);
    result *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / p;
      for (std::size_t c = col + 1; c < n; ++c) lu(r, c) -= f * lu(col, c);
    }
  }
  return result;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double unitarity_residual(const CMatrix& m) {
  return max_abs_diff(adjoint(m) * m, CMatrix::identity(m.cols()));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner: length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix SvdResult::reconstruct() const {
  return left * CMatrix::diagonal(std::span<const double>(sigmas)) * adjoint(right);
}

SvdResult svd(const CMatrix& m) {
  require_square(m, "svd");
  if (m.rows() == 0) return SvdResult{};
  if (m.rows() == 1) {
    const double s = std::abs(m(0, 0));
    SvdResult out;
    out.left = CMatrix(1, 1, {s > 0.0 ? m(0, 0) / s : Complex(1.0)});
    out.right = CMatrix::identity(1);
    out.sigmas = {s < kSigmaFloor ? 0.0 : s};
    out.rank_deficient = s < kSigmaFloor;
    return out;
  }
  if (m.rows() == 2) return svd_2x2(m);
  return detail::svd_jacobi(m);
}

CMatrix polar_unitary(const CMatrix& m) {
  const SvdResult s = svd(m);
  return s.right * adjoint(s.left);
}

double nuclear_norm(const CMatrix& m) {
  const SvdResult s = svd(m);
  return std::accumulate(s.sigmas.begin(), s.sigmas.end(), 0.0);
}

}  // namespace telerev
