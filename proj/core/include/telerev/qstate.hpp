#pragma once

// Pure bipartite states |Phi> = sum_ij E_ij |i>|j>, stored as the coefficient
// matrix E, plus the qubit Bloch geometry of reduced operators.

#include <array>
#include <optional>
#include <string>

#include "telerev/linalg.hpp"

namespace telerev {

/// Tolerance on Tr(E^dag E) = 1 at construction.
inline constexpr double kNormTolerance = 1e-10;
/// Bloch radii below this carry no direction.
inline constexpr double kDirectionFloor = 1e-9;

class BipartiteState {
 public:
  /// Throws DimensionError unless coeff is square with d >= 2, DomainError
  /// unless Tr(E^dag E) = 1 within kNormTolerance.
  BipartiteState(CMatrix coeff, std::string label = {});

  std::size_t dim() const noexcept { return coeff_.rows(); }
  const CMatrix& coeff() const noexcept { return coeff_; }
  const std::string& label() const noexcept { return label_; }

  /// Vector in C^{d*d}, index i*d + j.
  CVector amplitudes() const;

 private:
  CMatrix coeff_;
  std::string label_;
};

using Vec3 = std::array<double, 3>;

/// op = (I + radius * direction . sigma) / 2.
struct BlochPoint {
  double radius = 0.0;
  std::optional<Vec3> direction;  // absent when radius < kDirectionFloor
};

enum class SchmidtBasis { Z, Y };

BipartiteState max_entangled(std::size_t d);

/// cos(phi)|00> + sin(phi)|11> in the Z or sigma_y eigenbasis, 0 <= phi <= pi/4.
BipartiteState schmidt_channel(double phi, SchmidtBasis basis);

/// Channel family aligned antiparallel to the first EJM direction, 0 <= s <= pi/2.
BipartiteState ejm_channel(double s);

/// 2|det E|, qubits only.
double concurrence(const BipartiteState& state);
/// d * (prod sigma_i(E))^{2/d}.
double g_concurrence(const BipartiteState& state);
/// Same quantity for a bare coefficient matrix (measurement elements).
double g_concurrence(const CMatrix& coeff);

/// A = conj(E) E^T.
CMatrix channel_operator(const BipartiteState& state);
/// B = W^dag W.
CMatrix measurement_operator(const CMatrix& element);

/// Decomposes a 2x2 unit-trace positive operator. Throws DomainError if the
/// input is not Hermitian with trace 1 (1e-10), DimensionError if not 2x2.
BlochPoint reduced_bloch(const CMatrix& op);

double dot(const Vec3& a, const Vec3& b);

}  // namespace telerev
