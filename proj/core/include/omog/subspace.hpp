#pragma once

#include "omog/types.hpp"

namespace omog {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Background model: basis U (d x r) plus the per-row recursion carriers.
/// A_i is r x r symmetric positive definite, b_i is an r-vector, and the
/// recursion keeps u_i = A_i b_i for every row.
struct SubspaceState {
  RowMajorMatrix basis;       // d x r
  RowMajorMatrix carriers_A;  // d x (r*r), each row one A_i block
  RowMajorMatrix carriers_b;  // d x r
  int rank = 0;

  Index dim() const { return basis.rows(); }
  bool initialized() const { return rank >= 1 && basis.rows() > 0; }

  Eigen::Map<RowMajorMatrix> carrier_A(Index i) {
    return {carriers_A.row(i).data(), rank, rank};
  }
  Eigen::Map<const RowMajorMatrix> carrier_A(Index i) const {
    return {carriers_A.row(i).data(), rank, rank};
  }

  /// Checks the recursion identity, symmetry and positive definiteness of
  /// every carrier. Throws ContractError on violation.
  void validate() const;
};

/// Result of one row of the rank-one recursion.
struct RowUpdate {
  Matrix carrier_A;
  Vector carrier_b;
  Vector basis_row;
};

/// Weighted least-squares coefficients:
///   v = (U^T diag(w)^2 U + eps I)^-1 U^T diag(w)^2 x
/// with eps = 1e-10 * trace(U^T diag(w)^2 U) / r. Throws NumericError when
/// the system is degenerate even after the ridge.
Vector solve_coefficients(const Vector& x, const RowMajorMatrix& basis, const Vector& weights);

/// One step of the per-row recursion:
///   A' = (A - w^2 A v v^T A / (rho + w^2 v^T A v)) / rho
///   b' = rho b + w^2 x v
///   u' = A' b'
/// No r x r inversion is performed. A zero weight leaves the basis row
/// bit-identical while still applying the rho scaling to the carriers.
RowUpdate update_subspace_row(const Matrix& carrier_A, const Vector& carrier_b, double weight,
                              const Vector& coeff, double pixel, double rho);

/// In-place variant over a set of rows, reusing scratch storage. `weights`
/// is aligned with `rows`; `pixels` is the full frame vector.
void update_subspace_rows(SubspaceState& state, const std::vector<Index>& rows,
                          const Vector& weights, const Vector& coeff, const Vector& pixels,
                          double rho);

}  // namespace omog
