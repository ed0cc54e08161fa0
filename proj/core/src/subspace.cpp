#include "omog/subspace.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace omog {

void SubspaceState::validate() const {
  if (rank < 1) throw ContractError("SubspaceState: rank must be >= 1");
  const Index d = basis.rows();
  if (basis.cols() != rank || carriers_A.rows() != d || carriers_A.cols() != rank * rank ||
      carriers_b.rows() != d || carriers_b.cols() != rank)
    throw ContractError("SubspaceState: inconsistent dimensions");

  for (Index i = 0; i < d; ++i) {
    const auto A = carrier_A(i);
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-9)
      throw ContractError("SubspaceState: carrier A not symmetric at row " + std::to_string(i));
    Eigen::LLT<Matrix> llt(Matrix(A));
    if (llt.info() != Eigen::Success)
      throw ContractError("SubspaceState: carrier A not positive definite at row " +
                          std::to_string(i));
    const Vector u = A * carriers_b.row(i).transpose();
    const double scale = std::max(u.norm(), 1e-12);
    if ((u - basis.row(i).transpose()).norm() > 1e-6 * scale)
      throw ContractError("SubspaceState: recursion identity broken at row " + std::to_string(i));
  }
}

Vector solve_coefficients(const Vector& x, const RowMajorMatrix& basis, const Vector& weights) {
  const Index d = basis.rows();
  const Index r = basis.cols();
  if (x.size() != d || weights.size() != d)
    throw ContractError("solve_coefficients: dimension mismatch");
  if (!x.allFinite() || !weights.allFinite())
    throw ContractError("solve_coefficients: non-finite input");

  // Accumulate the normal equations in row order so results are reproducible.
  Matrix gram = Matrix::Zero(r, r);
  Vector rhs = Vector::Zero(r);
  for (Index i = 0; i < d; ++i) {
    const double w2 = weights[i] * weights[i];
    if (w2 == 0.0) continue;
    const double wx = w2 * x[i];
    for (Index a = 0; a < r; ++a) {
      const double ua = basis(i, a);
      rhs[a] += wx * ua;
      for (Index b = a; b < r; ++b) gram(a, b) += w2 * ua * basis(i, b);
    }
  }
  for (Index a = 0; a < r; ++a)
    for (Index b = 0; b < a; ++b) gram(a, b) = gram(b, a);

  const double trace = gram.trace();
  if (!(trace > 0.0))
    throw NumericError("solve_coefficients: degenerate subspace (zero weighted gram trace)");
  const double ridge = 1e-10 * trace / static_cast<double>(r);
  gram.diagonal().array() += ridge;

  Eigen::LDLT<Matrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("solve_coefficients: factorization failed");
  Vector v = ldlt.solve(rhs);
  if (!v.allFinite()) throw NumericError("solve_coefficients: singular system after ridge");
  return v;
}

RowUpdate update_subspace_row(const Matrix& carrier_A, const Vector& carrier_b, double weight,
                              const Vector& coeff, double pixel, double rho) {
  const Index r = coeff.size();
  if (carrier_A.rows() != r || carrier_A.cols() != r || carrier_b.size() != r)
    throw ContractError("update_subspace_row: dimension mismatch");
  if (!(rho > 0.0) || rho > 1.0) throw ContractError("update_subspace_row: rho must be in (0,1]");

  RowUpdate out;
  const double w2 = weight * weight;
  if (w2 == 0.0) {
    out.carrier_A = carrier_A / rho;
    out.carrier_b = rho * carrier_b;
    out.basis_row = carrier_A * carrier_b;  // unobserved pixel: row unchanged
    return out;
  }

  const Vector Av = carrier_A * coeff;
  const double quad = coeff.dot(Av);
  const double denom = rho + w2 * quad;
  if (!(denom > 0.0))
    throw NumericError("update_subspace_row: non-positive denominator (carrier not SPD?)");

  out.carrier_A = (carrier_A - (w2 / denom) * (Av * Av.transpose())) / rho;
  out.carrier_A = 0.5 * (out.carrier_A + out.carrier_A.transpose());
  out.carrier_b = rho * carrier_b + (w2 * pixel) * coeff;
  out.basis_row = out.carrier_A * out.carrier_b;
  return out;
}

void update_subspace_rows(SubspaceState& state, const std::vector<Index>& rows,
                          const Vector& weights, const Vector& coeff, const Vector& pixels,
                          double rho) {
  const int r = state.rank;
  if (static_cast<Index>(rows.size()) != weights.size() || coeff.size() != r)
    throw ContractError("update_subspace_rows: dimension mismatch");

  Vector Av(r), bnew(r), unew(r);
  Matrix Anew(r, r);
  for (size_t j = 0; j < rows.size(); ++j) {
    const Index i = rows[j];
    auto A = state.carrier_A(i);
    auto b = state.carriers_b.row(i);
    const double w2 = weights[static_cast<Index>(j)] * weights[static_cast<Index>(j)];
    if (w2 == 0.0) {
      A *= (1.0 / rho);
      b *= rho;
      continue;  // basis row stays bit-identical
    }
    Av.noalias() = A * coeff;
    const double quad = coeff.dot(Av);
    const double denom = rho + w2 * quad;
    if (!(denom > 0.0))
      throw NumericError("update_subspace_rows: non-positive denominator at row " +
                         std::to_string(i));
    Anew.noalias() = A;
    Anew.noalias() -= (w2 / denom) * (Av * Av.transpose());
    Anew /= rho;
    Anew = 0.5 * (Anew + Anew.transpose()).eval();
    bnew = rho * b.transpose() + (w2 * pixels[i]) * coeff;
    unew.noalias() = Anew * bnew;
    A = Anew;
    b = bnew.transpose();
    state.basis.row(i) = unew.transpose();
  }
}

}  // namespace omog
