#include "omog/mog.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace omog {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454836;

void check_same_components(const MoGState& mog, Index k, const char* where) {
  if (mog.components() != k)
    throw ContractError(std::string(where) + ": component count mismatch");
}
}  // namespace

int MoGState::foreground_component() const {
  int best = 0;
  for (int k = 1; k < components(); ++k)
    if (variances[k] > variances[best]) best = k;
  return best;
}

void MoGState::validate() const {
  const int k = components();
  if (k < 1 || variances.size() != k || counts.size() != k)
    throw ContractError("MoGState: inconsistent component vectors");
  if (!weights.allFinite() || !variances.allFinite() || !counts.allFinite())
    throw ContractError("MoGState: non-finite entries");
  if (weights.minCoeff() < 0.0) throw ContractError("MoGState: negative weight");
  if (std::abs(weights.sum() - 1.0) > 1e-9) throw ContractError("MoGState: weights do not sum to 1");
  if (variances.minCoeff() <= 0.0) throw ContractError("MoGState: non-positive variance");
  if (counts.minCoeff() < 0.0) throw ContractError("MoGState: negative count");
  if (std::abs(counts.sum() - count_total) > 1e-9 * std::max(1.0, count_total))
    throw ContractError("MoGState: count_total does not match counts");
}

Responsibilities compute_responsibilities(const Vector& residuals, const MoGState& mog) {
  const Index d = residuals.size();
  const int K = mog.components();
  if (mog.variances.size() != K) throw ContractError("compute_responsibilities: bad MoG state");
  if (mog.variances.minCoeff() <= 0.0)
    throw ContractError("compute_responsibilities: variance not above floor");

  // Per-component constants: ln pi_k - 0.5 ln(2 pi sigma_k^2) and 1/(2 sigma_k^2).
  Vector log_coef(K), inv2var(K);
  for (int k = 0; k < K; ++k) {
    log_coef[k] = (mog.weights[k] > 0.0 ? std::log(mog.weights[k])
                                        : -std::numeric_limits<double>::infinity()) -
                  0.5 * (kLogTwoPi + std::log(mog.variances[k]));
    inv2var[k] = 0.5 / mog.variances[k];
  }

  Responsibilities out;
  out.gamma.resize(d, K);
  Vector logp(K);
  for (Index i = 0; i < d; ++i) {
    const double e2 = residuals[i] * residuals[i];
    double mx = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
      logp[k] = log_coef[k] - e2 * inv2var[k];
      if (logp[k] > mx) mx = logp[k];
    }
    if (!std::isfinite(mx)) {
      // Degenerate pixel: no component carries any density. Assign uniformly.
      out.gamma.row(i).setConstant(1.0 / K);
      continue;
    }
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      const double g = std::exp(logp[k] - mx);
      out.gamma(i, k) = g;
      sum += g;
    }
    out.gamma.row(i) /= sum;
  }
  return out;
}

Responsibilities compute_responsibilities(const Frame& frame, const Matrix& basis,
                                          const Vector& coeff, const MoGState& mog) {
  if (basis.rows() != frame.size() || basis.cols() != coeff.size())
    throw ContractError("compute_responsibilities: dimension mismatch");
  return compute_responsibilities(frame.values - basis * coeff, mog);
}

MoGState update_mog(const Responsibilities& resp, const Vector& residuals,
                    const MoGState& mog_prev, double n_prior, double variance_floor,
                    std::optional<double> renormalize_total) {
  const Index d = residuals.size();
  const int K = mog_prev.components();
  if (resp.rows() != d) throw ContractError("update_mog: residual/responsibility mismatch");
  check_same_components(mog_prev, resp.components(), "update_mog");
  if (n_prior < 0.0) throw ContractError("update_mog: n_prior must be >= 0");
  if (!residuals.allFinite()) throw ContractError("update_mog: non-finite residuals");

  // Current-frame sufficient statistics, accumulated in pixel order so the
  // result is reproducible.
  Vector n_bar = Vector::Zero(K);
  Vector s_bar = Vector::Zero(K);
  for (Index i = 0; i < d; ++i) {
    const double e2 = residuals[i] * residuals[i];
    for (int k = 0; k < K; ++k) {
      const double g = resp.gamma(i, k);
      n_bar[k] += g;
      s_bar[k] += g * e2;
    }
  }
  const double n_cur = static_cast<double>(d);
  const double n_total = n_prior + n_cur;

  MoGState out;
  out.weights.resize(K);
  out.variances.resize(K);
  out.counts.resize(K);
  for (int k = 0; k < K; ++k) {
    const double prior_k = n_prior * mog_prev.weights[k];
    out.counts[k] = prior_k + n_bar[k];
    out.weights[k] = out.counts[k] / n_total;
    if (n_bar[k] > 0.0) {
      const double var_bar = s_bar[k] / n_bar[k];
      const double blend = n_bar[k] / out.counts[k];
      const double var = (1.0 - blend) * mog_prev.variances[k] + blend * var_bar;
      assert(var >= 0.0);
      out.variances[k] = std::max(var, variance_floor);
    } else {
      // No mass assigned this frame: the variance carries over unchanged.
      out.variances[k] = std::max(mog_prev.variances[k], variance_floor);
    }
  }
  out.count_total = n_total;

  if (renormalize_total) {
    const double target = *renormalize_total;
    if (!(target > 0.0)) throw ContractError("update_mog: renormalize target must be > 0");
    out.counts *= target / out.count_total;
    out.count_total = target;
  }
  return out;
}

Vector compute_weights(const Responsibilities& resp, const MoGState& mog) {
  const int K = mog.components();
  check_same_components(mog, resp.components(), "compute_weights");
  if (mog.variances.minCoeff() <= 0.0) throw ContractError("compute_weights: non-positive variance");

  Vector inv2var(K);
  for (int k = 0; k < K; ++k) inv2var[k] = 0.5 / mog.variances[k];
  Vector w(resp.rows());
  for (Index i = 0; i < resp.rows(); ++i) {
    double acc = 0.0;
    for (int k = 0; k < K; ++k) acc += resp.gamma(i, k) * inv2var[k];
    w[i] = std::sqrt(acc);
  }
  return w;
}

double negative_log_likelihood(const Vector& residuals, const MoGState& mog) {
  const int K = mog.components();
  Vector log_coef(K), inv2var(K);
  for (int k = 0; k < K; ++k) {
    log_coef[k] = (mog.weights[k] > 0.0 ? std::log(mog.weights[k])
                                        : -std::numeric_limits<double>::infinity()) -
                  0.5 * (kLogTwoPi + std::log(mog.variances[k]));
    inv2var[k] = 0.5 / mog.variances[k];
  }
  double nll = 0.0;
  for (Index i = 0; i < residuals.size(); ++i) {
    const double e2 = residuals[i] * residuals[i];
    double mx = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) mx = std::max(mx, log_coef[k] - e2 * inv2var[k]);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) sum += std::exp(log_coef[k] - e2 * inv2var[k] - mx);
    nll -= mx + std::log(sum);
  }
  return nll;
}

double foreground_regularizer(const MoGState& cur, const MoGState& prev, double n_prior) {
  const int K = prev.components();
  check_same_components(cur, K, "foreground_regularizer");
  double r = 0.0;
  for (int k = 0; k < K; ++k) {
    const double nk = n_prior * prev.weights[k];
    r += nk * (0.5 * prev.variances[k] / cur.variances[k] + 0.5 * std::log(cur.variances[k]));
    if (prev.weights[k] > 0.0) r -= n_prior * prev.weights[k] * std::log(cur.weights[k]);
  }
  return r;
}

double scaled_prior_kl(const MoGState& prev, const MoGState& cur, double n_prior) {
  const int K = prev.components();
  check_same_components(cur, K, "scaled_prior_kl");
  double kl = 0.0;
  for (int k = 0; k < K; ++k) {
    const double pk = prev.weights[k];
    if (pk <= 0.0) continue;  // 0 * log 0 = 0
    // Zero-mean Gaussian KL, weighted by that component's prior count.
    const double ratio = prev.variances[k] / cur.variances[k];
    kl += n_prior * pk * 0.5 * (ratio - std::log(ratio) - 1.0);
    // Multinomial term.
    kl += n_prior * pk * (std::log(pk) - std::log(cur.weights[k]));
  }
  return kl;
}

}  // namespace omog
