#pragma once

#include <optional>

#include "omog/config.hpp"
#include "omog/types.hpp"

namespace omog {

/// Zero-mean Gaussian mixture over per-pixel residuals, plus the effective
/// sample counts that carry the temporal prior from frame to frame.
/// Component order is stable: index k keeps its identity across updates.
struct MoGState {
  Vector weights;    // mixture proportions, sum to 1
  Vector variances;  // sigma_k^2, floored
  Vector counts;     // effective sample counts N_k
  double count_total = 0.0;

  int components() const { return static_cast<int>(weights.size()); }

  /// Index of the largest-variance component (ties -> lowest index).
  int foreground_component() const;

  /// Throws ContractError when an invariant is violated.
  void validate() const;
};

/// Posterior assignment probabilities, one row per pixel, one column per
/// component. Rows sum to 1.
struct Responsibilities {
  Matrix gamma;

  Index rows() const { return gamma.rows(); }
  int components() const { return static_cast<int>(gamma.cols()); }
};

/// E-step on a residual vector: gamma_ik proportional to
/// pi_k * N(residual_i | 0, sigma_k^2), computed in log space.
/// Pixels where every component underflows get uniform 1/K.
Responsibilities compute_responsibilities(const Vector& residuals, const MoGState& mog);

/// Convenience form matching the model interface: residual = x - U v.
Responsibilities compute_responsibilities(const Frame& frame, const Matrix& basis,
                                          const Vector& coeff, const MoGState& mog);

/// M-step for the mixture parameters. The prior is the previous state's
/// proportions scaled to n_prior effective samples, so n_prior = 0 gives the
/// pure current-frame MLE. Components with no responsibility mass keep their
/// previous variance. When renormalize_total is set, returned counts are
/// rescaled so count_total equals it while preserving proportions.
MoGState update_mog(const Responsibilities& resp, const Vector& residuals,
                    const MoGState& mog_prev, double n_prior, double variance_floor,
                    std::optional<double> renormalize_total = std::nullopt);

/// w_i = sqrt(sum_k gamma_ik / (2 sigma_k^2)).
Vector compute_weights(const Responsibilities& resp, const MoGState& mog);

/// Negative mixture log-likelihood of a residual vector (log-space).
double negative_log_likelihood(const Vector& residuals, const MoGState& mog);

/// Prior penalty on (weights, variances):
///   sum_k N_k^{t-1} (sigma_prev_k^2 / (2 sigma_k^2) + ln sigma_k)
///   - N^{t-1} sum_k pi_prev_k ln pi_k.
/// prev supplies the prior proportions/variances; n_prior scales them.
double foreground_regularizer(const MoGState& cur, const MoGState& prev, double n_prior);

/// Closed-form n_prior * KL(p(x,z | prev) || p(x,z | cur)) for the joint
/// zero-mean-Gaussian + multinomial model, with the 0*log0 = 0 convention.
/// foreground_regularizer minus this quantity is constant in cur.
double scaled_prior_kl(const MoGState& prev, const MoGState& cur, double n_prior);

}  // namespace omog
