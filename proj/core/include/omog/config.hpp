#pragma once

#include "omog/types.hpp"

namespace omog {

/// Bookkeeping policy for the effective prior sample count carried by the
/// noise model between frames.
enum class CountPolicy : uint8_t {
  /// Keep the prior mass pinned at window_frames * d; counts are rescaled
  /// after each frame so the model always reflects roughly the last
  /// window_frames frames.
  kFixedWindow = 0,
  /// Let counts accumulate without rescaling (the batch-equivalent regime).
  kCumulative = 1,
};

/// Subspace initialization flavor for batch alignment.
enum class BatchInit : uint8_t {
  kMedian = 0,
  kMean = 1,
};

struct OnlineConfig {
  int rank = 3;
  int mog_components = 3;
  /// Window length K: prior strength is held at K*d observations.
  int window_frames = 50;
  /// Forgetting factor for the subspace recursion.
  double rho = 0.98;
  double inner_tol = 1e-6;
  int inner_max_iters = 20;
  double variance_floor = 1e-6;
  CountPolicy count_policy = CountPolicy::kFixedWindow;
  /// Use the batch mean as the first basis column during warm start.
  bool include_mean = true;

  // Alignment loop controls.
  int outer_max_iters = 8;
  double align_tol = 1e-3;
  BatchInit batch_init = BatchInit::kMedian;

  void validate() const {
    if (rank < 1) throw ConfigError("rank must be >= 1");
    if (mog_components < 1) throw ConfigError("mog_components must be >= 1");
    if (window_frames < 1) throw ConfigError("window_frames must be >= 1");
    if (!(rho > 0.0) || rho > 1.0) throw ConfigError("rho must be in (0, 1]");
    if (inner_max_iters < 1) throw ConfigError("inner_max_iters must be >= 1");
    if (!(inner_tol > 0.0)) throw ConfigError("inner_tol must be > 0");
    if (!(variance_floor > 0.0)) throw ConfigError("variance_floor must be > 0");
    if (outer_max_iters < 1) throw ConfigError("outer_max_iters must be >= 1");
    if (!(align_tol > 0.0)) throw ConfigError("align_tol must be > 0");
  }
};

}  // namespace omog
