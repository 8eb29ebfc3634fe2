#pragma once

#include <string>

#include "graphmm/types.hpp"

namespace graphmm {

// Per-vertex adjusted multiple-testing scores; discoveries are score <= c.
struct AdjustedScores {
  std::string method;
  Vector score;
};

// Benjamini-Hochberg step-up adjusted p-values.
AdjustedScores bh_adjust(const Vector& p);

// Storey q-values: BH scaled by the estimated null proportion.
AdjustedScores storey_qvalue(const Vector& p, double lambda = 0.5);
AdjustedScores storey_qvalue_with_p0(const Vector& p, double p0);

// Kernel-density local FDR on t statistics against the theoretical N(0,1)
// null after the quantile transform z = ndtri(F_t(t)). Requires enough
// points for density estimation (N >= 200).
AdjustedScores kernel_locfdr(const Vector& t, double t_df);

}  // namespace graphmm
