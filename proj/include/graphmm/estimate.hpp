#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "graphmm/model.hpp"
#include "graphmm/types.hpp"

namespace graphmm {

// Per-vertex pooled-variance two-sample t statistics. Vertices with zero
// pooled variance are flagged; they carry t = 0, p = 1 and se = NaN.
struct VertexTests {
  Vector t;
  Vector p;
  Vector effect;  // group-2 mean minus group-1 mean
  Vector se;
  std::vector<std::uint8_t> zero_variance;
};

VertexTests vertex_t_tests(const DataMatrices& data);

// Storey estimator #{p > lambda} / ((1-lambda) N), clipped to [0,1].
double estimate_p0(const Vector& p, double lambda = 0.5);

struct EstimationOptions {
  int patch_rows = 2;
  int patch_cols = 2;
  double lambda = 0.5;          // Storey tuning parameter
  double tau2_floor = 1e-6;
  double sigma2_floor = 1e-4;
  double offdiag_shrink = 0.9;  // off-diagonal damping of the scale matrices
  bool shared_scale = true;     // one scale matrix for both groups

  // Explicit overrides win over the data-driven estimates.
  std::optional<double> mu0, tau2, delta0, sigma2, df, p0;
};

// Whole-graph empirical estimates of every model hyperparameter for a
// rows x cols lattice scored with patch_rows x patch_cols windows:
//   mu0     grand mean of all observations
//   tau2    variance across vertices of per-vertex pooled means (floored)
//   delta0  0
//   sigma2  method-of-moments deconvolution of the vertex effects (floored)
//   p0      Storey estimate on the vertex t-test p-values
//   df      patch size + 2
//   A = B   (df - patch - 1) x pooled within-group spatial covariance
//           averaged over all full windows, off-diagonals shrunk
Hyperparams estimate_hyperparams(const DataMatrices& data, int rows, int cols,
                                 const EstimationOptions& options = {});

}  // namespace graphmm
