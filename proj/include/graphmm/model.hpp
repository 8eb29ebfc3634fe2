#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphmm/graph.hpp"
#include "graphmm/partition.hpp"
#include "graphmm/types.hpp"

namespace graphmm {

// Scalar and matrix hyperparameters of the mixture model. A and B are the
// inverse-Wishart scale matrices for the two group covariances; their
// dimension is the patch size they will be deployed on.
struct Hyperparams {
  double mu0 = 0.0;     // prior mean of block means
  double tau2 = 1.0;    // prior variance of block means
  double delta0 = 0.0;  // prior mean of block shifts
  double sigma2 = 1.0;  // prior variance of block shifts
  double df = 0.0;      // inverse-Wishart degrees of freedom
  Matrix A;
  Matrix B;
  double p0 = 0.5;  // probability a block is unchanged between groups

  // Checks invariants for an n-vertex patch: tau2, sigma2 > 0,
  // df > n + 1, A and B n x n symmetric positive definite, p0 in [0,1].
  void validate(int n) const;
};

// One mixing state: a partition of the patch plus per-block change flags.
struct DiscreteState {
  Partition partition;
  std::vector<std::uint8_t> delta;  // length = partition.n_blocks()

  int n_changed() const;
};

// Free mean parameters of a state: one phi per block, one shift per
// changed block (in block order).
struct BlockMeans {
  Vector phi;
  Vector delta_vals;
};

// Replicate observations: rows are vertices, columns are samples.
struct DataMatrices {
  Matrix x;
  Matrix y;

  DataMatrices(Matrix x_in, Matrix y_in);

  int n_vertices() const { return static_cast<int>(x.rows()); }
  int mx() const { return static_cast<int>(x.cols()); }
  int my() const { return static_cast<int>(y.cols()); }

  // Restriction to the given vertex rows, in subset order.
  DataMatrices restrict_to(const VertexSubset& subset) const;
};

// Expands block-level means to per-vertex mean vectors:
// muX_v = phi_k and muY_v = phi_k + delta_k for v in block k (shift only
// where the block is flagged changed).
std::pair<Vector, Vector> mean_vectors(const DiscreteState& state, const BlockMeans& means);

// Per-patch quantities shared by every discrete state: sample means,
// A + (Mx-1)S1 and B + (My-1)T1, and the constant determinant terms.
class PredictiveModel {
 public:
  PredictiveModel(const DataMatrices& data, const Hyperparams& hp);

  // Covariance-marginalized log predictive density of the data given mean
  // vectors, up to an additive constant shared by all states of the same
  // data shape.
  double log_density(const Vector& mu_x, const Vector& mu_y) const;

  // Same value; also writes the gradient with respect to mu_x and mu_y.
  double log_density_and_gradient(const Vector& mu_x, const Vector& mu_y, Vector& grad_x,
                                  Vector& grad_y) const;

  const Vector& xbar() const { return xbar_; }
  const Vector& ybar() const { return ybar_; }
  int n_vertices() const { return n_; }

 private:
  int n_, mx_, my_;
  double df_;
  Vector xbar_, ybar_;
  Matrix px_;  // A + (Mx-1) S1
  Matrix py_;  // B + (My-1) T1
  double base_;
};

double log_pred_density_given_means(const DataMatrices& data, const Vector& mu_x,
                                    const Vector& mu_y, const Hyperparams& hp);

// Hyperparameters as deployed on one patch. A and B may be supplied either
// at patch size (stationary, reused for every patch) or at the full graph
// size, in which case the patch-restricted submatrices are taken.
Hyperparams patch_hyperparams(const Hyperparams& hp, const VertexSubset& patch, int n_total);

// log P(state) = log[ (1/n_partitions) * prod_k p0^(1-delta_k) (1-p0)^delta_k ].
// p0 of exactly 0 or 1 yields -inf for impossible states.
double log_prior_mass(const DiscreteState& state, const Hyperparams& hp, int n_partitions);

struct LaplaceOptions {
  double grad_tol = 1e-6;  // max-norm convergence threshold
  int max_iterations = 200;
};

struct LaplaceDiagnostics {
  int iterations = 0;
  double grad_max_norm = 0.0;
  Vector mode;  // free parameters at the located maximum
};

// Laplace-approximate log of the marginal predictive density
// f(X, Y | state): the free block means (and shifts of changed blocks) are
// integrated against their Gaussian priors. Mode found by BFGS ascent with
// the analytic gradient, initialized at block-wise sample means; Hessian by
// central finite differences of the gradient.
double laplace_log_marginal(const DataMatrices& data, const DiscreteState& state,
                            const Hyperparams& hp, const LaplaceOptions& options = {},
                            LaplaceDiagnostics* diagnostics = nullptr);

// Variant reusing a per-patch PredictiveModel across many states.
double laplace_log_marginal(const PredictiveModel& model, const DiscreteState& state,
                            const Hyperparams& hp, const LaplaceOptions& options = {},
                            LaplaceDiagnostics* diagnostics = nullptr);

}  // namespace graphmm
