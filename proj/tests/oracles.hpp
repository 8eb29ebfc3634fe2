// Independent reference implementations used only by tests. Everything here
// is written from scratch against the model formulas with different
// algorithms and code paths than the library (union-find connectivity,
// explicit inverses and LU determinants, Newton iteration, quadrature,
// Monte-Carlo integration).
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// All set partitions of {0..n-1} as explicit block lists, built by
// inserting each element into every existing block or a new one.
std::vector<std::vector<std::vector<int>>> all_partitions(int n);

// Union-find connectivity of every block.
bool blocks_connected(int n, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::vector<int>>& blocks);

// Block list -> label vector in first-occurrence canonical order.
std::vector<int> to_labels(int n, const std::vector<std::vector<int>>& blocks);

// Adaptive Simpson integration.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

// Tensor-product Gauss-Legendre integration.
double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                   double ay, double by, int nodes);

double log_multigamma(int dim, double a);

// Inverse-Wishart draw by inverting a Bartlett-decomposition Wishart draw.
Matrix inverse_wishart_draw(const Matrix& scale, double df, std::mt19937_64& rng);

// Dense multivariate normal log density via explicit inverse and LU
// determinant.
double mvn_log_pdf(const Vector& x, const Vector& mean, const Matrix& cov);

struct TinyState {
  std::vector<int> labels;  // per vertex
  std::vector<int> delta;   // per block
};

struct TinyModel {
  double mu0, tau2, delta0, sigma2, df;
  Matrix a_scale, b_scale;
  double p0 = 0.5;
};

// Log integrand over the free mean parameters (phi, then shifts of changed
// blocks), including the Gaussian priors.
double tiny_log_integrand(const Matrix& x, const Matrix& y, const TinyState& state,
                          const TinyModel& model, const Vector& theta);

// Mode, Hessian and Laplace value computed by damped Newton with an
// independently derived analytic gradient and finite-difference Hessian.
struct TinyLaplace {
  Vector mode;
  Matrix hessian;
  double log_marginal;
};
TinyLaplace tiny_laplace(const Matrix& x, const Matrix& y, const TinyState& state,
                         const TinyModel& model);

// Per-vertex lfdr by direct mixing over the given states.
std::vector<double> tiny_lfdr(const Matrix& x, const Matrix& y,
                              const std::vector<TinyState>& states, int n_partitions,
                              const TinyModel& model);

}  // namespace oracle
