#include "graphmm/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "graphmm/errors.hpp"
#include "graphmm/numeric.hpp"

namespace graphmm {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double cholesky_log_det(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericError(std::string(what) + ": matrix not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

void Hyperparams::validate(int n) const {
  if (!(tau2 > 0.0)) throw std::invalid_argument("Hyperparams: tau2 must be positive");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("Hyperparams: sigma2 must be positive");
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("Hyperparams: p0 must be in [0,1]");
  if (!(df > n + 1)) throw std::invalid_argument("Hyperparams: df must exceed patch size + 1");
  if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != n)
    throw std::invalid_argument("Hyperparams: A and B must match the patch size");
  if (!A.isApprox(A.transpose(), 1e-10) || !B.isApprox(B.transpose(), 1e-10))
    throw std::invalid_argument("Hyperparams: A and B must be symmetric");
  cholesky_log_det(A, "Hyperparams A");
  cholesky_log_det(B, "Hyperparams B");
}

int DiscreteState::n_changed() const {
  int c = 0;
  for (auto d : delta) c += d != 0;
  return c;
}

DataMatrices::DataMatrices(Matrix x_in, Matrix y_in) : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.rows() != y.rows()) throw std::invalid_argument("DataMatrices: vertex counts differ");
  if (x.rows() < 1) throw std::invalid_argument("DataMatrices: no vertices");
  if (x.cols() < 2 || y.cols() < 2)
    throw std::invalid_argument("DataMatrices: need at least two replicates per group");
  if (!x.allFinite() || !y.allFinite())
    throw std::invalid_argument("DataMatrices: non-finite values");
}

DataMatrices DataMatrices::restrict_to(const VertexSubset& subset) const {
  if (subset.empty()) throw std::invalid_argument("DataMatrices: empty vertex subset");
  Matrix xs(subset.size(), x.cols());
  Matrix ys(subset.size(), y.cols());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int v = subset[i];
    if (v < 0 || v >= n_vertices())
      throw std::invalid_argument("DataMatrices: subset vertex out of range");
    xs.row(i) = x.row(v);
    ys.row(i) = y.row(v);
  }
  return DataMatrices(std::move(xs), std::move(ys));
}

std::pair<Vector, Vector> mean_vectors(const DiscreteState& state, const BlockMeans& means) {
  const int k = state.partition.n_blocks();
  if (static_cast<int>(state.delta.size()) != k)
    throw std::invalid_argument("mean_vectors: delta length != block count");
  if (means.phi.size() != k) throw std::invalid_argument("mean_vectors: phi length != block count");
  if (means.delta_vals.size() != state.n_changed())
    throw std::invalid_argument("mean_vectors: shift count != changed block count");
  Vector shift = Vector::Zero(k);
  int j = 0;
  for (int b = 0; b < k; ++b) {
    if (state.delta[b]) shift[b] = means.delta_vals[j++];
  }
  const int n = state.partition.size();
  Vector mu_x(n), mu_y(n);
  for (int v = 0; v < n; ++v) {
    const int b = state.partition.labels[v];
    mu_x[v] = means.phi[b];
    mu_y[v] = means.phi[b] + shift[b];
  }
  return {std::move(mu_x), std::move(mu_y)};
}

PredictiveModel::PredictiveModel(const DataMatrices& data, const Hyperparams& hp)
    : n_(data.n_vertices()), mx_(data.mx()), my_(data.my()), df_(hp.df) {
  hp.validate(n_);
  xbar_ = data.x.rowwise().mean();
  ybar_ = data.y.rowwise().mean();
  const Matrix xc = data.x.colwise() - xbar_;
  const Matrix yc = data.y.colwise() - ybar_;
  // (Mx-1) S1 = centered scatter, no 1/(Mx-1) then rescale
  px_ = hp.A + xc * xc.transpose();
  py_ = hp.B + yc * yc.transpose();
  base_ = 0.5 * df_ * (cholesky_log_det(hp.A, "predictive A") + cholesky_log_det(hp.B, "predictive B"));
}

double PredictiveModel::log_density(const Vector& mu_x, const Vector& mu_y) const {
  if (mu_x.size() != n_ || mu_y.size() != n_)
    throw std::invalid_argument("PredictiveModel: mean vector length mismatch");
  const Vector rx = xbar_ - mu_x;
  const Vector ry = ybar_ - mu_y;
  const Matrix ax = px_ + mx_ * rx * rx.transpose();
  const Matrix by = py_ + my_ * ry * ry.transpose();
  return base_ - 0.5 * (df_ + mx_) * cholesky_log_det(ax, "A-tilde") -
         0.5 * (df_ + my_) * cholesky_log_det(by, "B-tilde");
}

double PredictiveModel::log_density_and_gradient(const Vector& mu_x, const Vector& mu_y,
                                                 Vector& grad_x, Vector& grad_y) const {
  const Vector rx = xbar_ - mu_x;
  const Vector ry = ybar_ - mu_y;
  const Matrix ax = px_ + mx_ * rx * rx.transpose();
  const Matrix by = py_ + my_ * ry * ry.transpose();
  Eigen::LLT<Matrix> llt_ax(ax);
  Eigen::LLT<Matrix> llt_by(by);
  if (llt_ax.info() != Eigen::Success || llt_by.info() != Eigen::Success)
    throw NumericError("PredictiveModel: scale matrix not positive definite");
  const double logdet_ax = 2.0 * llt_ax.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double logdet_by = 2.0 * llt_by.matrixL().toDenseMatrix().diagonal().array().log().sum();
  // d/dmu of -(df+M)/2 log|P + M r r'| with r = bar - mu is (df+M) M inv r.
  grad_x = (df_ + mx_) * mx_ * llt_ax.solve(rx);
  grad_y = (df_ + my_) * my_ * llt_by.solve(ry);
  return base_ - 0.5 * (df_ + mx_) * logdet_ax - 0.5 * (df_ + my_) * logdet_by;
}

double log_pred_density_given_means(const DataMatrices& data, const Vector& mu_x,
                                    const Vector& mu_y, const Hyperparams& hp) {
  return PredictiveModel(data, hp).log_density(mu_x, mu_y);
}

Hyperparams patch_hyperparams(const Hyperparams& hp, const VertexSubset& patch, int n_total) {
  const int m = static_cast<int>(patch.size());
  if (hp.A.rows() == m && hp.B.rows() == m) {
    hp.validate(m);
    return hp;
  }
  if (hp.A.rows() != n_total || hp.B.rows() != n_total)
    throw std::invalid_argument(
        "patch_hyperparams: A/B must be patch-sized or full-graph-sized");
  Hyperparams out = hp;
  out.A.resize(m, m);
  out.B.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.A(i, j) = hp.A(patch[i], patch[j]);
      out.B(i, j) = hp.B(patch[i], patch[j]);
    }
  }
  out.validate(m);
  return out;
}

double log_prior_mass(const DiscreteState& state, const Hyperparams& hp, int n_partitions) {
  if (n_partitions < 1) throw std::invalid_argument("log_prior_mass: n_partitions must be >= 1");
  const int k = state.partition.n_blocks();
  if (static_cast<int>(state.delta.size()) != k)
    throw std::invalid_argument("log_prior_mass: delta length != block count");
  double lp = -std::log(static_cast<double>(n_partitions));
  for (auto d : state.delta) {
    const double mass = d ? 1.0 - hp.p0 : hp.p0;
    if (mass <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += std::log(mass);
  }
  return lp;
}

namespace {

// Log-integrand over the free mean parameters of one discrete state.
// theta = (phi_1..phi_K, delta_k for changed blocks in block order).
class MeanObjective {
 public:
  MeanObjective(const PredictiveModel& model, const DiscreteState& state, const Hyperparams& hp)
      : model_(model), state_(state), hp_(hp), k_(state.partition.n_blocks()) {
    for (int b = 0; b < k_; ++b) {
      if (state.delta[b]) changed_.push_back(b);
    }
    d_ = k_ + static_cast<int>(changed_.size());
    n_ = state.partition.size();
  }

  int dim() const { return d_; }

  void expand(const Vector& theta, Vector& mu_x, Vector& mu_y) const {
    mu_x.resize(n_);
    mu_y.resize(n_);
    for (int v = 0; v < n_; ++v) {
      const int b = state_.partition.labels[v];
      mu_x[v] = theta[b];
      mu_y[v] = theta[b];
    }
    for (std::size_t j = 0; j < changed_.size(); ++j) {
      const int b = changed_[j];
      const double shift = theta[k_ + static_cast<int>(j)];
      for (int v = 0; v < n_; ++v) {
        if (state_.partition.labels[v] == b) mu_y[v] += shift;
      }
    }
  }

  double value(const Vector& theta) const {
    Vector mu_x, mu_y;
    expand(theta, mu_x, mu_y);
    return model_.log_density(mu_x, mu_y) + log_prior(theta);
  }

  double value_and_gradient(const Vector& theta, Vector& grad) const {
    Vector mu_x, mu_y, gx, gy;
    expand(theta, mu_x, mu_y);
    const double data_term = model_.log_density_and_gradient(mu_x, mu_y, gx, gy);
    grad = Vector::Zero(d_);
    for (int v = 0; v < n_; ++v) {
      const int b = state_.partition.labels[v];
      grad[b] += gx[v] + gy[v];
    }
    for (std::size_t j = 0; j < changed_.size(); ++j) {
      const int b = changed_[j];
      double acc = 0.0;
      for (int v = 0; v < n_; ++v) {
        if (state_.partition.labels[v] == b) acc += gy[v];
      }
      grad[k_ + static_cast<int>(j)] = acc;
    }
    for (int b = 0; b < k_; ++b) grad[b] -= (theta[b] - hp_.mu0) / hp_.tau2;
    for (std::size_t j = 0; j < changed_.size(); ++j) {
      const int idx = k_ + static_cast<int>(j);
      grad[idx] -= (theta[idx] - hp_.delta0) / hp_.sigma2;
    }
    return data_term + log_prior(theta);
  }

  // Block-wise sample means; shifts start at the block mean contrast.
  Vector initial_point() const {
    Vector theta = Vector::Zero(d_);
    std::vector<int> counts(k_, 0);
    Vector xsum = Vector::Zero(k_), ysum = Vector::Zero(k_);
    for (int v = 0; v < n_; ++v) {
      const int b = state_.partition.labels[v];
      ++counts[b];
      xsum[b] += model_.xbar()[v];
      ysum[b] += model_.ybar()[v];
    }
    for (int b = 0; b < k_; ++b) theta[b] = xsum[b] / counts[b];
    for (std::size_t j = 0; j < changed_.size(); ++j) {
      const int b = changed_[j];
      theta[k_ + static_cast<int>(j)] = (ysum[b] - xsum[b]) / counts[b];
    }
    return theta;
  }

 private:
  double log_prior(const Vector& theta) const {
    double lp = 0.0;
    for (int b = 0; b < k_; ++b) lp += normal_log_pdf(theta[b], hp_.mu0, hp_.tau2);
    for (std::size_t j = 0; j < changed_.size(); ++j)
      lp += normal_log_pdf(theta[k_ + static_cast<int>(j)], hp_.delta0, hp_.sigma2);
    return lp;
  }

  const PredictiveModel& model_;
  const DiscreteState& state_;
  const Hyperparams& hp_;
  int k_;
  int d_ = 0;
  int n_ = 0;
  std::vector<int> changed_;
};

// BFGS ascent on the objective; returns the mode. Throws on
// non-convergence within the iteration budget.
Vector maximize(const MeanObjective& obj, const LaplaceOptions& options,
                LaplaceDiagnostics* diagnostics) {
  const int d = obj.dim();
  Vector theta = obj.initial_point();
  Vector grad(d);
  double value = obj.value_and_gradient(theta, grad);
  Matrix hinv = Matrix::Identity(d, d);
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm < options.grad_tol) {
      if (diagnostics) {
        diagnostics->iterations = iter;
        diagnostics->grad_max_norm = gnorm;
        diagnostics->mode = theta;
      }
      return theta;
    }
    Vector direction = hinv * grad;
    if (direction.dot(grad) <= 0.0) direction = grad;  // reset on loss of ascent
    double step = 1.0;
    const double slope = grad.dot(direction);
    // Armijo slack: near the mode the expected gain drops below the
    // floating-point noise of the objective itself.
    const double noise = 1e-12 * (1.0 + std::fabs(value));
    Vector theta_new;
    double value_new = value;
    bool accepted = false;
    while (step > 1e-14) {
      theta_new = theta + step * direction;
      value_new = obj.value(theta_new);
      if (std::isfinite(value_new) && value_new >= value + 1e-4 * step * slope - noise) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw NumericError("laplace_log_marginal: line search failed at gradient norm " +
                         std::to_string(gnorm));
    Vector grad_new(d);
    obj.value_and_gradient(theta_new, grad_new);
    const Vector s = theta_new - theta;
    const Vector y = grad - grad_new;  // gradient of the negated objective increases
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const Vector hy = hinv * y;
      const double yhy = y.dot(hy);
      hinv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
              (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    theta = std::move(theta_new);
    grad = std::move(grad_new);
    value = value_new;
  }
  throw NumericError("laplace_log_marginal: no convergence after " +
                     std::to_string(options.max_iterations) +
                     " iterations, gradient max-norm " +
                     std::to_string(grad.lpNorm<Eigen::Infinity>()));
}

}  // namespace

double laplace_log_marginal(const DataMatrices& data, const DiscreteState& state,
                            const Hyperparams& hp, const LaplaceOptions& options,
                            LaplaceDiagnostics* diagnostics) {
  if (state.partition.size() != data.n_vertices())
    throw std::invalid_argument("laplace_log_marginal: partition length != data rows");
  const PredictiveModel model(data, hp);
  return laplace_log_marginal(model, state, hp, options, diagnostics);
}

double laplace_log_marginal(const PredictiveModel& model, const DiscreteState& state,
                            const Hyperparams& hp, const LaplaceOptions& options,
                            LaplaceDiagnostics* diagnostics) {
  if (state.partition.size() != model.n_vertices())
    throw std::invalid_argument("laplace_log_marginal: partition length != patch size");
  const MeanObjective obj(model, state, hp);
  const Vector mode = maximize(obj, options, diagnostics);
  const int d = obj.dim();

  // Hessian by central differences of the analytic gradient.
  const double step_scale = std::cbrt(std::numeric_limits<double>::epsilon());
  Matrix hessian(d, d);
  Vector gp(d), gm(d), probe = mode;
  for (int j = 0; j < d; ++j) {
    const double h = step_scale * (1.0 + std::fabs(mode[j]));
    probe[j] = mode[j] + h;
    obj.value_and_gradient(probe, gp);
    probe[j] = mode[j] - h;
    obj.value_and_gradient(probe, gm);
    probe[j] = mode[j];
    hessian.col(j) = (gp - gm) / (2.0 * h);
  }
  hessian = 0.5 * (hessian + hessian.transpose()).eval();

  Eigen::LLT<Matrix> llt(Matrix(-hessian));
  if (llt.info() != Eigen::Success)
    throw NumericError("laplace_log_marginal: Hessian at mode is not negative definite");
  const double logdet_negh =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return obj.value(mode) + 0.5 * d * kLog2Pi - 0.5 * logdet_negh;
}

}  // namespace graphmm
