#include "graphmm/estimate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphmm/errors.hpp"
#include "graphmm/numeric.hpp"

namespace graphmm {

VertexTests vertex_t_tests(const DataMatrices& data) {
  const int n = data.n_vertices();
  const int mx = data.mx();
  const int my = data.my();
  const double t_df = mx + my - 2;
  VertexTests out;
  out.t.resize(n);
  out.p.resize(n);
  out.effect.resize(n);
  out.se.resize(n);
  out.zero_variance.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    const double xbar = data.x.row(v).mean();
    const double ybar = data.y.row(v).mean();
    const double ssx = (data.x.row(v).array() - xbar).square().sum();
    const double ssy = (data.y.row(v).array() - ybar).square().sum();
    const double pooled_var = (ssx + ssy) / t_df;
    out.effect[v] = ybar - xbar;
    if (pooled_var <= 0.0) {
      out.zero_variance[v] = 1;
      out.t[v] = 0.0;
      out.p[v] = 1.0;
      out.se[v] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out.se[v] = std::sqrt(pooled_var * (1.0 / mx + 1.0 / my));
    out.t[v] = out.effect[v] / out.se[v];
    out.p[v] = student_t_two_sided_p(out.t[v], t_df);
  }
  return out;
}

double estimate_p0(const Vector& p, double lambda) {
  if (p.size() == 0) throw std::invalid_argument("estimate_p0: empty p-value vector");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("estimate_p0: lambda must be in (0,1)");
  for (int i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw std::invalid_argument("estimate_p0: p-values must be in [0,1]");
  }
  const double exceed = (p.array() > lambda).count();
  const double est = exceed / ((1.0 - lambda) * p.size());
  return std::min(1.0, std::max(0.0, est));
}

namespace {

double sample_variance(const Vector& v) {
  if (v.size() < 2) return 0.0;
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / (v.size() - 1);
}

// Pooled within-group covariance of the window vertices, averaged over all
// full window positions.
Matrix pooled_window_covariance(const Matrix& x, const Matrix& y, int rows, int cols, int pr,
                                int pc, bool include_y) {
  const int np = pr * pc;
  const int mx = static_cast<int>(x.cols());
  const int my = static_cast<int>(y.cols());
  Matrix acc = Matrix::Zero(np, np);
  int n_windows = 0;
  Matrix xp(np, mx), yp(np, my);
  for (int r0 = 0; r0 + pr <= rows; ++r0) {
    for (int c0 = 0; c0 + pc <= cols; ++c0) {
      int i = 0;
      for (int r = r0; r < r0 + pr; ++r)
        for (int c = c0; c < c0 + pc; ++c, ++i) {
          xp.row(i) = x.row(r * cols + c);
          yp.row(i) = y.row(r * cols + c);
        }
      const Matrix xc = xp.colwise() - xp.rowwise().mean().eval();
      double denom = mx - 1;
      Matrix scatter = xc * xc.transpose();
      if (include_y) {
        const Matrix yc = yp.colwise() - yp.rowwise().mean().eval();
        scatter += yc * yc.transpose();
        denom = mx + my - 2;
      }
      acc += scatter / denom;
      ++n_windows;
    }
  }
  return acc / n_windows;
}

Matrix shrink_offdiagonal(const Matrix& s, double factor) {
  Matrix out = factor * s;
  out.diagonal() = s.diagonal();
  return out;
}

}  // namespace

Hyperparams estimate_hyperparams(const DataMatrices& data, int rows, int cols,
                                 const EstimationOptions& options) {
  const int n = data.n_vertices();
  if (n != rows * cols)
    throw std::invalid_argument("estimate_hyperparams: data rows != lattice size");
  const int pr = options.patch_rows;
  const int pc = options.patch_cols;
  if (pr < 1 || pc < 1 || pr > rows || pc > cols)
    throw std::invalid_argument("estimate_hyperparams: patch does not fit the lattice");
  const int np = pr * pc;
  const int mx = data.mx();
  const int my = data.my();

  Hyperparams hp;
  hp.mu0 = options.mu0.value_or((data.x.sum() + data.y.sum()) /
                                (static_cast<double>(n) * (mx + my)));

  const Vector pooled_means = (data.x.rowwise().sum() + data.y.rowwise().sum()) / (mx + my);
  hp.tau2 = options.tau2.value_or(std::max(options.tau2_floor, sample_variance(pooled_means)));

  hp.delta0 = options.delta0.value_or(0.0);

  const VertexTests tests = vertex_t_tests(data);
  double se2_mean = 0.0;
  int se2_count = 0;
  for (int v = 0; v < n; ++v) {
    if (!tests.zero_variance[v]) {
      se2_mean += tests.se[v] * tests.se[v];
      ++se2_count;
    }
  }
  if (se2_count == 0) throw NumericError("estimate_hyperparams: all vertices degenerate");
  se2_mean /= se2_count;
  hp.sigma2 = options.sigma2.value_or(
      std::max(options.sigma2_floor, sample_variance(tests.effect) - se2_mean));

  hp.p0 = options.p0.value_or(estimate_p0(tests.p, options.lambda));

  hp.df = options.df.value_or(np + 2);
  if (!(hp.df > np + 1))
    throw std::invalid_argument("estimate_hyperparams: df must exceed patch size + 1");
  const double scale = hp.df - np - 1;

  if (options.shared_scale) {
    const Matrix pooled = pooled_window_covariance(data.x, data.y, rows, cols, pr, pc, true);
    hp.A = scale * shrink_offdiagonal(pooled, options.offdiag_shrink);
    hp.B = hp.A;
  } else {
    const Matrix sx = pooled_window_covariance(data.x, data.y, rows, cols, pr, pc, false);
    const Matrix sy = pooled_window_covariance(data.y, data.x, rows, cols, pr, pc, false);
    hp.A = scale * shrink_offdiagonal(sx, options.offdiag_shrink);
    hp.B = scale * shrink_offdiagonal(sy, options.offdiag_shrink);
  }
  hp.validate(np);
  return hp;
}

}  // namespace graphmm
