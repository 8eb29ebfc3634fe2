#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<std::vector<std::vector<int>>> all_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> complete;
  std::vector<std::vector<int>> current;
  std::function<void(int)> place = [&](int element) {
    if (element == n) {
      complete.push_back(current);
      return;
    }
    const std::size_t n_blocks = current.size();  // recursion grows the tail
    for (std::size_t b = 0; b < n_blocks; ++b) {
      current[b].push_back(element);
      place(element + 1);
      current[b].pop_back();
    }
    current.push_back({element});
    place(element + 1);
    current.pop_back();
  };
  place(0);
  return complete;
}

bool blocks_connected(int n, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::vector<int>>& blocks) {
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b]) block_of[v] = static_cast<int>(b);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [u, v] : edges) {
    if (block_of[u] == block_of[v]) parent[find(u)] = find(v);
  }
  for (const auto& block : blocks) {
    for (int v : block) {
      if (find(v) != find(block.front())) return false;
    }
  }
  return true;
}

std::vector<int> to_labels(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> raw(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b]) raw[v] = static_cast<int>(b);
  std::vector<int> remap(blocks.size(), -1);
  int next = 0;
  for (int& l : raw) {
    if (remap[l] == -1) remap[l] = next++;
    l = remap[l];
  }
  return raw;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return adaptive_step(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm), tol, 40);
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

}  // namespace

double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                   double ay, double by, int n) {
  std::vector<double> nodes, weights;
  gauss_legendre(n, nodes, weights);
  const double sx = 0.5 * (bx - ax), cx = 0.5 * (bx + ax);
  const double sy = 0.5 * (by - ay), cy = 0.5 * (by + ay);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = cx + sx * nodes[i];
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += weights[j] * f(x, cy + sy * nodes[j]);
    total += weights[i] * row;
  }
  return total * sx * sy;
}

double log_multigamma(int dim, double a) {
  double out = 0.25 * dim * (dim - 1) * std::log(kPi);
  for (int j = 1; j <= dim; ++j) out += std::lgamma(a + 0.5 * (1.0 - j));
  return out;
}

Matrix inverse_wishart_draw(const Matrix& scale, double df, std::mt19937_64& rng) {
  const int n = static_cast<int>(scale.rows());
  // W ~ Wishart(scale^-1, df) via Bartlett; return W^-1 ~ IW(scale, df).
  const Matrix v = scale.inverse();
  Eigen::LLT<Matrix> llt(v);
  const Matrix l = llt.matrixL();
  Matrix t = Matrix::Zero(n, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    std::chi_squared_distribution<double> chi2(df - i);
    t(i, i) = std::sqrt(chi2(rng));
    for (int j = 0; j < i; ++j) t(i, j) = gauss(rng);
  }
  const Matrix lt = l * t;
  const Matrix w = lt * lt.transpose();
  return w.inverse();
}

double mvn_log_pdf(const Vector& x, const Vector& mean, const Matrix& cov) {
  const int n = static_cast<int>(x.size());
  const Vector d = x - mean;
  const double quad = d.dot(cov.inverse() * d);
  return -0.5 * (n * std::log(2.0 * kPi) + std::log(cov.determinant()) + quad);
}

namespace {

int state_dim(const TinyState& state) {
  int k = 0;
  for (int l : state.labels) k = std::max(k, l + 1);
  int changed = 0;
  for (int d : state.delta) changed += d != 0;
  return k + changed;
}

void tiny_means(const TinyState& state, const Vector& theta, Vector& mu_x, Vector& mu_y) {
  const int n = static_cast<int>(state.labels.size());
  const int k = static_cast<int>(state.delta.size());
  mu_x.resize(n);
  mu_y.resize(n);
  std::vector<double> shift(k, 0.0);
  int idx = k;
  for (int b = 0; b < k; ++b) {
    if (state.delta[b]) shift[b] = theta[idx++];
  }
  for (int v = 0; v < n; ++v) {
    mu_x[v] = theta[state.labels[v]];
    mu_y[v] = mu_x[v] + shift[state.labels[v]];
  }
}

}  // namespace

double tiny_log_integrand(const Matrix& x, const Matrix& y, const TinyState& state,
                          const TinyModel& model, const Vector& theta) {
  const int mx = static_cast<int>(x.cols());
  const int my = static_cast<int>(y.cols());
  const int k = static_cast<int>(state.delta.size());
  Vector mu_x, mu_y;
  tiny_means(state, theta, mu_x, mu_y);
  // A-tilde assembled directly from per-replicate deviations.
  Matrix at = model.a_scale;
  for (int m = 0; m < mx; ++m) {
    const Vector d = x.col(m) - mu_x;
    at += d * d.transpose();
  }
  Matrix bt = model.b_scale;
  for (int r = 0; r < my; ++r) {
    const Vector d = y.col(r) - mu_y;
    bt += d * d.transpose();
  }
  double value = 0.5 * model.df *
                     (std::log(model.a_scale.determinant()) +
                      std::log(model.b_scale.determinant())) -
                 0.5 * (model.df + mx) * std::log(at.determinant()) -
                 0.5 * (model.df + my) * std::log(bt.determinant());
  for (int b = 0; b < k; ++b) {
    const double d = theta[b] - model.mu0;
    value += -0.5 * std::log(2.0 * kPi * model.tau2) - 0.5 * d * d / model.tau2;
  }
  int idx = k;
  for (int b = 0; b < k; ++b) {
    if (!state.delta[b]) continue;
    const double d = theta[idx++] - model.delta0;
    value += -0.5 * std::log(2.0 * kPi * model.sigma2) - 0.5 * d * d / model.sigma2;
  }
  return value;
}

namespace {

Vector tiny_gradient(const Matrix& x, const Matrix& y, const TinyState& state,
                     const TinyModel& model, const Vector& theta) {
  const int mx = static_cast<int>(x.cols());
  const int my = static_cast<int>(y.cols());
  const int k = static_cast<int>(state.delta.size());
  const int n = static_cast<int>(state.labels.size());
  Vector mu_x, mu_y;
  tiny_means(state, theta, mu_x, mu_y);
  Matrix at = model.a_scale;
  for (int m = 0; m < mx; ++m) {
    const Vector d = x.col(m) - mu_x;
    at += d * d.transpose();
  }
  Matrix bt = model.b_scale;
  for (int r = 0; r < my; ++r) {
    const Vector d = y.col(r) - mu_y;
    bt += d * d.transpose();
  }
  // d(-c/2 log|At|)/dmu = c * At^-1 * sum_m (x_m - mu); explicit inverse.
  Vector sum_x = Vector::Zero(n), sum_y = Vector::Zero(n);
  for (int m = 0; m < mx; ++m) sum_x += x.col(m) - mu_x;
  for (int r = 0; r < my; ++r) sum_y += y.col(r) - mu_y;
  const Vector gx = (model.df + mx) * (at.inverse() * sum_x);
  const Vector gy = (model.df + my) * (bt.inverse() * sum_y);

  Vector grad = Vector::Zero(state_dim(state));
  for (int v = 0; v < n; ++v) grad[state.labels[v]] += gx[v] + gy[v];
  int idx = k;
  for (int b = 0; b < k; ++b) {
    if (!state.delta[b]) continue;
    double acc = 0.0;
    for (int v = 0; v < n; ++v)
      if (state.labels[v] == b) acc += gy[v];
    grad[idx++] = acc;
  }
  for (int b = 0; b < k; ++b) grad[b] -= (theta[b] - model.mu0) / model.tau2;
  idx = k;
  for (int b = 0; b < k; ++b) {
    if (!state.delta[b]) continue;
    grad[idx] -= (theta[idx] - model.delta0) / model.sigma2;
    ++idx;
  }
  return grad;
}

}  // namespace

TinyLaplace tiny_laplace(const Matrix& x, const Matrix& y, const TinyState& state,
                         const TinyModel& model) {
  const int d = state_dim(state);
  const int k = static_cast<int>(state.delta.size());
  const int n = static_cast<int>(state.labels.size());

  // start at block-wise sample means
  Vector theta = Vector::Zero(d);
  std::vector<int> counts(k, 0);
  Vector xsum = Vector::Zero(k), ysum = Vector::Zero(k);
  const Vector xbar = x.rowwise().mean();
  const Vector ybar = y.rowwise().mean();
  for (int v = 0; v < n; ++v) {
    const int b = state.labels[v];
    ++counts[b];
    xsum[b] += xbar[v];
    ysum[b] += ybar[v];
  }
  for (int b = 0; b < k; ++b) theta[b] = xsum[b] / counts[b];
  int idx = k;
  for (int b = 0; b < k; ++b)
    if (state.delta[b]) theta[idx++] = (ysum[b] - xsum[b]) / counts[b];

  const double step = std::cbrt(std::numeric_limits<double>::epsilon());
  auto fd_hessian = [&](const Vector& at) {
    Matrix h(d, d);
    Vector probe = at;
    for (int j = 0; j < d; ++j) {
      const double hj = step * (1.0 + std::fabs(at[j]));
      probe[j] = at[j] + hj;
      const Vector gp = tiny_gradient(x, y, state, model, probe);
      probe[j] = at[j] - hj;
      const Vector gm = tiny_gradient(x, y, state, model, probe);
      probe[j] = at[j];
      h.col(j) = (gp - gm) / (2.0 * hj);
    }
    return Matrix(0.5 * (h + h.transpose()));
  };

  // damped Newton to machine-tight gradient
  double value = tiny_log_integrand(x, y, state, model, theta);
  for (int it = 0; it < 200; ++it) {
    const Vector g = tiny_gradient(x, y, state, model, theta);
    if (g.lpNorm<Eigen::Infinity>() < 1e-11) break;
    const Matrix h = fd_hessian(theta);
    Vector direction = (-h).ldlt().solve(g);
    if (!direction.allFinite() || direction.dot(g) <= 0.0) direction = g;
    double alpha = 1.0;
    while (alpha > 1e-12) {
      const Vector cand = theta + alpha * direction;
      const double cand_value = tiny_log_integrand(x, y, state, model, cand);
      if (cand_value >= value - 1e-12 * (1.0 + std::fabs(value))) {
        theta = cand;
        value = cand_value;
        break;
      }
      alpha *= 0.5;
    }
  }

  TinyLaplace out;
  out.mode = theta;
  out.hessian = fd_hessian(theta);
  const double logdet_negh = std::log((-out.hessian).determinant());
  out.log_marginal = tiny_log_integrand(x, y, state, model, theta) +
                     0.5 * d * std::log(2.0 * kPi) - 0.5 * logdet_negh;
  return out;
}

std::vector<double> tiny_lfdr(const Matrix& x, const Matrix& y,
                              const std::vector<TinyState>& states, int n_partitions,
                              const TinyModel& model) {
  const int n = static_cast<int>(x.rows());
  std::vector<double> log_weights;
  for (const auto& state : states) {
    double prior = -std::log(static_cast<double>(n_partitions));
    bool possible = true;
    for (int d : state.delta) {
      const double mass = d ? 1.0 - model.p0 : model.p0;
      if (mass <= 0.0) possible = false;
      else prior += std::log(mass);
    }
    if (!possible) {
      log_weights.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    log_weights.push_back(prior + tiny_laplace(x, y, state, model).log_marginal);
  }
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (double lw : log_weights) total += std::exp(lw - peak);
  std::vector<double> lfdr(n, 0.0);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double prob = std::exp(log_weights[s] - peak) / total;
    for (int v = 0; v < n; ++v) {
      if (!states[s].delta[states[s].labels[v]]) lfdr[v] += prob;
    }
  }
  return lfdr;
}

}  // namespace oracle
