#include "graphmm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graphmm/estimate.hpp"
#include "graphmm/numeric.hpp"

namespace graphmm {

namespace {

void check_pvalues(const Vector& p) {
  if (p.size() == 0) throw std::invalid_argument("empty p-value vector");
  for (int i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw std::invalid_argument("p-values must be in [0,1]");
  }
}

// Step-up rule: sort ascending, adj_(i) = min_{j>=i} scale*N*p_(j)/j,
// clipped at 1, mapped back to input order.
Vector step_up(const Vector& p, double scale) {
  const int n = static_cast<int>(p.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p[a] < p[b]; });
  Vector adjusted(n);
  double running = std::numeric_limits<double>::infinity();
  for (int i = n - 1; i >= 0; --i) {
    const double value = scale * n * p[order[i]] / (i + 1);
    running = std::min(running, value);
    adjusted[order[i]] = std::min(1.0, running);
  }
  return adjusted;
}

}  // namespace

AdjustedScores bh_adjust(const Vector& p) {
  check_pvalues(p);
  return AdjustedScores{"bh", step_up(p, 1.0)};
}

AdjustedScores storey_qvalue(const Vector& p, double lambda) {
  check_pvalues(p);
  return storey_qvalue_with_p0(p, estimate_p0(p, lambda));
}

AdjustedScores storey_qvalue_with_p0(const Vector& p, double p0) {
  check_pvalues(p);
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("storey_qvalue: p0 must be in [0,1]");
  return AdjustedScores{"qvalue", step_up(p, p0)};
}

AdjustedScores kernel_locfdr(const Vector& t, double t_df) {
  const int n = static_cast<int>(t.size());
  if (n < 200) throw std::invalid_argument("kernel_locfdr: need at least 200 statistics");
  if (!(t_df > 0.0)) throw std::invalid_argument("kernel_locfdr: df must be positive");

  Vector z(n), p(n);
  constexpr double eps = 1e-15;
  for (int i = 0; i < n; ++i) {
    const double cdf = std::clamp(student_t_cdf(t[i], t_df), eps, 1.0 - eps);
    z[i] = normal_quantile(cdf);
    p[i] = student_t_two_sided_p(t[i], t_df);
  }
  const double p0 = estimate_p0(p, 0.5);

  // Silverman bandwidth on the z scale.
  const double sd = std::sqrt((z.array() - z.mean()).square().sum() / (n - 1));
  std::vector<double> sorted(z.data(), z.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double iqr = sorted[static_cast<int>(0.75 * (n - 1))] - sorted[static_cast<int>(0.25 * (n - 1))];
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = std::max(sd, 1e-3);
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);

  AdjustedScores out{"locfdr", Vector(n)};
  const double norm_const = 1.0 / (n * h * std::sqrt(2.0 * 3.14159265358979323846));
  for (int i = 0; i < n; ++i) {
    double density = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = (z[i] - z[j]) / h;
      density += std::exp(-0.5 * u * u);
    }
    density *= norm_const;
    const double null_density = std::exp(normal_log_pdf(z[i], 0.0, 1.0));
    out.score[i] = std::min(1.0, p0 * null_density / density);
  }
  return out;
}

}  // namespace graphmm
