#include <doctest.h>

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "graphmm/numeric.hpp"

using namespace graphmm;

TEST_CASE("log_sum_exp basics") {
  std::vector<double> v{0.0, 0.0};
  CHECK(log_sum_exp(v) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  std::vector<double> shifted{1000.0, 1000.0};
  CHECK(log_sum_exp(shifted) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> with_inf{neg_inf, 3.0};
  CHECK(log_sum_exp(with_inf) == doctest::Approx(3.0));

  std::vector<double> all_inf{neg_inf, neg_inf};
  CHECK(log_sum_exp(all_inf) == neg_inf);
}

TEST_CASE("normal distribution helpers") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.3) == doctest::Approx(0.9031995154143897).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.01) == doctest::Approx(-2.3263478740408408).epsilon(1e-12));
  CHECK(normal_quantile(1e-8) == doctest::Approx(-5.612001244174789).epsilon(1e-10));
  CHECK(normal_quantile(0.6) == doctest::Approx(0.2533471031357997).epsilon(1e-12));
  // round trip
  for (double p : {1e-6, 0.02, 0.31, 0.5, 0.77, 0.999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("incomplete beta against reference values") {
  CHECK(incomplete_beta(2, 3, 0.4) == doctest::Approx(0.5247999999999999).epsilon(1e-12));
  CHECK(incomplete_beta(0.5, 0.5, 0.3) == doctest::Approx(0.36901011956554536).epsilon(1e-12));
  CHECK(incomplete_beta(5, 2, 0.9) == doctest::Approx(0.885735).epsilon(1e-12));
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("student t distribution") {
  CHECK(student_t_cdf(1.2247448713915892, 4) == doctest::Approx(0.8560679326366546).epsilon(1e-12));
  CHECK(student_t_cdf(2.5, 58) == doctest::Approx(0.9923653851887884).epsilon(1e-12));
  CHECK(student_t_cdf(-0.7, 9) == doctest::Approx(0.25080951960807263).epsilon(1e-12));
  CHECK(student_t_cdf(0.0, 7) == 0.5);
  CHECK(student_t_two_sided_p(1.2247448713915892, 4) ==
        doctest::Approx(0.2878641347266908).epsilon(1e-12));
  // symmetry
  CHECK(student_t_two_sided_p(-2.1, 11) ==
        doctest::Approx(student_t_two_sided_p(2.1, 11)).epsilon(1e-14));
}

TEST_CASE("equicorrelated normal density matches a dense evaluation") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 4;
    const double sigma2 = 0.2 + 0.4 * (trial % 3);
    std::vector<double> x(m);
    for (auto& v : x) v = gauss(rng);
    // dense: N(0, sigma2 I + J)
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(m, m, 1.0);
    cov.diagonal().array() += sigma2;
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), m);
    const double quad = xv.dot(cov.inverse() * xv);
    const double expected =
        -0.5 * (m * std::log(2.0 * 3.14159265358979323846) + std::log(cov.determinant()) + quad);
    CHECK(equicorrelated_normal_log_pdf(x, sigma2) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("split_seed produces distinct deterministic streams") {
  CHECK(split_seed(42, 0) == split_seed(42, 0));
  CHECK(split_seed(42, 0) != split_seed(42, 1));
  CHECK(split_seed(42, 0) != split_seed(43, 0));
}
