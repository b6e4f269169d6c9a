#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kfold/errors.hpp"
#include "kfold/hciz.hpp"
#include "kfold/rng.hpp"

using namespace kfold;

namespace {
HcizProblem make(std::initializer_list<double> a, std::initializer_list<double> b,
                 double t) {
  HcizProblem p;
  p.n = (int)a.size();
  p.a = Eigen::Map<const Rvec>(a.begin(), (long)a.size());
  p.b = Eigen::Map<const Rvec>(b.begin(), (long)b.size());
  p.t = t;
  return p;
}
}  // namespace

TEST_CASE("rank one and scalar limits") {
  auto r = hciz_exact(make({1.7}, {-0.3}, 2.0));
  CHECK(r.value == doctest::Approx(std::exp(2.0 * 1.7 * -0.3)).epsilon(1e-14));
  CHECK(hciz_exact(make({1.0, 2.0}, {0.5, 1.5}, 0.0)).value == doctest::Approx(1.0));
}

TEST_CASE("projector pair closed form") {
  // a = b = (0,1), t = 1: det[[1,1],[1,e]] / (Delta^2) = e - 1
  auto r = hciz_exact(make({0.0, 1.0}, {0.0, 1.0}, 1.0));
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-12);
  CHECK_FALSE(r.degenerate_path);
}

TEST_CASE("constant spectra factor out") {
  auto r = hciz_exact(make({2.0, 2.0}, {0.3, 1.1}, 0.7));
  CHECK(r.value == doctest::Approx(std::exp(0.7 * 2.0 * 1.4)).epsilon(1e-12));
}

TEST_CASE("permutation and swap symmetry") {
  auto r1 = hciz_exact(make({0.2, 1.4, -0.5}, {0.0, 0.9, 2.0}, 1.3));
  auto r2 = hciz_exact(make({1.4, -0.5, 0.2}, {0.9, 2.0, 0.0}, 1.3));
  auto r3 = hciz_exact(make({0.0, 0.9, 2.0}, {0.2, 1.4, -0.5}, 1.3));
  CHECK(r1.value == doctest::Approx(r2.value).epsilon(1e-11));
  CHECK(r1.value == doctest::Approx(r3.value).epsilon(1e-11));
}

TEST_CASE("t absorbs into a") {
  auto r1 = hciz_exact(make({0.3, 1.2}, {0.1, 0.8}, 1.7));
  auto r2 = hciz_exact(make({0.3 * 1.7, 1.2 * 1.7}, {0.1, 0.8}, 1.0));
  CHECK(r1.value == doctest::Approx(r2.value).epsilon(1e-11));
}

TEST_CASE("monte carlo agrees with the determinant formula") {
  Rng rng(17u);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 2 + trial % 2;
    HcizProblem p;
    p.n = n;
    p.a.resize(n);
    p.b.resize(n);
    for (int i = 0; i < n; ++i) {
      p.a(i) = rng.normal();
      p.b(i) = rng.normal();
    }
    p.t = 0.5 + 0.5 * rng.uniform();
    auto exact = hciz_exact(p);
    auto mc = hciz_monte_carlo(p, 20000, 1000u + trial);
    CHECK(std::abs(mc.value - exact.value) < 4.0 * mc.std_error + 1e-9);
  }
}

TEST_CASE("degenerate spectra go through the perturbative path") {
  auto p = make({0.0, 1.0, 1.0}, {0.2, 0.9, 1.7}, 1.0);
  auto r = hciz_exact(p);
  CHECK(r.degenerate_path);
  CHECK(r.error_estimate > 0);
  auto mc = hciz_monte_carlo(p, 40000, 55u);
  CHECK(std::abs(r.value - mc.value) < 4.0 * mc.std_error + 10 * r.error_estimate);
  // full degeneracy on one side reduces to the constant-spectrum formula,
  // which the perturbative path must reproduce
  auto q = make({1.0, 1.0, 1.0}, {0.2, 0.9, 1.7}, 1.0);
  double closed = std::exp(1.0 * (0.2 + 0.9 + 1.7));
  CHECK(std::abs(hciz_exact(q).value - closed) < 1e-5 * closed);
}

TEST_CASE("mc input validation") {
  auto p = make({0.0, 1.0}, {0.0, 1.0}, 1.0);
  CHECK_THROWS_AS(hciz_monte_carlo(p, 10, 1u), std::invalid_argument);
  HcizProblem big;
  big.n = 7;
  big.a = Rvec::LinSpaced(7, 0, 1);
  big.b = Rvec::LinSpaced(7, 0, 1);
  CHECK_THROWS_AS(hciz_monte_carlo(big, 5000, 1u), resource_limit_error);
}

TEST_CASE("weyl sum") {
  Rvec x(3), y(3);
  x << 0.3, 1.1, -0.4;
  y << 0.8, 0.1, 0.5;
  double v = weyl_sum(x, y);
  // antisymmetric under swapping two entries
  Rvec xs = x;
  std::swap(xs(0), xs(2));
  CHECK(weyl_sum(xs, y) == doctest::Approx(-v).epsilon(1e-12));
  // symmetric under exchanging the two arguments
  CHECK(weyl_sum(y, x) == doctest::Approx(v).epsilon(1e-12));
  // n = 1 reduces to a plain exponential
  Rvec x1(1), y1(1);
  x1 << 0.7;
  y1 << -0.2;
  CHECK(weyl_sum(x1, y1) == doctest::Approx(std::exp(-0.14)).epsilon(1e-14));
}
