#include "kfold/repcore.hpp"

#include <algorithm>

namespace kfold {

static Partition merge_types(const Partition& a, const Partition& b) {
  Partition m = a;
  m.insert(m.end(), b.begin(), b.end());
  std::sort(m.rbegin(), m.rend());
  return m;
}

std::map<std::pair<Partition, Partition>, std::int64_t> branching(
    const Partition& mu, int k, int kp) {
  if (weight(mu) != k + kp)
    throw std::invalid_argument("branching: weight(mu) != k + k'");
  auto cls = enumerate_partitions(k);
  auto clsp = enumerate_partitions(kp);
  auto irr = enumerate_partitions(k);
  auto irrp = enumerate_partitions(kp);
  std::int64_t norm = factorial(k) * factorial(kp);
  std::map<std::pair<Partition, Partition>, std::int64_t> out;
  for (const auto& lam : irr)
    for (const auto& lamp : irrp) {
      std::int64_t s = 0;
      for (const auto& r : cls)
        for (const auto& rp : clsp)
          s += class_size(r) * class_size(rp) * character(lam, r) *
               character(lamp, rp) * character(mu, merge_types(r, rp));
      if (s % norm != 0) throw std::runtime_error("branching: non-integer multiplicity");
      if (s != 0) out[{lam, lamp}] = s / norm;
    }
  return out;
}

std::int64_t kronecker(const Partition& lambda, const Partition& lambdap,
                       const Partition& mu) {
  int k = weight(lambda);
  if (weight(lambdap) != k || weight(mu) != k)
    throw std::invalid_argument("kronecker: weight mismatch");
  std::int64_t s = 0;
  for (const auto& r : enumerate_partitions(k))
    s += class_size(r) * character(lambda, r) * character(lambdap, r) *
         character(mu, r);
  std::int64_t norm = factorial(k);
  if (s % norm != 0) throw std::runtime_error("kronecker: non-integer multiplicity");
  return s / norm;
}

// cycle type of sigma^2 given the cycle type of sigma
static Partition square_type(const Partition& rho) {
  Partition out;
  for (int len : rho) {
    if (len % 2 == 1) {
      out.push_back(len);
    } else {
      out.push_back(len / 2);
      out.push_back(len / 2);
    }
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

static std::int64_t kronecker_square_part(const Partition& lambda,
                                          const Partition& mu, int sgn) {
  int k = weight(lambda);
  if (weight(mu) != k) throw std::invalid_argument("kronecker square: weight mismatch");
  // chi_{Sym^2}(s) = (chi(s)^2 + chi(s^2))/2, chi_{Alt^2} with a minus
  std::int64_t s = 0;
  for (const auto& r : enumerate_partitions(k)) {
    std::int64_t c = character(lambda, r);
    std::int64_t cs = character(lambda, square_type(r));
    s += class_size(r) * (c * c + sgn * cs) * character(mu, r);
  }
  std::int64_t norm = 2 * factorial(k);
  if (s % norm != 0) throw std::runtime_error("kronecker square: non-integer");
  return s / norm;
}

std::int64_t kronecker_sym2(const Partition& lambda, const Partition& mu) {
  return kronecker_square_part(lambda, mu, +1);
}
std::int64_t kronecker_alt2(const Partition& lambda, const Partition& mu) {
  return kronecker_square_part(lambda, mu, -1);
}

std::int64_t perm_rep_multiplicity(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("perm_rep_multiplicity: d must be >= 1");
  int k = weight(lambda);
  std::int64_t s = 0;
  for (const auto& r : enumerate_partitions(k)) {
    std::int64_t dc = 1;
    for (size_t i = 0; i < r.size(); ++i) dc *= d;  // d^{cycles}
    s += class_size(r) * character(lambda, r) * dc;
  }
  std::int64_t norm = factorial(k);
  if (s % norm != 0) throw std::runtime_error("perm_rep_multiplicity: non-integer");
  return s / norm;
}

std::int64_t unitary_irrep_dim(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("unitary_irrep_dim: d must be >= 1");
  if (!is_partition(lambda)) throw std::invalid_argument("unitary_irrep_dim: not a partition");
  if ((int)lambda.size() > d) return 0;
  std::vector<int> conj(lambda.empty() ? 0 : lambda[0], 0);
  for (int r = 0; r < (int)lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) conj[c]++;
  // prod over cells (d + c - r) / hook(r,c)
  std::int64_t num = 1, den = 1;
  for (int r = 0; r < (int)lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) {
      num *= d + c - r;
      den *= (lambda[r] - c) + (conj[c] - r) - 1;
    }
  return num / den;
}

std::vector<CCoefficient> c_coefficients(int k, int d) {
  if (k < 1 || d < 1) throw std::invalid_argument("c_coefficients: k, d must be >= 1");
  auto mus = enumerate_partitions(2 * k, d);
  auto mups = enumerate_partitions(k);
  auto lams = enumerate_partitions(k, d);
  std::vector<CCoefficient> out;
  for (const auto& mu : mus) {
    auto B = branching(mu, k, k);
    for (const auto& mup : mups) {
      std::int64_t plus = 0, minus = 0;
      for (size_t i = 0; i < lams.size(); ++i) {
        for (size_t j = 0; j < lams.size(); ++j) {
          auto it = B.find({lams[i], lams[j]});
          if (it == B.end()) continue;
          if (i == j) {
            plus += it->second * kronecker_sym2(lams[i], mup);
            minus += it->second * kronecker_alt2(lams[i], mup);
          } else {
            minus += it->second * kronecker(lams[i], lams[j], mup);
          }
        }
      }
      if (plus) out.push_back({mu, mup, '+', plus});
      if (minus) out.push_back({mu, mup, '-', minus});
    }
  }
  return out;
}

}  // namespace kfold
