#include "kfold/characters.hpp"

#include <algorithm>
#include <map>

namespace kfold {

// Murnaghan-Nakayama via beta-numbers: removing a border strip of length t
// from lambda corresponds to moving a bead b -> b-t in the shifted sequence
// beta_i = lambda_i + n - 1 - i, with sign (-1)^{#beads strictly between}.
static std::int64_t mn(std::vector<int> beta, std::vector<int> rho) {
  if (rho.empty()) return 1;
  int t = rho[0];
  rho.erase(rho.begin());
  std::int64_t total = 0;
  for (size_t i = 0; i < beta.size(); ++i) {
    int target = beta[i] - t;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int crossed = 0;
    for (int b : beta)
      if (b > target && b < beta[i]) crossed++;
    std::vector<int> nb = beta;
    nb[i] = target;
    std::sort(nb.rbegin(), nb.rend());
    std::int64_t sub = mn(nb, rho);
    total += (crossed % 2 == 0) ? sub : -sub;
  }
  return total;
}

std::int64_t character(const Partition& lambda, const Partition& rho) {
  if (!is_partition(lambda) || !is_partition(rho))
    throw std::invalid_argument("character: arguments must be partitions");
  if (weight(lambda) != weight(rho))
    throw std::invalid_argument("character: weight mismatch");
  int n = (int)lambda.size();
  std::vector<int> beta(n);
  for (int i = 0; i < n; ++i) beta[i] = lambda[i] + n - 1 - i;
  // Sort rho descending so larger strips are removed first (fewer branches).
  Partition r = rho;
  std::sort(r.rbegin(), r.rend());
  return mn(beta, r);
}

CharacterTable character_table(int k) {
  CharacterTable t;
  t.k = k;
  t.irreps = enumerate_partitions(k);
  t.classes = enumerate_partitions(k);
  for (const auto& c : t.classes) t.sizes.push_back(class_size(c));
  for (const auto& lam : t.irreps) {
    std::vector<std::int64_t> row;
    for (const auto& c : t.classes) row.push_back(character(lam, c));
    t.entries.push_back(row);
  }
  return t;
}

void check_orthogonality(const CharacterTable& t) {
  std::int64_t kfac = factorial(t.k);
  size_t m = t.irreps.size();
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      std::int64_t s = 0;
      for (size_t c = 0; c < m; ++c)
        s += t.sizes[c] * t.entries[a][c] * t.entries[b][c];
      if (s != (a == b ? kfac : 0))
        throw std::runtime_error("character table row orthogonality violated");
    }
  // column orthogonality: sum_lambda chi(c)chi(c') = delta * k!/size
  for (size_t c = 0; c < m; ++c)
    for (size_t c2 = 0; c2 < m; ++c2) {
      std::int64_t s = 0;
      for (size_t a = 0; a < m; ++a) s += t.entries[a][c] * t.entries[a][c2];
      if (s != (c == c2 ? kfac / t.sizes[c] : 0))
        throw std::runtime_error("character table column orthogonality violated");
    }
}

}  // namespace kfold
