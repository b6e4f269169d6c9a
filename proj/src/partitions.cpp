#include "kfold/partitions.hpp"

#include <map>

namespace kfold {

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

static void enum_rec(int rem, int maxpart, int rows_left, Partition& cur,
                     std::vector<Partition>& out) {
  if (rem == 0) {
    out.push_back(cur);
    return;
  }
  if (rows_left == 0) return;
  for (int p = std::min(rem, maxpart); p >= 1; --p) {
    cur.push_back(p);
    enum_rec(rem - p, p, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> enumerate_partitions(int k, int max_rows) {
  if (k < 1) throw std::invalid_argument("enumerate_partitions: k must be >= 1");
  std::vector<Partition> out;
  Partition cur;
  enum_rec(k, k, max_rows <= 0 ? k : max_rows, cur, out);
  return out;
}

std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::int64_t hook_dimension(const Partition& lambda) {
  if (!is_partition(lambda)) throw std::invalid_argument("hook_dimension: not a partition");
  int k = weight(lambda);
  // conjugate partition column lengths
  std::vector<int> conj(lambda.empty() ? 0 : lambda[0], 0);
  for (int r = 0; r < (int)lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) conj[c]++;
  std::int64_t num = factorial(k), den = 1;
  for (int r = 0; r < (int)lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c)
      den *= (lambda[r] - c) + (conj[c] - r) - 1;
  return num / den;
}

std::int64_t class_size(const Partition& rho) {
  if (!is_partition(rho)) throw std::invalid_argument("class_size: not a partition");
  int k = weight(rho);
  std::map<int, int> mult;
  std::int64_t z = 1;
  for (int len : rho) {
    z *= len;
    mult[len]++;
  }
  for (auto& [len, m] : mult) z *= factorial(m);
  return factorial(k) / z;
}

std::string partition_str(const Partition& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace kfold
