#pragma once
#include <stdexcept>
#include <string>

namespace kfold {

struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_positive_definite_error : std::runtime_error {
  double min_eigenvalue;
  explicit not_positive_definite_error(double mineig)
      : std::runtime_error("form is not positive definite (min eigenvalue " +
                           std::to_string(mineig) + ")"),
        min_eigenvalue(mineig) {}
};

struct numerical_degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kfold
