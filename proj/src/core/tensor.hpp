// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace curv {

// Dense rank-3 / rank-4 arrays over a single small dimension n (n <= 8 in
// practice); plain storage, no algebra beyond indexing.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), v_(size_t(n) * n * n, 0.0) {}
  double& operator()(int a, int b, int c) { return v_[(size_t(a) * n_ + b) * n_ + c]; }
  double operator()(int a, int b, int c) const { return v_[(size_t(a) * n_ + b) * n_ + c]; }
  int dim() const { return n_; }

 private:
  int n_{0};
  std::vector<double> v_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), v_(size_t(n) * n * n * n, 0.0) {}
  double& operator()(int a, int b, int c, int d) {
    return v_[((size_t(a) * n_ + b) * n_ + c) * n_ + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return v_[((size_t(a) * n_ + b) * n_ + c) * n_ + d];
  }
  int dim() const { return n_; }
  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  int n_{0};
  std::vector<double> v_;
};

}  // namespace curv
