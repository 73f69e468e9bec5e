#pragma once

#include <vector>

namespace mbanach {

// maximize cᵀx subject to a_jᵀx ≤ b_j over a growing pool of cuts, with
// the box |x_i| ≤ bound_i always present.  Solved as the dual
// min bᵀy, Aᵀy = c, y ≥ 0 by a revised simplex whose basis has one column
// per variable; pricing a cut is checking whether it is violated, so cuts
// added between solves are picked up from the previous optimal basis.
class CutLP {
 public:
  CutLP(std::vector<double> objective, const std::vector<double>& box);

  int variables() const noexcept { return n_; }
  std::size_t cuts() const noexcept { return rows_.size(); }

  void add_cut(std::vector<double> a, double b);

  struct Solution {
    std::vector<double> x;
    double value = 0.0;
    int pivots = 0;
  };

  Solution solve(int max_pivots = 100000);

 private:
  int n_;
  std::vector<double> c_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<double> row_norm_;
  std::vector<int> basis_;
};

}  // namespace mbanach
