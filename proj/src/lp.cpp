#include "mbanach/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mbanach/errors.hpp"

namespace mbanach {
namespace {

constexpr double kPivotTol = 1e-11;
// Pivots without objective progress before switching to Bland's rule.
constexpr int kStallLimit = 50;

}  // namespace

CutLP::CutLP(std::vector<double> objective, const std::vector<double>& box)
    : n_(static_cast<int>(objective.size())), c_(std::move(objective)) {
  if (n_ == 0) throw InputError("LP needs at least one variable");
  if (static_cast<int>(box.size()) != n_) throw InputError("LP box has the wrong length");
  for (int i = 0; i < n_; ++i) {
    if (!(box[static_cast<std::size_t>(i)] >= 0.0)) throw InputError("LP box must be nonnegative");
    std::vector<double> up(static_cast<std::size_t>(n_), 0.0);
    std::vector<double> down(static_cast<std::size_t>(n_), 0.0);
    up[static_cast<std::size_t>(i)] = 1.0;
    down[static_cast<std::size_t>(i)] = -1.0;
    add_cut(std::move(up), box[static_cast<std::size_t>(i)]);
    add_cut(std::move(down), box[static_cast<std::size_t>(i)]);
  }
  // y = |c_i| on the matching box row is dual feasible.
  for (int i = 0; i < n_; ++i) basis_.push_back(2 * i + (c_[static_cast<std::size_t>(i)] >= 0.0 ? 0 : 1));
}

void CutLP::add_cut(std::vector<double> a, double b) {
  if (static_cast<int>(a.size()) != n_) throw InputError("cut has the wrong length");
  double norm = 0.0;
  for (double v : a) norm += v * v;
  row_norm_.push_back(std::max(std::sqrt(norm), 1e-300));
  rows_.push_back(std::move(a));
  rhs_.push_back(b);
}

CutLP::Solution CutLP::solve(int max_pivots) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const Eigen::Map<const VectorXd> c(c_.data(), n_);
  std::vector<bool> in_basis(rows_.size(), false);
  for (int j : basis_) in_basis[static_cast<std::size_t>(j)] = true;

  Solution sol;
  double last_obj = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int pivot = 0;; ++pivot) {
    MatrixXd basis(n_, n_);
    VectorXd rhs(n_);
    for (int i = 0; i < n_; ++i) {
      const auto& row = rows_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      for (int k = 0; k < n_; ++k) basis(k, i) = row[static_cast<std::size_t>(k)];
      rhs(i) = rhs_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
    }
    const Eigen::PartialPivLU<MatrixXd> lu(basis);
    const VectorXd y = lu.solve(c);
    const VectorXd x = lu.transpose().solve(rhs);
    const double obj = rhs.dot(y);
    if (obj < last_obj - 1e-15 * std::max(1.0, std::abs(obj))) {
      stall = 0;
      last_obj = obj;
    } else {
      ++stall;
    }
    const bool bland = stall > kStallLimit;

    // Entering cut: the most violated one (scaled by its row norm), or the
    // first violated one under Bland's rule.
    int enter = -1;
    double worst = 0.0;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      if (in_basis[j]) continue;
      const auto& row = rows_[j];
      double ax = 0.0;
      for (int k = 0; k < n_; ++k) ax += row[static_cast<std::size_t>(k)] * x(k);
      const double slack = rhs_[j] - ax;
      if (slack >= -1e-12 * std::max(1.0, std::abs(rhs_[j]))) continue;
      const double score = slack / row_norm_[j];
      if (bland) {
        enter = static_cast<int>(j);
        break;
      }
      if (score < worst) {
        worst = score;
        enter = static_cast<int>(j);
      }
    }
    if (enter < 0 || pivot >= max_pivots) {
      sol.x.assign(x.data(), x.data() + n_);
      sol.value = c.dot(x);
      sol.pivots = pivot;
      return sol;
    }

    const Eigen::Map<const VectorXd> a(rows_[static_cast<std::size_t>(enter)].data(), n_);
    const VectorXd d = lu.solve(a);
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) {
      if (d(i) <= kPivotTol) continue;
      const double t = std::max(0.0, y(i)) / d(i);
      if (t < best - 1e-15 || (t <= best + 1e-15 && leave >= 0 &&
                               basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
        best = std::min(best, t);
        leave = i;
      }
    }
    if (leave < 0) throw std::logic_error("cutting-plane LP: dual unbounded (primal infeasible)");
    in_basis[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)])] = false;
    basis_[static_cast<std::size_t>(leave)] = enter;
    in_basis[static_cast<std::size_t>(enter)] = true;
  }
}

}  // namespace mbanach
