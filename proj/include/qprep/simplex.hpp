#pragma once

#include <vector>

namespace qprep {

/// minimize c.x  subject to  A x <= b,  x >= 0.
struct LpProblem {
  std::vector<std::vector<double>> a;  // m rows of length n
  std::vector<double> b;               // length m
  std::vector<double> c;               // length n
};

enum class LpStatus { optimal, infeasible, unbounded, pivot_limit };

struct LpResult {
  LpStatus status = LpStatus::pivot_limit;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;  // total pivots across both phases
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule. Problem
/// sizes here are desk-scale, so exactness beats sparsity.
LpResult solve_lp(const LpProblem& problem, int max_pivots = 1000000);

}  // namespace qprep
