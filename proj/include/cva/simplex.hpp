#pragma once

#include <vector>

namespace cva::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

// maximize c.x  s.t.  A x {<=,==,>=} b,  lb <= x <= ub
struct Problem {
    int nvars = 0;
    std::vector<double> c;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<char> rel;  // 'L', 'E', 'G' per row
    std::vector<double> lb, ub;  // ub may be +infinity
};

struct Solution {
    Status status = Status::Infeasible;
    double value = 0.0;
    std::vector<double> x;
};

// Dense bounded-variable two-phase simplex.  Dantzig pricing with a Bland
// fallback after a degenerate streak, so small instances terminate.
Solution solve(const Problem& prob, double eps = 1e-9, int max_iter = 0);

}  // namespace cva::lp
