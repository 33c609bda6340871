#include "cva/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cva::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarStat : unsigned char { Lower, Upper, Basic };

struct Tableau {
    int m = 0, n = 0;  // rows, total columns
    std::vector<std::vector<double>> T;  // B^{-1} A, m x n
    std::vector<double> xB;              // basic variable values
    std::vector<int> basis;              // column index per row
    std::vector<VarStat> stat;           // per column
    std::vector<double> lb, ub;
    std::vector<double> obj;             // reduced-cost row for current phase
    double eps;

    double nb_value(int j) const { return stat[j] == VarStat::Upper ? ub[j] : lb[j]; }

    void recompute_obj(const std::vector<double>& c) {
        obj = c;
        for (int i = 0; i < m; ++i) {
            double cb = c[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < n; ++j) obj[j] -= cb * T[i][j];
        }
    }

    // Returns Status::Optimal when no eligible entering column remains.
    Status iterate(int max_iter) {
        int degen_streak = 0;
        for (int it = 0; it < max_iter; ++it) {
            bool bland = degen_streak > 60;
            int enter = -1;
            double best = eps;
            for (int j = 0; j < n; ++j) {
                if (stat[j] == VarStat::Basic) continue;
                if (lb[j] == ub[j]) continue;  // fixed
                double d = obj[j];
                bool eligible = (stat[j] == VarStat::Lower && d > eps) ||
                                (stat[j] == VarStat::Upper && d < -eps);
                if (!eligible) continue;
                if (bland) { enter = j; break; }
                if (std::abs(d) > best) {
                    best = std::abs(d);
                    enter = j;
                }
            }
            if (enter < 0) return Status::Optimal;

            double dir = stat[enter] == VarStat::Lower ? 1.0 : -1.0;
            double t = ub[enter] - lb[enter];  // bound-flip distance, may be inf
            int leave = -1;
            bool leave_to_lower = true;
            for (int i = 0; i < m; ++i) {
                double coeff = dir * T[i][enter];
                double lim;
                bool to_lower;
                if (coeff > 1e-10) {
                    if (lb[basis[i]] == -kInf) continue;
                    lim = (xB[i] - lb[basis[i]]) / coeff;
                    to_lower = true;
                } else if (coeff < -1e-10) {
                    if (ub[basis[i]] == kInf) continue;
                    lim = (xB[i] - ub[basis[i]]) / coeff;
                    to_lower = false;
                } else {
                    continue;
                }
                if (lim < 0.0) lim = 0.0;
                bool better = lim < t - 1e-12;
                bool tie_pref = bland && leave >= 0 && lim < t + 1e-12 &&
                                basis[i] < basis[leave];
                if (better || tie_pref) {
                    t = std::min(t, lim);
                    leave = i;
                    leave_to_lower = to_lower;
                }
            }
            if (t == kInf) return Status::Unbounded;
            if (t <= 1e-12) degen_streak++; else degen_streak = 0;

            if (leave < 0) {
                // Bound flip of the entering variable.
                for (int i = 0; i < m; ++i) xB[i] -= dir * T[i][enter] * t;
                stat[enter] = stat[enter] == VarStat::Lower ? VarStat::Upper : VarStat::Lower;
                continue;
            }

            // Move basic values before transforming the tableau.
            double enter_val = nb_value(enter) + dir * t;
            for (int i = 0; i < m; ++i) xB[i] -= dir * T[i][enter] * t;

            double piv = T[leave][enter];
            std::vector<double>& prow = T[leave];
            double inv = 1.0 / piv;
            for (int j = 0; j < n; ++j) prow[j] *= inv;
            for (int i = 0; i < m; ++i) {
                if (i == leave) continue;
                double f = T[i][enter];
                if (f == 0.0) continue;
                std::vector<double>& row = T[i];
                for (int j = 0; j < n; ++j) row[j] -= f * prow[j];
            }
            double fo = obj[enter];
            if (fo != 0.0)
                for (int j = 0; j < n; ++j) obj[j] -= fo * prow[j];

            int leaving_var = basis[leave];
            stat[leaving_var] = leave_to_lower ? VarStat::Lower : VarStat::Upper;
            basis[leave] = enter;
            stat[enter] = VarStat::Basic;
            xB[leave] = enter_val;
        }
        return Status::IterationLimit;
    }
};

}  // namespace

Solution solve(const Problem& prob, double eps, int max_iter) {
    int n0 = prob.nvars;
    int m = static_cast<int>(prob.A.size());
    // Columns: structural | slacks (for L/G rows) | artificials (as needed).
    std::vector<int> slack_col(m, -1);
    int n = n0;
    for (int i = 0; i < m; ++i)
        if (prob.rel[i] != 'E') slack_col[i] = n++;
    int first_art = n;

    Tableau tb;
    tb.eps = eps;
    tb.m = m;
    tb.lb = prob.lb;
    tb.ub = prob.ub;
    tb.lb.resize(n, 0.0);
    tb.ub.resize(n, kInf);
    tb.stat.assign(n, VarStat::Lower);

    // Nonbasic start: structural variables at a finite bound.
    std::vector<double> x0(n, 0.0);
    for (int j = 0; j < n0; ++j) {
        if (tb.lb[j] > -kInf)
            x0[j] = tb.lb[j];
        else if (tb.ub[j] < kInf) {
            x0[j] = tb.ub[j];
            tb.stat[j] = VarStat::Upper;
        }
    }

    std::vector<std::vector<double>> rows(m, std::vector<double>(n, 0.0));
    std::vector<double> resid(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n0; ++j) rows[i][j] = prob.A[i][j];
        if (slack_col[i] >= 0) rows[i][slack_col[i]] = (prob.rel[i] == 'L') ? 1.0 : -1.0;
        double ax = 0.0;
        for (int j = 0; j < n0; ++j) ax += prob.A[i][j] * x0[j];
        resid[i] = prob.b[i] - ax;
    }

    // Basis: slack where it absorbs the residual within its bounds, else an
    // artificial column signed to keep the basic value nonnegative.
    std::vector<int> art_col(m, -1);
    tb.basis.assign(m, -1);
    tb.xB.assign(m, 0.0);
    int n_art = 0;
    for (int i = 0; i < m; ++i) {
        bool slack_ok = false;
        if (slack_col[i] >= 0) {
            double sv = (prob.rel[i] == 'L') ? resid[i] : -resid[i];
            if (sv >= 0.0) slack_ok = true;
        }
        if (slack_ok) {
            tb.basis[i] = slack_col[i];
            tb.xB[i] = (prob.rel[i] == 'L') ? resid[i] : -resid[i];
        } else {
            art_col[i] = first_art + n_art++;
        }
    }
    int ntot = first_art + n_art;
    tb.n = ntot;
    tb.lb.resize(ntot, 0.0);
    tb.ub.resize(ntot, kInf);
    tb.stat.resize(ntot, VarStat::Lower);
    for (int i = 0; i < m; ++i) {
        rows[i].resize(ntot, 0.0);
        if (art_col[i] >= 0) {
            double sign = resid[i] >= 0.0 ? 1.0 : -1.0;
            rows[i][art_col[i]] = sign;
            tb.basis[i] = art_col[i];
            tb.xB[i] = std::abs(resid[i]);
        }
    }
    tb.T = std::move(rows);
    // Rows with a slack basis column of -1 coefficient ('G') need scaling so
    // the basic column is +1.
    for (int i = 0; i < m; ++i) {
        double d = tb.T[i][tb.basis[i]];
        if (d != 1.0)
            for (int j = 0; j < ntot; ++j) tb.T[i][j] /= d;
    }

    if (max_iter <= 0) max_iter = 200 * (m + ntot) + 2000;

    auto value_of = [&](const std::vector<double>& c) {
        // Current point: nonbasic at bounds, basic from xB.
        double v = 0.0;
        std::vector<double> x(ntot, 0.0);
        for (int j = 0; j < ntot; ++j)
            if (tb.stat[j] != VarStat::Basic) x[j] = tb.nb_value(j);
        for (int i = 0; i < m; ++i) x[tb.basis[i]] = tb.xB[i];
        for (int j = 0; j < static_cast<int>(c.size()); ++j) v += c[j] * x[j];
        return v;
    };

    if (n_art > 0) {
        std::vector<double> c1(ntot, 0.0);
        for (int i = 0; i < m; ++i)
            if (art_col[i] >= 0) c1[art_col[i]] = -1.0;
        tb.recompute_obj(c1);
        Status st = tb.iterate(max_iter);
        if (st == Status::IterationLimit) return {Status::IterationLimit, 0.0, {}};
        if (value_of(c1) < -1e-7) return {Status::Infeasible, 0.0, {}};
        // Pin artificials at zero for phase 2.
        for (int i = 0; i < m; ++i)
            if (art_col[i] >= 0) tb.ub[art_col[i]] = 0.0;
    }

    std::vector<double> c2(ntot, 0.0);
    for (int j = 0; j < n0; ++j) c2[j] = prob.c[j];
    tb.recompute_obj(c2);
    Status st = tb.iterate(max_iter);
    if (st == Status::Unbounded) return {Status::Unbounded, 0.0, {}};
    if (st == Status::IterationLimit) return {Status::IterationLimit, value_of(c2), {}};

    Solution sol;
    sol.status = Status::Optimal;
    sol.x.assign(n0, 0.0);
    std::vector<double> x(ntot, 0.0);
    for (int j = 0; j < ntot; ++j)
        if (tb.stat[j] != VarStat::Basic) x[j] = tb.nb_value(j);
    for (int i = 0; i < m; ++i) x[tb.basis[i]] = tb.xB[i];
    for (int j = 0; j < n0; ++j) sol.x[j] = x[j];
    sol.value = value_of(c2);
    return sol;
}

}  // namespace cva::lp
