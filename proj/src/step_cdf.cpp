#include "cva/step_cdf.hpp"

#include <algorithm>
#include <cmath>

namespace cva {

StepCdf StepCdf::from_distribution(const Distribution& d, double shift) {
    StepCdf s;
    s.mean_ = d.mean() + shift;
    std::vector<double> b = d.breakpoints();
    for (size_t j = 0; j + 1 < b.size(); ++j) {
        // CDF of s on [b_j, b_{j+1}) as a polynomial in s, re-expressed in
        // x = s + shift, i.e. evaluated at s = x - shift.
        s.seg_.push_back(d.cdf_poly_on(b[j], b[j + 1]).shifted(-shift));
    }
    for (double x : b) s.bp_.push_back(x + shift);
    if (s.bp_.empty()) {  // degenerate point mass at lo == hi
        s.bp_ = {d.lo() + shift};
    }
    return s;
}

double StepCdf::eval(double x) const {
    if (x < bp_.front()) return 0.0;
    if (x >= bp_.back()) return 1.0;
    size_t j = std::upper_bound(bp_.begin(), bp_.end(), x) - bp_.begin() - 1;
    return seg_[j](x);
}

double StepCdf::eval_left(double x) const {
    if (x <= bp_.front()) return 0.0;
    if (x > bp_.back()) return 1.0;
    size_t j = std::lower_bound(bp_.begin(), bp_.end(), x) - bp_.begin();
    if (j < bp_.size() && bp_[j] == x) {
        if (j == 0) return 0.0;
        return seg_[j - 1](x);  // continuous extension from below
    }
    return eval(x);
}

double StepCdf::integral(double x) const {
    if (x <= bp_.front()) return 0.0;
    double v = 0.0;
    for (size_t j = 0; j + 1 < bp_.size(); ++j) {
        if (x <= bp_[j]) break;
        double r = std::min(x, bp_[j + 1]);
        v += seg_[j].integral(bp_[j], r);
    }
    if (x > bp_.back()) v += x - bp_.back();
    return v;
}

Poly StepCdf::poly_on(double x0, double x1) const {
    double mid = 0.5 * (x0 + x1);
    if (mid < bp_.front()) return Poly();
    if (mid >= bp_.back()) return Poly::constant(1.0);
    size_t j = std::upper_bound(bp_.begin(), bp_.end(), mid) - bp_.begin() - 1;
    return seg_[j];
}

Poly StepCdf::emax_poly_on(double x0, double x1) const {
    // E[max(X, m)] = E[X] + \int_{-inf}^m C(x) dx.
    Poly A = poly_on(x0, x1).antiderivative();
    double at_x0 = mean_ + integral(x0);
    return A + Poly::constant(at_x0 - A(x0));
}

std::vector<double> merged_grid(const std::vector<StepCdf>& cdfs,
                                const std::vector<double>& extra) {
    std::vector<double> g(extra);
    for (const StepCdf& c : cdfs)
        for (double x : c.breakpoints()) g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace cva
