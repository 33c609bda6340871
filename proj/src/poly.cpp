#include "cva/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cva {

namespace {
constexpr double kTrimEps = 0.0;  // exact zeros only; callers manage scale
}

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(double c) { return Poly(std::vector<double>{c}); }

void Poly::trim() {
    while (!c_.empty() && std::abs(c_.back()) <= kTrimEps) c_.pop_back();
}

int Poly::degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

double Poly::operator()(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<double> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
    if (c_.empty()) return Poly();
    std::vector<double> a(c_.size() + 1, 0.0);
    for (size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Poly(std::move(a));
}

Poly Poly::shifted(double d) const {
    if (c_.empty() || d == 0.0) return *this;
    // Horner in coefficient space: out <- out * (x + d) + c_i, highest first.
    std::vector<double> out;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        std::vector<double> nxt(out.size() + 1, 0.0);
        for (size_t j = 0; j < out.size(); ++j) {
            nxt[j + 1] += out[j];
            nxt[j] += d * out[j];
        }
        nxt[0] += c_[i];
        out = std::move(nxt);
    }
    return Poly(std::move(out));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<double> r(c_);
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(double k) const {
    std::vector<double> r(c_);
    for (auto& v : r) v *= k;
    return Poly(std::move(r));
}

double Poly::integral(double a, double b) const {
    Poly A = antiderivative();
    return A(b) - A(a);
}

namespace {

// Bisection on an interval where p is guaranteed monotone.
bool bisect_root(const Poly& p, double a, double b, double tol, double& root) {
    double fa = p(a), fb = p(b);
    if (fa == 0.0) { root = a; return true; }
    if (fb == 0.0) { root = b; return true; }
    if ((fa > 0) == (fb > 0)) return false;
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        double m = 0.5 * (a + b);
        double fm = p(m);
        if (fm == 0.0) { root = m; return true; }
        if ((fm > 0) == (fa > 0)) { a = m; fa = fm; } else { b = m; fb = fm; }
    }
    root = 0.5 * (a + b);
    return true;
}

}  // namespace

std::vector<double> Poly::roots_in(double a, double b, double tol) const {
    std::vector<double> roots;
    if (a > b) return roots;
    int deg = degree();
    if (deg <= 0) return roots;  // constant (incl. zero poly): no isolated roots
    if (deg == 1) {
        double r = -c_[0] / c_[1];
        if (r >= a - tol && r <= b + tol) roots.push_back(std::clamp(r, a, b));
        return roots;
    }
    if (deg == 2) {
        double A = c_[2], B = c_[1], C = c_[0];
        double disc = B * B - 4 * A * C;
        if (disc >= 0) {
            double sq = std::sqrt(disc);
            // Numerically stable pair.
            double q = -0.5 * (B + (B >= 0 ? sq : -sq));
            double r1 = q / A;
            double r2 = (q != 0.0) ? C / q : r1;
            for (double r : {std::min(r1, r2), std::max(r1, r2)})
                if (r >= a - tol && r <= b + tol) roots.push_back(std::clamp(r, a, b));
        }
    } else {
        // Critical points split [a, b] into monotone segments.
        std::vector<double> crit = derivative().roots_in(a, b, tol);
        std::vector<double> pts{a};
        for (double cpt : crit)
            if (cpt > pts.back() + tol && cpt < b - tol) pts.push_back(cpt);
        pts.push_back(b);
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double r;
            if (bisect_root(*this, pts[i], pts[i + 1], tol, r)) roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [tol](double x, double y) { return std::abs(x - y) <= tol; }),
                roots.end());
    return roots;
}

}  // namespace cva
