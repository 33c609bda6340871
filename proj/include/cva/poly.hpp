#pragma once

#include <vector>

namespace cva {

// Dense polynomial with ascending coefficients: c[0] + c[1]*x + ...
// Degree stays small in practice (densities are cubic at most), but the
// arithmetic below works for any degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);
    static Poly constant(double c);

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const;
    bool is_zero() const { return c_.empty(); }

    double operator()(double x) const;

    Poly derivative() const;
    // Antiderivative with zero constant term.
    Poly antiderivative() const;
    // Coefficients of p(x + d).
    Poly shifted(double d) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(double k) const;
    Poly operator-() const;

    // Definite integral over [a, b].
    double integral(double a, double b) const;

    // All real roots in [a, b], ascending, deduplicated.  Closed forms for
    // degree <= 2, derivative recursion + bisection above that.
    std::vector<double> roots_in(double a, double b, double tol = 1e-12) const;

private:
    std::vector<double> c_;
    void trim();
};

}  // namespace cva
