#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cva/poly.hpp"

namespace cva {

struct Atom {
    double loc;
    double mass;
};

// Continuous piece: density on [a, b], degree <= 3.
struct Piece {
    double a;
    double b;
    Poly density;
};

struct DiscreteInstance {
    std::vector<double> points;  // strictly increasing
    std::vector<double> masses;  // nonnegative, sum to 1
    double mean() const;
};

// Mixed distribution on a bounded interval: atoms plus a piecewise-polynomial
// continuous part.  Immutable; the constructor validates and throws
// std::invalid_argument on any violation.  Atoms interior to a piece are
// normalized away by splitting the piece, so after construction atoms only sit
// at piece endpoints or outside pieces.
class Distribution {
public:
    Distribution(double lo, double hi, std::vector<Atom> atoms, std::vector<Piece> pieces);

    static Distribution uniform(double a, double b);
    static Distribution point_mass(double x);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    double mean() const;
    double cdf(double x) const;       // right-continuous
    double cdf_left(double x) const;  // excludes an atom at x

    // \int_{lo}^{x} cdf(s) ds, extended with slope 1 above hi and 0 below lo.
    double integral_cdf(double x) const;

    // Mass / first moment on [a, b], atoms at both endpoints included.
    double mass_on(double a, double b) const;
    double moment_on(double a, double b) const;
    // E[s | s in [a, b]]; throws if the interval carries no mass.
    double conditional_mean(double a, double b) const;

    double min_support() const;
    // Sums atom masses within tol of x; pooled atoms land a few ulps off
    // their analytic locations.
    double atom_mass_at(double x, double tol = 1e-9) const;

    // Support boundaries, atom locations and piece endpoints, ascending.
    std::vector<double> breakpoints() const;
    // CDF as a polynomial on [x0, x1); requires no breakpoint inside (x0, x1).
    Poly cdf_poly_on(double x0, double x1) const;

    // Inverse-CDF sample; the caller owns the generator stream.
    double sample(std::mt19937_64& rng) const;

private:
    double lo_, hi_;
    std::vector<Atom> atoms_;
    std::vector<Piece> pieces_;
    void validate() const;
};

// Integrated-CDF dominance test for mean-preserving contraction:
// \int G <= \int F everywhere plus equal total integral (equal means).
bool is_mpc(const Distribution& g, const Distribution& f, double tol = 1e-9);

// Replace the mass of F on the open interval (a, b) by a single atom at its
// conditional mean.  Throws if (a, b) carries no mass.
Distribution pool_interval(const Distribution& f, double a, double b);

// n equal-width cells, cell mass at the cell's conditional mean; atoms kept as
// their own points.  Empty cells are dropped.
DiscreteInstance discretize(const Distribution& d, int n);

}  // namespace cva
