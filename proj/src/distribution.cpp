#include "cva/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cva {

namespace {
constexpr double kMassTol = 1e-12;
}

double DiscreteInstance::mean() const {
    double m = 0.0;
    for (size_t i = 0; i < points.size(); ++i) m += points[i] * masses[i];
    return m;
}

Distribution::Distribution(double lo, double hi, std::vector<Atom> atoms,
                           std::vector<Piece> pieces)
    : lo_(lo), hi_(hi), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
    // Split pieces at interior atom locations so atoms never sit strictly
    // inside a piece; simplifies CDF-segment and sampling logic.
    std::vector<Piece> split;
    for (const Piece& p : pieces_) {
        double start = p.a;
        for (const Atom& at : atoms_) {
            if (at.loc > start && at.loc < p.b) {
                split.push_back({start, at.loc, p.density});
                start = at.loc;
            }
        }
        split.push_back({start, p.b, p.density});
    }
    pieces_ = std::move(split);
    validate();
}

void Distribution::validate() const {
    if (!(lo_ <= hi_)) throw std::invalid_argument("distribution: lo > hi");
    if (lo_ == hi_) {
        if (!pieces_.empty() || atoms_.size() != 1 || atoms_[0].loc != lo_)
            throw std::invalid_argument("distribution: degenerate support requires a single atom");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const Atom& a : atoms_) {
        if (!(a.mass > 0.0 && a.mass <= 1.0 + kMassTol))
            throw std::invalid_argument("distribution: atom mass outside (0,1]");
        if (a.loc < lo_ || a.loc > hi_)
            throw std::invalid_argument("distribution: atom outside support");
        if (!(a.loc > prev))
            throw std::invalid_argument("distribution: atom locations not strictly increasing");
        prev = a.loc;
    }
    prev = -std::numeric_limits<double>::infinity();
    for (const Piece& p : pieces_) {
        if (!(p.a < p.b)) throw std::invalid_argument("distribution: empty piece interval");
        if (p.a < lo_ || p.b > hi_)
            throw std::invalid_argument("distribution: piece outside support");
        if (p.a < prev)
            throw std::invalid_argument("distribution: pieces overlap or out of order");
        prev = p.b;
        if (p.density.degree() > 3)
            throw std::invalid_argument("distribution: density degree above 3");
        // Nonnegativity at endpoints and interior critical points.
        std::vector<double> pts{p.a, p.b};
        for (double r : p.density.derivative().roots_in(p.a, p.b)) pts.push_back(r);
        for (double x : pts)
            if (p.density(x) < -1e-12)
                throw std::invalid_argument("distribution: negative density");
    }
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.mass;
    for (const Piece& p : pieces_) total += p.density.integral(p.a, p.b);
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: total mass != 1");
}

Distribution Distribution::uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("uniform: a >= b");
    return Distribution(a, b, {}, {Piece{a, b, Poly::constant(1.0 / (b - a))}});
}

Distribution Distribution::point_mass(double x) {
    return Distribution(x, x, {Atom{x, 1.0}}, {});
}

double Distribution::mean() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.loc * a.mass;
    for (const Piece& p : pieces_) {
        Poly s_times_d = p.density * Poly({0.0, 1.0});
        m += s_times_d.integral(p.a, p.b);
    }
    return m;
}

double Distribution::cdf(double x) const {
    if (x < lo_) return 0.0;
    if (x >= hi_) return 1.0;
    double v = 0.0;
    for (const Atom& a : atoms_)
        if (a.loc <= x) v += a.mass;
    for (const Piece& p : pieces_) {
        if (x <= p.a) break;
        v += p.density.integral(p.a, std::min(x, p.b));
    }
    return v;
}

double Distribution::cdf_left(double x) const {
    if (x <= lo_) return 0.0;
    if (x > hi_) return 1.0;
    double v = 0.0;
    for (const Atom& a : atoms_)
        if (a.loc < x) v += a.mass;
    for (const Piece& p : pieces_) {
        if (x <= p.a) break;
        v += p.density.integral(p.a, std::min(x, p.b));
    }
    return v;
}

double Distribution::integral_cdf(double x) const {
    if (x <= lo_) return 0.0;
    double xe = std::min(x, hi_);
    double v = 0.0;
    for (const Atom& a : atoms_)
        if (a.loc < xe) v += a.mass * (xe - a.loc);
    for (const Piece& p : pieces_) {
        if (xe <= p.a) break;
        Poly D = p.density.antiderivative();
        Poly DD = D.antiderivative();
        double end = std::min(xe, p.b);
        v += (DD(end) - DD(p.a)) - D(p.a) * (end - p.a);
        if (xe > p.b) v += (D(p.b) - D(p.a)) * (xe - p.b);
    }
    if (x > hi_) v += x - hi_;
    return v;
}

double Distribution::mass_on(double a, double b) const {
    if (a > b) return 0.0;
    double v = 0.0;
    for (const Atom& at : atoms_)
        if (at.loc >= a && at.loc <= b) v += at.mass;
    for (const Piece& p : pieces_) {
        double l = std::max(a, p.a), r = std::min(b, p.b);
        if (l < r) v += p.density.integral(l, r);
    }
    return v;
}

double Distribution::moment_on(double a, double b) const {
    if (a > b) return 0.0;
    double v = 0.0;
    for (const Atom& at : atoms_)
        if (at.loc >= a && at.loc <= b) v += at.loc * at.mass;
    for (const Piece& p : pieces_) {
        double l = std::max(a, p.a), r = std::min(b, p.b);
        if (l < r) v += (p.density * Poly({0.0, 1.0})).integral(l, r);
    }
    return v;
}

double Distribution::conditional_mean(double a, double b) const {
    double m = mass_on(a, b);
    if (m <= kMassTol) throw std::invalid_argument("conditional_mean: zero mass on interval");
    return moment_on(a, b) / m;
}

double Distribution::min_support() const {
    double v = hi_;
    if (!atoms_.empty()) v = std::min(v, atoms_.front().loc);
    if (!pieces_.empty()) v = std::min(v, pieces_.front().a);
    return v;
}

double Distribution::atom_mass_at(double x, double tol) const {
    double m = 0.0;
    for (const Atom& a : atoms_)
        if (std::abs(a.loc - x) <= tol) m += a.mass;
    return m;
}

std::vector<double> Distribution::breakpoints() const {
    std::vector<double> b{lo_, hi_};
    for (const Atom& a : atoms_) b.push_back(a.loc);
    for (const Piece& p : pieces_) {
        b.push_back(p.a);
        b.push_back(p.b);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

Poly Distribution::cdf_poly_on(double x0, double x1) const {
    double mid = 0.5 * (x0 + x1);
    for (const Piece& p : pieces_) {
        if (p.a <= mid && mid <= p.b && x0 >= p.a - 1e-15 && x1 <= p.b + 1e-15) {
            Poly D = p.density.antiderivative();
            return D + Poly::constant(cdf(x0) - D(x0));
        }
    }
    return Poly::constant(cdf(x0));
}

double Distribution::sample(std::mt19937_64& rng) const {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double cum = 0.0;
    size_t ia = 0, ip = 0;
    while (ia < atoms_.size() || ip < pieces_.size()) {
        bool take_atom;
        if (ia >= atoms_.size())
            take_atom = false;
        else if (ip >= pieces_.size())
            take_atom = true;
        else
            take_atom = atoms_[ia].loc <= pieces_[ip].a;
        if (take_atom) {
            cum += atoms_[ia].mass;
            if (u < cum) return atoms_[ia].loc;
            ++ia;
        } else {
            const Piece& p = pieces_[ip];
            Poly D = p.density.antiderivative();
            double pm = D(p.b) - D(p.a);
            if (u < cum + pm) {
                double target = u - cum;
                double l = p.a, r = p.b;
                for (int it = 0; it < 200 && r - l > 1e-15; ++it) {
                    double m = 0.5 * (l + r);
                    if (D(m) - D(p.a) < target)
                        l = m;
                    else
                        r = m;
                }
                return 0.5 * (l + r);
            }
            cum += pm;
            ++ip;
        }
    }
    return hi_;
}

bool is_mpc(const Distribution& g, const Distribution& f, double tol) {
    std::vector<double> bp = g.breakpoints();
    for (double x : f.breakpoints()) bp.push_back(x);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    auto H = [&](double x) { return g.integral_cdf(x) - f.integral_cdf(x); };

    for (double x : bp)
        if (H(x) > tol) return false;
    // Interior maxima of H sit at roots of G - F within each merged interval.
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        Poly diff = g.cdf_poly_on(bp[i], bp[i + 1]) - f.cdf_poly_on(bp[i], bp[i + 1]);
        for (double r : diff.roots_in(bp[i], bp[i + 1]))
            if (H(r) > tol) return false;
    }
    double end = std::max(g.hi(), f.hi());
    return std::abs(H(end)) <= tol;
}

Distribution pool_interval(const Distribution& f, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("pool_interval: empty interval");
    double cont_mass = 0.0, cont_mom = 0.0;
    for (const Piece& p : f.pieces()) {
        double l = std::max(a, p.a), r = std::min(b, p.b);
        if (l < r) {
            cont_mass += p.density.integral(l, r);
            cont_mom += (p.density * Poly({0.0, 1.0})).integral(l, r);
        }
    }
    double m = cont_mass, mom = cont_mom;
    for (const Atom& at : f.atoms())
        if (at.loc > a && at.loc < b) {
            m += at.mass;
            mom += at.loc * at.mass;
        }
    if (m <= 1e-12) throw std::invalid_argument("pool_interval: zero mass on interval");
    double loc = mom / m;

    std::vector<Piece> pieces;
    for (const Piece& p : f.pieces()) {
        if (p.b > a && p.a < b) {
            if (p.a < a) pieces.push_back({p.a, a, p.density});
            if (p.b > b) pieces.push_back({b, p.b, p.density});
        } else {
            pieces.push_back(p);
        }
    }
    std::vector<Atom> atoms;
    for (const Atom& at : f.atoms())
        if (at.loc <= a || at.loc >= b) atoms.push_back(at);
    bool merged = false;
    for (Atom& at : atoms)
        if (at.loc == loc) {
            at.mass += m;
            merged = true;
        }
    if (!merged) atoms.push_back({loc, m});
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.loc < y.loc; });
    return Distribution(f.lo(), f.hi(), std::move(atoms), std::move(pieces));
}

DiscreteInstance discretize(const Distribution& d, int n) {
    if (n < 2) throw std::invalid_argument("discretize: n < 2");
    std::map<double, double> pts;
    for (const Atom& a : d.atoms()) pts[a.loc] += a.mass;
    if (d.lo() < d.hi()) {
        double w = (d.hi() - d.lo()) / n;
        for (int k = 0; k < n; ++k) {
            double l = d.lo() + k * w;
            double r = (k == n - 1) ? d.hi() : d.lo() + (k + 1) * w;
            double cm = 0.0, cmom = 0.0;
            for (const Piece& p : d.pieces()) {
                double pl = std::max(l, p.a), pr = std::min(r, p.b);
                if (pl < pr) {
                    cm += p.density.integral(pl, pr);
                    cmom += (p.density * Poly({0.0, 1.0})).integral(pl, pr);
                }
            }
            if (cm > 1e-15) pts[cmom / cm] += cm;
        }
    }
    DiscreteInstance inst;
    for (auto& [x, m] : pts)
        if (m > 0.0) {
            inst.points.push_back(x);
            inst.masses.push_back(m);
        }
    return inst;
}

}  // namespace cva
