#pragma once

#include <motfourier/errors.hpp>
#include <motfourier/valfield.hpp>

#include <map>
#include <string>
#include <vector>

namespace motfourier {

/*
 * An exact multivariate polynomial with series coefficients, stored as a
 * finite map from exponent vectors to nonzero coefficients.
 */
class VfPoly {
public:
    explicit VfPoly(int nvars) : nvars_(nvars) {}

    static VfPoly constant(int nvars, const VfElem& c);
    static VfPoly variable(int nvars, int idx);

    int nvars() const { return nvars_; }
    const std::map<std::vector<long>, VfElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * prod x_i^{exps_i} into the polynomial (coalescing).
    void add_term(std::vector<long> exps, const VfElem& c);

    long degree(int var) const;  // -1 for the zero polynomial
    long order(int var) const;   // least exponent; ZeroPolynomial when zero

    VfElem eval(const std::vector<VfElem>& point) const;
    VfPoly partial(int var) const;

    VfPoly operator-() const;
    friend VfPoly operator+(const VfPoly& a, const VfPoly& b);
    friend VfPoly operator-(const VfPoly& a, const VfPoly& b);
    friend VfPoly operator*(const VfPoly& a, const VfPoly& b);
    VfPoly scaled(const VfElem& s) const;

    friend bool operator==(const VfPoly& a, const VfPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;  // variables rendered x1..xn

private:
    int nvars_;
    std::map<std::vector<long>, VfElem> terms_;
};

// g(f_1(x), ..., f_k(x)) for a k-variate g and images over a common
// variable set.
VfPoly compose(const VfPoly& g, const std::vector<VfPoly>& images);

// One lower-hull edge; it certifies `length` roots of valuation -slope in
// the algebraic closure.
struct PolygonSegment {
    Rat slope;
    long length = 0;
};

struct NewtonPolygon {
    std::vector<std::pair<long, Rat>> vertices;  // (degree, coefficient valuation)
    std::vector<PolygonSegment> segments;        // slopes strictly increasing
    long zero_roots = 0;                         // multiplicity of the root 0

    std::string to_string() const;
};

// Lower convex hull of {(j, val(coeff_j))} for a univariate polynomial.
NewtonPolygon newton_polygon(const VfPoly& p);

/*
 * Limit classification of the root family {y : g(x, y) = 0} as x -> 0 for a
 * binary polynomial (x = variable 0, y = variable 1).  Either some branch
 * escapes (root valuations unbounded below) or every branch accumulates on
 * the reported finite candidate list: the roots of the specialized
 * polynomial at x = 0, a superset of the minimal limit set.  CannotSplit
 * when that specialization has an irreducible factor of degree >= 2 over
 * the constant field.
 */
struct LimitResult {
    bool escape = false;
    std::vector<GaussQ> limits;  // sorted, deduplicated candidates

    std::string to_string() const;
};

LimitResult limit_set(const VfPoly& g);

using VfMatrix = std::vector<std::vector<VfElem>>;

// Formal partial derivatives of a polynomial map, evaluated at a point:
// rows index components, columns index variables.
VfMatrix derivative(const std::vector<VfPoly>& map, const std::vector<VfElem>& point);

// Determinant of the derivative for a square map; NonSquare otherwise.
VfElem jacobian(const std::vector<VfPoly>& map, const std::vector<VfElem>& point);

}  // namespace motfourier
