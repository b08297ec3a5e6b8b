/*
 * Ultrametric geometry over the valued field: balls with rational radius,
 * coordinatewise products of balls, and affine membership constraints.
 *
 * Conventions.  A ball is written ball(a, g, kind):
 *     open   oball(a, g) = { x : v(x - a) >  g }
 *     closed cball(a, g) = { x : v(x - a) >= g }
 * Radii are finite rationals; single points are not balls here.  Two balls
 * always compare as equal, nested, or disjoint.  The dual of a ball swaps
 * radius sign and kind; for balls around 0 the dual coincides with the
 * annihilator { a : a * B <= maximal ideal }.
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "motfourier/valfield.hpp"

namespace motfourier {

enum class BallKind { Open, Closed };

inline BallKind flip(BallKind k) {
    return k == BallKind::Open ? BallKind::Closed : BallKind::Open;
}

enum class BallRelation { Equal, FirstInsideSecond, SecondInsideFirst, Disjoint };

class Ball {
public:
    // The stored center is the canonical one: terms the ball itself absorbs
    // are dropped, so set-equal balls compare equal.
    Ball(VfElem center, Rat radius, BallKind kind)
        : center_(center.truncated(radius, kind == BallKind::Open)),
          radius_(std::move(radius)),
          kind_(kind) {}

    static Ball open(VfElem center, Rat radius) {
        return Ball(std::move(center), std::move(radius), BallKind::Open);
    }
    static Ball closed(VfElem center, Rat radius) {
        return Ball(std::move(center), std::move(radius), BallKind::Closed);
    }
    // The valuation ring cball(0, 0) and its maximal ideal oball(0, 0).
    static Ball valuation_ring() { return closed(VfElem(), Rat(0)); }
    static Ball maximal_ideal() { return open(VfElem(), Rat(0)); }

    const VfElem& center() const { return center_; }
    const Rat& radius() const { return radius_; }
    BallKind kind() const { return kind_; }

    bool contains(const VfElem& x) const;
    // Membership of a point known only through its valuation distance.
    bool admits(const Gamma& dist) const {
        if (!dist.is_finite()) return true;
        return kind_ == BallKind::Open ? dist.value() > radius_ : dist.value() >= radius_;
    }

    Ball dual() const { return Ball(center_, -radius_, flip(kind_)); }
    // Annihilator of a ball around 0; CenterNotZeroError otherwise.
    Ball annihilator() const;

    Ball translated(const VfElem& shift) const { return Ball(center_ + shift, radius_, kind_); }
    // Image under x -> s * x for nonzero monomial s.
    Ball scaled(const VfElem& s) const;

    std::string to_string() const;

    friend bool operator==(const Ball& a, const Ball& b) {
        return a.kind_ == b.kind_ && a.radius_ == b.radius_ && a.center_ == b.center_;
    }
    friend bool operator<(const Ball& a, const Ball& b);

private:
    VfElem center_;
    Rat radius_;
    BallKind kind_;
};

// Fineness key: larger keys are smaller balls.  At the same radius the open
// ball sits strictly inside the closed one.
inline std::pair<Rat, int> fineness(const Ball& b) {
    return {b.radius(), b.kind() == BallKind::Open ? 1 : 0};
}
inline std::pair<Rat, int> fineness(const Rat& radius, BallKind kind) {
    return {radius, kind == BallKind::Open ? 1 : 0};
}

BallRelation ball_relation(const Ball& a, const Ball& b);

// Smallest ball containing both arguments.
Ball ball_join(const Ball& a, const Ball& b);

// Minkowski sum: a translate of the coarser of the two neighborhoods.
Ball ball_sum(const Ball& a, const Ball& b);

class Polyball {
public:
    Polyball() = default;
    explicit Polyball(std::vector<Ball> factors) : factors_(std::move(factors)) {}

    int arity() const { return static_cast<int>(factors_.size()); }
    const std::vector<Ball>& factors() const { return factors_; }
    const Ball& factor(int i) const { return factors_.at(i); }

    bool contains(const std::vector<VfElem>& point) const;
    Polyball dual() const;
    Polyball annihilator() const;

    std::string to_string() const;

    friend bool operator==(const Polyball& a, const Polyball& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<Ball> factors_;
};

/*
 * An affine expression  sum_i m_i * x_i + c  over a finite variable set.
 * Coefficients are field elements; operations that must divide by a
 * coefficient (solving for a variable) additionally require it to be a
 * monomial so the division is exact.
 */
class AffineForm {
public:
    AffineForm() = default;
    explicit AffineForm(VfElem constant) : constant_(std::move(constant)) {}

    static AffineForm variable(int idx) {
        AffineForm f;
        f.coeffs_[idx] = VfElem(1);
        return f;
    }

    const std::map<int, VfElem>& coeffs() const { return coeffs_; }
    const VfElem& constant() const { return constant_; }
    VfElem coeff(int idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? VfElem() : it->second;
    }
    bool depends_on(int idx) const { return coeffs_.count(idx) > 0; }
    bool is_constant() const { return coeffs_.empty(); }

    void set_coeff(int idx, VfElem c) {
        if (c.is_zero()) coeffs_.erase(idx);
        else coeffs_[idx] = std::move(c);
    }
    void set_constant(VfElem c) { constant_ = std::move(c); }

    VfElem eval(const std::vector<VfElem>& point) const;

    AffineForm operator-() const;
    friend AffineForm operator+(const AffineForm& a, const AffineForm& b);
    friend AffineForm operator-(const AffineForm& a, const AffineForm& b);
    AffineForm scaled(const VfElem& s) const;
    // Substitute each variable by an affine form over a new variable set.
    AffineForm substituted(const std::map<int, AffineForm>& images) const;
    // Shift every variable index >= from down by one (after eliminating one).
    AffineForm reindexed_down(int removed) const;

    friend bool operator==(const AffineForm& a, const AffineForm& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator<(const AffineForm& a, const AffineForm& b);

    std::string to_string() const;

private:
    std::map<int, VfElem> coeffs_;  // variable index -> nonzero coefficient
    VfElem constant_;
};

/*
 * Membership constraint: form(x) lies in the target ball.  A solved
 * constraint presents one variable's locus as a ball whose center moves
 * affinely with the remaining variables.
 */
struct Constraint {
    AffineForm form;
    Ball target;

    Constraint(AffineForm f, Ball b) : form(std::move(f)), target(std::move(b)) {}

    bool depends_on(int idx) const { return form.depends_on(idx); }
    bool holds_at(const std::vector<VfElem>& point) const {
        return target.contains(form.eval(point));
    }
    std::string to_string() const;

    friend bool operator==(const Constraint& a, const Constraint& b) {
        return a.form == b.form && a.target == b.target;
    }
    friend bool operator<(const Constraint& a, const Constraint& b) {
        if (!(a.form == b.form)) return a.form < b.form;
        return a.target < b.target;
    }
};

// Plain per-coordinate constraint x_idx in ball.
Constraint plain_constraint(int idx, Ball ball);

struct MovingBall {
    AffineForm center;
    Rat radius;
    BallKind kind;
};

// Rewrite a constraint as "x_idx in moving ball"; requires the coefficient
// of x_idx to be a nonzero monomial (NonMonomialError otherwise).
MovingBall solve_constraint_for(const Constraint& c, int idx);

}  // namespace motfourier
