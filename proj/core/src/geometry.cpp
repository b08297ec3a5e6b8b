#include "motfourier/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "motfourier/errors.hpp"

namespace motfourier {

bool Ball::contains(const VfElem& x) const { return admits((x - center_).val()); }

Ball Ball::annihilator() const {
    if (!center_.is_zero())
        throw CenterNotZeroError("annihilator requires a ball around 0, got " + to_string());
    // a * oball(0,g) lies in the maximal ideal iff v(a) >= -g; for the closed
    // ball the condition is strict.  Either way the result is the dual ball.
    return dual();
}

Ball Ball::scaled(const VfElem& s) const {
    if (s.is_zero()) throw DivisionByZeroError("scaling a ball by zero");
    if (!s.is_monomial())
        throw NonMonomialError("scaling a ball requires a monomial factor, got " + s.to_string());
    return Ball(s * center_, radius_ + s.val().value(), kind_);
}

bool operator<(const Ball& a, const Ball& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    int c = cmp_rat(a.radius_, b.radius_);
    if (c != 0) return c < 0;
    return a.center_ < b.center_;
}

std::string Ball::to_string() const {
    std::ostringstream out;
    out << (kind_ == BallKind::Open ? "oball(" : "cball(") << center_.to_string() << ", "
        << radius_.get_str() << ")";
    return out.str();
}

BallRelation ball_relation(const Ball& a, const Ball& b) {
    auto fa = fineness(a), fb = fineness(b);
    // Compare the finer ball's center against the coarser ball.
    if (fa == fb) {
        return b.contains(a.center()) ? BallRelation::Equal : BallRelation::Disjoint;
    }
    if (fa > fb) {  // a is the smaller ball
        return b.contains(a.center()) ? BallRelation::FirstInsideSecond : BallRelation::Disjoint;
    }
    return a.contains(b.center()) ? BallRelation::SecondInsideFirst : BallRelation::Disjoint;
}

Ball ball_join(const Ball& a, const Ball& b) {
    switch (ball_relation(a, b)) {
        case BallRelation::Equal:
        case BallRelation::FirstInsideSecond:
            return b;
        case BallRelation::SecondInsideFirst:
            return a;
        case BallRelation::Disjoint:
            break;
    }
    // Disjoint: the join is the closed ball around either center whose radius
    // is the valuation distance between the centers.
    Gamma d = (a.center() - b.center()).val();
    return Ball::closed(a.center(), d.value());
}

Ball ball_sum(const Ball& a, const Ball& b) {
    // {x + y : x in a, y in b} = (a.center + b.center) + coarser neighborhood.
    VfElem center = a.center() + b.center();
    if (fineness(a) <= fineness(b)) return Ball(std::move(center), a.radius(), a.kind());
    return Ball(std::move(center), b.radius(), b.kind());
}

bool Polyball::contains(const std::vector<VfElem>& point) const {
    if (static_cast<int>(point.size()) != arity())
        throw EngineError("point arity mismatch in polyball membership");
    for (int i = 0; i < arity(); ++i) {
        if (!factors_[i].contains(point[i])) return false;
    }
    return true;
}

Polyball Polyball::dual() const {
    std::vector<Ball> out;
    out.reserve(factors_.size());
    for (const auto& b : factors_) out.push_back(b.dual());
    return Polyball(std::move(out));
}

Polyball Polyball::annihilator() const {
    std::vector<Ball> out;
    out.reserve(factors_.size());
    for (const auto& b : factors_) out.push_back(b.annihilator());
    return Polyball(std::move(out));
}

std::string Polyball::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << " x ";
        out << factors_[i].to_string();
    }
    return out.str();
}

VfElem AffineForm::eval(const std::vector<VfElem>& point) const {
    VfElem acc = constant_;
    for (const auto& [idx, c] : coeffs_) {
        if (idx < 0 || idx >= static_cast<int>(point.size()))
            throw EngineError("affine form references variable out of range");
        acc += c * point[idx];
    }
    return acc;
}

AffineForm AffineForm::operator-() const {
    AffineForm out;
    out.constant_ = -constant_;
    for (const auto& [idx, c] : coeffs_) out.coeffs_.emplace(idx, -c);
    return out;
}

AffineForm operator+(const AffineForm& a, const AffineForm& b) {
    AffineForm out = a;
    out.constant_ += b.constant_;
    for (const auto& [idx, c] : b.coeffs_) {
        auto it = out.coeffs_.find(idx);
        if (it == out.coeffs_.end()) {
            out.coeffs_.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.coeffs_.erase(it);
        }
    }
    return out;
}

AffineForm operator-(const AffineForm& a, const AffineForm& b) { return a + (-b); }

AffineForm AffineForm::scaled(const VfElem& s) const {
    AffineForm out;
    if (s.is_zero()) return out;
    out.constant_ = constant_ * s;
    for (const auto& [idx, c] : coeffs_) out.coeffs_.emplace(idx, c * s);
    return out;
}

AffineForm AffineForm::substituted(const std::map<int, AffineForm>& images) const {
    AffineForm out(constant_);
    for (const auto& [idx, c] : coeffs_) {
        auto it = images.find(idx);
        if (it == images.end())
            throw EngineError("substitution misses variable " + std::to_string(idx));
        out = out + it->second.scaled(c);
    }
    return out;
}

AffineForm AffineForm::reindexed_down(int removed) const {
    AffineForm out(constant_);
    for (const auto& [idx, c] : coeffs_) {
        if (idx == removed) throw EngineError("reindexing a form that still uses the variable");
        out.coeffs_.emplace(idx > removed ? idx - 1 : idx, c);
    }
    return out;
}

bool operator<(const AffineForm& a, const AffineForm& b) {
    if (!(a.constant_ == b.constant_)) return a.constant_ < b.constant_;
    return a.coeffs_ < b.coeffs_;
}

std::string AffineForm::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : coeffs_) {
        if (!first) out << " + ";
        first = false;
        out << c.to_string() << "*x" << (idx + 1);
    }
    if (!constant_.is_zero() || first) {
        if (!first) out << " + ";
        out << constant_.to_string();
    }
    return out.str();
}

std::string Constraint::to_string() const {
    return form.to_string() + " in " + target.to_string();
}

Constraint plain_constraint(int idx, Ball ball) {
    return Constraint(AffineForm::variable(idx), std::move(ball));
}

MovingBall solve_constraint_for(const Constraint& c, int idx) {
    VfElem m = c.form.coeff(idx);
    if (m.is_zero()) throw EngineError("constraint does not involve the requested variable");
    if (!m.is_monomial())
        throw NonMonomialError("solving needs a monomial coefficient on x" +
                               std::to_string(idx + 1) + ", got " + m.to_string());
    VfElem minv = m.inverse();
    // m*x + rest in ball(center, r)  <=>  x in ball((center - rest)/m, r - v(m))
    AffineForm rest = c.form;
    rest.set_coeff(idx, VfElem());
    AffineForm moved = (AffineForm(c.target.center()) - rest).scaled(minv);
    return MovingBall{std::move(moved), c.target.radius() - m.val().value(), c.target.kind()};
}

}  // namespace motfourier
