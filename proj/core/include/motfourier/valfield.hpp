/*
 * The computable valued-field model: finite formal sums
 *
 *     x = sum_gamma  c_gamma * t^gamma,   c_gamma in Q(i),  gamma in Q,
 *
 * with exact arithmetic.  The valuation of a nonzero element is its least
 * exponent; val(0) is the infinite element of the extended value group.
 * Alongside the field there are the two standard quotients the engine works
 * with: leading terms (rv) and the additive group Omega = VF / {v > 0}
 * obtained by truncating away strictly positive exponents (theta).
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "motfourier/rational.hpp"

namespace motfourier {

class VfElem;
int cmp_vf(const VfElem& a, const VfElem& b);

class VfElem {
public:
    VfElem() = default;
    VfElem(long n) { set_term(Rat(0), GaussQ(Rat(n))); }
    VfElem(const Rat& q) { set_term(Rat(0), GaussQ(q)); }
    VfElem(const GaussQ& c) { set_term(Rat(0), c); }

    // c * t^gamma
    static VfElem monomial(const GaussQ& c, const Rat& gamma) {
        VfElem x;
        x.set_term(gamma, c);
        return x;
    }
    static VfElem t_pow(const Rat& gamma) { return monomial(GaussQ(Rat(1)), gamma); }
    static VfElem i() { return VfElem(GaussQ::i()); }
    // The fixed square root of -1 used throughout: pi = i * t^0.
    static VfElem pi() { return i(); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Rat, GaussQ>& terms() const { return terms_; }

    Gamma val() const {
        if (terms_.empty()) return Gamma::infinite();
        return Gamma(terms_.begin()->first);
    }
    const GaussQ& leading_coeff() const;

    bool is_monomial() const { return terms_.size() == 1; }
    // Constant in Q(i) (a pure t^0 term, or zero).
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    GaussQ constant_value() const {
        if (terms_.empty()) return GaussQ();
        return terms_.begin()->second;
    }

    VfElem operator-() const;
    friend VfElem operator+(const VfElem& a, const VfElem& b);
    friend VfElem operator-(const VfElem& a, const VfElem& b);
    friend VfElem operator*(const VfElem& a, const VfElem& b);

    VfElem& operator+=(const VfElem& b) { return *this = *this + b; }
    VfElem& operator-=(const VfElem& b) { return *this = *this - b; }
    VfElem& operator*=(const VfElem& b) { return *this = *this * b; }

    // Multiplicative inverse of a monomial; NonMonomialError otherwise.
    VfElem inverse() const;
    VfElem pow(long e) const;

    // Canonical representative modulo { v > bound } (inclusive keeps the
    // boundary exponent) or modulo { v >= bound } (exclusive drops it).
    VfElem truncated(const Rat& bound, bool inclusive) const;

    friend bool operator==(const VfElem& a, const VfElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const VfElem& a, const VfElem& b) { return !(a == b); }
    friend bool operator<(const VfElem& a, const VfElem& b) { return cmp_vf(a, b) < 0; }

    std::string to_string() const;

private:
    void set_term(const Rat& gamma, const GaussQ& c) {
        if (!c.is_zero()) terms_[gamma] = c;
    }
    friend int cmp_vf(const VfElem& a, const VfElem& b);

    std::map<Rat, GaussQ> terms_;  // exponent -> nonzero coefficient
};

/*
 * An element of Omega = VF / {v > 0}, represented by the canonical truncated
 * series (all exponents <= 0).  Addition is inherited from VF.
 */
class OmegaElem {
public:
    OmegaElem() = default;
    explicit OmegaElem(VfElem rep) : rep_(std::move(rep)) {}

    const VfElem& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    friend OmegaElem operator+(const OmegaElem& a, const OmegaElem& b);
    OmegaElem operator-() const { return OmegaElem(-rep_); }

    friend bool operator==(const OmegaElem& a, const OmegaElem& b) { return a.rep_ == b.rep_; }
    friend bool operator<(const OmegaElem& a, const OmegaElem& b) { return a.rep_ < b.rep_; }

    std::string to_string() const { return rep_.to_string(); }

private:
    VfElem rep_;  // invariant: every exponent <= 0
};

// Quotient map VF -> Omega: drop every term of strictly positive exponent.
OmegaElem theta(const VfElem& x);

/*
 * Leading-term datum rv(x): the pair (leading coefficient, valuation) of a
 * nonzero element, or the distinguished infinite point for 0.
 */
class RvElem {
public:
    RvElem() : infinite_(true) {}
    RvElem(GaussQ coeff, Rat gamma)
        : infinite_(false), coeff_(std::move(coeff)), gamma_(std::move(gamma)) {
        if (coeff_.is_zero()) throw EngineError("rv with zero coefficient");
    }

    static RvElem one() { return RvElem(GaussQ(Rat(1)), Rat(0)); }

    bool is_infinite() const { return infinite_; }
    const GaussQ& coeff() const { return coeff_; }
    const Rat& gamma() const { return gamma_; }

    friend RvElem operator*(const RvElem& a, const RvElem& b) {
        if (a.infinite_ || b.infinite_) return RvElem();
        return RvElem(a.coeff_ * b.coeff_, a.gamma_ + b.gamma_);
    }
    friend bool operator==(const RvElem& a, const RvElem& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || (a.coeff_ == b.coeff_ && a.gamma_ == b.gamma_);
    }
    friend bool operator!=(const RvElem& a, const RvElem& b) { return !(a == b); }

    std::string to_string() const;

private:
    bool infinite_;
    GaussQ coeff_;
    Rat gamma_;
};

RvElem rv(const VfElem& x);

}  // namespace motfourier
