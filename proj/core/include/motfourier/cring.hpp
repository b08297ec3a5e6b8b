/*
 * The ring of character values: the group ring of Omega over the volume
 * ring, written as finite sums  sum_omega  m_omega * exp<omega>.  The basis
 * elements multiply by exp<w1> * exp<w2> = exp<w1 + w2>, and exp<0> is the
 * identity.  This is where every integral computed by the engine lives.
 */
#pragma once

#include <map>
#include <string>

#include "motfourier/motring.hpp"
#include "motfourier/valfield.hpp"

namespace motfourier {

class CElem {
public:
    CElem() = default;
    CElem(long n) {
        if (n != 0) terms_[OmegaElem()] = MotElem(n);
    }
    explicit CElem(const MotElem& scalar) {
        if (!scalar.is_zero()) terms_[OmegaElem()] = scalar;
    }
    CElem(const OmegaElem& omega, const MotElem& coeff) {
        if (!coeff.is_zero()) terms_[omega] = coeff;
    }

    // exp<omega> with coefficient 1.
    static CElem character(const OmegaElem& omega) { return CElem(omega, MotElem(1)); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<OmegaElem, MotElem>& terms() const { return terms_; }

    CElem operator-() const;
    friend CElem operator+(const CElem& a, const CElem& b);
    friend CElem operator-(const CElem& a, const CElem& b);
    friend CElem operator*(const CElem& a, const CElem& b);
    CElem& operator+=(const CElem& b) { return *this = *this + b; }
    CElem& operator*=(const CElem& b) { return *this = *this * b; }

    friend bool operator==(const CElem& a, const CElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CElem& a, const CElem& b) { return !(a == b); }
    friend bool operator<(const CElem& a, const CElem& b) { return a.terms_ < b.terms_; }

    std::string to_string() const;

private:
    std::map<OmegaElem, MotElem> terms_;  // omega -> nonzero volume coefficient
};

inline CElem operator*(const MotElem& s, const CElem& x) { return CElem(s) * x; }

}  // namespace motfourier
