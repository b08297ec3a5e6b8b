/*
 * The ring of volume values.  Generators are the symbols
 *
 *   O_g  (volume of the open ball of radius g around 0),
 *   C_g  (volume of the closed ball of radius g around 0),
 *   e    (the invertible product O_0 * C_0),
 *
 * subject to the confluent rewrite O_g * C_{-g} -> e, which encodes that a
 * ball and its dual ball have volume product e.  Elements are Z-linear
 * combinations of normalized monomials; equality is syntactic equality of
 * normal forms.  No relation identifying O_{a+b} with O_a * O_b is imposed;
 * the generators of distinct radius stay independent.
 *
 * e is invertible; consequently every generator is (O_g^{-1} = C_{-g} e^{-1}),
 * so monomials with a unit coefficient are units.
 */
#pragma once

#include <map>
#include <string>

#include "motfourier/rational.hpp"

namespace motfourier {

class MotMonomial {
public:
    MotMonomial() = default;

    static MotMonomial o(const Rat& gamma, long exp = 1);
    static MotMonomial c(const Rat& gamma, long exp = 1);
    static MotMonomial e(long exp = 1);

    const std::map<Rat, long>& o_exps() const { return o_; }
    const std::map<Rat, long>& c_exps() const { return c_; }
    long e_exp() const { return e_; }
    bool is_one() const { return o_.empty() && c_.empty() && e_ == 0; }

    friend MotMonomial operator*(const MotMonomial& a, const MotMonomial& b);
    MotMonomial inverse() const;

    friend bool operator==(const MotMonomial& a, const MotMonomial& b) {
        return a.e_ == b.e_ && a.o_ == b.o_ && a.c_ == b.c_;
    }
    friend bool operator<(const MotMonomial& a, const MotMonomial& b);

    std::string to_string() const;

private:
    // Cancel O_g against C_{-g} into powers of e until no pair remains.
    void normalize();

    std::map<Rat, long> o_;  // gamma -> exponent > 0
    std::map<Rat, long> c_;  // gamma -> exponent > 0
    long e_ = 0;             // exponent of e, any sign
};

class MotElem {
public:
    MotElem() = default;
    MotElem(long n) {
        if (n != 0) terms_[MotMonomial()] = Int(n);
    }
    explicit MotElem(const MotMonomial& m, Int coeff = Int(1)) {
        if (coeff != 0) terms_[m] = std::move(coeff);
    }

    static MotElem o(const Rat& gamma, long exp = 1) { return MotElem(MotMonomial::o(gamma, exp)); }
    static MotElem c(const Rat& gamma, long exp = 1) { return MotElem(MotMonomial::c(gamma, exp)); }
    static MotElem e(long exp = 1) { return MotElem(MotMonomial::e(exp)); }
    static MotElem a() { return o(Rat(0)); }  // volume of the maximal ideal
    static MotElem b() { return c(Rat(0)); }  // volume of the valuation ring

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_one() &&
               terms_.begin()->second == 1;
    }
    const std::map<MotMonomial, Int>& terms() const { return terms_; }

    MotElem operator-() const;
    friend MotElem operator+(const MotElem& a, const MotElem& b);
    friend MotElem operator-(const MotElem& a, const MotElem& b);
    friend MotElem operator*(const MotElem& a, const MotElem& b);
    MotElem& operator+=(const MotElem& b) { return *this = *this + b; }
    MotElem& operator*=(const MotElem& b) { return *this = *this * b; }

    // Inverse of +-(single monomial); NonMonomialError otherwise.
    MotElem inverse() const;
    MotElem pow(long e) const;

    friend bool operator==(const MotElem& a, const MotElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MotElem& a, const MotElem& b) { return !(a == b); }
    friend bool operator<(const MotElem& a, const MotElem& b);

    std::string to_string() const;

private:
    std::map<MotMonomial, Int> terms_;  // normalized monomial -> nonzero coeff
};

}  // namespace motfourier
