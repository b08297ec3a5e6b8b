/*
 * Exact scalar arithmetic: arbitrary-precision rationals (GMP) and the
 * Gaussian rationals Q(i) built on top of them.  All coefficient arithmetic
 * in the engine goes through these types; nothing here ever rounds.
 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "motfourier/errors.hpp"

namespace motfourier {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Three-way compare as an int so map comparators stay cheap to write.
inline int cmp_rat(const Rat& a, const Rat& b) { return cmp(a, b); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Floor of a rational as an arbitrary-precision integer.
inline Int rat_floor(const Rat& q) {
    Int quot;
    mpz_fdiv_q(quot.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return quot;
}

// Exact integer square root if the argument is a perfect square.
std::optional<Int> exact_isqrt(const Int& n);

// Exact rational square root if one exists.
std::optional<Rat> exact_sqrt(const Rat& q);

std::string rat_to_string(const Rat& q);

/*
 * A Gaussian rational a + b*i with exact components.  Field operations only;
 * the square root helper reports failure instead of approximating.
 */
class GaussQ {
public:
    GaussQ() : re_(0), im_(0) {}
    GaussQ(Rat re) : re_(std::move(re)), im_(0) {}
    GaussQ(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussQ(long re) : re_(re), im_(0) {}

    static GaussQ i() { return GaussQ(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    GaussQ operator-() const { return GaussQ(-re_, -im_); }
    GaussQ conj() const { return GaussQ(re_, -im_); }
    Rat norm() const { return re_ * re_ + im_ * im_; }

    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    GaussQ inverse() const {
        if (is_zero()) throw DivisionByZeroError("inverse of zero Gaussian rational");
        Rat n = norm();
        return GaussQ(re_ / n, -im_ / n);
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) { return a * b.inverse(); }

    friend bool operator==(const GaussQ& a, const GaussQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

    // Total order (lexicographic) used only for canonical container keys.
    friend bool operator<(const GaussQ& a, const GaussQ& b) {
        int c = cmp_rat(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp_rat(a.im_, b.im_) < 0;
    }

    // Exact square root in Q(i), if the element has one there.
    std::optional<GaussQ> sqrt() const;

    std::string to_string() const;

private:
    Rat re_, im_;
};

inline int cmp_gauss(const GaussQ& a, const GaussQ& b) {
    int c = cmp_rat(a.re(), b.re());
    if (c != 0) return c;
    return cmp_rat(a.im(), b.im());
}

/*
 * An element of the value group extended by +infinity: either a finite
 * rational or the valuation of zero.  Ordered with Infinite greater than
 * everything finite.
 */
class Gamma {
public:
    Gamma() : finite_(true), value_(0) {}
    explicit Gamma(Rat v) : finite_(true), value_(std::move(v)) {}
    static Gamma infinite() {
        Gamma g;
        g.finite_ = false;
        return g;
    }

    bool is_finite() const { return finite_; }
    const Rat& value() const {
        if (!finite_) throw EngineError("value() on infinite valuation");
        return value_;
    }

    friend bool operator==(const Gamma& a, const Gamma& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const Gamma& a, const Gamma& b) { return !(a == b); }
    friend bool operator<(const Gamma& a, const Gamma& b) {
        if (!a.finite_) return false;           // inf < x never
        if (!b.finite_) return true;            // finite < inf
        return a.value_ < b.value_;
    }
    friend bool operator>(const Gamma& a, const Gamma& b) { return b < a; }
    friend bool operator<=(const Gamma& a, const Gamma& b) { return !(b < a); }
    friend bool operator>=(const Gamma& a, const Gamma& b) { return !(a < b); }

    Gamma operator+(const Gamma& other) const {
        if (!finite_ || !other.finite_) return infinite();
        return Gamma(value_ + other.value_);
    }

    std::string to_string() const;

private:
    bool finite_;
    Rat value_;
};

}  // namespace motfourier
