#pragma once

#include <motfourier/fourier.hpp>
#include <motfourier/wavefn.hpp>

#include <complex>
#include <map>
#include <string>

namespace motfourier {

/*
 * Specialization target: a completion at a prime p = 1 (mod 4), where the
 * square root of -1 lifts to an ordinary integer.  Character values live
 * among the p^level-th roots of unity, so `level` bounds how deep below the
 * integers the specialized exponents may reach.
 */
struct PadicConfig {
    long p;
    int level;   // k >= 1
    Int i_lift;  // u with u^2 = -1 (mod p^k); the smaller branch at level 1

    PadicConfig(long prime, int lvl);
};

/*
 * Exact element of Q(zeta), zeta = exp(2 pi i / M) with M = p^k, kept in
 * the canonical power basis: exponents q*p^{k-1} + r with 0 <= q <= p-2,
 * 0 <= r < p^{k-1}; the top block is rewritten through the vanishing sum
 * of the p-th roots of unity.  Equality is literal on this basis.
 */
class Cyclo {
public:
    Cyclo(long modulus, long block) : modulus_(modulus), block_(block) {}

    long modulus() const { return modulus_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<long, Rat>& coeffs() const { return coeffs_; }

    // Adds c * zeta^e (any integer e) in canonical form.
    void add_root(long e, const Rat& c);

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    Cyclo scaled(const Rat& s) const;

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    std::complex<double> to_complex() const;
    std::string to_string() const;

private:
    long modulus_;
    long block_;  // p^{k-1}
    std::map<long, Rat> coeffs_;
};

Cyclo cyclo_zero(const PadicConfig& cfg);
Cyclo cyclo_rat(const PadicConfig& cfg, const Rat& r);
Cyclo cyclo_root(const PadicConfig& cfg, long exponent);

// Valuation at p of a nonzero rational.
long vp(const Rat& x, long p);

// Polar part of x in [0, 1): the class of x modulo the p-integers.
// InsufficientLevel when the denominator exceeds p^max_level.
Rat frac_p(const Rat& x, long p, int max_level);

// The standard character of conductor p: psi(x) = e(frac(x/p)); trivial
// exactly on the p-integers scaled by p.
Cyclo psi(const PadicConfig& cfg, const Rat& x);

// Numeric image of a series: t -> p, i -> i_lift; integral exponents only.
Rat lift_vf(const VfElem& x, const PadicConfig& cfg);

// Volume symbols: O_g -> p^{-g-1}, C_g -> p^{-g}, e -> 1/p, normalizing the
// valuation ring to volume 1.  NonIntegralGamma for fractional indices.
Rat spec_mot(const MotElem& m, const PadicConfig& cfg);

// Full value ring: characters through psi, coefficients through spec_mot.
Cyclo spec_c(const CElem& x, const PadicConfig& cfg);

/*
 * Independent numeric integral: an exact Riemann sum over cosets of
 * p^L Z_p^n inside the packet supports, with L chosen so that supports and
 * phases are constant on each coset.  Packet data (ball centers, radii,
 * phase coefficients) are lifted to exact rationals; nothing is routed back
 * through the symbolic evaluator.  Each coordinate of every packet must
 * carry a plain bounding ball.  Summation follows lexicographic coset
 * order, so results are bit-identical across runs and thread counts.
 */
Cyclo numeric_integral(const MotFn& f, const PadicConfig& cfg);

// spec_c(symbolic) vs numeric_integral(f), exact in the cyclotomic basis.
CheckReport oracle_check(const CElem& symbolic, const MotFn& f, const PadicConfig& cfg);

}  // namespace motfourier
