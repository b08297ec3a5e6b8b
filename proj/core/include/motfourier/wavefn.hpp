/*
 * Wave-packet functions: the class of functions the engine computes with.
 * A packet on VF^n is
 *
 *     coeff * [conjunction of affine ball constraints] * exp< theta(Q(x)) >
 *
 * where Q is a polynomial of degree <= 2 with no square terms (a bilinear
 * part q_ij x_i x_j for i != j, a linear part, and a constant), and coeff
 * lives in the character-value ring.  A function is a finite sum of packets.
 *
 * The class is closed under products, affine substitutions that keep phases
 * square-free, and integration in one variable (see integrate.hpp).
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motfourier/cring.hpp"
#include "motfourier/geometry.hpp"

namespace motfourier {

class Phase {
public:
    Phase() = default;

    bool is_zero() const { return bilinear_.empty() && linear_.empty() && constant_.is_zero(); }
    const std::map<std::pair<int, int>, VfElem>& bilinear() const { return bilinear_; }
    const std::map<int, VfElem>& linear() const { return linear_; }
    const VfElem& constant() const { return constant_; }

    void add_constant(const VfElem& c) { constant_ += c; }
    void add_linear(int i, const VfElem& c);
    void add_bilinear(int i, int j, const VfElem& c);
    // Fold an affine form into the linear/constant part.
    void add_affine(const AffineForm& f);
    // Add the product of two affine forms; UnsupportedPhaseError if a square
    // term (same variable on both sides) would appear.
    void add_product(const AffineForm& a, const AffineForm& b);

    bool depends_on(int idx) const;
    VfElem eval(const std::vector<VfElem>& point) const;

    // Split off the coefficient of x_idx: returns L with Q = L * x_idx + Q'
    // and leaves Q' behind.  L is affine in the other variables.
    AffineForm extract_var(int idx);

    Phase operator+(const Phase& other) const;
    Phase substituted(const std::map<int, AffineForm>& images) const;
    Phase reindexed_down(int removed) const;

    friend bool operator==(const Phase& a, const Phase& b) {
        return a.constant_ == b.constant_ && a.linear_ == b.linear_ && a.bilinear_ == b.bilinear_;
    }
    friend bool operator<(const Phase& a, const Phase& b);

    std::string to_string() const;

private:
    std::map<std::pair<int, int>, VfElem> bilinear_;  // (i<j) -> coefficient
    std::map<int, VfElem> linear_;
    VfElem constant_;
};

struct WavePacket {
    int arity = 0;
    std::vector<Constraint> support;  // conjunction; empty means all of VF^n
    Phase phase;
    CElem coeff;

    WavePacket(int n, std::vector<Constraint> s, Phase p, CElem c)
        : arity(n), support(std::move(s)), phase(std::move(p)), coeff(std::move(c)) {}

    bool supports_point(const std::vector<VfElem>& point) const;
    // Plain ball bounding x_idx, if the support states one directly.
    std::optional<Ball> plain_ball(int idx) const;

    friend bool operator<(const WavePacket& a, const WavePacket& b);
    std::string to_string() const;
};

struct FnFlags {
    bool bounded = false;
    bool integrable = false;
    bool almost_integrable = true;
    bool schwartz = false;
};

class MotFn {
public:
    explicit MotFn(int arity) : arity_(arity) {}
    MotFn(int arity, std::vector<WavePacket> packets)
        : arity_(arity), packets_(std::move(packets)) {}

    int arity() const { return arity_; }
    const std::vector<WavePacket>& packets() const { return packets_; }
    bool is_zero_fn() const { return packets_.empty(); }

    void add_packet(WavePacket p);

    std::string to_string() const;

    friend bool operator==(const MotFn& a, const MotFn& b) {
        return a.arity_ == b.arity_ && a.packets_ == b.packets_;
    }

private:
    friend bool operator==(const WavePacket& a, const WavePacket& b);
    int arity_;
    std::vector<WavePacket> packets_;
};

bool operator==(const WavePacket& a, const WavePacket& b);

// --- constructors -----------------------------------------------------------

// Indicator of a polyball (constraint per coordinate).
MotFn chi(const Polyball& pb);
// Indicator of a single ball in one variable of an n-ary function.
MotFn chi_var(int arity, int idx, const Ball& ball);
// Additive character x -> exp<theta(sum b_i x_i)> with full support.
MotFn exp_char(int arity, const std::vector<VfElem>& freq);
// exp<theta(b * x_1 * x_2)>, the bilinear character in two variables.
MotFn nu_char(const VfElem& b);
// Constant function with the given value.
MotFn const_fn(int arity, const CElem& value);

// --- pointwise and algebraic operations ------------------------------------

CElem fn_eval(const MotFn& f, const std::vector<VfElem>& point);
MotFn fn_add(const MotFn& f, const MotFn& g);
MotFn fn_mul(const MotFn& f, const MotFn& g);
MotFn fn_scale(const MotFn& f, const CElem& scalar);
MotFn fn_neg(const MotFn& f);

/*
 * Canonical form: decide constant constraints, intersect per-coordinate
 * balls by the trichotomy, drop empty packets, merge packets sharing
 * support and phase, and sort packets.  Every public operation returns
 * normalized functions.
 */
MotFn fn_normalize(const MotFn& f);

/*
 * Phase-constancy reduction: where a packet's phase is constant on its
 * support polyball (valuation criterion on linear and bilinear
 * coefficients), fold the phase value at the center into the coefficient.
 */
MotFn fn_reduce(const MotFn& f);

// g(x) = f(x - shift)
MotFn fn_translate(const MotFn& f, const std::vector<VfElem>& shift);
// g(x) = f(a_1 x_1, ..., a_n x_n); each a_i a nonzero monomial
MotFn fn_scale_arg(const MotFn& f, const std::vector<VfElem>& factors);
MotFn fn_scale_arg(const MotFn& f, const VfElem& factor);
// g = f composed with the affine map sending x_i to images[i] over a new
// variable set of the given arity.
MotFn fn_subst_affine(const MotFn& f, int new_arity, const std::map<int, AffineForm>& images);

FnFlags fn_check(const MotFn& f);

// Uniform local-constancy radius; requires a Schwartz function (bounded
// plain supports), NotBoundedError otherwise.  Zero function -> 0.
Rat iota_bound(const MotFn& f);

// Deterministic probe points derived from the supports of the given
// functions (ball centers, interior and exterior offsets).
std::vector<std::vector<VfElem>> probe_points(const std::vector<const MotFn*>& fns, int arity,
                                              size_t limit);

// Equality check: syntactic on reduced normal forms, with probe-point
// evaluation as the fallback when decompositions differ.
bool fn_equal(const MotFn& f, const MotFn& g);

}  // namespace motfourier
