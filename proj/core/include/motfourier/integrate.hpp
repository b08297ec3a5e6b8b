/*
 * Exact integration of wave-packet functions with respect to the additive
 * Haar measure normalized by vol(valuation ring) = 1.
 *
 * The single primitive is integration of one variable whose support slice is
 * a ball: a character integrates over a ball to the ball volume times its
 * value at the center when the frequency lies in the dual ball, and to zero
 * otherwise.  The frequency condition and any ball-intersection guards
 * become constraints on the remaining variables, so iterated integrals stay
 * inside the packet class and evaluate in any variable order.
 */
#pragma once

#include "motfourier/wavefn.hpp"

namespace motfourier {

// Integrate out variable idx (0-based); the result has arity - 1 variables
// with higher indices shifted down.  NotIntegrableError when some packet has
// no constraint bounding x_idx.
MotFn integrate_var(const MotFn& f, int idx);

// Integrate several variables in the given order (0-based indices into the
// ORIGINAL variable numbering).
MotFn integrate_vars(const MotFn& f, const std::vector<int>& order);

// Integrate everything; default order x1, x2, ....  Returns the value.
CElem integrate(const MotFn& f);
CElem integrate(const MotFn& f, const std::vector<int>& order);

// Convert an arity-0 function to its value.
CElem to_value(const MotFn& f);

// Volume of a polyball as a ring element.
MotElem polyball_volume(const Polyball& pb);
MotElem ball_volume(const Ball& b);

// Convolution (f * g)(a) = integral over x of f(x) g(a - x); at least the
// integration block must end up ball-bounded, which holds whenever f is
// integrable.
MotFn convolve(const MotFn& f, const MotFn& g);

// Convolution identity at level delta: the normalized indicator
// vol(oball(0,delta))^{-1} * chi around 0, an identity on functions whose
// local-constancy radius is at most delta.
MotFn convolution_identity(int arity, const Rat& delta);

/*
 * A function together with a leading-term volume form.  Affine substitution
 * is measure-aware: composing with x -> A x + b multiplies the form by
 * rv(det A).
 */
struct VolumeForm {
    MotFn fn;
    RvElem density;

    VolumeForm(MotFn f, RvElem d) : fn(std::move(f)), density(std::move(d)) {}
};

VfElem matrix_det(const std::vector<std::vector<VfElem>>& m);

VolumeForm apply_affine(const VolumeForm& vf, const std::vector<std::vector<VfElem>>& matrix,
                        const std::vector<VfElem>& shift);

}  // namespace motfourier
