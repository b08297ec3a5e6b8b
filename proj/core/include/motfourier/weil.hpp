#pragma once

#include <motfourier/fourier.hpp>
#include <motfourier/integrate.hpp>
#include <motfourier/wavefn.hpp>

#include <string>
#include <vector>

namespace motfourier {

/*
 * A plane function together with a constant volume-form coefficient: the
 * pair (f, rho.mu) with rho recorded through its leading-term datum.  The
 * operator action below moves both members; integrating the pair multiplies
 * the plain integral by the form coefficient.
 */
struct MuFn {
    MotFn fn;
    RvElem form;

    // Requires a binary function and a nonzero form coefficient.
    MuFn(MotFn f, RvElem mu);
};

// One generator: u(b) unipotent, s(a) diagonal, w the rotation by the fixed
// square root of -1.
struct SL2Gen {
    enum class Kind { U, S, W };
    Kind kind = Kind::W;
    VfElem param;  // used by U and S
};

SL2Gen sl2_u(const VfElem& b);
SL2Gen sl2_s(const VfElem& a);
SL2Gen sl2_w();

// A word in the generators, read as a product left to right; the rightmost
// factor acts first, like operator composition.
using SL2Word = std::vector<SL2Gen>;

// The bilinear weight nu_b(x) = exp<theta(b x1 x2)> on the plane.
MotFn nu(const VfElem& b);

/*
 * The projective plane action:
 *   u(b): f -> nu_{b pi} . f            form unchanged
 *   s(a): f -> f(a x1, a x2)            form -> rv(a) . form
 *   w:    f -> e^{-1} hat f(pi x)       form -> rv(-pi^{-1}) . form
 * s(a) needs a nonzero monomial parameter (NonMonomial); w needs a compactly
 * supported operand (NotSchwartz).
 */
MuFn weil_apply(const SL2Gen& g, const MuFn& input);
MuFn weil_apply(const SL2Word& word, const MuFn& input);

/*
 * Equality of pairs (f, mu).  Form coefficients multiply exactly in the
 * leading-term ring, and equal forms reduce the question to plain function
 * equality.  When the forms differ, a change of variables may trade the
 * ratio's valuation against ball-volume indices inside the coefficients
 * (the substitution's Jacobian is absorbed fiberwise), so coefficients are
 * compared in a shift-graded normal form: a closed-ball volume of index g
 * grades as b.l^g, an open-ball volume as a.l^g, their invertible product
 * as a.b, and each side carries a global l^{v(form)}; supports and phases
 * must agree literally.  Coefficient terms with no volume symbol admit no
 * fiberwise absorption, so such pairs are compared by searching for a
 * diagonal substitution witness realizing the form ratio outright.
 */
bool mu_equal(const MuFn& lhs, const MuFn& rhs);

std::string mu_to_string(const MuFn& m);

/*
 * Verify the defining relations of the action over a corpus of pairs and a
 * grid of nonzero monomial parameters:
 *   (1) u(a) u(b) = u(a+b)
 *   (2) s(a) s(b) = s(ab)
 *   (3) w s(a) = s(a^{-1}) w
 *   (4) w w = s(-1)
 *   (5) w u(a) w = s(-a^{-1}) u(-a) w u(-a^{-1})
 *   (6) the convolution twist: transforming f * nu_b and rescaling by b
 *       matches e . hat f(b x) nu_{-b}(x) with the form scaled by rv(b^{-1}).
 * One aggregated report per relation; a failing report renders the first
 * counterexample.  Besides the pair comparison, every instance is spot
 * checked at up to 20 probe points through independent evaluation.
 */
std::vector<CheckReport> verify_relations(const std::vector<MuFn>& corpus,
                                          const std::vector<VfElem>& params);

}  // namespace motfourier
