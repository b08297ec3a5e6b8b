/*
 * Distributions over the packet class, as evaluable expression trees:
 *
 *     Regular(f)      pairing against an almost-integrable function
 *     FourierOf(D)    the transform distribution  (a, g) -> D(hat chi_ball)
 *     Tensor(D1, D2)  blockwise product
 *     Conv(D1, D2)    convolution; at least one factor must carry a
 *                     bounded-support certificate
 *
 * A tree evaluates at (a, gamma) to the value the induced functional takes on
 * the indicator of the open polyball around a of radius gamma, and applies to
 * a Schwartz function through the defining integral against its level
 * realization.  Where a level-free function realization exists (a kernel),
 * evaluation uses it exactly; where it cannot exist (a transform whose inner
 * kernel is unbounded appearing under another transform), the operation
 * raises UnsupportedDistribution instead of approximating.
 */
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "motfourier/fourier.hpp"
#include "motfourier/wavefn.hpp"

namespace motfourier {

class Dist {
public:
    enum class Kind { Regular, FourierOf, Tensor, Conv };

    static Dist regular(MotFn f);
    static Dist fourier_of(Dist inner);
    static Dist tensor(Dist first, Dist second);
    // NotBounded unless at least one factor has a certified support bound.
    static Dist convolution(Dist first, Dist second);

    Kind kind() const;
    int arity() const;
    const MotFn& fn() const;  // Regular nodes only
    Dist child(int i) const;  // 0 for unary, 0/1 for binary

    std::string to_string() const;

private:
    struct Node;
    explicit Dist(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Level-free realization: a function K with D(a, g) = Integral_{ball} K for
// every level, when the tree shape admits one.
std::optional<MotFn> dist_kernel(const Dist& d);

// The function a -> D(a, gamma) at one level, as a packet function.
MotFn dist_level_fn(const Dist& d, const Rat& gamma);

// D evaluated on the open polyball around `point` of radius gamma.
CElem dist_eval(const Dist& d, const std::vector<VfElem>& point, const Rat& gamma);

// The induced functional on a Schwartz function.
CElem dist_apply(const Dist& d, const MotFn& f);

// Certified superset of the support, when the tree yields one.
std::optional<Polyball> support_bound(const Dist& d);

// For bounded-support D: the function h with FourierOf(D) = Regular(h),
// realized by the pairing integral over the bounding closed polyball.
MotFn bounded_fourier_as_function(const Dist& d);

struct CoherenceSample {
    std::vector<VfElem> point;
    Rat gamma;        // coarse level
    Rat gamma_fine;   // >= gamma
};

// D(a, g) = Integral_{ball(a,g)} O_{g'}^{-n} D(x, g') over each sample.
CheckReport check_coherence(const Dist& d, const std::vector<CoherenceSample>& samples);

// D(hat f) = hat D(f), the two sides computed along independent routes:
// the left through the closed-form transform of f, the right through the
// defining double integral of the transform distribution.
CheckReport check_dist_fourier(const Dist& d, const MotFn& f);

// F(D1 * D2) = hat D1 hat D2 on a Schwartz probe, the right side realized
// through bounded_fourier_as_function(D1).
CheckReport check_dist_conv_fourier(const Dist& d1, const Dist& d2, const MotFn& probe);

}  // namespace motfourier
