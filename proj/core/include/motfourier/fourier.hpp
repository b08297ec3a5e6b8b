/*
 * Fourier transform of packet functions, for the trivial group and for
 * subgroups that are polyballs around 0, together with verifiers for the
 * standard transform identities (convolution formula, inversion, Plancherel,
 * product-convolution, Poisson summation).
 *
 * Conventions.  The forward transform of f on the n-fold product carries the
 * normalization vol(G)^{-1}; the return transform, taken over the annihilator
 * group G_*, carries none.  For a polyball subgroup the inversion constant is
 * e^n (the volume of a ball times the volume of its dual is e), so no further
 * ring modification is needed; non-polyball subgroups are not supported.
 */
#pragma once

#include <optional>
#include <string>

#include "motfourier/integrate.hpp"
#include "motfourier/wavefn.hpp"

namespace motfourier {

struct FourierConfig {
    // Absent: the trivial group.  Present: a polyball around 0; functions
    // passed to the transform must be invariant under it.
    std::optional<Polyball> subgroup;

    static FourierConfig trivial() { return FourierConfig{}; }
    static FourierConfig over(Polyball h) { return FourierConfig{std::move(h)}; }

    int arity_or(int n) const { return subgroup ? subgroup->arity() : n; }
    MotElem group_volume() const {
        return subgroup ? polyball_volume(*subgroup) : MotElem(1);
    }
};

// One verified identity: a name, the rendered two sides, and the verdict.
struct CheckReport {
    std::string identity;
    std::string lhs;
    std::string rhs;
    bool pass = false;

    std::string status() const { return pass ? "pass" : "fail"; }
};

// hat f(b) = vol(G)^{-1} * Integral f(x) exp<theta(b.x)>; requires f with
// bounded support and integrable (NotBounded / NotIntegrable), and invariance
// under the subgroup when one is configured (NotInvariant).
MotFn fourier(const MotFn& f, const FourierConfig& cfg = {});

// The unnormalized transform over the full space (trivial group).
MotFn fourier0(const MotFn& f);

// The return transform: integrate over the annihilator group G_*, without
// the vol(G)^{-1} factor.  For the trivial group this is fourier0.
MotFn fourier_back(const MotFn& g, const FourierConfig& cfg = {});

// check f(a) := f(-a).
MotFn reflect(const MotFn& f);

// Translation-probe test of invariance under a polyball around 0.
bool is_invariant_under(const MotFn& f, const Polyball& h);

// hathat f(-a) = e^n vol(G)^{-1} f(a)  on the whole packet class.
CheckReport check_inversion(const MotFn& f, const FourierConfig& cfg = {});

// F(f * g) = F(f) F(g), with the subgroup-normalized convolution.
CheckReport check_convolution(const MotFn& f, const MotFn& g, const FourierConfig& cfg = {});

// e^n vol(G)^{-2} Integral f g = Integral_{G_*} hat f * (check g)^.
CheckReport check_plancherel(const MotFn& f, const MotFn& g, const FourierConfig& cfg = {});

// Integral F0(f) g = Integral f F0(g).
CheckReport check_plancherel_classical(const MotFn& f, const MotFn& g);

// F0(f g) = e^{-n} (F0 f * F0 g).
CheckReport check_product_convolution(const MotFn& f, const MotFn& g);

// (e^n / vol(H)) Integral_H f = Integral_{H_*} F0(f); HypothesisFailed names
// the precondition that broke.
CheckReport check_poisson(const MotFn& f, const Polyball& h);

}  // namespace motfourier
