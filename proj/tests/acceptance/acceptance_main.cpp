/*
 * Acceptance gate: ten end-to-end criteria over the shared function corpus,
 * each printed as a single pass/fail line.  Every identity is checked in
 * exact normal form; numeric cross-checks go through the independent coset
 * sums (exact cyclotomic equality, which is stronger than the 1e-9 float
 * tolerance they are allowed).  Exit code 0 iff every selected criterion
 * passes.  `--only N` runs a single criterion.
 */
#include <motfourier/distribution.hpp>
#include <motfourier/engine.hpp>
#include <motfourier/newton.hpp>
#include <motfourier/padic.hpp>
#include <motfourier/weil.hpp>

#include "corpus.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace motfourier;
using namespace motfourier::testsupport;

namespace {

struct Outcome {
    std::vector<std::string> failures;
    std::string stats;

    void fail(const std::string& msg) {
        if (failures.size() < 10)
            failures.push_back(msg);
        else if (failures.size() == 10)
            failures.push_back("... further failures suppressed");
    }
};

// ---------------------------------------------------------------------------
// 1. Character rule: integral of a ball indicator times a twisted character.
// ---------------------------------------------------------------------------

Outcome run_character_rule() {
    Outcome out;
    const PadicConfig cfg(5, 3);

    const std::vector<BallKind> kinds = {BallKind::Closed, BallKind::Open};
    const std::vector<Rat> radii = {Rat(-2), Rat(-1), Rat(0), Rat(1), Rat(2)};
    const std::vector<VfElem> centers = {VfElem(), VfElem(1), tpow(1), itpow(-1), tpow(-2)};
    const std::vector<VfElem> freqs = {tpow(-2), VfElem(1), tpow(1), itpow(-1)};
    const std::vector<VfElem> consts = {VfElem(), VfElem(1), tpow(-1), itpow(1)};

    long exact = 0;
    long numeric = 0;
    size_t cycle = 0;
    for (const auto kind : kinds) {
        for (const auto& gamma : radii) {
            for (const auto& center : centers) {
                const Ball ball = (kind == BallKind::Closed)
                                      ? Ball::closed(center, gamma)
                                      : Ball::open(center, gamma);
                for (const auto& freq : freqs) {
                    const VfElem constant = consts[cycle++ % consts.size()];
                    Phase phase;
                    phase.add_linear(0, freq);
                    phase.add_constant(constant);
                    const MotFn f(1, {WavePacket(1, {plain_constraint(0, ball)}, phase,
                                                 CElem(MotElem(1)))});

                    // The rule: the centered dual ball decides vanishing; a
                    // surviving integral is the volume times the character
                    // value at the center.
                    const Ball centered = ball.translated(-ball.center());
                    CElem expected;
                    if (centered.dual().contains(freq))
                        expected = CElem(theta(freq * ball.center() + constant),
                                         ball_volume(ball));
                    const CElem got = integrate(f);
                    ++exact;
                    if (!(got == expected)) {
                        out.fail("exact: " + f.to_string() + " -> " + got.to_string() +
                                 ", rule says " + expected.to_string());
                        continue;
                    }

                    // Numeric cross-check where level 3 suffices: every phase
                    // value on the support must have valuation >= -2.
                    const Rat low = ball.center().is_zero()
                                        ? gamma
                                        : std::min(gamma, Rat(ball.center().val().value()));
                    const Rat phase_val =
                        std::min(Rat(freq.val().value() + low),
                                 constant.is_zero() ? Rat(0) : Rat(constant.val().value()));
                    const Rat span = std::max(Rat(0), Rat(Rat(1) - freq.val().value() - gamma));
                    if (phase_val >= Rat(-2) && span <= Rat(6)) {
                        const CheckReport rep = oracle_check(got, f, cfg);
                        ++numeric;
                        if (!rep.pass)
                            out.fail("numeric: " + f.to_string() + " lhs=" + rep.lhs +
                                     " rhs=" + rep.rhs);
                    }
                }
            }
        }
    }
    std::ostringstream s;
    s << exact << " exact triples, " << numeric << " numeric cross-checks";
    out.stats = s.str();
    if (exact != 200) out.fail("expected 200 triples, enumerated " + std::to_string(exact));
    if (numeric < 40) out.fail("numeric subset too small: " + std::to_string(numeric));
    return out;
}

// ---------------------------------------------------------------------------
// 2. Dual volumes: o_g c_{-g} = e and the bilinear Fubini reduction.
// ---------------------------------------------------------------------------

Outcome run_dual_volumes() {
    Outcome out;
    const MotElem e1 = MotElem::e(1);
    for (long g = -3; g <= 3; ++g) {
        const MotElem lhs = MotElem::o(Rat(g)) * MotElem::c(Rat(-g));
        const MotElem rhs = MotElem::c(Rat(-g)) * MotElem::o(Rat(g));
        if (!(lhs == e1))
            out.fail("o_" + std::to_string(g) + " c_" + std::to_string(-g) + " = " +
                     lhs.to_string());
        if (!(rhs == e1)) out.fail("product order changed the normal form at g=" +
                                   std::to_string(g));
    }
    const std::vector<Ball> bases = {cb0(-1), cb0(-2), ob0(-2)};
    for (const Ball& b : bases) {
        const MotFn f = fn_mul(ind({b, Ball::maximal_ideal()}), nu_char(VfElem(1)));
        const CElem first = to_value(integrate_vars(f, {0, 1}));
        const CElem second = to_value(integrate_vars(f, {1, 0}));
        if (!(first == CElem(e1)))
            out.fail("order (x1,x2) over " + b.to_string() + " gave " + first.to_string());
        if (!(second == CElem(e1)))
            out.fail("order (x2,x1) over " + b.to_string() + " gave " + second.to_string());
    }
    out.stats = "7 index pairs, 3 bilinear bases, both orders";
    return out;
}

// ---------------------------------------------------------------------------
// 3. Fubini: all coordinate orders agree on the corpus.
// ---------------------------------------------------------------------------

Outcome run_fubini() {
    Outcome out;
    long checked = 0;
    for (const MotFn& f : corpus_arity2()) {
        const CElem a = to_value(integrate_vars(f, {0, 1}));
        const CElem b = to_value(integrate_vars(f, {1, 0}));
        ++checked;
        if (!(a == b))
            out.fail(f.to_string() + ": (x1,x2) -> " + a.to_string() + ", (x2,x1) -> " +
                     b.to_string());
    }
    const std::vector<std::vector<int>> orders3 = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const MotFn& f : corpus_arity3()) {
        const CElem base = to_value(integrate_vars(f, orders3.front()));
        ++checked;
        for (size_t k = 1; k < orders3.size(); ++k) {
            const CElem v = to_value(integrate_vars(f, orders3[k]));
            if (!(v == base)) {
                std::ostringstream msg;
                msg << f.to_string() << ": order " << k << " -> " << v.to_string()
                    << " vs " << base.to_string();
                out.fail(msg.str());
            }
        }
    }
    std::ostringstream s;
    s << checked << " functions, every coordinate order";
    out.stats = s.str();
    return out;
}

// ---------------------------------------------------------------------------
// 4. Fourier suite: convolution, inversion, Plancherel, product rule,
//    plus numeric cross-checks of transform values.
// ---------------------------------------------------------------------------

Outcome run_fourier_suite() {
    Outcome out;
    long identities = 0;
    for (int arity = 1; arity <= 2; ++arity) {
        const std::vector<MotFn> fns = (arity == 1) ? corpus_arity1() : corpus_arity2();
        const size_t n = fns.size();
        for (size_t k = 0; k < n; ++k) {
            const MotFn& f = fns[k];
            const MotFn& g = fns[(k * 7 + 3) % n];
            if (!fn_check(f).schwartz || !fn_check(g).schwartz) {
                out.fail("corpus entry is not Schwartz: " + f.to_string());
                continue;
            }
            const CheckReport reps[] = {check_inversion(f), check_convolution(f, g),
                                        check_plancherel(f, g),
                                        check_product_convolution(f, g)};
            for (const CheckReport& rep : reps) {
                ++identities;
                if (!rep.pass)
                    out.fail(rep.identity + " on " + f.to_string() + " / " +
                             g.to_string() + ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
            }
        }
    }

    // Numeric leg: transform values at sample frequencies are integrals of
    // twisted corpus functions, summed independently at two primes.
    const PadicConfig cfg5(5, 4);
    const PadicConfig cfg13(13, 4);
    const std::vector<VfElem> xis = {VfElem(), VfElem(1), tpow(1), tpow(-1)};
    long numeric = 0;
    const auto fns = corpus_arity1();
    for (size_t k = 0; k < fns.size(); k += 2) {
        const MotFn& f = fns[k];
        const MotFn hat = fourier0(f);
        for (const VfElem& xi : xis) {
            const CElem sym = fn_eval(hat, {xi});
            const MotFn twisted = fn_mul(f, exp_char(1, {xi}));
            for (const PadicConfig* cfg : {&cfg5, &cfg13}) {
                const CheckReport rep = oracle_check(sym, twisted, *cfg);
                ++numeric;
                if (!rep.pass)
                    out.fail("transform value at " + xi.to_string() + " of " +
                             f.to_string() + ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
            }
        }
    }
    std::ostringstream s;
    s << identities << " exact identities, " << numeric << " numeric transform values";
    out.stats = s.str();
    return out;
}

// ---------------------------------------------------------------------------
// 5. Poisson summation across subgroup lattices.
// ---------------------------------------------------------------------------

Outcome run_poisson() {
    Outcome out;
    const std::vector<Ball> subgroups = {Ball::valuation_ring(), Ball::maximal_ideal(),
                                         cb0(2), ob0(-1)};
    long checked = 0;
    for (const MotFn& f : corpus_arity1()) {
        for (const Ball& h : subgroups) {
            const CheckReport rep = check_poisson(f, Polyball({h}));
            ++checked;
            if (!rep.pass)
                out.fail("H=" + h.to_string() + ", f=" + f.to_string() +
                         ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
        }
    }
    for (const MotFn& f : corpus_arity2()) {
        for (const Ball& h : subgroups) {
            const CheckReport rep = check_poisson(f, Polyball({h, h}));
            ++checked;
            if (!rep.pass)
                out.fail("H=" + h.to_string() + "^2, f=" + f.to_string() +
                         ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
        }
    }

    // Numeric leg: both sides of the lattice identity are themselves
    // integrals; cross-sum them at p = 5.
    const PadicConfig cfg(5, 4);
    long numeric = 0;
    for (size_t k = 0; k < corpus_arity1().size(); k += 3) {
        const MotFn& f = corpus_arity1()[k];
        for (const Ball& h : {Ball::valuation_ring(), Ball::maximal_ideal()}) {
            const Polyball H({h});
            const MotFn inner = fn_mul(f, chi(H));
            const MotFn outer = fn_mul(fourier0(f), chi(H.annihilator()));
            const CheckReport r1 = oracle_check(integrate(inner), inner, cfg);
            const CheckReport r2 = oracle_check(integrate(outer), outer, cfg);
            numeric += 2;
            if (!r1.pass)
                out.fail("restricted integral: " + inner.to_string() + " lhs=" + r1.lhs +
                         " rhs=" + r1.rhs);
            if (!r2.pass)
                out.fail("dual-lattice integral: lhs=" + r2.lhs + " rhs=" + r2.rhs);
        }
    }
    std::ostringstream s;
    s << checked << " lattice identities, " << numeric << " numeric sides";
    out.stats = s.str();
    return out;
}

// ---------------------------------------------------------------------------
// 6. Distributions: coherence, transform exchange, tensor and convolution.
// ---------------------------------------------------------------------------

std::vector<CoherenceSample> coherence_samples(int arity) {
    std::vector<CoherenceSample> samples;
    const auto pts = probe_points(arity);
    const std::vector<std::pair<Rat, Rat>> windows = {
        {Rat(-1), Rat(-1)}, {Rat(-1), Rat(0)}, {Rat(-1), Rat(2)}, {Rat(0), Rat(0)},
        {Rat(0), Rat(1)},   {Rat(0), Rat(3)},  {Rat(1), Rat(1)},  {Rat(1), Rat(2)},
        {Rat(2), Rat(2)},   {Rat(2), Rat(4)}};
    for (const auto& p : pts)
        for (const auto& [g, gf] : windows) samples.push_back({p, g, gf});
    return samples;  // 10 windows x (2 * arity * 5) points => >= 100 per distribution
}

Outcome run_distributions() {
    Outcome out;

    std::vector<Dist> dists;
    const auto a1 = corpus_arity1();
    for (size_t k = 0; k < a1.size(); k += 3) dists.push_back(Dist::regular(a1[k]));
    for (size_t k = 0; k < a1.size(); k += 5)
        if (fn_check(a1[k]).bounded) dists.push_back(Dist::fourier_of(Dist::regular(a1[k])));
    dists.push_back(Dist::convolution(Dist::regular(ind1(cb0(0))),
                                      Dist::regular(ind1(cb0(1)))));
    dists.push_back(Dist::fourier_of(Dist::regular(nu_char(VfElem(1)))));

    long cohered = 0;
    for (const Dist& d : dists) {
        const auto samples = coherence_samples(d.arity());
        if (samples.size() < 100) {
            out.fail("sample plan too small for " + d.to_string());
            continue;
        }
        const CheckReport rep = check_coherence(d, samples);
        ++cohered;
        if (!rep.pass) out.fail(d.to_string() + ": " + rep.lhs + " vs " + rep.rhs);
    }

    // Transform exchange on 50 (distribution, test function) pairs.
    const std::vector<MotFn> tests = {ind1(Ball::valuation_ring()),
                                      ind1(Ball::maximal_ideal()),
                                      ind1(cb0(-1)),
                                      ind_char({cb0(-1)}, {VfElem(1)}),
                                      ind_char({cb0(0)}, {tpow(-1)})};
    long exchanged = 0;
    for (const Dist& d : dists) {
        if (d.arity() != 1) continue;
        for (const MotFn& f : tests) {
            if (exchanged >= 50) break;
            const CheckReport rep = check_dist_fourier(d, f);
            ++exchanged;
            if (!rep.pass)
                out.fail("exchange of " + d.to_string() + " against " + f.to_string() +
                         ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
        }
    }

    // Tensor compatibility as kernels.
    long tensors = 0;
    const std::vector<std::pair<MotFn, MotFn>> tensor_pairs = {
        {ind1(cb0(0)), ind1(ob0(0))},
        {ind_char({cb0(-1)}, {VfElem(1)}), ind1(cb0(1))},
        {fn_scale(ind1(cb0(0)), CElem(MotElem::a())), ind1(cb0(-1))}};
    for (const auto& [f, g] : tensor_pairs) {
        const Dist lhs = Dist::fourier_of(
            Dist::tensor(Dist::regular(f), Dist::regular(g)));
        const Dist rhs = Dist::tensor(Dist::fourier_of(Dist::regular(f)),
                                      Dist::fourier_of(Dist::regular(g)));
        const auto kl = dist_kernel(lhs);
        const auto kr = dist_kernel(rhs);
        ++tensors;
        if (!kl || !kr || !fn_equal(*kl, *kr))
            out.fail("tensor transform kernels differ for " + f.to_string() + " (x) " +
                     g.to_string());
    }

    // Convolution transforms multiply, paired against probe functions.
    long convs = 0;
    const std::vector<std::pair<MotFn, MotFn>> conv_pairs = {
        {ind1(cb0(0)), ind1(cb0(1))},
        {ind1(ob0(0)), ind_char({cb0(0)}, {VfElem(1)})},
        {ind1(cb0(-1)), ind1(ob0(-1))}};
    for (const auto& [f, g] : conv_pairs) {
        for (const MotFn& probe : {ind1(cb0(0)), ind_char({cb0(-1)}, {VfElem(1)})}) {
            const CheckReport rep = check_dist_conv_fourier(Dist::regular(f),
                                                            Dist::regular(g), probe);
            ++convs;
            if (!rep.pass)
                out.fail("convolution transform on " + f.to_string() + " * " +
                         g.to_string() + ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
        }
    }

    std::ostringstream s;
    s << cohered << " coherent distributions (100 windows each), " << exchanged
      << " exchange pairs, " << tensors << " tensor and " << convs
      << " convolution transforms";
    out.stats = s.str();
    return out;
}

// ---------------------------------------------------------------------------
// 7. The plane action: all defining relations over corpus x parameter grid.
// ---------------------------------------------------------------------------

Outcome run_weil() {
    Outcome out;
    std::vector<MuFn> corpus;
    const std::vector<RvElem> forms = {RvElem::one(), rv(tpow(1)), rv(VfElem::i()),
                                       rv(itpow(-1))};
    size_t k = 0;
    for (const MotFn& f : corpus_arity2()) {
        if (!fn_check(f).schwartz) continue;
        corpus.emplace_back(f, forms[k++ % forms.size()]);
    }
    const std::vector<VfElem> params = param_grid();
    const auto reports = verify_relations(corpus, params);
    for (const auto& rep : reports) {
        if (!rep.pass)
            out.fail(rep.identity + ": lhs=" + rep.lhs + " rhs=" + rep.rhs);
    }
    std::ostringstream s;
    s << corpus.size() << " pairs x " << params.size() << " parameters, "
      << reports.size() << " relations";
    out.stats = s.str();
    if (reports.size() < 6) out.fail("expected all six relation reports");
    return out;
}

// ---------------------------------------------------------------------------
// 8. Newton polygons and limit sets.
// ---------------------------------------------------------------------------

Outcome run_newton() {
    Outcome out;
    const VfPoly x = VfPoly::variable(2, 0);
    const VfPoly y = VfPoly::variable(2, 1);
    const VfPoly one = VfPoly::constant(2, VfElem(1));

    const auto expect_escape = [&](const VfPoly& g, const std::string& label) {
        const LimitResult r = limit_set(g);
        if (!r.escape) out.fail(label + ": expected an escaping branch");
    };
    expect_escape(x * y - one, "x*y - 1");
    expect_escape(x * y * y - y + x, "x*y^2 - y + x");

    const LimitResult two = limit_set(y * y - (one + x));
    if (two.escape || two.limits != std::vector<GaussQ>{GaussQ(Rat(-1)), GaussQ(Rat(1))})
        out.fail("y^2 - (1+x): expected limits {-1, 1}, got " + two.to_string());

    // Every reported limit is an exact root of the specialized polynomial.
    const std::vector<VfPoly> families = {y * y - (one + x), y * y - x, y * y + one + x,
                                          (y * y - (one + x)) * (y - one)};
    long limit_values = 0;
    for (const VfPoly& g : families) {
        const LimitResult r = limit_set(g);
        if (r.escape) {
            out.fail(g.to_string() + ": unexpectedly escaped");
            continue;
        }
        for (const GaussQ& l : r.limits) {
            ++limit_values;
            const VfElem value = g.eval({VfElem(), VfElem(l)});
            if (!value.is_zero())
                out.fail(g.to_string() + ": limit " + l.to_string() +
                         " is not a root at x=0");
        }
    }

    // Chain rule on 50 random pairs.
    std::mt19937 rng(8201);
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<long> expo(0, 2);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> gammad(-1, 1);
    const auto random_poly = [&]() {
        VfPoly p(1);
        const int n = nterms(rng);
        for (int i = 0; i < n; ++i) {
            int c = coeff(rng);
            if (c == 0) c = 1;
            p.add_term({expo(rng)}, VfElem::monomial(GaussQ(Rat(c)), Rat(gammad(rng))));
        }
        return p;
    };
    long chained = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const VfPoly f = random_poly();
        const VfPoly g = random_poly();
        const VfElem pt = (trial % 2 == 0) ? tpow(1) : VfElem(1) + tpow(2);
        const VfElem lhs = derivative({compose(f, {g})}, {pt})[0][0];
        const VfElem rhs =
            derivative({f}, {g.eval({pt})})[0][0] * derivative({g}, {pt})[0][0];
        ++chained;
        if (!(lhs == rhs))
            out.fail("chain rule: f=" + f.to_string() + ", g=" + g.to_string());
    }

    // Jacobian of uniform scaling over the parameter grid.
    long scaled = 0;
    for (const VfElem& a : param_grid()) {
        const VfElem j = jacobian({x.scaled(a), y.scaled(a)}, {VfElem(), VfElem()});
        ++scaled;
        if (!(j == a * a))
            out.fail("jacobian of scaling by " + a.to_string() + " gave " + j.to_string());
    }

    std::ostringstream s;
    s << "2 escapes, " << limit_values << " limit roots, " << chained
      << " chain-rule pairs, " << scaled << " jacobians";
    out.stats = s.str();
    return out;
}

// ---------------------------------------------------------------------------
// 9. Specialization oracle: ring homomorphism + integral agreement.
// ---------------------------------------------------------------------------

MotElem random_mot(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> shape(0, 3);
    std::uniform_int_distribution<long> idx(-3, 3);
    std::uniform_int_distribution<int> scalar(-3, 3);
    MotElem m(0);
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        MotElem term(scalar(rng));
        switch (shape(rng)) {
            case 0: term = term * MotElem::o(Rat(idx(rng))); break;
            case 1: term = term * MotElem::c(Rat(idx(rng))); break;
            case 2: term = term * MotElem::e(idx(rng) % 2 == 0 ? 1 : -1); break;
            default: break;
        }
        m = m + term;
    }
    return m;
}

CElem random_c(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 2);
    std::uniform_int_distribution<long> gamma(-1, 1);
    std::uniform_int_distribution<int> num(-2, 2);
    CElem v;
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        const VfElem w = VfElem::monomial(GaussQ(Rat(num(rng))), Rat(gamma(rng)));
        v = v + CElem(theta(w), random_mot(rng));
    }
    return v;
}

Outcome run_oracle_homomorphism() {
    Outcome out;
    const PadicConfig c5(5, 2);
    const PadicConfig c13(13, 2);
    std::mt19937 rng(9301);
    long pairs = 0;
    for (int trial = 0; trial < 250; ++trial) {
        const MotElem m1 = random_mot(rng);
        const MotElem m2 = random_mot(rng);
        ++pairs;
        for (const PadicConfig* cfg : {&c5, &c13}) {
            if (spec_mot(m1 * m2, *cfg) != spec_mot(m1, *cfg) * spec_mot(m2, *cfg))
                out.fail("volume image not multiplicative: " + m1.to_string() + " * " +
                         m2.to_string());
            if (spec_mot(m1 + m2, *cfg) != spec_mot(m1, *cfg) + spec_mot(m2, *cfg))
                out.fail("volume image not additive: " + m1.to_string() + " + " +
                         m2.to_string());
        }
    }
    for (int trial = 0; trial < 250; ++trial) {
        const CElem v1 = random_c(rng);
        const CElem v2 = random_c(rng);
        ++pairs;
        for (const PadicConfig* cfg : {&c5, &c13}) {
            if (!(spec_c(v1 * v2, *cfg) == spec_c(v1, *cfg) * spec_c(v2, *cfg)))
                out.fail("value image not multiplicative: " + v1.to_string());
            if (!(spec_c(v1 + v2, *cfg) == spec_c(v1, *cfg) + spec_c(v2, *cfg)))
                out.fail("value image not additive: " + v1.to_string());
        }
    }

    const PadicConfig f5(5, 4);
    const PadicConfig f13(13, 4);
    long integrals = 0;
    for (const MotFn& f : corpus_all()) {
        if (!fn_check(f).integrable) continue;
        const CElem symbolic = integrate(f);
        for (const PadicConfig* cfg : {&f5, &f13}) {
            const CheckReport rep = oracle_check(symbolic, f, *cfg);
            ++integrals;
            if (!rep.pass)
                out.fail("p=" + std::to_string(cfg->p) + ": " + f.to_string() +
                         " lhs=" + rep.lhs + " rhs=" + rep.rhs);
        }
    }
    std::ostringstream s;
    s << pairs << " random pairs at two primes, " << integrals
      << " corpus integrals vs coset sums";
    out.stats = s.str();
    if (integrals < 60) out.fail("expected every corpus function in the numeric leg");
    return out;
}

// ---------------------------------------------------------------------------
// 10. Determinism: byte-identical reports across runs and thread settings.
// ---------------------------------------------------------------------------

Outcome run_determinism() {
    Outcome out;
    const std::string source =
        "option p 5\n"
        "option level 3\n"
        "f = chi(cball(0, 0)) * expchar(t^-1 * x1)\n"
        "g = chi(oball(0, 1))\n"
        "integrate g\n"
        "fourier f\n"
        "convolve f g\n"
        "verify inversion f\n"
        "verify convolution f g\n"
        "verify plancherel f g\n"
        "h = chi(cball(0, 0) * cball(0, 0))\n"
        "H = cball(0, 0) * cball(0, 0)\n"
        "verify poisson h H\n"
        "weil \"s(t), u(t^-1), w\" h\n"
        "limit-set \"y^2 - (1 + x)\"\n"
        "oracle g\n";

    const auto run_with_threads = [&](const char* threads) {
        if (threads)
            setenv("MOTFOURIER_THREADS", threads, 1);
        else
            unsetenv("MOTFOURIER_THREADS");
        return run_script(parse(source));
    };

    const RunResult base = run_with_threads(nullptr);
    if (base.exit_code != 0) out.fail("reference run did not pass");
    long runs = 1;
    for (const char* threads : {(const char*)nullptr, "1", "2", "8"}) {
        const RunResult r = run_with_threads(threads);
        ++runs;
        if (r.json != base.json) {
            std::string label = threads ? threads : "(unset)";
            out.fail("JSON differs with MOTFOURIER_THREADS=" + label);
        }
    }
    unsetenv("MOTFOURIER_THREADS");

    // The same stability for a symbolic digest that exercises reduction order.
    std::ostringstream first, second;
    for (int round = 0; round < 2; ++round) {
        std::ostringstream& sink = (round == 0) ? first : second;
        for (const MotFn& f : corpus_all()) {
            if (!fn_check(f).integrable) continue;
            sink << integrate(f).to_string() << '\n';
            if (f.arity() == 1) sink << fourier0(f).to_string() << '\n';
        }
    }
    if (first.str() != second.str()) out.fail("symbolic digest differs between rounds");

    std::ostringstream s;
    s << runs << " script runs compared, plus a two-round symbolic digest";
    out.stats = s.str();
    return out;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> body;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--only" && k + 1 < argc) {
            only = std::atoi(argv[++k]);
        } else if (arg == "--help") {
            std::cout << "usage: acceptance [--only N]\n";
            return 0;
        } else {
            std::cerr << "unknown argument: " << arg << "\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "character rule", run_character_rule},
        {2, "dual volumes", run_dual_volumes},
        {3, "fubini", run_fubini},
        {4, "fourier suite", run_fourier_suite},
        {5, "poisson summation", run_poisson},
        {6, "distributions", run_distributions},
        {7, "plane action relations", run_weil},
        {8, "newton limits", run_newton},
        {9, "specialization oracle", run_oracle_homomorphism},
        {10, "determinism", run_determinism},
    };

    bool all_pass = true;
    bool ran_any = false;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        ran_any = true;
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out.fail(std::string("unhandled error: ") + e.what());
        }
        const bool pass = out.failures.empty();
        all_pass = all_pass && pass;
        std::ostringstream line;
        line << "criterion " << (c.id < 10 ? " " : "") << c.id << "  " << c.name;
        std::string text = line.str();
        if (text.size() < 40) text.append(40 - text.size(), ' ');
        std::cout << text << (pass ? "PASS" : "FAIL");
        if (!out.stats.empty()) std::cout << "  (" << out.stats << ")";
        std::cout << "\n";
        for (const auto& f : out.failures) std::cout << "    - " << f << "\n";
    }
    if (!ran_any) {
        std::cerr << "no criterion selected\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
