#include <motfourier/weil.hpp>

#include <motfourier/errors.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace motfourier {

namespace {

RvElem rv_inverse(const RvElem& r) {
    if (r.is_infinite()) throw DivisionByZeroError("inverse of the infinite leading-term datum");
    return RvElem(r.coeff().inverse(), Rat(-r.gamma()));
}

// --- shift-graded normal form of volume coefficients -------------------------
//
// A closed-ball volume of index g grades as b.l^g, an open-ball volume as
// a.l^g, and the invertible product e as a.b; a whole side additionally
// carries l^{v(form)}.  Two pair presentations that differ by a fiberwise
// change of variables have equal graded coefficients, because the move
// shifts ball indices by exactly the valuation it contributes to the form.

struct LKey {
    long a_exp = 0;
    long b_exp = 0;
    Rat l_exp;

    friend bool operator<(const LKey& x, const LKey& y) {
        if (x.a_exp != y.a_exp) return x.a_exp < y.a_exp;
        if (x.b_exp != y.b_exp) return x.b_exp < y.b_exp;
        return x.l_exp < y.l_exp;
    }
    friend bool operator==(const LKey& x, const LKey& y) {
        return x.a_exp == y.a_exp && x.b_exp == y.b_exp && x.l_exp == y.l_exp;
    }
};

LKey fold_monomial(const MotMonomial& m, const Rat& shift) {
    LKey k;
    k.a_exp = m.e_exp();
    k.b_exp = m.e_exp();
    k.l_exp = shift;
    for (const auto& [gamma, exp] : m.o_exps()) {
        k.a_exp += exp;
        k.l_exp += gamma * Rat(exp);
    }
    for (const auto& [gamma, exp] : m.c_exps()) {
        k.b_exp += exp;
        k.l_exp += gamma * Rat(exp);
    }
    return k;
}

bool monomial_has_symbol(const MotMonomial& m) {
    return m.e_exp() != 0 || !m.o_exps().empty() || !m.c_exps().empty();
}

// Every additive term of every packet coefficient carries a volume symbol,
// so a unit-Jacobian fiber move can reach each term.
bool all_symbolic(const MotFn& f) {
    for (const auto& pk : f.packets())
        for (const auto& [omega, me] : pk.coeff.terms())
            for (const auto& [mon, n] : me.terms())
                if (!monomial_has_symbol(mon)) return false;
    return true;
}

using FoldedCoeff = std::map<OmegaElem, std::map<LKey, Int>>;

void fold_into(FoldedCoeff& dst, const CElem& c, const Rat& shift) {
    for (const auto& [omega, me] : c.terms()) {
        auto& bucket = dst[omega];
        for (const auto& [mon, n] : me.terms()) bucket[fold_monomial(mon, shift)] += n;
    }
}

void prune_zeros(FoldedCoeff& fc) {
    for (auto it = fc.begin(); it != fc.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();) {
            if (jt->second == 0)
                jt = it->second.erase(jt);
            else
                ++jt;
        }
        if (it->second.empty())
            it = fc.erase(it);
        else
            ++it;
    }
}

FoldedCoeff fold_value(const CElem& c, const Rat& shift) {
    FoldedCoeff fc;
    fold_into(fc, c, shift);
    prune_zeros(fc);
    return fc;
}

// Packets keyed by literal (support, phase); coefficients in graded form.
using PKey = std::pair<std::vector<Constraint>, Phase>;

std::map<PKey, FoldedCoeff> folded_packets(const MotFn& f, const Rat& shift) {
    std::map<PKey, FoldedCoeff> out;
    for (const auto& pk : f.packets()) fold_into(out[PKey{pk.support, pk.phase}], pk.coeff, shift);
    for (auto it = out.begin(); it != out.end();) {
        prune_zeros(it->second);
        if (it->second.empty())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

bool folded_match(const MotFn& lhs, const Rat& lshift, const MotFn& rhs, const Rat& rshift) {
    return folded_packets(lhs, lshift) == folded_packets(rhs, rshift);
}

// --- diagonal substitution witness -------------------------------------------
//
// (g, mu) and (g o A, rv(det A).mu) present the same pair.  For coefficients
// with no volume symbol the graded comparison says nothing, so look for a
// diagonal or antidiagonal A realizing the given form ratio outright.

MotFn compose_antidiagonal(const MotFn& f, const VfElem& b1, const VfElem& b2) {
    std::map<int, AffineForm> images;
    images[0] = AffineForm::variable(1).scaled(b1);
    images[1] = AffineForm::variable(0).scaled(b2);
    return fn_subst_affine(f, 2, images);
}

bool diagonal_witness(const MotFn& lhs, const MotFn& rhs, const RvElem& delta) {
    if (delta.is_infinite()) return false;
    const GaussQ c = delta.coeff();
    const Rat k = delta.gamma();

    std::set<GaussQ> units{GaussQ(Rat(1)), GaussQ(Rat(-1)), GaussQ::i(), -GaussQ::i(),
                           c,              -c,              GaussQ::i() * c,
                           -(GaussQ::i() * c)};
    std::set<Rat> exps{Rat(0), Rat(k / 2), k};

    std::set<std::pair<VfElem, VfElem>> seen;
    const VfElem delta_mon = VfElem::monomial(c, k);
    for (const auto& u : units) {
        for (const auto& m : exps) {
            const VfElem b1 = VfElem::monomial(u, m);
            // Diagonal move x -> (b1 x1, b2 x2): det = b1 b2 must present delta.
            {
                const VfElem b2 = delta_mon * b1.inverse();
                if (seen.insert({b1, b2}).second &&
                    fn_equal(fn_scale_arg(lhs, std::vector<VfElem>{b1, b2}), rhs))
                    return true;
            }
            // Antidiagonal move x -> (b1 x2, b2 x1): det = -b1 b2.
            {
                const VfElem b2 = -delta_mon * b1.inverse();
                if (seen.insert({-b1, b2}).second && fn_equal(compose_antidiagonal(lhs, b1, b2), rhs))
                    return true;
            }
        }
    }
    return false;
}

enum class MuPath { Unequal, ExactForm, Graded, Witness };

MuPath mu_equal_detail(const MuFn& lhs, const MuFn& rhs) {
    if (lhs.fn.arity() != rhs.fn.arity()) return MuPath::Unequal;
    if (lhs.form == rhs.form)
        return fn_equal(lhs.fn, rhs.fn) ? MuPath::ExactForm : MuPath::Unequal;

    const RvElem delta = rhs.form * rv_inverse(lhs.form);
    const MotFn left = fn_reduce(fn_normalize(lhs.fn));
    const MotFn right = fn_reduce(fn_normalize(rhs.fn));
    if (all_symbolic(left) && all_symbolic(right) &&
        folded_match(left, Rat(lhs.form.gamma()), right, Rat(rhs.form.gamma())))
        return MuPath::Graded;
    if (diagonal_witness(left, right, delta)) return MuPath::Witness;
    return MuPath::Unequal;
}

// Independent spot check at shared probe points: exact values for equal
// forms, graded values otherwise.  Witness-path instances are already probed
// through the substituted comparison.
bool probe_instance(const MuFn& lhs, const MuFn& rhs, MuPath path, size_t limit) {
    if (path == MuPath::Witness) return true;
    const auto pts = probe_points({&lhs.fn, &rhs.fn}, lhs.fn.arity(), limit);
    for (const auto& p : pts) {
        const CElem lv = fn_eval(lhs.fn, p);
        const CElem rv_ = fn_eval(rhs.fn, p);
        if (path == MuPath::ExactForm) {
            if (!(lv == rv_)) return false;
        } else if (fold_value(lv, Rat(lhs.form.gamma())) != fold_value(rv_, Rat(rhs.form.gamma()))) {
            return false;
        }
    }
    return true;
}

struct RelationTally {
    std::string identity;
    size_t checked = 0;
    bool pass = true;
    std::string first_lhs;
    std::string first_rhs;

    void record(const std::string& inst, const MuFn& lhs, const MuFn& rhs, bool ok) {
        ++checked;
        if (ok || !pass) return;
        pass = false;
        first_lhs = inst + ": " + mu_to_string(lhs);
        first_rhs = inst + ": " + mu_to_string(rhs);
    }

    CheckReport report() const {
        std::ostringstream agreed;
        agreed << "all " << checked << " instances agree";
        if (pass) return CheckReport{identity, agreed.str(), agreed.str(), true};
        return CheckReport{identity, first_lhs, first_rhs, false};
    }
};

bool check_instance(const MuFn& lhs, const MuFn& rhs, size_t probe_limit) {
    const MuPath path = mu_equal_detail(lhs, rhs);
    if (path == MuPath::Unequal) return false;
    return probe_instance(lhs, rhs, path, probe_limit);
}

}  // namespace

MuFn::MuFn(MotFn f, RvElem mu) : fn(std::move(f)), form(std::move(mu)) {
    if (fn.arity() != 2) throw EngineError("pair functions live on the plane (arity 2)");
    if (form.is_infinite()) throw DivisionByZeroError("zero volume-form coefficient");
}

SL2Gen sl2_u(const VfElem& b) { return SL2Gen{SL2Gen::Kind::U, b}; }
SL2Gen sl2_s(const VfElem& a) { return SL2Gen{SL2Gen::Kind::S, a}; }
SL2Gen sl2_w() { return SL2Gen{SL2Gen::Kind::W, VfElem()}; }

MotFn nu(const VfElem& b) { return nu_char(b); }

MuFn weil_apply(const SL2Gen& g, const MuFn& input) {
    switch (g.kind) {
        case SL2Gen::Kind::U: {
            if (g.param.is_zero()) return input;
            return MuFn(fn_mul(nu_char(g.param * VfElem::pi()), input.fn), input.form);
        }
        case SL2Gen::Kind::S: {
            if (!g.param.is_monomial())
                throw NonMonomialError("diagonal parameter must be a nonzero monomial");
            return MuFn(fn_scale_arg(input.fn, g.param), rv(g.param) * input.form);
        }
        case SL2Gen::Kind::W: {
            if (!fn_check(input.fn).schwartz)
                throw NotSchwartzError("rotation needs a compactly supported, smooth operand");
            MotFn out = fn_scale(fn_scale_arg(fourier0(input.fn), VfElem::pi()),
                                 CElem(MotElem::e(-1)));
            return MuFn(std::move(out), rv(-(VfElem::pi().inverse())) * input.form);
        }
    }
    throw EngineError("unknown generator");
}

MuFn weil_apply(const SL2Word& word, const MuFn& input) {
    MuFn current = input;
    for (auto it = word.rbegin(); it != word.rend(); ++it) current = weil_apply(*it, current);
    return current;
}

bool mu_equal(const MuFn& lhs, const MuFn& rhs) {
    return mu_equal_detail(lhs, rhs) != MuPath::Unequal;
}

std::string mu_to_string(const MuFn& m) {
    return "(" + m.fn.to_string() + ", " + m.form.to_string() + ".mu)";
}

std::vector<CheckReport> verify_relations(const std::vector<MuFn>& corpus,
                                          const std::vector<VfElem>& params) {
    constexpr size_t kProbes = 20;
    for (const auto& p : params)
        if (!p.is_monomial())
            throw NonMonomialError("relation parameters must be nonzero monomials");

    RelationTally r1{"u(a) u(b) = u(a+b)"};
    RelationTally r2{"s(a) s(b) = s(ab)"};
    RelationTally r3{"w s(a) = s(a^-1) w"};
    RelationTally r4{"w w = s(-1)"};
    RelationTally r5{"w u(a) w = s(-a^-1) u(-a) w u(-a^-1)"};
    RelationTally r6{"hat(f * nu_b)(b x) = e hat f(b x) nu_-b(x) over rv(b^-1)"};

    for (const auto& f : corpus) {
        for (const auto& a : params) {
            const std::string pa = "a=" + a.to_string();
            for (const auto& b : params) {
                const std::string pab = pa + ", b=" + b.to_string();
                {
                    const MuFn lhs = weil_apply(SL2Word{sl2_u(a), sl2_u(b)}, f);
                    const MuFn rhs = weil_apply(sl2_u(a + b), f);
                    r1.record(pab, lhs, rhs, check_instance(lhs, rhs, kProbes));
                }
                {
                    const MuFn lhs = weil_apply(SL2Word{sl2_s(a), sl2_s(b)}, f);
                    const MuFn rhs = weil_apply(sl2_s(a * b), f);
                    r2.record(pab, lhs, rhs, check_instance(lhs, rhs, kProbes));
                }
            }
            {
                const MuFn lhs = weil_apply(SL2Word{sl2_w(), sl2_s(a)}, f);
                const MuFn rhs = weil_apply(SL2Word{sl2_s(a.inverse()), sl2_w()}, f);
                r3.record(pa, lhs, rhs, check_instance(lhs, rhs, kProbes));
            }
            {
                const MuFn lhs = weil_apply(SL2Word{sl2_w(), sl2_u(a), sl2_w()}, f);
                const MuFn rhs = weil_apply(SL2Word{sl2_s(-(a.inverse())), sl2_u(-a), sl2_w(),
                                                    sl2_u(-(a.inverse()))},
                                            f);
                r5.record(pa, lhs, rhs, check_instance(lhs, rhs, kProbes));
            }
            {
                const std::string pb = "b=" + a.to_string();
                const MuFn lhs(fn_scale_arg(fourier0(convolve(f.fn, nu(a))), a), f.form);
                const MuFn rhs(fn_scale(fn_mul(fn_scale_arg(fourier0(f.fn), a), nu(-a)),
                                        CElem(MotElem::e(1))),
                               rv(a.inverse()) * f.form);
                r6.record(pb, lhs, rhs, check_instance(lhs, rhs, kProbes));
            }
        }
        {
            const MuFn lhs = weil_apply(SL2Word{sl2_w(), sl2_w()}, f);
            const MuFn rhs = weil_apply(sl2_s(VfElem(-1)), f);
            r4.record("w.w", lhs, rhs, check_instance(lhs, rhs, kProbes));
        }
    }

    return {r1.report(), r2.report(), r3.report(), r4.report(),
            r5.report(), r6.report()};
}

}  // namespace motfourier
