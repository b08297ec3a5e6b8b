#include "motfourier/fourier.hpp"

#include "motfourier/errors.hpp"

namespace motfourier {

namespace {

// The pairing character exp<theta(sum_i x_i y_{n+i})> on 2n variables.
MotFn pairing_character(int n) {
    Phase q;
    for (int i = 0; i < n; ++i) q.add_bilinear(i, n + i, VfElem(1));
    MotFn out(2 * n);
    out.add_packet(WavePacket(2 * n, {}, std::move(q), CElem(1)));
    return out;
}

MotFn embed_low(const MotFn& f, int total) {
    std::map<int, AffineForm> images;
    for (int i = 0; i < f.arity(); ++i) images.emplace(i, AffineForm::variable(i));
    return fn_subst_affine(f, total, images);
}

std::vector<int> low_block(int n) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    return order;
}

void require_ib(const MotFn& f, const char* who) {
    FnFlags flags = fn_check(f);
    if (!flags.bounded) throw NotBoundedError(std::string(who) + ": support is not bounded");
    if (!flags.integrable)
        throw NotIntegrableError(std::string(who) + ": a coordinate is unconstrained");
}

// A point of h whose coordinates sit on each factor's boundary; translating
// by it exercises invariance as sharply as the packet class allows.
std::vector<VfElem> boundary_point(const Polyball& h) {
    std::vector<VfElem> p;
    p.reserve(h.arity());
    for (const auto& b : h.factors()) {
        Rat g = b.kind() == BallKind::Closed ? b.radius() : b.radius() + 1;
        p.push_back(VfElem::t_pow(g));
    }
    return p;
}

CheckReport fn_report(std::string identity, const MotFn& lhs, const MotFn& rhs) {
    MotFn l = fn_reduce(lhs), r = fn_reduce(rhs);
    return CheckReport{std::move(identity), l.to_string(), r.to_string(), fn_equal(l, r)};
}

CheckReport value_report(std::string identity, const CElem& lhs, const CElem& rhs) {
    return CheckReport{std::move(identity), lhs.to_string(), rhs.to_string(), lhs == rhs};
}

}  // namespace

bool is_invariant_under(const MotFn& f, const Polyball& h) {
    if (h.arity() != f.arity()) throw EngineError("subgroup arity mismatch");
    std::vector<VfElem> step = boundary_point(h);
    std::vector<std::vector<VfElem>> shifts;
    shifts.push_back(step);
    std::vector<VfElem> scaled, deep;
    for (const auto& s : step) {
        scaled.push_back(VfElem::i() * s);
        deep.push_back(VfElem::t_pow(Rat(1)) * s);
    }
    shifts.push_back(std::move(scaled));
    shifts.push_back(std::move(deep));
    for (const auto& s : shifts) {
        if (!fn_equal(fn_translate(f, s), f)) return false;
    }
    return true;
}

MotFn fourier0(const MotFn& f) {
    require_ib(f, "fourier");
    const int n = f.arity();
    if (n == 0) throw EngineError("fourier of a nullary function");
    MotFn big = fn_mul(embed_low(f, 2 * n), pairing_character(n));
    return integrate_vars(big, low_block(n));
}

MotFn fourier(const MotFn& f, const FourierConfig& cfg) {
    if (!cfg.subgroup) return fourier0(f);
    if (!is_invariant_under(f, *cfg.subgroup))
        throw NotInvariantError("function is not invariant under the configured subgroup");
    return fn_scale(fourier0(f), CElem(cfg.group_volume().inverse()));
}

MotFn fourier_back(const MotFn& g, const FourierConfig& cfg) {
    if (!cfg.subgroup) return fourier0(g);
    // The domain is the annihilator group: restrict, then transform without
    // normalization.
    return fourier0(fn_mul(g, chi(cfg.subgroup->annihilator())));
}

MotFn reflect(const MotFn& f) { return fn_scale_arg(f, VfElem(-1)); }

CheckReport check_inversion(const MotFn& f, const FourierConfig& cfg) {
    const int n = f.arity();
    MotFn once = fourier(f, cfg);
    require_ib(once, "inversion");
    MotFn twice = fourier_back(once, cfg);
    MotFn lhs = reflect(twice);
    MotFn rhs = fn_scale(f, CElem(MotElem::e(n) * cfg.group_volume().inverse()));
    return fn_report("inversion", lhs, rhs);
}

CheckReport check_convolution(const MotFn& f, const MotFn& g, const FourierConfig& cfg) {
    MotFn conv = fn_scale(convolve(f, g), CElem(cfg.group_volume().inverse()));
    MotFn lhs = fourier(conv, cfg);
    MotFn rhs = fn_mul(fourier(f, cfg), fourier(g, cfg));
    return fn_report("convolution-formula", lhs, rhs);
}

CheckReport check_plancherel(const MotFn& f, const MotFn& g, const FourierConfig& cfg) {
    const int n = f.arity();
    MotElem volume_inv = cfg.group_volume().inverse();
    CElem lhs = CElem(MotElem::e(n) * volume_inv * volume_inv) * integrate(fn_mul(f, g));
    MotFn dual_product = fn_mul(fourier(f, cfg), fourier(reflect(g), cfg));
    if (cfg.subgroup) dual_product = fn_mul(dual_product, chi(cfg.subgroup->annihilator()));
    CElem rhs = integrate(dual_product);
    return value_report("plancherel", lhs, rhs);
}

CheckReport check_plancherel_classical(const MotFn& f, const MotFn& g) {
    CElem lhs = integrate(fn_mul(fourier0(f), g));
    CElem rhs = integrate(fn_mul(f, fourier0(g)));
    return value_report("plancherel-classical", lhs, rhs);
}

CheckReport check_product_convolution(const MotFn& f, const MotFn& g) {
    const int n = f.arity();
    MotFn lhs = fourier0(fn_mul(f, g));
    MotFn rhs = fn_scale(convolve(fourier0(f), fourier0(g)), CElem(MotElem::e(-n)));
    return fn_report("product-convolution", lhs, rhs);
}

CheckReport check_poisson(const MotFn& f, const Polyball& h) {
    const int n = f.arity();
    if (h.arity() != n) throw EngineError("subgroup arity mismatch");

    // Precondition: the subgroup average y -> Integral_{x in h} f(x + y)
    // exists, is bounded with every coordinate constrained, and is locally
    // constant at 0.
    std::map<int, AffineForm> sum_images;
    for (int i = 0; i < n; ++i)
        sum_images.emplace(i, AffineForm::variable(i) + AffineForm::variable(n + i));
    MotFn shifted = fn_subst_affine(f, 2 * n, sum_images);
    MotFn averaged(n);
    try {
        averaged = integrate_vars(fn_mul(shifted, embed_low(chi(h), 2 * n)), low_block(n));
        require_ib(averaged, "poisson");
    } catch (const EngineError& err) {
        throw HypothesisFailedError(std::string("subgroup average is not integrable-bounded: ") +
                                    err.what());
    }
    Rat beta;
    try {
        beta = iota_bound(averaged);
    } catch (const NotBoundedError& err) {
        throw HypothesisFailedError(std::string("subgroup average admits no constancy radius: ") +
                                    err.what());
    }
    CElem at_zero = fn_eval(averaged, std::vector<VfElem>(n, VfElem()));
    for (const Rat& off : {Rat(beta + 1), Rat(beta + 2)}) {
        std::vector<VfElem> probe(n, VfElem::t_pow(off));
        if (!(fn_eval(averaged, probe) == at_zero))
            throw HypothesisFailedError("subgroup average is not locally constant at 0");
    }
    try {
        require_ib(fourier(averaged, FourierConfig::over(h)), "poisson");
    } catch (const EngineError& err) {
        throw HypothesisFailedError(std::string("transform of the subgroup average is not "
                                                "integrable-bounded: ") +
                                    err.what());
    }

    MotElem h_volume = polyball_volume(h);
    CElem lhs = CElem(MotElem::e(n) * h_volume.inverse()) * integrate(fn_mul(f, chi(h)));
    CElem rhs = integrate(fn_mul(fourier0(f), chi(h.annihilator())));
    return value_report("poisson", lhs, rhs);
}

}  // namespace motfourier
