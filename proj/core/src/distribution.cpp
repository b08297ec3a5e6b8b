#include "motfourier/distribution.hpp"

#include "motfourier/errors.hpp"
#include "motfourier/integrate.hpp"

namespace motfourier {

struct Dist::Node {
    Kind kind;
    int arity;
    std::optional<MotFn> fn;  // Regular
    std::shared_ptr<const Node> left, right;
};

Dist Dist::regular(MotFn f) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Regular;
    node->arity = f.arity();
    node->fn = std::move(f);
    return Dist(std::move(node));
}

Dist Dist::fourier_of(Dist inner) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::FourierOf;
    node->arity = inner.arity();
    node->left = std::move(inner.node_);
    return Dist(std::move(node));
}

Dist Dist::tensor(Dist first, Dist second) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Tensor;
    node->arity = first.arity() + second.arity();
    node->left = std::move(first.node_);
    node->right = std::move(second.node_);
    return Dist(std::move(node));
}

Dist Dist::convolution(Dist first, Dist second) {
    if (first.arity() != second.arity())
        throw EngineError("convolving distributions of different arity");
    if (!support_bound(first) && !support_bound(second))
        throw NotBoundedError("convolution needs one factor with a certified support bound");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Conv;
    node->arity = first.arity();
    node->left = std::move(first.node_);
    node->right = std::move(second.node_);
    return Dist(std::move(node));
}

Dist::Kind Dist::kind() const { return node_->kind; }
int Dist::arity() const { return node_->arity; }

const MotFn& Dist::fn() const {
    if (node_->kind != Kind::Regular) throw EngineError("not a regular distribution node");
    return *node_->fn;
}

Dist Dist::child(int i) const {
    const auto& ptr = i == 0 ? node_->left : node_->right;
    if (!ptr) throw EngineError("distribution node has no such child");
    return Dist(ptr);
}

std::string Dist::to_string() const {
    switch (node_->kind) {
        case Kind::Regular:
            return "regular(" + node_->fn->to_string() + ")";
        case Kind::FourierOf:
            return "fourier(" + Dist(node_->left).to_string() + ")";
        case Kind::Tensor:
            return "tensor(" + Dist(node_->left).to_string() + ", " +
                   Dist(node_->right).to_string() + ")";
        case Kind::Conv:
            return "conv(" + Dist(node_->left).to_string() + ", " +
                   Dist(node_->right).to_string() + ")";
    }
    return "?";
}

namespace {

MotFn embed_block(const MotFn& f, int total, int offset) {
    std::map<int, AffineForm> images;
    for (int i = 0; i < f.arity(); ++i) images.emplace(i, AffineForm::variable(offset + i));
    return fn_subst_affine(f, total, images);
}

std::vector<int> block_order(int from, int count) {
    std::vector<int> order(count);
    for (int i = 0; i < count; ++i) order[i] = from + i;
    return order;
}

MotFn pairing_block(int n) {
    Phase q;
    for (int i = 0; i < n; ++i) q.add_bilinear(i, n + i, VfElem(1));
    MotFn out(2 * n);
    out.add_packet(WavePacket(2 * n, {}, std::move(q), CElem(1)));
    return out;
}

Polyball centered_polyball(int n, const Rat& radius, BallKind kind) {
    std::vector<Ball> factors(n, Ball(VfElem(), radius, kind));
    return Polyball(std::move(factors));
}

Polyball polyball_around(const std::vector<VfElem>& point, const Rat& radius) {
    std::vector<Ball> factors;
    factors.reserve(point.size());
    for (const auto& c : point) factors.push_back(Ball::open(c, radius));
    return Polyball(std::move(factors));
}

MotFn require_kernel(const Dist& d, const char* who) {
    auto k = dist_kernel(d);
    if (!k)
        throw UnsupportedDistributionError(std::string(who) +
                                           ": no level-free realization for " + d.to_string());
    return *std::move(k);
}

void require_schwartz(const MotFn& f, const char* who) {
    FnFlags flags = fn_check(f);
    if (!flags.bounded) throw NotBoundedError(std::string(who) + ": test function not bounded");
    if (!flags.integrable)
        throw NotIntegrableError(std::string(who) + ": test function not integrable");
}

// Smallest closed ball around 0 containing the given ball.
Ball closed_hull_around_zero(const Ball& b) {
    Rat radius = b.radius();
    Gamma center_val = b.center().val();
    if (center_val.is_finite() && cmp_rat(center_val.value(), radius) < 0)
        radius = center_val.value();
    return Ball::closed(VfElem(), radius);
}

// hat D(f) through the definition: the test function paired against the
// level realization of the transform at the constancy bound of f, which for
// a kernel-backed inner node collapses to one double integral.
CElem transform_apply_defining(const Dist& inner, const MotFn& f) {
    const int n = f.arity();
    MotFn kernel = require_kernel(inner, "transform application");
    Rat beta = iota_bound(f);
    MotFn paired = fn_mul(kernel, chi(centered_polyball(n, -beta, BallKind::Closed)));
    MotFn big = fn_mul(fn_mul(embed_block(paired, 2 * n, 0), embed_block(f, 2 * n, n)),
                       pairing_block(n));
    return integrate(big);
}

}  // namespace

std::optional<MotFn> dist_kernel(const Dist& d) {
    switch (d.kind()) {
        case Dist::Kind::Regular:
            return d.fn();
        case Dist::Kind::FourierOf: {
            auto inner = dist_kernel(d.child(0));
            if (!inner || !fn_check(*inner).bounded) return std::nullopt;
            return fourier0(*inner);
        }
        case Dist::Kind::Tensor: {
            auto k1 = dist_kernel(d.child(0));
            auto k2 = dist_kernel(d.child(1));
            if (!k1 || !k2) return std::nullopt;
            const int total = d.arity();
            return fn_mul(embed_block(*k1, total, 0), embed_block(*k2, total, k1->arity()));
        }
        case Dist::Kind::Conv: {
            auto k1 = dist_kernel(d.child(0));
            auto k2 = dist_kernel(d.child(1));
            if (!k1 || !k2) return std::nullopt;
            return convolve(*k1, *k2);
        }
    }
    return std::nullopt;
}

MotFn dist_level_fn(const Dist& d, const Rat& gamma) {
    const int n = d.arity();
    switch (d.kind()) {
        case Dist::Kind::Regular: {
            // a -> Integral_{ball(a, gamma)} f, parametrically in a.
            MotFn big = embed_block(d.fn(), 2 * n, 0);
            std::vector<Constraint> offsets;
            for (int i = 0; i < n; ++i)
                offsets.emplace_back(AffineForm::variable(i) - AffineForm::variable(n + i),
                                     Ball::open(VfElem(), gamma));
            MotFn window(2 * n);
            window.add_packet(WavePacket(2 * n, std::move(offsets), Phase(), CElem(1)));
            return integrate_vars(fn_mul(big, window), block_order(0, n));
        }
        case Dist::Kind::FourierOf: {
            // a -> O_gamma^n * Integral_{closed(0,-gamma)} exp<theta(a.y)> K(y).
            MotFn kernel = require_kernel(d.child(0), "transform level");
            MotFn paired =
                fn_mul(kernel, chi(centered_polyball(n, -gamma, BallKind::Closed)));
            MotFn big = fn_mul(embed_block(paired, 2 * n, 0), pairing_block(n));
            MotFn out = integrate_vars(big, block_order(0, n));
            return fn_scale(out, CElem(MotElem::o(gamma, n)));
        }
        case Dist::Kind::Tensor: {
            MotFn left = dist_level_fn(d.child(0), gamma);
            MotFn right = dist_level_fn(d.child(1), gamma);
            return fn_mul(embed_block(left, n, 0), embed_block(right, n, left.arity()));
        }
        case Dist::Kind::Conv: {
            MotFn k1 = require_kernel(d.child(0), "convolution level");
            MotFn k2 = require_kernel(d.child(1), "convolution level");
            return dist_level_fn(Dist::regular(convolve(k1, k2)), gamma);
        }
    }
    throw EngineError("unreachable distribution node");
}

CElem dist_eval(const Dist& d, const std::vector<VfElem>& point, const Rat& gamma) {
    if (static_cast<int>(point.size()) != d.arity())
        throw EngineError("evaluation point arity mismatch");
    switch (d.kind()) {
        case Dist::Kind::Regular:
            return integrate(fn_mul(d.fn(), chi(polyball_around(point, gamma))));
        case Dist::Kind::FourierOf: {
            // D(hat chi_ball): O_gamma^n exp_a on the dual closed polyball.
            const int n = d.arity();
            MotFn dual_bump = fn_scale(
                fn_mul(exp_char(n, point), chi(centered_polyball(n, -gamma, BallKind::Closed))),
                CElem(MotElem::o(gamma, n)));
            return dist_apply(d.child(0), dual_bump);
        }
        case Dist::Kind::Tensor: {
            Dist left = d.child(0);
            std::vector<VfElem> p1(point.begin(), point.begin() + left.arity());
            std::vector<VfElem> p2(point.begin() + left.arity(), point.end());
            CElem v1 = dist_eval(left, p1, gamma);
            return v1 * dist_eval(d.child(1), p2, gamma);
        }
        case Dist::Kind::Conv:
            return dist_apply(d, chi(polyball_around(point, gamma)));
    }
    throw EngineError("unreachable distribution node");
}

CElem dist_apply(const Dist& d, const MotFn& f) {
    if (f.arity() != d.arity()) throw EngineError("test function arity mismatch");
    require_schwartz(f, "dist_apply");
    if (f.is_zero_fn()) return CElem();
    if (auto kernel = dist_kernel(d)) return integrate(fn_mul(f, *kernel));
    switch (d.kind()) {
        case Dist::Kind::FourierOf:
            return transform_apply_defining(d.child(0), f);
        case Dist::Kind::Tensor: {
            // Pair against the level realization at the constancy bound.
            const int n = d.arity();
            Rat beta = iota_bound(f);
            MotFn level = dist_level_fn(d, beta);
            return integrate(
                fn_mul(f, fn_scale(level, CElem(MotElem::o(beta, n).inverse()))));
        }
        default:
            throw UnsupportedDistributionError("no applicable realization for " + d.to_string());
    }
}

std::optional<Polyball> support_bound(const Dist& d) {
    switch (d.kind()) {
        case Dist::Kind::Regular: {
            const MotFn& f = d.fn();
            if (f.is_zero_fn())
                return centered_polyball(d.arity(), Rat(0), BallKind::Open);
            if (!fn_check(f).bounded) return std::nullopt;
            MotFn norm = fn_normalize(f);
            std::vector<Ball> hull;
            for (int i = 0; i < f.arity(); ++i) {
                std::optional<Ball> acc;
                for (const auto& p : norm.packets()) {
                    auto b = p.plain_ball(i);
                    if (!b) return std::nullopt;
                    acc = acc ? ball_join(*acc, *b) : *b;
                }
                hull.push_back(*acc);
            }
            return Polyball(std::move(hull));
        }
        case Dist::Kind::FourierOf: {
            auto kernel = dist_kernel(d);
            if (!kernel) return std::nullopt;
            return support_bound(Dist::regular(*kernel));
        }
        case Dist::Kind::Tensor: {
            auto b1 = support_bound(d.child(0));
            auto b2 = support_bound(d.child(1));
            if (!b1 || !b2) return std::nullopt;
            std::vector<Ball> factors = b1->factors();
            factors.insert(factors.end(), b2->factors().begin(), b2->factors().end());
            return Polyball(std::move(factors));
        }
        case Dist::Kind::Conv: {
            auto b1 = support_bound(d.child(0));
            auto b2 = support_bound(d.child(1));
            if (!b1 || !b2) return std::nullopt;
            std::vector<Ball> factors;
            for (int i = 0; i < b1->arity(); ++i)
                factors.push_back(ball_sum(b1->factor(i), b2->factor(i)));
            return Polyball(std::move(factors));
        }
    }
    return std::nullopt;
}

MotFn bounded_fourier_as_function(const Dist& d) {
    auto bound = support_bound(d);
    if (!bound) throw NotBoundedError("transform realization needs a bounded support");
    const int n = d.arity();
    MotFn kernel = require_kernel(d, "transform realization");
    std::vector<Ball> hull;
    hull.reserve(n);
    for (const auto& b : bound->factors()) hull.push_back(closed_hull_around_zero(b));
    MotFn paired = fn_mul(kernel, chi(Polyball(std::move(hull))));
    MotFn big = fn_mul(embed_block(paired, 2 * n, 0), pairing_block(n));
    return integrate_vars(big, block_order(0, n));
}

CheckReport check_coherence(const Dist& d, const std::vector<CoherenceSample>& samples) {
    const int n = d.arity();
    size_t done = 0;
    for (const auto& s : samples) {
        if (cmp_rat(s.gamma_fine, s.gamma) < 0)
            throw EngineError("coherence sample has fine level below coarse level");
        CElem direct = dist_eval(d, s.point, s.gamma);
        MotFn fine = fn_scale(dist_level_fn(d, s.gamma_fine),
                              CElem(MotElem::o(s.gamma_fine, n).inverse()));
        CElem averaged = integrate(fn_mul(chi(polyball_around(s.point, s.gamma)), fine));
        if (!(direct == averaged)) {
            return CheckReport{"coherence", direct.to_string(), averaged.to_string(), false};
        }
        ++done;
    }
    std::string note = std::to_string(done) + " samples";
    return CheckReport{"coherence", note, note, true};
}

CheckReport check_dist_fourier(const Dist& d, const MotFn& f) {
    CElem lhs = dist_apply(d, fourier0(f));
    CElem rhs = transform_apply_defining(d, f);
    return CheckReport{"transform-pairing", lhs.to_string(), rhs.to_string(), lhs == rhs};
}

CheckReport check_dist_conv_fourier(const Dist& d1, const Dist& d2, const MotFn& probe) {
    Dist conv = Dist::convolution(d1, d2);
    CElem lhs = transform_apply_defining(conv, probe);
    MotFn h1 = bounded_fourier_as_function(d1);
    CElem rhs = transform_apply_defining(d2, fn_mul(probe, h1));
    return CheckReport{"transform-of-convolution", lhs.to_string(), rhs.to_string(), lhs == rhs};
}

}  // namespace motfourier
