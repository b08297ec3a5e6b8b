#include "motfourier/wavefn.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "motfourier/errors.hpp"

namespace motfourier {

void Phase::add_linear(int i, const VfElem& c) {
    if (c.is_zero()) return;
    auto it = linear_.find(i);
    if (it == linear_.end()) {
        linear_.emplace(i, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) linear_.erase(it);
    }
}

void Phase::add_bilinear(int i, int j, const VfElem& c) {
    if (c.is_zero()) return;
    if (i == j)
        throw UnsupportedPhaseError("phase would acquire a square term in x" +
                                    std::to_string(i + 1));
    auto key = std::minmax(i, j);
    auto it = bilinear_.find(key);
    if (it == bilinear_.end()) {
        bilinear_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) bilinear_.erase(it);
    }
}

void Phase::add_affine(const AffineForm& f) {
    constant_ += f.constant();
    for (const auto& [idx, c] : f.coeffs()) add_linear(idx, c);
}

void Phase::add_product(const AffineForm& a, const AffineForm& b) {
    constant_ += a.constant() * b.constant();
    for (const auto& [j, cb] : b.coeffs()) add_linear(j, a.constant() * cb);
    for (const auto& [i, ca] : a.coeffs()) {
        add_linear(i, ca * b.constant());
        for (const auto& [j, cb] : b.coeffs()) add_bilinear(i, j, ca * cb);
    }
}

bool Phase::depends_on(int idx) const {
    if (linear_.count(idx)) return true;
    for (const auto& [key, c] : bilinear_) {
        if (key.first == idx || key.second == idx) return true;
    }
    return false;
}

VfElem Phase::eval(const std::vector<VfElem>& point) const {
    VfElem acc = constant_;
    for (const auto& [i, c] : linear_) acc += c * point.at(i);
    for (const auto& [key, c] : bilinear_) acc += c * point.at(key.first) * point.at(key.second);
    return acc;
}

AffineForm Phase::extract_var(int idx) {
    AffineForm L;
    auto it = linear_.find(idx);
    if (it != linear_.end()) {
        L.set_constant(it->second);
        linear_.erase(it);
    }
    for (auto bit = bilinear_.begin(); bit != bilinear_.end();) {
        if (bit->first.first == idx || bit->first.second == idx) {
            int other = bit->first.first == idx ? bit->first.second : bit->first.first;
            L.set_coeff(other, L.coeff(other) + bit->second);
            bit = bilinear_.erase(bit);
        } else {
            ++bit;
        }
    }
    return L;
}

Phase Phase::operator+(const Phase& other) const {
    Phase out = *this;
    out.constant_ += other.constant_;
    for (const auto& [i, c] : other.linear_) out.add_linear(i, c);
    for (const auto& [key, c] : other.bilinear_) out.add_bilinear(key.first, key.second, c);
    return out;
}

Phase Phase::substituted(const std::map<int, AffineForm>& images) const {
    Phase out;
    out.constant_ = constant_;
    for (const auto& [i, c] : linear_) {
        auto it = images.find(i);
        if (it == images.end()) throw EngineError("phase substitution misses a variable");
        out.add_affine(it->second.scaled(c));
    }
    for (const auto& [key, q] : bilinear_) {
        auto a = images.find(key.first);
        auto b = images.find(key.second);
        if (a == images.end() || b == images.end())
            throw EngineError("phase substitution misses a variable");
        out.add_product(a->second.scaled(q), b->second);
    }
    return out;
}

Phase Phase::reindexed_down(int removed) const {
    Phase out;
    out.constant_ = constant_;
    auto shift = [removed](int i) {
        if (i == removed) throw EngineError("phase still uses the removed variable");
        return i > removed ? i - 1 : i;
    };
    for (const auto& [i, c] : linear_) out.add_linear(shift(i), c);
    for (const auto& [key, c] : bilinear_)
        out.add_bilinear(shift(key.first), shift(key.second), c);
    return out;
}

bool operator<(const Phase& a, const Phase& b) {
    if (!(a.constant_ == b.constant_)) return a.constant_ < b.constant_;
    if (a.linear_ != b.linear_) return a.linear_ < b.linear_;
    return a.bilinear_ < b.bilinear_;
}

std::string Phase::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : bilinear_) {
        if (!first) out << " + ";
        first = false;
        out << c.to_string() << "*x" << key.first + 1 << "*x" << key.second + 1;
    }
    for (const auto& [i, c] : linear_) {
        if (!first) out << " + ";
        first = false;
        out << c.to_string() << "*x" << i + 1;
    }
    if (!constant_.is_zero() || first) {
        if (!first) out << " + ";
        out << constant_.to_string();
    }
    return out.str();
}

bool WavePacket::supports_point(const std::vector<VfElem>& point) const {
    for (const auto& c : support) {
        if (!c.holds_at(point)) return false;
    }
    return true;
}

std::optional<Ball> WavePacket::plain_ball(int idx) const {
    for (const auto& c : support) {
        if (c.form.coeffs().size() == 1 && c.form.depends_on(idx) &&
            c.form.coeff(idx) == VfElem(1) && c.form.constant().is_zero()) {
            return c.target;
        }
    }
    return std::nullopt;
}

bool operator==(const WavePacket& a, const WavePacket& b) {
    return a.arity == b.arity && a.support == b.support && a.phase == b.phase &&
           a.coeff == b.coeff;
}

bool operator<(const WavePacket& a, const WavePacket& b) {
    if (a.support != b.support) return a.support < b.support;
    if (!(a.phase == b.phase)) return a.phase < b.phase;
    return a.coeff < b.coeff;
}

std::string WavePacket::to_string() const {
    std::ostringstream out;
    out << "packet(";
    for (size_t i = 0; i < support.size(); ++i) {
        if (i) out << " & ";
        out << support[i].to_string();
    }
    if (support.empty()) out << "all";
    out << "; " << phase.to_string() << "; " << coeff.to_string() << ")";
    return out.str();
}

void MotFn::add_packet(WavePacket p) {
    if (p.arity != arity_) throw EngineError("packet arity mismatch");
    packets_.push_back(std::move(p));
}

std::string MotFn::to_string() const {
    if (packets_.empty()) return "0";
    std::ostringstream out;
    for (size_t i = 0; i < packets_.size(); ++i) {
        if (i) out << " + ";
        out << packets_[i].to_string();
    }
    return out.str();
}

MotFn chi(const Polyball& pb) {
    MotFn f(pb.arity());
    std::vector<Constraint> cs;
    for (int i = 0; i < pb.arity(); ++i) cs.push_back(plain_constraint(i, pb.factor(i)));
    f.add_packet(WavePacket(pb.arity(), std::move(cs), Phase(), CElem(1)));
    return fn_normalize(f);
}

MotFn chi_var(int arity, int idx, const Ball& ball) {
    MotFn f(arity);
    f.add_packet(WavePacket(arity, {plain_constraint(idx, ball)}, Phase(), CElem(1)));
    return fn_normalize(f);
}

MotFn exp_char(int arity, const std::vector<VfElem>& freq) {
    if (static_cast<int>(freq.size()) != arity) throw EngineError("frequency arity mismatch");
    Phase p;
    for (int i = 0; i < arity; ++i) p.add_linear(i, freq[i]);
    MotFn f(arity);
    f.add_packet(WavePacket(arity, {}, std::move(p), CElem(1)));
    return f;
}

MotFn nu_char(const VfElem& b) {
    Phase p;
    p.add_bilinear(0, 1, b);
    MotFn f(2);
    f.add_packet(WavePacket(2, {}, std::move(p), CElem(1)));
    return f;
}

MotFn const_fn(int arity, const CElem& value) {
    MotFn f(arity);
    if (!value.is_zero()) f.add_packet(WavePacket(arity, {}, Phase(), value));
    return f;
}

CElem fn_eval(const MotFn& f, const std::vector<VfElem>& point) {
    if (static_cast<int>(point.size()) != f.arity())
        throw EngineError("evaluation point arity mismatch");
    CElem acc;
    for (const auto& p : f.packets()) {
        if (!p.supports_point(point)) continue;
        acc += p.coeff * CElem::character(theta(p.phase.eval(point)));
    }
    return acc;
}

MotFn fn_add(const MotFn& f, const MotFn& g) {
    if (f.arity() != g.arity()) throw EngineError("adding functions of different arity");
    MotFn out(f.arity());
    for (const auto& p : f.packets()) out.add_packet(p);
    for (const auto& p : g.packets()) out.add_packet(p);
    return fn_normalize(out);
}

MotFn fn_mul(const MotFn& f, const MotFn& g) {
    if (f.arity() != g.arity()) throw EngineError("multiplying functions of different arity");
    MotFn out(f.arity());
    for (const auto& pf : f.packets()) {
        for (const auto& pg : g.packets()) {
            std::vector<Constraint> support = pf.support;
            support.insert(support.end(), pg.support.begin(), pg.support.end());
            out.add_packet(WavePacket(f.arity(), std::move(support), pf.phase + pg.phase,
                                      pf.coeff * pg.coeff));
        }
    }
    return fn_normalize(out);
}

MotFn fn_scale(const MotFn& f, const CElem& scalar) {
    MotFn out(f.arity());
    if (scalar.is_zero()) return out;
    for (const auto& p : f.packets())
        out.add_packet(WavePacket(p.arity, p.support, p.phase, p.coeff * scalar));
    return fn_normalize(out);
}

MotFn fn_neg(const MotFn& f) { return fn_scale(f, CElem(-1)); }

namespace {

// Intersect two plain balls for the same coordinate; nullopt marks an empty
// intersection.
std::optional<Ball> intersect_plain(const Ball& a, const Ball& b) {
    switch (ball_relation(a, b)) {
        case BallRelation::Equal:
        case BallRelation::FirstInsideSecond:
            return a;
        case BallRelation::SecondInsideFirst:
            return b;
        case BallRelation::Disjoint:
            return std::nullopt;
    }
    return std::nullopt;
}

// Returns false when the packet is identically zero (empty support).
bool simplify_packet(WavePacket& p) {
    if (p.coeff.is_zero()) return false;
    std::map<int, Ball> plain;
    std::vector<Constraint> general;
    for (auto& c : p.support) {
        if (c.form.is_constant()) {
            if (!c.target.contains(c.form.constant())) return false;
            continue;  // trivially true
        }
        if (c.form.coeffs().size() == 1) {
            int idx = c.form.coeffs().begin()->first;
            const VfElem& m = c.form.coeffs().begin()->second;
            if (m.is_monomial()) {
                MovingBall mb = solve_constraint_for(c, idx);
                Ball solved(mb.center.constant(), mb.radius, mb.kind);
                auto it = plain.find(idx);
                if (it == plain.end()) {
                    plain.emplace(idx, std::move(solved));
                } else {
                    auto merged = intersect_plain(it->second, solved);
                    if (!merged) return false;
                    it->second = *merged;
                }
                continue;
            }
        }
        general.push_back(c);
    }
    std::vector<Constraint> out;
    for (auto& [idx, ball] : plain) out.push_back(plain_constraint(idx, std::move(ball)));
    std::sort(general.begin(), general.end(),
              [](const Constraint& a, const Constraint& b) { return a < b; });
    general.erase(std::unique(general.begin(), general.end()), general.end());
    out.insert(out.end(), general.begin(), general.end());
    p.support = std::move(out);
    return true;
}

}  // namespace

MotFn fn_normalize(const MotFn& f) {
    std::vector<WavePacket> kept;
    for (auto p : f.packets()) {
        if (simplify_packet(p)) kept.push_back(std::move(p));
    }
    std::sort(kept.begin(), kept.end());
    // Merge packets with identical support and phase.
    std::vector<WavePacket> merged;
    for (auto& p : kept) {
        if (!merged.empty() && merged.back().support == p.support &&
            merged.back().phase == p.phase) {
            merged.back().coeff += p.coeff;
        } else {
            merged.push_back(std::move(p));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const WavePacket& p) { return p.coeff.is_zero(); }),
                 merged.end());
    return MotFn(f.arity(), std::move(merged));
}

namespace {

// Minimal valuation attained on a ball (sound lower bound).
Rat ball_low(const Ball& b) {
    Gamma cv = b.center().val();
    if (!cv.is_finite()) return b.radius();
    return std::min(cv.value(), b.radius());
}

bool phase_constant_on_support(const WavePacket& p, VfElem& value_out) {
    if (p.phase.is_zero()) {
        value_out = VfElem();
        return true;
    }
    std::map<int, Ball> balls;
    for (int i = 0; i < p.arity; ++i) {
        auto b = p.plain_ball(i);
        if (b) balls.emplace(i, *b);
    }
    // Coordinates without a plain ball must not occur in the phase.
    for (int i = 0; i < p.arity; ++i) {
        if (!balls.count(i) && p.phase.depends_on(i)) return false;
    }
    auto strictness_ok = [](const Gamma& v, const Rat& bound, bool strict) {
        if (!v.is_finite()) return true;
        return strict ? v.value() > bound : v.value() >= bound;
    };
    // Effective linear coefficient at the center must not move theta.
    for (const auto& [i, ball] : balls) {
        VfElem eff = VfElem();
        auto lit = p.phase.linear().find(i);
        if (lit != p.phase.linear().end()) eff = lit->second;
        for (const auto& [key, q] : p.phase.bilinear()) {
            int other = -1;
            if (key.first == i) other = key.second;
            else if (key.second == i) other = key.first;
            else continue;
            eff += q * balls.at(other).center();
        }
        bool strict = ball.kind() == BallKind::Closed;  // v(B_i) + radius > 0
        if (!strictness_ok(eff.val(), -ball.radius(), strict)) return false;
    }
    // Cross variation q * delta_i * delta_j.
    for (const auto& [key, q] : p.phase.bilinear()) {
        const Ball& bi = balls.at(key.first);
        const Ball& bj = balls.at(key.second);
        bool strict = bi.kind() == BallKind::Closed && bj.kind() == BallKind::Closed;
        if (!strictness_ok(q.val(), -(bi.radius() + bj.radius()), strict)) return false;
    }
    std::vector<VfElem> center(p.arity);
    for (const auto& [i, ball] : balls) center[i] = ball.center();
    value_out = p.phase.eval(center);
    return true;
}

}  // namespace

MotFn fn_reduce(const MotFn& f) {
    MotFn out(f.arity());
    const MotFn normal = fn_normalize(f);
    for (auto p : normal.packets()) {
        VfElem value;
        if (phase_constant_on_support(p, value)) {
            p.coeff = p.coeff * CElem::character(theta(value));
            p.phase = Phase();
        }
        out.add_packet(std::move(p));
    }
    return fn_normalize(out);
}

MotFn fn_subst_affine(const MotFn& f, int new_arity, const std::map<int, AffineForm>& images) {
    MotFn out(new_arity);
    for (const auto& p : f.packets()) {
        std::vector<Constraint> support;
        support.reserve(p.support.size());
        for (const auto& c : p.support)
            support.emplace_back(c.form.substituted(images), c.target);
        out.add_packet(
            WavePacket(new_arity, std::move(support), p.phase.substituted(images), p.coeff));
    }
    return fn_normalize(out);
}

MotFn fn_translate(const MotFn& f, const std::vector<VfElem>& shift) {
    if (static_cast<int>(shift.size()) != f.arity()) throw EngineError("shift arity mismatch");
    std::map<int, AffineForm> images;
    for (int i = 0; i < f.arity(); ++i) {
        AffineForm a = AffineForm::variable(i);
        a.set_constant(-shift[i]);
        images.emplace(i, std::move(a));
    }
    return fn_subst_affine(f, f.arity(), images);
}

MotFn fn_scale_arg(const MotFn& f, const std::vector<VfElem>& factors) {
    if (static_cast<int>(factors.size()) != f.arity())
        throw EngineError("scale factor arity mismatch");
    std::map<int, AffineForm> images;
    for (int i = 0; i < f.arity(); ++i) {
        if (factors[i].is_zero()) throw DivisionByZeroError("argument scaling by zero");
        AffineForm a;
        a.set_coeff(i, factors[i]);
        images.emplace(i, std::move(a));
    }
    return fn_subst_affine(f, f.arity(), images);
}

MotFn fn_scale_arg(const MotFn& f, const VfElem& factor) {
    return fn_scale_arg(f, std::vector<VfElem>(f.arity(), factor));
}

FnFlags fn_check(const MotFn& f) {
    MotFn n = fn_normalize(f);
    FnFlags flags;
    flags.bounded = true;
    flags.integrable = true;
    flags.almost_integrable = true;
    for (const auto& p : n.packets()) {
        for (int i = 0; i < p.arity; ++i) {
            bool plain = p.plain_ball(i).has_value();
            bool occurs = plain;
            if (!occurs) {
                for (const auto& c : p.support) {
                    if (c.depends_on(i)) {
                        occurs = true;
                        break;
                    }
                }
            }
            if (!plain) flags.bounded = false;
            if (!occurs) flags.integrable = false;
        }
    }
    flags.schwartz = flags.bounded && flags.integrable;
    return flags;
}

Rat iota_bound(const MotFn& f) {
    MotFn n = fn_normalize(f);
    if (n.is_zero_fn()) return Rat(0);
    if (!fn_check(n).schwartz)
        throw NotBoundedError("iota bound requires a Schwartz function");
    bool have = false;
    Rat best(0);
    auto consider = [&](const Rat& r) {
        if (!have || r > best) best = r;
        have = true;
    };
    for (const auto& p : n.packets()) {
        std::map<int, Ball> balls;
        for (int i = 0; i < p.arity; ++i) {
            auto b = p.plain_ball(i);
            if (b) balls.emplace(i, *b);
        }
        for (const auto& c : p.support) {
            if (c.form.coeffs().size() == 1 && !c.form.coeffs().begin()->second.is_monomial()) {
                // Conservative: variation bounded through the raw coefficient.
                const auto& [idx, m] = *c.form.coeffs().begin();
                consider(c.target.radius() - m.val().value());
            } else if (c.form.coeffs().size() > 1) {
                for (const auto& [idx, m] : c.form.coeffs())
                    consider(c.target.radius() - m.val().value());
            }
        }
        for (const auto& [i, ball] : balls) consider(ball.radius());
        for (const auto& [i, b] : p.phase.linear()) consider(-b.val().value());
        for (const auto& [key, q] : p.phase.bilinear()) {
            Rat vq = q.val().value();
            consider(-vq - ball_low(balls.at(key.first)));
            consider(-vq - ball_low(balls.at(key.second)));
            consider(-vq / 2);
        }
    }
    return best;
}

std::vector<std::vector<VfElem>> probe_points(const std::vector<const MotFn*>& fns, int arity,
                                              size_t limit) {
    // Candidate coordinates: ball centers with offsets straddling each
    // radius, plus a few field constants.
    std::vector<std::set<VfElem>> cand(arity);
    auto base = {VfElem(0), VfElem(1), VfElem::t_pow(Rat(1)), VfElem::t_pow(Rat(-1))};
    for (int i = 0; i < arity; ++i)
        for (const auto& b : base) cand[i].insert(b);
    for (const auto* f : fns) {
        for (const auto& p : f->packets()) {
            for (int i = 0; i < arity && i < p.arity; ++i) {
                auto b = p.plain_ball(i);
                if (!b) continue;
                const Rat r = b->radius();
                cand[i].insert(b->center());
                cand[i].insert(b->center() + VfElem::t_pow(r + 1));
                cand[i].insert(b->center() + VfElem::t_pow(r));
                cand[i].insert(b->center() + VfElem::t_pow(r - 1));
            }
        }
    }
    std::vector<std::vector<VfElem>> axes;
    axes.reserve(arity);
    for (auto& s : cand) axes.emplace_back(s.begin(), s.end());
    std::vector<std::vector<VfElem>> out;
    std::vector<size_t> idx(arity, 0);
    // Round-robin diagonal enumeration keeps early points varied.
    for (size_t step = 0; out.size() < limit; ++step) {
        std::vector<VfElem> pt(arity);
        bool fresh = false;
        for (int i = 0; i < arity; ++i) {
            size_t k = (step + i * 7919) % axes[i].size();
            pt[i] = axes[i][k];
            if (step < axes[i].size()) fresh = true;
        }
        if (!fresh && step > 0) break;
        out.push_back(std::move(pt));
        if (arity == 0) break;
    }
    return out;
}

bool fn_equal(const MotFn& f, const MotFn& g) {
    if (f.arity() != g.arity()) return false;
    MotFn nf = fn_reduce(f), ng = fn_reduce(g);
    if (nf == ng) return true;
    auto points = probe_points({&nf, &ng}, f.arity(), 48);
    for (const auto& pt : points) {
        if (!(fn_eval(nf, pt) == fn_eval(ng, pt))) return false;
    }
    return true;
}

}  // namespace motfourier
