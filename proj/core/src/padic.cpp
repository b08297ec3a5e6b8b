#include <motfourier/padic.hpp>

#include <motfourier/integrate.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace motfourier {

namespace {

Int ipow(long base, long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, (unsigned long)exp);
    return r;
}

Rat rat_p_pow(long p, long e) {
    if (e >= 0) return Rat(ipow(p, e));
    return Rat(1) / Rat(ipow(p, -e));
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Int compute_i_lift(long p, int k) {
    long base = -1;
    for (long u = 1; u < p; ++u) {
        if ((u * u + 1) % p == 0) {
            base = u;
            break;
        }
    }
    if (base < 0) throw EngineError("no square root of -1 modulo p");
    Int u(base);
    for (int j = 1; j < k; ++j) {
        const Int pj = ipow(p, j);
        const Int num = (Int(-1) - u * u) / pj;  // exact: u^2 = -1 (mod p^j)
        Int inv2u;
        const Int two_u = 2 * u;
        const Int pz(p);
        if (mpz_invert(inv2u.get_mpz_t(), two_u.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw EngineError("lift step not invertible");
        Int c = (num % pz) * inv2u % pz;
        if (c < 0) c += pz;
        u += c * pj;
    }
    return u;
}

long to_integer(const Rat& r, const char* what) {
    if (r.get_den() != 1)
        throw NonIntegralGammaError(std::string(what) + " must be an integer, got " + r.get_str());
    if (!r.get_num().fits_slong_p()) throw EngineError("integer out of range");
    return r.get_num().get_si();
}

}  // namespace

PadicConfig::PadicConfig(long prime, int lvl) : p(prime), level(lvl) {
    if (!is_prime(p) || p % 4 != 1)
        throw EngineError("specialization needs a prime congruent to 1 mod 4");
    if (level < 1) throw EngineError("level must be at least 1");
    i_lift = compute_i_lift(p, level);
}

// --- cyclotomic arithmetic ---------------------------------------------------

void Cyclo::add_root(long e, const Rat& c) {
    if (c == 0) return;
    e %= modulus_;
    if (e < 0) e += modulus_;
    const long p = modulus_ / block_;
    const long q = e / block_;
    const long r = e % block_;
    auto bump = [&](long idx, const Rat& v) {
        Rat& slot = coeffs_[idx];
        slot += v;
        if (slot == 0) coeffs_.erase(idx);
    };
    if (q == p - 1) {
        // zeta^{(p-1)b + r} = -(zeta^r + zeta^{b+r} + ... + zeta^{(p-2)b + r})
        for (long q2 = 0; q2 <= p - 2; ++q2) bump(q2 * block_ + r, Rat(-c));
    } else {
        bump(e, c);
    }
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.modulus_ != b.modulus_) throw EngineError("cyclotomic moduli differ");
    Cyclo out = a;
    for (const auto& [e, c] : b.coeffs_) {
        Rat& slot = out.coeffs_[e];
        slot += c;
        if (slot == 0) out.coeffs_.erase(e);
    }
    return out;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + b.scaled(Rat(-1)); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.modulus_ != b.modulus_) throw EngineError("cyclotomic moduli differ");
    Cyclo out(a.modulus_, a.block_);
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) out.add_root(ea + eb, Rat(ca * cb));
    return out;
}

Cyclo Cyclo::scaled(const Rat& s) const {
    Cyclo out(modulus_, block_);
    if (s == 0) return out;
    for (const auto& [e, c] : coeffs_) out.coeffs_[e] = Rat(c * s);
    return out;
}

std::complex<double> Cyclo::to_complex() const {
    long double re = 0, im = 0;
    for (const auto& [e, c] : coeffs_) {
        const long double angle =
            2.0L * std::numbers::pi_v<long double> * (long double)e / (long double)modulus_;
        const long double w = (long double)c.get_d();
        re += w * std::cos(angle);
        im += w * std::sin(angle);
    }
    return {(double)re, (double)im};
}

std::string Cyclo::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (e != 0) os << " z^" << e;
    }
    os << "  (z = e(1/" << modulus_ << "))";
    return os.str();
}

Cyclo cyclo_zero(const PadicConfig& cfg) {
    const long block = ipow(cfg.p, cfg.level - 1).get_si();
    return Cyclo(block * cfg.p, block);
}

Cyclo cyclo_rat(const PadicConfig& cfg, const Rat& r) {
    Cyclo out = cyclo_zero(cfg);
    out.add_root(0, r);
    return out;
}

Cyclo cyclo_root(const PadicConfig& cfg, long exponent) {
    Cyclo out = cyclo_zero(cfg);
    out.add_root(exponent, Rat(1));
    return out;
}

// --- rational p-adic helpers -------------------------------------------------

long vp(const Rat& x, long p) {
    if (x == 0) throw EngineError("valuation of zero");
    long v = 0;
    Int n = x.get_num();
    Int d = x.get_den();
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

Rat frac_p(const Rat& x, long p, int max_level) {
    if (x == 0) return Rat(0);
    Int den = x.get_den();
    long j = 0;
    while (den % p == 0) {
        den /= p;
        ++j;
    }
    if (j == 0) return Rat(0);
    if (j > max_level)
        throw InsufficientLevelError("needs level " + std::to_string(j) + ", have " +
                                     std::to_string(max_level));
    const Int mod = ipow(p, j);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw EngineError("denominator not invertible");
    Int r = x.get_num() % mod * inv % mod;
    if (r < 0) r += mod;
    return Rat(r) / Rat(mod);
}

Cyclo psi(const PadicConfig& cfg, const Rat& x) {
    const Rat f = frac_p(Rat(x / cfg.p), cfg.p, cfg.level);
    const long m = ipow(cfg.p, cfg.level).get_si();
    const Rat scaled = Rat(f * m);
    return cyclo_root(cfg, to_integer(scaled, "character exponent"));
}

Rat lift_vf(const VfElem& x, const PadicConfig& cfg) {
    Rat acc(0);
    for (const auto& [gamma, c] : x.terms()) {
        const long g = to_integer(gamma, "series exponent");
        acc += (c.re() + Rat(c.im() * Rat(cfg.i_lift))) * rat_p_pow(cfg.p, g);
    }
    return acc;
}

Rat spec_mot(const MotElem& m, const PadicConfig& cfg) {
    Rat acc(0);
    for (const auto& [mon, n] : m.terms()) {
        long e = -mon.e_exp();
        for (const auto& [gamma, k] : mon.o_exps())
            e += (-to_integer(gamma, "volume index") - 1) * k;
        for (const auto& [gamma, k] : mon.c_exps()) e += -to_integer(gamma, "volume index") * k;
        acc += Rat(n) * rat_p_pow(cfg.p, e);
    }
    return acc;
}

Cyclo spec_c(const CElem& x, const PadicConfig& cfg) {
    Cyclo acc = cyclo_zero(cfg);
    for (const auto& [omega, m] : x.terms())
        acc = acc + psi(cfg, lift_vf(omega.rep(), cfg)).scaled(spec_mot(m, cfg));
    return acc;
}

// --- the coset-sum oracle ----------------------------------------------------

namespace {

struct LiftedBox {
    std::vector<Rat> center;
    std::vector<long> lo;  // closed radius per coordinate
};

// Membership of w in the lifted ball (closed radius gamma / open > gamma).
bool lifted_admits(const Rat& w, long p, const Rat& gamma_r, BallKind kind, const char* what) {
    const long gamma = to_integer(gamma_r, what);
    if (w == 0) return true;
    const long v = vp(w, p);
    return kind == BallKind::Open ? v > gamma : v >= gamma;
}

Cyclo packet_sum(const WavePacket& pk, const PadicConfig& cfg) {
    const int n = pk.arity;
    const long p = cfg.p;

    LiftedBox box;
    box.center.resize(n);
    box.lo.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto ball = pk.plain_ball(i);
        if (!ball)
            throw NotIntegrableError("numeric check needs a plain bounding ball per coordinate");
        box.center[i] = lift_vf(ball->center(), cfg);
        box.lo[i] = to_integer(ball->radius(), "ball radius") +
                    (ball->kind() == BallKind::Open ? 1 : 0);
    }

    // Coordinate valuations are at least m_i everywhere in the box.
    std::vector<long> coord_floor(n);
    for (int i = 0; i < n; ++i) {
        coord_floor[i] = box.lo[i];
        if (box.center[i] != 0) coord_floor[i] = std::min(coord_floor[i], vp(box.center[i], p));
    }

    // Pick L so that every constraint indicator and the phase character are
    // constant on cosets of p^L Z^n.
    long level = 0;
    for (int i = 0; i < n; ++i) level = std::max(level, box.lo[i]);
    for (const auto& cst : pk.support) {
        const long target = to_integer(cst.target.radius(), "ball radius") +
                            (cst.target.kind() == BallKind::Open ? 1 : 0);
        for (const auto& [idx, coeff] : cst.form.coeffs()) {
            const Rat a = lift_vf(coeff, cfg);
            if (a == 0) continue;
            level = std::max(level, target - vp(a, p));
        }
    }
    for (const auto& [pair, coeff] : pk.phase.bilinear()) {
        const Rat q = lift_vf(coeff, cfg);
        if (q == 0) continue;
        level = std::max(level, 1 - vp(q, p) - coord_floor[pair.first]);
        level = std::max(level, 1 - vp(q, p) - coord_floor[pair.second]);
    }
    for (const auto& [idx, coeff] : pk.phase.linear()) {
        const Rat l = lift_vf(coeff, cfg);
        if (l == 0) continue;
        level = std::max(level, 1 - vp(l, p));
    }

    // Coset counts per coordinate, lexicographic enumeration.
    std::vector<long> counts(n);
    double total = 1;
    for (int i = 0; i < n; ++i) {
        counts[i] = ipow(p, level - box.lo[i]).get_si();
        total *= (double)counts[i];
        if (total > 4e6) throw EngineError("numeric check sample budget exceeded");
    }

    // Lift the constraints once.
    struct LiftedConstraint {
        std::vector<std::pair<int, Rat>> coeffs;
        Rat shift;  // constant minus target center
        Rat radius;
        BallKind kind;
    };
    std::vector<LiftedConstraint> csts;
    for (const auto& cst : pk.support) {
        LiftedConstraint lc;
        for (const auto& [idx, coeff] : cst.form.coeffs())
            lc.coeffs.emplace_back(idx, lift_vf(coeff, cfg));
        lc.shift = Rat(lift_vf(cst.form.constant(), cfg) - lift_vf(cst.target.center(), cfg));
        lc.radius = cst.target.radius();
        lc.kind = cst.target.kind();
        csts.push_back(std::move(lc));
    }

    struct LiftedPhase {
        std::vector<std::pair<std::pair<int, int>, Rat>> bilinear;
        std::vector<std::pair<int, Rat>> linear;
        Rat constant;
    };
    LiftedPhase ph;
    for (const auto& [pair, coeff] : pk.phase.bilinear())
        ph.bilinear.emplace_back(pair, lift_vf(coeff, cfg));
    for (const auto& [idx, coeff] : pk.phase.linear())
        ph.linear.emplace_back(idx, lift_vf(coeff, cfg));
    ph.constant = lift_vf(pk.phase.constant(), cfg);

    Cyclo sum = cyclo_zero(cfg);
    std::vector<long> j(n, 0);
    std::vector<Rat> pt(n);
    const long coset_count_total = [&] {
        long t = 1;
        for (long c : counts) t *= c;
        return t;
    }();
    for (long step = 0; step < coset_count_total; ++step) {
        for (int i = 0; i < n; ++i)
            pt[i] = Rat(box.center[i] + Rat(j[i]) * rat_p_pow(p, box.lo[i]));

        bool inside = true;
        for (const auto& lc : csts) {
            Rat w = lc.shift;
            for (const auto& [idx, a] : lc.coeffs) w += a * pt[idx];
            if (!lifted_admits(Rat(w), p, lc.radius, lc.kind, "ball radius")) {
                inside = false;
                break;
            }
        }
        if (inside) {
            Rat q = ph.constant;
            for (const auto& [pair, coeff] : ph.bilinear)
                q += coeff * pt[pair.first] * pt[pair.second];
            for (const auto& [idx, coeff] : ph.linear) q += coeff * pt[idx];
            sum = sum + psi(cfg, q);
        }

        // lexicographic odometer, last coordinate fastest
        for (int i = n - 1; i >= 0; --i) {
            if (++j[i] < counts[i]) break;
            j[i] = 0;
        }
    }

    return sum.scaled(rat_p_pow(p, -level * n)) * spec_c(pk.coeff, cfg);
}

}  // namespace

Cyclo numeric_integral(const MotFn& f, const PadicConfig& cfg) {
    if (f.arity() == 0) return spec_c(to_value(f), cfg);
    if (!fn_check(f).integrable) throw NotIntegrableError("numeric check needs an integrable function");
    const MotFn g = fn_normalize(f);
    Cyclo acc = cyclo_zero(cfg);
    for (const auto& pk : g.packets()) acc = acc + packet_sum(pk, cfg);
    return acc;
}

CheckReport oracle_check(const CElem& symbolic, const MotFn& f, const PadicConfig& cfg) {
    const Cyclo lhs = spec_c(symbolic, cfg);
    const Cyclo rhs = numeric_integral(f, cfg);
    std::ostringstream id;
    id << "coset-sum check p=" << cfg.p << " level=" << cfg.level;
    return CheckReport{id.str(), lhs.to_string(), rhs.to_string(), lhs == rhs};
}

}  // namespace motfourier
