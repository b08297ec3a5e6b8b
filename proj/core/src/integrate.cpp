#include "motfourier/integrate.hpp"

#include <algorithm>

#include "motfourier/errors.hpp"

namespace motfourier {

MotElem ball_volume(const Ball& b) {
    return b.kind() == BallKind::Open ? MotElem::o(b.radius()) : MotElem::c(b.radius());
}

MotElem polyball_volume(const Polyball& pb) {
    MotElem v(1);
    for (const auto& b : pb.factors()) v *= ball_volume(b);
    return v;
}

namespace {

// Integrate x_idx out of one packet.  Emits zero or one packet on the
// remaining variables.
std::optional<WavePacket> integrate_packet(const WavePacket& p, int idx) {
    std::vector<Constraint> rest;
    std::vector<MovingBall> slices;
    for (const auto& c : p.support) {
        if (c.depends_on(idx)) slices.push_back(solve_constraint_for(c, idx));
        else rest.push_back(c);
    }
    if (slices.empty())
        throw NotIntegrableError("variable x" + std::to_string(idx + 1) +
                                 " has unbounded support");

    // The support slice is the finest of the solved balls, guarded by the
    // requirement that its center lies in each of the others (the ultrametric
    // trichotomy: otherwise the slice is empty and the packet contributes 0).
    size_t best = 0;
    for (size_t k = 1; k < slices.size(); ++k) {
        if (fineness(slices[k].radius, slices[k].kind) >
            fineness(slices[best].radius, slices[best].kind))
            best = k;
    }
    for (size_t k = 0; k < slices.size(); ++k) {
        if (k == best) continue;
        rest.emplace_back(slices[best].center - slices[k].center,
                          Ball(VfElem(), slices[k].radius, slices[k].kind));
    }
    const MovingBall& ball = slices[best];

    Phase phase = p.phase;
    AffineForm freq = phase.extract_var(idx);
    CElem coeff = p.coeff;
    coeff = coeff * CElem(ball.kind == BallKind::Open ? MotElem::o(ball.radius)
                                                      : MotElem::c(ball.radius));
    if (!(freq.is_constant() && freq.constant().is_zero())) {
        // Character factor: nonzero only when the frequency lies in the dual
        // ball, where the integral is the volume times the center value.
        rest.emplace_back(freq, Ball(VfElem(), -ball.radius, flip(ball.kind)));
        phase.add_product(freq, ball.center);
    }

    std::vector<Constraint> reindexed;
    reindexed.reserve(rest.size());
    for (const auto& c : rest) reindexed.emplace_back(c.form.reindexed_down(idx), c.target);
    WavePacket out(p.arity - 1, std::move(reindexed), phase.reindexed_down(idx),
                   std::move(coeff));
    return out;
}

}  // namespace

MotFn integrate_var(const MotFn& f, int idx) {
    if (idx < 0 || idx >= f.arity()) throw EngineError("integration variable out of range");
    MotFn out(f.arity() - 1);
    const MotFn normal = fn_normalize(f);
    for (const auto& p : normal.packets()) {
        auto q = integrate_packet(p, idx);
        if (q) out.add_packet(std::move(*q));
    }
    return fn_normalize(out);
}

MotFn integrate_vars(const MotFn& f, const std::vector<int>& order) {
    // Track how original indices shift as earlier variables disappear.
    std::vector<int> remaining(f.arity());
    for (int i = 0; i < f.arity(); ++i) remaining[i] = i;
    MotFn acc = f;
    for (int orig : order) {
        auto it = std::find(remaining.begin(), remaining.end(), orig);
        if (it == remaining.end())
            throw EngineError("variable integrated twice or out of range");
        int pos = static_cast<int>(it - remaining.begin());
        remaining.erase(it);
        acc = integrate_var(acc, pos);
    }
    return acc;
}

CElem to_value(const MotFn& f) {
    if (f.arity() != 0) throw EngineError("function still has free variables");
    CElem acc;
    const MotFn normal = fn_normalize(f);
    for (const auto& p : normal.packets()) {
        // Normalization has decided every (constant) constraint already.
        acc += p.coeff * CElem::character(theta(p.phase.constant()));
    }
    return acc;
}

CElem integrate(const MotFn& f, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != f.arity())
        throw EngineError("integration order must mention every variable once");
    if (!fn_check(f).integrable) {
        for (const auto& p : f.packets())
            if (!fn_check(MotFn(f.arity(), {p})).integrable)
                throw NotIntegrableError("packet is not integrable: " + p.to_string());
        throw NotIntegrableError("function has a packet with an unbounded coordinate");
    }
    return to_value(integrate_vars(f, order));
}

CElem integrate(const MotFn& f) {
    std::vector<int> order(f.arity());
    for (int i = 0; i < f.arity(); ++i) order[i] = i;
    return integrate(f, order);
}

MotFn convolve(const MotFn& f, const MotFn& g) {
    if (f.arity() != g.arity()) throw EngineError("convolving functions of different arity");
    const int n = f.arity();
    // Variables 0..n-1 integrate out; n..2n-1 are the output variables.
    std::map<int, AffineForm> f_images, g_images;
    for (int i = 0; i < n; ++i) {
        f_images.emplace(i, AffineForm::variable(i));
        g_images.emplace(i, AffineForm::variable(n + i) - AffineForm::variable(i));
    }
    MotFn big = fn_mul(fn_subst_affine(f, 2 * n, f_images), fn_subst_affine(g, 2 * n, g_images));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    return integrate_vars(big, order);
}

MotFn convolution_identity(int arity, const Rat& delta) {
    std::vector<Ball> factors(arity, Ball::open(VfElem(), delta));
    Polyball pb{factors};
    return fn_scale(chi(pb), CElem(polyball_volume(pb).inverse()));
}

VfElem matrix_det(const std::vector<std::vector<VfElem>>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw EngineError("determinant of a non-square matrix");
    if (n == 0) return VfElem(1);
    if (n == 1) return m[0][0];
    VfElem det;
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<VfElem>> minor;
        minor.reserve(n - 1);
        for (size_t r = 1; r < n; ++r) {
            std::vector<VfElem> row;
            row.reserve(n - 1);
            for (size_t c = 0; c < n; ++c) {
                if (c != j) row.push_back(m[r][c]);
            }
            minor.push_back(std::move(row));
        }
        VfElem term = m[0][j] * matrix_det(minor);
        det = sign > 0 ? det + term : det - term;
        sign = -sign;
    }
    return det;
}

VolumeForm apply_affine(const VolumeForm& vf, const std::vector<std::vector<VfElem>>& matrix,
                        const std::vector<VfElem>& shift) {
    const int n = vf.fn.arity();
    if (static_cast<int>(matrix.size()) != n || static_cast<int>(shift.size()) != n)
        throw EngineError("affine map shape mismatch");
    VfElem det = matrix_det(matrix);
    if (det.is_zero()) throw DivisionByZeroError("affine map is singular");
    std::map<int, AffineForm> images;
    for (int i = 0; i < n; ++i) {
        AffineForm row(shift[i]);
        for (int j = 0; j < n; ++j) {
            if (!matrix[i][j].is_zero()) row.set_coeff(j, matrix[i][j]);
        }
        images.emplace(i, std::move(row));
    }
    return VolumeForm(fn_subst_affine(vf.fn, n, images), rv(det) * vf.density);
}

}  // namespace motfourier
