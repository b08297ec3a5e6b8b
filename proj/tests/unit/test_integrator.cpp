#include <doctest.h>

#include <motfourier/integrate.hpp>

#include <vector>

#include "corpus.hpp"

using namespace motfourier;
using namespace motfourier::testsupport;

namespace {

const CElem kUnit = CElem(MotElem::e());

// chi_ball(x) * exp<theta(b x)> as a unary function.
MotFn ball_char(const Ball& ball, const VfElem& b) { return ind_char({ball}, {b}); }

}  // namespace

TEST_SUITE("integrator") {
    TEST_CASE("ball volumes") {
        CHECK(ball_volume(ob0(2)) == MotElem::o(Rat(2)));
        CHECK(ball_volume(cb0(-1)) == MotElem::c(Rat(-1)));
        CHECK(ball_volume(Ball::valuation_ring()) == MotElem::b());
        CHECK(ball_volume(Ball::maximal_ideal()) == MotElem::a());
        // Volume ignores the center.
        CHECK(ball_volume(Ball::closed(tpow(-3), Rat(1))) == MotElem::c(Rat(1)));
        CHECK(polyball_volume(Polyball({cb0(1), ob0(-1)})) ==
              MotElem::c(Rat(1)) * MotElem::o(Rat(-1)));
    }

    TEST_CASE("plain ball integrals give volumes") {
        CHECK(integrate(ind1(Ball::valuation_ring())) == CElem(MotElem::b()));
        CHECK(integrate(ind1(ob0(1))) == CElem(MotElem::o(Rat(1))));
        CHECK(integrate(ind1(Ball::closed(tpow(-2), Rat(3)))) == CElem(MotElem::c(Rat(3))));
        CHECK(integrate(ind({cb0(0), ob0(0)})) == CElem(MotElem::b() * MotElem::a()));
    }

    TEST_CASE("character over a ball: vanishing and constancy") {
        // Frequency outside the dual ball: the integral vanishes.
        CHECK(integrate(ball_char(Ball::valuation_ring(), tpow(-1))) == CElem());
        CHECK(integrate(ball_char(Ball::valuation_ring(), VfElem(1))) == CElem());
        // Frequency inside the dual ball: volume times the center value.
        CHECK(integrate(ball_char(Ball::valuation_ring(), tpow(1))) == CElem(MotElem::b()));
        CHECK(integrate(ball_char(cb0(2), tpow(-1))) == CElem(MotElem::c(Rat(2))));
        CHECK(integrate(ball_char(cb0(2), tpow(-3))) == CElem());
        CHECK(integrate(ball_char(cb0(2), tpow(-2) + tpow(5))) == CElem());
        // Off-center ball picks up the character of the center.
        const Ball shifted = Ball::closed(tpow(-1), Rat(1));
        CHECK(integrate(ball_char(shifted, VfElem(1))) ==
              CElem(theta(tpow(-1)), MotElem::c(Rat(1))));
        // Open/closed duality boundary: for the open ball of radius 0 the
        // dual condition admits valuation exactly 0.
        CHECK(integrate(ball_char(ob0(0), VfElem(1))) == CElem(MotElem::a()));
        CHECK(integrate(ball_char(cb0(0), VfElem(1))) == CElem());
    }

    TEST_CASE("paired dual volumes appear through iterated integrals") {
        // Integral over b x M of exp<theta(x y)>, both orders, collapses to
        // the unit for each pairing of dual radii.
        const std::vector<Ball> outers = {cb0(-1), cb0(-2), ob0(-2)};
        for (const Ball& b : outers) {
            const MotFn f = fn_mul(chi(Polyball({b, Ball::maximal_ideal()})), nu_char(VfElem(1)));
            CHECK(integrate(f, {0, 1}) == kUnit);
            CHECK(integrate(f, {1, 0}) == kUnit);
        }
    }

    TEST_CASE("iterated integration is order-independent") {
        for (const MotFn& f : corpus_arity2()) {
            const CElem fwd = integrate(f, {0, 1});
            const CElem rev = integrate(f, {1, 0});
            CHECK(fwd == rev);
            CHECK(integrate(f) == fwd);
        }
        const std::vector<std::vector<int>> orders = {
            {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const MotFn& f : corpus_arity3()) {
            const CElem first = integrate(f, orders[0]);
            for (size_t k = 1; k < orders.size(); ++k) {
                const CElem v = integrate(f, orders[k]);
                CAPTURE(f.to_string());
                CAPTURE(k);
                CAPTURE(first.to_string());
                CAPTURE(v.to_string());
                CHECK(v == first);
            }
        }
    }

    TEST_CASE("partial integration leaves a function of the rest") {
        // Integrating the bilinear character in x1 over the ring leaves the
        // dual-ball indicator in x2.
        const MotFn f = fn_mul(chi(Polyball({cb0(0), cb0(-1)})), nu_char(VfElem(1)));
        const MotFn g = integrate_var(f, 0);
        CHECK(g.arity() == 1);
        const MotFn expected =
            fn_scale(ind1(Ball::open(VfElem(), Rat(0))), CElem(MotElem::b()));
        CHECK(fn_equal(g, expected));
    }

    TEST_CASE("linearity of the integral") {
        const auto& c1 = corpus_arity1();
        for (size_t a = 0; a < c1.size(); a += 4) {
            for (size_t b = 1; b < c1.size(); b += 5) {
                const CElem lhs = integrate(fn_add(c1[a], c1[b]));
                CHECK(lhs == integrate(c1[a]) + integrate(c1[b]));
            }
        }
        const CElem s = CElem(MotElem::a()) + CElem::character(theta(tpow(-1)));
        CHECK(integrate(fn_scale(c1[0], s)) == s * integrate(c1[0]));
    }

    TEST_CASE("convolution against the mollifier family") {
        // The normalized small-ball indicator acts as identity on functions
        // invariant at that scale.
        const MotFn f = ind1(Ball::valuation_ring());
        const MotFn id0 = convolution_identity(1, Rat(0));
        CHECK(fn_equal(convolve(f, id0), f));
        CHECK(fn_equal(convolve(id0, f), f));
        // chi_O * chi_O = b . chi_O.
        CHECK(fn_equal(convolve(f, f), fn_scale(f, CElem(MotElem::b()))));
    }

    TEST_CASE("convolution against the bilinear character") {
        // (chi_{O^2} conv nu_1)(y) = e . chi_{O^2}(y).
        const MotFn f = ind({cb0(0), cb0(0)});
        const MotFn conv = convolve(f, nu_char(VfElem(1)));
        CHECK(fn_equal(conv, fn_scale(f, kUnit)));
        // (chi_{O^2} conv nu_t) keeps the twist at negative radius.
        const MotFn convt = convolve(f, nu_char(tpow(1)));
        const MotFn expected =
            fn_scale(fn_mul(ind({ob0(-1), ob0(-1)}), nu_char(tpow(1))),
                     CElem(MotElem::b() * MotElem::b()));
        CHECK(fn_equal(convt, expected));
    }

    TEST_CASE("convolution matches the defining integral at probes") {
        const auto& c1 = corpus_arity1();
        const MotFn f = c1[7];   // chi_O with a frequency
        const MotFn g = c1[3];   // open ball indicator
        const MotFn conv = convolve(f, g);
        for (const auto& p : probe_points(1)) {
            // Independent route: integrate x -> f(x) g(p - x).
            std::map<int, AffineForm> shift;
            shift[0] = AffineForm(p[0]) - AffineForm::variable(0);
            MotFn shifted(1);
            for (const auto& pk : g.packets()) {
                Phase q = pk.phase.substituted(shift);
                std::vector<Constraint> cons;
                for (const auto& c : pk.support)
                    cons.emplace_back(c.form.substituted(shift), c.target);
                shifted.add_packet(WavePacket(1, cons, q, pk.coeff));
            }
            const CElem direct = integrate(fn_mul(f, fn_normalize(shifted)));
            CHECK(fn_eval(conv, p) == direct);
        }
    }

    TEST_CASE("full-space characters are not integrable") {
        CHECK_THROWS_AS(integrate(exp_char(1, {tpow(-2)})), NotIntegrableError);
        try {
            integrate(exp_char(1, {tpow(-2)}));
        } catch (const NotIntegrableError& err) {
            // The diagnostic names the offending packet.
            CHECK(std::string(err.what()).find("packet") != std::string::npos);
        }
    }

    TEST_CASE("arity-zero results read out as values") {
        const MotFn f = ind1(cb0(1));
        const MotFn after = integrate_var(f, 0);
        CHECK(after.arity() == 0);
        CHECK(to_value(after) == CElem(MotElem::c(Rat(1))));
    }
}
