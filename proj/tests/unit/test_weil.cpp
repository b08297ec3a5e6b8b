#include <doctest.h>

#include <motfourier/weil.hpp>

#include "corpus.hpp"

using namespace motfourier;
using namespace motfourier::testsupport;

namespace {

MuFn plane_unit() { return MuFn(ind({cb0(0), cb0(0)}), RvElem::one()); }

}  // namespace

TEST_SUITE("weil") {
    TEST_CASE("pair construction guards") {
        CHECK_THROWS_AS(MuFn(ind1(cb0(0)), RvElem::one()), EngineError);
        CHECK_THROWS_AS(MuFn(ind({cb0(0), cb0(0)}), rv(VfElem())), DivisionByZeroError);
        CHECK(mu_to_string(plane_unit()).find(".mu") != std::string::npos);
    }

    TEST_CASE("unipotent generator twists by the bilinear character") {
        const MuFn out = weil_apply(sl2_u(tpow(1)), plane_unit());
        const MotFn expected = fn_mul(nu(itpow(1)), plane_unit().fn);
        CHECK(fn_equal(out.fn, expected));
        CHECK(out.form == RvElem::one());
        // The zero parameter is the identity.
        const MuFn id = weil_apply(sl2_u(VfElem()), plane_unit());
        CHECK(fn_equal(id.fn, plane_unit().fn));
        // nu is the plane character of the scaled product.
        CHECK(fn_equal(nu(tpow(1)), nu_char(tpow(1))));
    }

    TEST_CASE("diagonal generator rescales support and form") {
        const MuFn out = weil_apply(sl2_s(tpow(1)), plane_unit());
        CHECK(fn_equal(out.fn, ind({cb0(-1), cb0(-1)})));
        CHECK(out.form == rv(tpow(1)));
        CHECK_THROWS_AS(weil_apply(sl2_s(VfElem(1) + tpow(1)), plane_unit()),
                        NonMonomialError);
    }

    TEST_CASE("rotation transforms and rotates the argument") {
        const MuFn out = weil_apply(sl2_w(), plane_unit());
        const MotFn expected = fn_scale(
            ind({ob0(0), ob0(0)}),
            CElem(MotElem::e(-1) * MotElem::b() * MotElem::b()));
        CHECK(fn_equal(out.fn, expected));
        CHECK(out.form == rv(VfElem::i()));
        // Unbounded operands have no transform in the function model.
        CHECK_THROWS_AS(weil_apply(sl2_w(), MuFn(exp_char(2, {tpow(-1), VfElem()}),
                                                 RvElem::one())),
                        NotSchwartzError);
    }

    TEST_CASE("words compose right to left") {
        const SL2Word word{sl2_s(tpow(1)), sl2_u(VfElem(1))};
        const MuFn via_word = weil_apply(word, plane_unit());
        const MuFn via_steps =
            weil_apply(sl2_s(tpow(1)), weil_apply(sl2_u(VfElem(1)), plane_unit()));
        CHECK(mu_equal(via_word, via_steps));
        CHECK(via_word.form == via_steps.form);
    }

    TEST_CASE("three-step word lands on the computed pair") {
        const SL2Word word{sl2_s(tpow(1)), sl2_u(tpow(-1)), sl2_w()};
        const MuFn out = weil_apply(word, plane_unit());
        const MotFn expected = fn_scale(
            fn_mul(ind({ob0(-1), ob0(-1)}), nu(itpow(1))),
            CElem(MotElem::e(-1) * MotElem::b() * MotElem::b()));
        CHECK(fn_equal(out.fn, expected));
        CHECK(out.form == rv(itpow(1)));
    }

    TEST_CASE("pair equality: equal forms reduce to function equality") {
        CHECK(mu_equal(plane_unit(), plane_unit()));
        CHECK_FALSE(mu_equal(plane_unit(), MuFn(ind({ob0(0), ob0(0)}), RvElem::one())));
        CHECK_FALSE(mu_equal(plane_unit(), MuFn(plane_unit().fn, rv(tpow(1)))));
    }

    TEST_CASE("pair equality: graded volume coefficients") {
        // Two presentations of the same pair produced along the braid
        // relation; the forms differ, so equality must fold the ball-volume
        // coefficients against the form valuations.
        const MuFn lhs = weil_apply(SL2Word{sl2_w(), sl2_s(tpow(1))}, plane_unit());
        const MuFn rhs = weil_apply(SL2Word{sl2_s(tpow(-1)), sl2_w()}, plane_unit());
        CHECK_FALSE(lhs.form == rhs.form);
        CHECK(mu_equal(lhs, rhs));
    }

    TEST_CASE("pair equality: substitution witness for bare coefficients") {
        const MuFn lhs(ind({cb0(-1), cb0(0)}), rv(tpow(1)));
        const MuFn rhs(ind({cb0(0), cb0(0)}), RvElem::one());
        CHECK(mu_equal(lhs, rhs));
        CHECK(mu_equal(rhs, lhs));
        // Same function with a mismatched form admits no witness.
        CHECK_FALSE(mu_equal(MuFn(ind({cb0(0), cb0(0)}), rv(tpow(1))), rhs));
    }

    TEST_CASE("defining relations hold on a small sample") {
        const std::vector<MuFn> corpus = {
            plane_unit(),
            MuFn(ind({cb0(-1), cb0(-1)}), rv(tpow(1))),
            MuFn(fn_mul(nu(tpow(1)), ind({cb0(1), cb0(1)})), rv(VfElem::i())),
        };
        const std::vector<VfElem> params = {VfElem(1), tpow(1), tpow(-1), itpow(0)};
        const auto reports = verify_relations(corpus, params);
        REQUIRE(reports.size() == 6);
        for (const auto& rep : reports) {
            CAPTURE(rep.identity);
            CAPTURE(rep.lhs);
            CAPTURE(rep.rhs);
            CHECK(rep.pass);
        }
        CHECK_THROWS_AS(verify_relations(corpus, {VfElem(1) + tpow(1)}), NonMonomialError);
    }
}
