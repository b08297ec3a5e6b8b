#include <doctest.h>

#include <motfourier/cring.hpp>
#include <motfourier/motring.hpp>
#include <motfourier/valfield.hpp>

#include <random>

#include "corpus.hpp"

using namespace motfourier;
using testsupport::tpow;

namespace {

MotElem random_mot(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<long> gamma(-3, 3);
    std::uniform_int_distribution<long> expo(1, 2);
    std::uniform_int_distribution<long> coeff(-4, 4);
    MotElem x;
    const int k = nterms(rng);
    for (int j = 0; j < k; ++j) {
        MotElem m(coeff(rng));
        switch (pick(rng)) {
            case 0: m *= MotElem::o(Rat(gamma(rng)), expo(rng)); break;
            case 1: m *= MotElem::c(Rat(gamma(rng)), expo(rng)); break;
            default: m *= MotElem::e(expo(rng)); break;
        }
        x += m;
    }
    return x;
}

}  // namespace

TEST_SUITE("motvalues") {
    TEST_CASE("paired ball volumes collapse to the unit") {
        for (long g = -3; g <= 3; ++g) {
            CHECK(MotElem::o(Rat(g)) * MotElem::c(Rat(-g)) == MotElem::e());
            CHECK(MotElem::c(Rat(-g)) * MotElem::o(Rat(g)) == MotElem::e());
        }
        CHECK(MotElem::a() * MotElem::b() == MotElem::e());
    }

    TEST_CASE("unpaired volume products stay formal") {
        // No additivity of indices: o(1)*o(2) is not any single o(g).
        const MotElem prod = MotElem::o(Rat(1)) * MotElem::o(Rat(2));
        CHECK(prod != MotElem::o(Rat(3)));
        CHECK(MotElem::o(Rat(1)) * MotElem::c(Rat(1)) != MotElem::e());
        CHECK(MotElem::o(Rat(2)) * MotElem::c(Rat(-1)) != MotElem::e());
    }

    TEST_CASE("unit powers cancel") {
        CHECK(MotElem::e(1) * MotElem::e(-1) == MotElem(1));
        CHECK(MotElem::e(2) * MotElem::e(-1) == MotElem::e(1));
        CHECK(MotElem::e(-1) * MotElem::o(Rat(2)) * MotElem::c(Rat(-2)) == MotElem(1));
    }

    TEST_CASE("monomial inverses") {
        CHECK(MotElem::a().inverse() * MotElem::a() == MotElem(1));
        CHECK(MotElem::e().inverse() == MotElem::e(-1));
        const MotElem m = MotElem::o(Rat(1), 2) * MotElem::c(Rat(-2));
        CHECK(m * m.inverse() == MotElem(1));
        CHECK_THROWS_AS((MotElem::a() + MotElem::b()).inverse(), EngineError);
        CHECK(MotElem::b().pow(3) == MotElem::c(Rat(0), 3));
        CHECK(MotElem::b().pow(0) == MotElem(1));
    }

    TEST_CASE("ring laws on random elements") {
        std::mt19937 rng(7101);
        for (int k = 0; k < 60; ++k) {
            const MotElem x = random_mot(rng);
            const MotElem y = random_mot(rng);
            const MotElem z = random_mot(rng);
            CHECK(x + y == y + x);
            CHECK(x * y == y * x);
            CHECK((x + y) * z == x * z + y * z);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x + MotElem() == x);
            CHECK(x * MotElem(1) == x);
            CHECK(x - x == MotElem());
        }
    }

    TEST_CASE("characters form a group under multiplication") {
        const OmegaElem w1 = theta(tpow(-1));
        const OmegaElem w2 = theta(VfElem(1) + tpow(-2));
        const CElem e1 = CElem::character(w1);
        const CElem e2 = CElem::character(w2);
        CHECK(e1 * e2 == CElem::character(w1 + w2));
        CHECK(e1 * CElem::character(-w1) == CElem(1));
        CHECK(CElem::character(OmegaElem()) == CElem(1));
    }

    TEST_CASE("group-ring normal forms merge coefficients") {
        const OmegaElem w = theta(tpow(-1));
        const CElem x = CElem::character(w);
        CHECK(x + x == CElem(w, MotElem(2)));
        CHECK(x - x == CElem());
        const CElem mixed = CElem(MotElem::a()) + x;
        CHECK(mixed * CElem(MotElem::b()) ==
              CElem(MotElem::e()) + CElem(w, MotElem::b()));
        CHECK((-mixed) + mixed == CElem());
    }

    TEST_CASE("value-ring laws on random elements") {
        std::mt19937 rng(7102);
        const std::vector<OmegaElem> omegas = {
            OmegaElem(), theta(tpow(-1)), theta(VfElem(1)), theta(tpow(-2) + VfElem(1))};
        auto random_c = [&](std::mt19937& r) {
            std::uniform_int_distribution<int> nterms(0, 2);
            std::uniform_int_distribution<size_t> pick(0, omegas.size() - 1);
            CElem x;
            const int k = nterms(r);
            for (int j = 0; j < k; ++j) x += CElem(omegas[pick(r)], random_mot(r));
            return x;
        };
        for (int k = 0; k < 40; ++k) {
            const CElem x = random_c(rng);
            const CElem y = random_c(rng);
            const CElem z = random_c(rng);
            CHECK(x * y == y * x);
            CHECK((x + y) * z == x * z + y * z);
            CHECK((x * y) * z == x * (y * z));
        }
    }

    TEST_CASE("rendering is stable") {
        const MotElem m = MotElem::o(Rat(2)) * MotElem::c(Rat(-2)) * MotElem::e(-1);
        CHECK(m.to_string() == MotElem(1).to_string());
        CHECK(CElem().to_string() == "0");
    }
}
