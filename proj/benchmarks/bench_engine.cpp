/*
 * Microbenchmarks for the hot paths: packet integration, transforms,
 * convolution, the plane action, numeric coset sums, and script parsing.
 */
#include <benchmark/benchmark.h>

#include <motfourier/engine.hpp>
#include <motfourier/newton.hpp>
#include <motfourier/padic.hpp>
#include <motfourier/weil.hpp>

namespace {

using namespace motfourier;

VfElem tp(long g) { return VfElem::t_pow(Rat(g)); }

MotFn plane_packet() {
    const Ball o = Ball::valuation_ring();
    return fn_mul(fn_mul(chi(Polyball({o, o})), nu_char(tp(-1))),
                  exp_char(2, {tp(1), VfElem()}));
}

void BM_IntegratePlane(benchmark::State& state) {
    const MotFn f = plane_packet();
    for (auto _ : state) benchmark::DoNotOptimize(integrate(f));
}
BENCHMARK(BM_IntegratePlane);

void BM_FourierPlane(benchmark::State& state) {
    const MotFn f = plane_packet();
    for (auto _ : state) benchmark::DoNotOptimize(fourier0(f));
}
BENCHMARK(BM_FourierPlane);

void BM_Convolve(benchmark::State& state) {
    const MotFn f = fn_mul(chi(Polyball({Ball::valuation_ring()})),
                           exp_char(1, {tp(-1)}));
    const MotFn g = chi(Polyball({Ball::open(VfElem(), Rat(1))}));
    for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g));
}
BENCHMARK(BM_Convolve);

void BM_WeilBraid(benchmark::State& state) {
    const MuFn f(chi(Polyball({Ball::valuation_ring(), Ball::valuation_ring()})),
                 RvElem::one());
    const SL2Word lhs{sl2_w(), sl2_s(tp(1))};
    const SL2Word rhs{sl2_s(tp(-1)), sl2_w()};
    for (auto _ : state)
        benchmark::DoNotOptimize(mu_equal(weil_apply(lhs, f), weil_apply(rhs, f)));
}
BENCHMARK(BM_WeilBraid);

void BM_NumericSum(benchmark::State& state) {
    const PadicConfig cfg(5, 3);
    const MotFn f = fn_mul(chi(Polyball({Ball::closed(VfElem(), Rat(-1))})),
                           exp_char(1, {tp(-1)}));
    for (auto _ : state) benchmark::DoNotOptimize(numeric_integral(f, cfg));
}
BENCHMARK(BM_NumericSum);

void BM_LimitSet(benchmark::State& state) {
    const VfPoly x = VfPoly::variable(2, 0);
    const VfPoly y = VfPoly::variable(2, 1);
    const VfPoly g = y * y - (VfPoly::constant(2, VfElem(1)) + x);
    for (auto _ : state) benchmark::DoNotOptimize(limit_set(g));
}
BENCHMARK(BM_LimitSet);

void BM_ParseScript(benchmark::State& state) {
    const std::string src =
        "f = chi(cball(0, 0)) * expchar(t^-1 * x1)\n"
        "g = chi(oball(0, 1))\n"
        "integrate g\n"
        "verify plancherel f g\n";
    for (auto _ : state) benchmark::DoNotOptimize(parse(src));
}
BENCHMARK(BM_ParseScript);

}  // namespace

BENCHMARK_MAIN();
