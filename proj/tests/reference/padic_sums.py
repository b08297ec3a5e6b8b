#!/usr/bin/env python3
"""Independent p-adic reference sums.

Computes, by brute-force coset enumeration over Z_p, the integrals that the
symbolic engine is expected to produce.  The outputs printed by this script
are frozen into the C++ test suite (grep for "padic_sums.py" in tests/).

Everything here is exact rational arithmetic except the final character
values, which are complex floats; all comparisons use a 1e-12 tolerance,
far below the 1e-9 the test suite allows.

Conventions:
  - valuation v(x) of a nonzero rational with only p-power denominator,
  - closed ball cball(c, g) = {x : v(x-c) >= g} = c + p^g Z_p (g an integer),
  - open ball oball(c, g) = {x : v(x-c) > g} = c + p^(g+1) Z_p,
  - additive character psi(x) = exp(2*pi*i*frac(x/p)), trivial on p*Z_p and
    nontrivial on Z_p,
  - Haar measure with vol(Z_p) = 1, so vol(c + p^m Z_p) = p^(-m).

Run: python3 tests/reference/padic_sums.py
"""

from fractions import Fraction
from itertools import product
import cmath
import math

TWO_PI = 2.0 * math.pi


def val(x: Fraction, p: int) -> Fraction:
    """p-adic valuation of a rational (must have p-power-only denominator for
    the uses below, but works generally); raises on 0."""
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def frac_part(x: Fraction) -> Fraction:
    return x - Fraction(math.floor(x))


def psi(x: Fraction, p: int) -> complex:
    """Additive character of conductor multiplicity one: trivial on p*Z_p."""
    return cmath.exp(1j * TWO_PI * float(frac_part(x / p)))


def i_lift(p: int, k: int) -> int:
    """Smallest-residue u with u^2 = -1 mod p^k (p = 1 mod 4), by Hensel."""
    u = next(a for a in range(1, p) if (a * a + 1) % p == 0)
    mod = p
    for _ in range(k - 1):
        mod *= p
        # Newton step on f(u) = u^2 + 1.
        inv = pow(2 * u, -1, mod)
        u = (u - (u * u + 1) * inv) % mod
    assert (u * u + 1) % mod == 0
    return u


def ball_reps(center: Fraction, gamma: int, open_: bool, level: int, p: int):
    """Representatives of the level-`level` cosets inside a ball."""
    g = gamma + 1 if open_ else gamma
    assert level >= g
    step = Fraction(p) ** g
    fine = Fraction(p) ** level
    return [center + step * j for j in range(p ** (level - g))], Fraction(p) ** (-level)


def integrate(f, balls, level: int, p: int) -> complex:
    """Exact Riemann sum of f over a product of balls; f must be constant on
    level-`level` cosets (caller's responsibility)."""
    axes = []
    vol = Fraction(1)
    for (c, g, open_) in balls:
        reps, cell = ball_reps(c, g, open_, level, p)
        axes.append(reps)
        vol *= cell
    total = 0j
    for pt in product(*axes):
        total += f(*pt)
    return total * complex(vol)


def close(a: complex, b: complex, tol=1e-12) -> bool:
    return abs(a - b) <= tol


def main():
    p = 5
    F = Fraction

    print("# i_lift tables (u^2 = -1 mod p^k)")
    for pp in (5, 13):
        lifts = [i_lift(pp, k) for k in (1, 2, 3, 4)]
        print(f"i_lift p={pp}: k=1..4 -> {lifts}")

    results = []

    def record(name, value, expect):
        ok = close(value, expect)
        results.append((name, value, expect, ok))
        tag = "ok " if ok else "FAIL"
        print(f"[{tag}] {name}: got {value:.12g}, expect {expect}")

    # --- basic character sums -------------------------------------------
    record("int_{Z_5} psi(x) dx",
           integrate(lambda x: psi(x, p), [(F(0), 0, False)], 1, p), 0)
    record("int_{Z_5} psi(5x) dx",
           integrate(lambda x: psi(5 * x, p), [(F(0), 0, False)], 1, p), 1)
    record("int_{M} psi(x/5) dx  (M = 5Z_5)",
           integrate(lambda x: psi(x / 5, p), [(F(0), 0, True)], 2, p), 0)

    # --- character over a ball: int_{cball(0,-1)} psi(yx) dx ------------
    # expected: p * [v(y) > 1], i.e. vol(cball(0,-1)) on the dual ball.
    for y, expect in [(F(25), 5), (F(5), 0), (F(1), 0)]:
        record(f"int_(cball(0,-1)) psi({y}x) dx",
               integrate(lambda x: psi(y * x, p), [(F(0), -1, False)], 3, p),
               expect)

    # sampled instances of the general rule:
    # int_(ball(c,g)) psi(b x) dx = vol * psi(b c) if b in dual ball else 0
    import random
    rng = random.Random(20260816)
    rule_ok = 0
    for _ in range(40):
        g = rng.randint(-2, 2)
        open_ = rng.choice([True, False])
        b = F(rng.randint(-12, 12)) * F(p) ** rng.randint(-2, 2)
        c = F(rng.randint(-6, 6)) * F(p) ** rng.randint(-1, 1)
        if b == 0:
            continue
        geff = g + 1 if open_ else g
        lvl = max(geff, 0) + 3 + max(0, -val(b, p))
        got = integrate(lambda x: psi(b * x, p), [(c, g, open_)], lvl, p)
        # dual ball of (g, open) at 0 is (-g, closed); of (g, closed) is (-g, open)
        vb = val(b, p)
        in_dual = (vb >= -g) if open_ else (vb > -g)
        expect = (float(p) ** (-geff)) * psi(b * c, p) if in_dual else 0
        if close(got, expect):
            rule_ok += 1
        else:
            print(f"[FAIL] rule sample b={b} c={c} g={g} open={open_}: "
                  f"{got} vs {expect}")
    print(f"character-over-ball rule samples passed: {rule_ok}")

    # --- convolution: (chi_O * chi_O)(a) = [a in Z_5] --------------------
    for a, expect in [(F(0), 1), (F(1), 1), (F(1, 5), 0)]:
        got = integrate(lambda x: (1 if val_ge(x, 0, p) else 0) *
                        (1 if val_ge(a - x, 0, p) else 0),
                        [(F(0), -1, False)], 2, p)  # integrate over superset
        record(f"(chi_O * chi_O)({a})", got, expect)

    # --- Fourier of chi_O: F(chi_O)(b) = [v(b) >= 1] ---------------------
    for b, expect in [(F(1), 0), (F(5), 1), (F(1, 5), 0)]:
        got = integrate(lambda x: psi(b * x, p), [(F(0), 0, False)], 3, p)
        record(f"F(chi_O)({b})", got, expect)

    # --- Fubini / dual volume: int_(B x M) psi(xy) = 1/5 -----------------
    # for B in { cball(0,-1), cball(0,-2), oball(0,-2) }, both orders agree;
    # the expected value models a*b (the volume pair product).
    for (g, open_) in [(-1, False), (-2, False), (-2, True)]:
        got = integrate(lambda x, y: psi(x * y, p),
                        [(F(0), g, open_), (F(0), 0, True)], 4, p)
        record(f"int_(ball(0,{g},{'o' if open_ else 'c'}) x M) psi(xy)",
               got, 0.2)

    # --- Plancherel with f = g = chi_O (n=1, trivial G) ------------------
    # LHS: t * int f g with t = e -> (1/5) * 1;  both sides must be 1/5.
    lhs = F(1, 5) * integrate(lambda x: 1.0, [(F(0), 0, False)], 1, p)
    record("plancherel lhs e*int(chi_O^2)", complex(lhs), 0.2)
    # RHS: int fhat * (g-check)hat; fhat = chi_M pointwise values:
    rhs = integrate(lambda y: (1 if val_ge(y, 1, p) else 0) ** 2,
                    [(F(0), -1, False)], 2, p)
    record("plancherel rhs int(chi_M^2)", rhs, 0.2)

    # --- Poisson with f = chi_O, H = O: both sides 1/5 -------------------
    rhs = integrate(lambda y: (1 if val_ge(y, 1, p) else 0),
                    [(F(0), 0, True)], 2, p)
    record("poisson rhs int_M chi_M", rhs, 0.2)

    # --- distribution evaluations ----------------------------------------
    record("int_(oball(0,1)) chi_O",
           integrate(lambda x: 1.0 if val_ge(x, 0, p) else 0.0,
                     [(F(0), 1, True)], 2, p), 1 / 25)
    # fourier-distribution of Regular(chi_O) at (0, 1):
    # D(hhat) with hhat = p^{-2} chi_{cball(0,-1)}:
    record("D^(0,1) for D=Regular(chi_O)",
           integrate(lambda x: (F(1, 25) if val_ge(x, -1, p) else 0) *
                     (1 if val_ge(x, 0, p) else 0) and complex(F(1, 25)) or 0j,
                     [(F(0), 0, False)], 2, p), 1 / 25)

    # --- nu vanishing: int_(oball(a,0)^2) psi(x1 x2) = 0 when
    #     v(a1) < 0 (and b=1, gamma=0) --------------------------------------
    a1 = a2 = F(1, 5)
    got = integrate(lambda x, y: psi(x * y, p),
                    [(a1, 0, True), (a2, 0, True)], 3, p)
    record("int nu_1 over oball((1/5,1/5),0)", got, 0)

    # --- weil w action: F(chi_{O^2})(y1,y2) = [v(y1)>=1][v(y2)>=1] -------
    for (y1, y2, expect) in [(F(5), F(5), 1), (F(1), F(5), 0)]:
        got = integrate(lambda x1, x2: psi(y1 * x1 + y2 * x2, p),
                        [(F(0), 0, False), (F(0), 0, False)], 3, p)
        record(f"F(chi_O^2)({y1},{y2})", got, expect)

    # --- spec_c witnesses -------------------------------------------------
    record("psi(1) = e^(2 pi i/5)", psi(F(1), p),
           cmath.exp(1j * TWO_PI / 5))
    record("psi(1/5) = e^(2 pi i/25)", psi(F(1, 5), p),
           cmath.exp(1j * TWO_PI / 25))
    u2 = i_lift(5, 2)  # i at level 2
    record("psi(i) with i->7 mod 25", psi(F(u2), p),
           cmath.exp(1j * TWO_PI * 7 / 5))  # frac(7/5) = 2/5 ... printed both

    bad = [r for r in results if not r[3]]
    print(f"\n{len(results) - len(bad)}/{len(results)} checks passed")
    if bad:
        raise SystemExit(1)


def val_ge(x: Fraction, g: int, p: int) -> bool:
    """v(x) >= g, with v(0) = +infinity."""
    return x == 0 or val(x, p) >= g


if __name__ == "__main__":
    main()
