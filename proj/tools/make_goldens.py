#!/usr/bin/env python3
"""Regenerates derivations/*.iad. Expected values come from closed forms
(fractions) and mpmath at 60 digits, independent of the C++ code."""
from fractions import Fraction as F
from math import comb, factorial
from pathlib import Path
import mpmath

mpmath.mp.dps = 60
OUT = Path(__file__).resolve().parent.parent / "derivations"

def q(x):
    x = F(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

def dec(x, digits=55):
    return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=-20, max_fixed=20)

def write(name, lines):
    (OUT / name).write_text("\n".join(lines) + "\n")

G = "(recip (poly 1 (1 0) (-1 1)))"

lines = ["; geometric series, its reflection, two-variable substitution,",
         "; translation to 1/2 and antiderivative",
         f"(def G {G})"]
lines += [f"(expect-coeff G ({p}) 1)" for p in range(21)]
lines += ["(def H (recip (poly 1 (1 0) (1 1))))"]
lines += [f"(expect-coeff H ({p}) {(-1) ** p})" for p in range(21)]
lines += ["(def G2 (subst G (poly 2 (1 1 0) (1 0 1))))"]
lines += [f"(expect-coeff G2 ({a} {s - a}) {comb(s, a)})" for s in range(11) for a in range(s + 1)]
lines += ["(def Gh (translate G 1/2))"]
lines += [f"(expect-coeff Gh ({p}) {2 ** (p + 1)} 1/{10 ** 30})" for p in range(17)]
lines += ["(def IG (antider 1 G))", "(expect-coeff IG (0) 0)"]
lines += [f"(expect-coeff IG ({p + 1}) {q(F(1, p + 1))})" for p in range(20)]
lines += ['(expect-value G (1/3) 20 "1.5")']
write("geometric.iad", lines)

lines = ["; L(X) = log(1 + X) as the antiderivative of 1/(1 + X)",
         "(def L (antider 1 (recip (poly 1 (1 0) (1 1)))))", "(expect-coeff L (0) 0)"]
lines += [f"(expect-coeff L ({p}) {q(F((-1) ** (p + 1), p))})" for p in range(1, 21)]
lines += [f'(expect-value L (1/2) 30 "{dec(mpmath.log(1.5))}")',
          f'(expect-const log2 30 "{dec(mpmath.log(2))}")',
          f'(expect-const log:3/2 30 "{dec(mpmath.log(1.5))}")',
          f'(expect-const log:1/2 30 "{dec(-mpmath.log(2))}")',
          f'(expect-const log:10 30 "{dec(mpmath.log(10))}")']
write("log.iad", lines)

lines = ["; arctangent series and the Machin formula",
         "(def A (antider 1 (recip (poly 1 (1 0) (1 2)))))"]
for p in range(21):
    lines.append(f"(expect-coeff A ({p}) {q(F((-1) ** ((p - 1) // 2), p)) if p % 2 else 0})")
lines += [f'(expect-value A (1/5) 30 "{dec(mpmath.atan(mpmath.mpf(1) / 5))}")',
          f'(expect-const pi 10 "{dec(mpmath.pi)}")',
          f'(expect-const pi 50 "{dec(mpmath.pi)}")',
          # second Machin-type formula as an independent cross-check
          "(expect-overlap 30 (const pi) (mul 4 (add (const atan:1/2) (const atan:1/3))))"]
write("arctan.iad", lines)

lines = ["; arcsine as the antiderivative of the algebraic series (1 - X^2)^(-1/2)",
         "(def Y (alg (-1) (0) (1 -1) 1))",
         "(def R (subst Y (poly 1 (1 2))))",
         "(expect-coeff R (2) 1/2)",
         "(def S (antider 1 R))"]
for p in range(9):
    c = F(factorial(2 * p), (2 ** p * factorial(p)) ** 2 * (2 * p + 1))
    lines.append(f"(expect-coeff S ({2 * p + 1}) {q(c)})")
    lines.append(f"(expect-coeff S ({2 * p + 2}) 0)")
lines += [f'(expect-const arcsin_half 30 "{dec(mpmath.pi / 6)}")',
          "(expect-overlap 30 (mul 6 (const arcsin_half)) (const pi))"]
write("arcsin.iad", lines)

lines = ["; Li2 built from int_0^1 G(X T) dT followed by an antiderivative",
         f"(def G {G})",
         "(def S (intlast 1 (subst G (poly 2 (1 1 1)))))"]
lines += [f"(expect-coeff S ({p}) {q(F(1, p + 1))} 1/{10 ** 30})" for p in range(12)]
lines += ["(def Li2 (antider 1 S))"]
lines += [f"(expect-coeff Li2 ({p + 1}) {q(F(1, (p + 1) ** 2))} 1/{10 ** 30})" for p in range(12)]
lines += [f'(expect-const dilog_half 30 "{dec(mpmath.polylog(2, 0.5))}")',
          "(expect-overlap 30 (const dilog_half) (sub (div (pow (const pi) 2) 12) (div (pow (const log2) 2) 2)))"]
write("dilog.iad", lines)

lines = ["; exp(X) - 1 as the compositional inverse of L, and e by argument halving",
         "(def L (antider 1 (recip (poly 1 (1 0) (1 1)))))",
         "(def E1 (inverse L))", "(expect-coeff E1 (0) 0)"]
lines += [f"(expect-coeff E1 ({p}) {q(F(1, factorial(p)))})" for p in range(1, 11)]
lines += [f'(expect-const e 30 "{dec(mpmath.e)}")']
write("exp.iad", lines)

lines = ["; sine as the compositional inverse of the arcsine series",
         "(def S (antider 1 (subst (alg (-1) (0) (1 -1) 1) (poly 1 (1 2)))))",
         "(def Sin (inverse S))"]
for p in range(12):
    lines.append(f"(expect-coeff Sin ({p}) {q(F((-1) ** ((p - 1) // 2), factorial(p))) if p % 2 else 0})")
lines += [f'(expect-const sin:1/2 20 "{dec(mpmath.sin(0.5))}")',
          f'(expect-const sin:-1/2 20 "{dec(-mpmath.sin(0.5))}")',
          f'(expect-const sin:3 20 "{dec(mpmath.sin(3))}")']
write("sine.iad", lines)

lines = ["; algebraic leaves",
         "(def Q (alg (-1 -1) (0) (1) 1))"]
c = F(1)
for p in range(12):
    lines.append(f"(expect-coeff Q ({p}) {q(c)})")
    c = c * (F(1, 2) - p) / (p + 1)
lines += ["(def Gq (alg (-1) (1 -1) 1))"]
lines += [f"(expect-coeff Gq ({p}) 1)" for p in range(12)]
write("algebraic.iad", lines)
