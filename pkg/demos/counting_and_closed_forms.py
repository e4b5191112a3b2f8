"""Sums of squares: exact counting tables vs closed forms.

r_nu(n) counts lattice points on the sphere |m|^2 = n in Z^nu.  The package
computes it two independent ways: a pure counting convolution (no number
theory) and divisor-form/prime-power closed forms for nu in {2, 4, 6, 8}.
This script shows them agreeing, the normalized multiplicativity that makes
nu in {2, 4, 8} special, and the ball-volume asymptotics of the partial sums.
"""

import math

import numpy as np

from latzeta import arith
from latzeta.special import gamma_half

N = 10_000

print("exact counting table vs closed forms, n <=", N)
for nu in (2, 4, 6, 8):
    brute = arith.r_table(nu, N)
    closed = arith.r_closed_table(nu, N)
    print(f"  nu={nu}: identical = {np.array_equal(brute, closed)}"
          f"   (e.g. r_{nu}(1) = {brute[1]}, r_{nu}(2) = {brute[2]})")

print("\nr_nu(n)/(2 nu) is multiplicative exactly for nu in {2, 4, 8}:")
m, n = 9, 10
for nu in (2, 4, 6, 8):
    lhs = arith.r_closed(nu, m * n) * 2 * nu
    rhs = arith.r_closed(nu, m) * arith.r_closed(nu, n)
    tag = "multiplicative" if lhs == rhs else "NOT multiplicative"
    print(f"  nu={nu}: r({m}*{n})/(2nu) vs r({m})r({n})/(2nu)^2 -> {tag}")

print("\npartial sums approach the ball volume: sum_{n<=X} r_nu(n) ~ pi^(nu/2)/Gamma(nu/2+1) X^(nu/2)")
X = 100_000
for nu in (2, 3, 4):
    total = float(arith.r_table(nu, X)[1:].sum())
    pred = math.pi ** (nu / 2) / gamma_half(nu + 2) * X ** (nu / 2)
    print(f"  nu={nu}: observed/predicted = {total / pred:.5f}")

print("\ngamma(n) = prod_(p|n) (1-p) equals sum_(m|n) m mu(m):")
for n in (1, 2, 6, 30, 360):
    s = sum(d * arith.moebius(d) for d in arith.divisors(n))
    print(f"  n={n}: gamma = {arith.gamma_mult(n)}, divisor sum = {s}")
