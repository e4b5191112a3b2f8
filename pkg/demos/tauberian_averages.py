"""Averages of the gcd-weighted shell sums M_nu(n, x) at desk scale.

The Dirichlet series of M_nu factors as zeta(x+2s) zeta(2s)^{-1} script-L(s),
and the Tauberian theorem converts the rightmost pole into the leading
behavior of sum_{n<=X} M_nu(n, x).  The constants here carry the
residue/abscissa normalisation; at x = 0 they reduce to the ball volume.
"""

from latzeta import tauber

print("Dirichlet-series identity D(s;x) zeta(2s) = zeta(x+2s) script-L(s):")
from latzeta.special import riemann_zeta

for nu, s, x in ((2, 2.0, 1.0), (4, 3.0, 1.0), (6, 4.0, 0.5)):
    lhs = tauber.D_series(nu, s, x).value.real * riemann_zeta(2 * s).value.real
    rhs = riemann_zeta(x + 2 * s).value.real * tauber.script_L(nu, s).value.real
    print(f"  nu={nu}, s={s}, x={x}: rel delta {abs(lhs - rhs) / abs(rhs):.1e}")

print("\nfinite-X averages vs predicted leading constants (x = 1):")
for nu, X in ((2, 10**6), (3, 10**5), (4, 10**5), (6, 10**5)):
    rep = tauber.make_report(nu, 1.0, X)
    print(f"  nu={nu}, X={X:>7}: observed/predicted = {rep.ratio:.5f}"
          f"   (constant {rep.predicted_constant:.6f}, power {rep.predicted_power})")

print("\nthe three regimes for nu = 2:")
for x in (1.0, -1.0, -3.0):
    C, p, logf = tauber.asymptotic_constant(2, x)
    kind = "X^%g log X" % p if logf else "X^%g" % p
    print(f"  x={x:+}: leading term {C:.6f} * {kind}")

print("\ntwo routes to the x = 1 constants (residue form vs Bernoulli form):")
for ell, parity, nu in ((1, "even", 2), (2, "even", 4), (1, "odd", 3)):
    a = tauber.bernoulli_constant(ell, parity)
    b = tauber.asymptotic_constant(nu, 1.0)[0]
    print(f"  nu={nu}: {a:.12f} vs {b:.12f}")

print("\nCSV report:")
print(tauber.report_csv([tauber.make_report(2, 1.0, 10**5), tauber.make_report(2, -1.0, 10**5)]))
