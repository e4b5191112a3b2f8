"""The Ruelle-type L-function for Z^nu with Euclidean length.

log L is evaluated through three independent routes (Euler product over
primitive vectors, Moebius inversion through the full-lattice G, and the
gcd-weighted exponential series), g(s, alpha) through the direct lattice sum
and through its Poisson dual, and the logarithmic derivative through the
Phi-series combination whose n-terms are evaluated by their exact dual
exponential expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import lattice
from .arith import ensure_sieve, moebius
from .errors import DomainError
from .lattice import Character, _as_character
from .special import gamma_half, sphere_area

__all__ = [
    "Truncation",
    "SeriesValue",
    "default_truncation",
    "g_direct",
    "g_poisson",
    "log_G",
    "log_L",
    "log_L_routes",
    "phi",
    "log_deriv_L",
    "C_const",
]


@dataclass(frozen=True)
class Truncation:
    """Cutoffs for the lattice/Moebius/ell sums."""

    radius: float
    ell_limit: int
    mobius_limit: int
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.radius < 1 or self.ell_limit < 1 or self.mobius_limit < 1 or self.tol <= 0:
            raise ValueError("all truncation limits must be positive (radius >= 1)")


@dataclass(frozen=True)
class SeriesValue:
    """Truncated-series value with term count and heuristic tail estimate."""

    value: complex
    terms: int
    tail_estimate: float

    @property
    def real(self) -> float:
        return self.value.real


def default_truncation(s: complex) -> Truncation:
    """radius = max(8, 40/Re s) capped at 300, ell_limit = ceil(40/Re s), mobius_limit = 60.

    Near the imaginary axis the cap keeps ball sizes workable; the series
    evaluators still run there and report the (then larger) tail honestly.
    """
    sr = complex(s).real
    if sr <= 0:
        raise DomainError("need Re(s) > 0")
    return Truncation(
        radius=min(max(8.0, 40.0 / sr), 300.0),
        ell_limit=int(math.ceil(min(40.0 / sr, 400.0))),
        mobius_limit=60,
        tol=1e-9,
    )


def C_const(nu: int) -> float:
    """C(nu) = 2 (2 sqrt(pi))^{nu-1} Gamma((nu+1)/2)."""
    return 2.0 * (2.0 * math.sqrt(math.pi)) ** (nu - 1) * gamma_half(nu + 1)


def _require_right_half(s: complex) -> complex:
    s = complex(s)
    if s.real <= 0:
        raise DomainError("need Re(s) > 0")
    return s


def _exp_tail_estimate(nu: int, sigma: float, R: float) -> float:
    """Estimate of sum_{|n|>R} e^{-sigma |n|} by the radial integral.

    Area(S^{nu-1}) int_{R-1/2}^inf r^{nu-1} e^{-sigma r} dr, evaluated via the
    finite expansion of the incomplete gamma function; the half-cell head
    start keeps the heuristic on the conservative side of shell fluctuations.
    """
    area = sphere_area(nu - 1) if nu >= 2 else 2.0
    u = sigma * max(R - 0.5, 0.0)
    # Gamma(nu, u) = (nu-1)! e^{-u} sum_{k<nu} u^k/k!
    acc = 0.0
    for k in range(nu):
        acc += u**k / math.factorial(k)
    return area * math.factorial(nu - 1) * math.exp(-u) * acc / sigma**nu


def _ball_weighted_sum(
    nu: int,
    R2: int,
    chi: Character,
    weight,
) -> complex:
    """sum over nonzero |n|^2 <= R2 of weight(|n|, gcd) * exp(2 pi i <n, alpha>).

    ``weight(norms, gcds)`` receives float64/int64 arrays and returns weights.
    Deterministic (lexicographic order); moderate balls come from the shared
    cache, large ones are streamed in chunks.
    """
    total = 0j
    if _ball_size(nu, R2) <= 2_000_000:
        chunks = (lattice.ball_array(nu, R2),)
    else:
        chunks = lattice.ball_chunks(nu, R2)
    for chunk in chunks:
        norms = np.sqrt((chunk.astype(np.float64) ** 2).sum(axis=1))
        gcds = np.gcd.reduce(np.abs(chunk), axis=1)
        w = weight(norms, gcds)
        ph = lattice.pairing_phases(chunk, chi)
        total += complex((w * ph).sum())
    return total


def _ball_size(nu: int, R2: int) -> int:
    from .arith import r_table

    return int(r_table(nu, R2)[1:].sum())


def g_direct(s: complex, chi: Character | None, nu: int, tr: Truncation | None = None) -> SeriesValue:
    """g(s, alpha) = sum_{n != 0} exp(2 pi i <n, alpha>) e^{-s |n|}, truncated."""
    s = _require_right_half(s)
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    R2 = int(math.ceil(tr.radius**2))
    val = _ball_weighted_sum(nu, R2, chi, lambda norms, g: np.exp(-s * norms))
    tail = _exp_tail_estimate(nu, s.real, tr.radius)
    return SeriesValue(val, _ball_size(nu, R2), tail)


def _g_direct_deriv(s: complex, chi: Character, nu: int, tr: Truncation) -> complex:
    """g'(s, alpha) = -sum |n| exp(2 pi i <n, alpha>) e^{-s |n|}."""
    R2 = int(math.ceil(tr.radius**2))
    return _ball_weighted_sum(nu, R2, chi, lambda norms, g: -norms * np.exp(-s * norms))


# ---------------------------------------------------------------------------
# Poisson route: Ewald/theta evaluation of the dual sum
# ---------------------------------------------------------------------------


def _theta_1d(a: float, u: float) -> float:
    """theta_a(u) = sum_m exp(-4 pi^2 (m+a)^2 u), by the faster of the two series."""
    if u <= 0:
        raise ValueError("u must be positive")
    u0 = 1.0 / (4.0 * math.pi)
    if u >= u0:
        m = np.arange(-8, 9, dtype=np.float64)
        return float(np.exp(-4.0 * math.pi**2 * (m + a) ** 2 * u).sum())
    # Jacobi transform: (4 pi u)^{-1/2} sum_k e^{-k^2/(4u)} cos(2 pi k a)
    kmax = int(math.ceil(math.sqrt(4.0 * u * 745.0))) + 2
    k = np.arange(1, kmax + 1, dtype=np.float64)
    acc = 1.0 + 2.0 * float((np.exp(-(k**2) / (4.0 * u)) * np.cos(2.0 * math.pi * k * a)).sum())
    return acc / math.sqrt(4.0 * math.pi * u)


def _dual_sum_ewald(s: complex, chi: Character, nu: int) -> tuple[complex, float]:
    """D = sum_m (s^2 + (2 pi |m + alpha|)^2)^{-(nu+1)/2} via the gamma-integral split.

    Valid when Re(s^2) > 0.  Returns (value, error estimate).
    """
    alphas = [float(a) for a in chi.alpha]
    s2 = s * s

    def integrand(w: float, part: int) -> float:
        u = w * w
        th = 1.0
        for a in alphas:
            th *= _theta_1d(a, u)
        z = np.exp(-s2 * u) * th * w**nu
        return float(z.real if part == 0 else z.imag)

    gam = gamma_half(nu + 1)  # Gamma((nu+1)/2)
    re, re_err = integrate.quad(integrand, 0.0, np.inf, args=(0,), epsabs=1e-14, epsrel=1e-12, limit=200)
    if s.imag == 0:
        val = complex(2.0 * re / gam, 0.0)
        err = 2.0 * re_err / gam
    else:
        im, im_err = integrate.quad(integrand, 0.0, np.inf, args=(1,), epsabs=1e-14, epsrel=1e-12, limit=200)
        val = 2.0 * complex(re, im) / gam
        err = 2.0 * (re_err + im_err) / gam
    return val, err


def _box_chunks(nu: int, R: int, max_rows: int = 2_000_000):
    """The full box {-R..R}^nu (origin included) in lexicographic float chunks."""
    line = np.arange(-R, R + 1, dtype=np.float64)
    if nu == 1:
        yield line[:, None]
        return
    rows_per_lead = (2 * R + 1) ** (nu - 1)
    leads_per_chunk = max(1, max_rows // rows_per_lead)
    sub = np.stack([g.ravel() for g in np.meshgrid(*[line] * (nu - 1), indexing="ij")], axis=1)
    for i in range(0, 2 * R + 1, leads_per_chunk):
        leads = line[i : i + leads_per_chunk]
        out = np.empty((leads.size * sub.shape[0], nu))
        for j, l in enumerate(leads):
            out[j * sub.shape[0] : (j + 1) * sub.shape[0], 0] = l
            out[j * sub.shape[0] : (j + 1) * sub.shape[0], 1:] = sub
        yield out


def _dual_sum_truncated(s: complex, chi: Character, nu: int, radius: float) -> tuple[complex, float]:
    """Plain truncated dual sum with the integral-comparison tail estimate."""
    R = int(math.ceil(radius))
    alphas = np.array([float(a) for a in chi.alpha])
    t = (nu + 1) / 2.0
    total = 0j
    for pts in _box_chunks(nu, R):
        sq = ((pts + alphas) ** 2).sum(axis=1)
        total += complex(np.sum((s * s + 4.0 * math.pi**2 * sq) ** (-t)))
    tail = (sphere_area(nu - 1) if nu >= 2 else 2.0) * (2.0 * math.pi) ** (-(nu + 1)) / max(R, 1)
    return total, tail


def g_poisson(s: complex, chi: Character | None, nu: int, tr: Truncation | None = None) -> SeriesValue:
    """g(s, alpha) through the Poisson dual:

        1 + g = (2 (2 pi)^nu s / Area(S^nu)) sum_m (s^2 + (2 pi |m+alpha|)^2)^{-(nu+1)/2}.

    The dual sum is evaluated by an incomplete-gamma/theta split (exact up to
    quadrature error) when Re(s^2) > 0; otherwise it falls back to the plain
    truncated dual sum, whose tail estimate is honest but only ~1/radius.
    """
    s = _require_right_half(s)
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    prefac = 2.0 * (2.0 * math.pi) ** nu * s / sphere_area(nu)
    if (s * s).real > 0:
        D, err = _dual_sum_ewald(s, chi, nu)
        terms = 0
    else:
        D, err = _dual_sum_truncated(s, chi, nu, tr.radius)
        terms = (2 * int(math.ceil(tr.radius)) + 1) ** nu
    val = prefac * D - 1.0
    # the subtraction cancels to rounding once g is tiny (large Re s); the
    # estimate carries that floor so it stays honest there
    err_out = abs(prefac) * err + abs(prefac * D) * 1e-15
    return SeriesValue(val, terms, err_out)


# ---------------------------------------------------------------------------
# log G and the three log L routes
# ---------------------------------------------------------------------------


def log_G(s: complex, chi: Character | None, nu: int, tr: Truncation | None = None) -> SeriesValue:
    """log G(s, alpha) = sum_{l >= 1} g(l s, l alpha) / l."""
    s = _require_right_half(s)
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    total = 0j
    terms = 0
    tail = 0.0
    for ell in range(1, tr.ell_limit + 1):
        u = ell * s
        if u.real > 50.0 and ell > 1:
            break
        sub = Truncation(
            radius=max(2.0, tr.radius / ell),
            ell_limit=tr.ell_limit,
            mobius_limit=tr.mobius_limit,
            tol=tr.tol,
        )
        gv = g_direct(u, chi.scaled(ell), nu, sub)
        total += gv.value / ell
        terms += gv.terms
        tail += gv.tail_estimate / ell
    # geometric bound on the omitted l's: terms behave like 2 nu e^{-l s}
    lmax = tr.ell_limit
    tail += 2 * nu * math.exp(-(lmax + 1) * s.real) / (1 - math.exp(-s.real)) / (lmax + 1)
    return SeriesValue(total, terms, tail)


def _log_L_euler(s: complex, chi: Character, nu: int, tr: Truncation) -> SeriesValue:
    """-sum over primitive |p| <= radius of log(1 - chi(p) e^{-s|p|})."""
    R2 = int(math.ceil(tr.radius**2))
    total = 0j
    count = 0
    for chunk in lattice.ball_chunks(nu, R2):
        g = np.gcd.reduce(np.abs(chunk), axis=1)
        prim = chunk[g == 1]
        norms = np.sqrt((prim.astype(np.float64) ** 2).sum(axis=1))
        ph = lattice.pairing_phases(prim, chi)
        total += complex(-np.log1p(-ph * np.exp(-s * norms)).sum())
        count += prim.shape[0]
    tail = _exp_tail_estimate(nu, s.real, tr.radius)
    return SeriesValue(total, count, tail)


def _log_L_mobius(s: complex, chi: Character, nu: int, tr: Truncation) -> SeriesValue:
    """sum_m mu(m) log G(m s, m alpha)."""
    ensure_sieve(tr.mobius_limit)
    total = 0j
    terms = 0
    tail = 0.0
    for m in range(1, tr.mobius_limit + 1):
        mu = moebius(m)
        if mu == 0:
            continue
        if (m * s).real > 50.0:
            break
        gv = log_G(m * s, chi.scaled(m), nu, tr)
        total += mu * gv.value
        terms += gv.terms
        tail += gv.tail_estimate
    tail += 2 * nu * math.exp(-(tr.mobius_limit + 1) * s.real)
    return SeriesValue(total, terms, tail)


def _log_L_series(s: complex, chi: Character, nu: int, tr: Truncation) -> SeriesValue:
    """sum_n M_nu(n, alpha, 1) e^{-s sqrt(n)} as a gcd-weighted ball sum."""
    R2 = int(math.ceil(tr.radius**2))
    val = _ball_weighted_sum(
        nu, R2, chi, lambda norms, g: np.exp(-s * norms) / g.astype(np.float64)
    )
    tail = _exp_tail_estimate(nu, s.real, tr.radius)
    return SeriesValue(val, _ball_size(nu, R2), tail)


def log_L(s: complex, chi: Character | None, nu: int, tr: Truncation | None = None) -> SeriesValue:
    """log L(s, alpha; nu), returned from the gcd-weighted series route."""
    s = _require_right_half(s)
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    return _log_L_series(s, chi, nu, tr)


def log_L_routes(
    s: complex, chi: Character | None, nu: int, tr: Truncation | None = None
) -> dict[str, SeriesValue]:
    """All three routes, keyed 'euler' / 'mobius' / 'series'."""
    s = _require_right_half(s)
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    return {
        "euler": _log_L_euler(s, chi, nu, tr),
        "mobius": _log_L_mobius(s, chi, nu, tr),
        "series": _log_L_series(s, chi, nu, tr),
    }


# ---------------------------------------------------------------------------
# Phi and the logarithmic derivative
# ---------------------------------------------------------------------------


def phi(
    s: complex,
    chi: Character | None,
    t: float,
    nu: int,
    tr: Truncation | None = None,
) -> SeriesValue:
    """Phi(s, alpha, t; nu) by brute double truncation (exploratory quality).

    n runs to mobius_limit, m over |m| <= n * radius; the reported tail is
    the magnitude of the last n-block (a partial-sum delta, not a bound).
    For the trivial character the m-sum is regrouped by shells through the
    exact count tables once n * radius is large; otherwise the naive
    per-vector loop is used.
    """
    s = _require_right_half(s)
    if t < (nu + 1) / 2:
        raise DomainError("need t >= (nu+1)/2")
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    st = ensure_sieve(tr.mobius_limit)
    alphas = np.array([float(a) for a in chi.alpha])
    total = 0j
    last_block = 0.0
    terms = 0
    for n in range(1, tr.mobius_limit + 1):
        gam = float(st.gam[n])
        R = int(math.ceil(n * tr.radius))
        block = 0j
        count = 0
        # shell grouping costs O(R^3) per block (count-table build) and the
        # naive ball O(R^nu), so it only pays off for nu >= 2
        if chi.is_zero() and R > 64 and nu >= 2:
            block, count = _phi_block_by_shell(s, t, nu, n, R)
        else:
            for pts in _box_chunks(nu, R):
                inside = (pts**2).sum(axis=1) <= R * R
                pts = pts[inside]
                sq = ((pts / n + alphas) ** 2).sum(axis=1)
                block += complex(np.sum((s * s + 4.0 * math.pi**2 * sq) ** (-t)))
                count += pts.shape[0]
        contrib = gam / float(n) ** (nu + 1) * block
        total += contrib
        last_block = abs(contrib)
        terms += count
    return SeriesValue(total, terms, last_block)


def _phi_block_by_shell(s: complex, t: float, nu: int, n: int, R: int) -> tuple[complex, int]:
    """sum over |m| <= R (a ball, m = 0 included) of (s^2 + (2 pi |m|/n)^2)^{-t}
    grouped by shells; alpha = 0 only."""
    from .arith import r_table

    counts = r_table(nu, R * R).astype(np.float64)
    j = np.arange(0, R * R + 1, dtype=np.float64)
    vals = (s * s + 4.0 * math.pi**2 * j / (n * n)) ** (-t)
    return complex((counts * vals).sum()), int(counts.sum())


def _phi_dual_pair(
    s: complex, chi: Character, nu: int, tr: Truncation
) -> tuple[complex, complex]:
    """(Phi(s,alpha,(nu+1)/2), Phi(s,alpha,(nu+3)/2)) by the exact dual expansion.

    For each n the inner m-sum has the closed dual form

        sum_m {s^2 + (2 pi |m/n + alpha|)^2}^{-(nu+1)/2}
            = n^nu Area(S^nu) / (2 (2pi)^nu s) * sum_k e^{2 pi i n <k,alpha>} e^{-n s |k|}

    and its -1/((nu+1) s) d/ds image for the (nu+3)/2 exponent.  Both Phi
    values carry the same (divergent-in-isolation) k=0 parts truncated at the
    same n, so the combination in log_deriv_L cancels them exactly.
    """
    st = ensure_sieve(tr.mobius_limit)
    area = sphere_area(nu)
    pref = area / (2.0 * (2.0 * math.pi) ** nu)
    phi1 = 0j
    phi2 = 0j
    R2 = int(math.ceil(tr.radius**2))
    for n in range(1, tr.mobius_limit + 1):
        gam = float(st.gam[n])
        if (n * s).real > 60.0 and n > 1:
            # remaining k-sums are below double precision; keep k=0 parts only
            phi1 += gam / n * pref / s
            phi2 += gam / n * pref / ((nu + 1) * s * s * s)
            continue
        sub = Truncation(max(2.0, tr.radius / n), tr.ell_limit, tr.mobius_limit, tr.tol)
        chin = chi.scaled(n)
        sub_R2 = int(math.ceil(sub.radius**2))
        e0 = _ball_weighted_sum(nu, sub_R2, chin, lambda norms, g: np.exp(-(n * s) * norms))
        e1 = _ball_weighted_sum(
            nu, sub_R2, chin, lambda norms, g: (n * norms) * np.exp(-(n * s) * norms)
        )
        # Phi_1 n-term: gam/n * pref/s * (1 + e0)
        phi1 += gam / n * pref / s * (1.0 + e0)
        # Phi_2 n-term: gam/n * pref/((nu+1) s) * [ (1+e0)/s^2 + e1/s ]
        phi2 += gam / n * pref / ((nu + 1) * s) * ((1.0 + e0) / (s * s) + e1 / s)
    return phi1, phi2


def log_deriv_L(
    s: complex, chi: Character | None, nu: int, tr: Truncation | None = None
) -> SeriesValue:
    """L'/L (s, alpha; nu) = C(nu) [Phi(.,(nu+1)/2) - (nu+1) s^2 Phi(.,(nu+3)/2)]."""
    s = _require_right_half(s)
    tr = tr or default_truncation(s)
    chi = _as_character(chi, nu)
    p1, p2 = _phi_dual_pair(s, chi, nu, tr)
    val = C_const(nu) * (p1 - (nu + 1) * s * s * p2)
    n_tail = math.exp(-(tr.mobius_limit + 1) * s.real)
    tail = C_const(nu) * sphere_area(nu) / (2 * (2 * math.pi) ** nu) * 2 * nu * n_tail
    return SeriesValue(val, tr.mobius_limit, tail + _exp_tail_estimate(nu, s.real, tr.radius))
