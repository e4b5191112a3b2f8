"""Zeta-regularized determinants det(Delta_{nu,alpha} + s^2) on the torus.

Odd and even dimensions return the canonical exponential representatives
(any exp(poly of degree 2 ell) ambiguity is annihilated by the ladder
operator d/ds (1/(2s) d/ds)^ell, which all cross-checks apply).  The even
case uses constants corrected for a factor-2ell slip in the source chain;
they are the ones that satisfy the convergent spectral-sum identity, which
is this module's strongest oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from . import lattice
from .arith import r_twisted
from .errors import DomainError
from .lattice import Character, _as_character
from .ruelle import Truncation
from .special import bessel_K_array, sphere_area

__all__ = [
    "c_coeff",
    "LadderCoeffs",
    "ladder_coeffs",
    "P_poly",
    "Q_func",
    "det_truncation",
    "det_odd",
    "det_even",
    "log_det_odd",
    "log_det_even",
    "det_dim1_exact",
    "spectral_sum",
    "spectral_sum_dual_even",
    "psf_odd_rhs",
    "psf_even_rhs",
    "fourier_power_kernel",
    "ladder_mixed",
    "ladder_pure",
]


@lru_cache(maxsize=None)
def c_coeff(ell: int, k: int) -> Fraction:
    """c_k^(ell) = (1/(2^k k!)) prod_{j=1-k}^{k} (ell+j); c_0 = 1."""
    if not 0 <= k <= ell and not (ell == 0 and k == 0):
        raise IndexError(f"need 0 <= k <= ell, got k={k}, ell={ell}")
    if k == 0:
        return Fraction(1)
    if ell == 0:
        return Fraction(1)
    prod = Fraction(1)
    for j in range(1 - k, k + 1):
        prod *= ell + j
    return prod / (Fraction(2) ** k * math.factorial(k))


@dataclass(frozen=True)
class LadderCoeffs:
    """The full row c_0^(ell) .. c_ell^(ell), validated against the recursion
    c_k^(ell) - c_k^(ell-1) = (ell - k + 1) c_{k-1}^(ell)."""

    ell: int
    c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.c) != self.ell + 1 or self.c[0] != 1:
            raise ValueError("need ell + 1 coefficients with c_0 = 1")
        for k in range(1, self.ell + 1):
            prev = c_coeff(self.ell - 1, k) if k <= self.ell - 1 else Fraction(0)
            if self.c[k] - prev != (self.ell - k + 1) * self.c[k - 1]:
                raise ValueError(f"recursion fails at k={k}")


def ladder_coeffs(ell: int) -> LadderCoeffs:
    """All c-coefficients for one ell, as a validated record."""
    return LadderCoeffs(ell=ell, c=tuple(c_coeff(ell, k) for k in range(ell + 1)))


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def P_poly(ell: int, s: complex, a: float) -> complex:
    """P_ell(s, a): 2^{ell+1} s^{2ell+1}/(2ell+1)!! at a=0, else the c-ladder polynomial."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    s = complex(s)
    if a == 0:
        return 2.0 ** (ell + 1) * s ** (2 * ell + 1) / _double_factorial(2 * ell + 1)
    acc = 0j
    for k in range(ell + 1):
        acc += float(c_coeff(ell, k)) * a ** (-k) * s ** (ell - k)
    return (-2.0 / a) ** (ell + 1) * acc


def Q_func(ell: int, s: float, a: float) -> float:
    """Q_ell(s, a): s^{2ell} log s / ell! at a=0, else (-1)^{ell+1} (2s/a)^ell K_ell(as)."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if s <= 0:
        raise DomainError("Q_func requires s > 0")
    if a == 0:
        return s ** (2 * ell) * math.log(s) / math.factorial(ell)
    kv = float(bessel_K_array(ell, np.array([a * s]))[0])
    return (-1.0) ** (ell + 1) * (2.0 * s / a) ** ell * kv


def det_truncation(s: complex) -> Truncation:
    """|n| <= max(6, 30/(2 pi Re s)); terms carry e^{-2 pi |n| s}."""
    sr = complex(s).real
    if sr <= 0:
        raise DomainError("need Re(s) > 0")
    return Truncation(radius=max(6.0, 30.0 / (2.0 * math.pi * sr)), ell_limit=1, mobius_limit=1)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def log_det_odd(
    ell: int,
    chi: Character | None,
    s: complex,
    tr: Truncation | None = None,
    by_shell: bool = False,
) -> complex:
    """Exponent of the nu = 2 ell + 1 canonical representative.

    -(-2 pi)^{ell+1} s^{2ell+1} / (2ell+1)!!
      - sum_{n != 0} |n|^{-(ell+1)} sum_k c_k (2 pi |n|)^{-k} s^{ell-k} e^{2 pi i n a} e^{-2 pi |n| s}
    """
    s = complex(s)
    if s.real <= 0:
        raise DomainError("need Re(s) > 0")
    nu = 2 * ell + 1
    chi = _as_character(chi, nu)
    tr = tr or det_truncation(s)
    R2 = int(math.ceil(tr.radius**2))
    cs = [float(c_coeff(ell, k)) for k in range(ell + 1)]
    lead = -((-2.0 * math.pi) ** (ell + 1)) / _double_factorial(2 * ell + 1) * s ** (2 * ell + 1)

    if by_shell:
        acc = 0j
        for n in range(1, R2 + 1):
            rt = r_twisted(nu, n, chi)
            if rt == 0:
                continue
            rn = math.sqrt(n)
            poly = sum(c * (2.0 * math.pi * rn) ** (-k) * s ** (ell - k) for k, c in enumerate(cs))
            acc += rt * rn ** (-(ell + 1)) * poly * np.exp(-2.0 * math.pi * rn * s)
        return lead - acc

    acc = 0j
    for chunk in lattice.ball_chunks(nu, R2):
        norms = np.sqrt((chunk.astype(np.float64) ** 2).sum(axis=1))
        poly = np.zeros(norms.shape, dtype=complex)
        for k, c in enumerate(cs):
            poly += c * (2.0 * math.pi * norms) ** (-float(k)) * s ** (ell - k)
        ph = lattice.pairing_phases(chunk, chi)
        acc += complex(
            (norms ** (-(ell + 1.0)) * poly * ph * np.exp(-2.0 * math.pi * norms * s)).sum()
        )
    return lead - acc


def det_odd(
    ell: int, chi: Character | None, s: complex, tr: Truncation | None = None
) -> complex:
    """det(Delta_{2ell+1, alpha} + s^2), canonical representative (mod exp(deg-2ell poly))."""
    return complex(np.exp(log_det_odd(ell, chi, s, tr)))


def log_det_even(
    ell: int,
    chi: Character | None,
    s: float,
    tr: Truncation | None = None,
    by_shell: bool = False,
) -> float:
    """Exponent of the nu = 2 ell canonical representative (real s only).

    2 (-1)^ell pi^ell / ell! * s^{2ell} log s
      - 2 s^ell sum_{n != 0} |n|^{-ell} e^{2 pi i n a} K_ell(2 pi |n| s)
    """
    if ell < 1:
        raise ValueError("ell must be >= 1 for the even case")
    s = float(s)
    if s <= 0:
        raise DomainError("det_even requires real s > 0")
    nu = 2 * ell
    chi = _as_character(chi, nu)
    tr = tr or det_truncation(s)
    R2 = int(math.ceil(tr.radius**2))
    lead = 2.0 * (-1.0) ** ell * math.pi**ell / math.factorial(ell) * s ** (2 * ell) * math.log(s)

    if by_shell:
        acc = 0.0
        for n in range(1, R2 + 1):
            rt = r_twisted(nu, n, chi)
            if rt == 0:
                continue
            rn = math.sqrt(n)
            kv = float(bessel_K_array(ell, np.array([2.0 * math.pi * rn * s]))[0])
            acc += rt.real * rn ** (-ell) * kv
        return lead - 2.0 * s**ell * acc

    acc = 0.0
    for chunk in lattice.ball_chunks(nu, R2):
        norms = np.sqrt((chunk.astype(np.float64) ** 2).sum(axis=1))
        uniq, inv = np.unique(norms, return_inverse=True)
        kv = bessel_K_array(ell, 2.0 * math.pi * uniq * s)[inv]
        ph = lattice.pairing_phases(chunk, chi)
        acc += float((norms ** (-float(ell)) * kv * ph).sum().real)
    return lead - 2.0 * s**ell * acc


def det_even(ell: int, chi: Character | None, s: float, tr: Truncation | None = None) -> float:
    """det(Delta_{2ell, alpha} + s^2), canonical representative (mod exp(deg-2ell poly))."""
    return float(np.exp(log_det_even(ell, chi, s, tr)))


def det_dim1_exact(alpha: Fraction | float, s: complex) -> complex:
    """nu = 1 closed form: e^{2 pi s}(1 - e^{2 pi i a} e^{-2 pi s})(1 - e^{-2 pi i a} e^{-2 pi s})."""
    s = complex(s)
    a = float(alpha)
    e = np.exp(-2.0 * math.pi * s)
    return complex(
        np.exp(2.0 * math.pi * s)
        * (1.0 - np.exp(2j * math.pi * a) * e)
        * (1.0 - np.exp(-2j * math.pi * a) * e)
    )


# ---------------------------------------------------------------------------
# spectral sums (the convergent oracles)
# ---------------------------------------------------------------------------


def spectral_sum(
    nu: int,
    chi: Character | None,
    s: float,
    j: int,
    radius: float | None = None,
) -> float:
    """sum_m (|m + alpha|^2 + s^2)^{-j}, truncated ball plus integral tail.

    Requires j > nu/2.  The tail beyond the ball is approximated by the
    radial integral, which leaves a residual of order radius^{nu-2j-2}.
    """
    if 2 * j <= nu:
        raise DomainError("need j > nu/2")
    if s <= 0:
        raise DomainError("need s > 0")
    chi = _as_character(chi, nu)
    alphas = np.array([float(a) for a in chi.alpha])
    if radius is not None:
        R = float(radius)
    else:
        # residual after the integral correction scales ~ R^{nu-2j-2};
        # larger dimensions need smaller R to stay affordable but also
        # gain from the faster decay of j > nu/2
        default = {1: 50_000.0, 2: 250.0, 3: 150.0}
        R = max(default.get(nu, 40.0), 12.0 * s)
    Ri = int(math.ceil(R)) + 1
    total = 0.0
    from .ruelle import _box_chunks

    for pts in _box_chunks(nu, Ri):
        sq = ((pts + alphas) ** 2).sum(axis=1)
        mask = sq <= R * R
        total += float(np.sum((sq[mask] + s * s) ** (-float(j))))
    area = sphere_area(nu - 1) if nu >= 2 else 2.0
    tail, _ = integrate.quad(
        lambda r: r ** (nu - 1) * (r * r + s * s) ** (-float(j)), R + 0.5, np.inf
    )
    return total + area * tail


def spectral_sum_dual_even(ell: int, chi: Character | None, s: float, tr: Truncation | None = None) -> float:
    """Poisson-dual evaluation of sum_m (|m+alpha|^2+s^2)^{-(ell+1)} in nu = 2 ell dims.

    pi^ell/ell! * [ 1/s^2 + sum_{n != 0} e^{2 pi i n a} (2 pi |n| / s) K_1(2 pi |n| s) ].
    Exponentially convergent; independent check of :func:`spectral_sum`.
    """
    nu = 2 * ell
    chi = _as_character(chi, nu)
    tr = tr or det_truncation(s)
    R2 = int(math.ceil(tr.radius**2))
    acc = 0.0
    for chunk in lattice.ball_chunks(nu, R2):
        norms = np.sqrt((chunk.astype(np.float64) ** 2).sum(axis=1))
        uniq, inv = np.unique(norms, return_inverse=True)
        kv = bessel_K_array(1, 2.0 * math.pi * uniq * s)[inv]
        ph = lattice.pairing_phases(chunk, chi)
        acc += float(((2.0 * math.pi * norms / s) * kv * ph).sum().real)
    return math.pi**ell / math.factorial(ell) * (1.0 / (s * s) + acc)


def psf_odd_rhs(ell: int, chi: Character | None, s: complex, tr: Truncation | None = None) -> complex:
    """2 (-1)^ell pi^{ell+1} sum_{n in Z^{2ell+1}} e^{2 pi i n a} e^{-2 pi s |n|}."""
    nu = 2 * ell + 1
    chi = _as_character(chi, nu)
    tr = tr or det_truncation(s)
    R2 = int(math.ceil(tr.radius**2))
    acc = 1.0 + 0j  # n = 0
    for chunk in lattice.ball_chunks(nu, R2):
        norms = np.sqrt((chunk.astype(np.float64) ** 2).sum(axis=1))
        ph = lattice.pairing_phases(chunk, chi)
        acc += complex((ph * np.exp(-2.0 * math.pi * s * norms)).sum())
    return 2.0 * (-1.0) ** ell * math.pi ** (ell + 1) * acc


def psf_even_rhs(ell: int, chi: Character | None, s: float, tr: Truncation | None = None) -> float:
    """2 (-1)^ell pi^ell [ 1/s + sum_{n != 0} e^{2 pi i n a} (2 pi |n|) K_1(2 pi |n| s) ].

    (Corrected constant; the source's 4 ell (-1)^ell pi^ell carries the
    factor-2ell slip.)
    """
    nu = 2 * ell
    chi = _as_character(chi, nu)
    tr = tr or det_truncation(s)
    R2 = int(math.ceil(tr.radius**2))
    acc = 1.0 / s
    for chunk in lattice.ball_chunks(nu, R2):
        norms = np.sqrt((chunk.astype(np.float64) ** 2).sum(axis=1))
        uniq, inv = np.unique(norms, return_inverse=True)
        kv = bessel_K_array(1, 2.0 * math.pi * uniq * s)[inv]
        ph = lattice.pairing_phases(chunk, chi)
        acc += float(((2.0 * math.pi * norms) * kv * ph).sum().real)
    return 2.0 * (-1.0) ** ell * math.pi**ell * acc


def fourier_power_kernel(ell: int, R: float, s: float) -> float:
    """Fourier transform of (|x|^2 + s^2)^{-(ell+1)} on R^{2 ell} at radius R.

    Equals 2 pi^{ell+1} R s^{-1} K_1(2 pi R s) / ell!  (corrected constant).
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if R <= 0 or s <= 0:
        raise DomainError("need R, s > 0")
    kv = float(bessel_K_array(1, np.array([2.0 * math.pi * R * s]))[0])
    return 2.0 * math.pi ** (ell + 1) * R / (s * math.factorial(ell)) * kv


# ---------------------------------------------------------------------------
# ladder operators by finite differences
# ---------------------------------------------------------------------------


def _fornberg_weights(x0: float, nodes: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at x0 (Fornberg 1988)."""
    n = len(nodes) - 1
    c = np.zeros((n + 1, m + 1))
    c1 = 1.0
    c4 = nodes[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n + 1):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            for k in range(mn, 0, -1):
                c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
            c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def _ladder_coeff_table(ell: int, mixed: bool) -> dict[int, dict[int, float]]:
    """Expansion of the ladder operator as sum_j c_j(s) d^j/ds^j, with c_j(s)
    stored as {power-of-s: coefficient} monomial dicts."""
    coeffs: dict[int, dict[int, float]] = {0: {0: 1.0}}

    def apply_half(cs):
        out: dict[int, dict[int, float]] = {}
        for j, mono in cs.items():
            for k, a in mono.items():
                if k != 0:
                    out.setdefault(j, {})
                    out[j][k - 2] = out[j].get(k - 2, 0.0) + a * k / 2.0
                out.setdefault(j + 1, {})
                out[j + 1][k - 1] = out[j + 1].get(k - 1, 0.0) + a / 2.0
        return out

    def apply_d(cs):
        out: dict[int, dict[int, float]] = {}
        for j, mono in cs.items():
            for k, a in mono.items():
                if k != 0:
                    out.setdefault(j, {})
                    out[j][k - 1] = out[j].get(k - 1, 0.0) + a * k
                out.setdefault(j + 1, {})
                out[j + 1][k] = out[j + 1].get(k, 0.0) + a
        return out

    for _ in range(ell):
        coeffs = apply_half(coeffs)
    if mixed:
        coeffs = apply_d(coeffs)
    return coeffs


def _apply_operator(f, s: float, coeffs: dict[int, dict[int, float]], h: float) -> complex:
    maxj = max(coeffs)
    K = maxj + 3
    nodes = s + h * np.arange(-K, K + 1)
    vals = np.array([complex(f(float(t))) for t in nodes])
    out = 0j
    for j, mono in coeffs.items():
        cj = sum(a * s**k for k, a in mono.items())
        if j == 0:
            dj = vals[K]
        else:
            w = _fornberg_weights(s, nodes, j)
            dj = complex((w * vals).sum())
        out += cj * dj
    return out


def ladder_mixed(f, ell: int, s: float, h: float | None = None) -> complex:
    """d/ds (1/(2s) d/ds)^ell f, by Fornberg central differences."""
    h = h if h is not None else 0.01 * s
    return _apply_operator(f, s, _ladder_coeff_table(ell, True), h)


def ladder_pure(f, k: int, s: float, h: float | None = None) -> complex:
    """(1/(2s) d/ds)^k f, by Fornberg central differences."""
    h = h if h is not None else 0.01 * s
    return _apply_operator(f, s, _ladder_coeff_table(k, False), h)
