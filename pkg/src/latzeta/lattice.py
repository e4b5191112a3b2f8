"""Integer lattice vectors, shells, balls, and unitary characters.

The lattice is Z^nu with the Euclidean squared norm; characters are points
alpha in [0,1)^nu with exact rational components, paired with vectors through
exp(2*pi*i <n, alpha>).  The pairing phase is reduced mod 1 in exact rational
arithmetic before being exponentiated, so long sums do not accumulate phase
drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, ZeroVector

__all__ = [
    "LatticeVector",
    "Character",
    "enumerate_shell",
    "enumerate_ball",
    "vec_gcd",
    "is_primitive",
    "char_pairing",
    "ball_array",
    "ball_chunks",
    "shell_array",
]


@dataclass(frozen=True)
class LatticeVector:
    """An element of Z^nu."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def squared_norm(self) -> int:
        return sum(c * c for c in self.coords)

    @property
    def norm(self) -> float:
        return math.sqrt(self.squared_norm)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def _coerce(v: "LatticeVector | Sequence[int]") -> tuple[int, ...]:
    if isinstance(v, LatticeVector):
        return v.coords
    return tuple(int(c) for c in v)


@dataclass(frozen=True)
class Character:
    """A unitary character of Z^nu, stored as alpha in [0,1)^nu exactly."""

    alpha: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        reduced = tuple(Fraction(a) % 1 for a in self.alpha)
        object.__setattr__(self, "alpha", reduced)

    @classmethod
    def zero(cls, nu: int) -> "Character":
        return cls(tuple(Fraction(0) for _ in range(nu)))

    @classmethod
    def from_string(cls, text: str) -> "Character":
        """Parse comma-separated exact fractions, e.g. ``"1/3,0,1/2"``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty character string")
        return cls(tuple(Fraction(p) for p in parts))

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.alpha)

    def scaled(self, m: int) -> "Character":
        """The character of n -> exp(2 pi i <n, m*alpha>), reduced mod 1."""
        return Character(tuple((m * a) % 1 for a in self.alpha))

    def negated(self) -> "Character":
        return Character(tuple((-a) % 1 for a in self.alpha))

    def numerators_denominator(self) -> tuple[np.ndarray, int]:
        """Common-denominator representation (a_1..a_nu, D) with alpha_j = a_j/D."""
        D = 1
        for a in self.alpha:
            D = D * a.denominator // math.gcd(D, a.denominator)
        nums = np.array([int(a * D) for a in self.alpha], dtype=np.int64)
        return nums, D


def _as_character(chi: "Character | Sequence | int | None", nu: int) -> Character:
    if chi is None or (isinstance(chi, int) and chi == 0):
        return Character.zero(nu)
    if isinstance(chi, Character):
        if chi.dim != nu:
            raise DimensionMismatch(f"character dim {chi.dim} != {nu}")
        return chi
    return Character(tuple(Fraction(a) for a in chi))


def vec_gcd(v: "LatticeVector | Sequence[int]") -> int:
    """gcd of |coords|, ignoring zero entries; undefined for the zero vector."""
    coords = _coerce(v)
    g = 0
    for c in coords:
        g = math.gcd(g, abs(c))
    if g == 0:
        raise ZeroVector("vec_gcd undefined for the zero vector")
    return g


def is_primitive(v: "LatticeVector | Sequence[int]") -> bool:
    return vec_gcd(v) == 1


def char_pairing(v: "LatticeVector | Sequence[int]", chi: Character) -> complex:
    """exp(2 pi i <v, alpha>) with the phase reduced mod 1 exactly first."""
    coords = _coerce(v)
    if len(coords) != chi.dim:
        raise DimensionMismatch(f"vector dim {len(coords)} != character dim {chi.dim}")
    phase = Fraction(0)
    for c, a in zip(coords, chi.alpha):
        phase += c * a
    phase %= 1
    if phase == 0:
        return complex(1.0)
    return complex(np.exp(2j * np.pi * float(phase)))


def enumerate_shell(nu: int, n: int) -> list[LatticeVector]:
    """All v in Z^nu with |v|^2 = n, in lexicographic order."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if n < 0:
        return []
    out: list[LatticeVector] = []
    coords = [0] * nu

    def descend(j: int, remaining: int) -> None:
        if j == nu - 1:
            r = math.isqrt(remaining)
            if r * r == remaining:
                if r == 0:
                    coords[j] = 0
                    out.append(LatticeVector(tuple(coords)))
                else:
                    coords[j] = -r
                    out.append(LatticeVector(tuple(coords)))
                    coords[j] = r
                    out.append(LatticeVector(tuple(coords)))
            return
        bound = math.isqrt(remaining)
        for c in range(-bound, bound + 1):
            coords[j] = c
            descend(j + 1, remaining - c * c)

    descend(0, n)
    # the leaf handling above appends -r then +r, which already preserves
    # lexicographic order within a fixed prefix; sort defensively anyway
    out.sort(key=lambda v: v.coords)
    return out


def enumerate_ball(nu: int, R2: int) -> Iterator[LatticeVector]:
    """All nonzero v in Z^nu with |v|^2 <= R2, each exactly once (lexicographic)."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if R2 < 0:
        raise ValueError("R2 must be >= 0")
    coords = [0] * nu

    def descend(j: int, remaining: int) -> Iterator[LatticeVector]:
        if j == nu - 1:
            bound = math.isqrt(remaining)
            for c in range(-bound, bound + 1):
                coords[j] = c
                v = tuple(coords)
                if any(v):
                    yield LatticeVector(v)
            return
        bound = math.isqrt(remaining)
        for c in range(-bound, bound + 1):
            coords[j] = c
            yield from descend(j + 1, remaining - c * c)

    yield from descend(0, R2)


# ---------------------------------------------------------------------------
# vectorised helpers (used by the series evaluators)
# ---------------------------------------------------------------------------

def _slice_rows(nu: int, R2: int, lead: int) -> np.ndarray:
    """Rows of the ball with first coordinate == lead (including the origin row)."""
    rem = R2 - lead * lead
    if rem < 0:
        return np.empty((0, nu), dtype=np.int64)
    if nu == 1:
        return np.array([[lead]], dtype=np.int64)
    sub = _ball_with_origin(nu - 1, rem)
    out = np.empty((sub.shape[0], nu), dtype=np.int64)
    out[:, 0] = lead
    out[:, 1:] = sub
    return out


def _ball_with_origin(nu: int, R2: int) -> np.ndarray:
    """All |v|^2 <= R2 including 0, lexicographic, as an (N, nu) int64 array."""
    R = math.isqrt(R2)
    if nu == 1:
        return np.arange(-R, R + 1, dtype=np.int64)[:, None]
    parts = [_slice_rows(nu, R2, lead) for lead in range(-R, R + 1)]
    return np.concatenate(parts, axis=0)


_BALL_CACHE: dict[tuple[int, int], np.ndarray] = {}
_BALL_CACHE_ROWS = 0
_BALL_CACHE_MAX_ROWS = 6_000_000  # ~150 MB worst case


def ball_array(nu: int, R2: int) -> np.ndarray:
    """Nonzero ball as an (N, nu) int64 array in lexicographic order.

    Results are kept in a row-budgeted cache; oversized balls are returned
    uncached (prefer :func:`ball_chunks` for those).
    """
    global _BALL_CACHE_ROWS
    key = (nu, R2)
    if key in _BALL_CACHE:
        return _BALL_CACHE[key]
    full = _ball_with_origin(nu, R2)
    arr = full[np.any(full != 0, axis=1)]
    arr.setflags(write=False)
    if arr.shape[0] <= 2_000_000 and _BALL_CACHE_ROWS + arr.shape[0] <= _BALL_CACHE_MAX_ROWS:
        _BALL_CACHE[key] = arr
        _BALL_CACHE_ROWS += arr.shape[0]
    return arr


def ball_chunks(nu: int, R2: int, max_rows: int = 2_000_000) -> Iterator[np.ndarray]:
    """Yield the nonzero ball in lexicographic chunks without holding it whole."""
    R = math.isqrt(R2)
    buf: list[np.ndarray] = []
    rows = 0
    for lead in range(-R, R + 1):
        part = _slice_rows(nu, R2, lead)
        if lead == 0:
            mask = np.any(part != 0, axis=1)
            part = part[mask]
        buf.append(part)
        rows += part.shape[0]
        if rows >= max_rows:
            yield np.concatenate(buf, axis=0)
            buf, rows = [], 0
    if rows:
        yield np.concatenate(buf, axis=0)


def shell_array(nu: int, n: int) -> np.ndarray:
    """The shell |v|^2 = n as an (N, nu) int64 array."""
    vs = enumerate_shell(nu, n)
    if not vs:
        return np.empty((0, nu), dtype=np.int64)
    return np.array([v.coords for v in vs], dtype=np.int64)


def pairing_phases(chunk: np.ndarray, chi: Character) -> np.ndarray:
    """exp(2 pi i <n, alpha>) for every row, phases reduced mod 1 exactly."""
    if chi.is_zero():
        return np.ones(chunk.shape[0])
    nums, D = chi.numerators_denominator()
    ph = (chunk @ nums) % D
    return np.exp((2j * np.pi / D) * ph)
