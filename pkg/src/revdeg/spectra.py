"""Spectrum of the linearization at the origin for commensurate delays.

Mode-k eigenvalue on the l-th antipodal component:

    xi_{k,l} = 1 + (sum_{j=0}^{m-1} cos(2*pi*j*k/m) * mu_j^l - 1) / (1 + k^2),

computed from the complex-exponential form of the linearization (the full
delay sum), not from the folded half-sum, whose even-m correction term is
re-derived separately and only reported for comparison.  For m in
{1, 2, 3, 4, 6} every cosine is rational and the arithmetic is exact; other
m use floats with a certified sign margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

EXACT_M = {1, 2, 3, 4, 6}
SIGN_MARGIN = 1e-9

# 2*cos(2*pi/m) rational cases: cos table for exact m
_COS_TABLE = {
    1: {0: Fraction(1)},
    2: {0: Fraction(1), 1: Fraction(-1)},
    3: {0: Fraction(1), 1: Fraction(-1, 2), 2: Fraction(-1, 2)},
    4: {0: Fraction(1), 1: Fraction(0), 2: Fraction(-1), 3: Fraction(0)},
    6: {0: Fraction(1), 1: Fraction(1, 2), 2: Fraction(-1, 2), 3: Fraction(-1),
        4: Fraction(-1, 2), 5: Fraction(1, 2)},
}


class ReversibilityError(ValueError):
    """mu_j != mu_{m-j} for some j."""


class SignNotCertified(ArithmeticError):
    """A spectral sign decision fell inside the floating-point margin."""


@dataclass(frozen=True)
class LinearizationSpec:
    """Delay count m and the eigenvalue table mu_j^l of the linearization.

    mu maps the component index l to the tuple (mu_0^l, ..., mu_{m-1}^l);
    mult maps l to the isotypic multiplicity m^l.  Entries may be Fractions
    (exact) or floats.
    """

    m: int
    mu: dict[int, tuple]
    mult: dict[int, int]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("delay count m must be >= 1")
        for l, row in self.mu.items():
            if len(row) != self.m:
                raise ValueError(f"mu row for component {l} has length "
                                 f"{len(row)}, expected {self.m}")
            for j in range(1, self.m):
                if row[j] != row[self.m - j]:
                    raise ReversibilityError(
                        f"mu_{j} != mu_{self.m - j} on component {l}")
        if set(self.mult) != set(self.mu):
            raise ValueError("mult and mu must cover the same components")
        for l, v in self.mult.items():
            if v < 0:
                raise ValueError(f"multiplicity of component {l} is negative")

    @property
    def components(self) -> list[int]:
        return sorted(self.mu)

    def abs_mu_sum(self, l: int) -> float:
        return float(sum(abs(x) for x in self.mu[l]))


def _cos(j: int, k: int, m: int):
    if m in EXACT_M:
        return _COS_TABLE[m][(j * k) % m]
    return math.cos(2 * math.pi * ((j * k) % m) / m)


def mode_sum(spec: LinearizationSpec, k: int, l: int):
    """S_k^l = sum_j cos(2*pi*j*k/m) mu_j^l (exact when possible)."""
    row = spec.mu[l]
    exact = spec.m in EXACT_M and all(isinstance(x, Rational) for x in row)
    total = Fraction(0) if exact else 0.0
    for j, mu_j in enumerate(row):
        c = _cos(j, k, spec.m)
        total += (c if exact else float(c)) * (mu_j if exact else float(mu_j))
    return total


def xi(spec: LinearizationSpec, k: int, l: int):
    """Mode-k eigenvalue on component l; Fraction when exactly computable."""
    s = mode_sum(spec, k, l)
    if isinstance(s, Fraction):
        return 1 + Fraction(s - 1, 1 + k * k)
    return 1.0 + (s - 1.0) / (1.0 + k * k)


def xi_published_form(spec: LinearizationSpec, k: int, l: int):
    """The folded half-sum variant with the published even-m correction
    (subtracting the half-index term); differs from xi for even m."""
    m, row = spec.m, spec.mu[l]
    r = (m - 1) // 2
    eps = 1 if m % 2 == 0 else 0
    s = row[0] + sum(2 * _cos(j, k, m) * row[j] for j in range(1, r + 1))
    if eps:
        s -= row[r]
    denom = 1 + k * k
    if isinstance(s, Fraction):
        return 1 + Fraction(s - 1, denom)
    return 1.0 + (float(s) - 1.0) / denom


def sign_of(value) -> int:
    """Certified sign (-1, 0, +1); raises when a float is inside the margin."""
    if isinstance(value, Fraction):
        return (value > 0) - (value < 0)
    if abs(value) < SIGN_MARGIN:
        raise SignNotCertified(f"cannot certify sign of {value}")
    return 1 if value > 0 else -1


def cutoff(spec: LinearizationSpec) -> int:
    """K* with xi_{k,l} > 0 guaranteed for all k > K*, from the bound
    xi >= 1 - (1 + sum_j |mu_j|) / (1 + k^2)."""
    kstar = 0
    for l in spec.components:
        s = spec.abs_mu_sum(l)
        kstar = max(kstar, math.isqrt(int(math.floor(s))) + 1)
    while any(1 - (1 + spec.abs_mu_sum(l)) / (1 + kstar * kstar) <= 0
              for l in spec.components):
        kstar += 1
    return kstar


def cutoff_certificate(spec: LinearizationSpec, kstar: int) -> bool:
    """True iff the bound proves xi_{k,l} > 0 for every k > kstar."""
    k = kstar + 1
    return all(1 - (1 + spec.abs_mu_sum(l)) / (1 + k * k) > 0
               for l in spec.components)


@dataclass(frozen=True)
class SpectralSummary:
    spec: LinearizationSpec
    kstar: int
    xis: dict[tuple[int, int], object]          # (k, l) -> xi value, k <= kstar
    negative: tuple[tuple[int, int], ...]       # (k, l) with xi < 0
    multiplicities: dict[tuple[int, int], int]  # m_{k,l}
    degenerate_modes: tuple[int, ...]           # modes k with some xi == 0
    nondegenerate: bool

    @property
    def active_modes(self) -> list[int]:
        return sorted({k for k, _ in self.negative})

    def published_form_disagreements(self) -> list[tuple[int, int]]:
        out = []
        for (k, l), v in self.xis.items():
            w = xi_published_form(self.spec, k, l)
            if isinstance(v, Fraction) and isinstance(w, Fraction):
                if v != w:
                    out.append((k, l))
            elif abs(float(v) - float(w)) > 1e-9:
                out.append((k, l))
        return sorted(out)


def spectral_summary(spec: LinearizationSpec) -> SpectralSummary:
    kstar = cutoff(spec)
    xis, negative, mult, degenerate = {}, [], {}, set()
    for k in range(kstar + 1):
        for l in spec.components:
            v = xi(spec, k, l)
            xis[(k, l)] = v
            s = sign_of(v) if not isinstance(v, Fraction) or v != 0 else 0
            if s < 0:
                negative.append((k, l))
                mult[(k, l)] = spec.mult[l]
            else:
                mult[(k, l)] = 0
                if s == 0:
                    degenerate.add(k)
    return SpectralSummary(
        spec, kstar, xis, tuple(sorted(negative)), mult,
        tuple(sorted(degenerate)), nondegenerate=not degenerate)


def degenerate_fold_search(summary: SpectralSummary, bound: int = 64) -> int | None:
    """Smallest s >= 1 with no odd multiple of s in the degenerate mode set."""
    bad = set(summary.degenerate_modes)
    if not bad:
        return 1
    top = max(bad)
    for s in range(1, bound + 1):
        if all(q not in bad for q in range(s, top + 1, 2 * s)):
            return s
    return None
