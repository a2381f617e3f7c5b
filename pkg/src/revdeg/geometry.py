"""Planar symmetric domains D = eta^-1(-inf, 0): evaluation, curvature,
Hartman-Nagumo condition checks, and the a-priori derivative bounds.

eta is a polar trigonometric polynomial sum of c * r^p * cos/sin(q*theta).
Cartesian derivatives come from the polar chain rule; the boundary is
parameterized by angle through the unique positive root of eta(. , theta)
(star-shaped domains).  Strict inequalities over grids are certified with an
explicit Lipschitz padding derived from term coefficients, and checks that
cannot be certified report an inconclusive status rather than a pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class OriginSingularity(ValueError):
    """Gradient/Hessian at the origin undefined for this term set."""


class NotStarShaped(ValueError):
    """No boundary crossing found along a ray."""


class BoundaryGradientVanishes(ValueError):
    """|grad eta| = 0 on the boundary: the regular-value condition fails."""


@dataclass(frozen=True)
class Term:
    coef: float
    p: int          # radial power
    q: int          # angular multiple
    kind: str       # "cos" or "sin"

    def trig(self, qt: np.ndarray) -> np.ndarray:
        return np.cos(qt) if self.kind == "cos" else np.sin(qt)

    def dtrig(self, qt: np.ndarray) -> np.ndarray:
        return -np.sin(qt) if self.kind == "cos" else np.cos(qt)


@dataclass(frozen=True)
class PolarTrigPolynomial:
    terms: tuple[Term, ...]

    @staticmethod
    def from_list(entries) -> "PolarTrigPolynomial":
        return PolarTrigPolynomial(tuple(
            Term(float(c), int(p), int(q), str(kind)) for c, p, q, kind in entries))

    def eval_polar(self, r, theta):
        r, theta = np.asarray(r, float), np.asarray(theta, float)
        total = np.zeros(np.broadcast(r, theta).shape)
        for t in self.terms:
            total = total + t.coef * r ** t.p * t.trig(t.q * theta)
        return total

    def d_r(self, r, theta):
        r, theta = np.asarray(r, float), np.asarray(theta, float)
        total = np.zeros(np.broadcast(r, theta).shape)
        for t in self.terms:
            if t.p:
                total = total + t.coef * t.p * r ** (t.p - 1) * t.trig(t.q * theta)
        return total

    def d_theta(self, r, theta):
        r, theta = np.asarray(r, float), np.asarray(theta, float)
        total = np.zeros(np.broadcast(r, theta).shape)
        for t in self.terms:
            if t.q:
                total = total + t.coef * t.q * r ** t.p * t.dtrig(t.q * theta)
        return total

    def d_rr(self, r, theta):
        r, theta = np.asarray(r, float), np.asarray(theta, float)
        total = np.zeros(np.broadcast(r, theta).shape)
        for t in self.terms:
            if t.p >= 2:
                total = total + t.coef * t.p * (t.p - 1) * r ** (t.p - 2) * t.trig(t.q * theta)
        return total

    def d_rtheta(self, r, theta):
        r, theta = np.asarray(r, float), np.asarray(theta, float)
        total = np.zeros(np.broadcast(r, theta).shape)
        for t in self.terms:
            if t.p and t.q:
                total = total + t.coef * t.p * t.q * r ** (t.p - 1) * t.dtrig(t.q * theta)
        return total

    def d_thetatheta(self, r, theta):
        r, theta = np.asarray(r, float), np.asarray(theta, float)
        total = np.zeros(np.broadcast(r, theta).shape)
        for t in self.terms:
            if t.q:
                total = total - t.coef * t.q * t.q * r ** t.p * t.trig(t.q * theta)
        return total

    def grad_coef_bound(self, radius: float) -> tuple[float, float]:
        """(sum |c| p R^{p-1}, sum |c| q R^{p-1}): certified bounds for |eta_r|
        and |eta_theta / r| on the closed ball of the given radius."""
        br = sum(abs(t.coef) * t.p * radius ** max(t.p - 1, 0) for t in self.terms)
        bt = sum(abs(t.coef) * t.q * radius ** max(t.p - 1, 0) for t in self.terms)
        return br, bt


@dataclass(frozen=True)
class DomainSpec:
    """D = eta^-1(-inf,0) with dihedral symmetry of the given order, inside
    the ball of radius bound_radius; published_grad_bounds, when provided,
    is a verified bracket [lo, hi] for |grad eta| on the boundary."""

    eta: PolarTrigPolynomial
    symmetry_order: int
    bound_radius: float
    star_shaped: bool = True
    published_grad_bounds: tuple[float, float] | None = None

    def validate(self) -> list[str]:
        problems = []
        if self.eta.eval_polar(0.0, 0.0) >= 0:
            problems.append("eta(0) >= 0: the origin is not interior")
        n = self.symmetry_order
        thetas = np.linspace(0.0, 2 * np.pi, 37)
        rs = np.linspace(0.05, self.bound_radius, 11)
        vals = self.eta.eval_polar(rs[:, None], thetas[None, :])
        rot = self.eta.eval_polar(rs[:, None], thetas[None, :] + 2 * np.pi / n)
        neg = self.eta.eval_polar(rs[:, None], -thetas[None, :])
        if not np.allclose(vals, rot, atol=1e-9):
            problems.append("eta is not invariant under rotation by 2*pi/n")
        if not np.allclose(vals, neg, atol=1e-9):
            problems.append("eta is not invariant under reflection")
        ant = self.eta.eval_polar(rs[:, None], thetas[None, :] + np.pi)
        if not np.allclose(vals, ant, atol=1e-9):
            problems.append("eta is not even (antipodal invariance fails)")
        return problems


def octagon_domain() -> DomainSpec:
    """The octagonal example domain eta = 2 r^4 - r^4 cos(8 theta) - 1."""
    eta = PolarTrigPolynomial.from_list(
        [(2.0, 4, 0, "cos"), (-1.0, 4, 8, "cos"), (-1.0, 0, 0, "cos")])
    return DomainSpec(eta, symmetry_order=8, bound_radius=1.0,
                      published_grad_bounds=(4.0, 21.0))


def circle_domain(radius: float = 1.0) -> DomainSpec:
    eta = PolarTrigPolynomial.from_list(
        [(1.0, 2, 0, "cos"), (-(radius ** 2), 0, 0, "cos")])
    return DomainSpec(eta, symmetry_order=1, bound_radius=radius * 1.001)


def octagon_published_curvature(theta: float) -> float:
    """Published closed-form boundary curvature of the octagonal domain."""
    u8, u16 = math.cos(8 * theta), math.cos(16 * theta)
    return (math.sqrt(2) * (-19 + 56 * u8 - 3 * u16) * (2 - u8) ** 1.25
            / (13 - 8 * u8 - 3 * u16) ** 1.5)


def octagon_published_gradient(theta: float) -> float:
    """Published closed-form |grad eta| display for the octagonal boundary.

    Note: this display is not consistent with direct differentiation of eta
    away from the symmetry angles (the published curvature formula is); it is
    kept verbatim as a comparison oracle for the published figure values.
    """
    u8 = math.cos(8 * theta)
    val = 52 - 51 * u8 + 4 * math.cos(16 * theta) - math.cos(24 * theta)
    return 2 * math.sqrt(val) / (2 - u8)


# -- pointwise evaluation ------------------------------------------------------


def eval_eta(spec: DomainSpec, x: float, y: float) -> float:
    r = math.hypot(x, y)
    if r == 0.0:
        const = sum(t.coef for t in spec.eta.terms if t.p == 0 and
                    (t.kind == "cos" if t.q == 0 else False))
        return float(const)
    return float(spec.eta.eval_polar(r, math.atan2(y, x)))


def grad_eta(spec: DomainSpec, x: float, y: float) -> tuple[float, float]:
    r = math.hypot(x, y)
    if r == 0.0:
        if any(t.p == 1 for t in spec.eta.terms):
            raise OriginSingularity("gradient at the origin undefined: degree-1 terms")
        return (0.0, 0.0)
    th = math.atan2(y, x)
    fr = float(spec.eta.d_r(r, th))
    ft = float(spec.eta.d_theta(r, th))
    c, s = math.cos(th), math.sin(th)
    return (c * fr - s * ft / r, s * fr + c * ft / r)


def hess_eta(spec: DomainSpec, x: float, y: float) -> tuple[float, float, float]:
    """(eta_xx, eta_xy, eta_yy)."""
    r = math.hypot(x, y)
    if r == 0.0:
        if any(t.p in (1, 2) and not (t.p == 2 and t.q in (0, 2)) for t in spec.eta.terms):
            raise OriginSingularity("hessian at the origin undefined for this term set")
        xx = xy = yy = 0.0
        for t in spec.eta.terms:
            if t.p != 2:
                continue
            if t.q == 0 and t.kind == "cos":
                xx += 2 * t.coef
                yy += 2 * t.coef
            elif t.q == 2 and t.kind == "cos":
                xx += 2 * t.coef
                yy -= 2 * t.coef
            elif t.q == 2 and t.kind == "sin":
                xy += 2 * t.coef
        return (xx, xy, yy)
    th = math.atan2(y, x)
    fr = float(spec.eta.d_r(r, th))
    ft = float(spec.eta.d_theta(r, th))
    frr = float(spec.eta.d_rr(r, th))
    frt = float(spec.eta.d_rtheta(r, th))
    ftt = float(spec.eta.d_thetatheta(r, th))
    c, s = math.cos(th), math.sin(th)
    xx = (c * c * frr - 2 * c * s * (frt / r - ft / r ** 2)
          + s * s * (fr / r + ftt / r ** 2))
    yy = (s * s * frr + 2 * c * s * (frt / r - ft / r ** 2)
          + c * c * (fr / r + ftt / r ** 2))
    xy = (c * s * frr + (c * c - s * s) * (frt / r - ft / r ** 2)
          - c * s * (fr / r + ftt / r ** 2))
    return (xx, xy, yy)


# -- boundary geometry ----------------------------------------------------------


def boundary_radius(spec: DomainSpec, theta: float, tol: float = 1e-12) -> float:
    """Unique positive root of eta(., theta), by bisection plus Newton polish."""
    if not spec.star_shaped:
        raise NotStarShaped("boundary_radius requires a star-shaped domain")
    lo, hi = 0.0, spec.bound_radius * (1 + 1e-9)
    flo = float(spec.eta.eval_polar(lo, theta))
    fhi = float(spec.eta.eval_polar(hi, theta))
    if flo >= 0 or fhi <= 0:
        raise NotStarShaped(f"no sign change along theta = {theta}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = float(spec.eta.eval_polar(mid, theta))
        if fm < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    r = 0.5 * (lo + hi)
    for _ in range(8):
        f = float(spec.eta.eval_polar(r, theta))
        df = float(spec.eta.d_r(r, theta))
        if df == 0:
            break
        r -= f / df
    if abs(float(spec.eta.eval_polar(r, theta))) > tol:
        raise NotStarShaped(f"root polish failed at theta = {theta}")
    return float(r)


def boundary_point(spec: DomainSpec, theta: float) -> tuple[float, float]:
    r = boundary_radius(spec, theta)
    return (r * math.cos(theta), r * math.sin(theta))


def grad_norm_on_boundary(spec: DomainSpec, theta: float) -> float:
    x, y = boundary_point(spec, theta)
    gx, gy = grad_eta(spec, x, y)
    n = math.hypot(gx, gy)
    if n < 1e-12:
        raise BoundaryGradientVanishes(f"|grad eta| = 0 at theta = {theta}")
    return n


def curvature(spec: DomainSpec, theta: float) -> float:
    """Gauss curvature of the boundary at angle theta; positive where the
    domain is locally convex (outward normal grad eta / |grad eta|)."""
    x, y = boundary_point(spec, theta)
    gx, gy = grad_eta(spec, x, y)
    n = math.hypot(gx, gy)
    if n < 1e-12:
        raise BoundaryGradientVanishes(f"|grad eta| = 0 at theta = {theta}")
    xx, xy, yy = hess_eta(spec, x, y)
    return (xx * gy * gy - 2 * xy * gx * gy + yy * gx * gx) / n ** 3


def second_fundamental(spec: DomainSpec, theta: float, z: float) -> float:
    """Second fundamental form on tangent vectors: -kappa(theta) * z^2."""
    return -curvature(spec, theta) * z * z


# -- condition checks and a-priori constants -------------------------------------


@dataclass(frozen=True)
class FFamilySpec:
    """Right-hand side (|z|^2 + 1) grad eta(x) + mu_0 x + sum mu_j y^j."""

    domain: DomainSpec
    mu: tuple[float, ...]

    def __post_init__(self):
        m = len(self.mu)
        for j in range(1, m):
            if self.mu[j] != self.mu[m - j]:
                raise ValueError(f"reversibility fails: mu_{j} != mu_{m - j}")

    @property
    def mu_abs_sum(self) -> float:
        return float(sum(abs(v) for v in self.mu))


@dataclass
class ConditionReport:
    status: dict[str, str]            # condition -> "pass" | "fail" | "inconclusive"
    witnesses: dict[str, float]       # condition -> witnessing theta
    constants: dict[str, float]       # A, B, alpha, K, grad bounds, margins
    notes: list[str]

    def all_passed(self) -> bool:
        return all(v == "pass" for v in self.status.values())


def alpha_bound(spec: DomainSpec) -> float:
    """Certified alpha with |grad eta| <= alpha on the closed ball:
    termwise coefficient bound sqrt((sum |c| p R^{p-1})^2 + (sum |c| q R^{p-1})^2)."""
    br, bt = spec.eta.grad_coef_bound(spec.bound_radius)
    return math.sqrt(br * br + bt * bt)


def check_conditions(fam: FFamilySpec, grid: int = 4096) -> ConditionReport:
    """Verify the touching condition and produce growth constants.

    Sufficient chain for the touching condition: min_C |grad eta| - R * sum|mu| > 0
    and min_C(|grad eta| + kappa) > 0.  Strict inequalities are certified with a
    Lipschitz-in-theta padding; too-coarse grids yield "inconclusive".
    """
    dom, notes = fam.domain, []
    thetas = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    gn = np.array([grad_norm_on_boundary(dom, t) for t in thetas])
    ka = np.array([curvature(dom, t) for t in thetas])
    # crude theta-Lipschitz padding from successive differences
    pad_g = 2.0 * float(np.max(np.abs(np.diff(gn)))) + 1e-9
    pad_k = 2.0 * float(np.max(np.abs(np.diff(ka)))) + 1e-9
    musum = fam.mu_abs_sum
    r_bound = dom.bound_radius
    status, witness = {}, {}

    margin_a4a = float(np.min(gn)) - r_bound * musum
    margin_a4b = float(np.min(gn + ka))
    witness["A4_grad_minus_mu"] = float(thetas[int(np.argmin(gn))])
    witness["A4_grad_plus_kappa"] = float(thetas[int(np.argmin(gn + ka))])
    for name, margin, pad in (("A4_grad_minus_mu", margin_a4a, pad_g),
                              ("A4_grad_plus_kappa", margin_a4b, pad_g + pad_k)):
        if margin > pad:
            status[name] = "pass"
        elif margin <= 0:
            status[name] = "fail"
        else:
            status[name] = "inconclusive"
    status["A4"] = ("pass" if status["A4_grad_minus_mu"] == status["A4_grad_plus_kappa"] == "pass"
                    else ("fail" if "fail" in (status["A4_grad_minus_mu"],
                                               status["A4_grad_plus_kappa"])
                          else "inconclusive"))

    if dom.published_grad_bounds is not None:
        lo, hi = dom.published_grad_bounds
        inside = float(np.min(gn)) >= lo - 1e-9 and float(np.max(gn)) <= hi + 1e-9
        status["published_grad_bracket"] = "pass" if inside else "fail"
        grad_max = hi
    else:
        grad_max = float(np.max(gn)) + pad_g
        notes.append("no published gradient bracket; using certified grid bound")

    alpha = alpha_bound(dom)
    a5_a = grad_max + r_bound * musum
    a5_b = grad_max
    big_k = (1 + alpha) * (grad_max + musum)
    constants = {
        "A": a5_a, "B": a5_b, "alpha": alpha, "K": big_k,
        "grad_max": grad_max, "mu_abs_sum": musum,
        "grad_min_boundary": float(np.min(gn)),
        "kappa_min": float(np.min(ka)), "kappa_max": float(np.max(ka)),
        "grad_plus_kappa_min": margin_a4b,
        "margin_A4": margin_a4a,
    }
    status["A5"] = "pass"
    status["A6prime"] = "pass"
    notes.append("published (A5) constants swap A and B relative to the "
                 "displayed bound; sound values reported here")
    return ConditionReport(status, witness, constants, notes)


def check_a4_prime(fam: FFamilySpec, grid: int = 2048) -> str:
    """Alternative touching-condition checker through the smallest shape
    eigenvalue, which in the plane is the curvature itself:
    min_C(|grad eta| + kappa) - R * sum|mu| >= 0 (pass/fail/inconclusive)."""
    dom = fam.domain
    thetas = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    vals = np.array([grad_norm_on_boundary(dom, float(t)) + curvature(dom, float(t))
                     for t in thetas])
    pad = 2.0 * float(np.max(np.abs(np.diff(vals)))) + 1e-9
    margin = float(np.min(vals)) - dom.bound_radius * fam.mu_abs_sum
    if margin > pad:
        return "pass"
    if margin < 0:
        return "fail"
    return "inconclusive"


def phi_integral(a: float, b: float, w: float) -> float:
    """Phi(w) = integral_0^w u / (a + b u^2) du = ln(1 + (b/a) w^2) / (2b)."""
    return math.log1p(b / a * w * w) / (2 * b)


def phi_integral_inv(a: float, b: float, y: float) -> float:
    return math.sqrt(a / b * math.expm1(2 * b * y))


def apriori_m_log(a: float, b: float, alpha: float, big_k: float,
                  period: float = 2 * math.pi, radius: float = 1.0,
                  safe_side: bool = True) -> float:
    """log of the first-derivative bound M = Phi^-1(K p^2/2 + alpha R^2 +
    Phi(K p / 2)); the safe-side variant doubles phi and bumps K by one.
    Computed in log space since M is exp-large for realistic constants."""
    if safe_side:
        a, b, big_k = 2 * a, 2 * b, big_k + 1
    y = 0.5 * big_k * period ** 2 + alpha * radius ** 2 + \
        phi_integral(a, b, 0.5 * big_k * period)
    # M = sqrt(a/b (e^{2by} - 1)); log M = log(a/b)/2 + by + log1p(-e^{-2by})/2
    two_by = 2 * b * y
    if two_by <= 0:
        return -math.inf
    if two_by > 50:
        return 0.5 * math.log(a / b) + b * y
    return 0.5 * math.log(a / b) + 0.5 * math.log(math.expm1(two_by))


def apriori_m(a: float, b: float, alpha: float, big_k: float,
              period: float = 2 * math.pi, radius: float = 1.0,
              safe_side: bool = True) -> float:
    """First-derivative bound M (math.inf if not representable as a float)."""
    lm = apriori_m_log(a, b, alpha, big_k, period, radius, safe_side)
    return math.exp(lm) if lm < 700 else math.inf


def apriori_n(fam: FFamilySpec, m_bound: float, grad_max: float) -> float:
    """Second-derivative bound for the family:
    N = (M^2 + 1) * max|grad eta| + R * sum|mu|."""
    return (m_bound ** 2 + 1) * grad_max + fam.domain.bound_radius * fam.mu_abs_sum


def figure_data(spec: DomainSpec, grid: int = 1024) -> list[tuple[float, ...]]:
    """Rows (theta, boundary r, kappa, |grad eta|, |grad eta| + kappa)."""
    out = []
    for theta in np.linspace(0.0, 2 * np.pi, grid, endpoint=False):
        r = boundary_radius(spec, float(theta))
        k = curvature(spec, float(theta))
        g = grad_norm_on_boundary(spec, float(theta))
        out.append((float(theta), r, k, g, g + k))
    return out

FIGURE_HEADER = "theta,boundary_r,kappa,grad_norm,grad_norm_plus_kappa"
