"""From linearization data to existence certificates.

Builds the isotypic components W_k (x) V_l^- over the dihedral truncation,
computes fixed-space dimensions by character averaging, basic degrees via the
recurrence, the degree of the linearization by two independent routes
(product of basic degrees with parity collapse, and a direct recurrence from
summed fixed-space parities), the invariant omega, maximal orbit types by
certified stabilizer sampling, mode parities, and the existence decision
procedure for both the nondegenerate and the degenerate spectrum case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import burnside as br
from .burnside import BurnsideElement, recurrence, unit
from .chars import CharacterTable, as_int, character_table, minus_irreps
from .groups import closure, make_cyclic, make_dihedral
from .lattice import ClassLattice, O2Desc
from .spectra import (
    LinearizationSpec,
    SpectralSummary,
    degenerate_fold_search,
    spectral_summary,
    xi,
)

STAB_TOL = 1e-7


class RouteDisagreement(RuntimeError):
    """Product-of-basic-degrees and direct recurrence gave different elements."""


class IncompleteLattice(RuntimeError):
    """Stabilizer sampling failed its fixed-space consistency certificate."""


@dataclass(frozen=True)
class Certificate:
    """Existence certificate for a non-constant periodic solution."""

    class_id: int
    label: str
    fold: int
    non_constant: bool
    extended_orbit_type: bool
    parity: int


@dataclass
class DegreeReport:
    basic_degrees: dict[tuple[int, int], BurnsideElement]
    degree_linearization: BurnsideElement | None
    omega: BurnsideElement | None
    maximal_orbit_types: dict[int, list[str]]  # mode -> class labels
    parities: dict[tuple[str, int], int]       # (class label, mode) -> frak n
    certificates: list[Certificate]
    degenerate: bool
    degenerate_fold: int | None
    notes: list[str]


class DegreeEngine:
    """Degree computations for G = O(2) x Gamma x Z2 over a ClassLattice."""

    def __init__(self, kind: str, n: int, base_level: int | None = None,
                 max_mode_hint: int = 4):
        self.kind, self.n = kind, n
        self.table: CharacterTable = character_table(kind, n)
        self.minus = minus_irreps(self.table)
        gamma = make_dihedral(n) if kind == "dihedral" else make_cyclic(n)
        if base_level is None:
            base_level = 4 * math.lcm(n, max(max_mode_hint, 1), 2)
        self.lattice = ClassLattice(gamma, base_level,
                                    gamma_param=n if kind == "dihedral" else None)
        self._mat_cache: dict = {}
        self._fix_cache: dict = {}
        self._iso_cache: dict = {}
        self._deg_cache: dict = {}

    # -- components ------------------------------------------------------------

    def component_count(self) -> int:
        return len(self.minus)

    def component_dim(self, l: int) -> int:
        return self.table.irreps[self.minus[l]].dim

    def component_name(self, l: int) -> str:
        return self.table.irreps[self.minus[l]].name

    def natural_component(self) -> int:
        """Index l of the 2-dimensional faithful-rotation component (the
        standard plane for dihedral/cyclic Gamma), when present."""
        for l in range(len(self.minus)):
            ir = self.table.irreps[self.minus[l]]
            if ir.dim == 2 and ir.name.startswith(("rho1", "rot1")):
                return l
        raise ValueError("group has no 2-dimensional natural component")

    # -- representation matrices over the truncation ---------------------------

    def rep_matrices(self, k: int, l: int, level: int) -> np.ndarray:
        """Matrices of W_k (x) V_l^- for every element of the level-M truncation."""
        key = (k, l, level)
        if key in self._mat_cache:
            return self._mat_cache[key]
        lat = self.lattice
        g = lat.group_at(level)
        ir = self.table.irreps[self.minus[l]]
        idx = np.arange(g.order)
        t = (idx // lat.ng) % level
        refl = (idx // lat.ng) >= level
        ge = idx % lat.ng
        gm = ir.matrices[ge]
        if k == 0:
            mats = gm.copy()
        else:
            ang = -2 * np.pi * k * t / level  # e^{i theta} acts as e^{-ik theta}
            c, s = np.cos(ang), np.sin(ang)
            o2 = np.zeros((g.order, 2, 2))
            o2[:, 0, 0], o2[:, 0, 1] = c, -s
            o2[:, 1, 0], o2[:, 1, 1] = s, c
            conj = np.where(refl, -1.0, 1.0)  # kappa conjugates: z -> zbar first
            o2[:, 0, 1] *= conj
            o2[:, 1, 1] *= conj
            mats = np.einsum("nab,ncd->nacbd", o2, gm).reshape(
                g.order, 2 * ir.dim, 2 * ir.dim)
        mats.setflags(write=False)
        self._mat_cache[key] = mats
        return mats

    def rep_dim(self, k: int, l: int) -> int:
        return (1 if k == 0 else 2) * self.component_dim(l)

    # -- fixed-space dimensions -------------------------------------------------

    def fixed_dim(self, k: int, l: int, cid: int) -> int:
        """dim of the class-cid fixed subspace of W_k (x) V_l^-, stable across
        both truncation levels."""
        key = (k, l, cid)
        if key in self._fix_cache:
            return self._fix_cache[key]
        lat = self.lattice
        dims = []
        for level in (lat.m_lo, lat.m_hi):
            members = np.asarray(lat._rep_at(cid, level), dtype=np.int64)
            t = (members // lat.ng) % level
            refl = (members // lat.ng) >= level
            ge = members % lat.ng
            chi_l = self.table.irreps[self.minus[l]].char[ge]
            if k == 0:
                vals = chi_l
            else:
                vals = np.where(refl, 0.0, 2 * np.cos(2 * np.pi * k * t / level)) * chi_l
            dims.append(as_int(float(np.sum(vals)) / len(members),
                               f"fixed dim of {lat.labels[cid]} on V({k},{l})"))
        if dims[0] != dims[1]:
            from .lattice import TruncationInstability
            raise TruncationInstability(
                f"fixed dim of {lat.labels[cid]} on V({k},{l}) differs between levels")
        self._fix_cache[key] = dims[0]
        return dims[0]

    def fixed_projector(self, k: int, l: int, cid: int, level: int) -> np.ndarray:
        mats = self.rep_matrices(k, l, level)
        members = np.asarray(self.lattice._rep_at(cid, level), dtype=np.int64)
        return mats[members].mean(axis=0)

    # -- stabilizer sampling ----------------------------------------------------

    def _uv_vector(self, k: int, l: int, u: complex, v: complex) -> np.ndarray:
        # coordinates of the element with W_k- and V_l-complex values (u, v)
        x0 = (u.real + v.real) / 2
        x3 = (v.real - u.real) / 2
        x1 = (u.imag + v.imag) / 2
        x2 = (u.imag - v.imag) / 2
        return np.array([x0, x1, x2, x3])

    def _sample_points(self, k: int, l: int) -> list[np.ndarray]:
        dl = self.component_dim(l)
        rng = np.random.default_rng(11)
        pts: list[np.ndarray] = []
        if k == 0 and dl == 1:
            pts.append(np.array([1.0]))
        elif (k == 0 and dl == 2) or (k >= 1 and dl == 1):
            angles = [j * np.pi / (2 * self.n) for j in range(4 * self.n)]
            pts.extend(np.array([np.cos(a), np.sin(a)]) for a in angles)
            pts.append(rng.normal(size=2))
        else:
            pts.append(self._uv_vector(k, l, 1.0, 0.0))
            pts.append(self._uv_vector(k, l, 0.0, 1.0))
            for rho in (1.0, 2.0):
                for j in range(4 * self.n):
                    a = j * np.pi / (2 * self.n)
                    pts.append(self._uv_vector(k, l, 1.0, rho * complex(np.cos(a), np.sin(a))))
            pts.append(self._uv_vector(k, l, 1.0, complex(0.7234, 1.3817)))
            pts.append(rng.normal(size=4))
        return pts

    def _stabilizer(self, mats: np.ndarray, p: np.ndarray) -> np.ndarray:
        err = np.abs(mats @ p - p[None, :]).max(axis=1)
        members = np.nonzero(err < STAB_TOL * max(1.0, float(np.abs(p).max())))[0]
        return members

    def isotropy_classes(self, k: int, l: int) -> list[int]:
        """Finite-Weyl isotropy classes of W_k (x) V_l^- \\ {0}, certified against
        fixed-space dimensions of every class in the working set."""
        key = (k, l)
        if key in self._iso_cache:
            return self._iso_cache[key]
        lat = self.lattice
        level = lat.m_lo
        g = lat.group_at(level)
        mats = self.rep_matrices(k, l, level)
        found: set[int] = set()
        for p in self._sample_points(k, l):
            members = self._stabilizer(mats, p)
            sub = closure(g, members.tolist())
            if len(sub.members) != len(members):
                raise IncompleteLattice("stabilizer not closed at tolerance")
            data = lat.lift(sub.members, level)
            if data.o2.kind == "Z":
                continue
            found.add(lat.ensure_handle(sub.members, level))
        # probe fixed spaces of everything currently known, including classes
        # discovered for other components, until no new classes appear
        rng = np.random.default_rng(7)
        frontier = True
        while frontier:
            frontier = False
            for cid in range(len(lat.classes)):
                if not lat.finite_weyl(cid):
                    continue
                if self.fixed_dim(k, l, cid) == 0:
                    continue
                proj = self.fixed_projector(k, l, cid, level)
                p = proj @ rng.normal(size=proj.shape[0])
                if np.abs(p).max() < 1e-9:
                    continue
                members = self._stabilizer(mats, p)
                sub = closure(g, members.tolist())
                if len(sub.members) != len(members):
                    raise IncompleteLattice("stabilizer not closed at tolerance")
                if lat.lift(sub.members, level).o2.kind == "Z":
                    continue
                new = lat.ensure_handle(sub.members, level)
                if new not in found:
                    found.add(new)
                    frontier = True
        iso = sorted(found)
        self._certify_isotropy(k, l, iso)
        self._iso_cache[key] = iso
        return iso

    def _certify_isotropy(self, k: int, l: int, iso: list[int]) -> None:
        lat = self.lattice
        for cid in range(len(lat.classes)):
            if not lat.finite_weyl(cid) or self.fixed_dim(k, l, cid) == 0:
                continue
            if not any(lat.leq(cid, j) for j in iso):
                raise IncompleteLattice(
                    f"class {lat.labels[cid]} fixes a vector of V({k},{l}) but lies "
                    f"under no sampled isotropy class")

    def maximal_orbit_types(self, k: int, l: int) -> list[int]:
        iso = self.isotropy_classes(k, l)
        candidates = [c for c in iso if c != 0]
        out = [c for c in candidates
               if not any(d != c and self.lattice.leq(c, d) for d in candidates)]
        return sorted(out)

    def maximal_orbit_types_mode(self, k: int, components: list[int]) -> list[int]:
        cands: set[int] = set()
        for l in components:
            cands.update(self.maximal_orbit_types(k, l))
        out = [c for c in cands
               if not any(d != c and self.lattice.leq(c, d) for d in cands)]
        return sorted(out)

    # -- degrees ----------------------------------------------------------------

    def basic_degree(self, k: int, l: int) -> BurnsideElement:
        """Degree of -id on the unit ball of W_k (x) V_l^-."""
        key = (k, l)
        if key in self._deg_cache:
            return self._deg_cache[key]
        self.isotropy_classes(k, l)
        lat = self.lattice
        d = {cid: (-1) ** self.fixed_dim(k, l, cid)
             for cid in range(len(lat.classes)) if lat.finite_weyl(cid)}
        deg = recurrence(d, lat)
        self._deg_cache[key] = deg
        return deg

    def degree_of_linearization(self, summary: SpectralSummary) -> BurnsideElement:
        """Product of basic degrees over the negative spectrum, parity-collapsed,
        cross-checked against the direct recurrence route."""
        deg = unit(self.lattice)
        for (k, l), m in sorted(summary.multiplicities.items()):
            if m % 2 == 1:
                deg = deg.multiply(self.basic_degree(k, l))
        direct = self._degree_direct(summary)
        if deg.coeffs != direct.coeffs:
            raise RouteDisagreement(
                "basic-degree product route disagrees with direct recurrence: "
                f"{deg.labeled()} vs {direct.labeled()}")
        return deg

    def _degree_direct(self, summary: SpectralSummary) -> BurnsideElement:
        lat = self.lattice
        d = {}
        for cid in range(len(lat.classes)):
            if not lat.finite_weyl(cid):
                continue
            total = sum(m * self.fixed_dim(k, l, cid)
                        for (k, l), m in summary.multiplicities.items() if m)
            d[cid] = (-1) ** total
        return recurrence(d, lat)

    def omega(self, summary: SpectralSummary) -> BurnsideElement:
        return unit(self.lattice) - self.degree_of_linearization(summary)

    # -- parities and existence --------------------------------------------------

    def frak_n(self, cid: int, k: int, summary: SpectralSummary) -> int:
        total = 0
        for l in summary.spec.components:
            m = summary.multiplicities.get((k, l), 0)
            if m:
                total += (self.fixed_dim(k, l, cid) % 2) * m
        return total

    def _non_constant(self, cid: int) -> bool:
        data = self.lattice.classes[cid]
        contains_o2 = (0 in data.rot_all) and (0 in data.refl_all)
        return not contains_o2

    def existence_analysis(self, spec: LinearizationSpec) -> DegreeReport:
        summary = spectral_summary(spec)
        notes: list[str] = []
        basic = {}
        parities: dict[tuple[int, int], int] = {}
        certificates: list[Certificate] = []
        max_types: dict[int, list[int]] = {}

        if summary.nondegenerate:
            degA = self.degree_of_linearization(summary)
            om = unit(self.lattice) - degA
            for (k, l), m in sorted(summary.multiplicities.items()):
                if m:
                    basic[(k, l)] = self.basic_degree(k, l)
            test_modes = [k for k in summary.active_modes if k >= 1]
            s_fold = None
        else:
            degA = None
            om = None
            s_fold = degenerate_fold_search(summary)
            if s_fold is None:
                notes.append("degenerate spectrum: no admissible fold s found "
                             "within the search bound")
                test_modes = []
            else:
                notes.append(f"degenerate spectrum: using fold s = {s_fold}")
                test_modes = [q for q in range(s_fold, summary.kstar + 1, 2 * s_fold)]

        active_components = sorted({l for (k, l), m in summary.multiplicities.items() if m})
        for k in test_modes:
            comps = active_components or summary.spec.components
            mots = self.maximal_orbit_types_mode(k, comps)
            max_types[k] = [self.lattice.labels[c] for c in mots]
            for cid in mots:
                p = self.frak_n(cid, k, summary)
                parities[(self.lattice.labels[cid], k)] = p
                if p % 2 == 1:
                    certificates.append(Certificate(
                        class_id=cid,
                        label=self.lattice.labels[cid],
                        fold=k,
                        non_constant=self._non_constant(cid),
                        extended_orbit_type=True,
                        parity=p,
                    ))
        return DegreeReport(
            basic_degrees=basic,
            degree_linearization=degA,
            omega=om,
            maximal_orbit_types=max_types,
            parities=parities,
            certificates=certificates,
            degenerate=not summary.nondegenerate,
            degenerate_fold=s_fold,
            notes=notes,
        )

    # -- independent sign oracle ---------------------------------------------------

    def linearization_matrix(self, spec: LinearizationSpec, k: int, l: int) -> np.ndarray:
        """Real matrix of the mode-k linearization block on W_k (x) V_l^-,
        assembled from the delay sum (not from the eigenvalue formula)."""
        dl = self.component_dim(l)
        dim = self.rep_dim(k, l)
        acc = np.zeros((dim, dim))
        for j, mu_j in enumerate(spec.mu[l]):
            ang = 2 * np.pi * j * k / spec.m
            if k == 0:
                acc += float(mu_j) * np.eye(dl)
            else:
                rot = np.array([[np.cos(ang), -np.sin(ang)],
                                [np.sin(ang), np.cos(ang)]])
                acc += float(mu_j) * np.kron(rot, np.eye(dl))
        return np.eye(dim) + (acc - np.eye(dim)) / (1 + k * k)

    def d_sign_oracle(self, spec: LinearizationSpec, cid: int,
                      summary: SpectralSummary) -> int:
        """Sign of det of the linearization restricted to the cid-fixed space,
        via explicit projector bases; independent of the parity formula."""
        level = self.lattice.m_lo
        sign = 1
        for k in range(summary.kstar + 1):
            for l in spec.components:
                r = self.fixed_dim(k, l, cid)
                if r == 0:
                    continue
                proj = self.fixed_projector(k, l, cid, level)
                w, vecs = np.linalg.eigh(proj)
                basis = vecs[:, w > 0.5]
                if basis.shape[1] != r:
                    raise IncompleteLattice(
                        f"projector rank {basis.shape[1]} != character dim {r}")
                block = basis.T @ self.linearization_matrix(spec, k, l) @ basis
                s, _ = np.linalg.slogdet(block)
                sign *= int(s) ** spec.mult[l]
        return sign
