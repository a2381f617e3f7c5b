"""Conjugacy classes of closed subgroups of O(2) x Gamma x Z2, realized
through finite dihedral truncations D_M x Gamma x Z2.

A class is stored level-independently as a membership rule: which Gamma x Z2
elements pair with all rotations / all reflections (full O(2)- or SO(2)-type
classes), and which pair with finitely many rotation/reflection angles
(dihedral- or cyclic-fold classes, angles as exact Fractions of a full turn).
Truncating at level M maps angle q to index q*M in D_M; lifting inverts this
and promotes folds that track M to SO(2)/O(2).

Conjugacy over the full group is conjugacy in the truncation extended by the
half-step rotation twist (the normalizer of D_M in O(2) is D_2M), and every
count is computed at the working level M and re-verified at 2M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import (
    FiniteGroup,
    SubgroupHandle,
    closure,
    conjugate_members,
    direct_product,
    double_cosets,
    make_cyclic,
    make_dihedral,
    normalizer,
    subgroup_classes,
)
from .names import names_for_gamma_z2


class TruncationInstability(RuntimeError):
    """A count or class disagreed between levels M and 2M."""


class InadmissibleLevel(ValueError):
    """Truncation level not divisible by a required fold."""


class ClassEscape(RuntimeError):
    """A product produced a class outside the working set (extend disabled)."""

    def __init__(self, labels):
        super().__init__(f"product escapes working set at classes: {labels}")
        self.labels = labels


@dataclass(frozen=True)
class O2Desc:
    """Projection of a class to the O(2) factor.

    kind: "O2" (all of O(2)), "SO2", "D" (dihedral fold), "Z" (cyclic fold).
    Cyclic folds have infinite Weyl group and occur only as constituents.
    """

    kind: str
    fold: int = 0

    def label(self) -> str:
        if self.kind == "O2":
            return "O(2)"
        if self.kind == "SO2":
            return "SO(2)"
        if self.kind == "D":
            return f"D{self.fold}"
        return "1" if self.fold == 1 else f"Z{self.fold}"


@dataclass(frozen=True)
class AmalgamData:
    """Level-independent membership rule for a subgroup of O(2) x Gamma x Z2.

    rot_all/refl_all: gamma-z2 indices paired with every rotation/reflection.
    rot_fin/refl_fin: (angle, gamma-z2 index) pairs, angle in [0,1) a Fraction
    of a full turn (for reflections, of the dihedral index range).
    """

    o2: O2Desc
    rot_all: tuple[int, ...]
    refl_all: tuple[int, ...]
    rot_fin: tuple[tuple[Fraction, int], ...]
    refl_fin: tuple[tuple[Fraction, int], ...]

    def truncated_order(self, m: int) -> int:
        n = len(self.rot_all) * m + len(self.refl_all) * m
        return n + len(self.rot_fin) + len(self.refl_fin)


def trunc_group(gamma_z2: FiniteGroup, m: int) -> FiniteGroup:
    """D_M x (Gamma x Z2); o2 index = idx // |Gamma x Z2| (rotations < M)."""
    return direct_product(make_dihedral(m), gamma_z2)


class ClassLattice:
    """Working set of subgroup classes with the level-M / level-2M protocol.

    Owns the truncated groups at both levels, interns classes by full-group
    conjugacy, and caches Weyl orders, containment counts and the order
    relation, each verified stable across the two levels.
    """

    def __init__(self, gamma: FiniteGroup, base_level: int,
                 gamma_param: int | None = None):
        self.gamma = gamma
        self.gamma_z2 = direct_product(gamma, make_cyclic(2))
        self.ng = self.gamma_z2.order
        if base_level % 4 != 0:
            raise InadmissibleLevel(f"base level {base_level} must be divisible by 4")
        self.m_lo = base_level
        self.m_hi = 2 * base_level
        self.group_lo = trunc_group(self.gamma_z2, self.m_lo)
        self.group_hi = trunc_group(self.gamma_z2, self.m_hi)
        self._finite_classes = subgroup_classes(self.gamma_z2)
        self._finite_names = names_for_gamma_z2(
            self.gamma_z2, gamma_param,
            [c.representative.members for c in self._finite_classes])
        self.classes: list[AmalgamData] = []
        self.labels: list[str] = []
        self._reps: dict[int, list[tuple[int, ...]]] = {self.m_lo: [], self.m_hi: []}
        self._weyl: list[int | None] = []   # None marks infinite
        self._by_label: dict[str, int] = {}
        self._sig_index: dict[tuple, list[int]] = {}
        self._n_cache: dict[tuple[int, int], int] = {}
        self._conj_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self._mul_cache: dict[tuple[int, int], dict[int, int]] = {}
        self.escape_log: list[str] = []
        # the full group is always class 0
        self.ensure_handle(tuple(range(self.group_lo.order)), self.m_lo)

    # -- element decoding ----------------------------------------------------

    def group_at(self, level: int) -> FiniteGroup:
        if level == self.m_lo:
            return self.group_lo
        if level == self.m_hi:
            return self.group_hi
        raise InadmissibleLevel(f"unsupported level {level}")

    def decode(self, idx: int, level: int) -> tuple[int, bool, int]:
        """(o2 index within D_level, is_reflection, gamma_z2 index)."""
        o2, ge = divmod(idx, self.ng)
        return (o2 % level, o2 >= level, ge)

    def encode(self, t: int, refl: bool, ge: int, level: int) -> int:
        return ((t % level) + (level if refl else 0)) * self.ng + ge

    # -- lift / truncate -----------------------------------------------------

    def lift(self, members, level: int) -> AmalgamData:
        """Goursat data of a truncated subgroup, promoting folds that fill D_M."""
        rot_by_ge: dict[int, list[int]] = {}
        refl_by_ge: dict[int, list[int]] = {}
        rot_indices = set()
        for idx in members:
            t, refl, ge = self.decode(int(idx), level)
            if refl:
                refl_by_ge.setdefault(ge, []).append(t)
            else:
                rot_by_ge.setdefault(ge, []).append(t)
                rot_indices.add(t)
        d = len(rot_indices)  # rotation part of the O(2)-projection is Z_d
        has_refl = bool(refl_by_ge)
        if d == level:
            o2 = O2Desc("O2") if has_refl else O2Desc("SO2")
        else:
            if d > level // 4:
                raise TruncationInstability(
                    f"fold {d} too close to truncation level {level}; raise the base level")
            o2 = O2Desc("D", d) if has_refl else O2Desc("Z", d)
        full = d == level
        rot_all, refl_all, rot_fin, refl_fin = [], [], [], []
        for ge, ts in sorted(rot_by_ge.items()):
            if full and len(ts) == level:
                rot_all.append(ge)
            else:
                rot_fin.extend((Fraction(t, level), ge) for t in ts)
        for ge, ts in sorted(refl_by_ge.items()):
            if full and len(ts) == level:
                refl_all.append(ge)
            else:
                refl_fin.extend((Fraction(t, level), ge) for t in ts)
        if full and (rot_fin or refl_fin):
            raise TruncationInstability("mixed full/finite fibers; raise the base level")
        return AmalgamData(o2, tuple(rot_all), tuple(refl_all),
                           tuple(sorted(rot_fin)), tuple(sorted(refl_fin)))

    def truncate(self, data: AmalgamData, level: int) -> tuple[int, ...]:
        out = []
        for ge in data.rot_all:
            out.extend(self.encode(t, False, ge, level) for t in range(level))
        for ge in data.refl_all:
            out.extend(self.encode(t, True, ge, level) for t in range(level))
        for q, ge in data.rot_fin:
            t = q * level
            if t.denominator != 1:
                raise InadmissibleLevel(
                    f"level {level} not divisible by fold denominator {q.denominator}")
            out.append(self.encode(int(t), False, ge, level))
        for q, ge in data.refl_fin:
            t = q * level
            if t.denominator != 1:
                raise InadmissibleLevel(
                    f"level {level} not divisible by fold denominator {q.denominator}")
            out.append(self.encode(int(t), True, ge, level))
        return tuple(sorted(out))

    # -- full-group conjugacy ------------------------------------------------

    def half_twist(self, members, level: int) -> tuple[int, ...]:
        """Conjugation by the rotation of half a grid step (an O(2) element
        normalizing D_level): fixes rotations, shifts reflection axes by one."""
        out = []
        for idx in members:
            t, refl, ge = self.decode(int(idx), level)
            out.append(self.encode(t + 1 if refl else t, refl, ge, level))
        return tuple(sorted(out))

    def conjugates_full(self, members, level: int) -> list[tuple[int, ...]]:
        """All conjugates under O(2) x Gamma x Z2: inner orbit plus its half twist."""
        g = self.group_at(level)
        gens = g.generators
        seen = set()
        start = [tuple(int(v) for v in sorted(members))]
        start.append(self.half_twist(start[0], level))
        frontier = [s for s in start if not (s in seen or seen.add(s))]
        while frontier:
            nxt = []
            for mem in frontier:
                for x in gens:
                    c = tuple(int(v) for v in conjugate_members(g, x, mem))
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return sorted(seen)

    def is_conjugate_full(self, a, b, level: int) -> bool:
        a = tuple(int(v) for v in sorted(a))
        b = tuple(int(v) for v in sorted(b))
        if len(a) != len(b):
            return False
        if a == b:
            return True
        g = self.group_at(level)
        gens = g.generators
        targets = {b, self.half_twist(b, level)}
        seen = {a, self.half_twist(a, level)}
        if seen & targets:
            return True
        frontier = list(seen)
        while frontier:
            nxt = []
            for mem in frontier:
                for x in gens:
                    c = tuple(int(v) for v in conjugate_members(g, x, mem))
                    if c in targets:
                        return True
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return False

    # -- class interning -----------------------------------------------------

    def _finite_class_id(self, mem: tuple[int, ...]) -> int:
        for c in self._finite_classes:
            if len(c.representative.members) == len(mem):
                from .groups import is_conjugate as fin_conj
                if fin_conj(self.gamma_z2, SubgroupHandle(self.gamma_z2, mem),
                            c.representative):
                    return c.class_id
        raise RuntimeError("projection is not a subgroup of Gamma x Z2")

    def finite_class_name(self, mem) -> str:
        mem = tuple(int(v) for v in sorted(mem))
        cid = self._finite_class_id(mem)
        rep = self._finite_classes[cid].representative.members
        return self._finite_names.get(rep, self._finite_classes[cid].name)

    def ensure_handle(self, members, level: int) -> int:
        """Intern the class of a truncated subgroup; returns its class id."""
        data = self.lift(members, level)
        sig = (data.truncated_order(self.m_lo), data.o2)
        for cid in self._sig_index.get(sig, []):
            if self.is_conjugate_full(self._rep_at(cid, level), members, level):
                return cid
        # new class: canonical representative = lex-min conjugate at each level
        cid = len(self.classes)
        rep_this = min(self.conjugates_full(members, level))
        data = self.lift(rep_this, level)
        other = self.m_hi if level == self.m_lo else self.m_lo
        rep_other = min(self.conjugates_full(self.truncate(data, other), other))
        self.classes.append(data)
        self._reps[level].append(rep_this)
        self._reps[other].append(rep_other)
        self._weyl.append(self._weyl_stable(cid))
        label = self._format(cid)
        base, k = label, 2
        while label in self._by_label:
            label = f"{base}#{k}"  # distinct classes sharing printed Goursat data
            k += 1
        if label != base:
            self.escape_log.append(f"label collision: {base}")
        self.labels.append(label)
        self._by_label[label] = cid
        self._sig_index.setdefault(sig, []).append(cid)
        return cid

    def _rep_at(self, cid: int, level: int) -> tuple[int, ...]:
        return self._reps[level][cid]

    def class_id_by_label(self, label: str) -> int:
        return self._by_label[label]

    # -- Weyl orders, containment counts -------------------------------------

    def _weyl_at(self, cid: int, level: int) -> int:
        g = self.group_at(level)
        rep = self._rep_at(cid, level)
        n = normalizer(g, SubgroupHandle(g, rep))
        return len(n) // len(rep)

    def _weyl_stable(self, cid: int) -> int | None:
        if self.classes[cid].o2.kind == "Z":
            return None  # cyclic O(2)-part: Weyl group contains SO(2)/fold
        w_lo = self._weyl_at(cid, self.m_lo)
        w_hi = self._weyl_at(cid, self.m_hi)
        if w_lo != w_hi:
            return None
        return w_lo

    def weyl(self, cid: int) -> int | None:
        return self._weyl[cid]

    def finite_weyl(self, cid: int) -> bool:
        return self._weyl[cid] is not None

    def n_count(self, i: int, j: int) -> int:
        """Number of conjugates of class j's representative containing class i's."""
        key = (i, j)
        if key in self._n_cache:
            return self._n_cache[key]
        counts = []
        for level in (self.m_lo, self.m_hi):
            h = set(self._rep_at(i, level))
            conjs = self._class_conjugates(j, level)
            counts.append(sum(1 for c in conjs if h <= set(c)))
        if counts[0] != counts[1]:
            raise TruncationInstability(
                f"n({self.labels[i]},{self.labels[j]}) differs between levels: {counts}")
        self._n_cache[key] = counts[0]
        return counts[0]

    def _class_conjugates(self, cid: int, level: int) -> list[tuple[int, ...]]:
        key = (cid, level)
        if key not in self._conj_cache:
            self._conj_cache[key] = self.conjugates_full(self._rep_at(cid, level), level)
        return self._conj_cache[key]

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.n_count(i, j) > 0

    def order_of(self, cid: int, level: int | None = None) -> int:
        return self.classes[cid].truncated_order(level or self.m_lo)

    def sorted_ids(self, ids=None) -> list[int]:
        """Deterministic topological order refining >= (the full group first)."""
        ids = list(range(len(self.classes))) if ids is None else list(ids)
        return sorted(ids, key=lambda c: (-self.order_of(c), self.labels[c]))

    # -- products -------------------------------------------------------------

    def product_classes(self, i: int, j: int, extend: bool = True) -> dict[int, int]:
        """Burnside generator product (i)*(j): double-coset orbit counts,
        keeping finite-Weyl classes only, verified at both levels."""
        key = (min(i, j), max(i, j))
        if key in self._mul_cache:
            return dict(self._mul_cache[key])
        results = []
        for level in (self.m_lo, self.m_hi):
            g = self.group_at(level)
            h = np.asarray(self._rep_at(i, level), dtype=np.int64)
            k = np.asarray(self._rep_at(j, level), dtype=np.int64)
            hset = frozenset(int(v) for v in h)
            coeffs: dict[int, int] = {}
            for x, _ in double_cosets(g, h, k):
                kc = conjugate_members(g, x, k)
                inter = sorted(hset.intersection(int(v) for v in kc))
                data = self.lift(inter, level)
                if data.o2.kind == "Z":
                    continue  # infinite Weyl group: dropped from the product
                cid = self._find_class(inter, level)
                if cid is None:
                    if not extend:
                        raise ClassEscape([self._describe(inter, level)])
                    cid = self.ensure_handle(inter, level)
                    self.escape_log.append(f"extended working set: {self.labels[cid]}")
                if self.finite_weyl(cid):
                    coeffs[cid] = coeffs.get(cid, 0) + 1
            results.append(coeffs)
        if results[0] != results[1]:
            raise TruncationInstability(
                f"product ({self.labels[i]})*({self.labels[j]}) differs between levels")
        self._mul_cache[key] = results[0]
        return dict(results[0])

    def _find_class(self, members, level: int):
        data = self.lift(members, level)
        sig = (data.truncated_order(self.m_lo), data.o2)
        for cid in self._sig_index.get(sig, []):
            if self.is_conjugate_full(self._rep_at(cid, level), members, level):
                return cid
        return None

    def _describe(self, members, level: int) -> str:
        data = self.lift(members, level)
        return f"{data.o2.label()}-class of order {len(members)} at level {level}"

    # -- printable labels ------------------------------------------------------

    def _format(self, cid: int) -> str:
        data = self.classes[cid]
        g_all = data.truncated_order(self.m_lo) == self.group_lo.order
        if g_all:
            return "(G)"
        k_proj = sorted({ge for ge in data.rot_all} | {ge for ge in data.refl_all}
                        | {ge for _, ge in data.rot_fin} | {ge for _, ge in data.refl_fin})
        k_name = self.finite_class_name(k_proj)
        # R = fiber over the O(2)-identity; Z = fiber over the finite identity
        r_part = sorted(set(data.rot_all) | {ge for q, ge in data.rot_fin if q == 0})
        quotient = len(k_proj) // len(r_part)
        if quotient == 1:
            return f"({data.o2.label()} x {k_name})"
        r_name = self.finite_class_name(r_part)
        z_rot = sorted(q for q, ge in data.rot_fin if ge == 0)
        z_refl = sorted(q for q, ge in data.refl_fin if ge == 0)
        if data.o2.kind in ("O2", "SO2"):
            z_name = "SO(2)" if 0 in data.rot_all else "?"
        elif z_refl:
            z_name = f"D{len(z_rot)}"
        elif len(z_rot) > 1:
            z_name = f"Z{len(z_rot)}"
        else:
            z_name = "1"
        l_name = self._quotient_name(k_proj, r_part)
        return f"({data.o2.label()} ^{z_name} x_{l_name} ^{r_name} {k_name})"

    def _quotient_name(self, k_proj: list[int], r_part: list[int]) -> str:
        q = len(k_proj) // len(r_part)
        if q == 1:
            return "1"
        # cyclic iff some coset generates the quotient
        g = self.gamma_z2
        rset = frozenset(r_part)
        cosets = {}
        for a in k_proj:
            key = frozenset(int(g.table[a, r]) for r in rset)
            cosets.setdefault(key, min(int(g.table[a, r]) for r in rset))
        reps = list(cosets.values())
        for a in reps:
            cur, k = a, 1
            while frozenset(int(g.table[cur, r]) for r in rset) != rset:
                cur = int(g.table[cur, a])
                k += 1
            if k == q:
                return f"Z{q}"
        return f"D{q // 2}"

    def format_class(self, cid: int) -> str:
        return self.labels[cid]
