"""Independently assembled homology tables for the verification target.

Everything here is closed-form: homology of real projective space with
its three coefficient systems, homology of its unit tangent bundle via
the two-row Gysin spectral sequence of the sphere bundle, and the
assembly of the path-space table from one projective-space block plus
one shifted unit-tangent block per filtration level.  No rewriting code
is consulted; agreement with the presented algebras is established by
the comparison layer on top.

Degrees are homological and tables are finite: a table stores its top
nonzero range and reports the zero group outside it.

>>> real_proj_homology(3, COEFF_Z).group(1).render()
'Z/2'
>>> unit_tangent_homology(2, COEFF_Z).group(1).render()
'Z/4'
>>> uct_f2(unit_tangent_homology(2, COEFF_Z)).dims()
(1, 1, 1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .tables import BigradedDimTable, CheckItem, CheckReport

COEFF_Z = "Z-trivial"
COEFF_TWISTED = "Z-twisted-o"
COEFF_PULLBACK = "Z-pullback-pi*o"
COEFF_F2 = "F2"


class CoefficientError(ValueError):
    """Unsupported coefficient system for the requested space."""


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant form: free rank
    plus cyclic torsion orders in ascending order."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion orders must be >= 2")
        if tuple(sorted(self.torsion)) != self.torsion:
            raise ValueError("torsion orders must be ascending")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def plus(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(rank=self.rank + other.rank,
                            torsion=tuple(sorted(self.torsion + other.torsion)))

    def two_torsion(self) -> int:
        """Number of cyclic summands of even order; a Z/4 counts once."""
        return sum(1 for t in self.torsion if t % 2 == 0)

    def render(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


ZERO_GROUP = AbelianGroup()
Z = AbelianGroup(rank=1)
Z2 = AbelianGroup(torsion=(2,))
Z4 = AbelianGroup(torsion=(4,))


@dataclass(frozen=True)
class GradedGroupTable:
    """Graded abelian group, one entry per degree 0..top_degree."""

    groups: tuple[AbelianGroup, ...]

    @property
    def top_degree(self) -> int:
        return len(self.groups) - 1

    def group(self, degree: int) -> AbelianGroup:
        if 0 <= degree <= self.top_degree:
            return self.groups[degree]
        return ZERO_GROUP

    def render(self) -> list[str]:
        return [f"H_{d} = {g.render()}" for d, g in enumerate(self.groups)]


@dataclass(frozen=True)
class GradedDimTable:
    """Graded F2 vector space, one dimension per degree 0..top_degree."""

    values: tuple[int, ...]

    @property
    def top_degree(self) -> int:
        return len(self.values) - 1

    def dim(self, degree: int) -> int:
        if 0 <= degree <= self.top_degree:
            return self.values[degree]
        return 0

    def dims(self) -> tuple[int, ...]:
        return self.values

    def euler(self) -> int:
        return sum((-1) ** d * v for d, v in enumerate(self.values))


@dataclass(frozen=True)
class BigradedGroupTable:
    """Abelian group per (degree, level) cell, degrees 0..degree_bound."""

    entries: tuple[tuple[tuple[int, int], AbelianGroup], ...]
    degree_bound: int

    @classmethod
    def from_dict(cls, entries: dict[tuple[int, int], AbelianGroup],
                  degree_bound: int) -> "BigradedGroupTable":
        items = tuple(sorted(
            (k, g) for k, g in entries.items() if not g.is_trivial))
        return cls(entries=items, degree_bound=degree_bound)

    def as_dict(self) -> dict[tuple[int, int], AbelianGroup]:
        return dict(self.entries)

    def group(self, degree: int, level: int) -> AbelianGroup:
        return self.as_dict().get((degree, level), ZERO_GROUP)

    def degree_total(self, degree: int) -> AbelianGroup:
        total = ZERO_GROUP
        for (d, _), g in self.entries:
            if d == degree:
                total = total.plus(g)
        return total

    def levels(self) -> tuple[int, ...]:
        return tuple(sorted({l for (_, l), _ in self.entries}))


# ---------------------------------------------------------------------------
# Real projective space


def real_proj_homology(n: int, coeff: str):
    """Homology of n-dimensional real projective space.

    Coefficients: COEFF_Z, COEFF_TWISTED (the orientation system, which
    is trivial for odd n), or COEFF_F2.  The twisted groups follow from
    the two-term cellular complex whose boundary maps alternate between
    multiplication by 2 and by 0, with the roles of the two parities
    swapped relative to the trivial system.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if coeff == COEFF_F2:
        return GradedDimTable(values=(1,) * (n + 1))
    if coeff not in (COEFF_Z, COEFF_TWISTED):
        raise CoefficientError(
            f"projective space supports {COEFF_Z}, {COEFF_TWISTED}, "
            f"{COEFF_F2}; got {coeff!r}")
    twisted = coeff == COEFF_TWISTED and n % 2 == 0
    groups = []
    for d in range(n + 1):
        if d == 0:
            groups.append(Z2 if twisted else Z)
        elif d == n:
            if n % 2 == 1:
                groups.append(Z)
            else:
                groups.append(Z if twisted else ZERO_GROUP)
        elif (d % 2 == 1) != twisted:
            groups.append(Z2)
        else:
            groups.append(ZERO_GROUP)
    return GradedGroupTable(groups=tuple(groups))


# ---------------------------------------------------------------------------
# Unit tangent bundle


def _shift_sum(row0: GradedGroupTable, row1: GradedGroupTable, shift: int,
               top: int) -> list[AbelianGroup]:
    return [row0.group(d).plus(row1.group(d - shift)) for d in range(top + 1)]


def unit_tangent_homology(n: int, coeff: str):
    """Homology of the unit tangent bundle of n-dimensional real
    projective space, a sphere bundle with (n-1)-dimensional fiber.

    Coefficients: COEFF_Z, COEFF_PULLBACK (the pullback of the
    orientation system of the base), or COEFF_F2.

    The Gysin sequence has two rows, the base homology and the base
    homology shifted up by n-1; the only possibly nonzero differential
    is capping with the Euler class of the tangent bundle.

    Odd n: the Euler class vanishes (Euler number 0) and the rows
    split, for both supported integral systems (the orientation system
    is trivial then) and for F2.

    Even n, trivial coefficients: the differential vanishes because its
    source H_n of the base is zero, but the rows glue: in degree n-1
    the two Z/2 summands extend to Z/4.

    Even n, pullback coefficients: the Euler number of the base is 1,
    so the differential is an isomorphism from the top twisted group of
    row 0 onto the bottom free group of row 1; degree n-1 empties out
    and degree n retains Z/2.

    Even n, F2: the mod-2 Euler class is nonzero, killing one F2 in
    each of degrees n-1 and n; every remaining degree 0..2n-1 carries
    dimension 1.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if coeff not in (COEFF_Z, COEFF_PULLBACK, COEFF_F2):
        raise CoefficientError(
            f"unit tangent bundle supports {COEFF_Z}, {COEFF_PULLBACK}, "
            f"{COEFF_F2}; got {coeff!r}")
    if n == 1:
        # Circle base, 0-sphere fiber: two disjoint circles.
        if coeff == COEFF_F2:
            return GradedDimTable(values=(2, 2))
        return GradedGroupTable(groups=(AbelianGroup(rank=2),
                                        AbelianGroup(rank=2)))
    top = 2 * n - 1
    if coeff == COEFF_F2:
        if n % 2 == 1:
            base = real_proj_homology(n, COEFF_F2)
            vals = tuple(base.dim(d) + base.dim(d - (n - 1))
                         for d in range(top + 1))
            return GradedDimTable(values=vals)
        return GradedDimTable(values=(1,) * (top + 1))
    if n % 2 == 1:
        base = real_proj_homology(n, COEFF_Z)
        return GradedGroupTable(
            groups=tuple(_shift_sum(base, base, n - 1, top)))
    if coeff == COEFF_Z:
        row0 = real_proj_homology(n, COEFF_Z)
        row1 = real_proj_homology(n, COEFF_TWISTED)
        groups = _shift_sum(row0, row1, n - 1, top)
        assert groups[n - 1] == Z2.plus(Z2)
        groups[n - 1] = Z4
        return GradedGroupTable(groups=tuple(groups))
    row0 = real_proj_homology(n, COEFF_TWISTED)
    row1 = real_proj_homology(n, COEFF_Z)
    groups = _shift_sum(row0, row1, n - 1, top)
    assert groups[n - 1] == Z and groups[n] == Z.plus(Z2)
    groups[n - 1] = ZERO_GROUP
    groups[n] = Z2
    return GradedGroupTable(groups=tuple(groups))


# ---------------------------------------------------------------------------
# Path-space assembly


def block_local_system(n: int, k: int) -> str:
    """Coefficient system carried by filtration block k >= 1.

    The block is a copy of the unit tangent bundle twisted by the
    orientation character of the negative bundle of its critical
    submanifold; that character is nontrivial exactly when both n and
    the iteration count k are even.
    """
    if k < 1:
        raise ValueError("blocks are indexed from 1")
    if n % 2 == 0 and k % 2 == 0:
        return COEFF_PULLBACK
    return COEFF_Z


def block_shift(n: int, k: int) -> int:
    """Degree offset of block k in the assembled table."""
    return 1 + (k - 1) * n


def path_space_homology(n: int, coeff: str, degree_bound: int):
    """Assembled homology table of the space of paths with endpoints on
    the real locus, bigraded by (degree, filtration level).

    Level 0 is the base projective space; level k >= 1 contributes the
    unit tangent bundle with its block coefficient system, shifted up
    by 1 + (k-1)n.  Supported coefficients: COEFF_Z (each block keeps
    its own integral system) and COEFF_F2.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if coeff == COEFF_F2:
        cells: dict[tuple[int, int], int] = {}
        base = real_proj_homology(n, COEFF_F2)
        for d in range(min(degree_bound, base.top_degree) + 1):
            cells[(d, 0)] = base.dim(d)
        k = 1
        while block_shift(n, k) <= degree_bound:
            block = unit_tangent_homology(n, COEFF_F2)
            s = block_shift(n, k)
            for d in range(block.top_degree + 1):
                if s + d <= degree_bound and block.dim(d):
                    cells[(s + d, k)] = block.dim(d)
            k += 1
        return BigradedDimTable.from_dict(cells, degree_bound)
    if coeff != COEFF_Z:
        raise CoefficientError(
            f"path-space assembly supports {COEFF_Z} and {COEFF_F2}; "
            f"got {coeff!r}")
    gcells: dict[tuple[int, int], AbelianGroup] = {}
    base = real_proj_homology(n, COEFF_Z)
    for d in range(min(degree_bound, base.top_degree) + 1):
        gcells[(d, 0)] = base.group(d)
    k = 1
    while block_shift(n, k) <= degree_bound:
        block = unit_tangent_homology(n, block_local_system(n, k))
        s = block_shift(n, k)
        for d in range(block.top_degree + 1):
            if s + d <= degree_bound:
                gcells[(s + d, k)] = block.group(d)
        k += 1
    return BigradedGroupTable.from_dict(gcells, degree_bound)


# ---------------------------------------------------------------------------
# Mod-2 comparison and internal consistency


def uct_f2(table):
    """Mod-2 dimensions determined by an integral table.

    dim H_d(-; F2) = rank H_d + t(H_d) + t(H_{d-1}) where t counts
    cyclic summands of even order.  The formula also holds for the
    twisted systems used here because they reduce mod 2 to the trivial
    one.
    """
    if isinstance(table, GradedGroupTable):
        vals = []
        for d in range(table.top_degree + 2):
            g, prev = table.group(d), table.group(d - 1)
            vals.append(g.rank + g.two_torsion() + prev.two_torsion())
        while vals and vals[-1] == 0:
            vals.pop()
        return GradedDimTable(values=tuple(vals))
    if isinstance(table, BigradedGroupTable):
        cells: dict[tuple[int, int], int] = {}
        for (d, l), g in table.entries:
            cells[(d, l)] = cells.get((d, l), 0) + g.rank + g.two_torsion()
            if d + 1 <= table.degree_bound:
                cells[(d + 1, l)] = cells.get((d + 1, l), 0) + g.two_torsion()
        return BigradedDimTable.from_dict(cells, table.degree_bound)
    raise TypeError(f"no mod-2 reduction for {type(table).__name__}")


def stable_ranks(degree: int) -> int:
    """Mod-2 dimension in the range where the table no longer depends
    on n: a single class in degree 0, two in every positive degree."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return 1 if degree == 0 else 2


def consistency_checks(n: int, degree_bound: Optional[int] = None) -> CheckReport:
    """Internal cross-checks of the homology tables for one n.

    Mod-2 reduction of every integral table must reproduce the F2
    table; the unit tangent tables must satisfy closed-manifold
    symmetry and have zero Euler characteristic; the assembled table
    must restrict correctly to levels and match the stable range near
    the bottom.
    """
    D = degree_bound if degree_bound is not None else 4 * n + 2
    items = []

    f2_base = real_proj_homology(n, COEFF_F2)
    for tag in (COEFF_Z, COEFF_TWISTED):
        got = uct_f2(real_proj_homology(n, tag))
        items.append(CheckItem(
            name=f"projective space mod-2 reduction [{tag}]",
            passed=got.dims() == f2_base.dims(),
            detail=f"{got.dims()} vs {f2_base.dims()}"))

    f2_st = unit_tangent_homology(n, COEFF_F2)
    integral_tags = [COEFF_Z] if n % 2 == 1 else [COEFF_Z, COEFF_PULLBACK]
    if n == 1:
        integral_tags = [COEFF_Z]
    for tag in integral_tags:
        got = uct_f2(unit_tangent_homology(n, tag))
        items.append(CheckItem(
            name=f"unit tangent mod-2 reduction [{tag}]",
            passed=got.dims() == f2_st.dims(),
            detail=f"{got.dims()} vs {f2_st.dims()}"))

    dims = f2_st.dims()
    items.append(CheckItem(
        name="unit tangent mod-2 palindrome",
        passed=dims == dims[::-1],
        detail=f"{dims}"))
    items.append(CheckItem(
        name="unit tangent Euler characteristic zero",
        passed=f2_st.euler() == 0,
        detail=f"chi = {f2_st.euler()}"))

    zt = path_space_homology(n, COEFF_Z, D)
    f2t = path_space_homology(n, COEFF_F2, D)
    items.append(CheckItem(
        name=f"assembled mod-2 reduction, cell by cell, degrees 0..{D}",
        passed=uct_f2(zt).as_dict() == f2t.as_dict(),
        detail=""))

    low = [sum(f2t.dim(d, l) for l in (0, 1)) for d in range(n)]
    want = [stable_ranks(d) for d in range(n)]
    items.append(CheckItem(
        name="stable range at levels 0..1",
        passed=low == want,
        detail=f"{low} vs {want}"))

    return CheckReport(title=f"homology consistency (n={n})",
                       items=tuple(items))


# ---------------------------------------------------------------------------
# Named generating cells


def _power(letter: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return letter
    return f"{letter}^{e}"


def _cell_name(h: int, mid: str, y: int) -> str:
    name = _power("H", h) + mid + _power("Y", y)
    return name if name else "U"


def _alternating(start: str, length: int) -> str:
    other = "Sb" if start == "S" else "S"
    return "".join(start if i % 2 == 0 else other for i in range(length))


@dataclass(frozen=True)
class GeneratorCell:
    degree: int
    level: int
    names: tuple[str, ...]


@dataclass(frozen=True)
class GeneratorTable:
    n: int
    max_level: int
    cells: tuple[GeneratorCell, ...]

    def rows(self) -> list[tuple[int, int, tuple[str, ...]]]:
        return [(c.degree, c.level, c.names) for c in self.cells]


def generator_table(n: int, max_level: int) -> GeneratorTable:
    """Named basis cells of the assembled table, levels 0..max_level.

    Level 0 lists the unit in degree n and the powers of the
    degree-lowering generator below it.  For n >= 2 each level k >= 1
    lists one family through the middle generator and one family of
    pure k-th powers; every cell is one-dimensional.  For n = 1 the two
    middle generators alternate and each cell is two-dimensional.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    cellmap: dict[tuple[int, int], list[str]] = {}

    def put(degree: int, level: int, name: str) -> None:
        cellmap.setdefault((degree, level), []).append(name)

    put(n, 0, "U")
    for j in range(1, n + 1):
        put(n - j, 0, _power("H", j))

    for k in range(1, max_level + 1):
        if n == 1:
            for start in ("S", "Sb"):
                put(k + 1, k, _alternating(start, k))
                put(k, k, "H" + _alternating(start, k))
        elif n % 2 == 1:
            for j in range(n + 1):
                put(1 + k * n - j, k, _cell_name(j, "S", k - 1))
            for j in range(n + 1):
                put((k + 1) * n - j, k, _cell_name(j, "", k))
        else:
            for j in range(n):
                put(k * n - j, k, _cell_name(j, "T", k - 1))
            for j in range(n):
                put((k + 1) * n - j, k, _cell_name(j, "", k))

    cells = []
    for (degree, level) in sorted(cellmap):
        # insertion order inside a cell lists the middle-generator
        # family before the pure-power family
        cells.append(GeneratorCell(degree=degree, level=level,
                                   names=tuple(cellmap[(degree, level)])))
    return GeneratorTable(n=n, max_level=max_level, cells=tuple(cells))
