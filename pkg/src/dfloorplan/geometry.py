"""Exact integer-grid model of d-dimensional mosaic floorplans.

A floorplan is a bounding box partitioned into blocks (boxes).  It is a
*d-floorplan* when every border (the union of all interior block facets of
one axis at one position) is a single facet, and no two borders of
different axes cross.  Floorplans are considered up to weak equivalence:
two plans are equivalent when some relabelling of their blocks makes all
``d`` direction relations identical.

Coordinates are small nonnegative integers.  Nothing here depends on actual
lengths, only on the per-axis order of coordinates, so :func:`normalize`
compresses every axis onto ``0..k``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import (
    InvalidCorner,
    NotAPartition,
    NotGeneric,
    ParseError,
    SingleBlock,
    TatamiViolation,
)

__all__ = [
    "Box",
    "Facet",
    "Contact",
    "Corner",
    "Floorplan",
    "DirectionRelationSet",
    "validate",
    "root",
    "borders",
    "touches",
    "direction_relations",
    "shifting_facet",
    "delete_block",
    "peel",
    "normalize",
    "canonical_signature",
    "equivalent",
    "is_guillotine",
    "lift",
    "to_json",
    "from_json",
]


@dataclass(frozen=True)
class Box:
    """Full-dimensional box ``prod [min[i], max[i]]``."""

    min: tuple[int, ...]
    max: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "min", tuple(int(x) for x in self.min))
        object.__setattr__(self, "max", tuple(int(x) for x in self.max))
        if len(self.min) != len(self.max):
            raise ValueError(f"box corners differ in length: {self.min} {self.max}")
        if any(a >= b for a, b in zip(self.min, self.max)):
            raise ValueError(f"degenerate box {self.min}..{self.max}")

    @property
    def dim(self) -> int:
        return len(self.min)

    @property
    def q_min(self) -> tuple[int, ...]:
        return self.min

    @property
    def q_max(self) -> tuple[int, ...]:
        return self.max

    def volume(self) -> int:
        v = 1
        for a, b in zip(self.min, self.max):
            v *= b - a
        return v

    def overlaps(self, other: "Box") -> bool:
        """True when the interiors intersect."""
        return all(
            a0 < b1 and b0 < a1
            for a0, a1, b0, b1 in zip(self.min, self.max, other.min, other.max)
        )

    def contains(self, other: "Box") -> bool:
        return all(
            a0 <= b0 and b1 <= a1
            for a0, a1, b0, b1 in zip(self.min, self.max, other.min, other.max)
        )


@dataclass(frozen=True)
class Facet:
    """A ``(d-1)``-dimensional box whose coordinate ``axis`` is punctual.

    ``extent`` lists the intervals of the remaining axes in increasing axis
    order.
    """

    axis: int
    position: int
    extent: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "extent", tuple((int(a), int(b)) for a, b in self.extent))
        if any(a >= b for a, b in self.extent):
            raise ValueError(f"punctual extent in facet {self}")

    @property
    def dim(self) -> int:
        return len(self.extent) + 1

    def intervals(self) -> tuple[tuple[int, int], ...]:
        """All ``d`` intervals, the punctual one included."""
        ext = list(self.extent)
        ext.insert(self.axis, (self.position, self.position))
        return tuple(ext)

    def measure(self) -> int:
        m = 1
        for a, b in self.extent:
            m *= b - a
        return m

    @classmethod
    def from_intervals(cls, axis: int, intervals: Sequence[tuple[int, int]]) -> "Facet":
        pos = intervals[axis][0]
        ext = tuple(iv for k, iv in enumerate(intervals) if k != axis)
        return cls(axis, pos, ext)


class Contact(enum.Enum):
    CROSSES = "crosses"
    PROPER_TOUCH = "proper_touch"
    EQUAL = "equal"
    DISJOINT = "disjoint"


def _meets(a: tuple[int, int], a_open: bool, b: tuple[int, int], b_open: bool) -> bool:
    # intersection of two intervals, each either open or closed
    if a_open and b_open:
        return max(a[0], b[0]) < min(a[1], b[1])
    if a_open:
        return a[0] < b[1] and b[0] < a[1]
    if b_open:
        return b[0] < a[1] and a[0] < b[1]
    return max(a[0], b[0]) <= min(a[1], b[1])


def _interior_meets(f: Facet, g: Facet, g_closed: bool) -> bool:
    fi, gi = f.intervals(), g.intervals()
    for k in range(len(fi)):
        f_open = k != f.axis
        g_open = (k != g.axis) and not g_closed
        if not _meets(fi[k], f_open, gi[k], g_open):
            return False
    return True


def touches(f: Facet, g: Facet) -> Contact:
    """Classify the contact of ``f`` with ``g``.

    CROSSES when the relative interiors meet and the axes differ;
    PROPER_TOUCH when the interior of ``f`` meets ``g`` otherwise; EQUAL for
    identical facets.  Boundary-only contact is DISJOINT.  The relation is
    not symmetric: in a T-junction the bar touches the stem, not conversely.
    """
    if f == g:
        return Contact.EQUAL
    if f.axis != g.axis and _interior_meets(f, g, g_closed=False):
        return Contact.CROSSES
    if _interior_meets(f, g, g_closed=True):
        return Contact.PROPER_TOUCH
    return Contact.DISJOINT


@dataclass(frozen=True)
class Corner:
    """A corner of the bounding box, as one 0/1 bit per axis (1 = max side)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"corner bits must be 0/1: {self.bits}")

    def opposite(self) -> "Corner":
        return Corner(tuple(1 - b for b in self.bits))

    def point(self, bounds: Box) -> tuple[int, ...]:
        return tuple(hi if b else lo for b, lo, hi in zip(self.bits, bounds.min, bounds.max))


@dataclass(frozen=True)
class Floorplan:
    """A bounding box and its blocks; block identifiers are list indices.

    Build instances through :func:`validate` (or :func:`from_json`), which
    checks the partition, genericity and tatami conditions.
    """

    dim: int
    bounds: Box
    blocks: tuple[Box, ...]

    @property
    def n(self) -> int:
        return len(self.blocks)

    def corner(self, bits: Sequence[int]) -> Corner:
        if len(bits) != self.dim:
            raise InvalidCorner(f"corner {tuple(bits)} has wrong dimension for d={self.dim}")
        return Corner(tuple(bits))

    @property
    def q_min(self) -> Corner:
        return Corner((0,) * self.dim)

    @property
    def q_max(self) -> Corner:
        return Corner((1,) * self.dim)


@dataclass(frozen=True)
class DirectionRelationSet:
    """``d`` partial orders on ``n`` blocks, stored as bitmask rows.

    ``rel[j][a]`` has bit ``b`` set iff block ``a`` precedes block ``b`` in
    direction ``j`` (reflexive).
    """

    dim: int
    n: int
    rel: tuple[tuple[int, ...], ...]

    def precedes(self, j: int, a: int, b: int) -> bool:
        return bool(self.rel[j][a] >> b & 1)

    def matrix(self, j: int) -> list[list[bool]]:
        return [[bool(row >> b & 1) for b in range(self.n)] for row in self.rel[j]]

    def relabel(self, order: Sequence[int]) -> "DirectionRelationSet":
        """New labels: block ``order[k]`` becomes ``k``."""
        new_of = {old: new for new, old in enumerate(order)}
        rel = []
        for rows in self.rel:
            out = [0] * self.n
            for a, row in enumerate(rows):
                m = 0
                for b in range(self.n):
                    if row >> b & 1:
                        m |= 1 << new_of[b]
                out[new_of[a]] = m
            rel.append(tuple(out))
        return DirectionRelationSet(self.dim, self.n, tuple(rel))

    def restrict(self, keep: Sequence[int]) -> "DirectionRelationSet":
        """Sub-relation on the blocks ``keep`` (relabelled ``0..len(keep)-1``)."""
        rel = []
        for rows in self.rel:
            out = []
            for a in keep:
                m = 0
                for k, b in enumerate(keep):
                    if rows[a] >> b & 1:
                        m |= 1 << k
                out.append(m)
            rel.append(tuple(out))
        return DirectionRelationSet(self.dim, len(keep), tuple(rel))


def transitive_closure(rows: list[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as bitmask rows."""
    n = len(rows)
    rows = [r | (1 << a) for a, r in enumerate(rows)]
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for a in range(n):
            if rows[a] & bit:
                rows[a] |= rk
    return rows


# -- construction and validation ---------------------------------------------


def _as_box(b) -> Box:
    if isinstance(b, Box):
        return b
    if isinstance(b, dict):
        return Box(b["min"], b["max"])
    lo, hi = b
    return Box(lo, hi)


def _check_partition(dim: int, bounds: Box, blocks: Sequence[Box]) -> None:
    if not blocks:
        raise NotAPartition("a floorplan needs at least one block")
    if bounds.dim != dim:
        raise NotAPartition(f"bounds have dimension {bounds.dim}, expected {dim}")
    for k, b in enumerate(blocks):
        if b.dim != dim:
            raise NotAPartition(f"block {k} has dimension {b.dim}, expected {dim}")
        if not bounds.contains(b):
            raise NotAPartition(f"block {k} sticks out of the bounding box")
    for a, b in combinations(range(len(blocks)), 2):
        if blocks[a].overlaps(blocks[b]):
            raise NotAPartition(f"blocks {a} and {b} overlap")
    if sum(b.volume() for b in blocks) != bounds.volume():
        raise NotAPartition("blocks leave a gap in the bounding box")


def _border_groups(fp: Floorplan) -> dict[tuple[int, int], list[int]]:
    """(axis, position) -> blocks whose upper facet lies on that border."""
    groups: dict[tuple[int, int], list[int]] = {}
    top = fp.bounds.max
    for k, b in enumerate(fp.blocks):
        for j in range(fp.dim):
            if b.max[j] != top[j]:
                groups.setdefault((j, b.max[j]), []).append(k)
    return groups


def _facet_of(b: Box, axis: int, upper: bool) -> Facet:
    pos = b.max[axis] if upper else b.min[axis]
    ext = tuple((b.min[k], b.max[k]) for k in range(b.dim) if k != axis)
    return Facet(axis, pos, ext)


def _border_hull(fp: Floorplan, axis: int, pos: int, members: list[int]) -> tuple[Facet, int]:
    lo = [min(fp.blocks[k].min[i] for k in members) for i in range(fp.dim)]
    hi = [max(fp.blocks[k].max[i] for k in members) for i in range(fp.dim)]
    ext = tuple((lo[i], hi[i]) for i in range(fp.dim) if i != axis)
    covered = sum(_facet_of(fp.blocks[k], axis, True).measure() for k in members)
    return Facet(axis, pos, ext), covered


def _borders_checked(fp: Floorplan) -> list[Facet]:
    out = []
    for (axis, pos), members in sorted(_border_groups(fp).items()):
        hull, covered = _border_hull(fp, axis, pos, members)
        if covered != hull.measure():
            raise NotGeneric(
                f"border of axis {axis} at position {pos} is not a single facet "
                f"(blocks {members})"
            )
        out.append(hull)
    return out


def _check_tatami(bs: Sequence[Facet]) -> None:
    for f, g in combinations(bs, 2):
        if f.axis != g.axis and touches(f, g) is Contact.CROSSES:
            raise TatamiViolation(f"borders {f} and {g} cross", pair=(f, g))


def _check(fp: Floorplan) -> None:
    _check_partition(fp.dim, fp.bounds, fp.blocks)
    _check_tatami(_borders_checked(fp))


def validate(dim: int, bounds, boxes: Iterable) -> Floorplan:
    """Check that ``boxes`` form a d-floorplan of ``bounds``; return it normalized.

    Raises NotAPartition, NotGeneric or TatamiViolation.
    """
    bounds = _as_box(bounds)
    blocks = tuple(_as_box(b) for b in boxes)
    fp = Floorplan(int(dim), bounds, blocks)
    _check(fp)
    return normalize(fp)


def root(dim: int) -> Floorplan:
    """The one-block d-floorplan."""
    box = Box((0,) * dim, (1,) * dim)
    return Floorplan(dim, box, (box,))


def borders(fp: Floorplan) -> list[Facet]:
    """Maximal interior facets, sorted by (axis, position)."""
    return _borders_checked(fp)


def normalize(fp: Floorplan) -> Floorplan:
    """Map every axis's coordinates order-preservingly onto ``0..k``."""
    maps = []
    for j in range(fp.dim):
        vals = sorted({b.min[j] for b in fp.blocks} | {b.max[j] for b in fp.blocks})
        maps.append({v: r for r, v in enumerate(vals)})
    blocks = tuple(
        Box(
            tuple(maps[j][b.min[j]] for j in range(fp.dim)),
            tuple(maps[j][b.max[j]] for j in range(fp.dim)),
        )
        for b in fp.blocks
    )
    bounds = Box(
        tuple(maps[j][fp.bounds.min[j]] for j in range(fp.dim)),
        tuple(maps[j][fp.bounds.max[j]] for j in range(fp.dim)),
    )
    return Floorplan(fp.dim, bounds, blocks)


def lift(fp: Floorplan, dim: int) -> Floorplan:
    """View ``fp`` as a higher-dimensional plan whose extra axes are full width."""
    if dim < fp.dim:
        raise ValueError(f"cannot lift a {fp.dim}-floorplan to dimension {dim}")
    pad = dim - fp.dim
    blocks = tuple(Box(b.min + (0,) * pad, b.max + (1,) * pad) for b in fp.blocks)
    bounds = Box(fp.bounds.min + (0,) * pad, fp.bounds.max + (1,) * pad)
    return Floorplan(dim, bounds, blocks)


# -- direction relations ------------------------------------------------------


def direction_relations(fp: Floorplan) -> DirectionRelationSet:
    """Reflexive-transitive closure of the j-neighbour relation, per axis j.

    In a generic plan all facets of axis j at one position belong to the same
    border, so blocks ``a`` and ``b`` are j-neighbours iff ``max_j(a) ==
    min_j(b)``.
    """
    n, d = fp.n, fp.dim
    rel = []
    for j in range(d):
        by_min: dict[int, int] = {}
        for b, box in enumerate(fp.blocks):
            by_min[box.min[j]] = by_min.get(box.min[j], 0) | (1 << b)
        rows = [by_min.get(box.max[j], 0) for box in fp.blocks]
        rel.append(tuple(transitive_closure(rows)))
    return DirectionRelationSet(d, n, tuple(rel))


# -- block deletion and peeling -----------------------------------------------


def _sides(fp: Floorplan, corner) -> tuple[int, ...]:
    if isinstance(corner, Corner):
        bits = corner.bits
        if len(bits) != fp.dim:
            raise InvalidCorner(f"corner {bits} has wrong dimension for d={fp.dim}")
        return bits
    pt = tuple(corner)
    if len(pt) != fp.dim:
        raise InvalidCorner(f"corner {pt} has wrong dimension for d={fp.dim}")
    bits = []
    for x, lo, hi in zip(pt, fp.bounds.min, fp.bounds.max):
        if x == hi:
            bits.append(1)
        elif x == lo:
            bits.append(0)
        else:
            raise InvalidCorner(f"{pt} is not a corner of the bounding box")
    return tuple(bits)


def _block_at(blocks: Sequence[Box], bounds: Box, sides: Sequence[int]) -> int:
    d = bounds.dim
    for k, b in enumerate(blocks):
        if all(
            (b.max[j] == bounds.max[j]) if sides[j] else (b.min[j] == bounds.min[j])
            for j in range(d)
        ):
            return k
    raise AssertionError("no block holds a bounding-box corner")


def _shift_axis(blocks: Sequence[Box], bounds: Box, sides: Sequence[int], k: int) -> int:
    """Axis of the unique shifting facet of block ``k`` (the one at ``sides``)."""
    box = blocks[k]
    found = []
    for j in range(bounds.dim):
        if sides[j]:
            p = box.min[j]
            if p == bounds.min[j]:
                continue
            alone = sum(1 for b in blocks if b.min[j] == p) == 1
        else:
            p = box.max[j]
            if p == bounds.max[j]:
                continue
            alone = sum(1 for b in blocks if b.max[j] == p) == 1
        if alone:
            found.append(j)
    if len(found) != 1:
        raise AssertionError(f"block {k} has {len(found)} shifting facets, expected exactly one")
    return found[0]


def _delete_raw(blocks: Sequence[Box], bounds: Box, sides: Sequence[int]) -> tuple[list[Box], int]:
    """Delete the block at the corner ``sides``; coordinates are not compacted.

    Returns the surviving blocks (order kept) and the removed index.
    """
    k = _block_at(blocks, bounds, sides)
    j = _shift_axis(blocks, bounds, sides, k)
    gone = blocks[k]
    out = []
    for idx, b in enumerate(blocks):
        if idx == k:
            continue
        if sides[j] and b.max[j] == gone.min[j]:
            hi = list(b.max)
            hi[j] = gone.max[j]
            b = Box(b.min, tuple(hi))
        elif not sides[j] and b.min[j] == gone.max[j]:
            lo = list(b.min)
            lo[j] = gone.min[j]
            b = Box(tuple(lo), b.max)
        out.append(b)
    return out, k


def shifting_facet(fp: Floorplan, corner) -> Facet:
    """The facet of the corner block that slides to the corner on deletion."""
    if fp.n < 2:
        raise SingleBlock("a one-block floorplan has no shifting facet")
    sides = _sides(fp, corner)
    k = _block_at(fp.blocks, fp.bounds, sides)
    j = _shift_axis(fp.blocks, fp.bounds, sides, k)
    return _facet_of(fp.blocks[k], j, upper=not sides[j])


def delete_block(fp: Floorplan, corner, check: bool = True) -> Floorplan:
    """Remove the block at ``corner`` and close the gap with its shifting facet.

    Surviving blocks keep their relative order.  The result is normalized and,
    with ``check``, re-validated.
    """
    if fp.n < 2:
        raise SingleBlock("cannot delete the only block")
    blocks, _ = _delete_raw(fp.blocks, fp.bounds, _sides(fp, corner))
    out = normalize(Floorplan(fp.dim, fp.bounds, tuple(blocks)))
    if check:
        _check(out)
    return out


def peel(fp: Floorplan, corner) -> list[int]:
    """Block identifiers in the order repeated deletion at ``corner`` removes them."""
    sides = _sides(fp, corner)
    blocks = list(fp.blocks)
    ids = list(range(fp.n))
    order = []
    while len(blocks) > 1:
        blocks, k = _delete_raw(blocks, fp.bounds, sides)
        order.append(ids.pop(k))
    order.append(ids[0])
    return order


def canonical_signature(fp: Floorplan) -> tuple[int, int, DirectionRelationSet]:
    """Direction relations with blocks relabelled by their peel order at q_min.

    Two floorplans are weakly equivalent iff their signatures are equal.
    """
    order = peel(fp, Corner((0,) * fp.dim))
    return fp.dim, fp.n, direction_relations(fp).relabel(order)


def equivalent(a: Floorplan, b: Floorplan) -> bool:
    return canonical_signature(a) == canonical_signature(b)


def is_guillotine(fp: Floorplan) -> bool:
    """Whether ``fp`` can be cut recursively by full cross-section borders."""

    def rec(blocks: list[Box]) -> bool:
        if len(blocks) == 1:
            return True
        for j in range(fp.dim):
            top = max(b.max[j] for b in blocks)
            for p in sorted({b.max[j] for b in blocks if b.max[j] != top}):
                if all(b.max[j] <= p or b.min[j] >= p for b in blocks):
                    low = [b for b in blocks if b.max[j] <= p]
                    high = [b for b in blocks if b.min[j] >= p]
                    return rec(low) and rec(high)
        return False

    return rec(list(fp.blocks))


def all_corners(dim: int) -> list[Corner]:
    return [Corner(bits) for bits in product((0, 1), repeat=dim)]


# -- JSON ---------------------------------------------------------------------


def to_json(fp: Floorplan, indent: int | None = None) -> str:
    doc = {
        "dim": fp.dim,
        "bounds": {"min": list(fp.bounds.min), "max": list(fp.bounds.max)},
        "blocks": [{"min": list(b.min), "max": list(b.max)} for b in fp.blocks],
    }
    return json.dumps(doc, indent=indent)


def from_json(text: str) -> Floorplan:
    """Parse and validate the floorplan JSON format."""
    try:
        doc = json.loads(text)
        dim = int(doc["dim"])
        bounds = _as_box(doc["bounds"])
        boxes = [_as_box(b) for b in doc["blocks"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad floorplan JSON: {exc}") from exc
    return validate(dim, bounds, boxes)
