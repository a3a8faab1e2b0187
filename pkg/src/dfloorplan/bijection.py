"""Bijection between 2^(d-1)-floorplans and the d-permutation class F.

A floorplan is sent to the point set whose coordinates are the ranks of
every block in the peeling orders at the d canonical corners.  In the other
direction, blocks are created one at a time in the order of the first
coordinate, each pushed along the axis associated with the direction from
the previous point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dperm import DPermutation, direction, find_F_violation
from .errors import DimensionNotPowerOfTwo, NonPositiveDirection, NotInClassF
from .geometry import (
    Corner,
    DirectionRelationSet,
    Floorplan,
    equivalent,
    lift,
    peel,
    root,
    transitive_closure,
)
from .gentree import _raw_pushable, insert_at


@dataclass(frozen=True)
class CanonicalCornerSet:
    dims: int
    corners: tuple[Corner, ...]

    @property
    def floorplan_dim(self) -> int:
        return 1 << (self.dims - 1)

    def signed(self, signs: Sequence[int]) -> tuple[Corner, ...]:
        """``q_i`` for a ``+1`` sign, its opposite corner for ``-1``."""
        return tuple(q if s > 0 else q.opposite() for q, s in zip(self.corners, signs))


def canonical_corners(dims: int) -> CanonicalCornerSet:
    if dims < 1:
        raise ValueError("dims must be positive")
    D = 1 << (dims - 1)
    return CanonicalCornerSet(
        dims, tuple(Corner(tuple((c >> (dims - 1 - i)) & 1 for c in range(D))) for i in range(dims))
    )


def associated_axis(signs: Sequence[int]) -> int:
    """Floorplan axis whose direction relation matches the positive direction ``signs``."""
    if not signs or signs[0] != 1:
        raise NonPositiveDirection(f"direction {tuple(signs)} is not positive")
    d = len(signs)
    return sum(1 << (d - 1 - i) for i in range(1, d) if signs[i] == -1)


def positive_directions(dims: int) -> list[tuple[int, ...]]:
    """Positive directions listed by associated axis."""
    return [
        (1,) + tuple(-1 if (ax >> (dims - 1 - i)) & 1 else 1 for i in range(1, dims))
        for ax in range(1 << (dims - 1))
    ]


def _dims_for(D: int) -> int | None:
    if D < 1 or D & (D - 1):
        return None
    return D.bit_length()


def _prepared(fp: Floorplan, allow_lift: bool) -> Floorplan:
    if _dims_for(fp.dim) is None:
        if not allow_lift:
            raise DimensionNotPowerOfTwo(f"dimension {fp.dim} is not a power of two")
        fp = lift(fp, 1 << fp.dim.bit_length())
    return fp


def peel_ranks(fp: Floorplan, corner) -> list[int]:
    """``ranks[b]`` is the position of block ``b`` in the peeling order at ``corner``."""
    ranks = [0] * fp.n
    for r, b in enumerate(peel(fp, corner)):
        ranks[b] = r
    return ranks


def phi(fp: Floorplan, allow_lift: bool = True) -> DPermutation:
    """d-permutation of a 2^(d-1)-floorplan (others are lifted first, if allowed)."""
    fp = _prepared(fp, allow_lift)
    cc = canonical_corners(_dims_for(fp.dim))
    ranks = [peel_ranks(fp, q) for q in cc.corners]
    return DPermutation.from_points([tuple(r[b] for r in ranks) for b in range(fp.n)])


def psi(p: DPermutation) -> DirectionRelationSet:
    """One partial order per positive direction, stored at its associated axis."""
    pts = p.points()
    n, d = p.n, p.dims
    rel = [[1 << a for a in range(n)] for _ in range(1 << (d - 1))]
    for a in range(n):
        for b in range(a + 1, n):
            rel[associated_axis(direction(pts[a], pts[b]))][a] |= 1 << b
    return DirectionRelationSet(1 << (d - 1), n, tuple(tuple(r) for r in rel))


def peel_intersection(fp: Floorplan, signs: Sequence[int]) -> DirectionRelationSet:
    """Intersection of the signed canonical peeling orders for one direction.

    Returned as a single-axis relation set; ``rel[0][a]`` holds the blocks
    ``b`` that follow ``a`` in every selected order.
    """
    cc = canonical_corners(len(signs))
    ranks = [peel_ranks(fp, q) for q in cc.signed(signs)]
    rows = []
    for a in range(fp.n):
        m = 0
        for b in range(fp.n):
            if all(r[a] <= r[b] for r in ranks):
                m |= 1 << b
        rows.append(m)
    return DirectionRelationSet(1, fp.n, (tuple(rows),))


def dperm_to_floorplan(p: DPermutation) -> Floorplan:
    """Floorplan built block by block from a d-permutation of the class F."""
    occ = find_F_violation(p)
    if occ is not None:
        raise NotInClassF(f"not in class F: {occ}", witness=occ)
    D = 1 << (p.dims - 1)
    pts = p.points()
    fp = root(D)
    exposed = [[0] for _ in range(D)]
    for i in range(1, p.n):
        f = direction(pts[i - 1], pts[i])
        j = associated_axis(f)
        push = [k for k in exposed[j] if direction(pts[k], pts[i]) == f]
        lo = tuple(min(fp.blocks[k].min[l] for k in push) for l in range(D))
        region = {k for k, b in enumerate(fp.blocks)
                  if b.max[j] == fp.bounds.max[j]
                  and all(b.min[l] >= lo[l] for l in range(D) if l != j)}
        assert push and region == set(push), (p, i, push, region)
        assert any(c.axis == j and c.coords[:j] + c.coords[j + 1:] == lo[:j] + lo[j + 1:]
                   for c in _raw_pushable(fp)), (p, i)
        fp = insert_at(fp, j, lo, check=False)
        exposed[j] = [k for k in exposed[j] if k not in push]
        for s in exposed:
            s.append(i)
    return fp


def roundtrip_check(obj) -> bool:
    """Floorplan: psi-side rebuild is equivalent.  DPermutation: phi recovers it."""
    if isinstance(obj, Floorplan):
        fp = _prepared(obj, True)
        return equivalent(dperm_to_floorplan(phi(fp)), fp)
    return phi(dperm_to_floorplan(obj)) == obj


def relations_from_peels(fp: Floorplan) -> DirectionRelationSet:
    """Direction relations rebuilt from the canonical peeling orders alone."""
    fp = _prepared(fp, False)
    d = _dims_for(fp.dim)
    rel = [None] * fp.dim
    for signs in positive_directions(d):
        rel[associated_axis(signs)] = tuple(transitive_closure(list(peel_intersection(fp, signs).rel[0])))
    return DirectionRelationSet(fp.dim, fp.n, tuple(rel))
