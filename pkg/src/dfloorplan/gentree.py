"""Generating tree of d-floorplans.

The parent of a floorplan is obtained by deleting the block at its maximal
corner; children are obtained by block insertion at a *pushable corner*.
Pushable corners are encoded as rank vectors, and the child's label only
depends on the parent's label, which gives a generating tree on labels that
can be counted level by level with a multiplicity map.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernel
from .errors import InvalidCorner, ParseError, ResourceLimit, SingleBlock, VectorNotInLabel
from .geometry import Box, Facet, Floorplan, _check, delete_block, normalize, root

DOT = -1
_DOT_BYTE = 255


@dataclass(frozen=True, order=True)
class RankVector:
    """Encoded pushable corner: ranks per coordinate, ``DOT`` on its axis."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.entries.count(DOT) != 1:
            raise ValueError(f"rank vector needs exactly one dot: {self.entries}")

    @property
    def axis(self) -> int:
        return self.entries.index(DOT)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __str__(self):
        return ",".join("." if x == DOT else str(x) for x in self.entries)

    def sort_key(self):
        return (self.axis, self.entries)


def _vec_bytes(v: RankVector) -> bytes:
    return bytes(_DOT_BYTE if x == DOT else x for x in v.entries)


@dataclass(frozen=True)
class Label:
    """A set of rank vectors in canonical form (dense ranks, sorted)."""

    dim: int
    vectors: tuple[RankVector, ...]

    @classmethod
    def canonical(cls, dim: int, vectors) -> "Label":
        vecs = [v if isinstance(v, RankVector) else RankVector(v) for v in vectors]
        if any(v.dim != dim for v in vecs):
            raise ValueError("rank vectors of mixed dimension")
        from ._kernel_py import canonicalize

        return cls.from_key(dim, canonicalize([_vec_bytes(v) for v in vecs], dim))

    @classmethod
    def from_key(cls, dim: int, key: bytes) -> "Label":
        vecs = tuple(
            RankVector(tuple(DOT if x == _DOT_BYTE else x for x in key[t:t + dim]))
            for t in range(0, len(key), dim)
        )
        return cls(dim, vecs)

    @property
    def key(self) -> bytes:
        return b"".join(_vec_bytes(v) for v in self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __str__(self):
        return " ".join(str(v) for v in self.vectors)

    def to_text(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "Label":
        try:
            vecs = [
                RankVector(tuple(DOT if x == "." else int(x) for x in tok.strip("()").split(",")))
                for tok in text.split()
            ]
        except ValueError as exc:
            raise ParseError(f"bad label {text!r}: {exc}") from exc
        if not vecs:
            raise ParseError("empty label")
        return cls.canonical(vecs[0].dim, vecs)


def root_label(dim: int) -> Label:
    return Label.canonical(
        dim, [tuple(DOT if j == i else 0 for j in range(dim)) for i in range(dim)]
    )


def rewrite(label: Label, v) -> Label:
    """Child label for the vector ``v`` (a RankVector or its index in ``label``).

    Vectors shadowed by ``v`` are dropped: ``w`` of axis ``i'`` is shadowed by
    ``v`` of axis ``i`` when ``w[j] > v[j]`` for some ``j`` outside
    ``{i, i'}``.  The survivors gain the projections of the new core vector,
    which equals ``v`` except for one rank above the survivors' maximum on
    ``v``'s axis.
    """
    if isinstance(v, int):
        if not 0 <= v < len(label):
            raise VectorNotInLabel(f"no vector with index {v} in a label of size {len(label)}")
        idx = v
    else:
        try:
            idx = label.vectors.index(v)
        except ValueError:
            raise VectorNotInLabel(f"{v} is not in label {label}") from None
    return Label.from_key(label.dim, kernel.rewrite_key(label.key, label.dim, idx))


def label_children(label: Label) -> list[Label]:
    return [Label.from_key(label.dim, k) for k in kernel.expand_key(label.key, label.dim)]


# -- geometric side -----------------------------------------------------------


@dataclass(frozen=True)
class PushableCorner:
    axis: int
    coords: tuple[int, ...]
    facet: Facet


def _raw_pushable(fp: Floorplan) -> list[PushableCorner]:
    d = fp.dim
    hi = fp.bounds.max
    found = []
    for i in range(d):
        others = [l for l in range(d) if l != i]
        tops = [b for b in fp.blocks if b.max[i] == hi[i]]
        for t in tops:
            lo = t.min
            # the region [lo, hi] on the top face must be a union of top facets
            if all(
                all(b.min[l] >= lo[l] for l in others) or any(b.max[l] <= lo[l] for l in others)
                for b in tops
            ):
                coords = tuple(hi[i] if l == i else lo[l] for l in range(d))
                facet = Facet(i, hi[i], tuple((lo[l], hi[l]) for l in others))
                found.append(PushableCorner(i, coords, facet))
    return found


def _rank(corners: Sequence[PushableCorner], d: int) -> list[RankVector]:
    maps = []
    for j in range(d):
        vals = sorted({c.coords[j] for c in corners if c.axis != j})
        maps.append({x: r for r, x in enumerate(vals)})
    return [
        RankVector(tuple(DOT if j == c.axis else maps[j][c.coords[j]] for j in range(d)))
        for c in corners
    ]


def _ranked(fp: Floorplan) -> list[tuple[RankVector, PushableCorner]]:
    corners = _raw_pushable(fp)
    pairs = list(zip(_rank(corners, fp.dim), corners))
    pairs.sort(key=lambda p: p[0].sort_key())
    return pairs


def pushable_corners(fp: Floorplan) -> list[PushableCorner]:
    """Pushable corners in the canonical order of their rank vectors."""
    return [c for _, c in _ranked(fp)]


def label_of(fp: Floorplan) -> Label:
    return Label(fp.dim, tuple(v for v, _ in _ranked(fp)))


def insert_at(fp: Floorplan, axis: int, lo: Sequence[int], check: bool = True) -> Floorplan:
    """Insert a block on top of the face region ``[lo, max]`` of ``axis``.

    Top blocks of ``axis`` outside the region are stretched past the old
    upper bound; the new block (appended last) fills the gap above the region.
    The region is assumed to be a pushable facet.
    """
    d = fp.dim
    top = fp.bounds.max[axis]
    blocks = []
    for b in fp.blocks:
        if b.max[axis] == top and not all(b.min[l] >= lo[l] for l in range(d) if l != axis):
            hi = list(b.max)
            hi[axis] = top + 1
            b = Box(b.min, tuple(hi))
        blocks.append(b)
    new_lo = tuple(top if l == axis else lo[l] for l in range(d))
    new_hi = tuple(top + 1 if l == axis else fp.bounds.max[l] for l in range(d))
    blocks.append(Box(new_lo, new_hi))
    bounds = Box(fp.bounds.min, new_hi)
    out = normalize(Floorplan(d, bounds, tuple(blocks)))
    if check:
        _check(out)
    return out


def insert_block(fp: Floorplan, pc, check: bool = True) -> Floorplan:
    """Child of ``fp`` for the pushable corner ``pc`` (or its index)."""
    corners = pushable_corners(fp)
    if isinstance(pc, int):
        if not 0 <= pc < len(corners):
            raise InvalidCorner(f"no pushable corner with index {pc}")
        pc = corners[pc]
    elif not any(c.axis == pc.axis and c.coords == pc.coords for c in corners):
        raise InvalidCorner(f"{pc} is not a pushable corner of this floorplan")
    return insert_at(fp, pc.axis, pc.coords, check=check)


def parent(fp: Floorplan) -> Floorplan:
    if fp.n < 2:
        raise SingleBlock("the root has no parent")
    return delete_block(fp, fp.q_max)


def children(fp: Floorplan, check: bool = True) -> list[Floorplan]:
    """One child per pushable corner, in canonical corner order."""
    return [insert_at(fp, c.axis, c.coords, check=check) for c in pushable_corners(fp)]


def enumerate_floorplans(dim: int, n: int, max_nodes: int | None = None,
                         check: bool = False) -> Iterator[Floorplan]:
    """One representative per equivalence class of d-floorplans with n blocks."""
    if n < 1:
        return
    if max_nodes is not None:
        total = count_by_level(dim, n)[-1]
        if total > max_nodes:
            raise ResourceLimit(f"{total} floorplans exceed the cap of {max_nodes}")

    def walk(fp: Floorplan) -> Iterator[Floorplan]:
        if fp.n == n:
            yield fp
            return
        for child in children(fp, check=check):
            yield from walk(child)

    yield from walk(root(dim))


# -- counting -----------------------------------------------------------------


def _expand_chunk(args):
    chunk, d = args
    return kernel.expand_frontier(dict(chunk), d)


def step_frontier(frontier: dict, d: int, workers: int = 1) -> dict:
    """Apply the rewriting rule to every label of a level (multiplicities kept)."""
    if workers <= 1 or len(frontier) < 2 * workers:
        return kernel.expand_frontier(frontier, d)
    items = sorted(frontier.items())
    chunks = [items[w::workers] for w in range(workers)]
    out: dict = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_expand_chunk, [(c, d) for c in chunks]):
            for k, c in part.items():
                out[k] = out.get(k, 0) + c
    return out


def count_by_level(dim: int, n_max: int, workers: int = 1, max_frontier: int | None = None,
                   checkpoint: str | os.PathLike | None = None, on_level=None) -> list[int]:
    """Number of d-floorplans with ``n`` blocks for ``n = 1..n_max``.

    Returns a list whose entry ``k`` is the count for ``n = k + 1``.  With
    ``checkpoint`` the frontier is saved after each level and a compatible
    existing file is resumed from.  ``max_frontier`` caps the number of
    distinct labels held at once.
    """
    if dim < 1 or n_max < 1:
        raise ValueError("dim and n_max must be positive")
    frontier = {root_label(dim).key: 1}
    counts = [1]
    if checkpoint is not None and os.path.exists(checkpoint):
        d0, counts0, frontier0 = load_frontier(checkpoint)
        if d0 == dim and len(counts0) <= n_max:
            counts, frontier = counts0, frontier0
    if on_level is not None:
        for k, c in enumerate(counts):
            on_level(k + 1, c)
    while len(counts) < n_max:
        frontier = step_frontier(frontier, dim, workers)
        if max_frontier is not None and len(frontier) > max_frontier:
            raise ResourceLimit(
                f"frontier of level {len(counts) + 1} holds {len(frontier)} labels "
                f"(cap {max_frontier})",
                last_level=len(counts),
            )
        counts.append(sum(frontier.values()))
        if checkpoint is not None:
            save_frontier(checkpoint, dim, counts, frontier)
        if on_level is not None:
            on_level(len(counts), counts[-1])
    return counts[:n_max]


def label_tree(dim: int, n_max: int, max_nodes: int | None = None):
    """Materialized label tree: yields ``(node_id, level, parent_id, Label)``.

    Breadth-first; the root has parent ``None``.
    """
    if max_nodes is not None:
        total = sum(count_by_level(dim, n_max))
        if total > max_nodes:
            raise ResourceLimit(f"{total} tree nodes exceed the cap of {max_nodes}")
    level = [(0, root_label(dim))]
    yield 0, 1, None, level[0][1]
    next_id = 1
    for n in range(2, n_max + 1):
        nxt = []
        for pid, lab in level:
            for child in label_children(lab):
                yield next_id, n, pid, child
                nxt.append((next_id, child))
                next_id += 1
        level = nxt


# -- checkpoints --------------------------------------------------------------

_HEADER = "# dfloorplan frontier"


def save_frontier(path, dim: int, counts: Sequence[int], frontier: dict) -> None:
    """Write a level's frontier as sorted ``label<TAB>count`` lines (atomic replace)."""
    lines = [
        f"{_HEADER} dim={dim} level={len(counts)}",
        "# counts " + ",".join(str(c) for c in counts),
    ]
    recs = sorted((str(Label.from_key(dim, k)), c) for k, c in frontier.items())
    lines.extend(f"{lab}\t{c}" for lab, c in recs)
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_frontier(path) -> tuple[int, list[int], dict]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    try:
        head = lines[0]
        if not head.startswith(_HEADER):
            raise ValueError("missing header")
        fields = dict(tok.split("=") for tok in head[len(_HEADER):].split())
        dim = int(fields["dim"])
        counts = [int(x) for x in lines[1].split()[2].split(",")]
        frontier = {}
        for line in lines[2:]:
            if not line.strip():
                continue
            lab, c = line.split("\t")
            frontier[Label.parse(lab).key] = int(c)
    except (ValueError, IndexError, KeyError) as exc:
        raise ParseError(f"bad checkpoint {path}: {exc}") from exc
    if len(counts) != int(fields["level"]):
        raise ParseError(f"checkpoint {path} is inconsistent")
    return dim, counts, frontier
