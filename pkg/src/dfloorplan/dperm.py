"""d-permutations and pattern avoidance.

A d-permutation of size n is stored as the tuple of its d-1 non-trivial
permutations (0-based); the first coordinate of every point is its index.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .errors import BadIndices, DomainError, ParseError, ResourceLimit


def _standardize(seq: Sequence[int]) -> tuple[int, ...]:
    ranks = {x: r for r, x in enumerate(sorted(seq))}
    return tuple(ranks[x] for x in seq)


@dataclass(frozen=True)
class DPermutation:
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if perms:
            n = len(perms[0])
            for p in perms:
                if len(p) != n or sorted(p) != list(range(n)):
                    raise ValueError(f"not a permutation of 0..{n - 1}: {p}")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]]) -> "DPermutation":
        """Build from any point set in general position (standardized per axis)."""
        pts = sorted(tuple(p) for p in points)
        if not pts:
            raise ValueError("empty point set")
        cols = [_standardize([p[a] for p in pts]) for a in range(len(pts[0]))]
        return cls(tuple(cols[1:]))

    @classmethod
    def identity(cls, n: int, dims: int = 2) -> "DPermutation":
        return cls(tuple(tuple(range(n)) for _ in range(dims - 1)))

    @property
    def dims(self) -> int:
        return len(self.perms) + 1

    @property
    def n(self) -> int:
        return len(self.perms[0]) if self.perms else 0

    def __len__(self):
        return self.n

    def points(self) -> list[tuple[int, ...]]:
        """Diagram points, 0-based, sorted by first coordinate."""
        return [(i,) + tuple(p[i] for p in self.perms) for i in range(self.n)]

    @classmethod
    def parse(cls, text: str) -> "DPermutation":
        """Parse 1-based permutations: one per line, or the compact ``12435|34125`` form."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty permutation text")
        if len(lines) == 1 and (("|" in lines[0]) or lines[0].isdigit()):
            parts = [part.strip() for part in lines[0].split("|")]
            if not all(part.isdigit() for part in parts):
                raise ParseError(f"bad compact permutation {lines[0]!r}")
            rows = [[int(ch) for ch in part] for part in parts]
        else:
            try:
                rows = [[int(tok) for tok in ln.replace(",", " ").split()] for ln in lines]
            except ValueError as exc:
                raise ParseError(f"bad permutation text: {exc}") from exc
        n = len(rows[0])
        for r in rows:
            if sorted(r) != list(range(1, n + 1)):
                raise ParseError(f"not a permutation of 1..{n}: {r}")
        return cls(tuple(tuple(x - 1 for x in r) for r in rows))

    def format(self, compact: bool | None = None) -> str:
        if compact is None:
            compact = self.n <= 9
        if compact:
            if self.n > 9:
                raise ValueError("compact form needs n <= 9")
            return "|".join("".join(str(x + 1) for x in p) for p in self.perms)
        return "\n".join(" ".join(str(x + 1) for x in p) for p in self.perms)

    def __str__(self):
        return self.format()


def direction(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Signs of ``b - a`` per axis."""
    return tuple(1 if y > x else -1 for x, y in zip(a, b))


def project(p: DPermutation, indices: Sequence[int]) -> DPermutation:
    idx = list(indices)
    if not idx or any(b <= a for a, b in zip(idx, idx[1:])) or idx[0] < 0 or idx[-1] >= p.dims:
        raise BadIndices(f"indices must increase within [0, {p.dims}): {indices}")
    return DPermutation.from_points([tuple(pt[a] for a in idx) for pt in p.points()])


@dataclass(frozen=True)
class VincularPattern:
    """A pattern with, per axis k, the set X_k of required adjacencies (1-based)."""

    pattern: DPermutation
    adjacency: tuple[frozenset, ...] = ()

    def __post_init__(self):
        adj = tuple(frozenset(a) for a in self.adjacency)
        adj = adj + (frozenset(),) * (self.pattern.dims - len(adj))
        if len(adj) != self.pattern.dims:
            raise ValueError("one adjacency set per axis")
        for a in adj:
            if any(not 1 <= j < self.pattern.n for j in a):
                raise ValueError(f"adjacency out of range: {sorted(a)}")
        object.__setattr__(self, "adjacency", adj)

    def __str__(self):
        parts = [f"X_{k}={{{','.join(map(str, sorted(a)))}}}"
                 for k, a in enumerate(self.adjacency) if a]
        return self.pattern.format() + (" " + " ".join(parts) if parts else "")


@dataclass(frozen=True)
class Occurrence:
    axes: tuple[int, ...]
    indices: tuple[int, ...]   # 0-based first coordinates of the matched points
    pattern: VincularPattern

    def __str__(self):
        pts = ",".join(str(i + 1) for i in self.indices)
        axes = ",".join(map(str, self.axes))
        return f"points {pts} on axes {axes} realize {self.pattern}"


def _adjacent(sub, k: int, adj: frozenset) -> bool:
    order = sorted(x[k] for x in sub)
    return all(order[j] - order[j - 1] == 1 for j in adj)


def _occurrences(p: DPermutation, targets: dict, size: int, dims: int) -> Iterator[Occurrence]:
    """Matches of any pattern in ``targets`` (points tuple -> list of VincularPattern)."""
    pts = p.points()
    for axes in combinations(range(p.dims), dims):
        proj = sorted((tuple(pt[a] for a in axes), pt[0]) for pt in pts)
        for sub in combinations(proj, size):
            q = [s[0] for s in sub]
            cols = [_standardize([x[a] for x in q]) for a in range(dims)]
            key = tuple(zip(*cols))
            for vp in targets.get(key, ()):
                if all(_adjacent(q, k, vp.adjacency[k]) for k in range(dims)):
                    yield Occurrence(axes, tuple(sorted(s[1] for s in sub)), vp)


def _targets(vps) -> dict:
    out: dict = {}
    for vp in vps:
        out.setdefault(tuple(vp.pattern.points()), []).append(vp)
    return out


def find_vincular(p: DPermutation, vp: VincularPattern) -> Occurrence | None:
    if vp.pattern.dims > p.dims or vp.pattern.n > p.n:
        return None
    return next(_occurrences(p, _targets([vp]), vp.pattern.n, vp.pattern.dims), None)


def find_occurrence(p: DPermutation, pat: DPermutation) -> Occurrence | None:
    return find_vincular(p, VincularPattern(pat))


def contains(p: DPermutation, pat: DPermutation) -> bool:
    return find_occurrence(p, pat) is not None


def contains_vincular(p: DPermutation, vp: VincularPattern) -> bool:
    return find_vincular(p, vp) is not None


def symmetry_closure(vp: VincularPattern, ambient_dims: int | None = None) -> frozenset:
    """Orbit of ``vp`` under the symmetries of its own cube.

    An axis permutation carries the adjacency sets along; reversing axis k
    maps adjacency j to size - j.
    """
    dd, k = vp.pattern.dims, vp.pattern.n
    if ambient_dims is not None and dd > ambient_dims:
        raise DomainError(f"a {dd}-dimensional pattern does not fit in dimension {ambient_dims}")
    pts = vp.pattern.points()
    out = set()
    for perm in permutations(range(dd)):
        for flips in product((False, True), repeat=dd):
            img = [tuple(k - 1 - x[perm[a]] if flips[a] else x[perm[a]] for a in range(dd))
                   for x in pts]
            adj = tuple(frozenset(k - j if flips[a] else j for j in vp.adjacency[perm[a]])
                        for a in range(dd))
            out.add(VincularPattern(DPermutation.from_points(img), adj))
    return frozenset(out)


BAXTER_VINCULAR = VincularPattern(DPermutation(((1, 3, 0, 2),)), (frozenset({2}), frozenset()))
PATTERN_3D = VincularPattern(DPermutation(((2, 0, 1), (1, 0, 2))))


@lru_cache(maxsize=None)
def _forbidden():
    return (_targets(symmetry_closure(PATTERN_3D)), _targets(symmetry_closure(BAXTER_VINCULAR)))


def find_F_violation(p: DPermutation) -> Occurrence | None:
    """An occurrence of a forbidden pattern of the class F, or None."""
    three, two = _forbidden()
    if p.dims >= 3:
        occ = next(_occurrences(p, three, 3, 3), None)
        if occ is not None:
            return occ
    if p.dims >= 2:
        return next(_occurrences(p, two, 4, 2), None)
    return None


def is_in_F(p: DPermutation) -> bool:
    return find_F_violation(p) is None


def find_baxter_violation(p: DPermutation) -> tuple[int, int, int, int] | None:
    """Classical test for d=2: an occurrence of 2-41-3 or 3-14-2 (0-based positions)."""
    if p.dims != 2:
        raise DomainError("the Baxter test applies to ordinary permutations only")
    s = p.perms[0]
    n = len(s)
    for j in range(1, n - 2):
        a, b = s[j], s[j + 1]
        for i in range(j):
            for k in range(j + 2, n):
                if a > b and b < s[i] < s[k] < a:
                    return (i, j, j + 1, k)
                if a < b and a < s[k] < s[i] < b:
                    return (i, j, j + 1, k)
    return None


def is_baxter_2d(p: DPermutation) -> bool:
    return find_baxter_violation(p) is None


def is_separable(p: DPermutation) -> bool:
    """Recursive two-part splits with a single direction between the parts.

    Such a split is always a prefix in the first coordinate, with every other
    coordinate entirely below or entirely above on the prefix.
    """

    def rec(pts: list) -> bool:
        if len(pts) <= 1:
            return True
        for m in range(1, len(pts)):
            left, right = pts[:m], pts[m:]
            if all(max(x[a] for x in left) < min(x[a] for x in right)
                   or min(x[a] for x in left) > max(x[a] for x in right)
                   for a in range(1, len(pts[0]))):
                return rec(left) and rec(right)
        return False

    return rec(p.points())


def iter_dperms(dims: int, n: int) -> Iterator[DPermutation]:
    for perms in product(permutations(range(n)), repeat=dims - 1):
        yield DPermutation(perms)


CLASSES = {"f": is_in_F, "separable": is_separable, "baxter2d": is_baxter_2d,
           "all": lambda p: True}


def _count_slice(args) -> int:
    dims, n, cls, first = args
    test = CLASSES[cls]
    rest = product(permutations(range(n)), repeat=dims - 2)
    return sum(1 for r in rest if test(DPermutation((first,) + r)))


def enumerate_class(dims: int, n: int, cls: str = "f", workers: int = 1,
                    limit: int | None = 10**7) -> int:
    """Brute-force count of the d-permutations of size n in a class."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    total = math.factorial(n) ** (dims - 1)
    if limit is not None and total > limit:
        raise ResourceLimit(f"{total} candidates exceed the cap of {limit}")
    if dims == 1:
        return 1
    jobs = [(dims, n, cls, first) for first in permutations(range(n))]
    if workers <= 1:
        return sum(map(_count_slice, jobs))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_slice, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
