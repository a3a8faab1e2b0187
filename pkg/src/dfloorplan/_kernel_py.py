"""Pure-Python label rewriting kernel (fallback for the compiled one).

Labels travel as ``bytes``: ``m`` vectors of ``d`` bytes each, concatenated
in canonical order (axis, then entries).  Byte 255 stands for the dot.
"""
from __future__ import annotations

DOT_BYTE = 255


def _axis(w: bytes) -> int:
    return w.index(DOT_BYTE)


def canonicalize(vecs, d: int) -> bytes:
    """Dense re-rank each coordinate, deduplicate, sort by (axis, entries)."""
    maps = []
    for j in range(d):
        vals = sorted({w[j] for w in vecs if w[j] != DOT_BYTE})
        maps.append({x: r for r, x in enumerate(vals)})
    out = set()
    for w in vecs:
        out.add(bytes(DOT_BYTE if x == DOT_BYTE else maps[j][x] for j, x in enumerate(w)))
    return b"".join(sorted(out, key=lambda w: (_axis(w), w)))


def rewrite_key(key: bytes, d: int, idx: int) -> bytes:
    m = len(key) // d
    vs = [key[t * d:(t + 1) * d] for t in range(m)]
    v = vs[idx]
    i = _axis(v)
    keep = []
    top = -1
    for w in vs:
        ia = _axis(w)
        for j in range(d):
            if j != i and j != ia and w[j] > v[j]:
                break
        else:
            keep.append(w)
            if ia != i and w[i] > top:
                top = w[i]
    top += 1
    if top >= DOT_BYTE:
        raise OverflowError("label rank exceeds 254")
    for j in range(d):
        if j != i:
            c = bytearray(v)
            c[i] = top
            c[j] = DOT_BYTE
            keep.append(bytes(c))
    return canonicalize(keep, d)


def expand_key(key: bytes, d: int) -> list[bytes]:
    return [rewrite_key(key, d, t) for t in range(len(key) // d)]


def expand_frontier(frontier: dict, d: int) -> dict:
    out: dict = {}
    get = out.get
    for key, count in frontier.items():
        for t in range(len(key) // d):
            child = rewrite_key(key, d, t)
            out[child] = get(child, 0) + count
    return out
