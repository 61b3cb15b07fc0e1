"""Exact row reduction for sparse vectors (dicts from basis key to scalar)."""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List


def echelon(vectors: Iterable[Dict[Hashable, object]]) -> Dict[Hashable, dict]:
    """Reduced echelon basis of the span, keyed by pivot."""
    piv: Dict[Hashable, dict] = {}
    for v in vectors:
        v = {k: c for k, c in v.items() if c}
        for p in [p for p in v if p in piv]:
            c = v.get(p)
            if c:
                for k, a in piv[p].items():
                    s = v.get(k, 0) - c * a
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
        if not v:
            continue
        p = max(v, key=repr)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in piv.items():
            c = row.get(p)
            if c:
                for k, a in v.items():
                    s = row.get(k, 0) - c * a
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        piv[p] = v
    return piv


def rank(vectors: Iterable[dict]) -> int:
    return len(echelon(vectors))


def same_span(a: List[dict], b: List[dict]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))
