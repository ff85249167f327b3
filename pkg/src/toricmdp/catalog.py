"""Standard fans and a generator of complete regular surfaces."""

from itertools import combinations
from typing import List, Sequence, Tuple

from .fan import Fan


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    return Fan(n, tuple(rays), tuple(combinations(range(n + 1), n)), name=f"P{n}")


def hirzebruch(a: int) -> Fan:
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    return Fan(2, rays, ((0, 1), (1, 2), (2, 3), (3, 0)), name=f"F{a}")


def surface_from_cycle(rays: Sequence[Tuple[int, int]], name: str = None) -> Fan:
    """Complete 2-d fan whose rays are listed in cyclic order."""
    k = len(rays)
    return Fan(2, tuple(rays), tuple((i, (i + 1) % k) for i in range(k)), name=name)


def stellar_subdivisions(rays: Sequence[Tuple[int, int]]) -> List[List[Tuple[int, int]]]:
    """All cyclic ray lists obtained by subdividing one 2-cone of a surface fan."""
    out = []
    k = len(rays)
    for i in range(k):
        u, v = rays[i], rays[(i + 1) % k]
        new = (u[0] + v[0], u[1] + v[1])
        out.append(list(rays[:i + 1]) + [new] + list(rays[i + 1:]))
    return out


def _canonical(rays):
    k = len(rays)
    rots = [tuple(rays[i:] + rays[:i]) for i in range(k)]
    return min(rots)


def blowup_catalog(min_count: int = 20, max_rays: int = 9) -> List[Fan]:
    """Distinct complete regular surfaces from repeated stellar subdivision of P2.

    Breadth-first, so small fans come first; stops once ``min_count`` fans
    are collected and the current level is exhausted.
    """
    start = [(1, 0), (0, 1), (-1, -1)]
    seen = {_canonical(start)}
    level = [start]
    fans = [surface_from_cycle(start, "P2")]
    while level and len(fans) < min_count:
        nxt = []
        for rays in level:
            if len(rays) >= max_rays:
                continue
            for child in stellar_subdivisions(rays):
                key = _canonical(child)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(child)
                fans.append(surface_from_cycle(child, f"blowup-{len(fans)}"))
        level = nxt
    return fans
