"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction

from curvelift import Diagram, Surface
from curvelift.diagrams import CUSP_SMOOTH, SMOOTH, cross, cusp, edge, kink, qturn


def det_fraction(m) -> Fraction:
    """Independent determinant oracle: fraction-free only in spirit — plain
    Gaussian elimination over exact rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def random_matrix(rng, max_dim=8, lo=-50, hi=50):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def random_word(rng, surface: Surface, length: int) -> str:
    chars = surface.generator_chars
    out = []
    for _ in range(length):
        ch = rng.choice(chars)
        out.append(ch.upper() if rng.random() < 0.5 else ch)
    return "".join(out)


# ----------------------------------------------------------------------
# random diagrams


def _event_turning(surface: Surface, ev) -> Fraction:
    if ev[0] == "qturn":
        return Fraction(ev[1], 4)
    if ev[0] == "kink":
        return Fraction(ev[1])
    if ev[0] == "cusp":
        return Fraction(ev[1], 2)
    if ev[0] == "edge":
        return surface.edge_turning_offset()
    return Fraction(0)


def random_diagram(
    rng,
    surface: Surface,
    mode: str = SMOOTH,
    n_components: int = 1,
    max_loose_events: int = 6,
    max_crossings: int = 2,
    allow_loops: bool = True,
) -> Diagram:
    """Random valid diagram: paired crossings, even cusp counts per component
    (cusp-smooth mode), turning padded to the mode's integrality grid with
    extra quarter turns."""
    comps: list[list] = [[] for _ in range(n_components)]
    names = surface.generator_names
    for comp in comps:
        for _ in range(rng.randint(0, max_loose_events)):
            roll = rng.random()
            if roll < 0.45:
                name = rng.choice(names)
                comp.append(edge(name + ("'" if rng.random() < 0.5 else "")))
            elif roll < 0.75 or not allow_loops:
                comp.append(qturn(rng.choice((1, -1))))
            elif mode == SMOOTH:
                comp.append(kink(rng.choice((1, -1))))
            else:
                sign = rng.choice((1, -1))
                comp.extend([cusp(sign), cusp(sign)])
    for cid in range(1, rng.randint(0, max_crossings) + 1):
        for slot in (1, 2):
            comp = comps[rng.randrange(n_components)]
            comp.insert(rng.randint(0, len(comp)), cross(str(cid), slot))
    # pad each component's turning onto the integrality grid
    grid = 4 if mode == SMOOTH else 2
    for comp in comps:
        total = sum(_event_turning(surface, ev) for ev in comp)
        deficit = int((-total * 4)) % grid
        for _ in range(deficit):
            comp.insert(rng.randint(0, len(comp)), qturn(1))
    return Diagram(surface, mode, tuple(tuple(c) for c in comps))


def random_shadow_diagram(rng, surface: Surface, mode: str, **kw) -> Diagram:
    """Kink/cusp-free diagram usable as a TwistedShadow base."""
    return random_diagram(rng, surface, mode, allow_loops=False, **kw)
