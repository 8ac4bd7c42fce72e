"""Word machinery for free and closed surface groups.

Words are compact strings, one char per letter, uppercase = inverse.  The
closed-surface word problem is solved by Dehn's greedy algorithm: any
freely reduced trivial word contains more than half of a cyclic rotation of
the relator (Greendlinger), so repeatedly replacing such subwords by the
shorter complement terminates at the empty word exactly for trivial input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedSurface
from .surfaces import Surface


def inverse_word(w: str) -> str:
    return w[::-1].swapcase()


def free_reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def cyclic_reduce(w: str) -> str:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == w[-1].swapcase():
        w = w[1:-1]
    return w


def _rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))]


def _relator_rotations(surface: Surface) -> list[str]:
    rel = surface.relator()
    assert rel is not None
    rots = _rotations(rel) + _rotations(inverse_word(rel))
    return sorted(set(rots))


def _dehn_step(w: str, rotations: list[str], cyclic: bool) -> str | None:
    """One Dehn replacement: find a subword that is more than half of some
    relator rotation and swap it for the inverse of the complement.  Returns
    the new word, or None when no replacement applies."""
    if not rotations:
        return None
    length = len(rotations[0])
    half = length // 2
    haystack = w + w if cyclic else w
    limit = len(w) if cyclic else max(len(w) - half, 0)
    for rot in rotations:
        probe = rot[: half + 1]
        start = haystack.find(probe)
        while 0 <= start < limit:
            # extend the match greedily along the rotation
            m = half + 1
            while (
                m < length
                and start + m < len(haystack)
                and (not cyclic or m < len(w))
                and haystack[start + m] == rot[m]
            ):
                m += 1
            replacement = inverse_word(rot[m:])
            if cyclic:
                rotated = w[start:] + w[:start]
                return cyclic_reduce(replacement + rotated[m:])
            return free_reduce(w[:start] + replacement + w[start + m :])
        # no occurrence of this rotation's long prefix; try the next one
    return None


def _check_surface(surface: Surface) -> bool:
    """True when the closed-surface Dehn machinery applies, False for free."""
    if not surface.is_closed:
        return False
    if surface.genus <= 1:
        raise UnsupportedSurface(
            "Dehn's algorithm needs a closed surface of genus >= 2 "
            "(or a bounded surface, whose group is free)"
        )
    return True


def dehn_reduce(word: str, surface: Surface) -> str:
    """Dehn-reduced form: free reduction for free groups; for closed genus
    >= 2, greedy >half-relator replacement until none applies."""
    w = free_reduce(word)
    if not _check_surface(surface):
        return w
    rotations = _relator_rotations(surface)
    while True:
        nxt = _dehn_step(w, rotations, cyclic=False)
        if nxt is None:
            return w
        w = nxt


def is_trivial(word: str, surface: Surface) -> bool:
    return dehn_reduce(word, surface) == ""


def cyclic_dehn_reduce(word: str, surface: Surface) -> str:
    """Cyclic-word variant; the result is well defined up to rotation."""
    w = cyclic_reduce(word)
    if not _check_surface(surface):
        return w
    rotations = _relator_rotations(surface)
    while True:
        nxt = _dehn_step(w, rotations, cyclic=True)
        if nxt is None:
            return w
        w = nxt


def _minimal_rotation(w: str) -> str:
    return min(_rotations(w)) if w else ""


def conjugate_classes_equal(w1: str, w2: str, surface: Surface) -> bool:
    """Compare free-homotopy classes up to orientation flip: cyclically
    Dehn-reduce both words and test for equality up to rotation, also against
    the reversed-orientation (inverse) word."""
    r1 = cyclic_dehn_reduce(w1, surface)
    r2 = cyclic_dehn_reduce(w2, surface)
    c2 = _minimal_rotation(r2)
    return _minimal_rotation(r1) == c2 or _minimal_rotation(inverse_word(r1)) == c2


def conjugacy_class_key(word: str, surface: Surface) -> str:
    """Canonical representative used for multiset comparison of shadow
    classes (orientation-flip symmetric)."""
    r = cyclic_dehn_reduce(word, surface)
    return min(_minimal_rotation(r), _minimal_rotation(inverse_word(r)))


# ----------------------------------------------------------------------
# exponent-sum obstruction for normal closures


@dataclass(frozen=True)
class GroupElementExpr:
    """Product prod_j g_j^{-1} w^{eps_j} g_j of conjugated powers of w."""

    w: str
    factors: tuple[tuple[str, int], ...]  # (g_j, eps_j)

    def __post_init__(self):
        if any(eps not in (1, -1) for _, eps in self.factors):
            raise ValueError("exponents must be +-1")

    def product_word(self) -> str:
        parts = []
        for g, eps in self.factors:
            core = self.w if eps == 1 else inverse_word(self.w)
            parts.append(inverse_word(g) + core + g)
        return free_reduce("".join(parts))


def exponent_sum(expr: GroupElementExpr) -> int:
    return sum(eps for _, eps in expr.factors)


CONSISTENT = "ConsistentWithLemma"
VIOLATES = "ViolatesLemma"


def powersum_check(expr: GroupElementExpr, surface: Surface) -> str:
    """A trivial product of conjugates of a nontrivial w forces the exponent
    sum to vanish; report a violation only if that fails (it never should)."""
    if is_trivial(expr.w, surface):
        return CONSISTENT
    if exponent_sum(expr) == 0:
        return CONSISTENT
    if is_trivial(expr.product_word(), surface):
        return VIOLATES
    return CONSISTENT
