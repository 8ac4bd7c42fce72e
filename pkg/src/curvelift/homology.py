"""Abelianization of finite presentations and circle-bundle homology."""

from __future__ import annotations

from .snf import AbelianGroup
from .surfaces import CircleBundle, GroupPresentation, bundle_pi1_presentation


def exponent_vector(word: str, generators: tuple[str, ...]) -> list[int]:
    index = {g: i for i, g in enumerate(generators)}
    vec = [0] * len(generators)
    for ch in word:
        vec[index[ch.lower()]] += -1 if ch.isupper() else 1
    return vec


def abelianization(presentation: GroupPresentation) -> AbelianGroup:
    """Cokernel of the relator exponent-sum matrix."""
    rows = [exponent_vector(rel, presentation.generators) for rel in presentation.relators]
    return AbelianGroup.from_relation_matrix(rows, len(presentation.generators))


def bundle_h1(bundle: CircleBundle) -> AbelianGroup:
    """First homology of a circle bundle, computed by abelianizing its
    fundamental-group presentation (not by pattern-matching the closed form:
    the closed form Z^2g + Z/|e|, resp. Z^{2g+k-1} + Z, is the test oracle)."""
    return abelianization(bundle_pi1_presentation(bundle))
