"""Surfaces, fundamental polygons, and circle bundles over them.

A surface of genus g with k boundary components carries the standard
generating set a1, b1, ..., ag, bg, d1, ..., dk.  Words in the fundamental
group are stored as compact strings with one character per letter:
lowercase = generator, uppercase = its inverse.  The character 't' is
reserved for the fiber generator of a circle bundle, so surface generators
draw from the remaining alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import UnsupportedSurface

# Alphabet for surface generators; 't' is reserved for the bundle fiber.
_LETTER_POOL = "abcdefghijklmnopqrsuvwxyz"
FIBER_CHAR = "t"


@dataclass(frozen=True)
class Surface:
    """Closed or bounded orientable surface with its fundamental polygon data."""

    genus: int
    boundary: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError("genus and boundary count must be non-negative")
        if 2 * self.genus + self.boundary > len(_LETTER_POOL):
            raise ValueError("surface too large for the one-char letter encoding")

    # ------------------------------------------------------------------
    # basic invariants

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def is_closed(self) -> bool:
        return self.boundary == 0

    def require_hyperbolic(self, strict: bool = False) -> None:
        """Enforce chi < 0 (or chi < -1 when ``strict``)."""
        bound = -1 if strict else 0
        if self.euler_char >= bound:
            raise UnsupportedSurface(
                f"operation requires euler characteristic < {bound}, "
                f"got {self.euler_char} for genus {self.genus}, "
                f"boundary {self.boundary}"
            )

    # ------------------------------------------------------------------
    # generators and the one-char word codec

    @property
    def generator_names(self) -> tuple[str, ...]:
        names = []
        for i in range(1, self.genus + 1):
            names.append(f"a{i}")
            names.append(f"b{i}")
        for j in range(1, self.boundary + 1):
            names.append(f"d{j}")
        return tuple(names)

    @property
    def generator_chars(self) -> str:
        return _LETTER_POOL[: 2 * self.genus + self.boundary]

    def char_of(self, name: str) -> str:
        """One-char encoding of a generator token, prime suffix = inverse."""
        inverse = name.endswith("'")
        base = name[:-1] if inverse else name
        try:
            idx = self.generator_names.index(base)
        except ValueError:
            raise KeyError(f"unknown generator {base!r} for {self}") from None
        ch = self.generator_chars[idx]
        return ch.upper() if inverse else ch

    def name_of(self, ch: str) -> str:
        idx = self.generator_chars.index(ch.lower())
        name = self.generator_names[idx]
        return name + "'" if ch.isupper() else name

    def encode(self, tokens) -> str:
        """Token sequence (or space-separated string) -> compact word."""
        if isinstance(tokens, str):
            tokens = tokens.split()
        return "".join(self.char_of(tok) for tok in tokens)

    def decode(self, word: str) -> tuple[str, ...]:
        return tuple(self.name_of(ch) for ch in word)

    # ------------------------------------------------------------------
    # fundamental polygon

    def boundary_word(self) -> str:
        """Polygon boundary word prod [a_i, b_i] prod d_j as a compact word."""
        chars = self.generator_chars
        out = []
        for i in range(self.genus):
            a, b = chars[2 * i], chars[2 * i + 1]
            out += [a, b, a.upper(), b.upper()]
        out += list(chars[2 * self.genus :])
        return "".join(out)

    def relator(self) -> str | None:
        """Surface-group relator (closed case), None for free groups."""
        if not self.is_closed or self.genus == 0:
            return None
        return self.boundary_word()

    def edge_turning_offset(self) -> Fraction:
        """Turning-number contribution of one polygon-side crossing.

        The flat cone metric on the 4g-gon concentrates all curvature at the
        single vertex, with angle defect 2*pi*chi.  The frozen convention here
        apportions that defect equally over the 4g side crossings, so the
        vertex-link curve (one crossing per side, no quarter turns) picks up
        exactly chi.  Bounded surfaces are genuinely flat-trivializable and
        get offset 0.  See docs/turning_model.md.
        """
        if self.is_closed and self.genus >= 1:
            return Fraction(self.euler_char, 4 * self.genus)
        return Fraction(0)

    def __str__(self) -> str:
        if self.is_closed:
            return f"Sigma_{self.genus}"
        return f"Sigma_{{{self.genus},{self.boundary}}}"


def euler_char(surface: Surface) -> int:
    return surface.euler_char


# ----------------------------------------------------------------------
# group presentations


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation; generators are one-char symbols, relators are
    compact words (uppercase = inverse)."""

    generators: tuple[str, ...]
    relators: tuple[str, ...]
    names: tuple[tuple[str, str], ...] = ()  # (char, display name)

    def __post_init__(self):
        gens = set(self.generators)
        for rel in self.relators:
            if any(ch.lower() not in gens for ch in rel):
                raise ValueError(f"relator {rel!r} uses undeclared generators")

    def display_name(self, ch: str) -> str:
        table = dict(self.names)
        base = table.get(ch.lower(), ch.lower())
        return base + "'" if ch.isupper() else base

    def display_word(self, word: str) -> str:
        return " ".join(self.display_name(ch) for ch in word) or "1"


def surface_pi1_presentation(surface: Surface) -> GroupPresentation:
    """Standard presentation of pi_1: one-relator for closed genus >= 1,
    free of rank 2g + k - 1 for bounded (last boundary generator eliminated)."""
    names = tuple(zip(surface.generator_chars, surface.generator_names))
    if surface.is_closed:
        gens = tuple(surface.generator_chars)
        rel = surface.relator()
        relators = (rel,) if rel else ()
        return GroupPresentation(gens, relators, names)
    # bounded: free on a_i, b_i, d_1..d_{k-1}
    chars = surface.generator_chars
    gens = tuple(chars[: 2 * surface.genus + surface.boundary - 1])
    return GroupPresentation(gens, (), names)


# ----------------------------------------------------------------------
# circle bundles


class BundleKind(Enum):
    UNIT_TANGENT = "UT"
    PROJECTIVE_TANGENT = "PT"
    TRIVIAL = "TRIVIAL"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True)
class CircleBundle:
    """Oriented circle bundle over a surface, classified by its Euler number.

    Convention: e(UT(S)) = chi(S), e(PT(S)) = 2 chi(S); bundles over surfaces
    with boundary are trivial (e = 0).
    """

    base: Surface
    kind: BundleKind
    euler_number: int

    def __post_init__(self):
        expected = _expected_euler(self.base, self.kind)
        if expected is not None and self.euler_number != expected:
            raise ValueError(
                f"{self.kind.value} bundle over {self.base} must have "
                f"euler number {expected}, got {self.euler_number}"
            )
        if not self.base.is_closed and self.euler_number != 0:
            raise ValueError("bundles over bounded surfaces are trivial (e = 0)")

    @classmethod
    def unit_tangent(cls, base: Surface) -> "CircleBundle":
        e = 0 if not base.is_closed else base.euler_char
        return cls(base, BundleKind.UNIT_TANGENT, e)

    @classmethod
    def projective_tangent(cls, base: Surface) -> "CircleBundle":
        e = 0 if not base.is_closed else 2 * base.euler_char
        return cls(base, BundleKind.PROJECTIVE_TANGENT, e)

    @classmethod
    def trivial(cls, base: Surface) -> "CircleBundle":
        return cls(base, BundleKind.TRIVIAL, 0)

    @classmethod
    def custom(cls, base: Surface, euler_number: int) -> "CircleBundle":
        return cls(base, BundleKind.CUSTOM, euler_number)

    def __str__(self) -> str:
        return f"{self.kind.value}({self.base})"


def _expected_euler(base: Surface, kind: BundleKind) -> int | None:
    if not base.is_closed:
        return 0
    if kind is BundleKind.UNIT_TANGENT:
        return base.euler_char
    if kind is BundleKind.PROJECTIVE_TANGENT:
        return 2 * base.euler_char
    if kind is BundleKind.TRIVIAL:
        return 0
    return None


def bundle_pi1_presentation(bundle: CircleBundle) -> GroupPresentation:
    """Presentation with central fiber generator t.

    Closed base: surface generators + t, commuting relators [x, t] for every
    surface generator, and the Euler relator (boundary word) * t^{-e}.
    Bounded base: free surface presentation + t with commuting relators only.
    """
    surf_pres = surface_pi1_presentation(bundle.base)
    gens = surf_pres.generators + (FIBER_CHAR,)
    names = surf_pres.names + ((FIBER_CHAR, "t"),)
    relators = [x + FIBER_CHAR + x.upper() + FIBER_CHAR.upper() for x in surf_pres.generators]
    if bundle.base.is_closed:
        e = bundle.euler_number
        tail = FIBER_CHAR.upper() * e if e >= 0 else FIBER_CHAR * (-e)
        relators.append(bundle.base.boundary_word() + tail)
    return GroupPresentation(gens, tuple(relators), names)
