"""Combinatorial multicurve diagrams on a surface, in rectilinear normal form.

A component is a cyclic sequence of events.  Tangent-direction data is
carried exclusively by quarter turns, kinks, and cusps; polygon-side
crossings are recorded as edge letters and double points as paired crossing
events.  Geometric realizability of the resulting Gauss data is not checked,
only local/combinatorial validity.

Event encoding (tuples, first entry = tag):
  ("edge", letter)    polygon-side crossing; letter like "a1" or "a1'"
  ("cross", id, slot) one visit to a double point; slot in {1, 2}
  ("kink", s)         atomic small loop, s = +1 left, -1 right
  ("cusp", s)         cusp, s = +1 up, -1 down (cusp-smooth mode only)
  ("qturn", s)        quarter turn, s = +-1

Text format (one file per diagram):
  surface genus=<g> boundary=<k>
  bundle <UT|PT|TRIVIAL>
  comp: <events space-separated>
with tokens a1 / a1' / X<id>.<slot> / L+ / L- / C^ / Cv / Q+ / Q-.
Comments start with '#'.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .errors import DiagramSyntaxError
from .surfaces import BundleKind, CircleBundle, Surface
from .words import cyclic_reduce

Event = tuple

SMOOTH = "smooth"
CUSP_SMOOTH = "cusp"

MODE_FOR_KIND = {
    BundleKind.UNIT_TANGENT: SMOOTH,
    BundleKind.TRIVIAL: SMOOTH,
    BundleKind.CUSTOM: SMOOTH,
    BundleKind.PROJECTIVE_TANGENT: CUSP_SMOOTH,
}


def edge(letter: str) -> Event:
    return ("edge", letter)


def cross(cid: str, slot: int) -> Event:
    return ("cross", str(cid), int(slot))


def kink(sign: int) -> Event:
    return ("kink", sign)


def cusp(sign: int) -> Event:
    return ("cusp", sign)


def qturn(sign: int) -> Event:
    return ("qturn", sign)


KINK_L = kink(1)
KINK_R = kink(-1)
CUSP_U = cusp(1)
CUSP_D = cusp(-1)


@dataclass(frozen=True)
class Diagram:
    surface: Surface
    mode: str  # SMOOTH or CUSP_SMOOTH
    components: tuple[tuple[Event, ...], ...]

    def __post_init__(self):
        if self.mode not in (SMOOTH, CUSP_SMOOTH):
            raise ValueError(f"unknown mode {self.mode!r}")

    def with_components(self, components) -> "Diagram":
        return Diagram(self.surface, self.mode, tuple(tuple(c) for c in components))

    def crossing_ids(self) -> set[str]:
        return {ev[1] for comp in self.components for ev in comp if ev[0] == "cross"}

    def fresh_crossing_id(self) -> str:
        used = self.crossing_ids()
        n = 1
        while str(n) in used:
            n += 1
        return str(n)


# ----------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    rule: str
    component: int | None
    detail: str

    def __str__(self) -> str:
        where = f" (component {self.component})" if self.component is not None else ""
        return f"{self.rule}{where}: {self.detail}"


def validate(diagram: Diagram) -> list[Violation]:
    """Empty list iff all diagram invariants hold; violations are data."""
    out: list[Violation] = []
    surface = diagram.surface
    letters = set(surface.generator_names)
    slots: dict[str, Counter] = {}
    for ci, comp in enumerate(diagram.components):
        cusps = 0
        for ev in comp:
            tag = ev[0]
            if tag == "edge":
                base = ev[1][:-1] if ev[1].endswith("'") else ev[1]
                if base not in letters:
                    out.append(Violation("UnknownGenerator", ci, f"letter {ev[1]!r}"))
            elif tag == "cross":
                slots.setdefault(ev[1], Counter())[ev[2]] += 1
            elif tag == "cusp":
                cusps += 1
                if diagram.mode == SMOOTH:
                    out.append(Violation("CuspInSmoothMode", ci, "cusp event present"))
        if diagram.mode == CUSP_SMOOTH and cusps % 2 != 0:
            out.append(Violation("OddCuspCount", ci, f"{cusps} cusps"))
    for cid, counter in sorted(slots.items()):
        if counter[1] != 1 or counter[2] != 1 or set(counter) - {1, 2}:
            out.append(
                Violation("UnpairedCrossing", None, f"crossing {cid}: slots {dict(counter)}")
            )
    if diagram.mode == SMOOTH:
        from .lifting import raw_turning  # local import to avoid a cycle

        for ci in range(len(diagram.components)):
            if raw_turning(diagram, ci).denominator != 1:
                out.append(
                    Violation("NonIntegralTurning", ci, f"turning {raw_turning(diagram, ci)}")
                )
    return out


# ----------------------------------------------------------------------
# shadow words and crude complexity


def shadow_word(diagram: Diagram, component: int) -> str:
    """Free homotopy class of the component's shadow: the edge letters in
    cyclic order, freely and cyclically reduced (compact word encoding)."""
    tokens = [ev[1] for ev in diagram.components[component] if ev[0] == "edge"]
    return cyclic_reduce(diagram.surface.encode(tokens))


def self_intersection_count(diagram: Diagram) -> int:
    """Crossing ids plus kinks; a search-pruning heuristic, not the minimal
    self-intersection number."""
    kinks = sum(1 for comp in diagram.components for ev in comp if ev[0] == "kink")
    return len(diagram.crossing_ids()) + kinks


# ----------------------------------------------------------------------
# text format

_TOKEN_RES = {
    "cross": re.compile(r"^X([A-Za-z0-9]+)\.([12])$"),
    "edge": re.compile(r"^([abd][0-9]+)('?)$"),
}

_FIXED_TOKENS = {
    "L+": KINK_L,
    "L-": KINK_R,
    "C^": CUSP_U,
    "Cv": CUSP_D,
    "Q+": qturn(1),
    "Q-": qturn(-1),
}
_TOKEN_OF_FIXED = {ev: tok for tok, ev in _FIXED_TOKENS.items()}


def event_token(ev: Event) -> str:
    if ev[0] == "edge":
        return ev[1]
    if ev[0] == "cross":
        return f"X{ev[1]}.{ev[2]}"
    return _TOKEN_OF_FIXED[ev]


def parse_event(tok: str, surface: Surface, line: int) -> Event:
    if tok in _FIXED_TOKENS:
        return _FIXED_TOKENS[tok]
    m = _TOKEN_RES["cross"].match(tok)
    if m:
        return cross(m.group(1), int(m.group(2)))
    m = _TOKEN_RES["edge"].match(tok)
    if m:
        base = m.group(1)
        if base not in surface.generator_names:
            raise DiagramSyntaxError(f"unknown generator {tok!r}", line)
        return edge(base + m.group(2))
    raise DiagramSyntaxError(f"bad event token {tok!r}", line)


_SURFACE_RE = re.compile(r"^surface\s+genus=(\d+)\s+boundary=(\d+)$")
_BUNDLE_RE = re.compile(r"^bundle\s+(UT|PT|TRIVIAL)$")


def _bundle_for(surface: Surface, token: str) -> CircleBundle:
    if token == "UT":
        return CircleBundle.unit_tangent(surface)
    if token == "PT":
        return CircleBundle.projective_tangent(surface)
    return CircleBundle.trivial(surface)


def bundle_token(bundle: CircleBundle) -> str:
    if bundle.kind is BundleKind.UNIT_TANGENT:
        return "UT"
    if bundle.kind is BundleKind.PROJECTIVE_TANGENT:
        return "PT"
    return "TRIVIAL"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse(text: str) -> tuple[Diagram, CircleBundle]:
    """Parse the diagram file format; returns the diagram and its bundle.
    Extra annotation lines (twist:/fix:/corner:) are rejected here; use
    lifting.parse_twisted_shadow for twisted-shadow files."""
    diagram, bundle, extras = _parse_with_annotations(text)
    if extras:
        lineno, line = extras[0]
        raise DiagramSyntaxError(f"unexpected annotation {line.split(':')[0]!r}", lineno)
    return diagram, bundle


def _parse_with_annotations(text: str):
    lines = list(_content_lines(text))
    if not lines:
        raise DiagramSyntaxError("empty input")
    lineno, line = lines[0]
    m = _SURFACE_RE.match(line)
    if not m:
        raise DiagramSyntaxError("expected 'surface genus=<g> boundary=<k>'", lineno)
    surface = Surface(int(m.group(1)), int(m.group(2)))
    if len(lines) < 2:
        raise DiagramSyntaxError("missing bundle line", lineno)
    lineno, line = lines[1]
    m = _BUNDLE_RE.match(line)
    if not m:
        raise DiagramSyntaxError("expected 'bundle <UT|PT|TRIVIAL>'", lineno)
    bundle = _bundle_for(surface, m.group(1))
    mode = MODE_FOR_KIND[bundle.kind]

    components: list[tuple[Event, ...]] = []
    extras: list[tuple[int, str]] = []
    seen_slots: set[tuple[str, int]] = set()
    for lineno, line in lines[2:]:
        if line.startswith("comp:"):
            events = []
            for tok in line[len("comp:") :].split():
                ev = parse_event(tok, surface, lineno)
                if ev[0] == "cross":
                    key = (ev[1], ev[2])
                    if key in seen_slots:
                        raise DiagramSyntaxError(
                            f"duplicate crossing slot X{ev[1]}.{ev[2]}", lineno
                        )
                    seen_slots.add(key)
                events.append(ev)
            components.append(tuple(events))
        elif any(line.startswith(p) for p in ("twist:", "fix:", "corner:")):
            extras.append((lineno, line))
        else:
            raise DiagramSyntaxError(f"unrecognized line {line!r}", lineno)
    diagram = Diagram(surface, mode, tuple(components))
    return diagram, bundle, extras


def serialize(diagram: Diagram, bundle: CircleBundle) -> str:
    lines = [
        f"surface genus={diagram.surface.genus} boundary={diagram.surface.boundary}",
        f"bundle {bundle_token(bundle)}",
    ]
    for comp in diagram.components:
        lines.append(("comp: " + " ".join(event_token(ev) for ev in comp)).rstrip())
    return "\n".join(lines) + "\n"
