"""Move calculus on diagrams: Reidemeister moves, (de)stabilizations,
transvections, and bounded equivalence search with replayable certificates.

Conventions.  Stabilization inserts an adjacent opposite pair (left+right
kink in smooth mode, up+down cusp pair in cusp-smooth mode); single
kinks/cusps are reachable only through transvections.  Every non-transvection
move preserves the lift class; a transvection by sum a_i * gamma_i shifts the
fiber class of each component by the signed count of its declared
intersection sites and leaves the base class alone.

Sites use (component, position) coordinates; adjacency is cyclic.  A "gap"
index p in [0, n) names the insertion point before event p (gap 0 doubles as
the wrap-around gap).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagrams import SMOOTH, Diagram, cross, cusp, kink, qturn
from .errors import InapplicableMove, ModeMismatch, UnsupportedSurface
from .lifting import lift_class
from .surfaces import CircleBundle
from .words import conjugacy_class_key

import math


# ----------------------------------------------------------------------
# move instances


@dataclass(frozen=True, order=True)
class MoveInstance:
    """A catalogued rewrite: kind, site coordinates, optional payload
    (transvection data)."""

    kind: str
    site: tuple = ()
    data: tuple = ()


STAB_VARIANTS = {
    "lr": (kink(1), kink(-1)),
    "rl": (kink(-1), kink(1)),
    "ud": (cusp(1), cusp(-1)),
    "du": (cusp(-1), cusp(1)),
}


def transvection(curves) -> MoveInstance:
    """Transvection datum: curves is a list of (word, weight, sites) with
    sites a list of (component, gap, sign) intersection records."""
    data = tuple(
        (str(word), int(weight), tuple((int(c), int(p), int(s)) for c, p, s in sites))
        for word, weight, sites in curves
    )
    for _, weight, sites in data:
        if weight == 0:
            raise ValueError("transvection weights must be nonzero")
        if any(s not in (1, -1) for _, _, s in sites):
            raise ValueError("intersection signs must be +-1")
    return MoveInstance("transvection", (), data)


def transvection_fiber_shift(move: MoveInstance, component: int) -> int:
    """Signed fiber-degree change of one component under a transvection."""
    return sum(
        weight * sign
        for _, weight, sites in move.data
        for ci, _, sign in sites
        if ci == component
    )


# ----------------------------------------------------------------------
# catalogue enumeration


def _adjacent(comp, p):
    return comp[p], comp[(p + 1) % len(comp)]


def applicable_moves(diagram: Diagram) -> list[MoveInstance]:
    """Complete enumeration of catalogue sites (transvections excluded: they
    are parameterized by external curve data)."""
    out: list[MoveInstance] = []
    stab_variant = "lr" if diagram.mode == SMOOTH else "ud"
    loop_tags = ("kink",) if diagram.mode == SMOOTH else ("kink", "cusp")
    gaps = [
        (ci, p)
        for ci, comp in enumerate(diagram.components)
        for p in range(max(len(comp), 1))
    ]
    for ci, p in gaps:
        out.append(MoveInstance("stab", (ci, p, stab_variant)))
    for site1, site2 in itertools.product(gaps, repeat=2):
        out.append(MoveInstance("r2_insert", (*site1, *site2)))

    pair_sites = []  # adjacent crossing pairs, reused for R2/R3 detection
    for ci, comp in enumerate(diagram.components):
        n = len(comp)
        if n < 2:
            continue
        for p in range(n):
            a, b = _adjacent(comp, p)
            if a[0] in loop_tags and a[0] == b[0] and a[1] == -b[1]:
                out.append(MoveInstance("destab", (ci, p)))
            if (a[0] in loop_tags) != (b[0] in loop_tags) and {a[0], b[0]} <= {
                "kink",
                "cusp",
                "cross",
                "edge",
            }:
                out.append(MoveInstance("kink_slide", (ci, p)))
            if a[0] == "cross" and b[0] == "cross" and a[1] != b[1]:
                pair_sites.append((ci, p, a, b))

    for (c1, p1, a1, b1), (c2, p2, a2, b2) in itertools.combinations(pair_sites, 2):
        if {a1[1], b1[1]} != {a2[1], b2[1]}:
            continue
        spots = {(c1, p1), (c1, (p1 + 1) % len(diagram.components[c1]))}
        spots |= {(c2, p2), (c2, (p2 + 1) % len(diagram.components[c2]))}
        if len(spots) != 4:
            continue
        # bigon: [x, y] against [y, x] with complementary slots
        if a1[1] == b2[1] and b1[1] == a2[1] and a1[2] != b2[2] and b1[2] != a2[2]:
            out.append(MoveInstance("r2_remove", ((c1, p1), (c2, p2))))

    for triple in itertools.combinations(pair_sites, 3):
        ids: dict[str, int] = {}
        spots = set()
        for ci, p, a, b in triple:
            ids[a[1]] = ids.get(a[1], 0) + 1
            ids[b[1]] = ids.get(b[1], 0) + 1
            spots.add((ci, p))
            spots.add((ci, (p + 1) % len(diagram.components[ci])))
        if len(ids) == 3 and all(v == 2 for v in ids.values()) and len(spots) == 6:
            out.append(
                MoveInstance("r3", tuple(sorted((ci, p) for ci, p, _, _ in triple)))
            )
    return sorted(set(out))


# ----------------------------------------------------------------------
# application


def _insert(comp: tuple, gap: int, events) -> tuple:
    return comp[:gap] + tuple(events) + comp[gap:]


def _loop_events(mode: str, n: int) -> list:
    """n fiber-twist loops for a transvection: kinks in smooth mode, single
    cusps in cusp-smooth mode (one cusp per fiber unit of PT)."""
    maker = kink if mode == SMOOTH else cusp
    return [maker(1 if n > 0 else -1)] * abs(n)


def _apply(diagram: Diagram, move: MoveInstance) -> tuple[Diagram, MoveInstance | None]:
    """Apply and return (new diagram, inverse move or None for transvections)."""
    comps = [list(c) for c in diagram.components]
    kind = move.kind

    def check(cond, msg):
        if not cond:
            raise InapplicableMove(f"{kind} at {move.site}: {msg}")

    if kind == "stab":
        ci, p, variant = move.site
        check(0 <= ci < len(comps), "no such component")
        check(variant in STAB_VARIANTS, f"unknown variant {variant!r}")
        pair = STAB_VARIANTS[variant]
        check(
            (diagram.mode == SMOOTH) == (variant in ("lr", "rl")),
            "variant does not match diagram mode",
        )
        check(0 <= p <= len(comps[ci]), "gap out of range")
        comps[ci][p:p] = pair
        return diagram.with_components(comps), MoveInstance("destab", (ci, p))

    if kind == "destab":
        ci, p = move.site
        check(0 <= ci < len(comps), "no such component")
        comp = comps[ci]
        n = len(comp)
        check(n >= 2, "component too short")
        a, b = comp[p], comp[(p + 1) % n]
        tags = ("kink",) if diagram.mode == SMOOTH else ("cusp", "kink")
        check(a[0] in tags and a[0] == b[0] and a[1] == -b[1], "not an opposite pair")
        variant = {("kink", 1): "lr", ("kink", -1): "rl", ("cusp", 1): "ud", ("cusp", -1): "du"}[
            (a[0], a[1])
        ]
        if p + 1 < n:
            del comp[p : p + 2]
            inv_site = (ci, p, variant)
        else:  # wrap: result is a rotation; reinsert at the end
            del comp[n - 1]
            del comp[0]
            inv_site = (ci, len(comp), variant)
        return diagram.with_components(comps), MoveInstance("stab", inv_site)

    if kind == "kink_slide":
        ci, p = move.site
        check(0 <= ci < len(comps), "no such component")
        comp = comps[ci]
        n = len(comp)
        check(n >= 2, "component too short")
        q = (p + 1) % n
        a, b = comp[p], comp[q]
        loops = {"kink", "cusp"}
        check(
            (a[0] in loops) != (b[0] in loops) and {a[0], b[0]} <= loops | {"cross", "edge"},
            "needs a kink/cusp adjacent to a crossing or edge event",
        )
        comp[p], comp[q] = comp[q], comp[p]
        return diagram.with_components(comps), MoveInstance("kink_slide", (ci, p))

    if kind == "r2_insert":
        c1, p1, c2, p2 = move.site
        check(0 <= c1 < len(comps) and 0 <= c2 < len(comps), "no such component")
        check(0 <= p1 <= len(comps[c1]) and 0 <= p2 <= len(comps[c2]), "gap out of range")
        x = diagram.fresh_crossing_id()
        y = str(int(x) + 1) if x.isdigit() else x + "b"
        first = [cross(x, 1), cross(y, 1)]
        second = [cross(y, 2), cross(x, 2)]
        if c1 != c2:
            comps[c1][p1:p1] = first
            comps[c2][p2:p2] = second
            inv = MoveInstance("r2_remove", ((c1, p1), (c2, p2)))
        elif p1 <= p2:
            comps[c1][p2:p2] = second
            comps[c1][p1:p1] = first
            inv = MoveInstance("r2_remove", ((c1, p1), (c1, p2 + 2)))
        else:
            comps[c1][p1:p1] = first
            comps[c1][p2:p2] = second
            inv = MoveInstance("r2_remove", ((c1, p1 + 2), (c1, p2)))
        return diagram.with_components(comps), inv

    if kind == "r2_remove":
        (c1, p1), (c2, p2) = move.site
        check(0 <= c1 < len(comps) and 0 <= c2 < len(comps), "no such component")
        n1, n2 = len(comps[c1]), len(comps[c2])
        check(n1 >= 2 and n2 >= 2, "component too short")
        a, b = _adjacent(tuple(comps[c1]), p1)
        cc, d = _adjacent(tuple(comps[c2]), p2)
        spots = {(c1, p1), (c1, (p1 + 1) % n1), (c2, p2), (c2, (p2 + 1) % n2)}
        check(len(spots) == 4, "overlapping sites")
        check(all(ev[0] == "cross" for ev in (a, b, cc, d)), "not a crossing bigon")
        check(
            a[1] == d[1] and b[1] == cc[1] and a[1] != b[1] and a[2] != d[2] and b[2] != cc[2],
            "not a bigon pattern",
        )
        # inverse gap: slot-1 pair becomes the first insertion site
        removed = spots
        new_comps = []
        for ci, comp in enumerate(comps):
            new_comps.append(
                [ev for pos, ev in enumerate(comp) if (ci, pos) not in removed]
            )
        gap_a = _gap_after_removal(comps[c1], c1, p1, removed)
        gap_b = _gap_after_removal(comps[c2], c2, p2, removed)
        if a[2] == 1:
            inv = MoveInstance("r2_insert", (c1, gap_a, c2, gap_b))
        else:
            inv = MoveInstance("r2_insert", (c2, gap_b, c1, gap_a))
        return diagram.with_components(new_comps), inv

    if kind == "r3":
        sites = move.site
        check(len(sites) == 3, "r3 needs three pair sites")
        events = []
        spots = set()
        for ci, p in sites:
            check(0 <= ci < len(comps), "no such component")
            n = len(comps[ci])
            check(n >= 2, "component too short")
            a, b = _adjacent(tuple(comps[ci]), p)
            check(a[0] == "cross" and b[0] == "cross" and a[1] != b[1], "not a crossing pair")
            events.append((a, b))
            spots |= {(ci, p), (ci, (p + 1) % n)}
        check(len(spots) == 6, "overlapping sites")
        ids: dict[str, int] = {}
        for a, b in events:
            ids[a[1]] = ids.get(a[1], 0) + 1
            ids[b[1]] = ids.get(b[1], 0) + 1
        check(len(ids) == 3 and all(v == 2 for v in ids.values()), "not a triangle")
        for ci, p in sites:
            n = len(comps[ci])
            q = (p + 1) % n
            comps[ci][p], comps[ci][q] = comps[ci][q], comps[ci][p]
        return diagram.with_components(comps), MoveInstance("r3", move.site)

    if kind == "transvection":
        check(move.data, "empty transvection")
        inserts: dict[int, list[tuple[int, list]]] = {}
        for _, weight, sites in move.data:
            for ci, p, sign in sites:
                check(0 <= ci < len(comps), "no such component")
                check(0 <= p <= len(comps[ci]), "gap out of range")
                inserts.setdefault(ci, []).append((p, _loop_events(diagram.mode, weight * sign)))
        for ci, items in inserts.items():
            for p, events in sorted(items, reverse=True):
                comps[ci][p:p] = events
        return diagram.with_components(comps), None

    raise InapplicableMove(f"unknown move kind {kind!r}")


def _gap_after_removal(comp, ci, p, removed) -> int:
    """Gap index in the post-removal component where the adjacent pair that
    started at event p used to sit."""
    n = len(comp)
    if p + 1 < n or n == 2:
        return sum(1 for pos in range(p) if (ci, pos) not in removed)
    # wrap pair (n-1, 0): the block sits at the end of the rotated word
    return sum(1 for pos in range(n) if (ci, pos) not in removed)


def apply_move(diagram: Diagram, move: MoveInstance) -> Diagram:
    """Apply a catalogue move or transvection; raises InapplicableMove when
    the site does not match the move's local pattern."""
    return _apply(diagram, move)[0]


def invert_move(diagram: Diagram, move: MoveInstance) -> MoveInstance:
    """Inverse move in the context of the diagram the move applies to.
    Transvections only add loops and have no catalogue inverse."""
    inv = _apply(diagram, move)[1]
    if inv is None:
        raise InapplicableMove("transvections are not invertible as moves")
    return inv


# ----------------------------------------------------------------------
# kink expansion (macro, outside the move catalogue)


def expand_kink(diagram: Diagram, site: tuple[int, int]) -> Diagram:
    """Expand an atomic kink into an explicit crossing with four quarter
    turns; turning number and lift class are unchanged."""
    ci, p = site
    comps = [list(c) for c in diagram.components]
    if not (0 <= ci < len(comps) and 0 <= p < len(comps[ci])):
        raise InapplicableMove(f"no event at {site}")
    ev = comps[ci][p]
    if ev[0] != "kink":
        raise InapplicableMove(f"event at {site} is not a kink")
    cid = diagram.fresh_crossing_id()
    comps[ci][p : p + 1] = [cross(cid, 1)] + [qturn(ev[1])] * 4 + [cross(cid, 2)]
    return diagram.with_components(comps)


def contract_kink(diagram: Diagram, site: tuple[int, int]) -> Diagram:
    """Inverse of expand_kink: collapse X.1 Q^4 X.2 back to an atomic kink."""
    ci, p = site
    comps = [list(c) for c in diagram.components]
    if not (0 <= ci < len(comps)):
        raise InapplicableMove(f"no component {ci}")
    comp = comps[ci]
    n = len(comp)
    if n < 6:
        raise InapplicableMove("component too short for a kink macro")
    window = [comp[(p + i) % n] for i in range(6)]
    head, tail = window[0], window[5]
    turns = window[1:5]
    ok = (
        head[0] == "cross"
        and tail[0] == "cross"
        and head[1] == tail[1]
        and {head[2], tail[2]} == {1, 2}
        and all(ev[0] == "qturn" for ev in turns)
        and len({ev[1] for ev in turns}) == 1
    )
    if not ok:
        raise InapplicableMove(f"no kink macro at {site}")
    sign = turns[0][1]
    if p + 6 <= n:
        comp[p : p + 6] = [kink(sign)]
    else:
        rotated = comp[p:] + comp[:p]
        comps[ci] = [kink(sign)] + rotated[6:]
    return diagram.with_components(comps)


# ----------------------------------------------------------------------
# canonical forms (equality up to rotation, component order, id names)


_CANON_CAP = 200000


def _relabel_stream(streams):
    """Replace crossing ids by first-occurrence indices in a token stream."""
    table: dict[str, int] = {}
    out = []
    for stream in streams:
        toks = []
        for ev in stream:
            if ev[0] == "cross":
                cid = table.setdefault(ev[1], len(table))
                toks.append(("cross", cid, ev[2]))
            else:
                toks.append(ev)
        out.append(tuple(toks))
    return tuple(out)


def _blind(comp):
    """Token stream with crossing ids hidden; lexicographic order on this is
    refined (never contradicted) by the relabeled order, so only rotations
    minimizing the blind stream can minimize the relabeled one."""
    return tuple(("cross", None, ev[2]) if ev[0] == "cross" else ev for ev in comp)


def canonical_transform(diagram: Diagram):
    """(key, perm, rots): key is the minimal id-relabeled token stream over
    component permutations and rotations; canonical component i is the
    original component perm[i] rotated left by rots[i]."""
    comps = diagram.components
    k = len(comps)
    if k == 0:
        return (), (), ()

    # per-component candidate rotations: argmins of the id-blind stream
    cand_rots: list[list[int]] = []
    min_blind: list[tuple] = []
    for comp in comps:
        n = max(len(comp), 1)
        blind = _blind(comp)
        rotated = [blind[r:] + blind[:r] for r in range(n)]
        best = min(rotated)
        cand_rots.append([r for r in range(n) if rotated[r] == best])
        min_blind.append(best)

    # component order: sort by minimal blind stream; only ties permute
    order = sorted(range(k), key=lambda ci: min_blind[ci])
    groups: list[list[int]] = []
    for ci in order:
        if groups and min_blind[groups[-1][0]] == min_blind[ci]:
            groups[-1].append(ci)
        else:
            groups.append([ci])

    total = 1
    for group in groups:
        total *= math.factorial(min(len(group), 10))
    for cands in cand_rots:
        total *= len(cands)
    if total > _CANON_CAP:
        # deterministic sound fallback: first candidate everywhere, stable order
        perm = tuple(order)
        rots = tuple(cand_rots[ci][0] for ci in perm)
        key = _relabel_stream(
            [comps[ci][r:] + comps[ci][:r] for ci, r in zip(perm, rots)]
        )
        return key, perm, rots

    best = None
    for perm_groups in itertools.product(
        *(itertools.permutations(group) for group in groups)
    ):
        perm = tuple(ci for group in perm_groups for ci in group)
        for rots in itertools.product(*(cand_rots[ci] for ci in perm)):
            streams = [comps[ci][r:] + comps[ci][:r] for ci, r in zip(perm, rots)]
            key = _relabel_stream(streams)
            if best is None or key < best[0]:
                best = (key, perm, rots)
    return best


def canonical_key(diagram: Diagram):
    return canonical_transform(diagram)[0]


def diagrams_equal(d1: Diagram, d2: Diagram) -> bool:
    """Structural equality up to cyclic rotation, component permutation, and
    crossing-id renaming."""
    return (
        d1.surface == d2.surface
        and d1.mode == d2.mode
        and canonical_key(d1) == canonical_key(d2)
    )


def _site_map(src: Diagram, dst: Diagram):
    """Position transport src -> dst for canonically equal diagrams; returns
    a function (ci, pos) -> (ci', pos') acting on cyclic positions/gaps."""
    key_s, perm_s, rots_s = canonical_transform(src)
    key_d, perm_d, rots_d = canonical_transform(dst)
    if key_s != key_d:
        raise ValueError("site transport requires canonically equal diagrams")
    to_canon = {ci: (i, rots_s[i]) for i, ci in enumerate(perm_s)}

    def f(site):
        ci, pos = site
        i, r = to_canon[ci]
        n = max(len(src.components[ci]), 1)
        canon_pos = (pos - r) % n
        ci2 = perm_d[i]
        n2 = max(len(dst.components[ci2]), 1)
        return ci2, (canon_pos + rots_d[i]) % n2

    return f


def _transport_move(move: MoveInstance, site_map) -> MoveInstance:
    kind = move.kind
    if kind == "stab":
        ci, p, variant = move.site
        ci2, p2 = site_map((ci, p))
        return MoveInstance(kind, (ci2, p2, variant))
    if kind in ("destab", "kink_slide"):
        return MoveInstance(kind, site_map(move.site))
    if kind == "r2_insert":
        c1, p1, c2, p2 = move.site
        return MoveInstance(kind, (*site_map((c1, p1)), *site_map((c2, p2))))
    if kind == "r2_remove":
        s1, s2 = move.site
        return MoveInstance(kind, (site_map(s1), site_map(s2)))
    if kind == "r3":
        return MoveInstance(kind, tuple(sorted(site_map(s) for s in move.site)))
    raise InapplicableMove(f"cannot transport move kind {kind!r}")


# ----------------------------------------------------------------------
# bounded equivalence search


@dataclass(frozen=True)
class SearchBudget:
    max_moves: int = 6
    max_states: int = 100000
    transvection_generators: tuple[MoveInstance, ...] = ()

    def __post_init__(self):
        if self.max_moves < 0 or self.max_states < 1:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str  # "equivalent" | "distinguished" | "unknown"
    certificate: tuple[MoveInstance, ...] | None = None
    invariant: tuple | None = None  # (name, value_for_d1, value_for_d2)

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"


def _shadow_class_multiset(diagram: Diagram, bundle: CircleBundle):
    from .diagrams import shadow_word

    try:
        return sorted(
            conjugacy_class_key(shadow_word(diagram, ci), diagram.surface)
            for ci in range(len(diagram.components))
        )
    except UnsupportedSurface:
        return None


def _distinguish(d1, d2, bundle, generators):
    if len(d1.components) != len(d2.components):
        return ("component_count", len(d1.components), len(d2.components))
    s1 = _shadow_class_multiset(d1, bundle)
    s2 = _shadow_class_multiset(d2, bundle)
    if s1 is not None and s1 != s2:
        return ("shadow_classes", s1, s2)
    l1 = [lift_class(d1, bundle, ci) for ci in range(len(d1.components))]
    l2 = [lift_class(d2, bundle, ci) for ci in range(len(d2.components))]
    b1 = sorted(lc.base_part for lc in l1)
    b2 = sorted(lc.base_part for lc in l2)
    if b1 != b2:
        return ("lift_class_base", b1, b2)
    # total fiber degree mod the attainable transvection shifts
    shifts = [abs(bundle.euler_number)]
    for gen in generators:
        shifts.append(
            sum(transvection_fiber_shift(gen, ci) for ci in range(len(d1.components)))
        )
    modulus = math.gcd(*shifts) if shifts else 0
    f1 = sum(lc.fiber_part for lc in l1)
    f2 = sum(lc.fiber_part for lc in l2)
    if (f1 - f2) % modulus if modulus else (f1 != f2):
        return ("lift_class_fiber", f1, f2)
    return None


_MOVE_GROWTH = {
    "destab": -2,
    "r2_remove": -4,
    "kink_slide": 0,
    "r3": 0,
    "stab": 2,
    "r2_insert": 4,
    "transvection": 1,
}


def _search_moves(diagram: Diagram, generators, forward: bool):
    moves = applicable_moves(diagram)
    if forward:
        for gen in generators:
            for flip in (1, -1):
                data = tuple(
                    (word, weight * flip, sites) for word, weight, sites in gen.data
                )
                moves.append(MoveInstance("transvection", (), data))
    # shrinking moves first: meets between the frontiers are found before the
    # state budget is spent on the much wider growing branches
    moves.sort(key=lambda m: (_MOVE_GROWTH[m.kind], m))
    return moves


def equivalent_bounded(
    d1: Diagram, d2: Diagram, bundle: CircleBundle, budget: SearchBudget = SearchBudget()
) -> EquivalenceVerdict:
    """Semi-decision procedure: bidirectional breadth-first search over the
    move closure, hashing diagrams up to rotation / component permutation /
    crossing-id names.  Returns a replayable certificate, a distinguishing
    invariant, or Unknown on budget exhaustion."""
    if d1.surface != d2.surface or d1.mode != d2.mode:
        raise ModeMismatch("equivalence search needs matching surface and mode")
    found = _distinguish(d1, d2, bundle, budget.transvection_generators)
    if found is not None:
        return EquivalenceVerdict("distinguished", invariant=found)

    k1, k2 = canonical_key(d1), canonical_key(d2)
    if k1 == k2:
        return EquivalenceVerdict("equivalent", certificate=())

    # visited: key -> (exact diagram, path).  Forward paths are moves from d1;
    # backward paths are moves applied from d2 (to be inverted on meet).
    fwd = {k1: (d1, ())}
    bwd = {k2: (d2, ())}
    frontier_f = [(d1, ())]
    frontier_b = [(d2, ())]
    depth_f = depth_b = 0
    states = 2
    size1 = sum(len(c) for c in d1.components)
    size2 = sum(len(c) for c in d2.components)
    # any path of <= max_moves moves can overshoot the endpoint sizes by at
    # most 4 events per move round-trip; larger states cannot help
    size_cap = max(size1, size2) + 2 * budget.max_moves

    def finish(f_diag, f_path, b_diag, b_path):
        cert = list(f_path)
        current = f_diag
        # b_path: moves m_1..m_j with b_0 = d2, b_i = apply(b_{i-1}, m_i)
        chain = [d2]
        for mv in b_path:
            chain.append(apply_move(chain[-1], mv))
        for i in range(len(b_path), 0, -1):
            inv = invert_move(chain[i - 1], b_path[i - 1])  # applies to chain[i]
            moved = _transport_move(inv, _site_map(chain[i], current))
            current = apply_move(current, moved)
            cert.append(moved)
        if canonical_key(current) != k2:
            raise InapplicableMove("certificate assembly failed")
        return EquivalenceVerdict("equivalent", certificate=tuple(cert))

    while frontier_f or frontier_b:
        if depth_f + depth_b >= budget.max_moves:
            break
        expand_forward = bool(frontier_f) and (
            not frontier_b or len(frontier_f) <= len(frontier_b)
        )
        frontier = frontier_f if expand_forward else frontier_b
        here, there = (fwd, bwd) if expand_forward else (bwd, fwd)
        next_frontier = []
        for diag, path in frontier:
            for move in _search_moves(
                diag, budget.transvection_generators, forward=expand_forward
            ):
                try:
                    new = apply_move(diag, move)
                except InapplicableMove:
                    continue
                if sum(len(c) for c in new.components) > size_cap:
                    continue
                key = canonical_key(new)
                if key in here:
                    continue
                new_path = path + (move,)
                if key in there:
                    other_diag, other_path = there[key]
                    try:
                        if expand_forward:
                            return finish(new, new_path, other_diag, other_path)
                        return finish(other_diag, other_path, new, new_path)
                    except InapplicableMove:
                        pass
                here[key] = (new, new_path)
                next_frontier.append((new, new_path))
                states += 1
                if states > budget.max_states:
                    return EquivalenceVerdict("unknown")
        if expand_forward:
            frontier_f = next_frontier
            depth_f += 1
        else:
            frontier_b = next_frontier
            depth_b += 1
    return EquivalenceVerdict("unknown")


# ----------------------------------------------------------------------
# certificate (de)serialization


def move_to_json(move: MoveInstance) -> dict:
    out = {"kind": move.kind, "site": _site_json(move.site)}
    if move.kind == "transvection":
        out["curves"] = [
            {"word": word, "weight": weight, "sites": [list(s) for s in sites]}
            for word, weight, sites in move.data
        ]
    return out


def _site_json(site):
    return [list(s) if isinstance(s, tuple) else s for s in site]


def move_from_json(obj: dict) -> MoveInstance:
    kind = obj["kind"]
    if kind == "transvection":
        return transvection(
            (c["word"], c["weight"], [tuple(s) for s in c["sites"]])
            for c in obj.get("curves", [])
        )
    site = tuple(tuple(s) if isinstance(s, list) else s for s in obj.get("site", []))
    return MoveInstance(kind, site)


def replay(diagram: Diagram, certificate) -> Diagram:
    for move in certificate:
        diagram = apply_move(diagram, move)
    return diagram
