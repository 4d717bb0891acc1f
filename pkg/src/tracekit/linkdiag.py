"""Oriented link diagrams as PD (planar diagram) codes.

A crossing stores its four incident edge ids counterclockwise starting
from the incoming under-strand, so slots 0 and 2 carry the under-strand
(in/out) and slots 1 and 3 the over-strand.  The crossing sign is +1
exactly when the over-strand enters at slot 3.  Edge ids are numbered
consecutively along each component following its orientation, which is
what lets a bare PD code be reoriented unambiguously.

Zero-crossing unknot components ("loops") are first class and carried as
a count next to the edge-bearing components.

All public values are immutable; every operation returns a new diagram
in canonical form (components sorted by least edge id, edges renumbered
consecutively along components, crossings renumbered in walk order), so
structural equality is meaningful and serialization round-trips exactly.
"""

import json
import re
from dataclasses import dataclass

from .errors import (
    BadComponentIndex,
    IllegalSite,
    InconsistentEdges,
    InternalInvariantError,
    MalformedPD,
    OrientationConflict,
    SameComponent,
    UnknownCatalogEntry,
)

Corner = tuple[int, int]  # (crossing id, slot); the region between slot and slot+1
Arc = int | tuple[str, int]  # edge id, or ("loop", k) for crossing-free components


@dataclass(frozen=True)
class Crossing:
    """One crossing of a PD code: edge ids counterclockwise from the
    incoming under-strand, plus the sign determined by orientation."""

    id: int
    edges: tuple[int, int, int, int]
    sign: int

    @property
    def over_in_slot(self) -> int:
        return 3 if self.sign > 0 else 1

    @property
    def over_out_slot(self) -> int:
        return 1 if self.sign > 0 else 3


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    loops: int = 0
    name: str | None = None

    @property
    def num_components(self) -> int:
        return len(self.components) + self.loops

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(e for comp in self.components for e in comp))

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def edge_component(self) -> dict[int, int]:
        out = {}
        for i, comp in enumerate(self.components):
            for e in comp:
                out[e] = i
        return out

    def occurrences(self) -> dict[int, list[Corner]]:
        occ: dict[int, list[Corner]] = {}
        for c in self.crossings:
            for s, e in enumerate(c.edges):
                occ.setdefault(e, []).append((c.id, s))
        return occ

    def crossing_by_id(self, cid: int) -> Crossing:
        return self.crossings[cid]

    def head_of(self, edge: int) -> Corner:
        """(crossing, slot) where the edge flows into a crossing."""
        return self._ends()[edge][1]

    def tail_of(self, edge: int) -> Corner:
        return self._ends()[edge][0]

    def _ends(self) -> dict[int, tuple[Corner, Corner]]:
        ends = {}
        for c in self.crossings:
            oi = c.over_in_slot
            for s, e in enumerate(c.edges):
                is_head = s == 0 or s == oi
                tail, head = ends.get(e, (None, None))
                if is_head:
                    ends[e] = (tail, (c.id, s))
                else:
                    ends[e] = ((c.id, s), head)
        return ends

    def rename(self, name: str | None) -> "LinkDiagram":
        return LinkDiagram(self.crossings, self.components, self.loops, name)


@dataclass(frozen=True)
class BandSpec:
    """An oriented band between two arcs on distinct components.

    Arcs are edge ids, or ("loop", k) to address the k-th crossing-free
    loop.  ``framing`` counts half-twists of the band (each adds one
    crossing between the band's sides); ``coherent`` asserts the gluing
    matches the strand orientations and must be True for a merge.
    """

    arc_a: Arc
    arc_b: Arc
    framing: int = 0
    coherent: bool = True


# ---------------------------------------------------------------------------
# construction core
# ---------------------------------------------------------------------------

_END_HEAD = "h"
_END_TAIL = "t"


class _Builder:
    """Mutable, fully oriented diagram graph used by every constructor.

    Crossing slots hold (edge id, end) pairs with slot 0 the under-in
    (head) and slot 2 the under-out (tail); exactly one of slots 1/3 is a
    head.  Freezing renumbers everything canonically and validates.
    """

    last_edge_map: dict[int, int]
    last_cross_map: dict[int, int]

    def __init__(self):
        self.cross: dict[int, list[tuple[int, str] | None]] = {}
        self.loops = 0
        self.name: str | None = None
        self._next_edge = 1
        self._next_cross = 0

    # -- primitives --------------------------------------------------------

    def new_edge_id(self) -> int:
        e = self._next_edge
        self._next_edge += 1
        return e

    def add_crossing(self, slots) -> int:
        cid = self._next_cross
        self._next_cross += 1
        self.cross[cid] = list(slots)
        return cid

    def occurrence(self, edge: int, end: str) -> Corner:
        for cid, slots in self.cross.items():
            for s, occ in enumerate(slots):
                if occ == (edge, end):
                    return (cid, s)
        raise InternalInvariantError(f"dangling edge end {edge}{end}")

    def set_slot(self, corner: Corner, value: tuple[int, str]):
        self.cross[corner[0]][corner[1]] = value

    def split_edge(self, edge: int) -> tuple[int, int]:
        """Split an edge at an interior point; returns (tail half, head
        half).  The tail half keeps the old id and its head dangles, to be
        wired into a new crossing by the caller (same for the head half's
        tail)."""
        head = self.occurrence(edge, _END_HEAD)
        e2 = self.new_edge_id()
        self.set_slot(head, (e2, _END_HEAD))
        return edge, e2

    def smooth_crossing(self, cid: int):
        """Delete a crossing, regluing both strands straight through.
        This implements R1/R2 removals once the pattern is verified."""
        slots = self.cross.pop(cid)
        over_in = next(s for s in (1, 3) if slots[s][1] == _END_HEAD)
        rename: dict[int, int] = {}

        def find(e: int) -> int:
            while e in rename:
                e = rename[e]
            return e

        for in_slot, out_slot in ((0, 2), (over_in, 4 - over_in)):
            a = find(slots[in_slot][0])
            b = find(slots[out_slot][0])
            if a == b:
                self.loops += 1  # strand closes into a crossing-free loop
            else:
                rename[b] = a
        for other in self.cross.values():
            for s, (e, end) in enumerate(other):
                r = find(e)
                if r != e:
                    other[s] = (r, end)

    # -- freezing ------------------------------------------------------------

    def _walk_components(self) -> list[list[int]]:
        heads: dict[int, Corner] = {}
        tails: dict[int, Corner] = {}
        for cid, slots in self.cross.items():
            for s, (e, end) in enumerate(slots):
                (heads if end == _END_HEAD else tails)[e] = (cid, s)
        if set(heads) != set(tails):
            raise InternalInvariantError("edge with missing end")
        comps = []
        seen = set()
        for start in sorted(heads):
            if start in seen:
                continue
            cyc = []
            e = start
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                cid, s = heads[e]
                nxt = self.cross[cid][(s + 2) % 4]
                if nxt[1] != _END_TAIL:
                    raise InternalInvariantError("strand does not flow through")
                e = nxt[0]
            if e != start:
                raise InternalInvariantError("component walk did not close")
            comps.append(cyc)
        return comps

    def freeze(self) -> LinkDiagram:
        for cid, slots in self.cross.items():
            if any(x is None for x in slots):
                raise InternalInvariantError(f"crossing {cid} has empty slot")
            if slots[0][1] != _END_HEAD or slots[2][1] != _END_TAIL:
                raise InternalInvariantError(f"crossing {cid} under-strand miswired")
            over_ends = {slots[1][1], slots[3][1]}
            if over_ends != {_END_HEAD, _END_TAIL}:
                raise InternalInvariantError(f"crossing {cid} over-strand miswired")
        counts: dict[tuple[int, str], int] = {}
        for slots in self.cross.values():
            for occ in slots:
                counts[occ] = counts.get(occ, 0) + 1
        for (e, end), n in counts.items():
            if n != 1:
                raise InconsistentEdges(f"edge {e} end {end} used {n} times")

        comps = self._walk_components()
        comps.sort(key=lambda cyc: min(cyc))
        heads = {}
        ends_seen: dict[int, set[int]] = {}
        for cid, slots in self.cross.items():
            for s, (e, end) in enumerate(slots):
                if end == _END_HEAD:
                    heads[e] = (cid, s)
                ends_seen.setdefault(e, set()).add(s if s in (0, 2) else -1)
        # canonical renumbering: edges consecutively along components,
        # crossings in order of first touch.  A two-edge component lying
        # entirely over other strands is the one case a bare PD code
        # cannot orient by the numbering convention alone; rotate its
        # numbering so that the lower edge's head sits at the lower
        # crossing id, which is what parsing assumes for the tie-break.
        edge_map: dict[int, int] = {}
        cross_map: dict[int, int] = {}
        nxt = 1
        for k, cyc in enumerate(comps):
            if len(cyc) == 2 and all(ends_seen[e] == {-1} for e in cyc):
                first, second = cyc
                c_head = heads[first][0]
                c_tail = heads[second][0]
                if (c_head not in cross_map and c_tail in cross_map) or (
                        c_head in cross_map and c_tail in cross_map
                        and cross_map[c_head] > cross_map[c_tail]):
                    comps[k] = cyc = [second, first]
            for e in cyc:
                edge_map[e] = nxt
                nxt += 1
                cid = heads[e][0]
                if cid not in cross_map:
                    cross_map[cid] = len(cross_map)
        crossings = []
        for cid in sorted(self.cross, key=lambda c: cross_map[c]):
            slots = self.cross[cid]
            edges = tuple(edge_map[e] for e, _ in slots)
            sign = 1 if slots[3][1] == _END_HEAD else -1
            crossings.append(Crossing(cross_map[cid], edges, sign))
        components = tuple(tuple(edge_map[e] for e in cyc) for cyc in comps)
        self.last_edge_map = edge_map
        self.last_cross_map = cross_map
        diagram = LinkDiagram(tuple(crossings), components, self.loops, self.name)
        _validate_planarity(diagram)
        if diagram.num_components < 1:
            raise MalformedPD("diagram has no components")
        return diagram


def _thaw(d: LinkDiagram) -> _Builder:
    b = _Builder()
    b.loops = d.loops
    b.name = d.name
    b._next_edge = max(d.edges, default=0) + 1
    b._next_cross = len(d.crossings)
    for c in d.crossings:
        oi = c.over_in_slot
        slots = []
        for s, e in enumerate(c.edges):
            end = _END_HEAD if (s == 0 or s == oi) else _END_TAIL
            slots.append((e, end))
        b.cross[c.id] = slots
    return b


def _pieces(d: LinkDiagram) -> list[set[int]]:
    """Connected pieces of the 4-valent graph, as sets of crossing ids."""
    adj: dict[int, set[int]] = {c.id: set() for c in d.crossings}
    occ = d.occurrences()
    for places in occ.values():
        for (c1, _), (c2, _) in zip(places, places[1:]):
            adj[c1].add(c2)
            adj[c2].add(c1)
    pieces = []
    seen: set[int] = set()
    for start in adj:
        if start in seen:
            continue
        stack = [start]
        piece = set()
        while stack:
            x = stack.pop()
            if x in piece:
                continue
            piece.add(x)
            stack.extend(adj[x] - piece)
        seen |= piece
        pieces.append(piece)
    return pieces


def is_connected(d: LinkDiagram) -> bool:
    return len(_pieces(d)) + d.loops == 1


def faces(d: LinkDiagram) -> list[list[Corner]]:
    """Complementary regions of the diagram.  Each face is the cyclic
    list of crossing corners met walking its boundary; corner (c, s) is
    the region between slots s and s+1 of crossing c."""
    occ = d.occurrences()
    partner: dict[Corner, Corner] = {}
    for places in occ.values():
        if len(places) != 2:
            raise InconsistentEdges(f"edge appears {len(places)} times")
        partner[places[0]] = places[1]
        partner[places[1]] = places[0]
    out = []
    todo = {(c.id, s) for c in d.crossings for s in range(4)}
    while todo:
        start = min(todo)
        face = [start]
        todo.remove(start)
        while True:
            cid, s = face[-1]
            nxt = partner[(cid, (s + 1) % 4)]
            if nxt == start:
                break
            face.append(nxt)
            todo.remove(nxt)
        out.append(face)
    return out


def _validate_planarity(d: LinkDiagram):
    if not d.crossings:
        return
    pieces = _pieces(d)
    corner_piece = {}
    for i, piece in enumerate(pieces):
        for cid in piece:
            for s in range(4):
                corner_piece[(cid, s)] = i
    per_piece: dict[int, int] = {}
    for f in faces(d):
        ids = {corner_piece[c] for c in f}
        if len(ids) != 1:
            raise InternalInvariantError("face walk crossed connected pieces")
        i = ids.pop()
        per_piece[i] = per_piece.get(i, 0) + 1
    for i, piece in enumerate(pieces):
        # V - E + F = 2 with E = 2V for a connected 4-valent planar graph
        expected = len(piece) + 2
        if per_piece.get(i, 0) != expected:
            raise MalformedPD(
                f"PD code is not planar (piece {i}: {per_piece.get(i, 0)} faces, "
                f"expected {expected})"
            )


def face_edge_parities(d: LinkDiagram) -> list[list[tuple[int, bool]]]:
    """For each face, the edges along its boundary walk together with a
    flag: True when the edge is traversed along its own orientation."""
    tails = {}
    for c in d.crossings:
        oi = c.over_in_slot
        for s, e in enumerate(c.edges):
            if s != 0 and s != oi:
                tails[(c.id, s)] = e
    out = []
    for f in faces(d):
        walk = []
        for cid, s in f:
            corner = (cid, (s + 1) % 4)
            e = d.crossings[cid].edges[(s + 1) % 4]
            walk.append((e, corner in tails and tails[corner] == e))
        out.append(walk)
    return out


# ---------------------------------------------------------------------------
# parsing and serialization
# ---------------------------------------------------------------------------

_TUPLE_RE = re.compile(r"[Xx]?\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_TOKEN_RE = re.compile(r"[Xx]?\s*\([^)]*\)|O|\S+")


def parse_pd(text: str, name: str | None = None) -> "LinkDiagram":
    """Parse a PD code: comma/whitespace separated 4-tuples ``X(a,b,c,d)``
    (or bare ``(a,b,c,d)``), plus ``O`` markers for crossing-free loops.

    Orientations are reconstructed from the convention that slot 0 is the
    incoming under-strand and edges are numbered consecutively along each
    component."""
    tuples: list[tuple[int, int, int, int]] = []
    nloops = 0
    rest = text.strip()
    pos = 0
    while pos < len(rest):
        m = _TOKEN_RE.match(rest, pos)
        if m is None:
            break
        tok = m.group(0).strip().strip(",")
        pos = m.end()
        while pos < len(rest) and rest[pos] in ", \t\n":
            pos += 1
        if not tok:
            continue
        if tok == "O":
            nloops += 1
            continue
        tm = _TUPLE_RE.fullmatch(tok)
        if tm is None:
            raise MalformedPD(f"unrecognized PD token {tok!r}")
        a, b, c, dd = (int(tm.group(i)) for i in range(1, 5))
        if min(a, b, c, dd) < 1:
            raise MalformedPD("edge ids must be positive")
        tuples.append((a, b, c, dd))
    if not tuples and nloops == 0:
        raise MalformedPD("empty PD code")
    return assemble_pd(tuples, nloops, name, strict_under=True)


def assemble_pd(
    tuples: list[tuple[int, int, int, int]],
    nloops: int = 0,
    name: str | None = None,
    strict_under: bool = True,
) -> LinkDiagram:
    """Build a diagram from raw PD tuples, inferring orientations.

    With ``strict_under`` every tuple's slot 0 must be the incoming
    under-strand (the PD convention); components never passing under are
    oriented along increasing edge numbering.  Without it the
    under-strand may flow either way (tuples get rotated as needed) and
    orientations are chosen deterministically."""
    occ: dict[int, list[Corner]] = {}
    for ci, tup in enumerate(tuples):
        for s, e in enumerate(tup):
            occ.setdefault(e, []).append((ci, s))
    for e, places in occ.items():
        if len(places) != 2:
            raise InconsistentEdges(f"edge {e} used {len(places)} times")

    def partner(corner: Corner) -> Corner:
        a, b = occ[tuples[corner[0]][corner[1]]]
        return b if corner == a else a

    def orient_cycle(e0: int, start_head: Corner) -> dict[int, Corner] | None:
        """Propagate head assignments along the strand walk starting by
        declaring start_head the head of e0; None when inconsistent."""
        out: dict[int, Corner] = {}
        e, h = e0, start_head
        while True:
            out[e] = h
            c, s = h
            e_next = tuples[c][(s + 2) % 4]
            h_next = partner((c, (s + 2) % 4))
            if e_next == e0:
                return out if h_next == start_head else None
            if e_next in out:
                return None
            e, h = e_next, h_next

    def under_consistent(heads: dict[int, Corner]) -> bool:
        for e in heads:
            for corner in occ[e]:
                if corner[1] == 0 and heads[e] != corner:
                    return False
                if corner[1] == 2 and heads[e] == corner:
                    return False
        return True

    heads: dict[int, Corner] = {}
    seen: set[int] = set()
    for e0 in sorted(occ):
        if e0 in seen:
            continue
        fwd = orient_cycle(e0, occ[e0][0])
        bwd = orient_cycle(e0, occ[e0][1])
        if fwd is None or bwd is None:
            raise MalformedPD(f"strand through edge {e0} does not close up")
        seen |= set(fwd)
        candidates = [h for h in (fwd, bwd) if under_consistent(h)]
        if strict_under and not candidates:
            raise OrientationConflict(
                f"component {sorted(fwd)} cannot satisfy the under-strand convention"
            )
        if len(candidates) == 1:
            heads.update(candidates[0])
            continue
        # all-over component (or free mode): orient along increasing ids
        pool = candidates or [fwd, bwd]
        heads.update(max(pool, key=lambda h: _ascents(h, occ, tuples, partner)))

    b = _Builder()
    b.loops = nloops
    b.name = name
    b._next_edge = max(occ, default=0) + 1
    for ci, tup in enumerate(tuples):
        slots: list[tuple[int, str]] = []
        for s, e in enumerate(tup):
            end = _END_HEAD if heads[e] == (ci, s) else _END_TAIL
            slots.append((e, end))
        if slots[0][1] != _END_HEAD:
            if strict_under:
                raise OrientationConflict(f"crossing {ci}: under-strand reversed")
            slots = slots[2:] + slots[:2]
        if slots[2][1] != _END_TAIL or {slots[1][1], slots[3][1]} != {"h", "t"}:
            raise OrientationConflict(f"crossing {ci}: inconsistent orientation")
        b.add_crossing(slots)
    return b.freeze()


def _ascents(heads: dict[int, Corner], occ, tuples, partner) -> int:
    score = 0
    for e, h in heads.items():
        c, s = h
        nxt = tuples[c][(s + 2) % 4]
        if nxt == e + 1:
            score += 1
    return score


def serialize_pd(d: LinkDiagram) -> str:
    parts = [f"X({','.join(map(str, c.edges))})" for c in sorted(d.crossings, key=lambda c: c.id)]
    parts.extend(["O"] * d.loops)
    return ", ".join(parts)


def to_json_dict(d: LinkDiagram, framings: list[int] | None = None) -> dict:
    out = {
        "name": d.name or "",
        "pd": [list(c.edges) for c in sorted(d.crossings, key=lambda c: c.id)],
        "loops": d.loops,
    }
    if framings is not None:
        out["framings"] = list(framings)
    return out


def from_json_dict(data: dict) -> tuple[LinkDiagram, list[int] | None]:
    try:
        pd = [tuple(int(x) for x in row) for row in data["pd"]]
        nloops = int(data.get("loops", 0))
        name = data.get("name") or None
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPD(f"bad link JSON: {exc}") from exc
    if any(len(row) != 4 for row in pd):
        raise MalformedPD("pd rows must have four entries")
    d = assemble_pd(pd, nloops, name, strict_under=True)
    framings = data.get("framings")
    if framings is not None:
        framings = [int(x) for x in framings]
    return d, framings


def dumps(d: LinkDiagram, framings: list[int] | None = None) -> str:
    return json.dumps(to_json_dict(d, framings), sort_keys=True)


def loads(text: str) -> tuple[LinkDiagram, list[int] | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedPD(f"bad JSON: {exc}") from exc
    return from_json_dict(data)


# ---------------------------------------------------------------------------
# elementary operations
# ---------------------------------------------------------------------------

def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over- and under-strands everywhere: all signs negate, the
    components and orientations are untouched."""
    b = _Builder()
    b.loops = d.loops
    b.name = d.name
    b._next_edge = max(d.edges, default=0) + 1
    for c in d.crossings:
        oi = c.over_in_slot
        rot = oi  # old over-in slot becomes the new under-in slot 0
        slots = []
        for k in range(4):
            s = (rot + k) % 4
            e = c.edges[s]
            end = _END_HEAD if (s == 0 or s == oi) else _END_TAIL
            slots.append((e, end))
        b.add_crossing(slots)
    return b.freeze()


def reverse_component(d: LinkDiagram, index: int) -> LinkDiagram:
    """Reverse the orientation of one edge-bearing component."""
    if not 0 <= index < len(d.components):
        raise BadComponentIndex(f"no edge component {index}")
    comp = set(d.components[index])
    b = _Builder()
    b.loops = d.loops
    b.name = d.name
    b._next_edge = max(d.edges, default=0) + 1
    for c in d.crossings:
        oi = c.over_in_slot
        slots = []
        for s, e in enumerate(c.edges):
            end = _END_HEAD if (s == 0 or s == oi) else _END_TAIL
            if e in comp:
                end = _END_TAIL if end == _END_HEAD else _END_HEAD
            slots.append((e, end))
        if slots[0][1] != _END_HEAD:
            slots = slots[2:] + slots[:2]
        b.add_crossing(slots)
    return b.freeze()


def writhe(d: LinkDiagram) -> int:
    return d.writhe()


def _component_of_arc(d: LinkDiagram, arc: Arc) -> int:
    if isinstance(arc, tuple):
        kind, k = arc
        if kind != "loop" or not 0 <= k < d.loops:
            raise BadComponentIndex(f"bad loop arc {arc}")
        return len(d.components) + k
    ec = d.edge_component()
    if arc not in ec:
        raise BadComponentIndex(f"no edge {arc}")
    return ec[arc]


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components i and j."""
    n = d.num_components
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise BadComponentIndex(f"bad component pair ({i}, {j})")
    ec = d.edge_component()
    total = 0
    for c in d.crossings:
        under = ec[c.edges[0]]
        over = ec[c.edges[c.over_in_slot]]
        if {under, over} == {i, j}:
            total += c.sign
    if total % 2:
        raise InternalInvariantError("odd inter-component crossing sum")
    return total // 2


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    n = d.num_components
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out[i][j] = out[j][i] = linking_number(d, i, j)
    return out


def total_linking(d: LinkDiagram) -> int:
    n = d.num_components
    return sum(linking_number(d, i, j) for i in range(n) for j in range(i + 1, n))


def is_alternating(d: LinkDiagram) -> bool:
    """True when every strand alternates over/under passes; crossing-free
    components are vacuously alternating."""
    for e, (tail, head) in d._ends().items():
        tail_over = tail[1] != 2
        head_over = head[1] != 0
        if tail_over == head_over:
            return False
    return True


# ---------------------------------------------------------------------------
# band merges
# ---------------------------------------------------------------------------

def _band_site_valid(d: LinkDiagram, arc_a: int, arc_b: int, framing: int) -> bool:
    """A coherent band needs the arcs anti-parallel along a shared face
    when its half-twist count is even, parallel when odd; arcs in
    different connected pieces can always be arranged either way."""
    piece_of = {}
    for i, piece in enumerate(_pieces(d)):
        for cid in piece:
            piece_of[cid] = i
    pa = piece_of[d.head_of(arc_a)[0]]
    pb = piece_of[d.head_of(arc_b)[0]]
    if pa != pb:
        return True
    want_same = framing % 2 == 0
    for walk in face_edge_parities(d):
        pars_a = [p for e, p in walk if e == arc_a]
        pars_b = [p for e, p in walk if e == arc_b]
        if any((x == y) == want_same for x in pars_a for y in pars_b):
            return True
    return False


def band_merge(d: LinkDiagram, band: BandSpec) -> LinkDiagram:
    return _band_merge_full(d, band)[0]


def band_merge_tracked(d: LinkDiagram, band: BandSpec) -> tuple[LinkDiagram, tuple[Arc, Arc]]:
    """Merge two components along a band; also returns the two band-side
    arcs of the merged diagram, which is what a clasping surgery circle
    needs to encircle."""
    merged, arcs, _ = _band_merge_full(d, band)
    return merged, arcs[:2]


def _band_merge_full(d: LinkDiagram, band: BandSpec):
    """(merged diagram, band-side arcs, old-edge -> new-edge map)."""
    if not band.coherent:
        raise OrientationConflict("band gluing reverses orientation")
    ca = _component_of_arc(d, band.arc_a)
    cb = _component_of_arc(d, band.arc_b)
    if ca == cb:
        raise SameComponent("band endpoints on one component")
    loop_a = isinstance(band.arc_a, tuple)
    loop_b = isinstance(band.arc_b, tuple)

    if loop_a and loop_b:
        if band.framing:
            raise OrientationConflict("twisted bands between bare loops are not supported")
        b = _thaw(d)
        b.loops -= 1
        frozen = b.freeze()
        return frozen, (band.arc_a, band.arc_b), dict(b.last_edge_map)
    if loop_a or loop_b:
        if band.framing:
            raise OrientationConflict("twisted bands on bare loops are not supported")
        edge = band.arc_b if loop_a else band.arc_a
        b = _thaw(d)
        b.loops -= 1
        frozen = b.freeze()
        emap = dict(b.last_edge_map)
        return frozen, (emap[edge], emap[edge]), emap

    if not _band_site_valid(d, band.arc_a, band.arc_b, band.framing):
        raise OrientationConflict(
            f"no face admits a coherent band between edges {band.arc_a} and "
            f"{band.arc_b} with {band.framing} half-twists"
        )

    def build(positive: bool):
        b = _thaw(d)
        a1, a2 = b.split_edge(band.arc_a)
        g1, g2 = b.split_edge(band.arc_b)
        # connector A carries a1 -> (rest of arc_b); connector B the reverse
        b.set_slot(b.occurrence(g2, _END_HEAD), (a1, _END_HEAD))
        b.set_slot(b.occurrence(a2, _END_HEAD), (g1, _END_HEAD))
        m = abs(band.framing)
        if m == 0:
            frozen = b.freeze()
            emap = dict(b.last_edge_map)
            return frozen, (emap[a1], emap[g1]), emap
        # pre-split both connectors into m+1 pieces in flow order
        apiece = [a1]
        bpiece = [g1]
        for _ in range(m):
            _, na = b.split_edge(apiece[-1])
            apiece.append(na)
            _, nb = b.split_edge(bpiece[-1])
            bpiece.append(nb)
        h, t = _END_HEAD, _END_TAIL
        anti = m % 2 == 0  # coherence forces the relative direction
        for k in range(m):
            a_in, a_out = apiece[k], apiece[k + 1]
            if anti:
                b_in, b_out = bpiece[m - 1 - k], bpiece[m - k]
            else:
                b_in, b_out = bpiece[k], bpiece[k + 1]
            if anti:
                if k % 2 == 0:
                    slots = [(a_in, h), (b_in, h), (a_out, t), (b_out, t)]
                else:
                    slots = [(b_in, h), (a_in, h), (b_out, t), (a_out, t)]
                if positive:  # reflect: reverse the cyclic order
                    slots = [slots[0], slots[3], slots[2], slots[1]]
            else:
                if k % 2 == 0:
                    slots = [(a_in, h), (b_out, t), (a_out, t), (b_in, h)]
                else:
                    slots = [(b_in, h), (a_out, t), (b_out, t), (a_in, h)]
                if not positive:
                    slots = [slots[0], slots[3], slots[2], slots[1]]
            b.add_crossing(slots)
        # report the two band-side arcs at a common section of the band;
        # which end of the twisted side sits next to the a-side start
        # depends on the face chirality, so offer both (primary first)
        frozen = b.freeze()
        emap = dict(b.last_edge_map)
        primary, alt = (bpiece[-1], bpiece[0]) if anti else (bpiece[0], bpiece[-1])
        return frozen, (emap[apiece[0]], emap[primary], emap[alt]), emap

    try:
        return build(band.framing > 0)
    except MalformedPD:
        # the face forces the reflected chain; twist count is preserved
        return build(band.framing <= 0)


# ---------------------------------------------------------------------------
# Reidemeister moves
# ---------------------------------------------------------------------------

def r_moves(d: LinkDiagram, move: str, site) -> LinkDiagram:
    """Apply one Reidemeister move.

    move/site forms:
      "R1+": (edge_or_loop, chirality ±1, flavor 0|1)
      "R1-": crossing id of a kink
      "R2+": (over_arc, under_arc) edges sharing a face, or a loop over an
             edge as (("loop", k), edge)
      "R2-": (crossing id, crossing id) of a cancellable bigon
    """
    if move == "R1+":
        arc, chirality, flavor = site
        return _r1_insert(d, arc, chirality, flavor)
    if move == "R1-":
        return _r1_remove(d, site)
    if move == "R2+":
        over, under = site
        return _r2_insert(d, over, under)
    if move == "R2-":
        c1, c2 = site
        return _r2_remove(d, c1, c2)
    raise IllegalSite(f"unknown move {move!r}")


def _r1_insert(d: LinkDiagram, arc: Arc, chirality: int, flavor: int) -> LinkDiagram:
    if chirality not in (1, -1) or flavor not in (0, 1):
        raise IllegalSite("R1 wants chirality ±1 and flavor 0|1")
    b = _thaw(d)
    if isinstance(arc, tuple):
        kind, k = arc
        if kind != "loop" or not 0 <= k < d.loops:
            raise IllegalSite(f"bad loop arc {arc}")
        b.loops -= 1
        g = b.new_edge_id()
        e1 = e2 = g
        f = b.new_edge_id()
    else:
        if arc not in d.edge_component():
            raise IllegalSite(f"no edge {arc}")
        e1, e2 = b.split_edge(arc)
        f = b.new_edge_id()
    slots: list[tuple[int, str] | None] = [None] * 4
    if flavor == 0:  # under-pass first: e1 -> f over to e2
        slots[0] = (e1, _END_HEAD)
        slots[2] = (f, _END_TAIL)
        oi = 3 if chirality > 0 else 1
        slots[oi] = (f, _END_HEAD)
        slots[4 - oi] = (e2, _END_TAIL)
    else:  # over-pass first
        slots[0] = (f, _END_HEAD)
        slots[2] = (e2, _END_TAIL)
        oi = 3 if chirality > 0 else 1
        slots[oi] = (e1, _END_HEAD)
        slots[4 - oi] = (f, _END_TAIL)
    b.add_crossing(slots)
    return b.freeze()


def _kink_pattern(d: LinkDiagram, cid: int) -> int | None:
    """Return the loop edge of a kink crossing, else None."""
    if not 0 <= cid < len(d.crossings):
        return None
    c = d.crossings[cid]
    oi = c.over_in_slot
    oo = 4 - oi
    for loop_slots in ((2, oi), (oo, 0)):
        if c.edges[loop_slots[0]] == c.edges[loop_slots[1]]:
            return c.edges[loop_slots[0]]
    return None


def _r1_remove(d: LinkDiagram, cid: int) -> LinkDiagram:
    if _kink_pattern(d, cid) is None:
        raise IllegalSite(f"crossing {cid} is not a kink")
    b = _thaw(d)
    b.smooth_crossing(cid)
    return b.freeze()


def _r2_insert(d: LinkDiagram, over: Arc, under: Arc) -> LinkDiagram:
    if isinstance(over, tuple) or isinstance(under, tuple):
        return _r2_insert_loop(d, over, under)
    return _r2_insert_mapped(d, over, under)[0]


def _r2_insert_mapped(d: LinkDiagram, over: int, under: int):
    """R2 push returning (diagram, old edge -> new edge map)."""
    edges = set(d.edge_component())
    if over not in edges or under not in edges:
        raise IllegalSite("R2 site edges missing")
    anti = parallel = False
    if over == under:
        raise IllegalSite("R2 needs two distinct arcs")
    for walk in face_edge_parities(d):
        pars_o = [p for e, p in walk if e == over]
        pars_u = [p for e, p in walk if e == under]
        for x in pars_o:
            for y in pars_u:
                if x == y:
                    anti = True
                else:
                    parallel = True
    piece_of = {}
    for i, piece in enumerate(_pieces(d)):
        for cid in piece:
            piece_of[cid] = i
    if piece_of[d.head_of(over)[0]] != piece_of[d.head_of(under)[0]]:
        anti = True  # separate pieces can always be brought side by side
    if not anti and not parallel:
        raise IllegalSite(f"edges {over} and {under} share no face")

    def build(template: str):
        b = _thaw(d)
        e1, e2 = b.split_edge(over)
        me = b.new_edge_id()
        g1, g2 = b.split_edge(under)
        mg = b.new_edge_id()
        h, t = _END_HEAD, _END_TAIL
        if template == "anti":
            b.add_crossing([(mg, h), (e1, h), (g2, t), (me, t)])
            b.add_crossing([(g1, h), (e2, t), (mg, t), (me, h)])
        elif template == "anti-mirror":
            b.add_crossing([(mg, h), (me, t), (g2, t), (e1, h)])
            b.add_crossing([(g1, h), (me, h), (mg, t), (e2, t)])
        elif template == "parallel":
            b.add_crossing([(g1, h), (me, t), (mg, t), (e1, h)])
            b.add_crossing([(mg, h), (me, h), (g2, t), (e2, t)])
        else:
            b.add_crossing([(g1, h), (e1, h), (mg, t), (me, t)])
            b.add_crossing([(mg, h), (e2, t), (g2, t), (me, h)])
        frozen = b.freeze()
        return frozen, dict(b.last_edge_map)

    templates = []
    if anti:
        templates += ["anti", "anti-mirror"]
    if parallel:
        templates += ["parallel", "parallel-mirror"]
    for template in templates:
        try:
            return build(template)
        except MalformedPD:
            continue
    raise IllegalSite(f"no planar R2 push of {over} over {under}")


def _r2_insert_loop(d: LinkDiagram, over: Arc, under: Arc) -> LinkDiagram:
    if not isinstance(over, tuple):
        raise IllegalSite("loop R2 is supported with the loop passing over")
    kind, k = over
    if kind != "loop" or not 0 <= k < d.loops or isinstance(under, tuple):
        raise IllegalSite(f"bad loop R2 site ({over}, {under})")
    if under not in d.edge_component():
        raise IllegalSite(f"no edge {under}")
    for mirrored in (False, True):
        b = _thaw(d)
        b.loops -= 1
        g1, g2 = b.split_edge(under)
        mg = b.new_edge_id()
        f1 = b.new_edge_id()
        f2 = b.new_edge_id()
        h, t = _END_HEAD, _END_TAIL
        if not mirrored:
            b.add_crossing([(g1, h), (f2, t), (mg, t), (f1, h)])
            b.add_crossing([(mg, h), (f2, h), (g2, t), (f1, t)])
        else:
            b.add_crossing([(g1, h), (f1, h), (mg, t), (f2, t)])
            b.add_crossing([(mg, h), (f1, t), (g2, t), (f2, h)])
        try:
            return b.freeze()
        except MalformedPD:
            continue
    raise IllegalSite(f"no planar loop R2 over edge {under}")


def _r2_remove(d: LinkDiagram, c1: int, c2: int) -> LinkDiagram:
    n = len(d.crossings)
    if not (0 <= c1 < n and 0 <= c2 < n) or c1 == c2:
        raise IllegalSite(f"bad crossing pair ({c1}, {c2})")
    for f in faces(d):
        if len(f) != 2:
            continue
        ids = {f[0][0], f[1][0]}
        if ids != {c1, c2}:
            continue
        (ca, sa), (cb, sb) = f
        # bigon edges sit at slots sa+1 (= walk to cb) and sb+1; the pair
        # cancels when each bigon edge keeps one strand type at both ends
        if (sa + 1) % 2 != sb % 2:
            continue
        if d.crossings[c1].sign == d.crossings[c2].sign:
            raise InternalInvariantError("R2 bigon with equal signs")
        b = _thaw(d)
        b.smooth_crossing(c1)
        b.smooth_crossing(c2)
        return b.freeze()
    raise IllegalSite(f"crossings ({c1}, {c2}) do not bound a cancellable bigon")


# ---------------------------------------------------------------------------
# braid closures and catalog
# ---------------------------------------------------------------------------

def from_braid(word: list[int], strands: int | None = None, name: str | None = None) -> LinkDiagram:
    """Closure of a braid word; letter ±i crosses strand positions i, i+1
    with the sign of the letter (positive letters make positive
    crossings).  Positions untouched by the word close into loops."""
    if strands is None:
        strands = max((abs(x) for x in word), default=1) + 1
    if any(x == 0 or abs(x) >= strands for x in word):
        raise MalformedPD("braid letter out of range")
    b = _Builder()
    b.name = name
    start = [b.new_edge_id() for _ in range(strands)]
    cur = list(start)
    used = [False] * strands
    for letter in word:
        i = abs(letter) - 1
        used[i] = used[i + 1] = True
        e_i, e_j = cur[i], cur[i + 1]
        f_i, f_j = b.new_edge_id(), b.new_edge_id()
        if letter > 0:
            # strand arriving from position i+1 passes over to position i
            b.add_crossing([(e_i, _END_HEAD), (f_i, _END_TAIL), (f_j, _END_TAIL), (e_j, _END_HEAD)])
        else:
            b.add_crossing([(e_j, _END_HEAD), (e_i, _END_HEAD), (f_i, _END_TAIL), (f_j, _END_TAIL)])
        cur[i], cur[i + 1] = f_i, f_j
    # closure: identify cur[p] with start[p]
    remap: dict[int, int] = {}
    for p in range(strands):
        if not used[p]:
            b.loops += 1
            continue
        if cur[p] == start[p]:
            continue
        remap[cur[p]] = start[p]
    for slots in b.cross.values():
        for s, (e, end) in enumerate(slots):
            while e in remap:
                e = remap[e]
            slots[s] = (e, end)
    return b.freeze()


def sublink(d: LinkDiagram, keep) -> LinkDiagram:
    """Diagram of the sublink spanned by the given component indices.
    Crossings with a discarded strand are smoothed away, keeping the
    surviving strand straight."""
    keep = set(keep)
    n = d.num_components
    if not keep or any(not 0 <= i < n for i in keep):
        raise BadComponentIndex(f"bad component set {sorted(keep)}")
    ec = d.edge_component()
    b = _thaw(d)
    b.loops = sum(1 for i in keep if i >= len(d.components))
    rename: dict[int, int] = {}

    def find(e):
        while e in rename:
            e = rename[e]
        return e

    for cid in list(b.cross):
        slots = b.cross[cid]
        over_in = 1 if slots[1][1] == _END_HEAD else 3
        under_kept = ec[slots[0][0]] in keep
        over_kept = ec[slots[over_in][0]] in keep
        if under_kept and over_kept:
            continue
        del b.cross[cid]
        for in_slot, out_slot, kept in ((0, 2, under_kept), (over_in, 4 - over_in, over_kept)):
            if not kept:
                continue
            a = find(slots[in_slot][0])
            z = find(slots[out_slot][0])
            if a == z:
                b.loops += 1
            else:
                rename[z] = a
    for slots in b.cross.values():
        for s, (e, end) in enumerate(slots):
            r = find(e)
            if r != e:
                slots[s] = (r, end)
    return b.freeze()


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

CATALOG_NAMES = (
    "unknot", "unlink", "hopf", "trefoil", "figure8", "whitehead",
    "borromean", "twist_family",
)

_TREFOIL_RIGHT = "X(4,2,5,1), X(6,4,1,3), X(2,6,3,5)"
_HOPF_POSITIVE = "X(1,4,2,3), X(4,1,3,2)"
_FIGURE8 = "X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)"


def _parse_sign(param) -> int:
    if param in (1, "+", "+1", "p", None):
        return 1
    if param in (-1, "-", "-1", "m"):
        return -1
    raise UnknownCatalogEntry(f"bad sign parameter {param!r}")


def _twist_family(n: int) -> LinkDiagram:
    """The two-component family anchored at the parallel (2,4)-torus
    link: entry n is the 2-bridge link of fraction (6n-4)/(2n-1), with
    the component orientation fixed by total linking >= 0.  For n <= 0
    these diagrams are connected and alternating; n = 1 is the Hopf link
    and n = 2 the Whitehead link."""
    p, q = 6 * n - 4, 2 * n - 1
    if p < 0:
        p, q = -p, -q
    d = rational_link(p, q, f"twist_family({n})")
    if d.num_components != 2:
        raise InternalInvariantError("twist family entry is not a 2-component link")
    if linking_number(d, 0, 1) < 0:
        d = reverse_component(d, 1)
    return d


def catalog(name: str, param=None) -> LinkDiagram:
    """Fixed generator diagrams: unknot, unlink(n), hopf(sign),
    trefoil(sign), figure8, whitehead, borromean, twist_family(n)."""
    if name == "unknot":
        return parse_pd("O", "unknot")
    if name == "unlink":
        n = int(param if param is not None else 2)
        if n < 1:
            raise UnknownCatalogEntry("unlink needs n >= 1")
        return parse_pd(", ".join(["O"] * n), f"unlink({n})")
    if name == "hopf":
        sign = _parse_sign(param)
        d = parse_pd(_HOPF_POSITIVE, f"hopf({'+' if sign > 0 else '-'})")
        return d if sign > 0 else mirror(d)
    if name == "trefoil":
        sign = _parse_sign(param)
        d = parse_pd(_TREFOIL_RIGHT, f"trefoil({'+' if sign > 0 else '-'})")
        return d if sign > 0 else mirror(d)
    if name == "figure8":
        return parse_pd(_FIGURE8, "figure8")
    if name == "whitehead":
        return rational_link(8, 3, "whitehead")
    if name == "borromean":
        return from_braid([1, -2, 1, -2, 1, -2], name="borromean")
    if name == "twist_family":
        if param is None:
            raise UnknownCatalogEntry("twist_family needs an integer parameter")
        return _twist_family(int(param))
    raise UnknownCatalogEntry(f"unknown catalog entry {name!r}")


def twist_family_merge_band(n: int) -> BandSpec:
    """The designated band merging twist_family(n <= 0) into a diagram
    with right-trefoil invariants."""
    if n > 0:
        raise UnknownCatalogEntry("designated band exists for n <= 0 only")
    return BandSpec(1, 6 - 2 * n)


def borromean_merge_band() -> BandSpec:
    """The designated untwisted band merging two Borromean components
    into a diagram with the catalog Whitehead link's invariants."""
    return BandSpec(2, 10)


def _positive_continued_fraction(p: int, q: int) -> list[int]:
    """All-positive, odd-length continued fraction [a1, a2, ...] with
    p/q = a1 + 1/(a2 + 1/(...)), p > q >= 1.  Odd length lets the twist
    regions of the standard 2-bridge diagram start and end horizontal."""
    out = []
    while q:
        out.append(p // q)
        p, q = q, p % q
    if out[-1] == 1 and len(out) > 1:
        out[-2] += 1
        out.pop()
    if len(out) % 2 == 0:
        if out[-1] > 1:
            out[-1] -= 1
            out.append(1)
        else:
            out[-2] += 1
            out.pop()
    return out


def rational_link(p: int, q: int, name: str | None = None, flip: bool = False) -> LinkDiagram:
    """Standard alternating diagram of the 2-bridge link with fraction
    p/q = a1 + 1/(a2 + 1/(...)), p > q >= 1 coprime.

    The tangle starts as two horizontal strands; odd-position blocks a1,
    a3, ... twist the two right endpoints, even-position blocks the two
    bottom endpoints, and the result is closed with arcs NW-NE and SW-SE.
    ``flip`` mirrors every crossing.  Orientations are inferred after
    closing, so use ``reverse_component`` to pin a relative orientation.
    """
    if p <= 0 or q <= 0 or q >= p:
        raise UnknownCatalogEntry(f"bad 2-bridge fraction {p}/{q}")
    cf = _positive_continued_fraction(p, q)
    next_edge = 1

    def fresh():
        nonlocal next_edge
        next_edge += 1
        return next_edge - 1

    nw = fresh()
    sw = fresh()
    ne, se = nw, sw
    tuples: list[tuple[int, int, int, int]] = []
    # build innermost block first, so the final (and first) block is
    # horizontal and the tangle fraction reads a1 + 1/(a2 + ...)
    for depth, a in enumerate(reversed(cf)):
        horizontal = depth % 2 == 0
        for _ in range(a):
            x = fresh()
            y = fresh()
            if horizontal:
                top_over = not flip
                if top_over:
                    # under strand runs SW-port -> NE-port of the crossing
                    tuples.append((se, y, x, ne))
                else:
                    tuples.append((ne, se, y, x))
                ne, se = x, y
            else:
                right_over = flip
                if right_over:
                    tuples.append((sw, x, y, se))
                else:
                    tuples.append((se, sw, x, y))
                sw, se = x, y
    remap = {ne: nw, se: sw}
    if ne == nw or se == sw:
        raise InternalInvariantError("degenerate rational closure")
    tuples = [tuple(remap.get(e, e) for e in t) for t in tuples]
    return assemble_pd(tuples, 0, name, strict_under=False)
