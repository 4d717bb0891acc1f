"""Trace 4-manifolds as symbolic handle decompositions.

A framed link in the 3-sphere presents a 4-manifold by 2-handle
attachment; the algebraic record kept here is the handle count vector,
the framing-linking matrix Q of the 2-handles, and the winding matrix W
of attaching circles over 1-handles.  Knotification is performed as
honest diagram surgery: oriented band merges followed by the insertion
of a small surgery circle clasping each band, so the null-homology of
the resulting knot is audited with linking numbers rather than assumed.

Candidate checks (homotopy 4-sphere, Schoenflies) only ever test the
computable necessary conditions and never claim a diffeomorphism.
"""

import json
from dataclasses import dataclass

from .errors import (
    BadBands,
    BadComponentIndex,
    InternalInvariantError,
    InvalidBlockFraming,
    MalformedMixedDiagram,
    MalformedPD,
    NotAPartition,
    OrientationConflict,
    SameComponent,
)
from .exactlinalg import cokernel, smith_normal_form
from .linkdiag import (
    Arc,
    BandSpec,
    LinkDiagram,
    _band_merge_full,
    _thaw,
    face_edge_parities,
    linking_matrix,
    linking_number,
    mirror,
    total_linking,
)

__all__ = [
    "FramedLink", "WeightedPartition", "HandleDecomposition", "MixedLink",
    "KnotifiedLink", "TraceVerdict", "smith_normal_form", "zero_trace",
    "boundary_h1", "planar_framing_valid", "knotify",
    "high_order_trace", "surface_partition", "homotopy_sphere_candidate",
    "schoenflies_candidate", "framed_mirror", "trace_json",
]


@dataclass(frozen=True)
class FramedLink:
    """A link diagram with one integer framing per component."""

    diagram: LinkDiagram
    framings: tuple[int, ...]

    def __post_init__(self):
        if len(self.framings) != self.diagram.num_components:
            raise BadComponentIndex(
                f"{len(self.framings)} framings for "
                f"{self.diagram.num_components} components")

    @property
    def components(self) -> int:
        return self.diagram.num_components


@dataclass(frozen=True)
class WeightedPartition:
    """Blocks of component indices, each carrying a genus weight >= 0.
    Blocks are kept sorted by least member, so equal partitions compare
    equal regardless of input order."""

    blocks: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    @staticmethod
    def of(blocks, weights, components: int) -> "WeightedPartition":
        blocks = [tuple(sorted(set(b))) for b in blocks]
        weights = list(weights)
        if len(blocks) != len(weights):
            raise NotAPartition("one weight per block required")
        if any(g < 0 for g in weights):
            raise NotAPartition("genus weights must be nonnegative")
        seen: set[int] = set()
        for b in blocks:
            for i in b:
                if not 0 <= i < components or i in seen:
                    raise NotAPartition(f"blocks do not partition 0..{components - 1}")
                seen.add(i)
        if len(seen) != components:
            raise NotAPartition("blocks do not cover all components")
        order = sorted(range(len(blocks)), key=lambda k: blocks[k][0])
        return WeightedPartition(
            tuple(blocks[k] for k in order),
            tuple(weights[k] for k in order),
        )

    @property
    def block_count(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class HandleDecomposition:
    """Handle counts plus the attaching combinatorics that the toolkit
    actually computes with: Q (framing/linking of 2-handles) and W
    (algebraic winding of 2-handle circles over 1-handles)."""

    handles: tuple[int, int, int, int, int]
    q: tuple[tuple[int, ...], ...]
    w: tuple[tuple[int, ...], ...]
    provenance: str

    @property
    def chi(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.handles))

    def _w_rank(self) -> int:
        if not self.w or not self.w[0]:
            return 0
        _, dmat, _ = smith_normal_form([list(r) for r in self.w])
        return sum(1 for i in range(min(len(dmat), len(dmat[0]))) if dmat[i][i])

    @property
    def b1(self) -> int:
        return self.handles[1] - self._w_rank()

    @property
    def b2(self) -> int:
        # valid in the absence of 3-handles
        return self.handles[2] - self._w_rank()


@dataclass(frozen=True)
class MixedLink:
    """A diagram in a surgered 3-manifold: ``dotted`` components are
    0-framed surgery circles spanning the 1-handles; the remaining
    components carry the listed framings, in component order."""

    diagram: LinkDiagram
    dotted: tuple[int, ...]
    framings: tuple[int, ...]

    def __post_init__(self):
        n = self.diagram.num_components
        if any(not 0 <= i < n for i in self.dotted) or len(set(self.dotted)) != len(self.dotted):
            raise MalformedMixedDiagram(f"bad dotted set {self.dotted}")
        if len(self.framings) != n - len(self.dotted):
            raise MalformedMixedDiagram(
                f"{len(self.framings)} framings for {n - len(self.dotted)} "
                "attaching circles")

    @property
    def attaching(self) -> tuple[int, ...]:
        dotted = set(self.dotted)
        return tuple(i for i in range(self.diagram.num_components) if i not in dotted)

    def winding_matrix(self) -> list[list[int]]:
        """W[j][i] = linking of attaching circle i with dotted circle j,
        the algebraic run-through count over that 1-handle."""
        return [[linking_number(self.diagram, a, dj) for a in self.attaching]
                for dj in self.dotted]


@dataclass(frozen=True)
class KnotifiedLink:
    """Result of knotification: one knot plus surgery circles, with the
    audited framing and winding data."""

    mixed: MixedLink
    knot_component: int
    framing: int
    winding: tuple[int, ...]

    @property
    def surgery_circles(self) -> int:
        return len(self.mixed.dotted)


# ---------------------------------------------------------------------------
# elementary constructions
# ---------------------------------------------------------------------------

def zero_trace(link: FramedLink, provenance: str = "trace") -> HandleDecomposition:
    """2-handles on the 4-ball along the framed link: Q carries framings
    on the diagonal and linking numbers off it."""
    ell = link.components
    q = linking_matrix(link.diagram)
    for i in range(ell):
        q[i][i] = link.framings[i]
    return HandleDecomposition(
        (1, 0, ell, 0, 0),
        tuple(tuple(row) for row in q),
        (),
        provenance,
    )


def boundary_h1(link: FramedLink) -> tuple[int, tuple[int, ...]]:
    """H1 of the surgered boundary 3-manifold: the cokernel of Q as
    (free rank, torsion coefficients)."""
    trace = zero_trace(link)
    return cokernel([list(r) for r in trace.q], ambient_rank=link.components)


def planar_framing_valid(link: FramedLink) -> bool:
    """Whether the framings satisfy t1 + ... + tl = -2 lk(L), the law
    for attaching a single planar surface handle along all components."""
    return sum(link.framings) == -2 * total_linking(link.diagram)


def framed_mirror(link: FramedLink) -> FramedLink:
    """Mirror diagram with negated framings; Q changes sign."""
    return FramedLink(mirror(link.diagram), tuple(-t for t in link.framings))


# ---------------------------------------------------------------------------
# knotification as diagram surgery
# ---------------------------------------------------------------------------

def _clasp_insert(d: LinkDiagram, conn_a: int, conn_b: int):
    """Insert a 0-framed surgery circle clasping the band whose two side
    arcs are conn_a and conn_b.  Returns (diagram, circle edge id, old
    edge -> new edge map)."""

    def build(mirrored: bool):
        b = _thaw(d)
        a1, rest = b.split_edge(conn_a)
        a2, a3 = b.split_edge(rest)
        b1, restb = b.split_edge(conn_b)
        b2, b3 = b.split_edge(restb)
        k = [b.new_edge_id() for _ in range(4)]
        h, t = "h", "t"
        pattern = [
            [(a1, h), (k[1], t), (a2, t), (k[0], h)],
            [(b2, h), (k[1], h), (b3, t), (k[2], t)],
            [(k[2], h), (b1, h), (k[3], t), (b2, t)],
            [(k[3], h), (a3, t), (k[0], t), (a2, h)],
        ]
        if mirrored:
            pattern = [[s[0], s[3], s[2], s[1]] for s in pattern]
        for slots in pattern:
            b.add_crossing(slots)
        frozen = b.freeze()
        emap = dict(b.last_edge_map)
        return frozen, emap[k[0]], emap

    try:
        return build(False)
    except MalformedPD:
        return build(True)


def _arc_current(arc: Arc, emap: dict[int, int], nloops: int) -> Arc:
    """Resolve a band arc against the evolving diagram: edge ids map
    through the accumulated edge map; loop indices (loops being
    interchangeable crossing-free circles) address the current count."""
    if isinstance(arc, tuple):
        kind, idx = arc
        if kind != "loop" or not 0 <= idx < nloops:
            raise BadBands(f"band references missing loop {arc}")
        return arc
    if arc not in emap:
        raise BadBands(f"band references missing edge {arc}")
    return emap[arc]




def _direct_band(d: LinkDiagram, comps: set[int]) -> BandSpec | None:
    """Lexicographically first coherent untwisted band between distinct
    components of ``comps``, when one exists without moving any arcs."""
    ec = d.edge_component()
    n_edge_comps = len(d.components)
    pairs = []
    for walk in face_edge_parities(d):
        for i, (e1, p1) in enumerate(walk):
            for e2, p2 in walk[i + 1:]:
                if p1 != p2 or ec[e1] == ec[e2]:
                    continue
                if ec[e1] in comps and ec[e2] in comps:
                    pairs.append(tuple(sorted((e1, e2))))
    if pairs:
        return BandSpec(*min(pairs))
    # bands involving crossing-free loops are always coherent
    loop_comps = sorted(i for i in comps if i >= n_edge_comps)
    edge_comps = sorted(i for i in comps if i < n_edge_comps)
    if loop_comps and (edge_comps or len(loop_comps) >= 2):
        loop_arc = ("loop", loop_comps[0] - n_edge_comps)
        if edge_comps:
            return BandSpec(loop_arc, d.components[edge_comps[0]][0])
        return BandSpec(loop_arc, ("loop", loop_comps[1] - n_edge_comps))
    # components in different connected pieces can always be joined
    from .linkdiag import _pieces
    piece_of = {}
    for i, piece in enumerate(_pieces(d)):
        for cid in piece:
            piece_of[cid] = i
    reps = [(c, d.components[c][0]) for c in edge_comps]
    for i, (c1, e1) in enumerate(reps):
        p1 = piece_of[d.head_of(e1)[0]]
        for c2, e2 in reps[i + 1:]:
            if piece_of[d.head_of(e2)[0]] != p1:
                return BandSpec(*sorted((e1, e2)))
    return None


def _transport_push(d: LinkDiagram, comps: set[int]):
    """Push an arc of one requested component across the diagram toward
    another, by one honest R2 move; returns (diagram, edge map).

    Used when the components share no face with coherently matched
    orientations: each push moves an arc one face closer (faces adjacent
    across the edge being crossed), and a final push over the target arc
    itself creates a coherent site inside the clasp."""
    from .linkdiag import _r2_insert_mapped, faces

    ec = d.edge_component()
    source = min(c for c in comps if c < len(d.components))
    targets = {c for c in comps if c != source and c < len(d.components)}
    face_edges = []
    for f in faces(d):
        face_edges.append({d.crossings[cid].edges[(s + 1) % 4] for cid, s in f})
    nfaces = len(face_edges)
    dist = [None] * nfaces
    via: list[int | None] = [None] * nfaces
    frontier = []
    for i, es in enumerate(face_edges):
        if any(ec[e] in targets for e in es):
            dist[i] = 0
            frontier.append(i)
    while frontier:
        nxt = []
        for i in frontier:
            for e in face_edges[i]:
                for j in range(nfaces):
                    if dist[j] is None and e in face_edges[j]:
                        dist[j] = dist[i] + 1
                        via[j] = e
                        nxt.append(j)
        frontier = nxt
    candidates = []
    for i, es in enumerate(face_edges):
        if dist[i] is None:
            continue
        for e in sorted(es):
            if ec[e] != source:
                continue
            if dist[i] == 0:
                for x in sorted(es):
                    if ec[x] in targets:
                        candidates.append((0, i, e, x))
                        break
            else:
                candidates.append((dist[i], i, e, via[i]))
    for _, _, e, x in sorted(candidates):
        if e == x:
            continue
        try:
            return _r2_insert_mapped(d, e, x)
        except Exception:
            continue
    raise BadBands(f"components {sorted(comps)} cannot be band-connected")


def _merge_step_auto(d: LinkDiagram, comps: set[int]):
    """Band-and-clasp one pair of the requested components, transporting
    an arc with R2 pushes first when necessary.  Returns the same tuple
    as _knotify_step with the edge map composed over all moves."""
    total = {e: e for e in d.edges}
    reps = {}
    for c in sorted(comps):
        if c < len(d.components):
            reps[c] = d.components[c][0]
    nloops = sum(1 for c in comps if c >= len(d.components))
    for _ in range(4 * len(d.crossings) + 12):
        ec = d.edge_component()
        cur_comps = {ec[total[e]] for e in reps.values()}
        for off in range(nloops):
            cur_comps.add(len(d.components) + off)
        band = _direct_band(d, cur_comps)
        if band is not None:
            d2, circle_edge, knot_edge, emap, loops_used = _knotify_step(d, band)
            total = {e: emap[v] for e, v in total.items() if v in emap}
            return d2, circle_edge, knot_edge, total, loops_used
        d, push_map = _transport_push(d, cur_comps)
        total = {e: push_map[v] for e, v in total.items() if v in push_map}
    raise BadBands(f"band transport did not converge for {sorted(comps)}")


def _clasped_unknot(d: LinkDiagram):
    """Replace two crossing-free loops by their banded merge clasped by
    a surgery circle: a 4-crossing pattern of an unknot through a
    0-framed circle.  Returns (diagram, circle edge, knot edge, map)."""
    from .errors import MalformedPD

    def build(mirrored: bool):
        b = _thaw(d)
        b.loops -= 2
        a2, b2, c1, c2 = (b.new_edge_id() for _ in range(4))
        k = [b.new_edge_id() for _ in range(4)]
        h, t = "h", "t"
        pattern = [
            [(c2, h), (k[1], t), (a2, t), (k[0], h)],
            [(b2, h), (k[1], h), (c2, t), (k[2], t)],
            [(k[2], h), (c1, h), (k[3], t), (b2, t)],
            [(k[3], h), (c1, t), (k[0], t), (a2, h)],
        ]
        if mirrored:
            pattern = [[s[0], s[3], s[2], s[1]] for s in pattern]
        for slots in pattern:
            b.add_crossing(slots)
        frozen = b.freeze()
        emap = dict(b.last_edge_map)
        return frozen, emap[k[0]], emap[a2], emap

    try:
        return build(False)
    except MalformedPD:
        return build(True)


def _knotify_step(d: LinkDiagram, band: BandSpec):
    """One band merge plus clasping circle.  Returns (diagram, circle
    edge id, merged-component representative edge, old-edge map, loops
    consumed)."""
    loop_a = isinstance(band.arc_a, tuple)
    loop_b = isinstance(band.arc_b, tuple)
    if loop_a and loop_b:
        if band.arc_a[1] == band.arc_b[1]:
            raise SameComponent("band endpoints on one loop")
        merged, circle_edge, knot_edge, emap = _clasped_unknot(d)
        return merged, circle_edge, knot_edge, emap, 2
    if loop_a or loop_b:
        edge = band.arc_b if loop_a else band.arc_a
        b = _thaw(d)
        b.loops -= 1
        intermediate = b.freeze()
        emap0 = dict(b.last_edge_map)
        merged, circle_edge, emap1 = _clasp_detour(intermediate, emap0[edge])
        emap = {e: emap1[v] for e, v in emap0.items() if v in emap1}
        return merged, circle_edge, emap[edge], emap, 1
    merged, arcs, emap0 = _band_merge_full(d, band)
    conn_a = arcs[0]
    last_exc = None
    for conn_b in arcs[1:]:
        try:
            merged2, circle_edge, emap1 = _clasp_insert(merged, conn_a, conn_b)
        except MalformedPD as exc:
            last_exc = exc
            continue
        emap = {e: emap1[v] for e, v in emap0.items() if v in emap1}
        knot_edge = emap1[conn_a]
        return merged2, circle_edge, knot_edge, emap, 0
    raise InternalInvariantError(f"no clasp placement fits the band: {last_exc}")


def _clasp_detour(d: LinkDiagram, edge: int):
    """Split an edge and send it on a detour through a clasping circle:
    the loop-to-edge band merge followed by the surgery circle."""
    from .errors import MalformedPD

    def build(mirrored: bool):
        b = _thaw(d)
        g1, g2 = b.split_edge(edge)
        a2, b2, c1 = (b.new_edge_id() for _ in range(3))
        k = [b.new_edge_id() for _ in range(4)]
        h, t = "h", "t"
        pattern = [
            [(g1, h), (k[1], t), (a2, t), (k[0], h)],
            [(b2, h), (k[1], h), (g2, t), (k[2], t)],
            [(k[2], h), (c1, h), (k[3], t), (b2, t)],
            [(k[3], h), (c1, t), (k[0], t), (a2, h)],
        ]
        if mirrored:
            pattern = [[s[0], s[3], s[2], s[1]] for s in pattern]
        for slots in pattern:
            b.add_crossing(slots)
        frozen = b.freeze()
        emap = dict(b.last_edge_map)
        return frozen, emap[k[0]], emap

    try:
        return build(False)
    except MalformedPD:
        return build(True)


def knotify(link: FramedLink, bands: list[BandSpec] | None = None) -> KnotifiedLink:
    """Merge all components with l-1 oriented bands and clasp each band
    with a 0-framed surgery circle.

    The knot framing is sum(t_i) + 2 lk(L); the winding vector over the
    surgery circles is computed from the final diagram and must vanish.
    Band arcs are read against the evolving diagram (original edge ids
    persist through merges as their tail halves)."""
    d = link.diagram
    ell = link.components
    if bands is not None and len(bands) != ell - 1:
        raise BadBands(f"need {ell - 1} bands, got {len(bands)}")
    emap = {e: e for e in d.edges}
    circle_edges: list[int] = []
    cur = d
    for step in range(ell - 1):
        ec = cur.edge_component()
        taken = {ec[e] for e in circle_edges}
        if bands is not None:
            band = bands[step]
            arc_a = _arc_current(band.arc_a, emap, cur.loops)
            arc_b = _arc_current(band.arc_b, emap, cur.loops)
            for arc in (arc_a, arc_b):
                if not isinstance(arc, tuple) and ec[arc] in taken:
                    raise BadBands("band touches a surgery circle")
            band = BandSpec(arc_a, arc_b, band.framing, band.coherent)
            try:
                cur, circle_edge, _, step_map, _ = _knotify_step(cur, band)
            except (SameComponent, OrientationConflict, BadComponentIndex) as exc:
                raise BadBands(str(exc)) from exc
        else:
            mergeable = set(range(cur.num_components)) - taken
            cur, circle_edge, _, step_map, _ = _merge_step_auto(cur, mergeable)
        emap = {e: step_map[v] for e, v in emap.items() if v in step_map}
        circle_edges = [step_map[e] for e in circle_edges]
        circle_edges.append(circle_edge)
    ec = cur.edge_component()
    circle_comps = sorted(ec[e] for e in circle_edges)
    if len(set(circle_comps)) != ell - 1:
        raise InternalInvariantError("wrong number of surgery circles")
    knot_candidates = [i for i in range(cur.num_components) if i not in circle_comps]
    if len(knot_candidates) != 1:
        raise BadBands("bands do not merge the link to one component")
    knot = knot_candidates[0]
    winding = tuple(linking_number(cur, knot, j) for j in circle_comps)
    if any(winding):
        raise InternalInvariantError(f"knotified circle is not null-homologous: {winding}")
    framing = sum(link.framings) + 2 * total_linking(d)
    mixed = MixedLink(cur, tuple(circle_comps), (framing,))
    return KnotifiedLink(mixed, knot, framing, winding)


# ---------------------------------------------------------------------------
# high order traces
# ---------------------------------------------------------------------------

def _commutator_word(genus: int, base: int) -> list[int]:
    """Attaching word of a genus handle over its 2g dotted circles:
    product of commutators, recorded as signed generator indices."""
    word = []
    for g in range(genus):
        a, b = base + 2 * g, base + 2 * g + 1
        word += [a + 1, b + 1, -(a + 1), -(b + 1)]
    return word


def high_order_trace(link: FramedLink, partition: WeightedPartition,
                     provenance: str = "high_order_trace") -> HandleDecomposition:
    """Attach one planar handle along each block (via its knotification)
    and add the genus weights as extra 1-handle pairs.

    Preconditions: each block satisfies the planar framing law
    sum_{i in block} t_i = -2 lk(block).  The winding matrix is audited:
    band circles from the per-block knotifications performed in the full
    diagram, genus rows from the commutator attaching words."""
    d = link.diagram
    ell = link.components
    part = WeightedPartition.of(partition.blocks, partition.weights, ell)
    lkm = linking_matrix(d)
    for block in part.blocks:
        internal = sum(lkm[i][j] for i in block for j in block if i < j)
        total = sum(link.framings[i] for i in block)
        if total != -2 * internal:
            raise InvalidBlockFraming(
                f"block {block}: framings sum to {total}, need {-2 * internal}")

    # knotify every block inside the ambient diagram; representatives
    # are kept as current-diagram edge ids (bare loops as counts, since
    # crossing-free circles are interchangeable)
    cur = d
    block_loops = [sum(1 for i in block if i >= len(d.components))
                   for block in part.blocks]
    block_edges = [[d.components[i][0] for i in block if i < len(d.components)]
                   for block in part.blocks]
    circle_edges: list[list[int]] = [[] for _ in part.blocks]

    for bi, block in enumerate(part.blocks):
        while True:
            ec = cur.edge_component()
            comps_now = {ec[e] for e in block_edges[bi]}
            if len(comps_now) + block_loops[bi] <= 1:
                break
            candidates = set(comps_now)
            for off in range(block_loops[bi]):
                candidates.add(len(cur.components) + off)
            cur, circle_edge, knot_edge, step_map, loops_used = \
                _merge_step_auto(cur, candidates)
            block_loops[bi] -= loops_used
            for lst in circle_edges:
                lst[:] = [step_map[e] for e in lst]
            for bj in range(part.block_count):
                block_edges[bj] = [step_map[e] for e in block_edges[bj] if e in step_map]
            circle_edges[bi].append(circle_edge)
            block_edges[bi].append(knot_edge)

    ec = cur.edge_component()
    knot_comp: dict[int, int] = {}
    loop_cursor = len(cur.components)
    for bi in range(part.block_count):
        if block_edges[bi]:
            knot_comp[bi] = ec[block_edges[bi][0]]
        else:
            # the block knotified to a bare loop (or was one); bare loops
            # are interchangeable, so hand out positions in block order
            if block_loops[bi] != 1:
                raise InternalInvariantError("block lost its loop count")
            knot_comp[bi] = loop_cursor
            loop_cursor += 1

    # audit: every knotified circle is null-homologous over every handle
    w_rows = []
    for bi in range(part.block_count):
        for e in circle_edges[bi]:
            row = [linking_number(cur, ec[e], knot_comp[bj])
                   if knot_comp[bj] != ec[e] else 0
                   for bj in range(part.block_count)]
            w_rows.append(row)
    if any(any(row) for row in w_rows):
        raise InternalInvariantError("knotified attaching circles wind over band circles")
    # genus rows: abelianized commutator words vanish by computation
    genus_rows = []
    base = 0
    for bi, g in enumerate(part.weights):
        word = _commutator_word(g, base)
        for local in range(2 * g):
            gen = base + local + 1
            exponent = sum(1 if x == gen else -1 if x == -gen else 0 for x in word)
            row = [0] * part.block_count
            row[bi] = exponent
            genus_rows.append(row)
        base += 2 * g

    # audited Q: pairwise linking of the knotifications equals the
    # cross-block linking sums
    k = part.block_count
    q = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            got = linking_number(cur, knot_comp[a], knot_comp[b])
            expected = sum(lkm[i][j] for i in part.blocks[a] for j in part.blocks[b])
            if got != expected:
                raise InternalInvariantError(
                    f"knotified linking {got} != cross-block sum {expected}")
            q[a][b] = q[b][a] = got

    h1 = sum(2 * g + len(b) - 1 for g, b in zip(part.weights, part.blocks))
    w = tuple(tuple(row) for row in (w_rows + genus_rows))
    return HandleDecomposition((1, h1, k, 0, 0), tuple(tuple(r) for r in q), w, provenance)


def surface_partition(d: LinkDiagram, pieces) -> tuple[WeightedPartition, tuple]:
    """Weighted partition induced by a bounding surface given as
    (genus, boundary component set) pieces, together with the framing
    constraint sum(t) = -2 lk(block) each block must satisfy."""
    part = WeightedPartition.of([p[1] for p in pieces], [p[0] for p in pieces],
                                d.num_components)
    lkm = linking_matrix(d)
    constraints = tuple(
        (block, -2 * sum(lkm[i][j] for i in block for j in block if i < j))
        for block in part.blocks
    )
    return part, constraints


# ---------------------------------------------------------------------------
# candidate checks
# ---------------------------------------------------------------------------

PASS_NECESSARY = "pass-necessary"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TraceVerdict:
    status: str
    checks: tuple[str, ...]
    data: tuple[tuple[str, object], ...] = ()

    def as_dict(self) -> dict:
        return {"status": self.status, "checks": list(self.checks),
                "data": {k: v for k, v in self.data}}


def homotopy_sphere_candidate(link: FramedLink) -> TraceVerdict:
    """Necessary conditions for the closed-up trace to be a homotopy
    4-sphere: all framings zero and Q = 0, so that the boundary has free
    first homology of full rank.  Passing never decides the boundary's
    diffeomorphism type."""
    n = link.components
    trace = zero_trace(link)
    checks = []
    failures = []
    if all(t == 0 for t in link.framings):
        checks.append("all framings are zero")
    else:
        failures.append(f"nonzero framings {link.framings}")
    if all(all(x == 0 for x in row) for row in trace.q):
        checks.append("framing-linking matrix Q vanishes")
    else:
        failures.append("Q is nonzero")
    rank, torsion = cokernel([list(r) for r in trace.q], ambient_rank=n)
    if rank == n and not torsion:
        checks.append(f"H1 of the boundary is free of rank {n}")
    else:
        failures.append(f"coker(Q) = (rank {rank}, torsion {torsion}) != Z^{n}")
    if failures:
        return TraceVerdict(FAIL, tuple(checks + failures))
    chi_closed = 1 - 0 + n - n + 1
    b2_closed = n - n
    checks.append(f"closed-up Euler characteristic recomputed: {chi_closed}")
    checks.append(f"b2 of the closed-up manifold recomputed: {b2_closed}")
    checks.append("necessary conditions passed; whether the boundary is "
                  "a connected sum of S1 x S2 is not decided")
    return TraceVerdict(
        PASS_NECESSARY, tuple(checks),
        (("chi_closed", chi_closed), ("b2_closed", b2_closed),
         ("h1_rank", rank)),
    )


def schoenflies_candidate(mixed: MixedLink) -> TraceVerdict:
    """Necessary conditions for a mixed diagram (k dotted circles, n
    attaching circles) to close up to a standard 4-sphere candidate:
    n >= 2k, vanishing abelianized fundamental group, and the Euler
    bookkeeping.  Never asserts a diffeomorphism."""
    k = len(mixed.dotted)
    n = len(mixed.attaching)
    checks = []
    failures = []
    if n >= 2 * k:
        checks.append(f"n = {n} >= 2k = {2 * k}")
    else:
        failures.append(f"n = {n} < 2k = {2 * k}")
    w = mixed.winding_matrix()
    rank, torsion = cokernel(w, ambient_rank=k)
    if rank == 0 and not torsion:
        checks.append("coker of the winding matrix vanishes "
                      "(abelianized simple connectivity)")
    else:
        failures.append(f"coker(W) = (rank {rank}, torsion {torsion}) != 0")
    if failures:
        return TraceVerdict(FAIL, tuple(checks + failures))
    chi_closed = 1 - k + n - (n - k) + 1
    checks.append(f"closed-up Euler characteristic with {n - k} 3-handles: {chi_closed}")
    flags = []
    if k == 0 and n == 1:
        flags.append("knot case: only the unknot qualifies")
    checks.extend(flags)
    checks.append("necessary conditions passed; no diffeomorphism asserted")
    return TraceVerdict(
        PASS_NECESSARY, tuple(checks),
        (("chi_closed", chi_closed), ("three_handles", n - k)),
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def trace_json(h: HandleDecomposition,
               boundary: tuple[int, tuple[int, ...]] | None = None,
               verdicts: tuple[TraceVerdict, ...] = ()) -> str:
    out = {
        "construction": h.provenance,
        "handles": list(h.handles),
        "Q": [list(r) for r in h.q],
        "W": [list(r) for r in h.w],
        "chi": h.chi,
        "b1": h.b1,
        "b2": h.b2,
        "boundary_h1": (
            {"rank": boundary[0], "torsion": list(boundary[1])}
            if boundary is not None else None
        ),
        "verdicts": [v.as_dict() for v in verdicts],
    }
    return json.dumps(out, sort_keys=True)
