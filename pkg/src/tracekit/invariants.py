"""Classical diagram invariants and sliceness obstructions.

The link signature is computed by two fully independent engines: the
symmetrized Seifert matrix of a braid-form presentation, and the Goeritz
form of a checkerboard shading corrected by the crossing types
(Gordon-Litherland).  Their agreement is enforced by the test suite, and
the Goeritz route itself is computed from both shadings and compared.

For connected alternating diagrams the concordance invariant tau is
(l - 1 - sigma)/2, calibrated so the right-handed trefoil has tau = 1;
it bounds the slice genus via tau <= g4 + l - 1, which is the engine
behind the planar-surface obstruction reports.
"""

import json
from dataclasses import dataclass

from .errors import (
    DisconnectedDiagram,
    InternalInvariantError,
    NotAlternating,
    ParityViolation,
)
from .exactlinalg import det_int, signature_symmetric
from .linkdiag import LinkDiagram, _pieces, faces, is_alternating, is_connected
from .seifert import SeifertData, seifert


def _symmetrized(data: SeifertData) -> list[list[int]]:
    v = data.seifert_matrix
    n = len(v)
    return [[v[i][j] + v[j][i] for j in range(n)] for i in range(n)]


def signature_seifert(d: LinkDiagram) -> int:
    """Signature of V + V^T for a Seifert matrix V of the link."""
    return signature_symmetric(_symmetrized(seifert(d)))


def determinant(d: LinkDiagram) -> int:
    """|det(V + V^T)|, the link determinant."""
    return abs(det_int(_symmetrized(seifert(d))))


# ---------------------------------------------------------------------------
# Goeritz / Gordon-Litherland engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GoeritzData:
    """Goeritz matrix of one checkerboard shading plus the correction
    term from crossings whose type matches the shading."""

    matrix: tuple[tuple[int, ...], ...]
    correction: int
    shading: int  # 0 or 1, which color class of faces was used


def _checkerboard_edges(d: LinkDiagram):
    """Edges of the two shading graphs: each crossing joins its opposite
    face corners, (0,2) with weight +1 and (1,3) with weight -1."""
    face_of = {}
    for i, f in enumerate(faces(d)):
        for corner in f:
            face_of[corner] = i
    edges = []
    for c in d.crossings:
        edges.append((face_of[(c.id, 0)], face_of[(c.id, 2)], 1, c.sign))
        edges.append((face_of[(c.id, 1)], face_of[(c.id, 3)], -1, c.sign))
    return edges


def goeritz_data(d: LinkDiagram) -> tuple[GoeritzData, GoeritzData]:
    """Both shadings' Goeritz data for a connected diagram."""
    if not is_connected(d):
        raise DisconnectedDiagram("Goeritz form needs a connected diagram")
    edges = _checkerboard_edges(d)
    vertices = sorted({v for a, b, _, _ in edges for v in (a, b)})
    # the white/black classes are the two components of the union graph
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _, _ in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    classes = sorted({find(v) for v in vertices})
    if d.crossings and len(classes) != 2:
        raise InternalInvariantError(f"{len(classes)} shading classes")

    out = []
    for shading, root in enumerate(classes):
        verts = sorted(v for v in vertices if find(v) == root)
        index = {v: i for i, v in enumerate(verts)}
        n = len(verts)
        g = [[0] * n for _ in range(n)]
        correction = 0
        for a, b, weight, crossing_sign in edges:
            if find(a) != root:
                continue
            if weight == crossing_sign:
                correction += weight
            if a == b:
                continue
            i, j = index[a], index[b]
            g[i][j] += weight
            g[j][i] += weight
        for i in range(n):
            g[i][i] = -sum(g[i][j] for j in range(n) if j != i)
        reduced = [row[1:] for row in g[1:]]
        out.append(GoeritzData(tuple(tuple(r) for r in reduced), correction, shading))
    return tuple(out)


def signature_gl(d: LinkDiagram) -> int:
    """Link signature via the Goeritz form and its crossing-type
    correction; computed from both shadings, which must agree."""
    if not d.crossings:
        if not is_connected(d):
            raise DisconnectedDiagram("signature needs a connected diagram")
        return 0
    values = []
    for gd in goeritz_data(d):
        values.append(-(signature_symmetric([list(r) for r in gd.matrix]) + gd.correction))
    if values[0] != values[1]:
        raise InternalInvariantError(
            f"shadings disagree on the signature: {values}"
        )
    return values[0]


def determinant_goeritz(d: LinkDiagram) -> int:
    """|det| of the Goeritz matrix; equals the link determinant and
    serves as the independent oracle for ``determinant``."""
    if not d.crossings:
        if not is_connected(d):
            raise DisconnectedDiagram("determinant needs a connected diagram")
        return 1
    gd = goeritz_data(d)[0]
    return abs(det_int([list(r) for r in gd.matrix]))


# ---------------------------------------------------------------------------
# tau and slice-genus bounds
# ---------------------------------------------------------------------------

def tau_alternating(d: LinkDiagram) -> int:
    """tau = (l - 1 - sigma)/2 for a connected alternating diagram,
    normalized so the right-handed trefoil has tau = +1."""
    if not is_connected(d):
        raise DisconnectedDiagram("tau formula needs a connected diagram")
    if not is_alternating(d):
        raise NotAlternating("tau formula is only licensed on alternating diagrams")
    ell = d.num_components
    sigma = signature_gl(d)
    if (ell - 1 - sigma) % 2:
        raise ParityViolation(f"l - 1 - sigma = {ell - 1 - sigma} is odd")
    return (ell - 1 - sigma) // 2


def g4_lower_bound(d: LinkDiagram) -> int:
    """max(0, tau - l + 1): a lower bound for the slice genus, from the
    bound tau <= g4 + l - 1."""
    return max(0, tau_alternating(d) - d.num_components + 1)


def chi4_g4_convert(ell: int, g_renormalized: int | None = None,
                    chi4: int | None = None) -> tuple[int, bool]:
    """Convert between the renormalized genus G4 and the maximal
    4-dimensional Euler characteristic via 2*G4 - l = -chi4.

    Returns (the other quantity, slice flag); the flag records chi4 = l,
    which holds exactly for smoothly slice links."""
    if (g_renormalized is None) == (chi4 is None):
        raise ValueError("pass exactly one of g_renormalized, chi4")
    if g_renormalized is not None:
        chi = ell - 2 * g_renormalized
        return chi, chi == ell
    g = (ell - chi4) // 2
    if ell - chi4 != 2 * g:
        raise ParityViolation(f"chi4 = {chi4} has wrong parity for l = {ell}")
    return g, chi4 == ell


# ---------------------------------------------------------------------------
# verdicts and reports
# ---------------------------------------------------------------------------

OBSTRUCTION_FOUND = "ObstructionFound"
NO_OBSTRUCTION = "NoObstruction"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    claim: str
    rule: str
    anchor: str

    def as_dict(self) -> dict:
        return {"claim": self.claim, "rule": self.rule, "anchor": self.anchor}


@dataclass(frozen=True)
class PlanarVerdict:
    status: str
    chain: tuple[Verdict, ...] = ()

    def as_dicts(self) -> list[dict]:
        return [v.as_dict() for v in self.chain]


def planar_obstruction(d: LinkDiagram) -> PlanarVerdict:
    """Obstruct a planar (genus zero) surface in the 4-ball via tau, and
    propagate to the knotification's H-sliceness.

    Crossing-free unlink diagrams visibly bound disjoint disks; other
    diagrams need l >= 2 and the tau formula's hypotheses, else Unknown.
    """
    if not d.crossings:
        return PlanarVerdict(NO_OBSTRUCTION, (
            Verdict("components bound disjoint embedded disks",
                    "crossingless-unlink", "split unlink diagrams are slice"),
        ))
    if d.num_components < 2 or not is_connected(d) or not is_alternating(d):
        return PlanarVerdict(UNKNOWN, (
            Verdict("tau formula hypotheses not met (need a connected "
                    "alternating diagram with l >= 2)",
                    "tau-hypotheses", "tau = (l - 1 - sigma)/2 on alternating links"),
        ))
    ell = d.num_components
    tau = tau_alternating(d)
    g4lb = max(0, tau - ell + 1)
    base = (
        Verdict("connected alternating diagram: treated as non-split",
                "connected-alternating-nonsplit",
                "a connected alternating diagram presents a non-split link"),
        Verdict(f"tau = (l - 1 - sigma)/2 = {tau}",
                "tau-from-signature", "tau = (l - 1 - sigma)/2"),
        Verdict(f"slice genus bound: g4 >= tau - l + 1 = {tau - ell + 1}",
                "tau-slice-genus-bound", "tau <= g4 + l - 1"),
    )
    if g4lb >= 1:
        chain = base + (
            Verdict("no planar surface in the 4-ball (g4 >= 1)",
                    "planar-surface-obstruction",
                    "g4 = 0 iff the link bounds a planar surface"),
            Verdict("knotification is not smoothly H-slice in S2xD2 "
                    "boundary sums",
                    "knotification-H-slice-criterion",
                    "planar surface in X iff knotification H-slice in "
                    "X natural-sum l copies of S2xD2"),
        )
        return PlanarVerdict(OBSTRUCTION_FOUND, chain)
    return PlanarVerdict(NO_OBSTRUCTION, base + (
        Verdict("tau gives no obstruction to a planar surface",
                "planar-surface-obstruction", "g4 bound is zero"),
    ))


@dataclass(frozen=True)
class ObstructionReport:
    name: str
    components: int
    sigma: int
    det: int
    tau: int | None
    g4_lower_bound: int
    chi4_upper_bound: int
    g4_renormalized_lower_bound: int
    verdicts: tuple[Verdict, ...]

    def as_dict(self) -> dict:
        return {
            "link": self.name,
            "l": self.components,
            "sigma": self.sigma,
            "det": self.det,
            "tau": self.tau,
            "g4_lb": self.g4_lower_bound,
            "chi4_ub": self.chi4_upper_bound,
            "G4_lb": self.g4_renormalized_lower_bound,
            "verdicts": [v.as_dict() for v in self.verdicts],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def split_pieces(d: LinkDiagram) -> list[LinkDiagram]:
    """Connected pieces of a diagram as stand-alone diagrams, loops
    last, each in canonical form."""
    from .linkdiag import _Builder, _thaw

    out = []
    for piece in _pieces(d):
        b = _thaw(d)
        b.loops = 0
        b.cross = {cid: slots for cid, slots in b.cross.items() if cid in piece}
        out.append(b.freeze())
    for _ in range(d.loops):
        b = _Builder()
        b.loops = 1
        out.append(b.freeze())
    return out


def obstruction_report(d: LinkDiagram, name: str | None = None) -> ObstructionReport:
    """Full invariant and verdict report; disconnected diagrams are
    combined per piece (sigma additive, det multiplicative) and flagged."""
    label = name if name is not None else (d.name or "")
    ell = d.num_components
    verdicts: list[Verdict] = []
    if is_connected(d):
        sigma = signature_gl(d)
        det = determinant(d)
        try:
            tau = tau_alternating(d)
        except NotAlternating:
            tau = None
    else:
        pieces = split_pieces(d)
        sigma = sum(signature_gl(p) for p in pieces)
        det = 1
        for p in pieces:
            det *= determinant(p)
        tau = None
        verdicts.append(Verdict(
            f"split diagram: sigma summed and det multiplied over "
            f"{len(pieces)} pieces",
            "split-combination",
            "sigma additive and det multiplicative under split union "
            "(a split link's own determinant vanishes)"))
    if tau is not None:
        g4lb = max(0, tau - ell + 1)
        verdicts.append(Verdict(f"tau = {tau}", "tau-from-signature",
                                "tau = (l - 1 - sigma)/2"))
    else:
        g4lb = 0
        verdicts.append(Verdict("tau unavailable: trivial genus bound",
                                "tau-hypotheses",
                                "tau needs a connected alternating diagram"))
    g4_renorm = 1 if g4lb >= 1 else 0
    chi4_ub = ell - 2 * g4_renorm
    verdicts.append(Verdict(
        f"chi4 <= {chi4_ub} (and chi4 <= l = {ell} always, with equality "
        f"iff slice)",
        "chi4-g4-conversion", "2*G4 - l = -chi4"))
    planar = planar_obstruction(d)
    verdicts.append(Verdict(f"planar-surface verdict: {planar.status}",
                            "planar-obstruction-summary", "see chain"))
    verdicts.extend(planar.chain)
    return ObstructionReport(
        label, ell, sigma, det, tau, g4lb, chi4_ub, g4_renorm,
        tuple(verdicts),
    )
