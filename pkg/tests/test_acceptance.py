"""Acceptance criteria, one test per criterion.

Each test prints a single [PASS] line (visible under ``pytest -s``);
any assertion failure marks the criterion failed.  Randomized criteria
honor TRACEKIT_SEED.
"""

import itertools
import json
import random
import time

from conftest import base_seed, random_connected_diagram, random_moves
from tracekit import cli
from tracekit import linkdiag as ld
from tracekit import traces as tr
from tracekit.invariants import (
    OBSTRUCTION_FOUND,
    determinant,
    g4_lower_bound,
    obstruction_report,
    planar_obstruction,
    signature_gl,
    signature_seifert,
    tau_alternating,
)


def _report(criterion, detail, t0):
    print(f"[PASS] criterion {criterion}: {detail} ({time.perf_counter() - t0:.2f}s)")


def test_criterion_1_twist_family_reproduction():
    t0 = time.perf_counter()
    for n in (0, -1, -2, -3):
        d = ld.catalog("twist_family", n)
        assert ld.is_connected(d), f"L_{n} not connected"
        assert ld.is_alternating(d), f"L_{n} not alternating"
        assert tau_alternating(d) == 2, f"tau(L_{n}) != 2"
        assert g4_lower_bound(d) == 1, f"g4 bound of L_{n} != 1"
        assert planar_obstruction(d).status == OBSTRUCTION_FOUND
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"criterion 1 took {elapsed:.2f}s (budget 1s)"
    _report(1, "twist family n=0..-3: connected alternating, tau=2, "
               "g4>=1, obstruction found", t0)


def test_criterion_2_dual_oracle_signature():
    t0 = time.perf_counter()
    connected_entries = [
        ("unknot", None), ("hopf", "+"), ("hopf", "-"), ("trefoil", "+"),
        ("trefoil", "-"), ("figure8", None), ("whitehead", None),
        ("borromean", None), ("twist_family", 0), ("twist_family", -1),
        ("twist_family", -2), ("twist_family", -3), ("twist_family", 1),
        ("twist_family", 2),
    ]
    for name, param in connected_entries:
        d = ld.catalog(name, param)
        s = signature_gl(d)
        assert s == signature_seifert(d), f"engines disagree on {d.name}"
        assert signature_gl(ld.mirror(d)) == -s
    rng = random.Random(base_seed() + 2)
    for i in range(1000):
        d = random_connected_diagram(rng, max_crossings=8)
        s = signature_gl(d)
        assert s == signature_seifert(d), \
            f"engines disagree on random #{i}: {ld.serialize_pd(d)}"
        assert signature_gl(ld.mirror(d)) == -s
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"criterion 2 took {elapsed:.2f}s (budget 30s)"
    _report(2, "Goeritz and Seifert signatures agree on the catalog and "
               "1000 random diagrams; mirrors negate", t0)


def test_criterion_3_knotify_framing_law():
    t0 = time.perf_counter()
    rng = random.Random(base_seed() + 3)
    checked = 0
    while checked < 200:
        d = random_connected_diagram(rng, max_crossings=7)
        if rng.random() < 0.2:
            d = ld.parse_pd(ld.serialize_pd(d) + ", O", d.name)
        ell = d.num_components
        framings = tuple(rng.randrange(-4, 5) for _ in range(ell))
        link = tr.FramedLink(d, framings)
        kn = tr.knotify(link)
        expected = sum(framings) + 2 * ld.total_linking(d)
        assert kn.framing == expected
        assert (kn.framing == 0) == tr.planar_framing_valid(link)
        assert kn.winding == (0,) * (ell - 1)
        checked += 1
    _report(3, "knotified framing equals sum(t) + 2 lk on 200 random framed "
               "links, zero exactly under the planar law, winding zero", t0)


def test_criterion_4_chi_formulas():
    t0 = time.perf_counter()
    rng = random.Random(base_seed() + 4)
    # chi of plain traces
    for name, param in [("unknot", None), ("hopf", "+"), ("borromean", None),
                        ("unlink", 4), ("twist_family", 0)]:
        d = ld.catalog(name, param)
        ell = d.num_components
        fr = tuple(rng.randrange(-3, 4) for _ in range(ell))
        assert tr.zero_trace(tr.FramedLink(d, fr)).chi == 1 + ell

    def block_framings(d, part):
        lkm = ld.linking_matrix(d)
        fr = [0] * d.num_components
        for block in part.blocks:
            internal = sum(lkm[i][j] for i in block for j in block if i < j)
            fr[block[0]] = -2 * internal
        return tuple(fr)

    def all_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in all_partitions(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
            yield [[first]] + sub

    catalog_links = [ld.catalog(n, p) for n, p in
                     [("unknot", None), ("hopf", "+"), ("trefoil", "+"),
                      ("whitehead", None), ("borromean", None),
                      ("twist_family", 0), ("unlink", 4)]]
    checked = 0
    for d in catalog_links:
        ell = d.num_components
        for blocks in all_partitions(list(range(ell))):
            for weights in itertools.product(range(3), repeat=len(blocks)):
                part = tr.WeightedPartition.of(blocks, weights, ell)
                link = tr.FramedLink(d, block_framings(d, part))
                h = tr.high_order_trace(link, part)
                expected = 1 + sum(2 - 2 * g - len(b)
                                   for g, b in zip(part.weights, part.blocks))
                assert h.chi == expected
                # single planar handle and genus handle special cases
                if len(part.blocks) == 1 and part.weights[0] == 0:
                    assert h.chi == 3 - ell
                if ell == 1 and len(part.blocks) == 1:
                    assert h.chi == 2 - 2 * part.weights[0]
                # block-order invariance
                perm = list(range(len(blocks)))
                rng.shuffle(perm)
                shuffled = tr.WeightedPartition.of(
                    [blocks[k] for k in perm], [weights[k] for k in perm], ell)
                assert tr.high_order_trace(link, shuffled) == h
                checked += 1
    _report(4, f"chi formulas and block-permutation invariance over "
               f"{checked} (link, partition, weights) cases", t0)


def test_criterion_5_homotopy_sphere_conditions():
    t0 = time.perf_counter()
    from tracekit.exactlinalg import cokernel
    for n in range(1, 6):
        link = tr.FramedLink(ld.catalog("unlink", n), (0,) * n)
        v = tr.homotopy_sphere_candidate(link)
        assert v.status == tr.PASS_NECESSARY
        data = dict(v.data)
        assert data["chi_closed"] == 2 and data["b2_closed"] == 0
        assert cokernel([[0] * n for _ in range(n)]) == (n, ())
        assert tr.boundary_h1(link) == (n, ())
    assert tr.homotopy_sphere_candidate(
        tr.FramedLink(ld.catalog("hopf", "+"), (0, 0))).status == tr.FAIL
    assert tr.homotopy_sphere_candidate(
        tr.FramedLink(ld.catalog("unknot"), (1,))).status == tr.FAIL
    assert tr.homotopy_sphere_candidate(
        tr.FramedLink(ld.catalog("unlink", 3), (0, 2, 0))).status == tr.FAIL
    _report(5, "0-framed unlinks up to 5 components pass with chi=2, b2=0; "
               "Hopf and nonzero framings fail", t0)


def test_criterion_6_calibration_anchors():
    t0 = time.perf_counter()
    from tracekit.seifert import seifert
    assert tau_alternating(ld.catalog("unknot")) == 0
    tref = ld.catalog("trefoil", "+")
    assert tau_alternating(tref) == 1
    assert signature_gl(tref) == -2
    assert determinant(tref) == 3
    assert determinant(ld.catalog("figure8")) == 5
    hopf = ld.catalog("hopf", "+")
    assert seifert(hopf).surface_euler == 0  # annulus
    for n in (0, -1, -2, -3):
        d = ld.catalog("twist_family", n)
        merged = ld.band_merge(d, ld.twist_family_merge_band(n))
        assert merged.num_components == 1
        assert signature_gl(merged) == -2
        assert determinant(merged) == 3
    _report(6, "tau/sigma/det anchors and twist-family merges carry "
               "right-trefoil invariants", t0)


def test_criterion_7_robustness():
    t0 = time.perf_counter()
    rng = random.Random(base_seed() + 7)
    for i in range(500):
        d = random_connected_diagram(rng, max_crossings=7)
        sigma = signature_gl(d)
        det = determinant(d)
        ell = d.num_components
        lks = sorted(x for row in ld.linking_matrix(d) for x in row)
        try:
            tau = tau_alternating(d)
        except Exception:
            tau = None
        moved = random_moves(rng, d, rng.randrange(1, 5), max_crossings=9)
        assert moved.num_components == ell
        assert signature_gl(moved) == sigma, f"sigma changed on #{i}"
        assert determinant(moved) == det, f"det changed on #{i}"
        assert sorted(x for row in ld.linking_matrix(moved) for x in row) == lks
        if tau is not None and ld.is_alternating(moved):
            assert tau_alternating(moved) == tau
        # parse/serialize round trip
        assert ld.parse_pd(ld.serialize_pd(moved), moved.name) == moved
    # batch determinism, byte for byte
    import tempfile, os
    with tempfile.TemporaryDirectory() as tmp:
        manifest = os.path.join(tmp, "m.json")
        with open(manifest, "w") as fh:
            json.dump({"entries": [{"catalog": "twist_family:0"},
                                   {"catalog": "twist_family:-1"},
                                   {"catalog": "twist_family:-2"}]}, fh)
        out1 = os.path.join(tmp, "r1.json")
        out2 = os.path.join(tmp, "r2.json")
        assert cli.main(["batch", manifest, "--out", out1]) == 0
        assert cli.main(["batch", manifest, "--out", out2]) == 0
        b1 = open(out1, "rb").read()
        assert b1 == open(out2, "rb").read()
        rows = json.loads(b1)["rows"]
        assert all(r["report"]["tau"] == 2 for r in rows)
    _report(7, "sigma/det/lk/tau invariant under 500 random move sequences; "
               "round trips exact; batch reruns byte-identical", t0)
