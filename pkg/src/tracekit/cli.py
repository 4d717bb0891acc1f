"""Command-line front end: JSON-first reports over the library.

Exit codes: 0 success, 2 malformed input, 3 precondition violation,
4 internal invariant breach (always a bug).  Identical inputs produce
byte-identical reports; batch rows follow manifest order.  The test
suite honors TRACEKIT_SEED for reproducing randomized property checks.
"""

import argparse
import json
import sys

from . import linkdiag, traces
from .errors import InputError, InternalInvariantError, PreconditionError
from .invariants import obstruction_report
from .linkdiag import BandSpec, LinkDiagram, catalog, parse_pd

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


def _load_catalog(entry: str) -> LinkDiagram:
    name, _, param = entry.partition(":")
    return catalog(name, param if param else None)


def _load_link(args) -> tuple[LinkDiagram, list[int] | None]:
    if getattr(args, "catalog", None):
        return _load_catalog(args.catalog), None
    if not getattr(args, "input", None):
        raise InputError("need an input file or --catalog")
    try:
        text = open(args.input).read()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from exc
    if text.lstrip().startswith("{"):
        return linkdiag.loads(text)
    return parse_pd(text), None


def _framings(args, diagram: LinkDiagram, json_framings) -> tuple[int, ...]:
    if getattr(args, "framings", None):
        try:
            return tuple(int(x) for x in args.framings.split(","))
        except ValueError as exc:
            raise InputError(f"bad framings {args.framings!r}") from exc
    if json_framings is not None:
        return tuple(json_framings)
    return tuple([0] * diagram.num_components)


def _parse_partition(text: str, components: int) -> traces.WeightedPartition:
    blocks = []
    weights = []
    for chunk in text.split("|"):
        body, _, weight = chunk.partition(":")
        if not weight.startswith("g="):
            raise InputError(f"bad partition block {chunk!r} (want i,j:g=N)")
        try:
            blocks.append([int(x) - 1 for x in body.split(",")])
            weights.append(int(weight[2:]))
        except ValueError as exc:
            raise InputError(f"bad partition block {chunk!r}") from exc
    return traces.WeightedPartition.of(blocks, weights, components)


def _parse_bands(text: str) -> list[BandSpec]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad bands JSON: {exc}") from exc

    def arc(x):
        if isinstance(x, list):
            return (str(x[0]), int(x[1]))
        return int(x)

    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) < 2:
            raise InputError(f"bad band {row!r}")
        framing = int(row[2]) if len(row) > 2 else 0
        out.append(BandSpec(arc(row[0]), arc(row[1]), framing))
    return out


def _emit(args, payload: str):
    payload = payload + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _as_table(data: dict, indent: str = "") -> str:
    lines = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_table(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for row in value:
                cells = "  ".join(f"{k}={row[k]}" for k in sorted(row))
                lines.append(f"{indent}  - {cells}")
        else:
            lines.append(f"{indent}{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def _render(args, data: dict) -> str:
    if getattr(args, "format", "json") == "table":
        return _as_table(data)
    return json.dumps(data, sort_keys=True)


# -- commands ----------------------------------------------------------------

def _cmd_parse(args) -> int:
    d, framings = _load_link(args)
    _emit(args, json.dumps(linkdiag.to_json_dict(d, framings), sort_keys=True))
    return EXIT_OK


def _cmd_invariants(args) -> int:
    d, _ = _load_link(args)
    report = obstruction_report(d)
    _emit(args, _render(args, report.as_dict()))
    return EXIT_OK


def _cmd_trace(args) -> int:
    d, json_framings = _load_link(args)
    link = traces.FramedLink(d, _framings(args, d, json_framings))
    if getattr(args, "partition", None):
        part = _parse_partition(args.partition, d.num_components)
        h = traces.high_order_trace(link, part)
        payload = traces.trace_json(h)
    else:
        h = traces.zero_trace(link)
        payload = traces.trace_json(h, boundary=traces.boundary_h1(link))
    if args.format == "table":
        payload = _as_table(json.loads(payload))
    _emit(args, payload)
    return EXIT_OK


def _cmd_knotify(args) -> int:
    d, json_framings = _load_link(args)
    link = traces.FramedLink(d, _framings(args, d, json_framings))
    bands = _parse_bands(args.bands) if getattr(args, "bands", None) else None
    kn = traces.knotify(link, bands)
    data = {
        "construction": "knotify",
        "surgery_circles": kn.surgery_circles,
        "framing": kn.framing,
        "winding": list(kn.winding),
        "planar_framing_valid": traces.planar_framing_valid(link),
        "diagram": linkdiag.to_json_dict(kn.mixed.diagram),
        "dotted_components": list(kn.mixed.dotted),
        "knot_component": kn.knot_component,
    }
    _emit(args, _render(args, data))
    return EXIT_OK


def _cmd_check_sphere(args) -> int:
    d, json_framings = _load_link(args)
    link = traces.FramedLink(d, _framings(args, d, json_framings))
    verdict = traces.homotopy_sphere_candidate(link)
    trace = traces.zero_trace(link)
    data = {
        "construction": "homotopy-sphere-candidate",
        "verdict": verdict.as_dict(),
        "handles": list(trace.handles),
        "boundary_h1": dict(zip(("rank", "torsion"),
                                (traces.boundary_h1(link)[0],
                                 list(traces.boundary_h1(link)[1])))),
    }
    _emit(args, _render(args, data))
    return EXIT_OK


def _cmd_check_schoenflies(args) -> int:
    if getattr(args, "catalog", None):
        d = _load_catalog(args.catalog)
        dotted: tuple[int, ...] = ()
        raw = {}
    else:
        try:
            raw = json.loads(open(args.input).read())
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON: {exc}") from exc
        d, _ = linkdiag.from_json_dict(raw)
        dotted = tuple(int(x) for x in raw.get("dotted", ()))
    framings = raw.get("framings") if isinstance(raw, dict) else None
    n_attach = d.num_components - len(dotted)
    if getattr(args, "framings", None):
        framings = [int(x) for x in args.framings.split(",")]
    if framings is None:
        framings = [0] * n_attach
    mixed = traces.MixedLink(d, dotted, tuple(framings))
    verdict = traces.schoenflies_candidate(mixed)
    data = {
        "construction": "schoenflies-candidate",
        "dotted": list(dotted),
        "attaching": list(mixed.attaching),
        "W": mixed.winding_matrix(),
        "verdict": verdict.as_dict(),
    }
    _emit(args, _render(args, data))
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if getattr(args, "name", None):
        d = _load_catalog(args.name)
        _emit(args, json.dumps(linkdiag.to_json_dict(d), sort_keys=True))
    else:
        _emit(args, json.dumps({"entries": list(linkdiag.CATALOG_NAMES)},
                               sort_keys=True))
    return EXIT_OK


def _cmd_batch(args) -> int:
    try:
        manifest = json.loads(open(args.manifest).read())
    except OSError as exc:
        raise InputError(f"cannot read manifest {args.manifest}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"bad manifest JSON: {exc}") from exc
    if isinstance(manifest, dict):
        manifest = manifest.get("entries", [])
    rows = []
    failures = 0
    for entry in manifest:
        label = entry.get("catalog") or entry.get("file") or "?"
        try:
            if "catalog" in entry:
                d = _load_catalog(entry["catalog"])
            else:
                d, _ = linkdiag.loads(open(entry["file"]).read())
            report = obstruction_report(d, name=str(label))
            rows.append({"entry": str(label), "ok": True,
                         "report": report.as_dict()})
        except Exception as exc:  # noqa: BLE001  - isolate per-entry failures
            failures += 1
            rows.append({"entry": str(label), "ok": False,
                         "error": f"{type(exc).__name__}: {exc}"})
    data = {
        "rows": rows,
        "summary": {"entries": len(rows), "failed": failures},
    }
    _emit(args, _render(args, data))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracekit",
        description="framed-link calculus: invariants, sliceness "
                    "obstructions, and trace handle decompositions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_framings=True):
        p.add_argument("input", nargs="?", help="link JSON or PD text file")
        p.add_argument("--catalog", help="catalog entry name[:param]")
        if with_framings:
            p.add_argument("--framings", help="comma-separated integers")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("parse", help="parse and canonicalize a diagram")
    add_common(p, with_framings=False)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("invariants", help="signature, determinant, tau, bounds")
    add_common(p, with_framings=False)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("trace", help="handle decomposition of a framed link")
    add_common(p)
    p.add_argument("--partition", help='high-order blocks, e.g. "1,2:g=0|3:g=1"')
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("knotify", help="merge to a knot with surgery circles")
    add_common(p)
    p.add_argument("--bands", help='JSON band list [[arc,arc,twists?],...]')
    p.set_defaults(func=_cmd_knotify)

    p = sub.add_parser("check-sphere", help="homotopy 4-sphere necessary conditions")
    add_common(p)
    p.set_defaults(func=_cmd_check_sphere)

    p = sub.add_parser("check-schoenflies",
                       help="Schoenflies candidate necessary conditions")
    add_common(p)
    p.set_defaults(func=_cmd_check_schoenflies)

    p = sub.add_parser("catalog", help="list catalog entries or emit one")
    p.add_argument("name", nargs="?", help="entry name[:param]")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("batch", help="run invariant reports over a manifest")
    p.add_argument("manifest")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=_cmd_batch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
