"""Command-line front door: gate, clique census, Betti numbers, cavities.

Subcommands: kcore, analyze, cavities, smallest-cavity, random-er, fetch,
verify. Every flag can also be supplied through an environment variable
with the CLIQUECAV_ prefix (for example CLIQUECAV_BUDGET=1000000).

Exit codes: 0 success, 2 computability gate failed, 3 enumeration
truncated by the budget. Usage errors exit 2 via argparse.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import urllib.error
import urllib.request
from collections import Counter
from pathlib import Path

from .cavities import (
    CavityCertificate,
    certificate_from_cliques,
    certificate_to_dot,
    certificates_to_json,
    find_cavities,
    select_spanning_and_generators,
    verify_certificate,
)
from .cliques import (
    CliqueComplex,
    complex_from_json,
    complex_to_json,
    enumerate_cliques,
    generate_smallest_cavity_complex,
)
from .gf2 import build_boundary_matrix, homology_profile, zero_cols_matrix
from .graph import (
    DEFAULT_BUDGET,
    DEFAULT_CORENESS_THRESHOLD,
    Network,
    computability_gate,
    edge_text_checksum,
    k_core_decomposition,
    load_edge_list,
    random_er,
    to_edge_text,
)

ENV_PREFIX = "CLIQUECAV_"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_GATE = 2
EXIT_TRUNCATED = 3

# Published reference census for the generated smallest-cavity complexes,
# exactly as printed (including its internal inconsistencies; disagreements
# with measured counts become notes, never corrections).
REFERENCE_CENSUS = {
    1: (4, 4),
    2: (6, 12, 8),
    3: (8, 24, 32, 16),
    4: (10, 40, 40, 80, 32),
    5: (12, 60, 120, 240, 192, 64),
    6: (14, 84, 280, 560, 672, 448, 128),
    7: (16, 112, 448, 1120, 1792, 1792, 1024, 256),
    8: (18, 144, 672, 2016, 4032, 5376, 4608, 2304, 512),
    9: (20, 180, 960, 560, 3360, 8064, 13440, 15360, 11520, 1024),
    10: (22, 220, 1320, 5280, 14784, 29568, 42240, 42240, 28160, 11264, 2048),
    11: (24, 264, 1760, 7920, 25344, 59136, 101376, 125720, 112640, 67584, 24576, 4096),
}

# Known datasets: expected (nodes, edges) after canonicalization.
DATASETS = {
    "celegans": (297, 2148),
    "usair": (332, 2126),
    "jazz": (198, 2742),
    "yeast": (2375, 11693),
}


def _env(name: str) -> str | None:
    return os.environ.get(ENV_PREFIX + name)


def _env_int(name: str, fallback: int) -> int:
    v = _env(name)
    return int(v) if v else fallback


def _env_opt_int(name: str) -> int | None:
    v = _env(name)
    return int(v) if v else None


def _env_flag(name: str) -> bool:
    v = _env(name)
    return v is not None and v.strip().lower() not in {"", "0", "false", "no"}


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def _load_network(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Network:
    if not args.input:
        parser.error("--input is required (or set CLIQUECAV_INPUT)")
    return load_edge_list(args.input)


def _load_or_build_complex(net: Network, args: argparse.Namespace) -> CliqueComplex:
    """Reuse the JSON cache when it matches the input; otherwise rebuild it.

    The cache is only trusted for full, untruncated runs: a checksum
    mismatch, a truncation marker, or an active --max-order forces a
    recompute (and a rewrite when the fresh complex is cacheable).
    """
    checksum = edge_text_checksum(net)
    cache = getattr(args, "cache", None)
    max_order = getattr(args, "max_order", None)
    if cache and max_order is None and Path(cache).exists():
        try:
            doc = json.loads(Path(cache).read_text(encoding="utf-8"))
            cx, source = complex_from_json(doc)
        except (OSError, ValueError, KeyError, TypeError):
            cx, source = None, None
        if cx is not None and source == checksum and cx.truncated_at is None:
            return cx
    cx = enumerate_cliques(net, budget=args.budget, max_order=max_order)
    if cache and max_order is None and cx.truncated_at is None:
        text = json.dumps(complex_to_json(cx, checksum), indent=2, sort_keys=True)
        Path(cache).write_text(text + "\n", encoding="utf-8")
    return cx


def _boundary_pair(cx: CliqueComplex, k: int):
    bk = build_boundary_matrix(cx, k)
    if k < cx.top_order:
        bk1 = build_boundary_matrix(cx, k + 1)
    else:
        bk1 = zero_cols_matrix(cx.counts[k])
    return bk, bk1


def _search_cavities(cx: CliqueComplex, profile) -> list[CavityCertificate]:
    """All minimal cavity certificates, every order with beta_k > 0, k >= 1."""
    certs: list[CavityCertificate] = []
    for k in range(1, len(profile.beta)):
        if profile.beta[k] == 0:
            continue
        bk, bk1 = _boundary_pair(cx, k)
        sel = select_spanning_and_generators(bk, bk1)
        certs.extend(find_cavities(bk, bk1, sel, cx.levels[k]))
    return certs


def _self_verify(certs: list[CavityCertificate], cx: CliqueComplex) -> None:
    by_order: dict[int, list[CavityCertificate]] = {}
    for cert in certs:
        prior = by_order.setdefault(cert.order, [])
        bk, bk1 = _boundary_pair(cx, cert.order)
        result = verify_certificate(cert, bk, bk1, prior)
        if not result:
            raise RuntimeError(
                f"internal check failed: order-{cert.order} certificate "
                f"violates the {result.failed} constraint"
            )
        prior.append(cert)


def _emit_dot_files(certs, cx: CliqueComplex, labels, directory: str) -> list[str]:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    index: Counter = Counter()
    for cert in certs:
        index[cert.order] += 1
        name = f"cavity_order{cert.order}_{index[cert.order]}"
        path = out_dir / f"{name}.dot"
        path.write_text(certificate_to_dot(cert, cx, labels, name), encoding="utf-8")
        written.append(str(path))
    return written


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _profile_csv(profile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    orders = list(range(len(profile.m)))
    w.writerow(["k"] + orders)
    w.writerow(["m_k"] + list(profile.m))
    w.writerow(["r_k"] + list(profile.r))
    w.writerow(["beta_k"] + list(profile.beta))
    w.writerow(["chi", profile.chi])
    w.writerow(["euler_poincare_ok", "true" if profile.euler_poincare_ok else "false"])
    return buf.getvalue()


def _profile_table(profile) -> str:
    width = max(len(str(v)) for row in (profile.m, profile.r, profile.beta) for v in row)
    width = max(width, len(str(len(profile.m) - 1)), 2)
    rows = [
        ("k", range(len(profile.m))),
        ("m_k", profile.m),
        ("r_k", profile.r),
        ("beta_k", profile.beta),
    ]
    lines = []
    for head, vals in rows:
        lines.append(f"{head:8}" + " ".join(f"{v:>{width}}" for v in vals))
    lines.append(f"chi = {profile.chi}")
    lines.append(
        "euler_poincare_ok = " + ("true" if profile.euler_poincare_ok else "false")
    )
    return "\n".join(lines)


def _cert_lines(certs, cx: CliqueComplex, labels) -> list[str]:
    lines = []
    for i, cert in enumerate(certs, 1):
        gen = ",".join(labels[u] for u in cx.levels[cert.order][cert.generator])
        nodes = " ".join(labels[u] for u in cert.node_set)
        lines.append(
            f"cavity {i}: order {cert.order}, length {cert.length}, "
            f"generator ({gen}), nodes {nodes}"
        )
    return lines


def cmd_kcore(args, parser) -> int:
    """Coreness histogram, k_max, and the computability verdict."""
    net = _load_network(args, parser)
    report = k_core_decomposition(net)
    gate = computability_gate(report, args.budget, args.threshold)
    histogram = sorted(Counter(report.coreness).items())
    if args.format == "json":
        _print_json(
            {
                "k_max": report.k_max,
                "coreness_histogram": [[k, c] for k, c in histogram],
                "core_size": {"nodes": report.core_size[0], "edges": report.core_size[1]},
                "computable": gate.computable,
                "threshold": args.threshold,
                "reason": gate.reason,
            }
        )
    else:
        for k, c in histogram:
            print(f"coreness {k}: {c} nodes")
        print(f"k_max = {report.k_max}")
        print(f"k_max-core size: {report.core_size[0]} nodes, {report.core_size[1]} edges")
        print(("computable" if gate.computable else "not computable") + f" ({gate.reason})")
    return EXIT_OK if gate.computable else EXIT_GATE


def cmd_analyze(args, parser) -> int:
    """Full pipeline: gate, census, ranks, Betti numbers, optional cavities."""
    if args.emit_dot and not args.cavities:
        parser.error("--emit-dot requires --cavities")
    net = _load_network(args, parser)
    gate = computability_gate(k_core_decomposition(net), args.budget, args.threshold)
    if not gate.computable and not args.force:
        print(f"not computable: {gate.reason} (use --force to override)", file=sys.stderr)
        return EXIT_GATE
    cx = _load_or_build_complex(net, args)
    if cx.truncated_at is not None:
        print(cx.warning, file=sys.stderr)
        print(f"counts so far: {list(cx.counts)}", file=sys.stderr)
        return EXIT_TRUNCATED
    profile = homology_profile(cx)
    certs: list[CavityCertificate] = []
    if args.cavities:
        certs = _search_cavities(cx, profile)
        if args.verify:
            _self_verify(certs, cx)
        if args.emit_dot:
            _emit_dot_files(certs, cx, net.node_labels, args.emit_dot)
    if args.format == "json":
        doc = {
            "m": list(profile.m),
            "r": list(profile.r),
            "beta": list(profile.beta),
            "chi": profile.chi,
            "euler_poincare_ok": profile.euler_poincare_ok,
        }
        if args.cavities:
            doc["cavities"] = certificates_to_json(certs, cx, net.node_labels)
        _print_json(doc)
    elif args.format == "csv":
        out = _profile_csv(profile)
        if args.cavities:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            for cert in certs:
                nodes = " ".join(net.node_labels[u] for u in cert.node_set)
                w.writerow(["cavity", cert.order, cert.length, nodes])
            out += buf.getvalue()
        print(out, end="")
    else:
        print(_profile_table(profile))
        for line in _cert_lines(certs, cx, net.node_labels):
            print(line)
    return EXIT_OK


def cmd_cavities(args, parser) -> int:
    """Cavity certificates only (the analyze pipeline minus the profile)."""
    net = _load_network(args, parser)
    gate = computability_gate(k_core_decomposition(net), args.budget, args.threshold)
    if not gate.computable and not args.force:
        print(f"not computable: {gate.reason} (use --force to override)", file=sys.stderr)
        return EXIT_GATE
    cx = _load_or_build_complex(net, args)
    if cx.truncated_at is not None:
        print(cx.warning, file=sys.stderr)
        print(f"counts so far: {list(cx.counts)}", file=sys.stderr)
        return EXIT_TRUNCATED
    profile = homology_profile(cx)
    certs = _search_cavities(cx, profile)
    if args.verify:
        _self_verify(certs, cx)
    if args.emit_dot:
        _emit_dot_files(certs, cx, net.node_labels, args.emit_dot)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "length", "generator", "nodes"])
        for cert in certs:
            gen = " ".join(net.node_labels[u] for u in cx.levels[cert.order][cert.generator])
            nodes = " ".join(net.node_labels[u] for u in cert.node_set)
            w.writerow([cert.order, cert.length, gen, nodes])
        print(buf.getvalue(), end="")
    elif args.format == "table":
        for line in _cert_lines(certs, cx, net.node_labels):
            print(line)
    else:
        _print_json(certificates_to_json(certs, cx, net.node_labels))
    return EXIT_OK


def census_notes(k: int, counts: list[int]) -> list[str]:
    """Disagreements between measured counts and the printed reference census.

    The printed values are reported as notes, never corrected.
    """
    notes = []
    reference = REFERENCE_CENSUS.get(k)
    if reference is None:
        return notes
    if len(reference) != len(counts):
        notes.append(
            f"reference census lists {len(reference)} orders, measured {len(counts)}"
        )
    for j, (printed, measured) in enumerate(zip(reference, counts)):
        if printed != measured:
            notes.append(
                f"reference census disagrees at order {j}: "
                f"printed {printed}, measured {measured}"
            )
    return notes


def cmd_smallest_cavity(args, parser) -> int:
    """Generated order-k smallest-cavity complex: census, chi, reference notes."""
    k = args.order
    cx = generate_smallest_cavity_complex(k)
    counts = list(cx.counts)
    chi = sum((-1) ** j * m for j, m in enumerate(counts))
    notes = census_notes(k, counts)
    if args.format == "json":
        _print_json({"k": k, "m": counts, "chi": chi, "discrepancy_notes": notes})
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k"] + list(range(len(counts))))
        w.writerow(["m_k"] + counts)
        w.writerow(["chi", chi])
        for note in notes:
            w.writerow(["note", note])
        print(buf.getvalue(), end="")
    else:
        print(f"smallest {k}-cavity complex: m = {counts}, chi = {chi}")
        for note in notes:
            print(f"note: {note}")
    return EXIT_OK


def cmd_random_er(args, parser) -> int:
    """Write a seeded uniform G(n, m) edge list."""
    try:
        net = random_er(args.n, args.m, args.seed)
    except ValueError as exc:
        return _fail(str(exc))
    Path(args.dest).write_text(to_edge_text(net), encoding="utf-8")
    print(f"wrote {net.node_count} nodes, {net.edge_count} edges to {args.dest} (seed {args.seed})")
    return EXIT_OK


def cmd_fetch(args, parser) -> int:
    """Download a dataset, pin its checksum, and validate known sizes.

    The file is kept only when every check passes; a .sha256 sidecar
    records the pin for later runs.
    """
    dest = Path(args.dest) if args.dest else Path("data") / f"{args.name}.edges"
    sidecar = dest.with_name(dest.name + ".sha256")
    if dest.exists() and not args.force:
        print(f"{dest} already exists (use --force to re-fetch)")
        return EXIT_OK
    try:
        with urllib.request.urlopen(args.url) as resp:
            payload = resp.read()
    except (urllib.error.URLError, OSError) as exc:
        return _fail(f"fetch failed: {exc}")
    digest = hashlib.sha256(payload).hexdigest()
    if args.sha256 and digest != args.sha256.lower():
        return _fail(f"checksum mismatch: expected {args.sha256}, got {digest}")
    try:
        net = load_edge_list(io.StringIO(payload.decode("utf-8")))
    except (UnicodeDecodeError, ValueError) as exc:
        return _fail(f"downloaded file is not a readable edge list: {exc}")
    expected = DATASETS.get(args.name)
    if expected and (net.node_count, net.edge_count) != expected:
        return _fail(
            f"{args.name} should have {expected[0]} nodes and {expected[1]} edges, "
            f"got {net.node_count} nodes and {net.edge_count} edges"
        )
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_bytes(payload)
    sidecar.write_text(f"{digest}  {dest.name}\n", encoding="utf-8")
    print(
        f"fetched {args.name}: {net.node_count} nodes, {net.edge_count} edges, "
        f"sha256 {digest}"
    )
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    """Re-check exported certificates against a network, one verdict per line."""
    net = _load_network(args, parser)
    cx = _load_or_build_complex(net, args)
    if cx.truncated_at is not None:
        print(cx.warning, file=sys.stderr)
        return EXIT_TRUNCATED
    doc = json.loads(Path(args.certificates).read_text(encoding="utf-8"))
    index = net.label_index()
    matrices: dict[int, tuple] = {}
    prior: dict[int, list[CavityCertificate]] = {}
    failures = 0
    for i, entry in enumerate(doc, 1):
        try:
            order = int(entry["order"])
            if not 1 <= order <= cx.top_order:
                raise ValueError(f"no order-{order} cliques in this network")
            members = [tuple(sorted(index[str(u)] for u in c)) for c in entry["cliques"]]
            generator = tuple(sorted(index[str(u)] for u in entry["generator"]))
            cert = certificate_from_cliques(cx.levels[order], order, members, generator)
            if cert.length != int(entry["length"]):
                raise ValueError(
                    f"claimed length {entry['length']}, listed {cert.length} cliques"
                )
        except (KeyError, TypeError, ValueError) as exc:
            print(f"cert {i}: FAIL (membership: {exc})")
            failures += 1
            continue
        if order not in matrices:
            matrices[order] = _boundary_pair(cx, order)
        bk, bk1 = matrices[order]
        result = verify_certificate(cert, bk, bk1, prior.setdefault(order, []))
        if result:
            print(f"cert {i}: PASS (order {order}, length {cert.length})")
            prior[order].append(cert)
        else:
            print(f"cert {i}: FAIL ({result.failed})")
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_ERROR


# Parent parsers are built fresh per subcommand: argparse's set_defaults
# mutates the shared action objects, so reusing one parent would leak a
# subcommand's default (e.g. cavities' json format) into all the others.
def _common_parent(default_format: str = "table") -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=_env("INPUT"), help="edge-list file")
    common.add_argument(
        "--budget",
        type=int,
        default=_env_int("BUDGET", DEFAULT_BUDGET),
        help="per-order clique-count cap (default 10^7)",
    )
    common.add_argument(
        "--threshold",
        type=int,
        default=_env_int("THRESHOLD", DEFAULT_CORENESS_THRESHOLD),
        help="computability gate on k_max (default 25)",
    )
    common.add_argument(
        "--format",
        choices=("json", "csv", "table"),
        default=_env("FORMAT") or default_format,
        help="output format",
    )
    return common


def _pipeline_parent() -> argparse.ArgumentParser:
    pipeline = argparse.ArgumentParser(add_help=False)
    pipeline.add_argument(
        "--max-order",
        type=int,
        default=_env_opt_int("MAX_ORDER"),
        help="stop enumeration above this clique order",
    )
    pipeline.add_argument("--cache", default=_env("CACHE"), help="clique-complex JSON cache file")
    pipeline.add_argument(
        "--emit-dot",
        default=_env("EMIT_DOT"),
        metavar="DIR",
        help="write one DOT file per cavity into DIR",
    )
    pipeline.add_argument(
        "--force",
        action="store_true",
        default=_env_flag("FORCE"),
        help="run even when the computability gate fails",
    )
    pipeline.add_argument(
        "--verify",
        action="store_true",
        default=_env_flag("VERIFY"),
        help="re-check every certificate before reporting it",
    )
    return pipeline


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquecav",
        description="Cliques, Betti numbers, and minimal cavities of undirected networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kcore", parents=[_common_parent()], help="coreness and computability gate")
    p.set_defaults(func=cmd_kcore)

    p = sub.add_parser(
        "analyze", parents=[_common_parent(), _pipeline_parent()],
        help="census, ranks, Betti numbers",
    )
    p.add_argument("--cavities", action="store_true", default=_env_flag("CAVITIES"),
                   help="also search for minimal cavities")
    p.set_defaults(func=cmd_analyze)

    # same flags as analyze, but structured output by default
    p = sub.add_parser(
        "cavities", parents=[_common_parent("json"), _pipeline_parent()],
        help="minimal cavity certificates",
    )
    p.set_defaults(func=cmd_cavities)

    p = sub.add_parser(
        "smallest-cavity", parents=[_common_parent()], help="generated smallest k-cavity complex"
    )
    p.add_argument("order", type=int, choices=range(1, 13), metavar="K",
                   help="cavity order, 1..12")
    p.set_defaults(func=cmd_smallest_cavity)

    p = sub.add_parser("random-er", help="write a seeded uniform G(n, m) edge list")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("dest")
    p.add_argument("--seed", type=int, default=_env_int("SEED", 0))
    p.set_defaults(func=cmd_random_er)

    p = sub.add_parser("fetch", help="download a dataset with checksum pinning")
    p.add_argument("name", help="dataset name (known: " + ", ".join(sorted(DATASETS)) + ")")
    p.add_argument("--url", required=True)
    p.add_argument("--dest", default=_env("DEST"))
    p.add_argument("--sha256", default=_env("SHA256"), help="expected hex digest")
    p.add_argument("--force", action="store_true", default=_env_flag("FORCE"))
    p.set_defaults(func=cmd_fetch)

    p = sub.add_parser("verify", parents=[_common_parent()], help="re-check exported certificates")
    p.add_argument("certificates", help="certificate JSON file")
    p.add_argument("--cache", default=_env("CACHE"))
    p.add_argument("--max-order", type=int, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except FileNotFoundError as exc:
        return _fail(f"{exc.filename or exc}: no such file")
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
