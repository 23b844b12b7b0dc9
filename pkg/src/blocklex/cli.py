"""Batch front door: build graphs, compute profiles and delta-sequences,
construct and validate partitions and orders, run compression, certify
products, and explore conjectures, emitting machine-readable reports.

Reports are deterministic for a fixed config and seed (no timestamps),
embed the tool version and the digests of their inputs, and echo the seed
so randomized runs can be replayed.  Exit codes: 0 success/certified,
2 hypothesis or verification failure, 3 budget exceeded or inconclusive,
64 usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .blockgeom import (
    DominationCollection,
    block_lex_order,
    standard_block_lex_order,
    standard_collection,
    uniform_collection,
)
from .certify import certify, certify_domination, crosscheck, explore_conjecture
from .compression import (
    OrderFamily,
    compress_once,
    compress_to_fixpoint,
    is_block_compressed,
    is_compressed,
    is_slice_compressed,
    is_strongly_compressed,
    singleton_schedule,
    weight,
)
from .graphs import Graph, VertexSet, induced_edges, parse_graph_spec
from .orders import domination_order, lex_order, reverse_order
from .partitions import (
    Partition,
    atomic_partition,
    is_non_decreasing,
    is_regular_partition,
    standard_monotonic_partition,
    validate_isoperimetric_partition,
)
from .solver import (
    SizeCapExceeded,
    delta_sequence,
    exact_profile,
    factor_profile_and_order,
    theta_profile,
    verify_order_optimal,
)

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    spec: Optional[str] = None
    strategy: str = "full"
    budget: float = 600.0
    threads: int = 1
    fmt: str = "text"
    seed: int = 0
    out: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        if self.fmt not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.fmt!r}")


def _digest(obj) -> str:
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


def _envelope(cfg: RunConfig, inputs: dict, result: dict) -> dict:
    return {
        "tool": "blocklex",
        "version": __version__,
        "command": cfg.command,
        "seed": cfg.seed,
        "inputs": inputs,
        "result": result,
    }


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit(cfg: RunConfig, inputs: dict, result: dict, text_lines, csv_lines=None) -> None:
    if cfg.fmt == "json":
        _write(cfg, json.dumps(_envelope(cfg, inputs, result), indent=2, sort_keys=True))
    elif cfg.fmt == "csv":
        if csv_lines is None:
            raise UsageError(f"csv output is not available for '{cfg.command}'")
        _write(cfg, "\n".join(csv_lines))
    else:
        _write(cfg, "\n".join(text_lines))


def _load_json_arg(text: str):
    """Inline JSON, or @path to read a file."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as f:
            return json.load(f)
    return json.loads(text)


def _graph_from_spec(cfg: RunConfig) -> Graph:
    spec = cfg.spec
    if spec.startswith("@"):
        return Graph.from_json(_load_json_arg(spec))
    try:
        return parse_graph_spec(spec)
    except ValueError as e:
        raise UsageError(str(e))


def _profile_for(cfg: RunConfig, g: Graph):
    if cfg.strategy in ("compressed", "compressed_only"):
        return exact_profile(
            g, "compressed", budget_seconds=cfg.budget, with_witnesses=False
        )
    return exact_profile(
        g, cfg.strategy, budget_seconds=cfg.budget, with_witnesses=False
    )


# -- subcommands ---------------------------------------------------------------


def _cmd_graph(cfg: RunConfig) -> int:
    g = _graph_from_spec(cfg)
    data = g.to_json()
    deg = g.regular_degree()
    lines = [
        f"graph {cfg.spec}: n={g.n}, edges={g.num_edges}"
        + (f", regular of degree {deg}" if deg is not None else "")
    ]
    if g.factors is not None:
        lines.append(f"factors: {list(g.factor_shape)}")
    result = {"graph": data, "regular_degree": deg, "digest": g.digest}
    _emit(cfg, {"spec": cfg.spec}, result, lines)
    return EXIT_OK


def _cmd_profile(cfg: RunConfig) -> int:
    g = _graph_from_spec(cfg)
    want_theta = cfg.extra.get("theta", False)
    want_witnesses = cfg.extra.get("witnesses", False)
    if want_theta:
        prof = theta_profile(
            g, budget_seconds=cfg.budget, with_witnesses=want_witnesses
        )
    elif want_witnesses and cfg.strategy not in ("compressed", "compressed_only"):
        prof = exact_profile(
            g, cfg.strategy, budget_seconds=cfg.budget, with_witnesses=True
        )
    else:
        prof = _profile_for(cfg, g)
    inputs = {"spec": cfg.spec, "graph_digest": g.digest, "strategy": prof.strategy}
    if not prof.complete:
        _emit(
            cfg,
            inputs,
            {"complete": False, "note": prof.note},
            [f"profile incomplete: {prof.note}"],
            ["m,value", "# incomplete: " + prof.note],
        )
        return EXIT_BUDGET
    vals = list(prof.i_values)
    if want_theta:
        csv_lines = ["m,theta"] + [f"{m},{v}" for m, v in enumerate(vals)]
        text = [f"boundary minima of {cfg.spec}:"] + [
            f"  m={m:3d}  theta={v}" for m, v in enumerate(vals)
        ]
        result = {"kind": prof.kind, "values": vals, "complete": True}
    else:
        delta = delta_sequence(prof)
        csv_lines = ["m,I,delta", "0,0,"] + [
            f"{m},{vals[m]},{delta.values[m - 1]}" for m in range(1, len(vals))
        ]
        text = [f"profile of {cfg.spec}: I and delta"] + [
            f"  m={m:3d}  I={vals[m]:5d}" + (f"  delta={delta.values[m-1]}" if m else "")
            for m in range(len(vals))
        ]
        result = {
            "kind": prof.kind,
            "values": vals,
            "delta": list(delta.values),
            "complete": True,
        }
    if want_witnesses and prof.witnesses is not None:
        result["witnesses"] = [sorted(w) for w in prof.witnesses]
    _emit(cfg, inputs, result, text, csv_lines)
    return EXIT_OK


def _resolve_partition(cfg: RunConfig, g: Graph) -> Partition:
    prof, order = factor_profile_and_order(g)
    if cfg.extra.get("atomic"):
        return atomic_partition(order)
    if cfg.extra.get("boundaries"):
        bounds = [int(x) for x in cfg.extra["boundaries"].split(",")]
        return Partition.from_boundaries(order, bounds)
    if cfg.extra.get("file"):
        return Partition.from_json(_load_json_arg("@" + cfg.extra["file"]))
    return standard_monotonic_partition(delta_sequence(prof, order))


def _cmd_partition(cfg: RunConfig) -> int:
    g = _graph_from_spec(cfg)
    if g.n > 24:
        raise UsageError("partition command profiles the graph exactly; n <= 24 required")
    p = _resolve_partition(cfg, g)
    ok, diags = validate_isoperimetric_partition(g, p)
    nondec = is_non_decreasing(g, p)
    regular = is_regular_partition(g, p)
    result = {
        "partition": p.to_json(),
        "kind": p.kind,
        "segments": p.num_segments,
        "isoperimetric": ok,
        "diagnostics": diags,
        "non_decreasing": nondec,
        "regular": regular,
        "start_vertices": list(p.start_vertices()),
    }
    lines = [
        f"partition of {cfg.spec}: {p.num_segments} segments {list(p.segments)}",
        f"isoperimetric: {ok}; non-decreasing: {nondec}; regular: {regular}",
    ] + [f"  {d}" for d in diags]
    _emit(cfg, {"spec": cfg.spec, "graph_digest": g.digest}, result, lines)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def _cmd_order(cfg: RunConfig) -> int:
    g = _graph_from_spec(cfg)
    kind = cfg.extra.get("kind", "lex")
    if kind in ("lex", "domination") and g.factors is None:
        raise UsageError("lex/domination orders require a product spec")
    if kind == "lex":
        orders = [factor_profile_and_order(f)[1] for f in g.factors]
        order = lex_order(g, orders)
    elif kind == "domination":
        perm = tuple(int(x) - 1 for x in cfg.extra["perm"].split(","))
        orders = [factor_profile_and_order(f)[1] for f in g.factors]
        order = domination_order(g, orders, perm)
    elif kind == "sbl":
        order, _ = standard_block_lex_order(g)
    elif kind == "bl":
        dc = DominationCollection.from_json(_load_json_arg("@" + cfg.extra["dc_file"]))
        ok, diags = dc.validate(g)
        if not ok:
            raise UsageError("domination collection failed validation: " + "; ".join(diags))
        order = block_lex_order(g, dc)
    elif kind == "optimal":
        _, order = factor_profile_and_order(g)
    else:
        raise UsageError(f"unknown order kind {kind!r}")
    if cfg.extra.get("reverse"):
        order = reverse_order(order)
    verified = None
    failing = None
    if cfg.extra.get("verify"):
        try:
            prof = _profile_for(cfg, g)
        except SizeCapExceeded as e:
            raise UsageError(str(e))
        if not prof.complete:
            _emit(cfg, {"spec": cfg.spec}, {"complete": False}, ["budget exhausted"])
            return EXIT_BUDGET
        verified, failing = verify_order_optimal(g, order, prof)
    result = {
        "order": order.to_json(),
        "kind": kind,
        "verified_optimal": verified,
        "first_failing_m": failing,
    }
    lines = [f"order ({kind}) on {cfg.spec}: ranks={order.ranks.tolist()}"]
    if verified is not None:
        lines.append(
            f"optimal: {verified}" + (f" (fails at m={failing})" if failing else "")
        )
    _emit(cfg, {"spec": cfg.spec, "graph_digest": g.digest}, result, lines)
    if verified is False:
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _cmd_compress(cfg: RunConfig) -> int:
    g = _graph_from_spec(cfg)
    if g.factors is None:
        raise UsageError("compression requires a product spec")
    orders = [factor_profile_and_order(f)[1] for f in g.factors]
    if cfg.extra.get("family") == "sbl":
        dc = standard_collection(g.factors)
        ok, diags = dc.validate(g)
        if not ok:
            raise UsageError("standard collection failed validation")
        family = OrderFamily.block_lexicographic(g, dc)
    else:
        dc = None
        family = OrderFamily.lexicographic(g, orders)
    inputs = {"spec": cfg.spec, "graph_digest": g.digest, "family": family.kind}

    if cfg.extra.get("laws"):
        return _compress_laws(cfg, g, family, inputs)

    raw = cfg.extra.get("set")
    if raw is None:
        raise UsageError("--set is required (JSON id list or @file)")
    ids = _load_json_arg(raw)
    a = VertexSet.from_ids(g.n, ids)
    result: dict = {"set": a.ids().tolist(), "size": len(a)}
    lines = [f"set of size {len(a)} on {cfg.spec}"]
    if cfg.extra.get("once"):
        s = tuple(int(x) - 1 for x in cfg.extra["once"].split(","))
        out = compress_once(g, a, s, family)
        result["compressed"] = out.ids().tolist()
        result["induced_before"] = induced_edges(g, a)
        result["induced_after"] = induced_edges(g, out)
        lines.append(
            f"compress once along factors {list(x + 1 for x in s)}: "
            f"{result['compressed']} (I {result['induced_before']} -> {result['induced_after']})"
        )
    elif cfg.extra.get("fixpoint"):
        out, cycles = compress_to_fixpoint(g, a, singleton_schedule(len(g.factors)), family)
        result["fixpoint"] = out.ids().tolist()
        result["cycles"] = cycles
        lines.append(f"fixpoint after {cycles} cycles: {result['fixpoint']}")
    elif cfg.extra.get("weight"):
        deltas = [
            delta_sequence(factor_profile_and_order(f)[0], o)
            for f, o in zip(g.factors, orders)
        ]
        result["weight"] = weight(g, a, deltas)
        result["induced"] = induced_edges(g, a)
        lines.append(f"weight={result['weight']}, induced edges={result['induced']}")
    else:  # predicates
        result["compressed"] = is_compressed(g, a, family)
        result["strongly_compressed"] = is_strongly_compressed(g, a, family)
        if dc is not None:
            result["block_compressed"] = is_block_compressed(g, dc, a)
            result["slice_compressed"] = is_slice_compressed(g, dc, a)
        lines.append(
            "predicates: " + ", ".join(f"{k}={v}" for k, v in result.items() if k not in ("set", "size"))
        )
    _emit(cfg, inputs, result, lines)
    return EXIT_OK


def _compress_laws(cfg: RunConfig, g: Graph, family: OrderFamily, inputs: dict) -> int:
    """Seeded randomized compression-law check; violations are dumped as
    JSON so counterexamples are preserved."""
    n_samples = int(cfg.extra["laws"])
    rng = np.random.default_rng(cfg.seed)
    violations = []
    d = len(g.factors)
    for t in range(n_samples):
        size = int(rng.integers(0, g.n + 1))
        ids = rng.choice(g.n, size=size, replace=False)
        a = VertexSet.from_ids(g.n, ids)
        for i in range(d):
            out = compress_once(g, a, (i,), family)
            if len(out) != len(a):
                violations.append({"law": "size", "factor": i + 1, "set": a.ids().tolist()})
            if induced_edges(g, out) < induced_edges(g, a):
                violations.append({"law": "induced_non_decrease", "factor": i + 1, "set": a.ids().tolist()})
        sub_ids = rng.choice(g.n, size=size // 2 if size else 0, replace=False)
        b = VertexSet.from_ids(g.n, [i for i in sub_ids if i in a])
        for i in range(d):
            ca = compress_once(g, a, (i,), family)
            cb = compress_once(g, b, (i,), family)
            if not cb.issubset(ca):
                violations.append({"law": "monotone", "factor": i + 1, "set": a.ids().tolist(), "subset": b.ids().tolist()})
    result = {"samples": n_samples, "violations": violations, "ok": not violations}
    lines = [
        f"compression laws on {cfg.spec}: {n_samples} seeded samples (seed={cfg.seed})",
        f"violations: {len(violations)}",
    ]
    if violations:
        lines.append(json.dumps(violations, sort_keys=True))
    print(f"seed: {cfg.seed}", file=sys.stderr)
    _emit(cfg, inputs, result, lines)
    return EXIT_OK if not violations else EXIT_HYPOTHESIS


def _cmd_certify(cfg: RunConfig) -> int:
    g = _graph_from_spec(cfg)
    if g.factors is None or len(g.factors) < 3:
        raise UsageError("certify needs a product spec with at least 3 factors")
    gs = list(g.factors)
    style = cfg.extra.get("partitions", "standard")
    try:
        if cfg.extra.get("domination"):
            perm = tuple(int(x) - 1 for x in cfg.extra["domination"].split(","))
            cert = certify_domination(
                gs, perm, budget_seconds=cfg.budget, pairwise_strategy="auto"
            )
        else:
            if style == "standard":
                parts = "standard"
                dc = None
            elif style == "atomic":
                parts = "atomic"
                dc = None
            else:
                data = _load_json_arg("@" + style)
                dc = DominationCollection.from_json(data)
                parts = list(dc.partitions)
            cert = certify(
                gs,
                parts,
                dc,
                budget_seconds=cfg.budget,
                threads=cfg.threads,
            )
            if (
                cert.status == "certified"
                and len(gs) == 3
                and not cfg.extra.get("no_crosscheck")
            ):
                used_dc = dc
                if used_dc is None:
                    used_dc = (
                        standard_collection(gs)
                        if parts == "standard"
                        else uniform_collection(
                            [atomic_partition(factor_profile_and_order(f)[1]) for f in gs]
                        )
                    )
                prod = g
                used_dc.validate(prod, check_block_optimality=False)
                samples = None
                if cfg.extra.get("crosscheck"):
                    samples = [int(x) for x in cfg.extra["crosscheck"].split(",")]
                cert = crosscheck(cert, gs, used_dc, samples)
    except SizeCapExceeded as e:
        raise UsageError(str(e))
    result = cert.to_json()
    lines = [
        f"certify {cfg.spec}: {cert.status}"
        + (f" (failing: {cert.failing})" if cert.failing else ""),
    ]
    for h in cert.hypotheses:
        lines.append(f"  [{'ok' if h.verified else 'FAIL'}] {h.name}")
    if cert.conclusion:
        lines.append(f"conclusion: {cert.conclusion}")
    for c in cert.crosschecks:
        if "agreement" in c:
            lines.append(f"crosscheck agreement: {c['agreement']}")
    _emit(cfg, {"spec": cfg.spec, "graph_digest": g.digest}, result, lines)
    return cert.exit_code()


def _cmd_explore(cfg: RunConfig) -> int:
    family = cfg.extra["family"]
    params = {}
    for key in ("max_vertices", "s", "p", "i", "d", "c5", "petersen", "c4", "k2", "c3"):
        if cfg.extra.get(key) is not None:
            params[key] = cfg.extra[key]
    report = explore_conjecture(family, params, budget_seconds=cfg.budget)
    result = report.to_json()
    lines = [f"explore {family}: {report.statuses}"]
    for ins in report.instances:
        lines.append(f"  {ins.status:12s} {ins.name} (n={ins.n})")
    _emit(cfg, {"family": family, "params": params}, result, lines)
    if report.statuses["INCONCLUSIVE"]:
        return EXIT_BUDGET
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="blocklex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser, default_fmt: str = "text"):
        p.add_argument("--strategy", choices=["full", "compressed", "bnb"], default="full")
        p.add_argument("--budget", type=float, default=600.0, help="wall-clock seconds")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default=default_fmt)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)

    p = sub.add_parser("graph", help="build a graph from a spec and export it")
    p.add_argument("spec")
    common(p, "json")

    p = sub.add_parser("profile", help="exact I/theta/delta profile")
    p.add_argument("spec")
    p.add_argument("--theta", action="store_true")
    p.add_argument("--witnesses", action="store_true", help="include optimal sets")
    common(p, "csv")

    p = sub.add_parser("partition", help="standard/atomic/custom partitions with validation")
    p.add_argument("spec")
    p.add_argument("--standard", action="store_true")
    p.add_argument("--atomic", action="store_true")
    p.add_argument("--boundaries", default=None, help="comma-separated segment end ranks")
    p.add_argument("--file", default=None, help="partition JSON file")
    common(p)

    p = sub.add_parser("order", help="build and optionally verify orders")
    p.add_argument("spec")
    p.add_argument("--lex", action="store_true")
    p.add_argument("--domination", default=None, help="1-based significance permutation, comma-separated")
    p.add_argument("--sbl", action="store_true")
    p.add_argument("--bl", default=None, help="domination collection JSON file")
    p.add_argument("--optimal", action="store_true", help="order from the nested-chain search")
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--verify", action="store_true")
    common(p)

    p = sub.add_parser("compress", help="compression operations and predicates")
    p.add_argument("spec")
    p.add_argument("--set", dest="set_arg", default=None, help="JSON id list or @file")
    p.add_argument("--once", default=None, help="1-based factor indices, comma-separated")
    p.add_argument("--fixpoint", action="store_true")
    p.add_argument("--check", action="store_true")
    p.add_argument("--weight", action="store_true")
    p.add_argument("--laws", type=int, default=None, help="run N seeded law checks")
    p.add_argument("--family", choices=["lex", "sbl"], default="lex")
    common(p)

    p = sub.add_parser("certify", help="local-global certification of a product")
    p.add_argument("spec")
    p.add_argument("--partitions", default="standard", help="standard | atomic | dc JSON file")
    p.add_argument("--domination", default=None, help="certify a domination order instead")
    p.add_argument("--crosscheck", default=None, help="comma-separated sample sizes")
    p.add_argument("--no-crosscheck", action="store_true")
    common(p, "json")

    p = sub.add_parser("explore", help="conjecture exploration (search only)")
    p.add_argument("family", choices=["path_clique", "hspi", "petersen_tori"])
    p.add_argument("--max-vertices", type=int, default=16)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--c5", type=int, default=None)
    p.add_argument("--petersen", type=int, default=None)
    p.add_argument("--c4", type=int, default=None)
    p.add_argument("--k2", type=int, default=None)
    p.add_argument("--c3", type=int, default=None)
    common(p, "json")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        extra = {}
        if ns.command == "profile":
            extra["theta"] = ns.theta
            extra["witnesses"] = ns.witnesses
        elif ns.command == "partition":
            extra = {
                "atomic": ns.atomic,
                "boundaries": ns.boundaries,
                "file": ns.file,
            }
        elif ns.command == "order":
            kind = "lex"
            if ns.domination:
                kind = "domination"
                extra["perm"] = ns.domination
            elif ns.sbl:
                kind = "sbl"
            elif ns.bl:
                kind = "bl"
                extra["dc_file"] = ns.bl
            elif ns.optimal:
                kind = "optimal"
            extra["kind"] = kind
            extra["reverse"] = ns.reverse
            extra["verify"] = ns.verify
        elif ns.command == "compress":
            extra = {
                "set": ns.set_arg,
                "once": ns.once,
                "fixpoint": ns.fixpoint,
                "check": ns.check,
                "weight": ns.weight,
                "laws": ns.laws,
                "family": ns.family,
            }
        elif ns.command == "certify":
            extra = {
                "partitions": ns.partitions,
                "domination": ns.domination,
                "crosscheck": ns.crosscheck,
                "no_crosscheck": ns.no_crosscheck,
            }
        elif ns.command == "explore":
            extra = {
                "family": ns.family,
                "max_vertices": ns.max_vertices,
                "s": ns.s,
                "p": ns.p,
                "i": ns.i,
                "d": ns.d,
                "c5": ns.c5,
                "petersen": ns.petersen,
                "c4": ns.c4,
                "k2": ns.k2,
                "c3": ns.c3,
            }
        cfg = RunConfig(
            command=ns.command,
            spec=getattr(ns, "spec", None),
            strategy=getattr(ns, "strategy", "full"),
            budget=ns.budget,
            threads=ns.threads,
            fmt=ns.fmt,
            seed=ns.seed,
            out=ns.out,
            extra=extra,
        )
        handler = {
            "graph": _cmd_graph,
            "profile": _cmd_profile,
            "partition": _cmd_partition,
            "order": _cmd_order,
            "compress": _cmd_compress,
            "certify": _cmd_certify,
            "explore": _cmd_explore,
        }[cfg.command]
        return handler(cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
