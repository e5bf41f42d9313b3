"""Command line front end.

Subcommands: ideals, weyl, bijection, structure, betti, classes, poincare,
verify.  JSON is the canonical output (top level {rank, command, checks,
data}); CSV is available for tabular payloads.  Exit codes: 0 success,
1 verification failure, 2 usage error.

Output is deterministic: iteration orders are fixed, sampled checks draw from
a generator seeded by --seed, and timings never enter the serialized report.
Structure tables and cochain-complex block summaries are cached on disk under
a key that includes the matrix realization version.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import ce, correspondence, ideals, liealg, poincare, weyl
from .errors import ConsistencyError, InvalidRankError, RankCapError
from .report import VerificationReport
from .roots import RootSet, check_rank, num_diffs, positive_roots
from .weyl import parse_signed_perm

ENV_WORKERS = "SPCOHOM_WORKERS"
ENV_CACHE = "SPCOHOM_CACHE"

DEFAULT_COMBINATORIAL_CAP = 8


@dataclass
class RunConfig:
    rank: int
    fmt: str = "json"
    out: Optional[str] = None
    workers: int = 1
    seed: int = 0
    combinatorial_cap: int = DEFAULT_COMBINATORIAL_CAP
    cohomology_cap: int = ce.DEFAULT_COHOMOLOGY_CAP
    list_items: bool = False
    histogram: bool = False
    per_weight: bool = False
    witness: Optional[str] = None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, required=True, help="rank n >= 1")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write output to a file")
    common.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker processes for exhaustive scans (default ${ENV_WORKERS} or 1)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument(
        "--allow-rank4-cohomology",
        action="store_true",
        help="raise the cochain-complex cap from rank 3 to rank 4",
    )

    parser = argparse.ArgumentParser(
        prog="spcohom",
        description="Abelian ideals of the Borel of sp(2n) and the cohomology "
        "of its nilradical, verified by exact exhaustive computation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideals", parents=[common], help="enumerate abelian ideals")
    p.add_argument("--list", dest="list_items", action="store_true")
    p.add_argument("--histogram", action="store_true")

    p = sub.add_parser("weyl", parents=[common], help="signed-permutation group data")
    p.add_argument("--list", dest="list_items", action="store_true")
    p.add_argument("--histogram", action="store_true")

    p = sub.add_parser("bijection", parents=[common], help="verify the correspondence")
    p.add_argument("--witness", metavar="ELEM", help="trace one element, e.g. '[2,-1,3]'")

    sub.add_parser("structure", parents=[common], help="structure constants table")

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of the nilradical")
    p.add_argument("--per-weight", dest="per_weight", action="store_true")

    sub.add_parser("classes", parents=[common], help="verify the cohomology basis")
    sub.add_parser("poincare", parents=[common], help="length generating functions")
    sub.add_parser("verify", parents=[common], help="run the full verification suite")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get(ENV_WORKERS, "1"))
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    check_rank(args.rank)
    return RunConfig(
        rank=args.rank,
        fmt=args.format,
        out=args.out,
        workers=workers,
        seed=args.seed,
        cohomology_cap=(
            ce.MAX_COHOMOLOGY_RANK if args.allow_rank4_cohomology else ce.DEFAULT_COHOMOLOGY_CAP
        ),
        list_items=getattr(args, "list_items", False),
        histogram=getattr(args, "histogram", False),
        per_weight=getattr(args, "per_weight", False),
        witness=getattr(args, "witness", None),
    )


# -- disk cache ---------------------------------------------------------------


def _cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "spcohom"


def _cache_path(kind: str, n: int) -> Path:
    tag = hashlib.sha256(
        f"{kind}:v{liealg.REALIZATION_VERSION}:rank{n}".encode()
    ).hexdigest()[:20]
    return _cache_dir() / f"{kind}-n{n}-{tag}.json"


def _cache_load(kind: str, n: int):
    path = _cache_path(kind, n)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def _cache_store(kind: str, n: int, payload) -> None:
    path = _cache_path(kind, n)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        tmp.replace(path)
    except OSError:
        pass  # caching is best effort


def _structure_rows(n: int) -> list[list]:
    cached = _cache_load("structure", n)
    if isinstance(cached, list):
        return cached
    table = liealg.structure_table(n)
    roots = positive_roots(n)
    rows = []
    for (a, b) in sorted(table.entries):
        g, c = table.entries[(a, b)]
        rows.append([str(roots[a]), str(roots[b]), str(roots[g]), c])
    _cache_store("structure", n, rows)
    return rows


def _block_summary(n: int, cap: int) -> list:
    if n > cap:
        # the cap is a contract, not a cost guard: enforce it before any
        # cache lookup so a previously opted-in run cannot bypass it
        raise RankCapError(
            f"rank {n} exceeds the cohomology cap {cap}"
            + (" (opt in to rank 4 explicitly)" if n == ce.MAX_COHOMOLOGY_RANK else "")
        )
    cached = _cache_load("blocks", n)
    if isinstance(cached, list) and cached:
        try:
            return [(int(p), tuple(w), int(dim), int(rank)) for p, w, dim, rank in cached]
        except (TypeError, ValueError):
            pass  # corrupt cache entry: fall through and recompute
    cx = ce.ChainComplex(n, cap=cap)
    summary = cx.block_summary()
    _cache_store("blocks", n, [[p, list(w), dim, rank] for p, w, dim, rank in summary])
    return summary


# -- command handlers ---------------------------------------------------------


def _cmd_ideals(cfg: RunConfig):
    n = cfg.rank
    items = list(ideals.enumerate_increasing(n))
    hist = ideals.dimension_histogram(n)
    data = {"count": len(items), "histogram": list(hist.coeffs)}
    if cfg.list_items:
        data["ideals"] = [
            {"roots": psi.members.to_strings(), "dimension": psi.dimension} for psi in items
        ]
    csv_rows = None
    if cfg.fmt == "csv":
        if cfg.list_items:
            csv_rows = [["dimension", "members"]] + [
                [psi.dimension, " ".join(psi.members.to_strings())] for psi in items
            ]
        else:
            csv_rows = [["dimension", "count"]] + [
                [k, c] for k, c in enumerate(hist.coeffs)
            ]
    return 0, [], data, csv_rows


def _cmd_weyl(cfg: RunConfig):
    n = cfg.rank
    if n > cfg.combinatorial_cap:
        raise RankCapError(f"rank {n} exceeds the enumeration cap {cfg.combinatorial_cap}")
    hist = poincare.weyl_length_histogram(n, cap=cfg.combinatorial_cap)
    data = {"order": weyl.group_order(n), "length_histogram": list(hist.coeffs)}
    if cfg.list_items:
        elements = []
        for w in weyl.enumerate_group(n, cap=cfg.combinatorial_cap):
            sf = weyl.standard_form(w)
            elements.append(
                {
                    "element": str(w),
                    "length": weyl.length(w),
                    "flipped_values": list(sf.j_list),
                    "permutation": list(sf.sigma0.images),
                }
            )
        data["elements"] = elements
    csv_rows = None
    if cfg.fmt == "csv":
        csv_rows = [["length", "count"]] + [[k, c] for k, c in enumerate(hist.coeffs)]
    return 0, [], data, csv_rows


def _cmd_structure(cfg: RunConfig):
    rows = _structure_rows(cfg.rank)
    data = {"entries": rows}
    csv_rows = None
    if cfg.fmt == "csv":
        csv_rows = [["alpha", "beta", "gamma", "c"]] + rows
    return 0, [], data, csv_rows


def _cmd_bijection(cfg: RunConfig):
    n = cfg.rank
    if cfg.witness is not None:
        w = parse_signed_perm(cfg.witness)
        if w.rank != n:
            raise InvalidRankError(
                f"witness {cfg.witness} has rank {w.rank}, expected {n}"
            )
        return 0, [], correspondence.trace_element(w), None
    report = correspondence.verify_bijection(
        n, workers=cfg.workers, cap=cfg.combinatorial_cap
    )
    return (0 if report.passed else 1), report.checks_json(), report.data, None


def _cmd_betti(cfg: RunConfig):
    n = cfg.rank
    summary = _block_summary(n, cfg.cohomology_cap)
    betti = ce.betti_from_summary(summary, n)
    formula = poincare.weyl_poincare(n)
    class_counts = list(poincare.weyl_length_histogram(n).coeffs)
    report = VerificationReport(rank=n)
    report.add(
        "betti-match",
        "Betti numbers of the nilradical equal the type-C length histogram",
        betti == list(formula.coeffs),
        {"betti": betti, "formula": list(formula.coeffs)},
    )
    data = {"betti": betti, "class_counts": class_counts}
    if cfg.per_weight:
        data["blocks"] = [
            {"degree": p, "weight": list(w), "dimension": dim, "rank_d": rank}
            for p, w, dim, rank in summary
        ]
    csv_rows = None
    if cfg.fmt == "csv":
        csv_rows = [["degree", "betti"]] + [[k, b] for k, b in enumerate(betti)]
    return (0 if report.passed else 1), report.checks_json(), data, csv_rows


def _cmd_classes(cfg: RunConfig):
    report = ce.verify_cohomology_basis(cfg.rank, cap=cfg.cohomology_cap)
    return (0 if report.passed else 1), report.checks_json(), report.data, None


def _cmd_poincare(cfg: RunConfig):
    n = cfg.rank
    wp = poincare.weyl_poincare(n)
    sp = poincare.sym_poincare(n)
    ig = poincare.ideal_generating(n)
    report = VerificationReport(rank=n)
    report.add(
        "product-identity",
        "the two length generating functions multiply out: sym * ideals = type-C",
        sp * ig == wp,
        {"weyl": list(wp.coeffs)},
    )
    try:
        quotient_ok = wp.div_exact(sp) == ig
        detail = None
    except ConsistencyError as exc:
        quotient_ok = False
        detail = {"error": str(exc)}
    report.add(
        "exact-division",
        "the quotient of the generating functions is exactly prod_i (1 + t^i)",
        quotient_ok,
        detail,
    )
    report.add(
        "palindromic",
        "all three generating functions are palindromic",
        wp.is_palindromic() and sp.is_palindromic() and ig.is_palindromic(),
        None,
    )
    product = sp * ig
    data = {
        "weyl_poincare": list(wp.coeffs),
        "sym_poincare": list(sp.coeffs),
        "ideal_generating": list(ig.coeffs),
        "sym_times_ideal": list(product.coeffs),
        "identities": {
            "product": product == wp,
            "exact_division": quotient_ok,
        },
    }
    csv_rows = None
    if cfg.fmt == "csv":
        width = len(wp.coeffs)
        csv_rows = [["name"] + [f"c{k}" for k in range(width)]]
        for name, poly in (
            ("weyl_poincare", wp),
            ("sym_poincare", sp),
            ("ideal_generating", ig),
            ("sym_times_ideal", product),
        ):
            csv_rows.append(
                [name] + list(poly.coeffs) + [""] * (width - len(poly.coeffs))
            )
    return (0 if report.passed else 1), report.checks_json(), data, csv_rows


def _oracle_agreement_record(n: int, rng: random.Random, report: VerificationReport) -> None:
    nd = num_diffs(n)
    nphi1 = n * (n + 1) // 2
    exhaustive = n <= 5
    if exhaustive:
        locals_iter = range(1 << nphi1)
        mode = "exhaustive"
    else:
        sample = {rng.getrandbits(nphi1) for _ in range(20000)}
        sample.update(
            psi.members.mask >> nd for psi in ideals.enumerate_increasing(n)
        )
        locals_iter = sorted(sample)
        mode = "sampled"
    mismatches = 0
    checked = 0
    for local in locals_iter:
        s = RootSet(n, local << nd)
        checked += 1
        if ideals.is_increasing(s) != ideals.is_abelian_ideal_combinatorial(s):
            mismatches += 1
    report.add(
        "increasing-vs-root-addition",
        "a sums-only subset is upward closed exactly when it passes the "
        "root-addition ideal criterion",
        mismatches == 0,
        {"mode": mode, "subsets_checked": checked, "mismatches": mismatches},
    )


def _lie_agreement_records(n: int, rng: random.Random, report: VerificationReport) -> None:
    if n > 4:
        report.add(
            "lie-vs-combinatorial",
            "matrix-level and root-addition ideal criteria agree",
            True,
            {"max_rank": 4},
            skipped=True,
        )
        return
    nd = num_diffs(n)
    nphi1 = n * (n + 1) // 2
    mismatches = 0
    for local in range(1 << nphi1):
        s = RootSet(n, local << nd)
        if ideals.is_abelian_ideal_combinatorial(s) != liealg.is_abelian_ideal_lie(n, s):
            mismatches += 1
    rand_mismatches = 0
    n2 = n * n
    for _ in range(10000):
        mask = rng.getrandbits(n2)
        if nd and not mask & ((1 << nd) - 1):
            mask |= 1 << rng.randrange(nd)
        s = RootSet(n, mask)
        if ideals.is_abelian_ideal_combinatorial(s) != liealg.is_abelian_ideal_lie(n, s):
            rand_mismatches += 1
    report.add(
        "lie-vs-combinatorial",
        "matrix-level and root-addition ideal criteria agree on every "
        "sums-only subset and on seeded random subsets with differences",
        mismatches == 0 and rand_mismatches == 0,
        {
            "sums_only_subsets": 1 << nphi1,
            "sums_only_mismatches": mismatches,
            "random_subsets": 10000,
            "random_mismatches": rand_mismatches,
        },
    )


def verify_all(cfg: RunConfig) -> VerificationReport:
    """The consolidated verification suite, in dependency order."""
    n = cfg.rank
    rng = random.Random(cfg.seed)
    report = VerificationReport(rank=n)

    items = list(ideals.enumerate_increasing(n))
    report.add(
        "ideal-count",
        "the number of abelian ideals equals 2^rank",
        len(items) == 1 << n,
        {"count": len(items), "expected": 1 << n},
    )
    hist = ideals.dimension_histogram(n)
    gen = poincare.ideal_generating(n)
    report.add(
        "ideal-histogram",
        "ideal dimension counts equal the coefficients of prod_i (1 + t^i)",
        hist == gen,
        {"histogram": list(hist.coeffs), "formula": list(gen.coeffs)},
    )

    _oracle_agreement_record(n, rng, report)
    _lie_agreement_records(n, rng, report)

    brep = correspondence.verify_bijection(n, workers=cfg.workers, cap=cfg.combinatorial_cap)
    report.extend(brep, prefix="bijection")

    weyl_hist = poincare.IntPolynomial.from_coeffs(brep.data["weyl_length_histogram"])
    prep = poincare.verify_identities(
        n, weyl_hist=weyl_hist, include_betti_record=False, cap=cfg.combinatorial_cap
    )
    report.extend(prep, prefix="poincare")

    if n <= cfg.cohomology_cap:
        cx = ce.ChainComplex(n, cap=cfg.cohomology_cap)
        betti = cx.betti()
        wp = poincare.weyl_poincare(n)
        report.add(
            "betti-match",
            "Betti numbers of the nilradical equal the type-C length histogram",
            betti == list(wp.coeffs),
            {"betti": betti, "formula": list(wp.coeffs)},
        )
        mrep = ce.verify_cohomology_basis(n, cap=cfg.cohomology_cap, complex_=cx)
        report.extend(mrep, prefix="classes")
        _cache_store(
            "blocks",
            n,
            [[p, list(w), dim, rank] for p, w, dim, rank in cx.block_summary()],
        )
    else:
        report.add(
            "betti-match",
            "Betti numbers of the nilradical equal the type-C length histogram",
            True,
            {"cohomology_cap": cfg.cohomology_cap},
            skipped=True,
        )
        report.add(
            "classes.basis",
            "inversion-set cocycles give a cohomology basis",
            True,
            {"cohomology_cap": cfg.cohomology_cap},
            skipped=True,
        )
    return report


def _cmd_verify(cfg: RunConfig):
    report = verify_all(cfg)
    return (0 if report.passed else 1), report.checks_json(), report.data, None


_HANDLERS = {
    "ideals": _cmd_ideals,
    "weyl": _cmd_weyl,
    "bijection": _cmd_bijection,
    "structure": _cmd_structure,
    "betti": _cmd_betti,
    "classes": _cmd_classes,
    "poincare": _cmd_poincare,
    "verify": _cmd_verify,
}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        code, checks, data, csv_rows = _HANDLERS[args.command](cfg)
    except (InvalidRankError, RankCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if cfg.fmt == "csv":
        if csv_rows is None:
            print(f"error: command {args.command} has no CSV form", file=sys.stderr)
            return 2
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(csv_rows)
        _emit(buf.getvalue(), cfg.out)
        return code

    doc = {"rank": cfg.rank, "command": args.command, "checks": checks, "data": data}
    _emit(json.dumps(doc, indent=2) + "\n", cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
