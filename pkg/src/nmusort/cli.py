"""Command-line front end: ``nmu <subcommand> ...``.

Exit codes: 0 for a positive verdict, 1 for a negative one (not
sort-invariant, a violation, a mismatch), 2 for unusable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import permutations
from pathlib import Path

from . import __version__, analyzer, fixtures, io, kernels, preimage, sorting
from ._parallel import default_workers
from .poset import LabelingError, PosetError

DEFAULT_SEED = 0
SCHEMA = 1


class InputError(Exception):
    pass


def _emit(args, report: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(text)


def _load_poset(path):
    try:
        return io.load_poset(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_labeling(p, path):
    try:
        return io.load_labeling(p, path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_sorted(path):
    try:
        rows = preimage.parse_matrix(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return preimage.SortedMatrix(rows)


def _fmt_labeling(p, values):
    if p.backing == "grid":
        return preimage.format_matrix(p.to_matrix(values))
    return ", ".join(f"{x}={v}" for x, v in zip(p.ids, values))


def cmd_check(args):
    p = _load_poset(args.poset)
    vals = _load_labeling(p, args.labeling)
    try:
        report = analyzer.check_report(p, vals, lifted=False if args.literal else None)
    except LabelingError as exc:
        raise InputError(str(exc)) from None
    direct = report["direct_sort_invariant"]
    lines = [f"poset: {p.backing}, {len(p)} elements, transverse={p.transverse}"]
    if report["predicted_sort_invariant"] is None:
        lines.append("predicted: n/a (non-transverse gridwork)")
        lines.append(f"generalized bad corner-set: {report['generalized_bad'] or 'none'}")
    else:
        lines.append(f"predicted sort-invariant: {report['predicted_sort_invariant']}")
        for v in report["bad_corner_sets"]:
            corners = ", ".join(f"{k}={v[k]}" for k in ("x", "y", "w", "z") if v[k] is not None)
            lines.append(f"  bad corner-set {corners}: {v['witness']} labels={v['labels']}")
    lines.append(f"direct sort-invariant: {direct}")
    lines.append("sort-invariant" if direct else "not sort-invariant")
    if args.dot:
        bad = analyzer.bad_corner_sets(p, vals) if p.transverse else []
        Path(args.dot).write_text(analyzer.to_dot(p, vals, bad))
    _emit(args, report, "\n".join(lines))
    return 0 if direct else 1


def cmd_enumerate(args):
    p = _load_poset(args.poset)
    workers = default_workers() if args.workers is None else args.workers
    lifted = False if args.literal else None
    report = {"schema": SCHEMA, "elements": len(p), "backing": p.backing}
    if args.list:
        pl = analyzer.analysis_plan(p, lifted) if p.transverse else sorting.plan(p)
        found = []
        mismatch = None
        total = 0
        for lab in permutations(range(1, len(p) + 1)):
            total += 1
            direct = pl.rc(lab) == pl.cr(lab)
            if direct:
                found.append(lab)
            if args.oracle and p.transverse and mismatch is None and direct != (pl.first_bad(lab) < 0):
                mismatch = lab
        report.update(total=total, sort_invariant=len(found),
                      labelings=[p.as_dict(lab) for lab in found])
    else:
        if p.transverse:
            sweep = analyzer.invariance_sweep(p, workers, lifted)
            total, count, mismatch = sweep.total, sweep.direct, sweep.mismatch
            report["predicted"] = sweep.predicted
        else:
            count, mismatch, total = 0, None, 0
            pl = sorting.plan(p)
            for lab in permutations(range(1, len(p) + 1)):
                total += 1
                count += pl.rc(lab) == pl.cr(lab)
        report.update(total=total, sort_invariant=count)
    lines = [f"{report['sort_invariant']} of {report['total']} labelings are sort-invariant"]
    if args.list:
        lines = [_fmt_labeling(p, lab) + ("\n" if p.backing == "grid" else "") for lab in found] + lines
    status = 0
    if args.oracle:
        if not p.transverse:
            raise InputError("--oracle needs a transverse gridwork")
        report["oracle_agrees"] = mismatch is None
        if mismatch is not None:
            report["mismatch"] = p.as_dict(mismatch)
            lines.append(f"ORACLE MISMATCH on {p.as_dict(mismatch)}")
            print(f"error: predictor and rc/cr oracle disagree on {p.as_dict(mismatch)}",
                  file=sys.stderr)
            status = 1
        else:
            lines.append("oracle: predictor agrees with rc/cr on every labeling")
    _emit(args, report, "\n".join(lines))
    return status


def cmd_nmu_verify(args):
    p = _load_poset(args.poset)
    workers = default_workers() if args.workers is None else args.workers
    exhaustive = args.exhaustive or (args.samples is None and len(p) <= 9)
    if exhaustive:
        result = sorting.nmu_sweep(p, workers)
        mode = "exhaustive"
    else:
        samples = 10_000 if args.samples is None else args.samples
        result = sorting.nmu_sample(p, samples, args.seed)
        mode = f"sampled (seed {args.seed})"
    report = {"schema": SCHEMA, "mode": "exhaustive" if exhaustive else "sampled",
              "seed": None if exhaustive else args.seed, "checked": result.checked,
              "ok": result.ok,
              "violation": None if result.ok else p.as_dict(result.violation)}
    if result.ok:
        text = f"non-messing-up holds on {result.checked} labelings ({mode})"
    else:
        text = f"VIOLATION after {result.checked} labelings ({mode}): {p.as_dict(result.violation)}"
    _emit(args, report, text)
    return 0 if result.ok else 1


def cmd_count(args):
    a = _load_sorted(args.matrix)
    rep = preimage.preimage_report(a)
    out = rep.to_json()
    text = "\n".join([
        str(a),
        f"h(A) = {rep.hA}, h(A^T) = {rep.hAT}",
        f"preimages under RC: {rep.countRC}",
        f"preimages under CR: {rep.countCR}",
        f"P(RC | A) = {rep.probRC} ~ {float(rep.probRC):.6f}",
    ])
    _emit(args, out, text)
    return 0


def cmd_preimage_oracle(args):
    a = _load_sorted(args.matrix)
    if a.r * a.c > preimage.BRUTE_FORCE_LIMIT:
        raise InputError(f"brute force is limited to {preimage.BRUTE_FORCE_LIMIT} cells")
    workers = default_workers() if args.workers is None else args.workers
    rep = preimage.preimage_report(a)
    brute_rc = preimage.brute_force_preimages(a, "RC", workers)
    brute_cr = preimage.brute_force_preimages(a, "CR", workers)
    agree = brute_rc == rep.countRC and brute_cr == rep.countCR
    out = rep.to_json()
    out.update(bruteRC=brute_rc, bruteCR=brute_cr, agree=agree)
    text = "\n".join([
        f"RC: formula {rep.countRC}, brute force {brute_rc}",
        f"CR: formula {rep.countCR}, brute force {brute_cr}",
        "agree" if agree else "DISAGREE",
    ])
    _emit(args, out, text)
    return 0 if agree else 1


def demo_nontransverse_report() -> dict:
    p = fixtures.nontransverse_poset()
    lab = p.values(fixtures.NONTRANSVERSE_LABELING)
    got_rc = p.as_dict(sorting.rc(p, lab))
    got_cr = p.as_dict(sorting.cr(p, lab))
    nmu_all = sorting.nmu_sweep(p).ok
    return {
        "schema": SCHEMA,
        "transverse": p.transverse,
        "labeling": p.as_dict(lab),
        "rc": got_rc,
        "cr": got_cr,
        "rc_matches_fixture": got_rc == fixtures.NONTRANSVERSE_RC,
        "cr_matches_fixture": got_cr == fixtures.NONTRANSVERSE_CR,
        "generalized_bad": analyzer.generalized_bad(p, lab),
        "direct_sort_invariant": analyzer.direct_sort_invariant(p, lab),
        "nmu_all_labelings": nmu_all,
    }


def cmd_demo_nontransverse(args):
    rep = demo_nontransverse_report()
    ok = (rep["rc_matches_fixture"] and rep["cr_matches_fixture"]
          and not rep["generalized_bad"] and not rep["direct_sort_invariant"]
          and rep["nmu_all_labelings"] and not rep["transverse"])
    rep["ok"] = ok

    def show(d):
        return ", ".join(f"{x}={d[x]}" for x in ("b", "r1", "r2", "l", "t"))

    text = "\n".join([
        "five-element poset, rows b<r1<r2 and l<t, columns b<l and r1<r2<t",
        f"labeling : {show(rep['labeling'])}",
        f"RC       : {show(rep['rc'])}  (fixture match: {rep['rc_matches_fixture']})",
        f"CR       : {show(rep['cr'])}  (fixture match: {rep['cr_matches_fixture']})",
        f"generalized bad corner-set present: {rep['generalized_bad']}",
        f"sort-invariant: {rep['direct_sort_invariant']}",
        f"non-messing-up on all 120 labelings: {rep['nmu_all_labelings']}",
        "conclusion: avoiding bad corner-sets does not imply sort-invariance "
        "once a row and a column share more than one element",
    ])
    _emit(args, rep, text)
    return 0 if ok else 1


def cmd_unroll(args):
    p = _load_poset(args.poset)
    if p.backing != "cylinder":
        raise InputError("unroll needs a cylinder poset")
    u = analyzer.unroll(p, args.copies)
    out = {
        "schema": SCHEMA,
        "copies": u.copies,
        "poset": io.poset_to_json(u.poset),
        "transfer": dict(sorted(u.transfer.items())),
        "center": sorted(u.center),
    }
    lines = [f"{u.copies} copies -> {len(u.poset)} planar elements "
             f"({len(u.center)} in the central copy)"]
    status = 0
    if args.labeling:
        vals = _load_labeling(p, args.labeling)
        (a, b), used = analyzer.stable_unrolled_sorts(p, vals)
        cyl_rc, cyl_cr = p.as_dict(sorting.rc(p, vals)), p.as_dict(sorting.cr(p, vals))
        match = a == cyl_rc and b == cyl_cr
        out.update(stable_copies=used, central_rc=a, central_cr=b, matches_cylinder=match)
        lines.append(f"central labels stable from {used} copies; match cylinder sorts: {match}")
        status = 0 if match else 1
    if not args.json:
        lines.append(json.dumps(out["poset"]))
    _emit(args, out, "\n".join(lines))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nmu", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "decide sort-invariance of one labeling")
    sp.add_argument("poset")
    sp.add_argument("labeling")
    sp.add_argument("--dot", metavar="FILE", help="write a Graphviz drawing")
    sp.add_argument("--literal", action="store_true",
                    help="on cylinders, use row/column meets on the cylinder itself")

    sp = add("enumerate", cmd_enumerate, "count sort-invariant labelings")
    sp.add_argument("poset")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check the corner-set predictor on every labeling")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--literal", action="store_true")

    sp = add("nmu-verify", cmd_nmu_verify, "verify the non-messing-up property")
    sp.add_argument("poset")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--samples", type=int)
    mode.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--workers", type=int)

    sp = add("count", cmd_count, "preimage counts and RC probability of a sorted matrix")
    sp.add_argument("matrix")

    sp = add("preimage-oracle", cmd_preimage_oracle, "brute-force preimage counts")
    sp.add_argument("matrix")
    sp.add_argument("--workers", type=int)

    add("demo-nontransverse", cmd_demo_nontransverse, "the non-transverse counterexample")

    sp = add("unroll", cmd_unroll, "unroll a cylinder poset into the plane")
    sp.add_argument("poset")
    sp.add_argument("--copies", type=int)
    sp.add_argument("--labeling")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PosetError, LabelingError, preimage.MatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
