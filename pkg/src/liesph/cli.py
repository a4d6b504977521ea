"""Command-line frontend: exhaustive verifiers, atlases, and single-subject
inspection, with JSON/CSV/markdown reports and an optional result cache.

Exit codes: 0 success, 1 mismatch found, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import affine as A
from . import ideals as I
from . import spherical as S
from . import weyl as W
from .chevalley import build_chevalley, exp_root_action, height
from .errors import BudgetExceeded, LiesphError
from .roots import CartanType, build_root_system

DEFAULT_BUDGET = 200_000
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liesph",
        description="Exact verification of commutativity/sphericality "
        "correspondences for Weyl groups and Borel ideals.",
    )
    parser.add_argument("--version", action="version", version=f"liesph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, help="Cartan type, e.g. B3 or F4")
        p.add_argument("--swap", action="store_true",
                       help="swap the two simple-root labels (rank-2 types only)")
        p.add_argument("--format", choices=("json", "csv", "md"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=5)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="largest Weyl group order accepted")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--cache", help="directory for cached report payloads")
        p.add_argument("--cap-words", type=int, default=W.DEFAULT_WORD_CAP)

    p_verify = sub.add_parser("verify", help="run an exhaustive verifier")
    p_verify.add_argument("what", choices=("theorem1", "theorem2", "subspaces", "lemmas", "g2"))
    common(p_verify)

    p_atlas = sub.add_parser("atlas", help="emit the ideal or FC-element atlas")
    p_atlas.add_argument("what", choices=("ideals", "fc"))
    common(p_atlas)

    p_inspect = sub.add_parser("inspect", help="drill into one element or ideal")
    common(p_inspect)
    p_inspect.add_argument("--word", help="reduced word, e.g. 1,2,1")
    p_inspect.add_argument("--ideal-gen", dest="ideal_gen",
                           help="ideal generators as ;-separated coordinate lists, e.g. 2,1")
    return parser


# -- formatting -------------------------------------------------------------------


def _canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_escape(value) -> str:
    text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
    if any(c in text for c in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _to_csv(report: dict) -> str:
    records = report.get("records")
    lines = []
    if isinstance(records, list) and records and isinstance(records[0], dict):
        header = sorted({k for r in records for k in r})
        lines.append(",".join(header))
        for r in records:
            lines.append(",".join(_csv_escape(r.get(k, "")) for k in header))
        meta = {k: v for k, v in report.items() if k != "records"}
        for k in sorted(meta):
            lines.append(f"# {k}={json.dumps(meta[k], sort_keys=True)}")
    else:
        lines.append("key,value")
        for k in sorted(report):
            lines.append(f"{_csv_escape(k)},{_csv_escape(report[k])}")
    return "\n".join(lines) + "\n"


def _to_md(report: dict) -> str:
    records = report.get("records")
    lines = []
    if isinstance(records, list) and records and isinstance(records[0], dict):
        header = sorted({k for r in records for k in r})
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join([" --- "] * len(header)) + "|")
        for r in records:
            lines.append(
                "| " + " | ".join(json.dumps(r.get(k, ""), sort_keys=True) for k in header) + " |"
            )
        lines.append("")
        for k in sorted(k for k in report if k != "records"):
            lines.append(f"- **{k}**: {json.dumps(report[k], sort_keys=True)}")
    else:
        lines.append("| key | value |")
        lines.append("| --- | --- |")
        for k in sorted(report):
            lines.append(f"| {k} | {json.dumps(report[k], sort_keys=True)} |")
    return "\n".join(lines) + "\n"


def _emit(report: dict, fmt: str, out: str | None):
    if fmt == "json":
        text = _canonical_json(report)
    elif fmt == "csv":
        text = _to_csv(report)
    else:
        text = _to_md(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- cache ------------------------------------------------------------------------


def _cache_fetch(args, key_fields: dict):
    if not args.cache:
        return None, None
    key = json.dumps({"version": __version__, **key_fields}, sort_keys=True)
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    path = os.path.join(args.cache, f"{digest}.json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh), path
    return None, path


def _cache_store(path: str | None, report: dict):
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            fh.write(_canonical_json(report))


# -- commands ---------------------------------------------------------------------


def _parse_type(args) -> CartanType:
    return CartanType.parse(args.type)


def _check_budget(ct: CartanType, budget: int):
    order = ct.weyl_order()
    if order > budget:
        raise BudgetExceeded(f"|W({ct.name})| = {order} exceeds budget {budget}")


def cmd_verify(args) -> int:
    ct = _parse_type(args)
    if args.what == "g2" and ct.name != "G2":
        raise LiesphError("verify g2 requires --type G2")
    _check_budget(ct, args.budget)
    key = {
        "command": "verify",
        "what": args.what,
        "type": ct.name,
        "swap": args.swap,
        "seed": args.seed,
        "trials": args.trials,
    }
    report, cache_path = _cache_fetch(args, key)
    if report is None:
        rs = build_root_system(ct, swap=args.swap)
        if args.what == "theorem1":
            L = build_chevalley(rs)
            report = S.verify_theorem1(rs, L, budget=args.budget, workers=args.workers)
        elif args.what == "theorem2":
            report = I.verify_theorem2(rs)
        elif args.what == "subspaces":
            report = S.verify_subspace_theorem(rs, budget=args.budget)
        elif args.what == "lemmas":
            report = S.verify_lemma_quadruples(rs)
        else:
            report = _g2_report(rs)
        report["command"] = f"verify-{args.what}"
        report["seed"] = args.seed
        _cache_store(cache_path, report)
    _emit(report, args.format, args.out)
    bad = report.get("mismatches", report.get("violations", []))
    return EXIT_MISMATCH if bad else EXIT_OK


def _g2_report(rs) -> dict:
    """Unit checks for the G2-specific statements: the two non-spherical
    pair mechanisms, the one-parameter degeneration, and both exhaustive
    biconditionals."""
    L = build_chevalley(rs)
    checks = []

    def record(name, ok, **extra):
        checks.append({"name": name, "ok": bool(ok), **extra})

    i = rs.root_from_coords
    a1, a2 = (1, 0), (0, 1)
    pair_orth = {i((0, 1)).index: 1, i((2, 1)).index: 1}
    record("orthogonal_pair_height_4", height(L, pair_orth) == 4)

    gam = i((1, 1))
    ia, ib, ith = i((1, 0)).index, i((2, 1)).index, i((3, 2)).index
    n_ga = L.ntab[(gam.index, ia)]
    n_gb = L.ntab[(gam.index, ib)]
    ok_poly = True
    for xi in (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)):
        got = exp_root_action(L, gam, xi, {ia: Fraction(1), ib: Fraction(1)})
        want = {ia: Fraction(1)}
        c2 = 1 + n_ga * xi
        c3 = Fraction(1, 2) * n_gb * xi * (2 + n_ga * xi)
        if c2:
            want[ib] = c2
        if c3:
            want[ith] = c3
        ok_poly = ok_poly and got == want
    record("one_parameter_coefficients", ok_poly)

    xi0 = Fraction(-1, n_ga)
    reached = exp_root_action(L, gam, xi0, {ia: Fraction(1), ib: Fraction(1)})
    ok_reach = set(reached) == {ia, ith} and reached[ith] != 0
    record("degeneration_reaches_e_a1_plus_e_theta", ok_reach, xi0=str(xi0))
    record("degenerated_element_not_spherical", ok_reach and height(L, reached) == 4)

    record(
        "s2_conjugates_case_iii_to_case_ii",
        W.apply_simple(rs, 2, i((1, 1))) == i((1, 0))
        and W.apply_simple(rs, 2, i((2, 1))) == i((2, 1)),
    )

    t1 = S.verify_theorem1(rs)
    record("commutative_iff_spherical", not t1["mismatches"], elements=t1["elements"])
    t2 = I.verify_theorem2(rs)
    record("ideals_spherical_iff_abelian", not t2["mismatches"],
           ideals=t2["ideals"], spherical=t2["spherical"])

    els = list(W.enumerate_weyl(rs))
    s2s1s2 = W.from_word(rs, (2, 1, 2))
    record(
        "commutative_iff_bruhat_below_s2s1s2",
        all(W.is_commutative_inv(e) == W.bruhat_leq(e, s2s1s2) for e in els),
    )
    record(
        "fc_iff_length_le_5_pairing_iff_le_4",
        all((e.length <= 5) == W.is_fc_inv(e) for e in els)
        and all((e.length <= 4) == W.pairing_nonneg(rs, e.inv) for e in els),
    )

    failed = [c["name"] for c in checks if not c["ok"]]
    return {"type": "G2", "checks": checks, "mismatches": failed}


def cmd_atlas(args) -> int:
    ct = _parse_type(args)
    _check_budget(ct, args.budget)
    key = {"command": "atlas", "what": args.what, "type": ct.name, "swap": args.swap}
    report, cache_path = _cache_fetch(args, key)
    if report is None:
        rs = build_root_system(ct, swap=args.swap)
        maximal_spherical = None
        if args.what == "ideals":
            records = I.ideal_atlas(rs)
            maximal_spherical = I.maximal_spherical_ideals(rs)
        else:
            L = build_chevalley(rs)
            records = []
            for e in W.enumerate_weyl(rs, budget=args.budget):
                if not W.is_fc_inv(e):
                    continue
                records.append(
                    {
                        "word": list(e.canonical_word()),
                        "length": e.length,
                        "inversions": [list(rs.roots[i].coords) for i in e.inv],
                        "commutative": W.is_commutative_inv(e),
                        "spherical": S.is_spherical_subspace(L, e.inv),
                    }
                )
            records.sort(key=lambda r: (r["length"], r["word"]))
        report = {
            "command": f"atlas-{args.what}",
            "type": ct.name,
            "count": len(records),
            "records": records,
        }
        if maximal_spherical is not None:
            report["maximal_spherical_ideals"] = maximal_spherical
        _cache_store(cache_path, report)
    _emit(report, args.format, args.out)
    return EXIT_OK


def _parse_coords(text: str, rank: int) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != rank or not all(p.lstrip("-").isdigit() for p in parts):
        raise LiesphError(f"cannot parse root coordinates {text!r} for rank {rank}")
    return tuple(int(p) for p in parts)


def cmd_inspect(args) -> int:
    ct = _parse_type(args)
    if bool(args.word) == bool(args.ideal_gen):
        raise LiesphError("inspect needs exactly one of --word / --ideal-gen")
    _check_budget(ct, args.budget)
    rs = build_root_system(ct, swap=args.swap)
    L = build_chevalley(rs)

    if args.word:
        try:
            letters = [int(p) for p in args.word.split(",")]
        except ValueError:
            raise LiesphError(f"cannot parse word {args.word!r}") from None
        w = W.from_word(rs, letters)
        ps = w.inv
        words, overflow = W.reduced_words(w, cap=args.cap_words)
        subject = {
            "subject": "biconvex",
            "word": letters,
            "canonical_word": list(w.canonical_word()),
            "length": w.length,
            "inversions": [list(rs.roots[i].coords) for i in ps],
            "fully_commutative": W.is_fc_inv(w),
            "commutative": W.is_commutative_inv(w),
            "reduced_words": len(words),
            "reduced_words_capped": overflow,
        }
        if not overflow:
            # definition-based deciders double-check the criteria when the
            # word set fits under the cap
            subject["fully_commutative_by_words"] = W.is_fc_def(w, cap=args.cap_words)
            subject["commutative_by_words"] = W.is_commutative_def(w, cap=args.cap_words)
    else:
        gens = [rs.root_from_coords(_parse_coords(g, rs.rank)) for g in args.ideal_gen.split(";")]
        for g in gens:
            if not g.is_positive:
                raise LiesphError("ideal generators must be positive roots")
        ideal = I.ideal_from_generators(rs, gens)
        ps = ideal.members
        Shat = I.psi_hat(rs, ideal)
        subject = {
            "subject": "ideal",
            "generators": [list(rs.roots[i].coords) for i in I.minimal_generators(rs, ps)],
            "members": [list(rs.roots[i].coords) for i in ps],
            "layers": [[list(rs.roots[i].coords) for i in layer.indices()] for layer in ideal.layers],
            "psi_hat": Shat.to_json_list(),
            "w_word": list(I.w_of_ideal(rs, ideal).word),
            "abelian": I.is_abelian(rs, ps),
            "fully_commutative": A.is_fc_affine(Shat),
            "commutative": A.is_commutative_affine(Shat),
        }

    base = S.make_report(L, ps, subject["subject"]).to_json_dict()
    dim_orbit, h, ranks = S.orbit_fingerprint(L, ps, trials=args.trials, seed=args.seed)
    report = {
        **base,
        **subject,
        "generic_height": S.generic_height(L, ps, trials=args.trials, seed=args.seed),
        "orbit_fingerprint": {"orbit_dim": dim_orbit, "height": h, "ranks": list(ranks)},
        "command": "inspect",
        "seed": args.seed,
        "trials": args.trials,
    }
    _emit(report, args.format, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "atlas":
            return cmd_atlas(args)
        return cmd_inspect(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except LiesphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
