"""
Command-line front end.

    groupaccretion stats    --corpus FILE --split A.1 [--split main ...]
    groupaccretion score    --corpus FILE --split main --method all --out DIR
    groupaccretion evaluate --corpus FILE --split main --ranked DIR/gks
    groupaccretion verify   --corpus FILE --split A.1

Options can also come from ``--config FILE`` (``key=value`` lines, keys
spelled like the long flags); flags given on the command line win.
Exit status: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .candidates import SA_ENUMERATION_CAP, EvaluationReport, actual_events, global_metrics, per_group_metrics
from .corpus import compute_accretion_stats, format_stats_rows, ingest, make_split, resolve_split
from .errors import InputError
from .pipeline import (METHODS, MethodParams, config_header, read_ranked, run_scoring, training_view,
                       write_group_lists, write_ranked)

log = logging.getLogger("groupaccretion")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


@dataclass
class RunConfig:
    corpus: str = ""
    split: str = "main"
    method: str = "all"
    mode: str = "both"
    beta: float = 0.5
    max_length: int = 4
    alpha: float = 0.6
    lg: int = 4
    lo: int = 4
    mu: float | None = None  # None: 0.1 for global lists, 0.5 for per-group lists
    tol: float = 1e-8
    n_top: int = 10000
    n_top_group: int = 100
    sa_cap: int = SA_ENUMERATION_CAP
    threads: int = 1
    seed: int = 0  # runs are deterministic; kept for config compatibility
    out: str = "out"
    recall_convention: str = "zero"

    def method_params(self) -> MethodParams:
        mu_global = 0.1 if self.mu is None else self.mu
        mu_group = 0.5 if self.mu is None else self.mu
        return MethodParams(self.beta, self.max_length, self.alpha, self.lg, self.lo, mu_global, mu_group, self.tol)

    def methods(self) -> list[str]:
        if self.method == "all":
            return list(METHODS)
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)} or all")
        return [self.method]

    def modes(self) -> list[str]:
        if self.mode == "both":
            return ["ia", "sa"]
        if self.mode not in ("ia", "sa"):
            raise InputError(f"unknown mode {self.mode!r}; choose ia, sa or both")
        return [self.mode]

    def echo(self) -> dict[str, object]:
        out = {k: v for k, v in asdict(self).items() if k not in ("out", "threads", "mu")}
        p = self.method_params()
        out["mu"], out["mu_per_group"] = p.mu, p.mu_per_group
        return out


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values: dict[str, object] = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for f in fields(RunConfig):
        given = getattr(args, f.name, None)
        if isinstance(given, list):
            given = given[0] if given else None
        if given is not None:
            values[f.name] = given
    unknown = set(values) - {f.name for f in fields(RunConfig)}
    if unknown:
        raise InputError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    cfg = RunConfig()
    for f in fields(RunConfig):
        if f.name not in values:
            continue
        raw = values[f.name]
        default = getattr(cfg, f.name)
        try:
            if isinstance(raw, str) and f.name != "split":
                if isinstance(default, bool):
                    raw = raw.lower() in ("1", "true", "yes")
                elif isinstance(default, int):
                    raw = int(raw)
                elif isinstance(default, float) or f.name == "mu":
                    raw = float(raw)
        except ValueError:
            raise InputError(f"bad value for {f.name}: {raw!r}") from None
        setattr(cfg, f.name, raw)
    # parameter ranges are checked by the parameter classes
    p = cfg.method_params()
    p.katz(), p.birw(), p.glps(), p.glps(per_group=True)
    if cfg.n_top < 1 or cfg.n_top_group < 0 or cfg.threads < 1:
        raise InputError("n-top must be >= 1, n-top-group >= 0 and threads >= 1")
    return cfg


def _splits(args: argparse.Namespace, cfg: RunConfig) -> list[str]:
    return list(args.split) if isinstance(args.split, list) and args.split else [cfg.split]


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    corpus = ingest(cfg.corpus)
    rows = []
    for name in _splits(args, cfg):
        train, test = make_split(corpus, resolve_split(name))
        rows.append((name, compute_accretion_stats(train, test, sg_outside_parent=not args.sg_any_actor)))
    text = format_stats_rows(rows)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "stats.tsv"
    path.write_text(config_header({"corpus": cfg.corpus, "splits": ",".join(n for n, _ in rows),
                                   "sg_outside_parent": not args.sg_any_actor}) + text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    corpus = ingest(cfg.corpus)
    view = training_view(corpus, resolve_split(cfg.split))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    params = cfg.method_params()
    for method in cfg.methods():
        echo = {**cfg.echo(), "method": method, "split_years": str(view.split)}
        result = run_scoring(view, method, cfg.modes(), cfg.n_top, cfg.n_top_group or None, params,
                             cfg.sa_cap, cfg.threads)
        for mode, ranked in result.global_lists.items():
            path = out / f"{method}_{mode}.tsv"
            write_ranked(path, view, ranked, echo)
            print(f"wrote {path} ({len(ranked)} candidates)")
        for mode, lists in result.group_lists.items():
            for path in write_group_lists(out / method, view, lists, mode, cfg.n_top_group, echo):
                print(f"wrote {path}")
    return EXIT_OK


def _ranked_files(target: Path) -> dict[str, list[Path]]:
    """Global and per-group ranked-list files for a file path or a ``DIR/method`` prefix."""
    if target.is_file():
        return {"file": [target]}
    found = {}
    for mode in ("ia", "sa"):
        g = target.with_name(f"{target.name}_{mode}.tsv")
        if g.is_file():
            found[f"global_{mode}"] = [g]
        shards = sorted(target.parent.glob(f"{target.name}_{mode}_groups_*.tsv"))
        if shards:
            found[f"group_{mode}"] = shards
    if not found:
        raise InputError(f"no ranked lists found for {target}")
    return found


def evaluate_files(cfg: RunConfig, target: Path) -> EvaluationReport:
    corpus = ingest(cfg.corpus)
    train, test = make_split(corpus, resolve_split(cfg.split))
    report = EvaluationReport()
    files = _ranked_files(target)
    if "file" in files:
        meta = read_ranked(files["file"][0], corpus).meta
        kind = "global" if meta.get("list", "global") == "global" else "group"
        files = {f"{kind}_{meta['mode']}": files["file"]}
    for label, paths in sorted(files.items()):
        kind, mode = label.split("_")
        n_actual, per_group_actual = actual_events(train, test, mode)
        parsed = [read_ranked(p, corpus) for p in paths]
        if any(p.meta["mode"] != mode for p in parsed):
            raise InputError(f"{paths[0]}: mode in header does not match file name")
        n_top = int(parsed[0].meta["n_top"])
        if kind == "global":
            p, r = global_metrics([row[2] for row in parsed[0].rows], n_top, test, n_actual)
            setattr(report, f"precision_at_N_{mode}", p)
            setattr(report, f"recall_at_N_{mode}", r)
        else:
            lists: dict[int, list] = {}
            for pf in parsed:
                for row in pf.rows:
                    lists.setdefault(row[3], []).append(row[2])
            avg_p, avg_r, detail = per_group_metrics(lists, len(train), test, per_group_actual, n_top,
                                                     cfg.recall_convention)
            setattr(report, f"avg_precision_at_Ng_{mode}", avg_p)
            setattr(report, f"avg_recall_at_Ng_{mode}", avg_r)
            report.per_group[mode] = detail
    return report


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    target = Path(args.ranked)
    report = evaluate_files(cfg, target)
    header = config_header({**cfg.echo(), "ranked": str(target)}).rstrip("\n")
    text = report.format(header)
    stem = target.stem if target.is_file() else target.name
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{stem}_report.txt"
    path.write_text(text, encoding="utf-8")
    sys.stdout.write(report.format())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import run_checks
    cfg = resolve_config(args)
    corpus = ingest(cfg.corpus)
    view = training_view(corpus, resolve_split(cfg.split))
    checks = run_checks(view, cfg.method_params(), mutate=args.mutate)
    for c in checks:
        print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}".rstrip())
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groupaccretion", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, multi_split: bool = False) -> None:
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--corpus", help="corpus TSV file")
        if multi_split:
            p.add_argument("--split", action="append", help="preset (A.1..A.9, main, main-2004) or Y0-Y1:Y2-Y3; repeatable")
        else:
            p.add_argument("--split", help="preset (A.1..A.9, main, main-2004) or Y0-Y1:Y2-Y3")
        p.add_argument("--out", help="output directory (default: out)")

    def method_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--method", help="gks, brws, glps or all")
        p.add_argument("--mode", help="ia, sa or both")
        p.add_argument("--beta", type=float)
        p.add_argument("--max-length", dest="max_length", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--lg", type=int, help="group-side walk length cap")
        p.add_argument("--lo", type=int, help="outer-side walk length cap")
        p.add_argument("--mu", type=float, help="GLPS regularisation (default 0.1 global, 0.5 per-group)")
        p.add_argument("--tol", type=float)
        p.add_argument("--n-top", dest="n_top", type=int)
        p.add_argument("--n-top-group", dest="n_top_group", type=int, help="0 disables per-group lists")
        p.add_argument("--sa-cap", dest="sa_cap", type=int)
        p.add_argument("--threads", type=int)

    p = sub.add_parser("stats", help="accretion statistics of test periods")
    common(p, multi_split=True)
    p.add_argument("--sg-any-actor", action="store_true",
                   help="count SGs whose absorbed actor is only outside the subgroup, not the parent group")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="ranked candidate lists")
    common(p)
    method_flags(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", help="precision/recall of ranked lists")
    common(p)
    p.add_argument("--ranked", required=True, help="ranked-list file or DIR/method prefix")
    p.add_argument("--n-top-group", dest="n_top_group", type=int)
    p.add_argument("--recall-convention", dest="recall_convention", choices=("zero", "exclude"))
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("verify", help="cross-check scorers against brute-force oracles")
    common(p)
    method_flags(p)
    p.add_argument("--mutate", action="store_true", help="perturb the scorers (negative control)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
