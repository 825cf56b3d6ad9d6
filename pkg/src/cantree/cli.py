"""Command-line interface: build/update tree snapshots, mine, optimize,
diff versions, and run the benchmark harness.

Exit status 0 on success, 1 on usage errors, 2 on data/format errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .bench import BenchConfig, report_csv, run_bench
from .errors import CanTreeError
from .mining import frequent_items, mine_frequent_itemsets
from .recommend import diff_versions, optimize_database
from .transactions import MinSupport, load_database, serialize_database
from .tree import CanTree


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage problems; we reserve 2 for data
    # errors, so turn them into exceptions and map them to status 1
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cantree",
        description="Incremental frequent-pattern mining over a canonical-order tree.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("build", help="parse a transaction CSV and emit a tree snapshot")
    p.add_argument("--input", required=True, help="transaction CSV path")
    p.add_argument("--out", help="snapshot output path (default: stdout)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("update", help="apply deletions/insertions to a snapshot in place")
    p.add_argument("--snapshot", required=True, help="snapshot path (rewritten on success)")
    p.add_argument("--insert", help="transaction CSV to insert")
    p.add_argument("--delete", help="transaction CSV to delete")
    p.set_defaults(func=_cmd_update)

    p = sub.add_parser("mine", help="mine frequent items or itemsets")
    p.add_argument("--input", help="transaction CSV path")
    p.add_argument("--snapshot", help="tree snapshot path (alternative to --input)")
    p.add_argument("--minsup", required=True, help="N (absolute) or P%% (fraction)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--itemsets", action="store_true", help="full itemset mining (default)")
    mode.add_argument("--items-only", action="store_true", help="frequent single items only")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("optimize", help="project transactions onto their frequent items")
    p.add_argument("--input", required=True)
    p.add_argument("--minsup", required=True, help="N (absolute) or P%% (fraction)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("diff", help="compare frequent items across two database versions")
    p.add_argument("--old", required=True, help="old-version transaction CSV")
    p.add_argument("--new", required=True, help="new-version transaction CSV")
    p.add_argument("--minsup", required=True, help="N (absolute) or P%% (fraction)")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("bench", help="run the incremental-vs-rebuild benchmark")
    p.add_argument("--config", help="key=value config file (default: documented workload)")
    p.add_argument("--seed", type=int, help="override the workload seed")
    p.add_argument("--out", help="report CSV path (default: stdout)")
    p.set_defaults(func=_cmd_bench)

    return parser


def _write_output(out_path, text):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _replace_file(path, text):
    # write-then-rename so a failed run never leaves a half-written snapshot
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cantree-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_build(args):
    tree = CanTree()
    tree.insert_batch(load_database(args.input))
    _write_output(args.out, tree.to_snapshot())


def _cmd_update(args):
    if not args.insert and not args.delete:
        raise _UsageError("update: at least one of --insert/--delete is required")
    tree = CanTree.from_snapshot(_read_text(args.snapshot))
    if args.delete:
        for t in load_database(args.delete):
            tree.delete(t)
    if args.insert:
        tree.insert_batch(load_database(args.insert))
    _replace_file(args.snapshot, tree.to_snapshot())


def _cmd_mine(args):
    if bool(args.input) == bool(args.snapshot):
        raise _UsageError("mine: exactly one of --input/--snapshot is required")
    if args.input:
        tree = CanTree()
        tree.insert_batch(load_database(args.input))
    else:
        tree = CanTree.from_snapshot(_read_text(args.snapshot))
    minsup = MinSupport.parse(args.minsup)
    if args.items_only:
        rows = frequent_items(tree, minsup)
        text = "item,support\n" + "".join(f"{name},{support}\n" for name, support in rows)
    else:
        text = mine_frequent_itemsets(tree, minsup).to_csv()
    _write_output(args.out, text)


def _cmd_optimize(args):
    optimized = optimize_database(load_database(args.input), MinSupport.parse(args.minsup))
    _write_output(args.out, serialize_database(optimized))


def _cmd_diff(args):
    report = diff_versions(
        load_database(args.old), load_database(args.new), MinSupport.parse(args.minsup)
    )
    _write_output(args.out, report.to_csv() if args.format == "csv" else report.to_text())


def _cmd_bench(args):
    config = BenchConfig.parse(_read_text(args.config)) if args.config else BenchConfig()
    if args.seed is not None:
        config = config.with_seed(args.seed)
    _write_output(args.out, report_csv(run_bench(config)))


def run(argv=None) -> int:
    """Parse arguments, dispatch, and map failures to exit statuses."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (CanTreeError, OSError) as exc:
        print(f"cantree: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
