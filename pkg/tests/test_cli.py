from cantree import dataset_path, load_dataset
from cantree.cli import run

V2 = str(dataset_path("v2.csv"))
V3 = str(dataset_path("v3.csv"))

TINY_BENCH_CONFIG = """\
# tiny workload so the harness itself can be exercised quickly
base_sizes=60,120
increment_size=20
alphabet_size=12
items_per_transaction=2..4
minsup=10%
repetitions=3
seed=7
"""


def run_ok(capsys, *argv):
    status = run(list(argv))
    captured = capsys.readouterr()
    assert status == 0, captured.err
    return captured.out


# -- exit statuses -------------------------------------------------------------


def test_no_arguments_is_usage_error(capsys):
    assert run([]) == 1
    err = capsys.readouterr().err
    assert "usage" in err


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 1


def test_unknown_flag(capsys):
    assert run(["mine", "--input", V2, "--minsup", "2", "--wat"]) == 1


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "usage" in capsys.readouterr().out


def test_missing_input_file_is_data_error(capsys):
    assert run(["mine", "--input", "/nonexistent.csv", "--minsup", "2"]) == 2


# -- build ----------------------------------------------------------------------


def test_build_v2_snapshot(tmp_path, capsys):
    snap = tmp_path / "v2.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    lines = snap.read_text().splitlines()
    assert lines[0] == "cantree-snapshot v1"
    assert lines[1] == "txns 4"


def test_build_to_stdout(capsys):
    out = run_ok(capsys, "build", "--input", V2)
    assert out.startswith("cantree-snapshot v1\ntxns 4\n")


def test_build_empty_csv(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    out = run_ok(capsys, "build", "--input", str(empty))
    assert out == "cantree-snapshot v1\ntxns 0\n"


def test_build_malformed_csv_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("t1,l,a\noops\n")
    assert run(["build", "--input", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


# -- update -----------------------------------------------------------------------


def write_rows(path, db, rows):
    path.write_text("".join(f"{t.id},{t.label},{';'.join(t.items)}\n"
                            for t in db.transactions[rows[0]:rows[1]]))


def test_update_insert_matches_full_build(tmp_path, capsys):
    db = load_dataset("v2.csv")
    first, rest = tmp_path / "first.csv", tmp_path / "rest.csv"
    write_rows(first, db, (0, 2))
    write_rows(rest, db, (2, 4))
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", str(first), "--out", str(snap))
    run_ok(capsys, "update", "--snapshot", str(snap), "--insert", str(rest))
    full = run_ok(capsys, "build", "--input", V2)
    assert snap.read_text() == full


def test_update_insert_then_delete_restores_snapshot(tmp_path, capsys):
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    before = snap.read_text()
    extra = tmp_path / "extra.csv"
    extra.write_text("x1,l,zoom;pan\nx2,l,pan\n")
    run_ok(capsys, "update", "--snapshot", str(snap), "--insert", str(extra))
    assert snap.read_text() != before
    run_ok(capsys, "update", "--snapshot", str(snap), "--delete", str(extra))
    assert snap.read_text() == before


def test_update_delete_then_insert_in_one_call(tmp_path, capsys):
    # deletions apply before insertions
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    before = snap.read_text()
    swap = tmp_path / "swap.csv"
    swap.write_text("Item3,google.maps.Polyline,getBounds();mouseout;mouseover;clickable\n")
    run_ok(capsys, "update", "--snapshot", str(snap), "--delete", str(swap),
           "--insert", str(swap))
    assert snap.read_text() == before


def test_update_delete_absent_leaves_snapshot_file_unchanged(tmp_path, capsys):
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    before = snap.read_text()
    missing = tmp_path / "missing.csv"
    missing.write_text("x1,l,rightclick\n")
    assert run(["update", "--snapshot", str(snap), "--delete", str(missing)]) == 2
    assert snap.read_text() == before


def test_update_requires_insert_or_delete(tmp_path, capsys):
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    assert run(["update", "--snapshot", str(snap)]) == 1


def test_update_random_scripts_match_direct_build(tmp_path, capsys):
    import random

    from cantree import CanTree, serialize_database
    import helpers

    rng = random.Random(314)
    for case in range(8):
        db = helpers.random_database(rng, max_items=8, max_transactions=10, min_transactions=2)
        rows = list(db.transactions)
        cut = rng.randint(1, len(rows))
        base_csv = tmp_path / f"base{case}.csv"
        base_csv.write_text(serialize_database(type(db)(tuple(rows[:cut]))))
        snap = tmp_path / f"tree{case}.snapshot"
        run_ok(capsys, "build", "--input", str(base_csv), "--out", str(snap))

        live = rows[:cut]
        for step in range(rng.randint(1, 3)):
            inserts = [t for t in rows[cut:] if rng.random() < 0.7]
            deletable, picked_ids = [], set()
            for t in live:
                if rng.random() < 0.3 and t.id not in picked_ids:
                    deletable.append(t)
                    picked_ids.add(t.id)
            args = ["update", "--snapshot", str(snap)]
            if inserts:
                path = tmp_path / f"ins{case}_{step}.csv"
                path.write_text(serialize_database(type(db)(tuple(inserts))))
                args += ["--insert", str(path)]
            if deletable:
                path = tmp_path / f"del{case}_{step}.csv"
                path.write_text(serialize_database(type(db)(tuple(deletable))))
                args += ["--delete", str(path)]
            if len(args) == 3:
                continue
            run_ok(capsys, *args)
            for t in deletable:
                live.remove(t)  # one copy each, mirroring the tree's multiset delete
            live = live + inserts

        direct = CanTree()
        direct.insert_batch(live)
        assert CanTree.from_snapshot(snap.read_text()).digest() == direct.digest()


# -- mine --------------------------------------------------------------------------


def test_mine_itemsets_v2(capsys):
    out = run_ok(capsys, "mine", "--input", V2, "--minsup", "50%", "--itemsets")
    lines = out.splitlines()
    assert lines[0] == "items,support"
    assert len(lines) == 16  # header + 15 itemsets
    assert lines[1] == "mouseover,4"
    assert "clickable;getBounds();mouseout;mouseover,2" in lines


def test_mine_defaults_to_itemsets(capsys):
    assert run_ok(capsys, "mine", "--input", V2, "--minsup", "50%") == \
        run_ok(capsys, "mine", "--input", V2, "--minsup", "50%", "--itemsets")


def test_mine_items_only(capsys):
    out = run_ok(capsys, "mine", "--input", V2, "--minsup", "2", "--items-only")
    assert out.splitlines() == [
        "item,support",
        "mouseover,4",
        "getBounds(),3",
        "clickable,2",
        "mouseout,2",
    ]


def test_mine_invalid_minsup_is_data_error(capsys):
    assert run(["mine", "--input", V2, "--minsup", "0"]) == 2
    assert "minimum support" in capsys.readouterr().err


def test_mine_from_snapshot_equals_direct(tmp_path, capsys):
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    direct = run_ok(capsys, "mine", "--input", V2, "--minsup", "50%")
    via_snapshot = run_ok(capsys, "mine", "--snapshot", str(snap), "--minsup", "50%")
    assert via_snapshot == direct


def test_mine_needs_exactly_one_input(tmp_path, capsys):
    snap = tmp_path / "tree.snapshot"
    run_ok(capsys, "build", "--input", V2, "--out", str(snap))
    assert run(["mine", "--minsup", "2"]) == 1
    assert run(["mine", "--input", V2, "--snapshot", str(snap), "--minsup", "2"]) == 1


def test_mine_corrupt_snapshot_is_data_error(tmp_path, capsys):
    snap = tmp_path / "corrupt.snapshot"
    snap.write_text("cantree-snapshot v9\ntxns 0\n")
    assert run(["mine", "--snapshot", str(snap), "--minsup", "2"]) == 2


# -- optimize ------------------------------------------------------------------------


def test_optimize_v2_matches_golden_bytes(capsys):
    out = run_ok(capsys, "optimize", "--input", V2, "--minsup", "50%")
    assert out == dataset_path("v2_optimized.csv").read_text(encoding="utf-8")


def test_optimize_v3_matches_golden_bytes(tmp_path, capsys):
    dest = tmp_path / "v3_optimized.csv"
    run_ok(capsys, "optimize", "--input", V3, "--minsup", "50%", "--out", str(dest))
    assert dest.read_text() == dataset_path("v3_optimized.csv").read_text(encoding="utf-8")


# -- diff ----------------------------------------------------------------------------


def test_diff_text(capsys):
    out = run_ok(capsys, "diff", "--old", V2, "--new", V3, "--minsup", "50%")
    assert "dropped (frequent only in the old version):" in out
    assert "  mouseout  old=2" in out
    for added in ("getMap()", "rightclick", "visible"):
        assert added in out


def test_diff_csv(capsys):
    out = run_ok(capsys, "diff", "--old", V2, "--new", V3, "--minsup", "50%",
                 "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "item,status,old_support,new_support"
    assert "mouseout,dropped,2," in lines
    assert "visible,added,,2" in lines


# -- bench ---------------------------------------------------------------------------


def test_bench_tiny_config(tmp_path, capsys):
    config = tmp_path / "bench.cfg"
    config.write_text(TINY_BENCH_CONFIG)
    out = run_ok(capsys, "bench", "--config", str(config))
    lines = out.splitlines()
    assert lines[0] == "strategy,base_size,phase,repetition,elapsed_ms,workload_checksum"
    assert len(lines) == 1 + 2 * 2 * 3 * 3  # strategies x bases x phases x reps


def test_bench_is_workload_deterministic(tmp_path, capsys):
    config = tmp_path / "bench.cfg"
    config.write_text(TINY_BENCH_CONFIG)
    first = run_ok(capsys, "bench", "--config", str(config))
    second = run_ok(capsys, "bench", "--config", str(config))

    def checksums(text):
        return [line.rsplit(",", 1)[1] for line in text.splitlines()[1:]]

    assert checksums(first) == checksums(second)
    assert len(set(checksums(first))) == 2  # one workload per base size


def test_bench_seed_override_changes_workload(tmp_path, capsys):
    config = tmp_path / "bench.cfg"
    config.write_text(TINY_BENCH_CONFIG)
    base = run_ok(capsys, "bench", "--config", str(config))
    reseeded = run_ok(capsys, "bench", "--config", str(config), "--seed", "8")
    assert base.splitlines()[1].rsplit(",", 1)[1] != reseeded.splitlines()[1].rsplit(",", 1)[1]


def test_bench_invalid_config_is_data_error(tmp_path, capsys):
    config = tmp_path / "bench.cfg"
    config.write_text("repetitions=0\n")
    assert run(["bench", "--config", str(config)]) == 2
    config.write_text("no_such_knob=1\n")
    assert run(["bench", "--config", str(config)]) == 2


# -- output plumbing -------------------------------------------------------------------


def test_out_flag_writes_file_and_keeps_stdout_clean(tmp_path, capsys):
    dest = tmp_path / "result.csv"
    out = run_ok(capsys, "mine", "--input", V2, "--minsup", "2", "--out", str(dest))
    assert out == ""
    assert dest.read_text().startswith("items,support\n")


def test_outputs_are_deterministic(capsys):
    first = run_ok(capsys, "mine", "--input", V2, "--minsup", "50%")
    second = run_ok(capsys, "mine", "--input", V2, "--minsup", "50%")
    assert first == second
