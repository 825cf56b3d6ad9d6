import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cantree import (
    CanTreeMiner,
    DatabaseOptimizer,
    Transaction,
    dataset_path,
    load_dataset,
    optimize_database,
    serialize_database,
)
from cantree.estimators import as_database, as_item_lists

V2_FREQUENT = [("mouseover", 4), ("getBounds()", 3), ("clickable", 2), ("mouseout", 2)]


# -- input normalization -------------------------------------------------------


def test_as_item_lists_accepts_databases_transactions_and_lists():
    db = load_dataset("v2.csv")
    from_db = as_item_lists(db)
    from_txns = as_item_lists(list(db))
    from_raw = as_item_lists([list(t.items) for t in db])
    assert from_db == from_txns == from_raw
    assert from_db[2] == ["getBounds()", "mouseout", "mouseover", "clickable"]


def test_as_item_lists_dedups_and_validates():
    assert as_item_lists([["b", "a", "b"]]) == [["b", "a"]]
    with pytest.raises(TypeError):
        as_item_lists(["ab"])  # a bare string row is almost always a bug
    with pytest.raises(ValueError, match="row 0"):
        as_item_lists([[]])
    with pytest.raises(ValueError, match="row 1"):
        as_item_lists([["ok"], ["a;b"]])


def test_as_database_synthesizes_ids():
    db = as_database([["a"], ["b"]])
    assert [t.id for t in db] == ["t0", "t1"]
    existing = load_dataset("v2.csv")
    assert as_database(existing) is existing


# -- CanTreeMiner ----------------------------------------------------------------


def test_miner_fit_and_queries():
    miner = CanTreeMiner(min_support="50%").fit(load_dataset("v2.csv"))
    assert miner.n_transactions_ == 4
    assert miner.frequent_items() == V2_FREQUENT
    assert len(miner.frequent_itemsets().itemsets) == 15


def test_miner_accepts_raw_lists_and_transactions():
    rows = [["a", "b"], ["b"], ["a", "b"]]
    miner = CanTreeMiner(min_support=2).fit(rows)
    assert miner.frequent_items() == [("b", 3), ("a", 2)]
    txns = [Transaction("x", "l", ("a", "b"))]
    miner.partial_fit(txns)
    assert miner.n_transactions_ == 4


def test_partial_fit_equals_batch_fit():
    db = load_dataset("v2.csv")
    incremental = CanTreeMiner().fit(db.transactions[:2]).partial_fit(db.transactions[2:])
    batch = CanTreeMiner().fit(db)
    assert incremental.tree_.digest() == batch.tree_.digest()


def test_partial_fit_without_fit_starts_empty():
    miner = CanTreeMiner().partial_fit([["a"]])
    assert miner.n_transactions_ == 1


def test_remove_is_inverse_of_partial_fit():
    db = load_dataset("v2.csv")
    miner = CanTreeMiner(min_support="50%").fit(db)
    before = miner.tree_.digest()
    extra = [["zoom", "pan"], ["pan"]]
    miner.partial_fit(extra).remove(extra)
    assert miner.tree_.digest() == before
    assert miner.n_transactions_ == 4


def test_refit_resets_tree():
    miner = CanTreeMiner().fit([["a"]])
    miner.fit([["b"]])
    assert miner.n_transactions_ == 1
    assert miner.tree_.item_support("a") == 0


def test_miner_unfitted_errors():
    with pytest.raises(NotFittedError):
        CanTreeMiner().frequent_items()
    with pytest.raises(NotFittedError):
        CanTreeMiner().remove([["a"]])


def test_miner_is_sklearn_compatible():
    miner = CanTreeMiner(min_support=3)
    assert miner.get_params() == {"min_support": 3}
    cloned = clone(miner.fit([["a"]]))
    assert cloned.get_params() == {"min_support": 3}
    with pytest.raises(NotFittedError):
        cloned.frequent_items()  # clone drops the fitted tree
    miner.set_params(min_support="25%")
    assert miner.min_support == "25%"


# -- DatabaseOptimizer -------------------------------------------------------------


def test_optimizer_fit_transform_matches_golden():
    db = load_dataset("v2.csv")
    optimizer = DatabaseOptimizer(min_support="50%")
    projected = optimizer.fit_transform(db)
    golden = dataset_path("v2_optimized.csv").read_text(encoding="utf-8")
    assert serialize_database(projected) == golden
    assert optimizer.min_support_resolved_ == 2
    assert optimizer.frequent_items_ == dict(V2_FREQUENT)
    assert optimizer.n_transactions_ == 4


def test_optimizer_agrees_with_optimize_database():
    db = load_dataset("v3.csv")
    via_estimator = DatabaseOptimizer(min_support=0.5).fit(db).transform(db)
    assert via_estimator == optimize_database(db, 0.5)


def test_optimizer_transforms_raw_rows():
    rows = [["a", "b", "x"], ["b", "y"], ["a", "b"]]
    out = DatabaseOptimizer(min_support=2).fit(rows).transform(rows)
    assert out == [["a", "b"], ["b"], ["a", "b"]]


def test_optimizer_transform_unseen_data_uses_fitted_items():
    fitted = DatabaseOptimizer(min_support=2).fit([["a", "b"], ["a", "b"]])
    assert fitted.transform([["b", "c"], ["c"]]) == [["b"], []]


def test_optimizer_unfitted_transform_raises():
    with pytest.raises(NotFittedError):
        DatabaseOptimizer().transform([["a"]])


def test_optimizer_is_sklearn_compatible():
    optimizer = DatabaseOptimizer(min_support="50%")
    assert clone(optimizer).get_params() == {"min_support": "50%"}


def test_lazy_estimator_exports():
    import cantree

    assert cantree.CanTreeMiner is CanTreeMiner
    assert cantree.DatabaseOptimizer is DatabaseOptimizer
    with pytest.raises(AttributeError):
        cantree.no_such_symbol
