"""Scikit-learn style wrappers so mining composes with the wider ecosystem.

``CanTreeMiner`` is fit/partial_fit-shaped over transaction collections (the
incremental update story maps directly onto partial_fit), and
``DatabaseOptimizer`` is a transformer that learns frequent items and projects
transactions onto them.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import mining
from .transactions import MinSupport, Transaction, TransactionDatabase, validate_item_name
from .tree import CanTree


def as_item_lists(X) -> list[list[str]]:
    """Normalize estimator input to a list of duplicate-free item-name lists.

    Accepts a TransactionDatabase, an iterable of Transaction, or an iterable
    of item-name sequences. Names are validated; duplicates within a row are
    dropped keeping the first occurrence; empty rows are rejected.
    """
    if isinstance(X, TransactionDatabase):
        return [list(t.items) for t in X]
    rows = []
    for i, row in enumerate(X):
        if isinstance(row, Transaction):
            items = list(row.items)
        elif isinstance(row, str):
            raise TypeError(f"row {i}: expected a sequence of item names, got a bare string")
        else:
            items = []
            seen = set()
            for name in row:
                try:
                    validate_item_name(name)
                except ValueError as exc:
                    raise ValueError(f"row {i}: {exc}") from None
                if name not in seen:
                    seen.add(name)
                    items.append(name)
        if not items:
            raise ValueError(f"row {i}: transaction has no items")
        rows.append(items)
    return rows


def as_database(X) -> TransactionDatabase:
    """as_item_lists plus synthesized ids (t0, t1, ...) when X is not a database."""
    if isinstance(X, TransactionDatabase):
        return X
    rows = as_item_lists(X)
    return TransactionDatabase(tuple(
        Transaction(f"t{i}", "", tuple(items)) for i, items in enumerate(rows)
    ))


class CanTreeMiner(BaseEstimator):
    """Frequent-pattern miner over an incrementally updatable canonical-order tree.

    ``fit`` builds the tree from scratch; ``partial_fit`` folds further
    transactions in and ``remove`` takes transactions back out, neither
    revisiting anything seen before. Mining happens on demand at the
    configured threshold, so the same fitted miner can serve queries while
    the underlying data keeps changing.

    Parameters
    ----------
    min_support : int, float, Fraction or str, default=0.5
        Absolute count when an int, otherwise a fraction of the current
        transaction count ("50%" and 0.5 both mean half).

    Attributes
    ----------
    tree_ : CanTree
        The live tree; shape depends only on the held transaction multiset.
    n_transactions_ : int
        Transactions currently held (inserted minus removed).
    """

    def __init__(self, min_support=0.5):
        self.min_support = min_support

    def fit(self, X, y=None):
        """Build a fresh tree from the transactions in X."""
        self.tree_ = CanTree()
        self.n_transactions_ = 0
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        """Fold more transactions into the tree; prior data is not rescanned."""
        if not hasattr(self, "tree_"):
            self.tree_ = CanTree()
        for items in as_item_lists(X):
            self.tree_.insert(items)
        self.n_transactions_ = self.tree_.transaction_count
        return self

    def remove(self, X):
        """Take previously added transactions back out (inverse of partial_fit)."""
        check_is_fitted(self)
        for items in as_item_lists(X):
            self.tree_.delete(items)
        self.n_transactions_ = self.tree_.transaction_count
        return self

    def frequent_items(self) -> list[tuple[str, int]]:
        """(item, support) pairs at the configured threshold."""
        check_is_fitted(self)
        return mining.frequent_items(self.tree_, self.min_support)

    def frequent_itemsets(self) -> mining.MiningResult:
        """Full itemset mining at the configured threshold."""
        check_is_fitted(self)
        return mining.mine_frequent_itemsets(self.tree_, self.min_support)


class DatabaseOptimizer(BaseEstimator, TransformerMixin):
    """Transformer that learns frequent items and drops everything else.

    ``fit_transform(X)`` is the classic database-optimization step: the
    threshold resolves against X itself and X is projected onto its own
    frequent items, preserving per-transaction item order.

    Parameters
    ----------
    min_support : int, float, Fraction or str, default=0.5
        Same semantics as CanTreeMiner.

    Attributes
    ----------
    frequent_items_ : dict[str, int]
        Fitted frequent items with their supports.
    min_support_resolved_ : int
        The absolute threshold used.
    n_transactions_ : int
        Size of the fitted collection.
    """

    def __init__(self, min_support=0.5):
        self.min_support = min_support

    def fit(self, X, y=None):
        db = as_database(X)
        self.n_transactions_ = len(db)
        self.min_support_resolved_ = MinSupport.coerce(self.min_support).resolve(len(db))
        counts = db.item_supports()
        self.frequent_items_ = {
            name: c for name, c in counts.items() if c >= self.min_support_resolved_
        }
        return self

    def transform(self, X):
        """Project X onto the fitted frequent items, keeping item order.

        Returns a TransactionDatabase when given one (rows may end up with
        empty item sets), otherwise a list of item lists.
        """
        check_is_fitted(self)
        keep = self.frequent_items_
        if isinstance(X, TransactionDatabase):
            return TransactionDatabase(tuple(
                Transaction(t.id, t.label, tuple(n for n in t.items if n in keep))
                for t in X
            ))
        return [[n for n in row if n in keep] for row in as_item_lists(X)]
