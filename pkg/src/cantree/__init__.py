"""Incremental frequent-pattern mining over a canonical-order tree (CanTree).

Transactions live in a prefix tree whose node order is a fixed canonical item
order, so inserting or deleting data never forces a restructure or a rescan.
On top sit FP-growth-style mining, a database optimizer that projects
transactions onto their frequent items, and a cross-version diff for
recommending API members to developers.
"""

from .bench import BenchConfig, BenchRow, generate_workload, report_csv, run_bench
from .datasets import dataset_path, load_dataset
from .errors import (
    AlphabetTooLargeError,
    BenchConfigError,
    CanTreeError,
    DuplicateIdError,
    EmptyTransactionError,
    InvalidMinSupportError,
    NotPresentError,
    ParseError,
    SnapshotFormatError,
)
from .mining import (
    APRIORI_MAX_ALPHABET,
    ItemsetWithSupport,
    MiningResult,
    apriori_bruteforce,
    conditional_tree,
    frequent_items,
    mine_frequent_itemsets,
    rebuild_baseline_mine,
)
from .recommend import (
    RecommendationReport,
    diff_versions,
    optimize_database,
    recommend_items,
)
from .transactions import (
    MinSupport,
    Transaction,
    TransactionDatabase,
    canonical_compare,
    canonicalize,
    load_database,
    parse_database,
    serialize_database,
    validate_item_name,
)
from .tree import CanTree, CanTreeNode

__version__ = "0.1.0"

# the estimator layer pulls in scikit-learn; load it lazily so the CLI and
# core library stay import-light
_LAZY = ("CanTreeMiner", "DatabaseOptimizer", "as_item_lists", "as_database")


def __getattr__(name):
    if name in _LAZY:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "APRIORI_MAX_ALPHABET",
    "AlphabetTooLargeError",
    "BenchConfig",
    "BenchConfigError",
    "BenchRow",
    "CanTree",
    "CanTreeError",
    "CanTreeMiner",
    "CanTreeNode",
    "DatabaseOptimizer",
    "DuplicateIdError",
    "EmptyTransactionError",
    "InvalidMinSupportError",
    "ItemsetWithSupport",
    "MiningResult",
    "MinSupport",
    "NotPresentError",
    "ParseError",
    "RecommendationReport",
    "SnapshotFormatError",
    "Transaction",
    "TransactionDatabase",
    "apriori_bruteforce",
    "as_database",
    "as_item_lists",
    "canonical_compare",
    "canonicalize",
    "conditional_tree",
    "dataset_path",
    "diff_versions",
    "frequent_items",
    "generate_workload",
    "load_database",
    "load_dataset",
    "mine_frequent_itemsets",
    "optimize_database",
    "parse_database",
    "rebuild_baseline_mine",
    "recommend_items",
    "report_csv",
    "run_bench",
    "serialize_database",
    "validate_item_name",
]
