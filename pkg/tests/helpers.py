"""Shared test utilities: an independent brute-force oracle and random data.

The oracle enumerates every subset of the observed alphabet and counts
supports by direct containment checks (no tree code, no candidate pruning),
so it stays independent of all three production mining routes.
"""

from itertools import combinations

from cantree import Transaction, TransactionDatabase


def enumerate_frequent(transactions, minsup_abs):
    """All (itemset, support) pairs with support >= minsup_abs, by exhaustion.

    ``transactions`` is any iterable of item iterables. Itemsets come back as
    canonically sorted tuples.
    """
    rows = [frozenset(t) for t in transactions]
    alphabet = sorted(set().union(*rows)) if rows else []
    out = {}
    for size in range(1, len(alphabet) + 1):
        for combo in combinations(alphabet, size):
            support = sum(1 for row in rows if row.issuperset(combo))
            if support >= minsup_abs:
                out[combo] = support
    return out


def random_database(rng, max_items=10, max_transactions=12, min_transactions=0):
    """Small random database over a letter alphabet, for equivalence tests."""
    n_items = rng.randint(1, max_items)
    pool = list("abcdefghij")[:n_items]
    n_txns = rng.randint(min_transactions, max_transactions)
    txns = []
    for i in range(n_txns):
        size = rng.randint(1, n_items)
        txns.append(Transaction(f"t{i}", "synthetic", tuple(rng.sample(pool, size))))
    return TransactionDatabase(tuple(txns))
