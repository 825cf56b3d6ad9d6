"""Frequent-item and frequent-itemset mining.

Three independent routes produce identical results and cross-check each
other: pattern growth by conditional projection over a canonical-order tree,
a level-wise brute-force enumerator (verification oracle, small alphabets
only), and a rescan-and-rebuild miner over a frequency-ordered tree (the
baseline whose update cost scales with the whole database).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import AlphabetTooLargeError, NotPresentError
from .transactions import MinSupport, TransactionDatabase
from .tree import CanTree

# Guard for the brute-force oracle: 2^n candidate space beyond this is a bug,
# not a workload.
APRIORI_MAX_ALPHABET = 20


@dataclass(frozen=True)
class ItemsetWithSupport:
    """A canonically ordered itemset and the number of transactions containing it."""

    items: tuple[str, ...]
    support: int


@dataclass(frozen=True)
class MiningResult:
    """All frequent itemsets at a resolved threshold.

    Itemsets are sorted by support descending, ties in canonical order of the
    item tuples, so equal databases always render identically.
    """

    minsup_resolved: int
    itemsets: tuple[ItemsetWithSupport, ...]

    def as_set(self) -> set[tuple[tuple[str, ...], int]]:
        """(itemset, support) pairs, for order-insensitive comparison."""
        return {(s.items, s.support) for s in self.itemsets}

    def singletons(self) -> list[tuple[str, int]]:
        """The single-item rows, in result order."""
        return [(s.items[0], s.support) for s in self.itemsets if len(s.items) == 1]

    def to_csv(self) -> str:
        """``items,support`` header, items joined by ``;``, rows in result order."""
        lines = ["items,support"]
        lines += [f"{';'.join(s.items)},{s.support}" for s in self.itemsets]
        return "".join(line + "\n" for line in lines)


def _result(minsup: int, found: Iterable[tuple[tuple[str, ...], int]]) -> MiningResult:
    itemsets = [ItemsetWithSupport(items, support) for items, support in found]
    itemsets.sort(key=lambda s: (-s.support, s.items))
    return MiningResult(minsup, tuple(itemsets))


# -- canonical-order tree route -----------------------------------------


def frequent_items(tree: CanTree, min_support) -> list[tuple[str, int]]:
    """Items at or above the resolved threshold, support-descending then canonical."""
    minsup = MinSupport.coerce(min_support).resolve(tree.transaction_count)
    found = []
    for item, chain in tree.header.items():
        support = sum(node.count for node in chain)
        if support >= minsup:
            found.append((item, support))
    found.sort(key=lambda pair: (-pair[1], pair[0]))
    return found


def conditional_tree(tree: CanTree, item: str, minsup_resolved: int) -> CanTree:
    """Project ``tree`` onto the prefix paths of ``item``.

    Each node in the item's header chain contributes its root-side prefix,
    weighted by the node's count; items whose projected support falls below
    ``minsup_resolved`` are pruned. The result is itself a valid canonical
    tree: an itemset's support in it equals the support of that itemset plus
    ``item`` in the source tree.
    """
    chain = tree.header.get(item)
    if not chain:
        raise NotPresentError(f"item {item!r} not present in tree")
    paths = []
    add_path = paths.append
    projected: dict[str, int] = {}
    get = projected.get
    for node in chain:
        weight = node.count
        p = node.parent
        name = p.item
        if name is None:
            continue
        prefix = []
        push = prefix.append
        while name is not None:
            push(name)
            projected[name] = get(name, 0) + weight
            p = p.parent
            name = p.item
        add_path((prefix, weight))
    keep = {name for name, c in projected.items() if c >= minsup_resolved}
    # prune, then merge identical pruned paths so the tree is built once per
    # distinct weighted path (prefixes were collected leaf-to-root: reverse)
    merged: dict[tuple[str, ...], int] = {}
    m_get = merged.get
    for prefix, weight in paths:
        kept = tuple([name for name in reversed(prefix) if name in keep])
        if kept:
            merged[kept] = m_get(kept, 0) + weight
    cond = CanTree()
    cond._bulk_insert_sorted(sorted(merged.items()))
    return cond


def mine_frequent_itemsets(tree: CanTree, min_support) -> MiningResult:
    """Every itemset at or above the resolved threshold, by recursive projection.

    Pattern growth over conditional trees; no single-path shortcuts, every
    level goes through the same projection.
    """
    minsup = MinSupport.coerce(min_support).resolve(tree.transaction_count)
    found: list[tuple[tuple[str, ...], int]] = []
    _grow(tree, minsup, (), found)
    return _result(minsup, found)


def _grow(tree, minsup, suffix, found):
    for item, chain in tree.header.items():
        support = sum(node.count for node in chain)
        if support < minsup:
            continue
        # item canonically precedes everything already in the suffix
        itemset = (item, *suffix)
        found.append((itemset, support))
        cond = conditional_tree(tree, item, minsup)
        if cond.header:
            _grow(cond, minsup, itemset, found)


# -- brute-force oracle route -------------------------------------------


def apriori_bruteforce(db: TransactionDatabase, min_support) -> MiningResult:
    """Level-wise candidate enumeration with downward-closure pruning.

    Deliberately independent of all tree code so it can serve as a
    verification oracle. Refuses databases with more than
    APRIORI_MAX_ALPHABET distinct items.
    """
    minsup = MinSupport.coerce(min_support).resolve(len(db))
    alphabet = sorted({name for t in db for name in t})
    if len(alphabet) > APRIORI_MAX_ALPHABET:
        raise AlphabetTooLargeError(
            f"{len(alphabet)} distinct items exceeds the brute-force limit of {APRIORI_MAX_ALPHABET}"
        )
    rows = [frozenset(t) for t in db]
    found: list[tuple[tuple[str, ...], int]] = []
    level: dict[tuple[str, ...], int] = {}
    for name in alphabet:
        support = sum(1 for row in rows if name in row)
        if support >= minsup:
            level[(name,)] = support
    while level:
        found.extend(level.items())
        previous = set(level)
        candidates = set()
        for a, b in combinations(sorted(previous), 2):
            if a[:-1] == b[:-1]:
                candidates.add(a + (b[-1],))
        level = {}
        for cand in candidates:
            if any(cand[:i] + cand[i + 1:] not in previous for i in range(len(cand))):
                continue
            support = sum(1 for row in rows if row.issuperset(cand))
            if support >= minsup:
                level[cand] = support
    return _result(minsup, found)


# -- rescan-and-rebuild baseline route ------------------------------------


class _FPNode:
    __slots__ = ("item", "count", "parent", "children")

    def __init__(self, item, count, parent):
        self.item = item
        self.count = count
        self.parent = parent
        self.children: dict = {}


def build_baseline_tree(transactions, minsup_resolved: int):
    """One full rescan: count supports, order items by frequency (ties
    canonical), build a fresh frequency-ordered tree of the frequent items.

    Returns (header, rank); ``rank`` is the global item order. This is the
    whole-database work the baseline repeats on every update cycle.
    """
    counts: dict[str, int] = {}
    for t in transactions:
        for name in set(t):
            counts[name] = counts.get(name, 0) + 1
    frequent = [name for name, c in counts.items() if c >= minsup_resolved]
    frequent.sort(key=lambda name: (-counts[name], name))
    rank = {name: i for i, name in enumerate(frequent)}
    header: dict[str, list[_FPNode]] = {name: [] for name in frequent}
    root = _FPNode(None, 0, None)
    for t in transactions:
        kept = sorted((name for name in set(t) if name in rank), key=rank.__getitem__)
        node = root
        for name in kept:
            child = node.children.get(name)
            if child is None:
                child = _FPNode(name, 1, node)
                node.children[name] = child
                header[name].append(child)
            else:
                child.count += 1
            node = child
    return header, rank


def mine_baseline_tree(header, rank, minsup_resolved: int) -> MiningResult:
    """Pattern growth over a tree from build_baseline_tree."""
    found: list[tuple[tuple[str, ...], int]] = []
    _fp_grow(header, rank, minsup_resolved, (), found)
    return _result(minsup_resolved, found)


def _fp_grow(header, rank, minsup, suffix, found):
    # least frequent first, the classic bottom-up sweep
    for name in sorted(header, key=rank.__getitem__, reverse=True):
        nodes = header[name]
        support = sum(n.count for n in nodes)
        itemset = tuple(sorted((name, *suffix)))
        found.append((itemset, support))
        base = []
        projected: dict[str, int] = {}
        for n in nodes:
            path = []
            p = n.parent
            while p.item is not None:
                path.append(p.item)
                p = p.parent
            if path:
                path.reverse()
                base.append((path, n.count))
                for it in path:
                    projected[it] = projected.get(it, 0) + n.count
        kept = [it for it, c in projected.items() if c >= minsup]
        if not kept:
            continue
        kept.sort(key=lambda it: (-projected[it], it))
        cond_rank = {it: i for i, it in enumerate(kept)}
        cond_header: dict[str, list[_FPNode]] = {it: [] for it in kept}
        cond_root = _FPNode(None, 0, None)
        for path, weight in base:
            path_kept = sorted((it for it in path if it in cond_rank), key=cond_rank.__getitem__)
            node = cond_root
            for it in path_kept:
                child = node.children.get(it)
                if child is None:
                    child = _FPNode(it, weight, node)
                    node.children[it] = child
                    cond_header[it].append(child)
                else:
                    child.count += weight
                node = child
        _fp_grow(cond_header, cond_rank, minsup, itemset, found)


def rebuild_baseline_mine(db: TransactionDatabase, min_support) -> MiningResult:
    """Rescan the whole database, rebuild the frequency-ordered tree, mine it.

    Output is identical to mine_frequent_itemsets over a canonical tree of
    the same database; the point of this path is its cost profile: every
    update cycle pays for the full |db|, which is exactly what incremental
    canonical trees avoid.
    """
    minsup = MinSupport.coerce(min_support).resolve(len(db))
    header, rank = build_baseline_tree(db, minsup)
    return mine_baseline_tree(header, rank, minsup)
