"""Database optimization and cross-version frequent-pattern diffing.

Optimization projects every transaction onto the frequent items of its own
database; the diff compares frequent sets across two versions and ranks what
a developer migrating to the new version should reach for first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .transactions import MinSupport, Transaction, TransactionDatabase


def _frequent_map(db: TransactionDatabase, minsup_resolved: int) -> dict[str, int]:
    return {name: c for name, c in db.item_supports().items() if c >= minsup_resolved}


def optimize_database(db: TransactionDatabase, min_support) -> TransactionDatabase:
    """Drop every infrequent item from every transaction.

    Keeps all transactions (possibly with empty item sets), their ids and
    labels, and the original item order, so the output lines up row for row
    with the input. Frequent items keep their exact supports, and the
    frequent sets of input and output coincide at the same resolved
    threshold.
    """
    minsup = MinSupport.coerce(min_support).resolve(len(db))
    keep = _frequent_map(db, minsup)
    return TransactionDatabase(tuple(
        Transaction(t.id, t.label, tuple(name for name in t.items if name in keep))
        for t in db
    ))


@dataclass(frozen=True)
class RecommendationReport:
    """Partition of two versions' frequent items.

    ``retained`` (frequent in both, with old and new supports), ``dropped``
    (frequent only in the old version) and ``added`` (frequent only in the
    new) are disjoint; retained plus dropped is the old frequent set and
    retained plus added the new one. Sections are sorted by their governing
    support (new for retained/added, old for dropped) descending, ties in
    canonical order.
    """

    retained: tuple[tuple[str, int, int], ...]
    dropped: tuple[tuple[str, int], ...]
    added: tuple[tuple[str, int], ...]
    minsup_old: int
    minsup_new: int

    def to_csv(self) -> str:
        """``item,status,old_support,new_support``; absent supports stay blank."""
        lines = ["item,status,old_support,new_support"]
        lines += [f"{name},retained,{old},{new}" for name, old, new in self.retained]
        lines += [f"{name},dropped,{old}," for name, old in self.dropped]
        lines += [f"{name},added,,{new}" for name, new in self.added]
        return "".join(line + "\n" for line in lines)

    def to_text(self) -> str:
        """Three-section plain-text rendering."""
        out = [f"minimum support: old={self.minsup_old} new={self.minsup_new}", ""]
        out.append("retained (frequent in both versions):")
        out += [f"  {name}  old={old} new={new}" for name, old, new in self.retained] or ["  (none)"]
        out.append("")
        out.append("dropped (frequent only in the old version):")
        out += [f"  {name}  old={old}" for name, old in self.dropped] or ["  (none)"]
        out.append("")
        out.append("added (frequent only in the new version):")
        out += [f"  {name}  new={new}" for name, new in self.added] or ["  (none)"]
        return "".join(line + "\n" for line in out)


def diff_versions(old_db: TransactionDatabase, new_db: TransactionDatabase,
                  min_support) -> RecommendationReport:
    """Compare frequent items across two database versions.

    Fractional thresholds resolve against each database's own size, so "50%"
    means half of each version independently.
    """
    ms = MinSupport.coerce(min_support)
    minsup_old = ms.resolve(len(old_db))
    minsup_new = ms.resolve(len(new_db))
    old = _frequent_map(old_db, minsup_old)
    new = _frequent_map(new_db, minsup_new)
    retained = sorted(
        ((name, old[name], new[name]) for name in old.keys() & new.keys()),
        key=lambda r: (-r[2], r[0]),
    )
    dropped = sorted(
        ((name, old[name]) for name in old.keys() - new.keys()),
        key=lambda r: (-r[1], r[0]),
    )
    added = sorted(
        ((name, new[name]) for name in new.keys() - old.keys()),
        key=lambda r: (-r[1], r[0]),
    )
    return RecommendationReport(tuple(retained), tuple(dropped), tuple(added),
                                minsup_old, minsup_new)


def recommend_items(report: RecommendationReport, k: int) -> list[tuple[str, str, int]]:
    """Top-k items worth adopting in the new version.

    Retained and added items ranked by new-version support descending, ties
    in canonical order; dropped items never appear. Returns
    (item, status, new_support) triples with status ``retained`` or
    ``new-in-version``; fewer than k rows come back when fewer exist.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    pool = [(name, "retained", new) for name, _old, new in report.retained]
    pool += [(name, "new-in-version", new) for name, new in report.added]
    pool.sort(key=lambda r: (-r[2], r[0]))
    return pool[:k]
