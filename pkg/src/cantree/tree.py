"""Canonical-order prefix tree with incremental inserts and deletes.

Because children are kept in a fixed canonical item order, the tree's shape
depends only on the multiset of transactions it currently holds, never on
item frequencies or on insertion order. Updates therefore never trigger a
restructure or a rescan of previously seen data.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from .errors import NotPresentError, SnapshotFormatError
from .transactions import Transaction, canonicalize

SNAPSHOT_HEADER = "cantree-snapshot v1"


class CanTreeNode:
    """One tree node: an item, a pass-through count, canonically sorted children.

    ``count`` is the number of held transactions whose canonical form passes
    through this node; it is always at least the sum of the children's counts
    (transactions may terminate at interior nodes).
    """

    __slots__ = ("item", "count", "parent", "children", "_child_keys")

    def __init__(self, item: str | None, count: int, parent: "CanTreeNode | None"):
        self.item = item
        self.count = count
        self.parent = parent
        self.children: list[CanTreeNode] = []
        # mirrors children's items; bisect target for binary-search descent
        self._child_keys: list[str] = []

    def child(self, item: str) -> "CanTreeNode | None":
        i = bisect_left(self._child_keys, item)
        if i < len(self._child_keys) and self._child_keys[i] == item:
            return self.children[i]
        return None

    def __repr__(self):
        return f"CanTreeNode({self.item!r}, count={self.count}, children={len(self.children)})"


class CanTree:
    """Prefix tree over canonical item order with a per-item header table.

    ``header`` maps each item to the list of nodes carrying it, in node
    creation order; it is the entry point for support queries and mining.

    Single-writer: mutating calls need exclusive access. Reads (support,
    digest, snapshots, mining) are side-effect free and may run concurrently
    with each other while no mutation is in progress.
    """

    __slots__ = ("root", "header", "transaction_count")

    def __init__(self):
        self.root = CanTreeNode(None, 0, None)
        self.header: dict[str, list[CanTreeNode]] = {}
        self.transaction_count = 0

    # -- updates ---------------------------------------------------------

    def insert(self, transaction: Transaction | Iterable[str]) -> None:
        """Insert one transaction, bumping counts along its canonical path.

        Only the nodes on that path are touched; nothing already stored is
        revisited. Raises ValueError for transactions with no items.
        """
        items = canonicalize(transaction)
        if not items:
            raise ValueError("cannot insert a transaction with no items")
        self._insert_canonical(items, 1)

    def insert_batch(self, transactions: Iterable[Transaction | Iterable[str]]) -> None:
        """Insert every transaction in order; cost is independent of tree size."""
        for t in transactions:
            self.insert(t)

    def _insert_canonical(self, items: Sequence[str], count: int) -> None:
        # items must already be duplicate-free and canonically ascending
        node = self.root
        header = self.header
        for item in items:
            keys = node._child_keys
            i = bisect_left(keys, item)
            if i < len(keys) and keys[i] == item:
                node = node.children[i]
                node.count += count
            else:
                child = CanTreeNode(item, count, node)
                keys.insert(i, item)
                node.children.insert(i, child)
                chain = header.get(item)
                if chain is None:
                    header[item] = [child]
                else:
                    chain.append(child)
                node = child
        self.transaction_count += count

    def delete(self, transaction: Transaction | Iterable[str]) -> None:
        """Remove one previously inserted transaction.

        The full canonical path is validated before anything is touched, so a
        failed delete leaves the tree exactly as it was. A path whose counts
        are entirely claimed by longer transactions does not count as present
        (decrementing it would corrupt count conservation).
        """
        items = canonicalize(transaction)
        if not items:
            raise NotPresentError("empty transactions are never present in a tree")
        path = []
        node = self.root
        for item in items:
            node = node.child(item)
            if node is None:
                raise NotPresentError(f"transaction {items!r} not in tree (no node for {item!r})")
            path.append(node)
        tail = path[-1]
        if tail.count - sum(c.count for c in tail.children) < 1:
            raise NotPresentError(
                f"transaction {items!r} not in tree (path covers only longer transactions)"
            )
        for node in path:
            node.count -= 1
        for idx, node in enumerate(path):
            if node.count == 0:
                # zero nodes form a suffix of the path; detach its head
                parent = node.parent
                j = bisect_left(parent._child_keys, node.item)
                del parent._child_keys[j]
                del parent.children[j]
                for dead in path[idx:]:
                    assert dead.count == 0
                    chain = self.header[dead.item]
                    chain.remove(dead)
                    if not chain:
                        del self.header[dead.item]
                break
        self.transaction_count -= 1

    def _bulk_insert_sorted(self, pairs) -> None:
        # fast path for building projections: pairs are (items, weight) with
        # unique canonical item tuples in sorted order, so every new node is
        # appended rightmost and children stay sorted without bisecting
        header = self.header
        path_items: list[str] = []
        path_nodes: list[CanTreeNode] = []
        total = 0
        for items, weight in pairs:
            k = 0
            limit = min(len(path_items), len(items))
            while k < limit and path_items[k] == items[k]:
                k += 1
            del path_items[k:]
            del path_nodes[k:]
            for node in path_nodes:
                node.count += weight
            parent = path_nodes[-1] if path_nodes else self.root
            for item in items[k:]:
                child = CanTreeNode(item, weight, parent)
                parent._child_keys.append(item)
                parent.children.append(child)
                chain = header.get(item)
                if chain is None:
                    header[item] = [child]
                else:
                    chain.append(child)
                path_items.append(item)
                path_nodes.append(child)
                parent = child
            total += weight
        self.transaction_count += total

    # -- queries ---------------------------------------------------------

    def item_support(self, item: str) -> int:
        """Number of held transactions containing ``item`` (0 if unknown)."""
        return sum(node.count for node in self.header.get(item, ()))

    def digest(self) -> str:
        """Canonical text rendering: one ``depth item count`` line per node.

        Depth-first, children in canonical order. Two trees are structurally
        identical with identical counts iff their digests are equal. The
        empty tree digests to the empty string.
        """
        lines = []
        stack = [(c, 1) for c in reversed(self.root.children)]
        while stack:
            node, depth = stack.pop()
            lines.append(f"{depth} {node.item} {node.count}")
            stack.extend((c, depth + 1) for c in reversed(node.children))
        return "\n".join(lines)

    def node_count(self) -> int:
        """Number of nodes below the root."""
        total = 0
        stack = list(self.root.children)
        while stack:
            node = stack.pop()
            total += 1
            stack.extend(node.children)
        return total

    # -- persistence -----------------------------------------------------

    def to_snapshot(self) -> str:
        """Serialize as ``cantree-snapshot v1`` text.

        Line 1 is the version token, line 2 ``txns <transaction_count>``,
        then one ``<depth> <item-name> <count>`` line per node in depth-first
        canonical order.
        """
        head = f"{SNAPSHOT_HEADER}\ntxns {self.transaction_count}\n"
        body = self.digest()
        if not body:
            return head
        return head + body + "\n"

    @classmethod
    def from_snapshot(cls, text: str) -> "CanTree":
        """Rebuild a tree from snapshot text; rejects any other version token.

        Beyond the surface syntax, records must describe a well-formed tree:
        depths may only step down by one, siblings must arrive strictly
        increasing, counts must conserve, and the ``txns`` line must match
        the tree contents.
        """
        lines = text.splitlines()
        if not lines or lines[0] != SNAPSHOT_HEADER:
            raise SnapshotFormatError(f"expected version header {SNAPSHOT_HEADER!r}")
        if len(lines) < 2 or not lines[1].startswith("txns "):
            raise SnapshotFormatError("missing 'txns <count>' line")
        try:
            declared = int(lines[1][5:])
        except ValueError:
            raise SnapshotFormatError(f"bad transaction count {lines[1][5:]!r}") from None
        if declared < 0:
            raise SnapshotFormatError(f"bad transaction count {declared}")

        tree = cls()
        # stack[d] is the most recently added node at depth d (root at 0)
        stack = [tree.root]
        for lineno, line in enumerate(lines[2:], start=3):
            parts = line.split(" ")
            # item names may contain interior spaces: first token is the
            # depth, last is the count, everything between is the name
            name = " ".join(parts[1:-1])
            try:
                depth = int(parts[0])
                count = int(parts[-1])
            except (ValueError, IndexError):
                raise SnapshotFormatError(f"line {lineno}: malformed node record {line!r}") from None
            if len(parts) < 3 or not name or name != name.strip():
                raise SnapshotFormatError(f"line {lineno}: malformed node record {line!r}")
            if count < 1:
                raise SnapshotFormatError(f"line {lineno}: node count must be >= 1")
            if depth < 1 or depth > len(stack):
                raise SnapshotFormatError(f"line {lineno}: depth {depth} does not extend the tree")
            parent = stack[depth - 1]
            if parent._child_keys and parent._child_keys[-1] >= name:
                raise SnapshotFormatError(f"line {lineno}: children out of canonical order")
            if parent.item is not None and name <= parent.item:
                raise SnapshotFormatError(f"line {lineno}: path not canonically increasing")
            node = CanTreeNode(name, count, parent)
            parent._child_keys.append(name)
            parent.children.append(node)
            tree.header.setdefault(name, []).append(node)
            del stack[depth:]
            stack.append(node)

        total = 0
        pending = list(tree.root.children)
        for c in tree.root.children:
            total += c.count
        while pending:
            node = pending.pop()
            if node.count < sum(c.count for c in node.children):
                raise SnapshotFormatError(f"node {node.item!r} violates count conservation")
            pending.extend(node.children)
        if total != declared:
            raise SnapshotFormatError(f"txns line says {declared} but tree holds {total}")
        tree.transaction_count = declared
        return tree

    # -- verification ----------------------------------------------------

    def check_invariants(self) -> None:
        """Assert every structural invariant; intended for tests after mutations."""
        reachable = set()
        child_sum_root = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            keys = node._child_keys
            assert keys == [c.item for c in node.children], "child key mirror out of sync"
            assert all(keys[i] < keys[i + 1] for i in range(len(keys) - 1)), \
                f"children of {node.item!r} not strictly increasing"
            child_sum = 0
            for c in node.children:
                assert c.parent is node, "broken parent link"
                assert c.count >= 1, "node with count < 1"
                if node.item is not None:
                    assert c.item > node.item, "path not canonically increasing"
                child_sum += c.count
                reachable.add(id(c))
                stack.append(c)
            if node is self.root:
                child_sum_root = child_sum
            else:
                assert node.count >= child_sum, f"count conservation broken at {node.item!r}"
        assert self.transaction_count == child_sum_root, "transaction_count != sum of root children"

        chained = set()
        for item, chain in self.header.items():
            assert chain, f"empty header chain for {item!r}"
            for node in chain:
                assert node.item == item, "node filed under wrong header chain"
                assert id(node) not in chained, "node present in a chain twice"
                chained.add(id(node))
        assert chained == reachable, "header chains out of sync with tree nodes"
