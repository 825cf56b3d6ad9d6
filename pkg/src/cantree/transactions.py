"""Transaction data model: canonical item ordering, minimum support, CSV parsing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    DuplicateIdError,
    EmptyTransactionError,
    InvalidMinSupportError,
    ParseError,
)

# Separator characters that can never appear in an item name / an id or label.
_FORBIDDEN_IN_ITEM = (";", ",", "\n", "\r")
_FORBIDDEN_IN_FIELD = (",", "\n", "\r")


def validate_item_name(name: str) -> str:
    """Check that ``name`` is a legal item name and return it unchanged.

    Legal names are non-empty, carry no surrounding whitespace, and contain
    none of the CSV separators (``;``, ``,``, newlines). Interior spaces are
    allowed.
    """
    if not isinstance(name, str) or not name:
        raise ValueError(f"item name must be a non-empty string, got {name!r}")
    if name != name.strip():
        raise ValueError(f"item name has surrounding whitespace: {name!r}")
    for ch in _FORBIDDEN_IN_ITEM:
        if ch in name:
            raise ValueError(f"item name contains {ch!r}: {name!r}")
    return name


def canonical_compare(a: str, b: str) -> int:
    """Fixed total order on item names: case-sensitive code-point comparison.

    Returns -1, 0 or 1. The order is independent of item frequency, which is
    what lets a tree absorb inserts and deletes without restructuring.
    """
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def canonicalize(items: Transaction | Iterable[str]) -> list[str]:
    """Deduplicate item names and sort them into canonical code-point order."""
    if isinstance(items, Transaction):
        items = items.items
    return sorted(set(items))


@dataclass(frozen=True)
class Transaction:
    """One database row: an id, a label, and a duplicate-free item sequence.

    Items keep their input order; canonical order is applied only when the
    transaction enters a tree or a mining result. Empty item sequences are
    representable (they arise from frequent-item projection) but are rejected
    by the CSV parser on input.
    """

    id: str
    label: str
    items: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.id:
            raise ValueError("transaction id must be non-empty")
        for value, what in ((self.id, "id"), (self.label, "label")):
            if value != value.strip():
                raise ValueError(f"transaction {what} has surrounding whitespace: {value!r}")
            for ch in _FORBIDDEN_IN_FIELD:
                if ch in value:
                    raise ValueError(f"transaction {what} contains {ch!r}: {value!r}")
        for name in self.items:
            validate_item_name(name)
        if len(set(self.items)) != len(self.items):
            raise ValueError(f"transaction {self.id!r} has duplicate items")

    def __iter__(self) -> Iterator[str]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class TransactionDatabase:
    """Ordered sequence of transactions with pairwise-distinct ids."""

    transactions: tuple[Transaction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "transactions", tuple(self.transactions))
        seen = set()
        for t in self.transactions:
            if t.id in seen:
                raise DuplicateIdError(f"duplicate transaction id {t.id!r}")
            seen.add(t.id)

    @property
    def size(self) -> int:
        return len(self.transactions)

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self) -> Iterator[Transaction]:
        return iter(self.transactions)

    def item_supports(self) -> dict[str, int]:
        """Number of transactions containing each item."""
        counts: dict[str, int] = {}
        for t in self.transactions:
            for name in t.items:
                counts[name] = counts.get(name, 0) + 1
        return counts

    def alphabet(self) -> list[str]:
        """All distinct item names, canonically ordered."""
        return sorted({name for t in self.transactions for name in t.items})


@dataclass(frozen=True)
class MinSupport:
    """Minimum support threshold: an absolute count or a fraction of database size.

    Exactly one of ``count`` / ``fraction`` is set. Fractions resolve with a
    ceiling, so a 50% threshold over 4 transactions means a support of at
    least 2, and over 5 transactions at least 3. The frequency test is
    inclusive everywhere: support >= resolved threshold is frequent.
    """

    count: int | None = None
    fraction: Fraction | None = None

    def __post_init__(self):
        if (self.count is None) == (self.fraction is None):
            raise InvalidMinSupportError("exactly one of count/fraction must be given")
        if self.count is not None:
            if not isinstance(self.count, int) or isinstance(self.count, bool) or self.count < 1:
                raise InvalidMinSupportError(
                    f"absolute minimum support must be an integer >= 1, got {self.count!r}"
                )
        else:
            try:
                object.__setattr__(self, "fraction", Fraction(self.fraction))
            except (TypeError, ValueError, OverflowError) as exc:
                raise InvalidMinSupportError(f"bad minimum support fraction: {self.fraction!r}") from exc
            if not 0 < self.fraction <= 1:
                raise InvalidMinSupportError(
                    f"fractional minimum support must lie in (0, 1], got {self.fraction}"
                )

    @classmethod
    def parse(cls, text: str) -> "MinSupport":
        """Parse ``"N"`` as an absolute count or ``"P%"`` as the fraction P/100."""
        stripped = text.strip()
        try:
            if stripped.endswith("%"):
                return cls(fraction=Fraction(stripped[:-1].strip()) / 100)
            return cls(count=int(stripped))
        except InvalidMinSupportError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidMinSupportError(f"cannot parse minimum support {text!r}") from exc

    @classmethod
    def coerce(cls, value) -> "MinSupport":
        """Accept a MinSupport, an int count, a float/Fraction ratio, or parseable text.

        Floats convert exactly via binary Fraction, so 0.5 means exactly one
        half but 0.01 is a hair above 1/100; pass ``"1%"`` or a Fraction for
        exact decimal ratios.
        """
        if isinstance(value, cls):
            return value
        if isinstance(value, bool):
            raise InvalidMinSupportError(f"cannot interpret {value!r} as a minimum support")
        if isinstance(value, int):
            return cls(count=value)
        if isinstance(value, (float, Fraction)):
            return cls(fraction=value)
        if isinstance(value, str):
            return cls.parse(value)
        raise InvalidMinSupportError(f"cannot interpret {value!r} as a minimum support")

    def resolve(self, db_size: int) -> int:
        """Resolve to an absolute count for a database of ``db_size`` transactions.

        Absolute thresholds pass through unchanged; fractions resolve as
        ceil(fraction * db_size), clamped to at least 1.
        """
        if db_size < 0:
            raise ValueError(f"db_size must be >= 0, got {db_size}")
        if self.count is not None:
            return self.count
        return max(1, math.ceil(self.fraction * db_size))


def parse_database(text: str) -> TransactionDatabase:
    """Parse transaction CSV: one ``id,label,item1;item2;...`` line per transaction.

    Blank lines and lines starting with ``#`` are ignored; LF and CRLF both
    accepted. Whitespace around fields and items is trimmed; no quoting or
    escaping is supported. Items repeated within a line are deduplicated,
    keeping the first occurrence. Transactions with no items are rejected.
    """
    transactions = []
    ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise ParseError(f"expected 3 comma-separated fields, got {len(fields)}", line=lineno)
        txn_id, label, items_field = (f.strip() for f in fields)
        if txn_id in ids:
            raise DuplicateIdError(f"line {lineno}: duplicate transaction id {txn_id!r}")
        if not items_field:
            raise EmptyTransactionError(f"transaction {txn_id!r} has no items", line=lineno)
        items = []
        seen = set()
        for raw_item in items_field.split(";"):
            name = raw_item.strip()
            if not name:
                raise ParseError("empty item name", line=lineno)
            if name not in seen:
                seen.add(name)
                items.append(name)
        try:
            transactions.append(Transaction(txn_id, label, tuple(items)))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        ids.add(txn_id)
    return TransactionDatabase(tuple(transactions))


def serialize_database(db: TransactionDatabase) -> str:
    """Inverse of parse_database; LF line endings, trailing newline.

    Transactions that lost all their items (see optimize_database) serialize
    with an empty item field, which parse_database deliberately refuses;
    empty item sets are an output-only affordance.
    """
    return "".join(f"{t.id},{t.label},{';'.join(t.items)}\n" for t in db)


def load_database(path) -> TransactionDatabase:
    """Read and parse a transaction CSV file."""
    with open(path, encoding="utf-8") as fh:
        return parse_database(fh.read())
