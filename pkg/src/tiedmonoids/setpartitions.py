"""Set partitions of [m] with the refinement-product (join) monoid structure.

The canonical form is a restricted-growth assignment array: element k
(1-based) is mapped to the index of its block, blocks being numbered by
the order of their minimum elements.  This makes equality, hashing and
ordering O(m) and unique.
"""

from __future__ import annotations

import itertools
from math import comb

from .errors import (
    BoundExceededError,
    GroundMismatchError,
    IndexRangeError,
    MalformedPartitionError,
)

# Enumeration guard; b_12 = 4 213 597 streams in seconds, beyond that the
# streams stop being "desk scale".
DEFAULT_ENUMERATION_BOUND = 12


class SetPartition:
    """A set partition of {1, ..., m} in canonical (restricted-growth) form."""

    __slots__ = ("m", "rgs")

    def __init__(self, m: int, rgs: tuple[int, ...]):
        # rgs is trusted here; use from_blocks/from_rgs for validated input.
        self.m = m
        self.rgs = rgs

    # -- constructors -------------------------------------------------

    @classmethod
    def from_blocks(cls, blocks, m: int) -> "SetPartition":
        """Canonicalize a collection of blocks covering [m].

        Independent of block and element order.  Raises
        MalformedPartitionError on overlap, gap or out-of-range element.
        """
        if m < 1:
            raise MalformedPartitionError(f"ground size must be >= 1, got {m}")
        owner = [None] * m
        for block in blocks:
            block = list(block)
            if not block:
                raise MalformedPartitionError("empty block")
            for x in block:
                if not (1 <= x <= m):
                    raise MalformedPartitionError(f"element {x} outside [1,{m}]")
                if owner[x - 1] is not None:
                    raise MalformedPartitionError(f"element {x} occurs in two blocks")
                owner[x - 1] = block[0]
        if any(o is None for o in owner):
            missing = [i + 1 for i, o in enumerate(owner) if o is None]
            raise MalformedPartitionError(f"elements {missing} not covered")
        # renumber block representatives by first occurrence
        relabel = {}
        rgs = []
        for x in range(1, m + 1):
            rep = owner[x - 1]
            if rep not in relabel:
                relabel[rep] = len(relabel)
            rgs.append(relabel[rep])
        return cls(m, tuple(rgs))

    @classmethod
    def from_rgs(cls, rgs) -> "SetPartition":
        """Build from a restricted-growth string, validating it."""
        rgs = tuple(rgs)
        if not rgs:
            raise MalformedPartitionError("empty ground set")
        top = -1
        for v in rgs:
            if v < 0 or v > top + 1:
                raise MalformedPartitionError(f"not a restricted-growth string: {rgs}")
            top = max(top, v)
        return cls(len(rgs), rgs)

    @classmethod
    def unity(cls, m: int) -> "SetPartition":
        """The all-singletons partition, neutral for join."""
        if m < 1:
            raise MalformedPartitionError(f"ground size must be >= 1, got {m}")
        return cls(m, tuple(range(m)))

    # -- basic structure ----------------------------------------------

    @property
    def num_blocks(self) -> int:
        return max(self.rgs) + 1

    def blocks(self) -> list[tuple[int, ...]]:
        """Blocks as sorted tuples, ordered by their minimum element."""
        out = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.rgs, start=1):
            out[b].append(x)
        return [tuple(b) for b in out]

    def block_of(self, x: int) -> int:
        if not (1 <= x <= self.m):
            raise IndexRangeError(f"element {x} outside [1,{self.m}]")
        return self.rgs[x - 1]

    def same_block(self, x: int, y: int) -> bool:
        return self.block_of(x) == self.block_of(y)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.m == other.m
            and self.rgs == other.rgs
        )

    def __hash__(self):
        return hash((self.m, self.rgs))

    def __repr__(self):
        return f"SetPartition({self.to_text()!r})"

    def key(self):
        return (self.m, self.rgs)

    # -- text format ---------------------------------------------------

    def to_text(self) -> str:
        """Blocks joined by '|', elements ascending, blocks by minimum."""
        return "|".join(",".join(str(x) for x in b) for b in self.blocks())

    @classmethod
    def from_text(cls, text: str, m: int | None = None) -> "SetPartition":
        """Parse the '1,4|2,5,7|3|6' format.  Whitespace is insignificant."""
        text = "".join(text.split())
        if not text:
            raise MalformedPartitionError("empty partition text")
        blocks = []
        for part in text.split("|"):
            if not part:
                raise MalformedPartitionError("empty block in text")
            try:
                blocks.append([int(x) for x in part.split(",")])
            except ValueError as exc:
                raise MalformedPartitionError(f"bad element in {part!r}") from exc
        size = m if m is not None else max(max(b) for b in blocks)
        return cls.from_blocks(blocks, size)

    # -- order and product ---------------------------------------------

    def join(self, other: "SetPartition") -> "SetPartition":
        """Finest common coarsening: the refinement product of the monoid."""
        if self.m != other.m:
            raise GroundMismatchError(f"ground sizes differ: {self.m} vs {other.m}")
        parent = list(range(self.m))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for rgs in (self.rgs, other.rgs):
            first = {}
            for i, b in enumerate(rgs):
                if b in first:
                    ra, rb = find(first[b]), find(i)
                    if ra != rb:
                        parent[rb] = ra
                else:
                    first[b] = i
        relabel = {}
        out = []
        for i in range(self.m):
            r = find(i)
            if r not in relabel:
                relabel[r] = len(relabel)
            out.append(relabel[r])
        return SetPartition(self.m, tuple(out))

    __mul__ = join

    def finer_than(self, other: "SetPartition") -> bool:
        """True iff every block of `other` is a union of blocks of self."""
        if self.m != other.m:
            raise GroundMismatchError(f"ground sizes differ: {self.m} vs {other.m}")
        image = {}
        for mine, theirs in zip(self.rgs, other.rgs):
            if image.setdefault(mine, theirs) != theirs:
                return False
        return True


def canonicalize(blocks, m: int) -> SetPartition:
    return SetPartition.from_blocks(blocks, m)


def atom(m: int, members) -> SetPartition:
    """The partition with one designated block and singletons elsewhere."""
    members = sorted(set(members))
    if not members:
        raise IndexRangeError("atom needs a nonempty subset")
    if members[0] < 1 or members[-1] > m:
        raise IndexRangeError(f"subset {members} outside [1,{m}]")
    rest = [[k] for k in range(1, m + 1) if k not in set(members)]
    return SetPartition.from_blocks([members] + rest, m)


def pair_atom(m: int, i: int, j: int) -> SetPartition:
    """The two-element atom joining i and j."""
    if i == j:
        raise IndexRangeError("pair atom needs distinct elements")
    return atom(m, (i, j))


def fitzgerald_decompose(p: SetPartition) -> list[tuple[int, int]]:
    """Decompose into pair atoms: each block {i1<...<it} contributes
    (i1,i2), (i2,i3), ..., blocks in canonical order.  Joining the atoms
    in this order reproduces the partition."""
    word = []
    for block in p.blocks():
        for a, b in itertools.pairwise(block):
            word.append((a, b))
    return word


def enumerate_partitions(m: int, bound: int = DEFAULT_ENUMERATION_BOUND):
    """All set partitions of [m], exactly once, in lexicographic
    restricted-growth-string order."""
    if m < 1:
        raise MalformedPartitionError(f"ground size must be >= 1, got {m}")
    if m > bound:
        raise BoundExceededError(f"enumeration of [{m}] exceeds bound {bound}")

    rgs = [0] * m

    def rec(i, top):
        if i == m:
            yield SetPartition(m, tuple(rgs))
            return
        for v in range(top + 2):
            rgs[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def is_linear(p: SetPartition) -> bool:
    """True iff every block is an interval of consecutive integers."""
    return all(b[-1] - b[0] == len(b) - 1 for b in p.blocks())


def enumerate_linear(m: int, bound: int = DEFAULT_ENUMERATION_BOUND):
    """All linear partitions of [m] (interval blocks), in lexicographic
    restricted-growth-string order; there are 2^(m-1) of them."""
    if m < 1:
        raise MalformedPartitionError(f"ground size must be >= 1, got {m}")
    if m > bound:
        raise BoundExceededError(f"enumeration of [{m}] exceeds bound {bound}")

    def rec(start, prefix):
        if start > m:
            yield SetPartition(m, tuple(prefix))
            return
        b = prefix[-1] + 1 if prefix else 0
        # longer first block = lexicographically smaller RGS
        for size in range(m - start + 1, 0, -1):
            yield from rec(start + size, prefix + [b] * size)

    yield from rec(1, [])


# -- counting --------------------------------------------------------------


class CountTable:
    """Memoized exact Bell and Stirling numbers up to a configured bound."""

    def __init__(self, bound: int = 400):
        self.bound = bound
        self._bell = [1, 1]  # b_0, b_1
        self._stirling = {}

    def bell(self, m: int) -> int:
        if m < 0 or m > self.bound:
            raise BoundExceededError(f"Bell index {m} outside [0,{self.bound}]")
        while len(self._bell) <= m:
            n = len(self._bell)
            self._bell.append(
                sum(comb(n - 1, k) * self._bell[k] for k in range(n))
            )
        return self._bell[m]

    def stirling(self, m: int, k: int) -> int:
        """Partitions of [m] into exactly k blocks."""
        if m < 0 or m > self.bound:
            raise BoundExceededError(f"Stirling index {m} outside [0,{self.bound}]")
        if k < 0 or k > m:
            return 0
        if m == 0:
            return 1 if k == 0 else 0
        key = (m, k)
        if key not in self._stirling:
            self._stirling[key] = self.stirling(m - 1, k - 1) + k * self.stirling(
                m - 1, k
            )
        return self._stirling[key]


COUNTS = CountTable()


def bell(m: int) -> int:
    return COUNTS.bell(m)


def stirling2(m: int, k: int) -> int:
    return COUNTS.stirling(m, k)


# -- double partitions ------------------------------------------------------


class DoublePartition:
    """A comparable pair (I, R) of partitions of one set, I finer than R,
    under the componentwise join product."""

    __slots__ = ("fine", "coarse")

    def __init__(self, fine: SetPartition, coarse: SetPartition):
        if fine.m != coarse.m:
            raise GroundMismatchError("components live on different ground sets")
        if not fine.finer_than(coarse):
            raise MalformedPartitionError("first component must refine the second")
        self.fine = fine
        self.coarse = coarse

    def __mul__(self, other: "DoublePartition") -> "DoublePartition":
        return DoublePartition(self.fine * other.fine, self.coarse * other.coarse)

    def __eq__(self, other):
        return (
            isinstance(other, DoublePartition)
            and self.fine == other.fine
            and self.coarse == other.coarse
        )

    def __hash__(self):
        return hash((self.fine, self.coarse))

    def __repr__(self):
        return f"DoublePartition({self.fine.to_text()!r}, {self.coarse.to_text()!r})"

    def to_text(self) -> str:
        return f"{self.fine.to_text()} ; {self.coarse.to_text()}"

    def key(self):
        return (self.fine.key(), self.coarse.key())

    @classmethod
    def unity(cls, m: int) -> "DoublePartition":
        one = SetPartition.unity(m)
        return cls(one, one)
