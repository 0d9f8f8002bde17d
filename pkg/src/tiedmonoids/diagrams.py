"""The partition monoid on 2n points with the concatenation product,
its classical submonoids, the bracket normal form for all-arc diagrams,
and a generic right-multiplication closure enumerator.

Point convention: the top row is 1..n, the bottom row is 1'..n' with
k' stored as n+k.  Text format writes bottom points with a prime, JSON
writes them as negative integers.
"""

from __future__ import annotations

import itertools
import json

from .errors import (
    BudgetExceededError,
    GroundMismatchError,
    IndexRangeError,
    MalformedPartitionError,
)
from .setpartitions import SetPartition


class Diagram:
    """An element of the partition monoid: a set partition of the 2n
    points 1..n (top) and 1'..n' (bottom)."""

    __slots__ = ("n", "part")

    def __init__(self, n: int, part: SetPartition):
        if part.m != 2 * n:
            raise MalformedPartitionError(
                f"diagram on {n} strands needs ground size {2 * n}, got {part.m}"
            )
        self.n = n
        self.part = part

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Diagram":
        """Blocks use positive k for top points and negative -k for k'."""
        conv = []
        for block in blocks:
            cblock = []
            for x in block:
                if x == 0 or abs(x) > n:
                    raise MalformedPartitionError(f"point {x} outside strands 1..{n}")
                cblock.append(x if x > 0 else n - x)
            conv.append(cblock)
        return cls(n, SetPartition.from_blocks(conv, 2 * n))

    @classmethod
    def identity(cls, n: int) -> "Diagram":
        return cls.from_blocks(n, [[i, -i] for i in range(1, n + 1)])

    # -- equality / keys --------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.n == other.n and self.part == other.part

    def __hash__(self):
        return hash((self.n, self.part))

    def key(self):
        return (self.n, self.part.rgs)

    def __repr__(self):
        return f"Diagram({self.n}, {self.to_text()!r})"

    # -- text / JSON -------------------------------------------------------

    def signed_blocks(self) -> list[tuple[int, ...]]:
        """Blocks with bottom points negated, canonical block order."""
        out = []
        for block in self.part.blocks():
            out.append(tuple(x if x <= self.n else self.n - x for x in block))
        return out

    def to_text(self) -> str:
        parts = []
        for block in self.signed_blocks():
            parts.append(",".join(str(x) if x > 0 else f"{-x}'" for x in block))
        return "|".join(parts)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Diagram":
        text = "".join(text.split())
        if not text:
            raise MalformedPartitionError("empty diagram text")
        blocks = []
        seen = 0
        for part in text.split("|"):
            block = []
            for token in part.split(","):
                if not token:
                    raise MalformedPartitionError("empty point in diagram text")
                primed = token.endswith("'")
                body = token[:-1] if primed else token
                try:
                    k = int(body)
                except ValueError as exc:
                    raise MalformedPartitionError(f"bad point {token!r}") from exc
                if k < 1:
                    raise MalformedPartitionError(f"bad point {token!r}")
                seen = max(seen, k)
                block.append(-k if primed else k)
            blocks.append(block)
        size = n if n is not None else seen
        return cls.from_blocks(size, blocks)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "blocks": [list(b) for b in self.signed_blocks()]},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        data = json.loads(text)
        return cls.from_blocks(int(data["n"]), data["blocks"])

    # -- product -----------------------------------------------------------

    def concat(self, other: "Diagram") -> "Diagram":
        """Concatenation: stack self above other, fuse the middle row,
        keep only classes meeting the boundary (interior loops vanish)."""
        if self.n != other.n:
            raise GroundMismatchError(f"strand counts differ: {self.n} vs {other.n}")
        n = self.n
        parent = list(range(3 * n))  # 0..n-1 top, n..2n-1 middle, 2n..3n-1 bottom

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra

        first = {}
        for i, b in enumerate(self.part.rgs):  # points 0..2n-1 map to nodes 0..2n-1
            if b in first:
                union(first[b], i)
            else:
                first[b] = i
        first = {}
        for i, b in enumerate(other.part.rgs):  # shift by n into middle/bottom
            if b in first:
                union(first[b], n + i)
            else:
                first[b] = n + i

        boundary = list(range(n)) + list(range(2 * n, 3 * n))
        classes = {}
        for node in boundary:
            point = node + 1 if node < n else node - 2 * n + n + 1  # 1..2n
            classes.setdefault(find(node), []).append(point)
        return Diagram(n, SetPartition.from_blocks(classes.values(), 2 * n))

    __mul__ = concat

    # -- structure -----------------------------------------------------

    def top_partition(self) -> SetPartition:
        """Restriction to the top row, as a partition of [n]."""
        blocks = []
        for block in self.part.blocks():
            top = [x for x in block if x <= self.n]
            if top:
                blocks.append(top)
        return SetPartition.from_blocks(blocks, self.n)

    def bottom_partition(self) -> SetPartition:
        """Restriction to the bottom row, shifted back to a partition of [n]."""
        blocks = []
        for block in self.part.blocks():
            bot = [x - self.n for x in block if x > self.n]
            if bot:
                blocks.append(bot)
        return SetPartition.from_blocks(blocks, self.n)

    def classify(self) -> "DiagramFlags":
        n = self.n
        blocks = self.part.blocks()
        all_arcs = all(len(b) == 2 for b in blocks)
        all_lines = all_arcs and all(b[0] <= n < b[1] for b in blocks)
        up = sum(1 for b in blocks if all(x <= n for x in b))
        down = sum(1 for b in blocks if all(x > n for x in b))
        planar = all_arcs and _noncrossing(blocks, n)
        return DiagramFlags(
            is_brauer=all_arcs,
            is_planar=planar,
            is_permutation=all_lines,
            up_brackets=up,
            down_brackets=down,
        )

    def permutation(self) -> "Permutation":
        """The permutation of an all-lines diagram (top i goes to image')."""
        flags = self.classify()
        if not flags.is_permutation:
            raise MalformedPartitionError("diagram is not a permutation diagram")
        images = [0] * self.n
        for a, b in self.part.blocks():
            images[a - 1] = b - self.n
        return Permutation(tuple(images))


class DiagramFlags:
    __slots__ = ("is_brauer", "is_planar", "is_permutation", "up_brackets", "down_brackets")

    def __init__(self, is_brauer, is_planar, is_permutation, up_brackets, down_brackets):
        self.is_brauer = is_brauer
        self.is_planar = is_planar
        self.is_permutation = is_permutation
        self.up_brackets = up_brackets
        self.down_brackets = down_brackets

    def __repr__(self):
        return (
            f"DiagramFlags(brauer={self.is_brauer}, planar={self.is_planar}, "
            f"permutation={self.is_permutation}, up={self.up_brackets}, "
            f"down={self.down_brackets})"
        )


def _noncrossing(blocks, n: int) -> bool:
    """Perfect matching noncrossing in the boundary order 1..n, n'..1'."""
    arcs = []
    for block in blocks:
        pos = []
        for x in block:
            pos.append(x if x <= n else 3 * n + 1 - x)  # k' sits at 2n+1-k
        a, b = sorted(pos)
        arcs.append((a, b))
    for (a, b), (c, d) in itertools.combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


# -- permutations ------------------------------------------------------------


class Permutation:
    """A bijection of [n]; images[i-1] is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise MalformedPartitionError(f"not a bijection of [n]: {images}")
        self.images = images

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int) -> "Permutation":
        if not (1 <= i < n):
            raise IndexRangeError(f"transposition index {i} outside [1,{n - 1}]")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def after(self, other: "Permutation") -> "Permutation":
        """Composition self∘other (apply `other` first)."""
        if self.n != other.n:
            raise GroundMismatchError("permutation sizes differ")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            images[v - 1] = i
        return Permutation(tuple(images))

    def to_diagram(self) -> Diagram:
        return Diagram.from_blocks(self.n, [[i, -self.images[i - 1]] for i in range(1, self.n + 1)])

    def adjacent_word(self) -> list[int]:
        """Positions i1, i2, ... so that the diagram product
        s_{i1} * s_{i2} * ... equals this permutation's diagram."""
        word = []
        arr = list(self.images)
        changed = True
        while changed:
            changed = False
            for p in range(len(arr) - 1):
                if arr[p] > arr[p + 1]:
                    word.append(p + 1)
                    arr[p], arr[p + 1] = arr[p + 1], arr[p]
                    changed = True
                    break
        return word

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.images})"

    def apply_to_partition(self, p: SetPartition) -> SetPartition:
        """Relabel a partition of [n] through the permutation."""
        if p.m != self.n:
            raise GroundMismatchError("ground size differs from permutation size")
        return SetPartition.from_blocks(
            [[self.images[x - 1] for x in block] for block in p.blocks()], self.n
        )


# -- generators --------------------------------------------------------------


def generator(n: int, kind: str, i: int, j: int | None = None) -> Diagram:
    """Named diagram generators.

    L: the transposition of strands i, i+1.
    H: the horizontal tangle with brackets {i,i+1} and {i',(i+1)'}.
    E: the four-point block {i,j,i',j'} with straight lines elsewhere
       (i == j yields the identity).
    """
    if kind == "L":
        if not (1 <= i < n):
            raise IndexRangeError(f"L index {i} outside [1,{n - 1}]")
        blocks = [[i, -(i + 1)], [i + 1, -i]]
        blocks += [[k, -k] for k in range(1, n + 1) if k not in (i, i + 1)]
        return Diagram.from_blocks(n, blocks)
    if kind == "H":
        if not (1 <= i < n):
            raise IndexRangeError(f"H index {i} outside [1,{n - 1}]")
        blocks = [[i, i + 1], [-i, -(i + 1)]]
        blocks += [[k, -k] for k in range(1, n + 1) if k not in (i, i + 1)]
        return Diagram.from_blocks(n, blocks)
    if kind == "E":
        if j is None:
            j = i + 1
        i, j = min(i, j), max(i, j)
        if not (1 <= i <= j <= n):
            raise IndexRangeError(f"E indices ({i},{j}) outside [1,{n}]")
        if i == j:
            return Diagram.identity(n)
        blocks = [[i, j, -i, -j]]
        blocks += [[k, -k] for k in range(1, n + 1) if k not in (i, j)]
        return Diagram.from_blocks(n, blocks)
    raise IndexRangeError(f"unknown generator kind {kind!r}")


def tie_diagram(p: SetPartition) -> Diagram:
    """The identity-shaped diagram that ties strands according to a
    partition of [n]: each block K becomes the block K ∪ K'."""
    n = p.m
    return Diagram.from_blocks(n, [list(b) + [-x for x in b] for b in p.blocks()])


# -- bracket normal form -----------------------------------------------------


def arrangement_permutation(p: SetPartition) -> Permutation:
    """For a partition of [n] with blocks of size <= 2: the permutation
    sending the i-th pair (ordered by smaller endpoints) to {2i-1, 2i}
    and the singletons, in increasing order, to the remaining positions."""
    pairs = []
    singles = []
    for block in p.blocks():
        if len(block) == 2:
            pairs.append(block)
        elif len(block) == 1:
            singles.append(block[0])
        else:
            raise MalformedPartitionError(f"block {block} has more than 2 elements")
    pairs.sort()
    images = [0] * p.m
    for idx, (a, b) in enumerate(pairs, start=1):
        images[a - 1] = 2 * idx - 1
        images[b - 1] = 2 * idx
    base = 2 * len(pairs)
    for off, c in enumerate(sorted(singles), start=1):
        images[c - 1] = base + off
    return Permutation(tuple(images))


class BrauerNormalForm:
    """Factorization of an all-arc diagram as s * H_1 * H_3 * ... * s'."""

    __slots__ = ("n", "s", "k", "s_prime")

    def __init__(self, n: int, s: Permutation, k: int, s_prime: Permutation):
        self.n = n
        self.s = s
        self.k = k
        self.s_prime = s_prime

    def to_diagram(self) -> Diagram:
        d = self.s.to_diagram()
        for i in range(1, self.k + 1):
            d = d * generator(self.n, "H", 2 * i - 1)
        return d * self.s_prime.to_diagram()

    def __repr__(self):
        return f"BrauerNormalForm(s={self.s.images}, k={self.k}, s'={self.s_prime.images})"


def brauer_normal_form(d: Diagram) -> BrauerNormalForm:
    """Canonical factorization of a Brauer diagram through the bracket
    generators at odd positions.  Raises on non-arc diagrams."""
    flags = d.classify()
    if not flags.is_brauer:
        raise MalformedPartitionError("normal form requires an all-arc diagram")
    top = d.top_partition()
    bottom = d.bottom_partition()
    n_i = arrangement_permutation(top)
    n_j = arrangement_permutation(bottom)
    k = sum(1 for b in top.blocks() if len(b) == 2)
    assert k == flags.down_brackets, "bracket counts must agree on both rows"
    # the through-strand permutation, trivial on the bracket positions
    t_images = list(range(1, d.n + 1))
    for block in d.part.blocks():
        if block[0] <= d.n < block[1]:
            c, dd = block[0], block[1] - d.n
            t_images[n_i(c) - 1] = n_j(dd)
    t_g = Permutation(tuple(t_images))
    s_prime = n_j.inverse().after(t_g)
    return BrauerNormalForm(d.n, n_i, k, s_prime)


# -- closure ------------------------------------------------------------------


class MonoidTable:
    """Closure of a generator set: elements with canonical keys in
    discovery order plus the right-Cayley edge table.

    Element 0 is always the identity.  Instances are read-only after
    construction and safe to share.
    """

    __slots__ = ("labels", "elements", "edges", "_index")

    def __init__(self, labels, elements, edges):
        self.labels = tuple(labels)
        self.elements = list(elements)
        self.edges = [tuple(row) for row in edges]
        self._index = {e.key(): i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise MalformedPartitionError("duplicate canonical keys in table")

    def __len__(self):
        return len(self.elements)

    def index_of(self, element) -> int | None:
        return self._index.get(element.key())

    def __iter__(self):
        return iter(self.elements)

    def right_multiply(self, elem_idx: int, gen_idx: int) -> int:
        return self.edges[elem_idx][gen_idx]


def closure(identity, gens, limit: int | None = None) -> MonoidTable:
    """Breadth-first right-multiplication closure of `gens`.

    `gens` is a sequence of (label, element) pairs sharing the identity's
    carrier.  Discovery order is deterministic: the frontier is processed
    in discovery order and generators in the given order, so tables are
    stable across runs.  Raises BudgetExceededError past `limit` elements.
    """
    gens = list(gens)
    labels = [lab for lab, _ in gens]
    elements = [identity]
    index = {identity.key(): 0}
    edges = []
    i = 0
    while i < len(elements):
        row = []
        for _, g in gens:
            prod = elements[i] * g
            key = prod.key()
            at = index.get(key)
            if at is None:
                if limit is not None and len(elements) >= limit:
                    raise BudgetExceededError(len(elements), limit)
                at = len(elements)
                index[key] = at
                elements.append(prod)
            row.append(at)
        edges.append(row)
        i += 1
    return MonoidTable(labels, elements, edges)


def brauer_generators(n: int):
    for i in range(1, n):
        yield (f"L{i}", generator(n, "L", i))
    for i in range(1, n):
        yield (f"H{i}", generator(n, "H", i))


def jones_generators(n: int):
    for i in range(1, n):
        yield (f"H{i}", generator(n, "H", i))


def symmetric_generators(n: int):
    for i in range(1, n):
        yield (f"L{i}", generator(n, "L", i))
