"""The tied Jones monoid: normal forms made of descending tangle runs
followed by free ties, the Catalan-triangle stratification with its
shift bijection, separability of planar diagrams, and the boxed
partition counts.
"""

from __future__ import annotations

from math import comb

from .diagrams import Diagram
from .errors import DomainError, IndexRangeError, MalformedPartitionError
from .setpartitions import SetPartition, enumerate_partitions
from .words import Token, Word


class FWord:
    """A product of descending tangle runs f_{j,k} = f_k f_{k-1} ... f_j
    with strictly increasing lower and upper indices."""

    __slots__ = ("n", "runs")

    def __init__(self, n: int, runs):
        runs = tuple((int(j), int(k)) for j, k in runs)
        for j, k in runs:
            if not (1 <= j <= k <= n - 1):
                raise IndexRangeError(f"run ({j},{k}) outside [1,{n - 1}]")
        for (j1, k1), (j2, k2) in zip(runs, runs[1:]):
            if not (j1 < j2 and k1 < k2):
                raise MalformedPartitionError(
                    f"runs must have strictly increasing endpoints: {runs}"
                )
        self.n = n
        self.runs = runs

    def letters(self) -> list[int]:
        """The generator indices spelled out, each run descending."""
        out = []
        for j, k in self.runs:
            out.extend(range(k, j - 1, -1))
        return out

    def indices(self) -> set[int]:
        return {i for j, k in self.runs for i in range(j, k + 1)}

    def degree(self) -> int:
        """Number of distinct generator indices used."""
        return len(self.indices())

    def gaps(self) -> list[int]:
        """Indices strictly between two consecutive runs."""
        out = []
        for (_, k1), (j2, _) in zip(self.runs, self.runs[1:]):
            out.extend(range(k1 + 1, j2))
        return out

    def to_word(self) -> Word:
        return Word(tuple(Token("f", i) for i in self.letters()))

    def to_text(self) -> str:
        if not self.runs:
            return "1"
        return " ".join(f"f{{{j},{k}}}" for j, k in self.runs)

    def __eq__(self, other):
        return isinstance(other, FWord) and self.n == other.n and self.runs == other.runs

    def __hash__(self):
        return hash((self.n, self.runs))

    def __repr__(self):
        return f"FWord({self.n}, {self.runs})"


def degree(f: FWord) -> int:
    return f.degree()


def gaps(f: FWord) -> list[int]:
    return f.gaps()


class TJNormal:
    """Normal form: a run word followed by ties whose indices do not
    occur among the run indices."""

    __slots__ = ("f", "ties")

    def __init__(self, f: FWord, ties):
        ties = frozenset(int(t) for t in ties)
        for t in ties:
            if not (1 <= t <= f.n - 1):
                raise IndexRangeError(f"tie index {t} outside [1,{f.n - 1}]")
        if ties & f.indices():
            raise MalformedPartitionError("tie indices must be absent from the runs")
        self.f = f
        self.ties = ties

    def to_word(self) -> Word:
        return self.f.to_word() + Word(tuple(Token("e", i) for i in sorted(self.ties)))

    def to_text(self) -> str:
        left = self.f.to_text()
        if not self.ties:
            return left
        right = " ".join(f"e{i}" for i in sorted(self.ties))
        return f"{left} | {right}"

    def __eq__(self, other):
        return isinstance(other, TJNormal) and self.f == other.f and self.ties == other.ties

    def __hash__(self):
        return hash((self.f, self.ties))

    def __repr__(self):
        return f"TJNormal({self.to_text()!r})"


# -- normalization -----------------------------------------------------------


def _reduce_letters(letters: list[int]) -> tuple[list[int], set[int]]:
    """Shrink a tangle word with the idempotent and sandwich rules,
    collecting the ties emitted by the sandwich reductions."""
    ties: set[int] = set()
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for q in range(len(letters)):
            for p in range(q - 1, -1, -1):
                if letters[p] != letters[q]:
                    continue
                i = letters[p]
                between = letters[p + 1 : q]
                if any(x == i for x in between):
                    break  # not the innermost pair for this index
                adjacent = [x for x in between if abs(x - i) == 1]
                if len(adjacent) == 0:
                    # f_i B f_i = B f_i when B commutes with f_i
                    letters = letters[:p] + between + letters[q:]
                    changed = True
                elif len(adjacent) == 1:
                    # f_i A f_j B f_i = A f_i B up to a tie on j
                    j = adjacent[0]
                    ties.add(j)
                    at = between.index(j)
                    letters = (
                        letters[:p] + between[:at] + [i] + between[at + 1 :] + letters[q + 1 :]
                    )
                    changed = True
                if changed:
                    break
            if changed:
                break
    return letters, ties


def _sort_letters(letters: list[int]) -> list[int]:
    """Commute distant letters so descents happen only by exactly one;
    the word then splits into its canonical runs."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for p in range(len(letters) - 1):
            if letters[p] > letters[p + 1] + 1:
                letters[p], letters[p + 1] = letters[p + 1], letters[p]
                changed = True
    return letters


def tj_normalize(w: Word, n: int) -> TJNormal:
    """Normalize a word over the tie / tied-tangle alphabet.

    Ties commute with everything and are collected to the right; the
    tangle part is reduced with the idempotent and sandwich rules (the
    sandwich emits a tie, which joins the collected ones); finally ties
    swallowed by a tangle of the same index are dropped.  Idempotent,
    and image-preserving under the ramified evaluation.
    """
    letters = []
    ties: set[int] = set()
    for tok in w:
        if tok.name == "e":
            if tok.j is not None and tok.j != tok.i + 1:
                raise DomainError(f"extended tie {tok} is not in the tied Jones alphabet")
            if not (1 <= tok.i <= n - 1):
                raise IndexRangeError(f"tie index {tok.i} outside [1,{n - 1}]")
            ties.add(tok.i)
        elif tok.name == "f":
            if not (1 <= tok.i <= n - 1):
                raise IndexRangeError(f"tangle index {tok.i} outside [1,{n - 1}]")
            letters.append(tok.i)
        else:
            raise DomainError(f"token {tok} is not in the tied Jones alphabet")
    letters, emitted = _reduce_letters(letters)
    ties |= emitted
    letters = _sort_letters(letters)

    runs = []
    for x in letters:
        if runs and runs[-1][0] == x + 1:
            runs[-1][0] = x
        else:
            runs.append([x, x])
    fword = FWord(n, [(lo, hi) for lo, hi in runs])
    return TJNormal(fword, ties - fword.indices())


# -- enumeration and the shift bijection ----------------------------------------


def enumerate_all_fwords(n: int):
    """Every valid run word on n strands, in lexicographic run order."""

    def rec(prefix, min_j, min_k):
        yield FWord(n, prefix)
        for j in range(min_j, n):
            for k in range(max(j, min_k), n):
                yield from rec(prefix + [(j, k)], j + 1, k + 1)

    yield from rec([], 1, 1)


def enumerate_fwords(n: int, k: int):
    """The stratum of run words using exactly k distinct indices."""
    if not (0 <= k <= n):
        raise IndexRangeError(f"need 0 <= k <= n, got {k}")
    for f in enumerate_all_fwords(n):
        if f.degree() == k:
            yield f


def catalan_triangle(n: int, k: int, _memo={}) -> int:
    """Ballot-number triangle: T(n,0)=1, T(n,n)=0 for n>0, and
    T(n,k) = T(n,k-1) + T(n-1,k)."""
    if not (0 <= k <= n):
        raise IndexRangeError(f"need 0 <= k <= n, got ({n},{k})")
    if k == 0:
        return 1
    if k == n:
        return 1 if n == 0 else 0
    key = (n, k)
    if key not in _memo:
        _memo[key] = catalan_triangle(n, k - 1) + catalan_triangle(n - 1, k)
    return _memo[key]


def h_map(b: FWord) -> FWord:
    """The degree-raising bijection onto the run words that use the top
    index: append the top generator, or shift the run after the
    maximal gap down by one and pull the later runs along."""
    n = b.n
    if not b.runs or b.runs[-1][1] != n - 1:
        return FWord(n, list(b.runs) + [(n - 1, n - 1)])
    all_gaps = b.gaps()
    if all_gaps:
        g = max(all_gaps)
        at = next(idx for idx, (j, _) in enumerate(b.runs) if j == g + 1)
    else:
        g = b.runs[0][0] - 1
        at = 0
        if g < 1:
            raise DomainError(f"{b!r} is outside the domain of the bijection")
    runs = list(b.runs[:at])
    runs.append((g, b.runs[at][1]))
    runs += [(j - 1, k) for j, k in b.runs[at + 1 :]]
    return FWord(n, runs)


def h_inverse(b: FWord) -> FWord:
    """Inverse of the shift bijection; the input must use the top index
    (necessarily exactly once, in its last run)."""
    n = b.n
    if not b.runs or b.runs[-1][1] != n - 1:
        raise DomainError(f"{b!r} does not use the top index {n - 1}")
    runs = [list(r) for r in b.runs]
    if runs[-1][0] == n - 1:
        return FWord(n, [tuple(r) for r in runs[:-1]])
    for at in range(len(runs) - 1, -1, -1):
        old_j = runs[at][0]
        runs[at][0] = old_j + 1
        # stop once the vacated index is a genuine gap of the result,
        # i.e. the previous run does not reach it
        if at == 0 or old_j > runs[at - 1][1]:
            break
    return FWord(n, [tuple(r) for r in runs])


# -- separability and boxed counts ------------------------------------------------


def separability_degree(d: Diagram) -> int:
    """Number of inseparable components of a planar all-arc diagram:
    one more than the number of vertical cuts no arc crosses."""
    if not d.classify().is_planar:
        raise MalformedPartitionError("separability is defined for planar diagrams")
    n = d.n
    cuts = 0
    for m in range(1, n):
        crossed = False
        for block in d.part.blocks():
            sides = {(x if x <= n else x - n) > m for x in block}
            if len(sides) == 2:
                crossed = True
                break
        if not crossed:
            cuts += 1
    return cuts + 1


def boxed_count(n: int, j: int) -> int:
    """Ramified pairs with planar connectivity and a boxed coarse part
    of j blocks, by the ballot-number formula."""
    if not (1 <= j <= n):
        raise IndexRangeError(f"need 1 <= j <= n, got ({n},{j})")
    return sum(
        comb(k - 1, j - 1) * catalan_triangle(n, n - k) for k in range(j, n + 1)
    )


def _enumerate_matchings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for idx, other in enumerate(rest):
        for tail in _enumerate_matchings(rest[:idx] + rest[idx + 1 :]):
            yield [(first, other)] + tail


def enumerate_brauer(n: int):
    """All all-arc diagrams on n strands ((2n-1)!! of them)."""
    for blocks in _enumerate_matchings(list(range(1, 2 * n + 1))):
        yield Diagram(n, SetPartition.from_blocks(blocks, 2 * n))


def enumerate_planar(n: int):
    for d in enumerate_brauer(n):
        if d.classify().is_planar:
            yield d


def boxed_count_direct(n: int, j: int) -> int:
    """Direct enumeration oracle for the boxed counts: coarsen each
    planar diagram by every partition of its blocks and keep the boxed
    results with j blocks."""
    from .ramified import Ramified, is_boxed

    if not (1 <= j <= n):
        raise IndexRangeError(f"need 1 <= j <= n, got ({n},{j})")
    count = 0
    for d in enumerate_planar(n):
        blocks = d.part.blocks()
        for grouping in enumerate_partitions(len(blocks)):
            merged = [
                [x for b in group for x in blocks[b - 1]]
                for group in grouping.blocks()
            ]
            coarse = Diagram(n, SetPartition.from_blocks(merged, 2 * n))
            pair = Ramified(d, coarse)
            if coarse.part.num_blocks == j and is_boxed(pair):
                count += 1
    return count
