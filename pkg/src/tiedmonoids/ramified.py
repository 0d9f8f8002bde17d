"""Ramified partitions: pairs of diagrams (fine, coarse) with the fine
one refining the coarse one, multiplied componentwise.  Houses the tied
generator family, the balanced/boxed predicates, family closures and
the constructive factorizations, plus all the exact counting formulas.
"""

from __future__ import annotations

import json
from math import comb, factorial

from .diagrams import (
    Diagram,
    MonoidTable,
    Permutation,
    arrangement_permutation,
    closure,
    generator,
    tie_diagram,
)
from .errors import (
    DomainError,
    GroundMismatchError,
    IndexRangeError,
    MalformedPartitionError,
    UnknownFamilyError,
)
from .setpartitions import (
    SetPartition,
    bell,
    enumerate_partitions,
    fitzgerald_decompose,
    is_linear,
    stirling2,
)
from .words import Token, Word


class Ramified:
    """A pair of diagrams (fine, coarse) on the same strands with
    fine ⪯ coarse; the coarse part records which connectivity classes
    are tied together."""

    __slots__ = ("fine", "coarse")

    def __init__(self, fine: Diagram, coarse: Diagram):
        if fine.n != coarse.n:
            raise GroundMismatchError("components have different strand counts")
        if not fine.part.finer_than(coarse.part):
            raise MalformedPartitionError("fine component must refine the coarse one")
        self.fine = fine
        self.coarse = coarse

    @property
    def n(self) -> int:
        return self.fine.n

    def __mul__(self, other: "Ramified") -> "Ramified":
        if self.n != other.n:
            raise GroundMismatchError("strand counts differ")
        fine = self.fine * other.fine
        coarse = self.coarse * other.coarse
        if not fine.part.finer_than(coarse.part):
            # concatenation is monotone for the refinement order, so this
            # can only be an internal bug, never a data problem
            raise RuntimeError("product violated the refinement invariant")
        return Ramified(fine, coarse)

    def __eq__(self, other):
        return (
            isinstance(other, Ramified)
            and self.fine == other.fine
            and self.coarse == other.coarse
        )

    def __hash__(self):
        return hash((self.fine, self.coarse))

    def key(self):
        return (self.n, self.fine.part.rgs, self.coarse.part.rgs)

    def __repr__(self):
        return f"Ramified({self.to_text()!r})"

    def to_text(self) -> str:
        return f"{self.fine.to_text()} ; {self.coarse.to_text()}"

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Ramified":
        if ";" not in text:
            raise MalformedPartitionError("ramified text needs 'fine ; coarse'")
        left, right = text.split(";", 1)
        fine = Diagram.from_text(left, n)
        return cls(fine, Diagram.from_text(right, fine.n))

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "I": [list(b) for b in self.fine.signed_blocks()],
                "R": [list(b) for b in self.coarse.signed_blocks()],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Ramified":
        data = json.loads(text)
        n = int(data["n"])
        return cls(Diagram.from_blocks(n, data["I"]), Diagram.from_blocks(n, data["R"]))


# -- generators ---------------------------------------------------------------


def rid(n: int) -> Ramified:
    one = Diagram.identity(n)
    return Ramified(one, one)


def embed(d: Diagram) -> Ramified:
    """The homomorphic embedding d -> (d, d)."""
    return Ramified(d, d)


def ltilde(n: int, i: int) -> Ramified:
    return embed(generator(n, "L", i))


def htilde(n: int, i: int) -> Ramified:
    return embed(generator(n, "H", i))


def etilde(n: int, i: int, j: int | None = None) -> Ramified:
    """The tie generator: identity connectivity, strands i and j tied."""
    return Ramified(Diagram.identity(n), generator(n, "E", i, j))


def ftilde(n: int, i: int) -> Ramified:
    """The tied tangle: tangle connectivity with its two arcs tied."""
    return Ramified(generator(n, "H", i), generator(n, "E", i))


def rgenerator(n: int, kind: str, i: int | None = None, j: int | None = None):
    if kind == "Ltilde":
        return ltilde(n, i)
    if kind == "Htilde":
        return htilde(n, i)
    if kind == "Etilde":
        return etilde(n, i, j)
    if kind == "Ftilde":
        return ftilde(n, i)
    if kind == "embed":
        raise DomainError("use embed(diagram) directly")
    raise IndexRangeError(f"unknown ramified generator kind {kind!r}")


# -- predicates ---------------------------------------------------------------


class RamifiedFlags:
    __slots__ = ("balanced", "boxed", "report")

    def __init__(self, balanced, boxed, report):
        self.balanced = balanced
        self.boxed = boxed
        self.report = report

    def __repr__(self):
        return f"RamifiedFlags(balanced={self.balanced}, boxed={self.boxed})"


def flags(a: Ramified) -> RamifiedFlags:
    """Balance report (up/down bracket counts of the fine part inside
    each coarse block) and the boxed predicate."""
    n = a.n
    coarse_of = a.coarse.part.rgs
    report = [[0, 0] for _ in range(a.coarse.part.num_blocks)]
    for block in a.fine.part.blocks():
        cls = coarse_of[block[0] - 1]
        if all(x <= n for x in block):
            report[cls][0] += 1
        elif all(x > n for x in block):
            report[cls][1] += 1
    balanced = all(u == d for u, d in report)
    boxed = is_linear(a.coarse.top_partition()) and all(
        a.coarse.part.same_block(i, n + i) for i in range(1, n + 1)
    )
    return RamifiedFlags(balanced, boxed, tuple((u, d) for u, d in report))


def is_balanced(a: Ramified) -> bool:
    return flags(a).balanced


def is_boxed(a: Ramified) -> bool:
    return flags(a).boxed


# -- word evaluation (the canonical generator assignment) ----------------------


def evaluate_word(n: int, w: Word) -> Ramified:
    """Evaluate a word over the s/t/e/f alphabet into the ramified
    monoid: s_i -> (L_i,L_i), t_i -> (H_i,H_i), e_{i,j} -> (1,E_{i,j}),
    f_i -> (H_i,E_i).  The empty word gives the identity."""
    out = rid(n)
    for tok in w:
        if tok.name == "s":
            out = out * ltilde(n, tok.i)
        elif tok.name == "t":
            out = out * htilde(n, tok.i)
        elif tok.name == "e":
            out = out * etilde(n, tok.i, tok.j)
        elif tok.name == "f":
            out = out * ftilde(n, tok.i)
        else:
            raise DomainError(f"token {tok} has no ramified meaning")
    return out


def _permutation_word(p: Permutation, name: str = "s") -> Word:
    return Word(tuple(Token(name, i) for i in p.adjacent_word()))


def _tie_word(p: SetPartition) -> Word:
    """Ties realizing a partition of the strands, via the pair-atom
    decomposition (consecutive pairs inside each block)."""
    toks = []
    for i, j in fitzgerald_decompose(p):
        toks.append(Token("e", i) if j == i + 1 else Token("e", i, j))
    return Word(tuple(toks))


# -- families -----------------------------------------------------------------


def family_generators(family: str, n: int):
    """Labeled generator lists for the closure families."""
    if family == "RS":
        gens = [(f"s{i}", ltilde(n, i)) for i in range(1, n)]
        gens += [(f"e{i}", etilde(n, i)) for i in range(1, n)]
    elif family == "RBr":
        gens = [(f"s{i}", ltilde(n, i)) for i in range(1, n)]
        gens += [(f"t{i}", htilde(n, i)) for i in range(1, n)]
        gens += [(f"e{i}", etilde(n, i)) for i in range(1, n)]
        gens += [(f"f{i}", ftilde(n, i)) for i in range(1, n)]
    elif family == "bBr":
        gens = [(f"s{i}", ltilde(n, i)) for i in range(1, n)]
        gens += [(f"e{i}", etilde(n, i)) for i in range(1, n)]
        gens += [(f"f{i}", ftilde(n, i)) for i in range(1, n)]
    elif family in ("tJimage", "bJ"):
        gens = [(f"e{i}", etilde(n, i)) for i in range(1, n)]
        gens += [(f"f{i}", ftilde(n, i)) for i in range(1, n)]
    else:
        raise UnknownFamilyError(f"unknown ramified family {family!r}")
    return gens


def build_family(family: str, n: int, limit: int | None = None) -> MonoidTable:
    """Closure table for RS / RBr / bBr / tJimage (alias bJ).

    The boxed-and-planar submonoid is generated by the tie and tied
    tangle generators, so bJ is built from those; use the filter
    helpers to cross-check it against the balanced/boxed subsets."""
    return closure(rid(n), family_generators(family, n), limit)


def balanced_elements(table: MonoidTable) -> list[Ramified]:
    return [a for a in table if is_balanced(a)]


def boxed_planar_elements(table: MonoidTable) -> list[Ramified]:
    return [
        a
        for a in table
        if a.fine.classify().is_planar and is_boxed(a)
    ]


# -- factorizations ------------------------------------------------------------


def _fine_block_data(a: Ramified):
    """Classify the fine blocks of an all-arc ramified pair.

    Returns (ups, downs, lines, class_of) where ups/downs are bracket
    endpoint pairs sorted by minimum (downs shifted back to [n]), lines
    are (top, bottom) pairs sorted by top, and class_of maps each such
    item (by identity) to its coarse block index.
    """
    n = a.n
    if not a.fine.classify().is_brauer:
        raise MalformedPartitionError("factorization requires an all-arc fine part")
    coarse_of = a.coarse.part.rgs
    ups, downs, lines = [], [], []
    up_cls, down_cls, line_cls = [], [], []
    for block in a.fine.part.blocks():
        cls = coarse_of[block[0] - 1]
        x, y = block
        if y <= n:
            ups.append((x, y))
            up_cls.append(cls)
        elif x > n:
            downs.append((x - n, y - n))
            down_cls.append(cls)
        else:
            lines.append((x, y - n))
            line_cls.append(cls)
    up_order = sorted(range(len(ups)), key=lambda idx: ups[idx])
    down_order = sorted(range(len(downs)), key=lambda idx: downs[idx])
    line_order = sorted(range(len(lines)), key=lambda idx: lines[idx])
    ups = [ups[idx] for idx in up_order]
    up_cls = [up_cls[idx] for idx in up_order]
    downs = [downs[idx] for idx in down_order]
    down_cls = [down_cls[idx] for idx in down_order]
    lines = [lines[idx] for idx in line_order]
    line_cls = [line_cls[idx] for idx in line_order]
    return ups, up_cls, downs, down_cls, lines, line_cls


def factor_ramified_brauer(a: Ramified) -> Word:
    """A word r T_1 T_3 ... T_{2k-1} r' over the s/e/t/f alphabet whose
    evaluation recovers the pair: r, r' use only s and e tokens, and
    each T at an odd slot is either the plain or the tied tangle.

    The ties are placed per coarse class: classes reachable on the top
    row are merged by ties before the tangles, bottom-row classes after
    them, and a tied tangle bridges a class containing both an up and a
    down bracket.
    """
    n = a.n
    ups, up_cls, downs, down_cls, lines, line_cls = _fine_block_data(a)
    k = len(ups)
    assert len(downs) == k, "arc diagrams have equally many up and down brackets"

    # pair up brackets with down brackets: inside each coarse class pair
    # the minimal ones, then the leftovers in ascending order
    pair_of = [None] * k  # up index -> down index
    used_down = [False] * k
    by_class_up: dict[int, int] = {}
    by_class_down: dict[int, int] = {}
    for idx in range(k):
        by_class_up.setdefault(up_cls[idx], idx)
        by_class_down.setdefault(down_cls[idx], idx)
    for cls, uidx in by_class_up.items():
        didx = by_class_down.get(cls)
        if didx is not None:
            pair_of[uidx] = didx
            used_down[didx] = True
    free_down = iter([idx for idx in range(k) if not used_down[idx]])
    for uidx in range(k):
        if pair_of[uidx] is None:
            pair_of[uidx] = next(free_down)

    sigma_top = arrangement_permutation(a.fine.top_partition())
    bot_images = [0] * n
    for uidx in range(k):
        da, db = downs[pair_of[uidx]]
        bot_images[da - 1] = 2 * uidx + 1
        bot_images[db - 1] = 2 * uidx + 2
    for top, bot in lines:
        bot_images[bot - 1] = sigma_top(top)
    sigma_bot = Permutation(tuple(bot_images))

    # tie partitions in slot coordinates: one block per coarse class,
    # using a representative slot for each bracket / line
    top_groups: dict[int, list[int]] = {}
    bottom_groups: dict[int, list[int]] = {}
    for uidx in range(k):
        top_groups.setdefault(up_cls[uidx], []).append(2 * uidx + 1)
        bottom_groups.setdefault(down_cls[pair_of[uidx]], []).append(2 * uidx + 1)
    for lidx, (top, _) in enumerate(lines):
        slot = sigma_top(top)
        top_groups.setdefault(line_cls[lidx], []).append(slot)
        bottom_groups.setdefault(line_cls[lidx], []).append(slot)

    def group_partition(groups):
        blocks = [sorted(g) for g in groups.values()]
        covered = {x for g in blocks for x in g}
        blocks += [[p] for p in range(1, n + 1) if p not in covered]
        return SetPartition.from_blocks(blocks, n)

    middle = []
    for uidx in range(k):
        tied = up_cls[uidx] == down_cls[pair_of[uidx]]
        middle.append(Token("f" if tied else "t", 2 * uidx + 1))

    return (
        _permutation_word(sigma_top)
        + _tie_word(group_partition(top_groups))
        + Word(tuple(middle))
        + _tie_word(group_partition(bottom_groups))
        + _permutation_word(sigma_bot.inverse())
    )


class BalancedFactorization:
    """The block-ordered factorization s · E · F · s' of a balanced pair."""

    __slots__ = ("n", "s_word", "e_word", "f_word", "sp_word")

    def __init__(self, n, s_word, e_word, f_word, sp_word):
        self.n = n
        self.s_word = s_word
        self.e_word = e_word
        self.f_word = f_word
        self.sp_word = sp_word

    def word(self) -> Word:
        return self.s_word + self.e_word + self.f_word + self.sp_word

    def evaluate(self) -> Ramified:
        return evaluate_word(self.n, self.word())

    def __repr__(self):
        return (
            f"BalancedFactorization(s={self.s_word!s}, E={self.e_word!s}, "
            f"F={self.f_word!s}, s'={self.sp_word!s})"
        )


def factor_balanced(a: Ramified) -> BalancedFactorization:
    """Factor a balanced all-arc ramified pair as s · E · F · s'.

    Coarse blocks are ordered by the minimal left endpoint of their up
    brackets, line-only blocks afterwards by their minimal top endpoint.
    Within the slot range of block j the ties E are the consecutive
    chain and F places a tied tangle per up/down bracket pair.
    """
    n = a.n
    if not is_balanced(a):
        raise DomainError("factorization requires a balanced coarse part")
    ups, up_cls, downs, down_cls, lines, line_cls = _fine_block_data(a)

    per_class: dict[int, dict] = {}
    for idx, cls in enumerate(up_cls):
        per_class.setdefault(cls, {"ups": [], "downs": [], "lines": []})["ups"].append(ups[idx])
    for idx, cls in enumerate(down_cls):
        per_class.setdefault(cls, {"ups": [], "downs": [], "lines": []})["downs"].append(downs[idx])
    for idx, cls in enumerate(line_cls):
        per_class.setdefault(cls, {"ups": [], "downs": [], "lines": []})["lines"].append(lines[idx])

    bracket_blocks = []
    line_blocks = []
    for cls, data in per_class.items():
        assert len(data["ups"]) == len(data["downs"])
        if data["ups"]:
            bracket_blocks.append((min(p[0] for p in data["ups"]), cls))
        else:
            line_blocks.append((min(p[0] for p in data["lines"]), cls))
    ordered = [cls for _, cls in sorted(bracket_blocks)] + [
        cls for _, cls in sorted(line_blocks)
    ]

    s_images = [0] * n
    sp_images = [0] * n  # slot -> bottom point
    e_toks, f_toks = [], []
    offset = 0
    for cls in ordered:
        data = per_class[cls]
        kj = len(data["ups"])
        mj = 2 * kj + len(data["lines"])
        for i, (x, y) in enumerate(sorted(data["ups"]), start=1):
            s_images[x - 1] = offset + 2 * i - 1
            s_images[y - 1] = offset + 2 * i
        for i, (x, y) in enumerate(sorted(data["downs"]), start=1):
            sp_images[offset + 2 * i - 2] = x
            sp_images[offset + 2 * i - 1] = y
        for i, (top, bot) in enumerate(sorted(data["lines"]), start=1):
            s_images[top - 1] = offset + 2 * kj + i
            sp_images[offset + 2 * kj + i - 1] = bot
        e_toks += [Token("e", i + offset) for i in range(1, mj)]
        f_toks += [Token("f", 2 * i - 1 + offset) for i in range(1, kj + 1)]
        offset += mj

    sigma_s = Permutation(tuple(s_images))
    sigma_sp = Permutation(tuple(sp_images))
    return BalancedFactorization(
        n,
        _permutation_word(sigma_s),
        Word(tuple(e_toks)),
        Word(tuple(f_toks)),
        _permutation_word(sigma_sp),
    )


# -- counting -------------------------------------------------------------------


def two_balanced_count(n: int, k: int, bound: int | None = None) -> int:
    """Brute-force count of partitions of n marked elements (k positive,
    k negative, the rest neutral) whose blocks all balance the signs."""
    if not (0 <= 2 * k <= n):
        raise IndexRangeError(f"need 0 <= 2k <= n, got n={n}, k={k}")
    kwargs = {} if bound is None else {"bound": bound}
    count = 0
    for p in enumerate_partitions(n, **kwargs):
        ok = True
        for block in p.blocks():
            pos = sum(1 for x in block if x <= k)
            neg = sum(1 for x in block if k < x <= 2 * k)
            if pos != neg:
                ok = False
                break
        if ok:
            count += 1
    return count


def two_balanced_count_exact(n: int, k: int) -> int:
    """The same count by recursion on the block of the first remaining
    element; agrees with the brute force and stays fast for large n."""
    if not (0 <= 2 * k <= n):
        raise IndexRangeError(f"need 0 <= 2k <= n, got n={n}, k={k}")
    memo = {}

    def f(a, c):
        # a positive and a negative elements remain, plus c neutral ones
        if a == 0 and c == 0:
            return 1
        key = (a, c)
        if key in memo:
            return memo[key]
        total = 0
        if c > 0:
            for m in range(1, c + 1):
                choose_neutral = comb(c - 1, m - 1)
                for p in range(a + 1):
                    total += choose_neutral * comb(a, p) ** 2 * f(a - p, c - m)
        else:
            for p in range(1, a + 1):
                total += comb(a - 1, p - 1) * comb(a, p) * f(a - p, 0)
        memo[key] = total
        return total

    return f(k, n - 2 * k)


def double_factorial_odd(m: int) -> int:
    """1 * 3 * 5 * ... * m for odd m (and 1 for m <= 0)."""
    out = 1
    for v in range(1, m + 1, 2):
        out *= v
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def size_formula(family: str, n: int) -> int:
    """Exact closed-form sizes for the counted families."""
    if n < 1:
        raise IndexRangeError(f"need n >= 1, got {n}")
    if family == "Sn":
        return factorial(n)
    if family == "Pn":
        return bell(n)
    if family == "Jones":
        return catalan(n)
    if family == "Brauer":
        return double_factorial_odd(2 * n - 1)
    if family == "LP":
        return 2 ** (n - 1)
    if family == "DP":
        return sum(stirling2(n, k) * bell(k) for k in range(1, n + 1))
    if family == "RS":
        return factorial(n) * bell(n)
    if family == "RBr":
        return double_factorial_odd(2 * n - 1) * bell(n)
    if family == "bBr":
        total = 0
        for k in range(n // 2 + 1):
            ways = factorial(n) ** 2 // (
                4**k * factorial(k) ** 2 * factorial(n - 2 * k)
            )
            total += ways * two_balanced_count_exact(n, k)
        return total
    if family == "tJ":
        return comb(2 * n - 1, n)
    raise UnknownFamilyError(f"no size formula for family {family!r}")


def ramified_count_report(table: MonoidTable, n: int) -> dict:
    """Two candidate counts for the ramified monoid over a base table.

    The sum of Bell numbers of the block counts is always the true size;
    it equals |M| * b_n exactly when every element has n blocks (all-arc
    submonoids).  Both are reported along with whether they agree."""
    exact = sum(bell(d.part.num_blocks) for d in table)
    claimed = len(table) * bell(n)
    return {"sum_of_bells": exact, "size_times_bell": claimed, "agree": exact == claimed}
