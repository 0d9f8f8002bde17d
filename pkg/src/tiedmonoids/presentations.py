"""Presentations as data: the nine generator/relation catalogs, word
evaluation against diagram or ramified images, relation verification,
the tie-erasing projection, extended ties, tie saturation and the word
problem decided through faithful images.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagrams import Diagram, generator
from .errors import DomainError, IndexRangeError, UnknownFamilyError
from .ramified import Ramified, etilde, ftilde, htilde, ltilde, rid
from .setpartitions import DoublePartition, SetPartition, atom
from .words import Token, Word


@dataclass(frozen=True)
class Relation:
    label: str
    indices: tuple[int, ...]
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class Presentation:
    name: str
    n: int
    generators: tuple[Token, ...]
    relations: tuple[Relation, ...]
    derived: tuple[Relation, ...] = ()

    def labels(self) -> list[str]:
        seen = []
        for rel in self.relations:
            if rel.label not in seen:
                seen.append(rel.label)
        return seen


def _w(*specs) -> Word:
    return Word(tuple(Token(*s) for s in specs))


def _chain(label, indices, *sides) -> list[Relation]:
    """A chain A = B = C becomes the relation pairs (A,B), (B,C)."""
    rels = []
    for left, right in zip(sides, sides[1:]):
        rels.append(Relation(label, tuple(indices), left, right))
    return rels


def _far_pairs(n):
    return [(i, j) for i in range(1, n) for j in range(1, n) if abs(i - j) > 1]


def _near_pairs(n):
    return [(i, j) for i in range(1, n) for j in range(1, n) if abs(i - j) == 1]


def _all_pairs(n):
    return [(i, j) for i in range(1, n) for j in range(1, n)]


def _coxeter_family(letter, n):
    """The involution/commutation/braid triple for s-type generators."""
    rels = []
    for i in range(1, n):
        rels += _chain("S1", (i,), _w((letter, i), (letter, i)), _w())
    for i, j in _far_pairs(n):
        rels += _chain("S2", (i, j), _w((letter, i), (letter, j)), _w((letter, j), (letter, i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "S3",
            (i, j),
            _w((letter, i), (letter, j), (letter, i)),
            _w((letter, j), (letter, i), (letter, j)),
        )
    return rels


def _tangle_family(n):
    rels = []
    for i in range(1, n):
        rels += _chain("T1", (i,), _w(("t", i), ("t", i)), _w(("t", i)))
    for i, j in _far_pairs(n):
        rels += _chain("T2", (i, j), _w(("t", i), ("t", j)), _w(("t", j), ("t", i)))
    for i, j in _near_pairs(n):
        rels += _chain("T3", (i, j), _w(("t", i), ("t", j), ("t", i)), _w(("t", i)))
    return rels


def _brauer_mixed(n):
    rels = []
    for i in range(1, n):
        rels += _chain("Br1", (i,), _w(("t", i), ("s", i)), _w(("s", i), ("t", i)), _w(("t", i)))
    for i, j in _far_pairs(n):
        rels += _chain("Br2", (i, j), _w(("t", i), ("s", j)), _w(("s", j), ("t", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "Br3", (i, j), _w(("s", i), ("t", j), ("t", i)), _w(("s", j), ("t", i)))
        rels += _chain(
            "Br3", (i, j), _w(("t", i), ("t", j), ("s", i)), _w(("t", i), ("s", j)))
    return rels


def _brauer_derived(n):
    rels = []
    for i, j in _near_pairs(n):
        rels += _chain(
            "SitjSi", (i, j),
            _w(("s", i), ("t", j), ("s", i)), _w(("s", j), ("t", i), ("s", j)))
        rels += _chain("tiSjti", (i, j), _w(("t", i), ("s", j), ("t", i)), _w(("t", i)))
        rels += _chain(
            "SiSjti", (i, j),
            _w(("s", i), ("s", j), ("t", i)),
            _w(("t", j), ("s", i), ("s", j)),
            _w(("t", j), ("t", i)))
    return rels


def _pair_generators(letter, n):
    return [Token(letter, i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def _fitzgerald_family(letter, n):
    """(P1)-(P3) over the pair-indexed alphabet."""
    gens = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    rels = []
    for i, j in gens:
        rels += _chain("P1", (i, j), _w((letter, i, j), (letter, i, j)), _w((letter, i, j)))
    for a in gens:
        for b in gens:
            if a != b:
                rels += _chain(
                    "P2", a + b, _w((letter, *a), (letter, *b)), _w((letter, *b), (letter, *a)))
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            for k in range(j + 1, n + 1):
                rels += _chain(
                    "P3", (i, j, k),
                    _w((letter, i, j), (letter, j, k)),
                    _w((letter, i, j), (letter, i, k)),
                    _w((letter, j, k), (letter, i, k)))
    return rels


def _tie_family(n):
    """Idempotence and full commutation of the consecutive ties."""
    rels = []
    for i in range(1, n):
        rels += _chain("Ei2", (i,), _w(("e", i), ("e", i)), _w(("e", i)))
    for i, j in _all_pairs(n):
        rels += _chain("EiEj", (i, j), _w(("e", i), ("e", j)), _w(("e", j), ("e", i)))
    return rels


def _tied_symmetric_mixed(n):
    rels = []
    for i, j in _near_pairs(n):
        rels += _chain(
            "TSn1", (i, j),
            _w(("e", i), ("s", j), ("s", i)), _w(("s", j), ("s", i), ("e", j)))
    for i, j in _all_pairs(n):
        if abs(i - j) != 1:
            rels += _chain("TSn2", (i, j), _w(("s", i), ("e", j)), _w(("e", j), ("s", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "TSn3", (i, j),
            _w(("e", i), ("e", j), ("s", i)),
            _w(("e", j), ("s", i), ("e", j)),
            _w(("s", i), ("e", i), ("e", j)))
    return rels


def _tied_tangle_family(n):
    """The f-generator block shared by the tied monoids."""
    rels = []
    for i in range(1, n):
        rels += _chain("Fi2", (i,), _w(("f", i), ("f", i)), _w(("f", i)))
    for i, j in _far_pairs(n):
        rels += _chain("FiFj", (i, j), _w(("f", i), ("f", j)), _w(("f", j), ("f", i)))
    for i in range(1, n):
        rels += _chain("EiFi", (i,), _w(("e", i), ("f", i)), _w(("f", i), ("e", i)), _w(("f", i)))
    for i, j in _all_pairs(n):
        rels += _chain("EiFj", (i, j), _w(("e", i), ("f", j)), _w(("f", j), ("e", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "FiFjFi", (i, j),
            _w(("f", i), ("f", j), ("f", i)), _w(("e", j), ("f", i), ("e", j)))
    return rels


def _q_mixed(n):
    rels = []
    for i in range(1, n):
        rels += _chain("Eiti", (i,), _w(("e", i), ("t", i)), _w(("t", i), ("e", i)), _w(("t", i)))
    for i, j in _far_pairs(n):
        rels += _chain("Eitj", (i, j), _w(("e", i), ("t", j)), _w(("t", j), ("e", i)))
    for i, j in _far_pairs(n):
        rels += _chain("Fitj", (i, j), _w(("f", i), ("t", j)), _w(("t", j), ("f", i)))
    for i, j in _far_pairs(n):
        rels += _chain("FiSj", (i, j), _w(("f", i), ("s", j)), _w(("s", j), ("f", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "FjEi", (i, j),
            _w(("f", i), ("e", j)), _w(("e", j), ("f", i)),
            _w(("e", j), ("t", i), ("e", j)))
    for i in range(1, n):
        rels += _chain("SiFi", (i,), _w(("s", i), ("f", i)), _w(("f", i), ("s", i)), _w(("f", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "SiFjSi", (i, j),
            _w(("s", i), ("f", j), ("s", i)), _w(("s", j), ("f", i), ("s", j)))
    for i in range(1, n):
        rels += _chain("Fiti", (i,), _w(("f", i), ("t", i)), _w(("t", i), ("f", i)), _w(("t", i)))
    return rels


def _q_derived(n):
    rels = []
    for i, j in _near_pairs(n):
        rels += _chain(
            "FiFj", (i, j),
            _w(("f", i), ("f", j)), _w(("e", j), ("t", i), ("t", j), ("e", i)))
        rels += _chain(
            "Fitj", (i, j), _w(("f", i), ("t", j)), _w(("e", j), ("t", i), ("t", j)))
        rels += _chain(
            "Fitj", (i, j), _w(("t", i), ("f", j)), _w(("t", i), ("t", j), ("e", i)))
        rels += _chain(
            "Eitj", (i, j), _w(("e", i), ("t", j)), _w(("f", j), ("s", i), ("t", j)))
        rels += _chain(
            "Eitj", (i, j), _w(("t", i), ("e", j)), _w(("t", i), ("s", j), ("f", i)))
        rels += _chain(
            "FiSjFi", (i, j),
            _w(("f", i), ("s", j), ("f", i)), _w(("e", j), ("t", i), ("e", j)))
        rels += _chain(
            "SiEjSi", (i, j),
            _w(("s", i), ("e", j), ("s", i)), _w(("s", j), ("e", i), ("s", j)))
        rels += _chain(
            "FiFjEi", (i, j), _w(("f", i), ("f", j), ("e", i)), _w(("f", i), ("f", j)))
        rels += _chain(
            "EiFjFi", (i, j), _w(("e", i), ("f", j), ("f", i)), _w(("f", j), ("f", i)))
        rels += _chain(
            "SiSjFi", (i, j),
            _w(("f", i), ("s", j), ("s", i)), _w(("s", j), ("s", i), ("f", j)))
    return rels


def _w_mixed(n):
    rels = []
    for i in range(1, n):
        rels += _chain("tSiEi", (i,), _w(("s", i), ("e", i)), _w(("e", i), ("s", i)))
    for i, j in _far_pairs(n):
        rels += _chain("tSiEj", (i, j), _w(("s", i), ("e", j)), _w(("e", j), ("s", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "tEiEjSi", (i, j),
            _w(("e", i), ("e", j), ("s", i)),
            _w(("s", i), ("e", i), ("e", j)),
            _w(("e", j), ("s", i), ("e", j)))
        rels += _chain(
            "tEiSjSi", (i, j),
            _w(("e", i), ("s", j), ("s", i)), _w(("s", j), ("s", i), ("e", j)))
    for i in range(1, n):
        rels += _chain("tSiFi", (i,), _w(("s", i), ("f", i)), _w(("f", i), ("s", i)), _w(("f", i)))
    for i, j in _far_pairs(n):
        rels += _chain("tSiFj", (i, j), _w(("s", i), ("f", j)), _w(("f", j), ("s", i)))
    for i, j in _near_pairs(n):
        rels += _chain(
            "tFiFjSj", (i, j),
            _w(("f", i), ("f", j), ("s", i)), _w(("e", j), ("f", i), ("s", j)))
        rels += _chain(
            "tSjFiFj", (i, j),
            _w(("s", j), ("f", i), ("f", j)), _w(("s", i), ("f", j), ("e", i)))
        rels += _chain(
            "tFiSjFi", (i, j),
            _w(("f", i), ("s", j), ("f", i)), _w(("e", j), ("f", i), ("e", j)))
        rels += _chain(
            "tSiFjSi", (i, j),
            _w(("s", i), ("f", j), ("s", i)), _w(("s", j), ("f", i), ("s", j)))
        rels += _chain(
            "tSiSjFi", (i, j),
            _w(("s", i), ("s", j), ("f", i)), _w(("f", j), ("s", i), ("s", j)))
        rels += _chain(
            "tEiSjFi", (i, j),
            _w(("e", i), ("s", j), ("f", i)), _w(("s", j), ("f", i), ("e", j)))
        rels += _chain(
            "tFiSjEi", (i, j),
            _w(("f", i), ("s", j), ("e", i)), _w(("e", j), ("f", i), ("s", j)))
    return rels


def _single_generators(letter, n):
    return [Token(letter, i) for i in range(1, n)]


def catalog(name: str, n: int) -> Presentation:
    """The instantiated presentation for one of the cataloged monoids.

    For the tied Jones and balanced families the tie idempotence and
    commutation relations are included with the defining list: the
    normal form and counting arguments rely on them, and they hold in
    the faithful images.
    """
    if n < 1:
        raise IndexRangeError(f"need n >= 1, got {n}")
    if name == "Sn":
        return Presentation(name, n, tuple(_single_generators("s", n)),
                            tuple(_coxeter_family("s", n)))
    if name == "Jn":
        return Presentation(name, n, tuple(_single_generators("t", n)),
                            tuple(_tangle_family(n)))
    if name == "Brn":
        gens = _single_generators("s", n) + _single_generators("t", n)
        rels = _coxeter_family("s", n) + _tangle_family(n) + _brauer_mixed(n)
        return Presentation(name, n, tuple(gens), tuple(rels), tuple(_brauer_derived(n)))
    if name == "Pn":
        return Presentation(name, n, tuple(_pair_generators("e", n)),
                            tuple(_fitzgerald_family("e", n)))
    if name == "DPn":
        gens = _pair_generators("a", n) + _pair_generators("b", n)
        rels = _fitzgerald_family("a", n) + _fitzgerald_family("b", n)
        pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
        for p in pairs:
            for q in pairs:
                rels += _chain("EqPDoubP", p + q, _w(("a", *p), ("b", *q)), _w(("b", *q), ("a", *p)))
        for i, j in pairs:
            rels += _chain("EqPDoubP", (i, j), _w(("a", i, j), ("b", i, j)), _w(("a", i, j)))
        return Presentation(name, n, tuple(gens), tuple(rels))
    if name == "TSn":
        gens = _single_generators("s", n) + _single_generators("e", n)
        rels = _coxeter_family("s", n) + _tie_family(n) + _tied_symmetric_mixed(n)
        return Presentation(name, n, tuple(gens), tuple(rels))
    if name == "Qn":
        gens = (_single_generators("s", n) + _single_generators("t", n)
                + _single_generators("e", n) + _single_generators("f", n))
        rels = (_tangle_family(n) + _coxeter_family("s", n) + _brauer_mixed(n)
                + _tie_family(n) + _tied_symmetric_mixed(n)
                + _tied_tangle_family(n) + _q_mixed(n))
        return Presentation(name, n, tuple(gens), tuple(rels), tuple(_q_derived(n)))
    if name == "Wn":
        gens = (_single_generators("s", n) + _single_generators("e", n)
                + _single_generators("f", n))
        rels = (_coxeter_family("s", n) + _tie_family(n)
                + _tied_tangle_family(n) + _w_mixed(n))
        return Presentation(name, n, tuple(gens), tuple(rels))
    if name == "tJn":
        gens = _single_generators("e", n) + _single_generators("f", n)
        rels = _tie_family(n) + _tied_tangle_family(n)
        return Presentation(name, n, tuple(gens), tuple(rels))
    raise UnknownFamilyError(f"unknown presentation {name!r}")


# -- assignments and evaluation -----------------------------------------------


@dataclass
class Assignment:
    """Total map from generator tokens to elements of one carrier."""

    mapping: dict
    identity: object

    @staticmethod
    def token_key(tok: Token):
        if tok.name in ("e", "a", "b"):
            j = tok.j if tok.j is not None else tok.i + 1
            return (tok.name, tok.i, j)
        return (tok.name, tok.i)

    def resolve(self, tok: Token):
        key = self.token_key(tok)
        if key not in self.mapping:
            raise DomainError(f"token {tok} not bound by the assignment")
        return self.mapping[key]


def canonical_assignment(name: str, n: int) -> Assignment:
    """The standard diagram / ramified images of each presentation."""
    if name == "Sn":
        return Assignment(
            {("s", i): generator(n, "L", i) for i in range(1, n)}, Diagram.identity(n))
    if name == "Jn":
        return Assignment(
            {("t", i): generator(n, "H", i) for i in range(1, n)}, Diagram.identity(n))
    if name == "Brn":
        mapping = {("s", i): generator(n, "L", i) for i in range(1, n)}
        mapping.update({("t", i): generator(n, "H", i) for i in range(1, n)})
        return Assignment(mapping, Diagram.identity(n))
    if name == "Pn":
        mapping = {
            ("e", i, j): atom(n, (i, j))
            for i in range(1, n)
            for j in range(i + 1, n + 1)
        }
        return Assignment(mapping, SetPartition.unity(n))
    if name == "DPn":
        one = SetPartition.unity(n)
        mapping = {}
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                mapping[("a", i, j)] = DoublePartition(atom(n, (i, j)), atom(n, (i, j)))
                mapping[("b", i, j)] = DoublePartition(one, atom(n, (i, j)))
        return Assignment(mapping, DoublePartition.unity(n))
    if name in ("TSn", "Qn", "Wn", "tJn"):
        mapping = {}
        for i in range(1, n):
            mapping[("s", i)] = ltilde(n, i)
            mapping[("t", i)] = htilde(n, i)
            mapping[("f", i)] = ftilde(n, i)
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                mapping[("e", i, j)] = etilde(n, i, j)
        return Assignment(mapping, rid(n))
    raise UnknownFamilyError(f"no canonical assignment for {name!r}")


def eval_word(w: Word, a: Assignment):
    """Left-to-right product of the token images; empty word gives the
    assignment's identity."""
    out = a.identity
    for tok in w:
        out = out * a.resolve(tok)
    return out


def _element_text(x) -> str:
    to_text = getattr(x, "to_text", None)
    return to_text() if to_text is not None else repr(x)


@dataclass(frozen=True)
class RelationCheck:
    label: str
    indices: tuple[int, ...]
    ok: bool
    lhs_image: str
    rhs_image: str
    derived: bool = False


@dataclass
class VerificationReport:
    presentation: str
    n: int
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "label": c.label,
                    "indices": list(c.indices),
                    "status": "pass" if c.ok else "fail",
                    "lhs_image": c.lhs_image,
                    "rhs_image": c.rhs_image,
                    "derived": c.derived,
                }
                for c in self.checks
            ],
            indent=None,
            separators=(",", ":"),
        )


def verify_presentation(
    p: Presentation, a: Assignment, include_derived: bool = True
) -> VerificationReport:
    """Evaluate every relation instance (and the registered derived
    ones) under the assignment; failures become report content, never
    exceptions."""
    report = VerificationReport(p.name, p.n)
    batches = [(p.relations, False)]
    if include_derived:
        batches.append((p.derived, True))
    for rels, derived in batches:
        for rel in rels:
            lhs = eval_word(rel.lhs, a)
            rhs = eval_word(rel.rhs, a)
            report.checks.append(
                RelationCheck(
                    rel.label,
                    rel.indices,
                    lhs == rhs,
                    _element_text(lhs),
                    _element_text(rhs),
                    derived,
                )
            )
    return report


# -- word utilities --------------------------------------------------------------


def overline(w: Word) -> Word:
    """Erase ties and untie the tied tangles: e-tokens are dropped and
    f-tokens become t-tokens."""
    out = []
    for tok in w:
        if tok.name == "e":
            continue
        if tok.name == "f":
            out.append(Token("t", tok.i))
        else:
            out.append(tok)
    return Word(tuple(out))


def extended_tie_word(i: int, j: int, n: int) -> Word:
    """The recursive word for the non-consecutive tie: conjugate the
    consecutive tie down from j."""
    if not (1 <= i < j <= n):
        raise IndexRangeError(f"need 1 <= i < j <= n, got ({i},{j}) with n={n}")
    if j == i + 1:
        return _w(("e", i))
    return _w(("s", j - 1)) + extended_tie_word(i, j - 1, n) + _w(("s", j - 1))


# -- tie saturation ----------------------------------------------------------------


def _tie_through(tie, tok):
    """Move a tie (i,j) across a core letter; None when blocked."""
    i, j = tie
    if tok.name == "s":
        k = tok.i

        def swap(x):
            if x == k:
                return k + 1
            if x == k + 1:
                return k
            return x

        a, b = swap(i), swap(j)
        return (a, b) if a < b else (b, a)
    if tok.name == "f":
        return tie
    if tok.name == "t":
        k = tok.i
        if k in (i - 1, i, j - 1, j):
            return None
        return tie
    raise DomainError(f"unexpected core letter {tok}")


def tie_saturate(w: Word, n: int) -> Word:
    """Saturate a word with every tie it implies.

    Wraps each tangle with its consecutive tie, propagates tie copies
    left and right as far as the commutation rules allow (transforming
    them through the s-letters), upgrades a tangle flanked on both
    sides by a tie on one of its strands into a tied tangle, and
    repeats to a fixpoint.  The image of the word is unchanged; the
    tie-erased projection is unchanged as well.
    """
    core: list[Token] = []
    ties: list[set] = [set()]
    for tok in w:
        if tok.name == "e":
            j = tok.j if tok.j is not None else tok.i + 1
            if not (1 <= tok.i < j <= n):
                raise IndexRangeError(f"tie {tok} outside [1,{n}]")
            ties[-1].add((tok.i, j))
        elif tok.name in ("s", "t", "f"):
            if not (1 <= tok.i < n):
                raise IndexRangeError(f"token {tok} outside [1,{n - 1}]")
            core.append(tok)
            ties.append(set())
        else:
            raise DomainError(f"token {tok} is not in the tied alphabet")

    for p, tok in enumerate(core):  # wrap tangles and tied tangles
        if tok.name in ("t", "f"):
            ties[p].add((tok.i, tok.i + 1))
            ties[p + 1].add((tok.i, tok.i + 1))

    def saturate():
        changed = True
        while changed:
            changed = False
            for p in range(len(core)):
                for tie in list(ties[p]):  # move right across core[p]
                    moved = _tie_through(tie, core[p])
                    if moved is not None and moved not in ties[p + 1]:
                        ties[p + 1].add(moved)
                        changed = True
                for tie in list(ties[p + 1]):  # move left across core[p]
                    moved = _tie_through(tie, core[p])
                    if moved is not None and moved not in ties[p]:
                        ties[p].add(moved)
                        changed = True

    saturate()
    upgraded = True
    while upgraded:
        upgraded = False
        for p, tok in enumerate(core):
            if tok.name != "t":
                continue
            k = tok.i
            flanking = ties[p] & ties[p + 1]
            if any(tie[1] == k or tie[0] == k + 1 for tie in flanking):
                core[p] = Token("f", k)
                upgraded = True
        if upgraded:
            saturate()

    out = []
    for p in range(len(core) + 1):
        for i, j in sorted(ties[p]):
            out.append(Token("e", i) if j == i + 1 else Token("e", i, j))
        if p < len(core):
            out.append(core[p])
    return Word(tuple(out))


# -- the word problem ---------------------------------------------------------------


_FAMILY_ALPHABETS = {
    "Qn": {"s", "t", "e", "f"},
    "Wn": {"s", "e", "f"},
    "tJn": {"e", "f"},
    "TSn": {"s", "e"},
}


def word_equal(family: str, u: Word, v: Word, n: int) -> bool:
    """Decide equality through the faithful ramified image.

    Extended ties e{i,j} are accepted wherever the family contains the
    permutation generators that define them (and for consecutive pairs
    everywhere).
    """
    if family not in _FAMILY_ALPHABETS:
        raise UnknownFamilyError(f"word problem not available for {family!r}")
    allowed = _FAMILY_ALPHABETS[family]
    a = canonical_assignment("Qn", n)
    for w in (u, v):
        for tok in w:
            if tok.name not in allowed:
                raise DomainError(f"token {tok} not in the {family} alphabet")
            if tok.name == "e" and tok.j is not None and tok.j > tok.i + 1 and "s" not in allowed:
                raise DomainError(f"extended tie {tok} needs the permutation generators")
    return eval_word(u, a) == eval_word(v, a)
