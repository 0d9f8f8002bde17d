import itertools
import json
import random

import pytest

from tiedmonoids.diagrams import Diagram
from tiedmonoids.errors import DomainError, UnknownFamilyError
from tiedmonoids.presentations import (
    Assignment,
    Relation,
    canonical_assignment,
    catalog,
    eval_word,
    extended_tie_word,
    overline,
    tie_saturate,
    verify_presentation,
    word_equal,
)
from tiedmonoids.ramified import (
    build_family,
    etilde,
    evaluate_word,
    ftilde,
    htilde,
    rid,
)
from tiedmonoids.setpartitions import bell
from tiedmonoids.words import Token, Word, parse_word

ALL_NAMES = ["Sn", "Jn", "Brn", "Pn", "DPn", "TSn", "Qn", "Wn", "tJn"]


def random_word(rng, n, letters="stef", max_len=10):
    toks = tuple(
        Token(rng.choice(letters), rng.randrange(1, n))
        for _ in range(rng.randrange(0, max_len))
    )
    return Word(toks)


class TestCatalog:
    def test_brauer_alphabet(self):
        p = catalog("Brn", 3)
        assert [str(t) for t in p.generators] == ["s1", "s2", "t1", "t2"]
        assert set(p.labels()) == {"S1", "S2", "S3", "T1", "T2", "T3", "Br1", "Br2", "Br3"}
        assert {r.label for r in p.derived} == {"SitjSi", "tiSjti", "SiSjti"}

    def test_pair_alphabet(self):
        p = catalog("Pn", 3)
        assert [str(t) for t in p.generators] == ["e{1,2}", "e{1,3}", "e{2,3}"]
        assert set(p.labels()) == {"P1", "P2", "P3"}

    def test_labels_unique_in_defining_list(self):
        for name in ALL_NAMES:
            p = catalog(name, 4)
            assert len(p.labels()) == len(set(p.labels()))

    def test_no_near_pairs_at_two_strands(self):
        p = catalog("Qn", 2)
        near_labels = {"S3", "T3", "Br3", "TSn1", "TSn3", "FiFjFi", "FjEi", "SiFjSi"}
        assert not [r for r in p.relations if r.label in near_labels]

    def test_unknown_name(self):
        with pytest.raises(UnknownFamilyError):
            catalog("Xn", 3)


class TestEvalWord:
    def test_empty_word(self):
        a = canonical_assignment("Qn", 3)
        assert eval_word(parse_word(""), a) == rid(3)

    def test_mixed_relation_image(self):
        a = canonical_assignment("Brn", 3)
        lhs = eval_word(parse_word("s1 t2 s1"), a)
        rhs = eval_word(parse_word("s2 t1 s2"), a)
        assert lhs == rhs

    def test_tie_image(self):
        a = canonical_assignment("Qn", 3)
        assert eval_word(parse_word("e1"), a) == etilde(3, 1)

    def test_unbound_token(self):
        a = canonical_assignment("Sn", 3)
        with pytest.raises(DomainError):
            eval_word(parse_word("t1"), a)


class TestVerification:
    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_all_relations_hold(self, name):
        for n in range(1, 6):
            report = verify_presentation(
                catalog(name, n), canonical_assignment(name, n)
            )
            assert report.all_ok, report.failures()[:3]

    def test_mutated_relation_fails(self):
        bad = Relation("S1", (1,), parse_word("s1 s1"), parse_word("s1"))
        p = catalog("Sn", 3)
        import dataclasses

        mutated = dataclasses.replace(p, relations=p.relations + (bad,))
        report = verify_presentation(mutated, canonical_assignment("Sn", 3))
        assert not report.all_ok
        assert [c.label for c in report.failures()] == ["S1"]

    def test_report_json_schema(self):
        report = verify_presentation(catalog("Jn", 3), canonical_assignment("Jn", 3))
        data = json.loads(report.to_json())
        assert all(
            set(row) == {"label", "indices", "status", "lhs_image", "rhs_image", "derived"}
            for row in data
        )
        assert all(row["status"] == "pass" for row in data)

    def test_size_realization(self):
        # the generator images close to the sizes the isomorphisms predict
        for n in (2, 3):
            a = canonical_assignment("Qn", n)
            from tiedmonoids.diagrams import closure

            gens = [(str(t), a.resolve(t)) for t in catalog("Qn", n).generators]
            table = closure(a.identity, gens)
            assert len(table) == len(build_family("RBr", n))
        for n in (2, 3, 4):
            a = canonical_assignment("TSn", n)
            from tiedmonoids.diagrams import closure
            from math import factorial

            gens = [(str(t), a.resolve(t)) for t in catalog("TSn", n).generators]
            table = closure(a.identity, gens)
            assert len(table) == factorial(n) * bell(n)


class TestOverline:
    def test_direct_substitution(self):
        assert overline(parse_word("e1 f2 s1")) == parse_word("t2 s1")

    def test_saturation_invariant(self):
        rng = random.Random(4)
        for n in (3, 4, 5):
            for _ in range(80):
                w = random_word(rng, n)
                assert overline(tie_saturate(w, n)) == overline(w)

    def test_projection_image(self):
        # erasing ties projects onto the untied pair of the same diagram
        rng = random.Random(5)
        for n in (3, 4, 5):
            for _ in range(120):
                w = random_word(rng, n)
                img = evaluate_word(n, w)
                proj = evaluate_word(n, overline(w))
                assert proj.fine == img.fine and proj.coarse == img.fine


class TestExtendedTies:
    def test_base_case(self):
        assert extended_tie_word(2, 3, 5) == parse_word("e2")

    def test_recursion_and_image(self):
        w = extended_tie_word(1, 3, 3)
        assert w == parse_word("s2 e1 s2")
        assert evaluate_word(3, w) == etilde(3, 1, 3)

    def test_alternative_recursion_agrees(self):
        for n in (3, 4, 5):
            for i in range(1, n):
                for j in range(i + 2, n + 1):
                    alt = (
                        Word((Token("s", i),))
                        + extended_tie_word(i + 1, j, n)
                        + Word((Token("s", i),))
                    )
                    assert evaluate_word(n, alt) == etilde(n, i, j)

    def test_images_satisfy_partition_relations(self):
        for n in (3, 4, 5):
            pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
            img = {p: etilde(n, *p) for p in pairs}
            for p in pairs:
                assert img[p] * img[p] == img[p]
            for p, q in itertools.product(pairs, repeat=2):
                assert img[p] * img[q] == img[q] * img[p]
            for i, j, k in itertools.combinations(range(1, n + 1), 3):
                a = img[(i, j)] * img[(j, k)]
                assert a == img[(i, j)] * img[(i, k)] == img[(j, k)] * img[(i, k)]

    def test_commutation_with_tangles(self):
        # ties pass tied tangles always, and plain tangles away from
        # their endpoints
        for n in (4, 5):
            for i in range(1, n):
                for j in range(i + 1, n + 1):
                    e = etilde(n, i, j)
                    for k in range(1, n):
                        f = ftilde(n, k)
                        assert e * f == f * e
                        t = htilde(n, k)
                        if k not in (i - 1, i, j - 1, j):
                            assert e * t == t * e

    def test_bad_indices(self):
        with pytest.raises(DomainError):
            extended_tie_word(3, 3, 5)
        with pytest.raises(DomainError):
            extended_tie_word(1, 6, 5)


class TestTieSaturate:
    def test_word_without_tangles_keeps_image(self):
        w = parse_word("e1 s2 s1 e2")
        we = tie_saturate(w, 4)
        assert evaluate_word(4, we) == evaluate_word(4, w)
        assert overline(we) == overline(w)

    def test_flanked_tangle_upgrades(self):
        # the saturation of the two sides of a mixed relation shows the
        # conjugated flanking ties explicitly
        assert str(tie_saturate(parse_word("s1 t2 s1"), 3)) == "e{1,3} s1 e2 t2 e2 s1 e{1,3}"
        assert str(tie_saturate(parse_word("s2 t1 s2"), 3)) == "e{1,3} s2 e1 t1 e1 s2 e{1,3}"

    def test_worked_ten_strand_word(self):
        u = parse_word("s3 t5 t8 s2 f6 e1 t7 s2 t6")
        ue = tie_saturate(u, 10)
        assert evaluate_word(10, ue) == evaluate_word(10, u)
        assert overline(ue) == overline(u)

    def test_random_invariance(self):
        rng = random.Random(6)
        for n in (3, 4, 5):
            for _ in range(150):
                w = random_word(rng, n)
                we = tie_saturate(w, n)
                assert evaluate_word(n, we) == evaluate_word(n, w)

    def test_idempotent_on_image(self):
        rng = random.Random(8)
        for _ in range(60):
            w = random_word(rng, 4)
            once = tie_saturate(w, 4)
            twice = tie_saturate(once, 4)
            assert evaluate_word(4, twice) == evaluate_word(4, w)

    def test_foreign_token(self):
        with pytest.raises(DomainError):
            tie_saturate(parse_word("a{1,2}"), 3)


FIVE_TIED_RELATIONS = [
    # tied variants of the crossing-tangle relation, one per coarsening
    ("e{1,3} s1 e2 t2 e2 s1 e{1,3}", "e{1,3} s2 e1 t1 e1 s2 e{1,3}", "1,3|2,2'|1',3'"),
    ("e1 e2 s1 e1 e2 t2 e2 s1 e{1,3}", "e1 e2 s2 e1 e2 t1 e1 s2 e{1,3}", "1,2,3,2'|1',3'"),
    ("e{1,3} s1 e2 t2 e1 e2 s1 e1 e2", "e{1,3} s2 e1 t1 e1 e2 s2 e1 e2", "1,3|2,2',1',3'"),
    ("e{1,3} s1 e2 f2 e2 s1 e{1,3}", "e{1,3} s2 e1 f1 e1 s2 e{1,3}", "1,3,1',3'|2,2'"),
    ("e1 e2 s1 e1 e2 f2 e1 e2 s1 e1 e2", "e1 e2 s2 e1 e2 f1 e1 e2 s2 e1 e2", "1,2,3,1',2',3'"),
]


class TestWordEqual:
    def test_five_tied_relations_hold_and_realize_all_coarsenings(self):
        fine = Diagram.from_text("1,3|2,2'|1',3'")
        seen = set()
        for u_text, v_text, coarse_text in FIVE_TIED_RELATIONS:
            u, v = parse_word(u_text), parse_word(v_text)
            assert word_equal("Qn", u, v, 3)
            img = evaluate_word(3, u)
            assert img.fine == fine
            assert img.coarse == Diagram.from_text(coarse_text, 3)
            seen.add(img.key())
        assert len(seen) == bell(3)

    def test_padding_with_an_involution(self):
        u = parse_word("t1 e2")
        v = parse_word("t1 e2 s1 s1")
        assert word_equal("Qn", u, v, 3)

    def test_distinct_images(self):
        assert not word_equal("Qn", parse_word("e1 f2"), parse_word("f2"), 3)

    def test_family_alphabets(self):
        assert word_equal("tJn", parse_word("e1 f1"), parse_word("f1"), 3)
        with pytest.raises(DomainError):
            word_equal("tJn", parse_word("s1"), parse_word("s1"), 3)
        with pytest.raises(DomainError):
            word_equal("tJn", parse_word("e{1,3}"), parse_word("e{1,3}"), 3)
        with pytest.raises(DomainError):
            word_equal("Wn", parse_word("t1"), parse_word("t1"), 3)
        assert word_equal("Wn", parse_word("e{1,3}"), parse_word("s2 e1 s2"), 3)
        with pytest.raises(UnknownFamilyError):
            word_equal("Pn", parse_word("e1"), parse_word("e1"), 3)


class TestAssignment:
    def test_token_key_normalizes_consecutive_ties(self):
        assert Assignment.token_key(Token("e", 2)) == ("e", 2, 3)
        assert Assignment.token_key(Token("e", 2, 5)) == ("e", 2, 5)
        assert Assignment.token_key(Token("s", 2)) == ("s", 2)
