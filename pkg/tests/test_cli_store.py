import io
import json
import contextlib

import pytest

from tiedmonoids.cli import cli_dispatch
from tiedmonoids.diagrams import Diagram, brauer_generators, closure, generator
from tiedmonoids.ramified import build_family, etilde, ftilde, rid
from tiedmonoids.render import render
from tiedmonoids.store import (
    CacheKey,
    generators_fingerprint,
    store_get,
    store_put,
    table_from_payload,
    table_to_payload,
)


def run_cli(argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_dispatch([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("TIEDMONOIDS_CACHE", str(tmp_path))
    return tmp_path


class TestStore:
    def test_roundtrip_preserves_discovery_order(self, cache_dir):
        table = closure(Diagram.identity(3), list(brauer_generators(3)))
        key = CacheKey("Brauer", 3, generators_fingerprint(list(brauer_generators(3))))
        store_put(key, table, 3)
        loaded = store_get(key)
        assert loaded is not None
        assert [e.key() for e in loaded] == [e.key() for e in table]
        assert loaded.edges == table.edges
        assert loaded.labels == table.labels

    def test_ramified_payload_roundtrip(self):
        table = build_family("bBr", 2)
        payload = table_to_payload(table, 2)
        loaded = table_from_payload(payload)
        assert [e.key() for e in loaded] == [e.key() for e in table]

    def test_version_bump_misses(self, cache_dir):
        table = closure(Diagram.identity(2), list(brauer_generators(2)))
        fp = generators_fingerprint(list(brauer_generators(2)))
        store_put(CacheKey("Brauer", 2, fp), table, 2)
        assert store_get(CacheKey("Brauer", 2, fp, version=2)) is None

    def test_fingerprint_separates_generator_sets(self, cache_dir):
        gens_a = list(brauer_generators(2))
        gens_b = gens_a + [("E12", generator(2, "E", 1, 2))]
        assert generators_fingerprint(gens_a) != generators_fingerprint(gens_b)

    def test_corrupt_entry_warns_and_misses(self, cache_dir):
        table = closure(Diagram.identity(2), list(brauer_generators(2)))
        fp = generators_fingerprint(list(brauer_generators(2)))
        key = CacheKey("Brauer", 2, fp)
        path = store_put(key, table, 2)
        blob = json.loads(path.read_text())
        blob["payload"]["elements"][0] = "1,2|1',2'"
        path.write_text(json.dumps(blob))
        with pytest.warns(UserWarning):
            assert store_get(key) is None

    def test_absent_is_none(self, cache_dir):
        assert store_get(CacheKey("Brauer", 9, "X")) is None


class TestCli:
    def test_count(self, cache_dir):
        code, out, _ = run_cli(["count", "bBr", "--n", 4])
        assert code == 0 and out.strip() == "747"
        code, out, _ = run_cli(["count", "tJ", "--n", 5])
        assert code == 0 and out.strip() == "126"

    def test_count_json(self, cache_dir):
        code, out, _ = run_cli(["--json", "count", "Jones", "--n", 6])
        assert code == 0
        assert json.loads(out) == {"family": "Jones", "n": 6, "size": 132}

    def test_word_eq(self, cache_dir):
        code, out, _ = run_cli(["word-eq", "Qn", "--n", 3, "s1 t2 s1", "s2 t1 s2"])
        assert code == 0 and out.strip() == "equal"
        code, out, _ = run_cli(["word-eq", "Qn", "--n", 3, "e1 f2", "f2"])
        assert code == 0 and out.strip() == "different"

    def test_closure_cached_run_is_byte_identical(self, cache_dir):
        first = run_cli(["closure", "Brauer", "--n", 5])
        second = run_cli(["closure", "Brauer", "--n", 5])
        assert first[0] == second[0] == 0
        assert first[1] == second[1]
        assert "size=945" in first[1].splitlines()[0]
        # json mode exposes the cache hit
        data = json.loads(run_cli(["--json", "closure", "Brauer", "--n", 5])[1])
        assert data["cached"] is True and data["size"] == 945

    def test_closure_custom_generators(self, cache_dir):
        code, out, _ = run_cli(["closure", "--gens", "H1 H2 H3", "--n", 4])
        assert code == 0 and "size=14" in out.splitlines()[0]
        code, out, _ = run_cli(["closure", "--gens", "e1 f1 e2 f2", "--n", 3])
        assert code == 0 and "size=10" in out.splitlines()[0]

    def test_closure_budget(self, cache_dir):
        code, _, err = run_cli(["closure", "Brauer", "--n", 4, "--limit", 10, "--no-cache"])
        assert code == 1 and "budget" in err

    def test_verify(self, cache_dir):
        code, out, _ = run_cli(["verify", "Qn", "--n", 4])
        assert code == 0 and "ALL PASS" in out
        data = json.loads(run_cli(["--json", "verify", "Brn", "--n", 3])[1])
        assert all(row["status"] == "pass" for row in data)

    def test_nf_partition(self, cache_dir):
        code, out, _ = run_cli(["nf", "Pn", "--elem", "1,3,4|2"])
        assert code == 0 and out.strip() == "e{1,3} e{3,4}"

    def test_nf_brauer(self, cache_dir):
        code, out, _ = run_cli(["nf", "Brauer", "--elem", "1,5|2,3|4,3'|6,2'|1',5'|4',6'"])
        assert code == 0
        assert out.splitlines() == ["s=[1, 3, 4, 5, 2, 6]", "k=2", "s'=[1, 5, 4, 6, 3, 2]"]

    def test_nf_ramified(self, cache_dir):
        a = ftilde(2, 1)
        code, out, _ = run_cli(["nf", "RBr", "--elem", a.to_text(), "--n", 2])
        assert code == 0 and out.strip() == "f1"
        code, out, _ = run_cli(["nf", "bBr", "--elem", a.to_text(), "--n", 2])
        assert code == 0 and "E: e1" in out and "F: f1" in out

    def test_nf_tied_jones(self, cache_dir):
        code, out, _ = run_cli(["nf", "tJ", "--n", 6, "--elem", "f2 f1 f5 f4 e3"])
        assert code == 0 and out.strip() == "f{1,2} f{4,5} | e3"

    def test_product(self, cache_dir):
        code, out, _ = run_cli(["product", "--n", 3, "1,2|3,3'|1',2'", "1,1'|2,3|2',3'"])
        assert code == 0
        h1, h2 = generator(3, "H", 1), generator(3, "H", 2)
        assert out.strip() == (h1 * h2).to_text()

    def test_product_ramified(self, cache_dir):
        a, b = etilde(2, 1), ftilde(2, 1)
        code, out, _ = run_cli(["product", "--n", 2, a.to_text(), b.to_text()])
        assert code == 0 and out.strip() == (a * b).to_text()

    def test_table_bnj_csv(self, cache_dir):
        code, out, _ = run_cli(["table", "Bnj", "--max", 3])
        assert code == 0
        assert out.splitlines() == ["n,j,B", "1,1,1", "2,1,2", "2,2,1", "3,1,5", "3,2,4", "3,3,1"]

    def test_table_sizes(self, cache_dir):
        code, out, _ = run_cli(["table", "bBr-sizes", "--max", 4])
        assert code == 0 and out.splitlines() == ["1 1", "2 5", "3 48", "4 747"]

    def test_table_u(self, cache_dir):
        code, out, _ = run_cli(["table", "U", "--max", 4])
        assert code == 0 and "4 2 3" in out.splitlines()

    def test_render_text(self, cache_dir):
        code, out, _ = run_cli(["render", "1,2|1',2'", "--n", 2])
        assert code == 0 and out.strip() == "1,2|1',2'"

    def test_exit_codes(self, cache_dir):
        assert run_cli(["count", "bBr", "--n", 0])[0] == 1  # domain error
        assert run_cli(["nf", "Pn", "--elem", "1,|2"])[0] == 1  # malformed element
        assert run_cli(["bogus"])[0] == 2  # usage error
        assert run_cli(["count", "nonsense", "--n", 3])[0] == 2  # unknown family


class TestRender:
    def test_identity_has_n_straight_lines(self):
        svg = render(Diagram.identity(4), "svg")
        assert svg.count('<line class="strand"') == 4
        assert svg.count("circle") == 8
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg" version="1.1"')

    def test_tangle_topology(self):
        # one top arc, one bottom arc, two through lines
        svg = render(generator(4, "H", 2), "svg")
        assert svg.count('<path class="strand"') == 2
        assert svg.count('<line class="strand"') == 2

    def test_tie_pair_is_dashed(self):
        svg = render(etilde(3, 1, 3), "svg")
        assert svg.count('<line class="strand"') == 3  # identity connectivity
        assert svg.count('<line class="tie"') >= 1

    def test_partition_render(self):
        from tiedmonoids.setpartitions import SetPartition

        svg = render(SetPartition.from_text("1,4|2,5,7|3|6"), "svg")
        assert svg.count("circle") == 7
        assert svg.count('<path class="strand"') == 4  # consecutive same-block arcs

    def test_deterministic(self):
        a = render(build_family("tJimage", 3).elements[5], "svg")
        b = render(build_family("tJimage", 3).elements[5], "svg")
        assert a == b

    def test_unknown_format(self):
        from tiedmonoids.errors import DomainError

        with pytest.raises(DomainError):
            render(rid(2), "png")
