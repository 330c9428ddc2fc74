import pytest

from cwm.catalog import (
    Catalog,
    CatalogIntegrityError,
    CatalogRecord,
    OPEN_CASES,
    seed_known_results,
)
from cwm.groupring import witness_format


class TestUpsert:
    def test_exists_requires_witness(self, tmp_path):
        cat = Catalog(tmp_path)
        with pytest.raises(ValueError):
            cat.upsert(CatalogRecord(7, 4, "exists", None, "no witness offered"))

    def test_exists_with_element(self, tmp_path, cw7):
        cat = Catalog(tmp_path)
        rec = cat.upsert(CatalogRecord(7, 4, "exists", None, "test"), element=cw7)
        assert rec.witness is not None
        assert (tmp_path / rec.witness).exists()
        assert cat.status(7, 4) == "exists"

    def test_bad_witness_blocked(self, tmp_path, cw7):
        cat = Catalog(tmp_path)
        with pytest.raises(ValueError):
            cat.upsert(CatalogRecord(7, 5, "exists", None, "wrong k"), element=cw7)

    def test_downgrade_ignored(self, tmp_path, cw7):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "test"), element=cw7)
        assert cat.upsert(CatalogRecord(7, 4, "open", None, "oops")) is None
        assert cat.status(7, 4) == "exists"

    def test_conflict_raises_with_both_provenances(self, tmp_path, cw7):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "witnessed"), element=cw7)
        with pytest.raises(CatalogIntegrityError, match="witnessed.*claimed impossible"):
            cat.upsert(CatalogRecord(7, 4, "nonexistent", None, "claimed impossible"))

    def test_open_then_settled(self, tmp_path):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(110, 81, "open", None, "pending"))
        cat.upsert(CatalogRecord(110, 81, "nonexistent", None, "margin analysis"))
        assert cat.status(110, 81) == "nonexistent"


class TestPersistence:
    def test_round_trip(self, tmp_path, cw7):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "test"), element=cw7)
        cat.upsert(CatalogRecord(110, 81, "nonexistent", None, "analysis"))
        cat.save()
        again = Catalog(tmp_path)
        assert again.status(7, 4) == "exists"
        assert again.status(110, 81) == "nonexistent"
        assert again.witness_element(7, 4) == cw7

    def test_corrupt_witness_quarantined(self, tmp_path, cw7):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "test"), element=cw7)
        cat.save()
        wfile = tmp_path / "witnesses" / "cw7_4.cw"
        wfile.write_text("CW 7 4 1\n1 1 1 1 0 0 0\n")  # fails verification
        again = Catalog(tmp_path)
        assert again.warnings
        assert not wfile.exists()
        assert (tmp_path / "witnesses" / "quarantine" / "cw7_4.cw").exists()
        assert "quarantined" in again.record(7, 4).provenance

    def test_unknown_cell_reads_open(self, tmp_path):
        assert Catalog(tmp_path).status(57, 49) == "open"


class TestImport:
    def test_import_directory(self, tmp_path, cw7, cw13):
        src = tmp_path / "incoming"
        src.mkdir()
        (src / "a.cw").write_text(witness_format(cw7, 4, 1))
        (src / "b.cw").write_text(witness_format(cw13, 9, 1))
        (src / "bad.cw").write_text("CW 7 4 1\n1 1 1 1 0 0 0\n")
        cat = Catalog(tmp_path / "cat")
        added = cat.import_dir(src)
        assert {(r.n, r.k) for r in added} == {(7, 4), (13, 9)}
        assert cat.warnings  # the bad file is reported, not silently dropped


class TestClosure:
    def test_product_and_multiples(self, tmp_path, cw7, cw13):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "seed"), element=cw7)
        cat.upsert(CatalogRecord(13, 9, "exists", None, "seed"), element=cw13)
        added = cat.close_under_constructions()
        assert cat.status(91, 36) == "exists"
        assert cat.status(14, 4) == "exists"
        assert cat.status(26, 9) == "exists"
        assert cat.status(196, 4) == "exists"
        assert all(r.status == "exists" for r in added)

    def test_idempotent(self, tmp_path, cw7, cw13):
        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "seed"), element=cw7)
        cat.upsert(CatalogRecord(13, 9, "exists", None, "seed"), element=cw13)
        first = cat.close_under_constructions()
        second = cat.close_under_constructions()
        assert first and not second

    def test_every_added_witness_verifies(self, tmp_path, cw7, cw13):
        from cwm.groupring import verify

        cat = Catalog(tmp_path)
        cat.upsert(CatalogRecord(7, 4, "exists", None, "seed"), element=cw7)
        cat.upsert(CatalogRecord(13, 9, "exists", None, "seed"), element=cw13)
        for rec in cat.close_under_constructions():
            elem = cat.witness_element(rec.n, rec.k)
            assert verify(elem, rec.k, 1)


@pytest.fixture(scope="module")
def seeded(tmp_path_factory):
    return seed_known_results(tmp_path_factory.mktemp("seedcat"))


class TestSeed:
    def test_nonexistent_cells(self, seeded):
        for n, k in ((110, 81), (154, 81), (130, 81), (143, 81), (143, 36),
                     (132, 81), (182, 64), (144, 49), (104, 81)):
            assert seeded.status(n, k) == "nonexistent"

    def test_open_cells(self, seeded):
        for n, k in OPEN_CASES:
            assert seeded.status(n, k) == "open"
        assert seeded.status(105, 36) == "open"

    def test_exists_cells(self, seeded):
        assert seeded.status(7, 4) == "exists"
        assert seeded.status(91, 36) == "exists"  # product closure
        assert seeded.status(63, 16) == "exists"
        assert seeded.status(57, 49) == "exists"  # difference-set family
        assert seeded.status(126, 16) == "exists"  # multiple of 63

    def test_render_marks_cells(self, seeded):
        text = seeded.render_table(200, 100)
        rows = {
            int(ln[2:6]): ln for ln in text.splitlines() if ln.startswith("k=")
        }
        assert rows[81][7 + 110 - 1] == "-"  # (110, 81) nonexistent
        assert rows[36][7 + 105 - 1] == "?"  # (105, 36) open
        assert rows[4][7 + 7 - 1] == "E"  # (7, 4) exists

    def test_empty_catalog_renders_all_open(self, tmp_path):
        text = Catalog(tmp_path).render_table(20, 9)
        for line in text.splitlines():
            if line.startswith("k="):
                assert set(line.split()[-1]) == {"?"}

    def test_open_count_matches_arithmetic(self, seeded):
        opens = [rec for rec in seeded.records.values() if rec.status == "open"]
        assert len(opens) == 22
