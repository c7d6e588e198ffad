"""Built-in code tables: load-time revalidation, lookups, and code files."""

import json

import pytest

import womkit.catalog as catalog_module
from womkit.catalog import (
    catalog_entry,
    catalog_ids,
    load_catalog,
    read_code_file,
    write_code_file,
)
from womkit.compose import merge_generations
from womkit.core import TableCode, verify_wom, wom_rate
from womkit.errors import CatalogCorrupt, ParseError, SchemaError
from womkit.search import greedy_laminar

# One row per entry: id, parameter string, rate (4 decimals), then the
# synchronous / laminar / fixed-rate / contains-all-zero flags.  Validity
# and decodability hold for every entry.
EXPECTED = [
    ("fig1_laminar", "[4,4:4,2,2,1]", 1.0, True, True, False, False),
    ("fig1_prepended", "[4,5:1,4,2,2,1]", 1.0, True, True, False, True),
    ("table1_nonsync", "[3,2:4,4]", 1.3333, False, False, True, True),
    ("ex5_inner", "[4,3:4,3,2]", 1.1462, True, True, False, False),
    ("c2_writes2", "[2,2:2,1]", 0.5, True, True, False, False),
    ("greedy_33", "[3,3:3,1,1]", 0.5283, True, True, False, False),
    ("greedy_44", "[4,4:4,3,1,1]", 0.8962, True, True, False, False),
    ("greedy_55", "[5,5:5,3,2,1,1]", 0.9814, True, True, False, False),
    ("greedy_66", "[6,6:6,5,3,1,1,1]", 1.0820, True, True, False, False),
    ("w1_5356", "[5,3:5,3,6]", 1.2984, True, True, False, False),
    ("w1bis_5354", "[5,3:5,3,4]", 1.1814, True, True, False, False),
    ("fixedrate_32", "[3,2:2,2]", 0.6667, True, True, True, False),
    ("fixedrate_53", "[5,3:4,4,4]", 1.2, True, True, True, False),
    ("q4_laminar_26", "[2,6:2,2,2,1,1,1]_4", 1.5, True, True, False, False),
    ("q4_sync_24", "[2,4:2,2,3,3]_4", 2.5850, True, False, False, False),
    ("q4_split_25", "[2,5:2,2,3,2,1]_4", 2.2925, True, False, False, False),
    ("q3_merged_23", "[2,3:2,2,2]_3", 1.5, True, True, True, False),
    ("q4_laminar_39", "[3,9:3,3,3,2,1,1,1,1,1]_4", 1.9183, True, True, False, False),
]


class TestLoadCatalog:
    def test_ids_are_stable(self):
        assert catalog_ids() == [row[0] for row in EXPECTED]

    def test_every_entry_revalidates(self):
        entries = load_catalog()
        assert len(entries) == len(EXPECTED)
        for entry in entries:
            assert entry.params == entry.table.params
            assert entry.provenance

    @pytest.mark.parametrize(
        "entry_id,params,rate,sync,laminar,fixed,zero",
        EXPECTED,
        ids=[row[0] for row in EXPECTED],
    )
    def test_entry_facts(self, entry_id, params, rate, sync, laminar, fixed, zero):
        entry = catalog_entry(entry_id)
        assert str(entry.params) == params
        assert wom_rate(entry.params).total == pytest.approx(rate, abs=5e-5)
        props = verify_wom(entry.table).properties
        assert props.is_valid
        assert props.is_decodable
        assert props.is_synchronous == sync
        assert props.is_laminar == laminar
        assert props.is_fixed_rate == fixed
        assert props.contains_all_zero == zero

    def test_lookup_unknown_id(self):
        with pytest.raises(KeyError, match="no_such_code"):
            catalog_entry("no_such_code")

    def test_tampered_table_is_rejected(self, monkeypatch):
        # Dropping a codeword breaks covering, which the loader must catch.
        monkeypatch.setattr(
            catalog_module,
            "FIXEDRATE_32",
            [[["001"], ["010"]], [["110"], ["011"]]],
        )
        with pytest.raises(CatalogCorrupt, match="fixedrate_32"):
            load_catalog()


class TestSearchOutputsAreCanonical:
    # The frozen greedy tables must equal what the search still produces.

    @pytest.mark.parametrize("entry_id,n", [("greedy_33", 3), ("greedy_44", 4), ("greedy_55", 5), ("greedy_66", 6)])
    def test_binary_greedy_tables(self, entry_id, n):
        assert greedy_laminar(2, n, n) == catalog_entry(entry_id).table

    def test_quaternary_greedy_table(self):
        assert greedy_laminar(4, 3, 9) == catalog_entry("q4_laminar_39").table

    def test_ternary_merge_of_greedy(self):
        merged = merge_generations(greedy_laminar(3, 2, 4), 3, 4)
        assert merged == catalog_entry("q3_merged_23").table


class TestCodeFiles:
    def test_round_trip_every_entry(self, tmp_path):
        for entry in load_catalog():
            path = tmp_path / f"{entry.id}.json"
            write_code_file(entry.table, path)
            assert read_code_file(path) == entry.table

    def test_digit_strings_used_for_small_alphabets(self, tmp_path):
        path = tmp_path / "code.json"
        write_code_file(catalog_entry("q4_sync_24").table, path)
        doc = json.loads(path.read_text())
        assert doc["generations"][0][0] == ["01"]

    def test_arrays_used_beyond_ten_symbols(self, tmp_path):
        code = TableCode(11, 1, [[[(10,)]]])
        path = tmp_path / "wide.json"
        write_code_file(code, path)
        doc = json.loads(path.read_text())
        assert doc["generations"][0][0] == [[10]]
        assert read_code_file(path) == code

    def write_doc(self, tmp_path, doc):
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(doc))
        return path

    def minimal_doc(self):
        return {
            "q": 2,
            "n": 2,
            "t": 2,
            "generations": [[["01"], ["10"]], [["11"]]],
        }

    def test_reads_minimal_document(self, tmp_path):
        code = read_code_file(self.write_doc(tmp_path, self.minimal_doc()))
        assert str(code.params) == "[2,2:2,1]"

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "doc.json"
        path.write_text("{not json")
        with pytest.raises(ParseError, match="invalid JSON"):
            read_code_file(path)

    def test_unknown_field(self, tmp_path):
        doc = self.minimal_doc()
        doc["comment"] = "hello"
        with pytest.raises(ParseError, match="unknown fields"):
            read_code_file(self.write_doc(tmp_path, doc))

    def test_missing_field(self, tmp_path):
        doc = self.minimal_doc()
        del doc["t"]
        with pytest.raises(ParseError, match="missing fields"):
            read_code_file(self.write_doc(tmp_path, doc))

    def test_bad_digit_is_located(self, tmp_path):
        doc = self.minimal_doc()
        doc["generations"][0][0] = ["21"]
        with pytest.raises(ParseError, match="generation 1, class 1"):
            read_code_file(self.write_doc(tmp_path, doc))

    def test_non_integer_cells(self, tmp_path):
        doc = self.minimal_doc()
        doc["generations"][0][0] = [[0.5, 1]]
        with pytest.raises(ParseError, match="non-integer"):
            read_code_file(self.write_doc(tmp_path, doc))

    def test_write_count_mismatch(self, tmp_path):
        doc = self.minimal_doc()
        doc["t"] = 3
        with pytest.raises(SchemaError, match="t=3"):
            read_code_file(self.write_doc(tmp_path, doc))

    def test_overlapping_classes(self, tmp_path):
        doc = self.minimal_doc()
        doc["generations"][0] = [["01"], ["01"]]
        with pytest.raises(SchemaError, match="classes 1 and 2"):
            read_code_file(self.write_doc(tmp_path, doc))
