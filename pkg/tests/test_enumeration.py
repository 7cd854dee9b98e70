from __future__ import annotations

import csv
import io
import json

import pytest

from cayley_incidence.cells import FamilyError, translate_class, validate_family
from cayley_incidence.constructions import fano_family
from cayley_incidence.enumeration import (
    CSV_COLUMNS, GoldenEntry, TableDiff, candidate_classes, class_packings, classify,
    compare_with_golden, enumerate_group, load_golden, max_cell_size, naive_enumerate,
    reproduce_tables, row_matches, rows_multiset_match, table_number,
)
from cayley_incidence.groups import catalog, cyclic, make_group


def test_classify_fano():
    rec = classify(fano_family())
    assert rec.row() == (3, 3, 6, True, 336, 1)
    assert rec.beta_regular and rec.cayley_method == "dihedral"


def test_classify_rejects_trivial_and_disconnected():
    G = make_group("Z3^2")
    with pytest.raises(FamilyError) as exc:
        classify(validate_family(G, [[0, 1, 2]]))
    assert exc.value.witness["axiom"] == "non_trivial"
    with pytest.raises(FamilyError) as exc:
        classify(validate_family(cyclic(9), [[0, 3, 6], [0, 1, 8]]))
    assert exc.value.witness["axiom"] in ("connected", "non_trivial", "t_axiom")


def test_packing_bound():
    assert [max_cell_size(n) for n in (7, 8, 15, 16)] == [4, 4, 8, 8]


def test_candidate_classes_are_translate_classes():
    G = make_group("Dic3")
    for cls in candidate_classes(G, 3):
        first = cls.cells[0]
        assert set(translate_class(G, first)) == set(cls.cells)
        assert validate_family(G, cls.cells).is_valid
        union = set().union(*cls.cells) - {0}
        assert cls.mask == sum(1 << g for g in union)


def test_class_packings_are_disjoint():
    G = cyclic(13)
    classes = candidate_classes(G, 3)
    for idx in class_packings(classes):
        masks = [classes[i].mask for i in idx]
        assert all(a & b == 0 for i, a in enumerate(masks) for b in masks[i + 1:])


@pytest.mark.parametrize("G", [G for G in catalog() if G.order <= 10], ids=lambda G: G.name)
def test_naive_agrees_with_enumeration(G):
    rep = enumerate_group(G)
    assert naive_enumerate(G) == {r.certificate.data for r in rep.records}


def test_z13_and_z15_rows():
    rows = enumerate_group("Z13").rows()
    assert rows_multiset_match(rows, [(3, 3, None, True, 26, 1), (3, 3, None, True, 78, 1),
                                      (6, 3, None, False, 39, 3), (4, 4, None, True, 11232, 1)])
    z15 = enumerate_group("Z15")
    assert z15.count == 16
    assert (7, 3, 6, False, 20160, 2) in z15.rows()


def test_workers_do_not_change_result():
    a = enumerate_group("Z12", workers=1)
    b = enumerate_group("Z12", workers=2)
    assert [r.certificate for r in a.records] == [r.certificate for r in b.records]
    assert [r.family.cells for r in a.records] == [r.family.cells for r in b.records]


def test_aut_prescreen_does_not_change_result():
    a = enumerate_group("Dic3", use_aut_prescreen=True)
    b = enumerate_group("Dic3", use_aut_prescreen=False)
    assert [r.certificate for r in a.records] == [r.certificate for r in b.records]


def test_budget_marks_partial():
    rep = enumerate_group("Z16", budget_seconds=0.0)
    assert rep.partial


def test_table_numbers():
    assert table_number(cyclic(9)) == 2
    assert table_number(make_group("Z3^2")) == 3
    assert table_number(make_group("Dic3")) == 4


def test_serialisation_formats():
    rep = enumerate_group("Z13")
    obj = json.loads(json.dumps(rep.to_json()))
    assert obj["count"] == 4 and len(obj["records"]) == 4
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 5


def test_golden_data_loads():
    golden = load_golden()
    assert len(golden) == 34
    assert {g for g, e in golden.items() if e.quarantined} == {"Z8xZ2", "Z8:Z2"}
    assert golden["Z16"].rows is None and golden["Z16"].count == 8


def test_row_matching_with_wildcard():
    assert row_matches((3, 3, 6, True, 26, 1), (3, 3, None, True, 26, 1))
    assert not row_matches((3, 3, 6, True, 26, 1), (3, 3, 8, True, 26, 1))
    assert not rows_multiset_match([(1,), (1,)], [(1,)])


def test_compare_with_golden_kinds():
    golden = {
        "Z7": GoldenEntry("Z7", 2, 1, None),
        "Z13": GoldenEntry("Z13", 2, 4, ((3, 3, None, True, 26, 1),)),
    }
    reports = {"Z7": enumerate_group("Z7"), "Z13": enumerate_group("Z13")}
    diffs = compare_with_golden(reports, golden)
    kinds = {(d.group, d.kind) for d in diffs}
    assert kinds == {("Z7", "unlisted"), ("Z13", "rows")}
    assert [d.blocking for d in diffs if d.group == "Z13"] == [True]
    assert not TableDiff("Z7", "unlisted", None, []).blocking


def test_reproduce_subset_of_tables():
    bundle = reproduce_tables(max_order=9, groups=["Z9", "Q8"])
    assert set(bundle.reports) == {"Z9", "Q8"}
    assert not bundle.blocking
    text = bundle.format_text()
    assert "Table 1" in text and "Q8" in text
    with pytest.raises(ValueError):
        reproduce_tables(max_order=17)
