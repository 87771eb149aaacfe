import json

import pytest

from htl.builders import build, build_oriented
from htl.io import (
    HtlFormatError,
    analyze_export,
    emit_htl,
    parse_graph,
    parse_htl,
    render_svg,
)
from htl.labeling import LabelingError

from conftest import BASES


TWELVE_GON_DOC = """HTL 1
1 4
1 2 3 4 1 3 2 4 3 1 2 4
"""


def test_parse_twelve_gon_document():
    lab = parse_htl(TWELVE_GON_DOC)
    assert lab == BASES[12]


def test_emit_is_canonical():
    assert emit_htl(BASES[12]) == TWELVE_GON_DOC


def test_round_trips(bases, built_corpus):
    for lab in list(bases.values()) + list(built_corpus.values()):
        assert parse_htl(emit_htl(lab)) == lab
    assert emit_htl(parse_htl(TWELVE_GON_DOC)) == TWELVE_GON_DOC


def test_comments_and_blank_lines_ignored():
    doc = "# a comment\nHTL 1\n\n1 4\n# another\n1 2 3 4 1 3 2 4 3 1 2 4\n"
    assert parse_htl(doc) == BASES[12]


def test_parse_errors_carry_location():
    with pytest.raises(HtlFormatError) as err:
        parse_htl("HTL 2\n1 4\n1 2 3 4 1 3 2 4 3 1 2 4\n")
    assert err.value.line == 1

    with pytest.raises(HtlFormatError) as err:
        parse_htl("HTL 1\n1 x\n1 2 3\n")
    assert err.value.line == 2 and err.value.column == 3

    with pytest.raises(HtlFormatError) as err:
        parse_htl("HTL 1\n1 4\n1 2 3 9 1 3 2 4 3 1 2 4\n")
    assert err.value.line == 3 and err.value.column == 7

    with pytest.raises(HtlFormatError) as err:
        parse_htl("HTL 1\n1 4\n1 2 3 4 1 3 2 4 3 1\n")
    assert "3m" in str(err.value)


def test_analyze_built_heptagons():
    record = analyze_export(build(7))
    assert record["proper"] and record["chi"] == -1
    assert record["area"]["exact"] == "2/1*pi"
    assert record["minimal"] and record["subgroup_index"] == 84
    assert record["eek_admissible"] and record["triangle_bound"]["equality"]
    assert record["crosscap"] == 3 and record["genus"] is None


def test_analyze_oriented_ten_gons():
    record = analyze_export(build_oriented(10))
    assert record["genus"] == 2 and record["area"]["exact"] == "4/1*pi"
    assert record["oriented_labeling"] and record["orientable_surface"]


def test_analyze_reproduces_minimal_areas():
    from htl.geom import minimal_area, pi_multiple_str

    for k in range(7, 21):
        ma = minimal_area(k)
        rec = analyze_export(build(k))
        assert rec["area"]["exact"] == pi_multiple_str(ma.general)
        assert rec["minimal"] and rec["triangle_bound"]["equality"]
        rec_o = analyze_export(build_oriented(k))
        assert rec_o["area"]["exact"] == pi_multiple_str(ma.oriented)
        assert rec_o["orientable_surface"] and rec_o["minimal_oriented"]


def test_analyze_non_proper_reports_violations():
    from conftest import MISCOUNTED_18GON

    record = analyze_export(MISCOUNTED_18GON)
    assert not record["proper"]
    assert "chi" not in record
    conditions = {v["condition"] for v in record["violations"]}
    assert "i" in conditions


def test_analyze_is_json_serializable(built_corpus):
    for lab in built_corpus.values():
        json.dumps(analyze_export(lab))


def test_render_svg_basics():
    svg = render_svg(BASES[7])
    assert svg.startswith("<?xml")
    assert 'version="1.1"' in svg
    assert svg.count("<line") == 42  # 3m edges drawn
    assert svg.count("data-pair") == 42
    # 21 distinct pair ids
    ids = {part.split('"')[1] for part in svg.split("data-pair=")[1:]}
    assert len(ids) == 21


def test_render_deterministic():
    assert render_svg(BASES[9]) == render_svg(BASES[9])


def test_render_refuses_non_proper():
    from conftest import MISCOUNTED_18GON

    with pytest.raises(LabelingError):
        render_svg(MISCOUNTED_18GON)


def test_parse_graph():
    doc = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"
    graph = parse_graph(doc)
    assert graph.num_vertices == 4 and len(graph.edge_list) == 6

    with pytest.raises(Exception) as err:
        parse_graph("1 2\n2 3\n")
    assert "degree" in str(err.value)

    two_k4 = doc + "5 6\n5 7\n5 8\n6 7\n6 8\n7 8\n"
    with pytest.raises(Exception) as err:
        parse_graph(two_k4)
    assert "disconnected" in str(err.value)

    with pytest.raises(Exception) as err:
        parse_graph("1 1\n1 2\n2 3\n3 1\n2 3\n")
    assert "loop" in str(err.value)
