import io

import pytest

from metacirc.codes import exact_weight_profile
from metacirc.formats import (
    ParseError,
    format_edge_table,
    format_generator_matrix,
    format_spec,
    parse_edge_table,
    parse_generator_matrix,
    parse_spec,
    profile_json_str,
    read_profile_json,
    spec_from_json_dict,
    spec_to_json_dict,
    write_profile_json,
)
from metacirc.graphs import MetacirculantSpec, build_metacirculant


class TestSpecFiles:
    def test_round_trip(self):
        spec = MetacirculantSpec.make(2, 14, 13, {5, 6, 8, 9}, {0, 1, 3, 6, 7, 9, 11})
        assert parse_spec(format_spec(spec)) == spec

    def test_parse_with_comments_and_commas(self):
        text = """
        # a graph
        m = 2
        ell = 3
        alpha = 1
        S0 = {1, 2}
        S1 = 0
        """
        spec = parse_spec(text)
        assert spec == MetacirculantSpec.make(2, 3, 1, {1, 2}, {0})

    def test_missing_key(self):
        with pytest.raises(ParseError, match="missing key 'alpha'"):
            parse_spec("m = 2\nell = 3\nS0 = 1 2\n")

    def test_bad_value_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_spec("m = 2\nell = x\nalpha = 1\n")

    def test_non_contiguous_sets(self):
        with pytest.raises(ParseError, match="contiguous"):
            parse_spec("m = 4\nell = 5\nalpha = 1\nS0 = 1 4\nS2 = 0\n")

    def test_unknown_key(self):
        with pytest.raises(ParseError, match="unknown key"):
            parse_spec("m = 2\nell = 3\nalpha = 1\nS0 = 1 2\nS1 = 0\nbogus = 7\n")

    def test_json_round_trip(self):
        spec = MetacirculantSpec.make(3, 31, 1, {10, 21}, {4, 6})
        assert spec_from_json_dict(spec_to_json_dict(spec)) == spec


class TestEdgeTables:
    def test_round_trip_hexacode(self, hexacode_graph):
        text = format_edge_table(hexacode_graph, comment="hexacode")
        assert parse_edge_table(text) == hexacode_graph

    def test_empty_table_with_header(self):
        g = parse_edge_table("n = 3\n")
        assert g.n == 3 and g.edge_count == 0

    def test_missing_header(self):
        with pytest.raises(ParseError, match="missing 'n"):
            parse_edge_table("(1, {2})\n")

    def test_self_loop_reports_line(self):
        with pytest.raises(ParseError, match=r"line 3: self-loop at vertex 2"):
            parse_edge_table("n = 3\n(1, {2}),\n(2, {2}).\n")

    def test_duplicate_edge_reports_line(self):
        with pytest.raises(ParseError, match=r"line 3: duplicate edge \(1, 2\)"):
            parse_edge_table("n = 3\n(1, {2}),\n(2, {1}).\n")

    def test_out_of_range_reports_line(self):
        with pytest.raises(ParseError, match="line 2: vertex 9 out of range"):
            parse_edge_table("n = 3\n(1, {9}).\n")

    def test_malformed_row_reports_line(self):
        with pytest.raises(ParseError, match="line 3: malformed row"):
            parse_edge_table("n = 3\n(1, {2}),\n(2 {3}).\n")

    def test_whitespace_insensitive(self):
        a = parse_edge_table("n = 4\n(1, {2, 3}), (2, {4}).")
        b = parse_edge_table("n    =  4\n( 1 ,\n  { 2 ,3 } ) ,\n(2,{4})\n")
        assert a == b

    def test_symmetric_completion(self):
        g = parse_edge_table("n = 2\n(1, {2})\n")
        assert g.has_edge(0, 1) and g.has_edge(1, 0)

    def test_round_trip_every_order(self):
        spec = MetacirculantSpec.make(2, 14, 13, {5, 6, 8, 9}, {0, 1, 3, 6, 7, 9, 11})
        for order in ("block", "interleaved"):
            g = build_metacirculant(spec, order=order)
            assert parse_edge_table(format_edge_table(g)) == g


class TestGeneratorMatrices:
    def test_round_trip(self, bordered_hexacode_code):
        text = format_generator_matrix(bordered_hexacode_code)
        assert parse_generator_matrix(text).generator_rows() == \
            bordered_hexacode_code.generator_rows()

    def test_bad_symbol_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_generator_matrix("w1\n1x\n")

    def test_ragged_rows_rejected(self):
        with pytest.raises(ParseError, match="expected 2"):
            parse_generator_matrix("w1\n1w0\n")

    def test_empty_rejected(self):
        with pytest.raises(ParseError, match="no generator rows"):
            parse_generator_matrix("# nothing\n")


class TestProfileJson:
    def test_round_trip(self, hexacode_code):
        p = exact_weight_profile(hexacode_code)
        buf = io.StringIO()
        write_profile_json(p, buf)
        buf.seek(0)
        q = read_profile_json(buf)
        assert q == p  # runtime is excluded from comparison

    def test_json_fields(self, hexacode_code):
        p = exact_weight_profile(hexacode_code)
        text = profile_json_str(p)
        assert '"schema": 1' in text
        assert '"kind": "exact"' in text
        assert '"d": 4' in text
