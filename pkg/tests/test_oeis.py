import pytest

from nlposets.counting import CountSeries, GFId, series_from_gf
from nlposets.oeis import (
    BFile,
    OeisUnavailableError,
    check_a_number,
    oeis_compare,
    oeis_fetch,
    parse_b_file,
    write_b_file,
)

PACKAGED = ["A006455", "A135922", "A139382", "A323842", "A113226", "A022493"]


class TestBFileParsing:
    def test_basic_lines(self):
        bf = parse_b_file("# c\n\n5 107\n6 585\n", "A113226")
        assert bf.entries == ((5, 107), (6, 585))
        assert bf.offset == 5

    def test_comment_and_blank_lines_skipped(self):
        bf = parse_b_file("# one\n# two\n0 1\n\n1 1\n", "A000000")
        assert len(bf) == 2

    def test_malformed_line_names_line_number(self):
        with pytest.raises(ValueError, match="line 3"):
            parse_b_file("0 1\n1 1\nbogus\n", "A000000")
        with pytest.raises(ValueError, match="line 2"):
            parse_b_file("0 1\n1 x\n", "A000000")
        with pytest.raises(ValueError, match="line 1"):
            parse_b_file("3 4 5\n", "A000000")

    def test_non_increasing_index_rejected(self):
        with pytest.raises(ValueError, match="line 3"):
            parse_b_file("0 1\n2 5\n2 6\n", "A000000")
        with pytest.raises(ValueError):
            BFile("A000000", ((3, 1), (3, 2)), "local")

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="no entries"):
            parse_b_file("# nothing\n", "A000000")

    def test_to_series_requires_contiguous(self):
        s = parse_b_file("4 10\n5 20\n", "A000000").to_series()
        assert s.offset == 4 and s[5] == 20
        with pytest.raises(ValueError, match="contiguous"):
            parse_b_file("4 10\n6 20\n", "A000000").to_series()

    def test_round_trip_through_file(self, tmp_path):
        bf = parse_b_file("1 1\n2 2\n3 6\n", "A113226")
        path = tmp_path / "out.b"
        write_b_file(bf, path, comment="demo")
        again = parse_b_file(path.read_text(), "A113226", "cache")
        assert again.entries == bf.entries
        assert path.read_text().startswith("# demo\n")

    def test_a_number_validation(self):
        assert check_a_number("A113226") == "A113226"
        for bad in ("113226", "a113226", "A11", "A123456x"):
            with pytest.raises(ValueError):
                check_a_number(bad)


class TestFetch:
    @pytest.mark.parametrize("seq_id", PACKAGED)
    def test_packaged_copies_exist(self, seq_id):
        bf = oeis_fetch(seq_id, offline=True)
        assert bf.source == "local"
        assert len(bf) >= 8

    def test_cache_takes_precedence(self, tmp_path):
        (tmp_path / "A113226.b").write_text("1 999\n")
        bf = oeis_fetch("A113226", cache_dir=tmp_path)
        assert bf.source == "cache"
        assert bf.entries == ((1, 999),)

    def test_offline_without_any_copy(self, tmp_path):
        with pytest.raises(OeisUnavailableError):
            oeis_fetch("A000001", cache_dir=tmp_path, offline=True)

    def test_remote_fetch_stores_in_cache(self, tmp_path):
        calls = []

        def fake(seq_id):
            calls.append(seq_id)
            return "# remote\n0 4\n1 5\n"

        bf = oeis_fetch("A000001", cache_dir=tmp_path, fetcher=fake)
        assert bf.source == "remote"
        assert bf.entries == ((0, 4), (1, 5))
        assert calls == ["A000001"]
        again = oeis_fetch("A000001", cache_dir=tmp_path, fetcher=fake)
        assert again.source == "cache"
        assert calls == ["A000001"]

    def test_failing_fetcher_maps_to_unavailable(self, tmp_path):
        def broken(seq_id):
            raise OSError("no route to host")

        with pytest.raises(OeisUnavailableError, match="no route"):
            oeis_fetch("A000001", cache_dir=tmp_path, fetcher=broken)

    def test_bad_id_rejected_before_io(self):
        with pytest.raises(ValueError):
            oeis_fetch("B12345")


class TestCompare:
    def test_full_agreement(self):
        local = series_from_gf(GFId.EQ4_3FREE, 30)
        rep = oeis_compare(local, oeis_fetch("A135922"))
        assert rep.ok
        assert rep.agreement_length == 31
        assert rep.overlap == (0, 30)
        assert "agreement on full overlap" in rep.summary()

    def test_partial_overlap(self):
        local = series_from_gf(GFId.EQ4_3FREE, 8)
        rep = oeis_compare(local, oeis_fetch("A135922"))
        assert rep.ok and rep.overlap == (0, 8)

    def test_shift_mismatch_negative_control(self):
        local = series_from_gf(GFId.EQ4_3FREE, 10)
        rep = oeis_compare(local, oeis_fetch("A135922"), shift=1)
        assert not rep.ok
        n, mine, theirs = rep.first_mismatch
        assert mine != theirs
        assert "MISMATCH" in rep.summary()

    def test_empty_overlap_rejected(self):
        local = CountSeries("x", 100, [1, 2, 3])
        with pytest.raises(ValueError, match="overlap"):
            oeis_compare(local, oeis_fetch("A006455"))

    def test_packaged_long_series_spot_values(self):
        s = oeis_fetch("A113226").to_series()
        assert s[1] == 1 and s[5] == 107 and s[10] == 1761109
        assert s[557] > 10 ** 1000
