import io

import pytest

from nlposets import config
from nlposets.cli import main

WORKED_POSET = "9; 2<4,2<8,5<8,1<8,2<7,5<7,1<7,6<7,2<9,5<9,1<9,6<9"
WORKED_WORD = "0:2 1:4 0:5 0:1 1:8 0:6 1:7 1:9 0:3"
WORKED_COLOURED = "2b 4r 5b 1b 8r 6b 7r 9r 3b"


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


class TestCount:
    def test_hierarchy_family_prints_from_one(self):
        code, out = run(["count", "--family", "nl-3-22free", "--max-n", "5"])
        assert code == 0
        assert out == "1 1\n2 2\n3 6\n4 23\n5 107\n"

    def test_avoider_family_includes_the_empty_term(self):
        code, out = run(["count", "--family", "av12-34", "--max-n", "0"])
        assert code == 0
        assert out == "0 1\n"

    @pytest.mark.parametrize(
        "family,expect",
        [
            ("nl", "0 1\n1 1\n2 2\n3 7\n4 40\n5 357\n"),
            ("nl-22free", "0 1\n1 1\n2 2\n3 7\n4 37\n5 272\n"),
            ("nl-3free", "0 1\n1 1\n2 2\n3 6\n4 26\n5 158\n"),
            ("nl-3free-noiso", "0 1\n1 0\n2 1\n3 2\n4 11\n5 72\n"),
            ("stanley-graph", "0 1\n1 1\n2 2\n3 6\n4 26\n5 158\n"),
            ("interval-orders", "0 1\n1 1\n2 2\n3 5\n4 15\n5 53\n"),
        ],
    )
    def test_family_rows(self, family, expect):
        code, out = run(["count", "--family", family, "--max-n", "5"])
        assert code == 0
        assert out == expect

    def test_closed_form_families_scale_past_the_brute_force_limit(self):
        code, out = run(["count", "--family", "nl-3free", "--max-n", "20"])
        assert code == 0
        assert out.splitlines()[-1].split()[0] == "20"

    def test_unknown_family(self):
        code, _ = run(["count", "--family", "nope", "--max-n", "3"])
        assert code == 2

    def test_brute_force_guard_exit(self):
        code, _ = run(["count", "--family", "nl", "--max-n", "12"])
        assert code == 3

    def test_by_minima_triangle(self):
        code, out = run(["count", "--family", "nl-3free", "--max-n", "5",
                         "--by-minima"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("#")
        assert lines[1:] == ["1", "0 1", "0 1 1", "0 1 4 1",
                             "0 1 13 11 1", "0 1 40 90 26 1"]

    def test_by_minima_rejected_for_pattern_family(self):
        code, _ = run(["count", "--family", "av12-34", "--max-n", "4",
                       "--by-minima"])
        assert code == 2


class TestEnumerate:
    def test_stream_is_lexicographic(self):
        code, out = run(["enumerate", "--family", "nl-3free",
                         "--max-n", "3"])
        assert code == 0
        assert out.splitlines() == [
            "3;", "3; 2<3", "3; 1<3", "3; 1<3,2<3", "3; 1<2", "3; 1<2,1<3"]

    def test_stanley_stream(self):
        code, out = run(["enumerate", "--family", "stanley-graph",
                         "--max-n", "2"])
        assert code == 0
        assert out.splitlines() == ["2;", "2; 1-2"]

    def test_no_stream_for_pattern_family(self):
        code, _ = run(["enumerate", "--family", "av12-34", "--max-n", "3"])
        assert code == 2

    def test_by_minima_rejected(self):
        code, _ = run(["enumerate", "--family", "nl", "--max-n", "3",
                       "--by-minima"])
        assert code == 2


class TestBiject:
    def roundtrip(self, tmp_path, mapname, source):
        src = tmp_path / "in.txt"
        mid = tmp_path / "mid.txt"
        src.write_text(source + "\n")
        code, _ = run(["biject", "--map", mapname, "--in", str(src),
                       "--out", str(mid)])
        assert code == 0
        code, out = run(["biject", "--map", mapname, "--inverse",
                         "--in", str(mid), "--out", "-"])
        assert code == 0
        return mid.read_text().strip(), out.strip()

    def test_word_round_trip(self, tmp_path):
        mid, back = self.roundtrip(tmp_path, "word", WORKED_POSET)
        assert mid == WORKED_WORD
        from nlposets.posets import Poset

        assert Poset.from_text(back) == Poset.from_text(WORKED_POSET)

    def test_bicoloured_round_trip(self, tmp_path):
        mid, back = self.roundtrip(tmp_path, "bicoloured", WORKED_WORD)
        assert mid == WORKED_COLOURED
        assert back == WORKED_WORD

    def test_lambda_and_psi(self, tmp_path):
        src = tmp_path / "b.txt"
        src.write_text("1b 2r 3b\n")
        code, out = run(["biject", "--map", "lambda", "--in", str(src),
                         "--out", "-"])
        assert code == 0
        assert out.strip() == "3 1 2"
        src.write_text("3 1 2\n")
        code, out = run(["biject", "--map", "psi", "--in", str(src),
                         "--out", "-"])
        assert code == 0
        assert out.strip() == "1b 2r 3b"

    def test_stanley_round_trip(self, tmp_path):
        poset = "5; 2<3,2<4,1<5,2<5"
        mid, back = self.roundtrip(tmp_path, "stanley", poset)
        assert mid == "5; 1-5,2-3,2-4,2-5"
        assert back == poset

    def test_decorated_round_trip(self, tmp_path):
        from nlposets.posets import Poset

        poset = Poset(9, [(2, 9), (5, 9), (5, 6), (5, 7)]).to_text()
        mid, back = self.roundtrip(tmp_path, "decorated", poset)
        assert mid == "5; 2<3,2<4,1<5,2<5 | 0:1,1:2,4:1"
        assert back == poset

    def test_comments_and_blanks_skipped(self, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("# header\n\n3; 1<2\n")
        code, out = run(["biject", "--map", "word", "--in", str(src),
                         "--out", "-"])
        assert code == 0
        assert out.strip() == "0:1 1:2 0:3"

    def test_membership_failure_exits_one(self, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("3; 1<2,2<3,1<3\n")
        code, _ = run(["biject", "--map", "word", "--in", str(src),
                       "--out", "-"])
        assert code == 1

    def test_parse_failure_exits_two(self, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("not a poset\n")
        code, _ = run(["biject", "--map", "word", "--in", str(src),
                       "--out", "-"])
        assert code == 2

    def test_reads_stdin_with_dash(self, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("3; 1<2\n"))
        code, out = run(["biject", "--map", "word", "--in", "-",
                         "--out", "-"])
        assert code == 0
        assert out.strip() == "0:1 1:2 0:3"

    def test_missing_input_file_exits_two(self, tmp_path):
        code, _ = run(["biject", "--map", "word",
                       "--in", str(tmp_path / "absent.txt"), "--out", "-"])
        assert code == 2


class TestVerify:
    def test_small_all_suite_passes(self):
        code, out = run(["verify", "--suite", "matrices", "--max-n", "4"])
        assert code == 0
        assert "FAIL" not in out
        assert "checks passed" in out

    def test_bijection_suite(self):
        code, out = run(["verify", "--suite", "bijections", "--max-n", "4"])
        assert code == 0
        assert "[bijections] ok" in out


class TestAnalyze:
    @pytest.fixture()
    def terms_file(self, tmp_path):
        # model-exact synthetic terms keep this test fast and exact
        from nlposets.analysis import make_model_series

        syn = make_model_series(0.0328, 0.7213475204444817, 37.9, -0.826,
                                18, 45)
        path = tmp_path / "terms.b"
        path.write_text("\n".join(f"{n} {syn[n]}" for n in syn.indices())
                        + "\n")
        return path

    def test_ratios_output(self, terms_file):
        code, out = run(["analyze", "ratios", "--terms", str(terms_file),
                         "--out", "-"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# n ratio"
        assert len(lines) == 28
        assert lines[1].split()[0] == "18"

    def test_transforms_match_ratio_columns(self, terms_file):
        code, out = run(["analyze", "transforms", "--terms",
                         str(terms_file), "--gamma", "log4inv",
                         "--alpha", "0.3333333333333333", "--out", "-"])
        assert code == 0
        header = out.splitlines()[0]
        assert header.startswith("# n ")
        assert "scaled_deviation" in header

    def test_olsfit_recovers_model(self, terms_file):
        code, out = run(["analyze", "olsfit", "--terms", str(terms_file),
                         "--out", "-"])
        assert code == 0
        rec = out.splitlines()[1].split()
        assert abs(float(rec[4]) - 0.0328) < 1e-6
        assert abs(float(rec[6]) - 37.9) < 1e-5
        assert abs(float(rec[8]) + 0.826) < 1e-8

    def test_directfit_range(self, terms_file):
        code, out = run(["analyze", "directfit", "--terms",
                         str(terms_file), "--range", "20..30", "--out", "-"])
        assert code == 0
        rows = out.splitlines()[1:]
        assert len(rows) == 9
        assert rows[0].split()[:2] == ["20", "22"]

    def test_free_gamma_rejected_for_directfit(self, terms_file):
        code, _ = run(["analyze", "directfit", "--terms", str(terms_file),
                       "--gamma", "free", "--out", "-"])
        assert code == 2

    def test_bad_gamma_and_range(self, terms_file):
        code, _ = run(["analyze", "olsfit", "--terms", str(terms_file),
                       "--gamma", "zero", "--out", "-"])
        assert code == 2
        code, _ = run(["analyze", "olsfit", "--terms", str(terms_file),
                       "--range", "10-20", "--out", "-"])
        assert code == 2
        code, _ = run(["analyze", "olsfit", "--terms", str(terms_file),
                       "--range", "1..99", "--out", "-"])
        assert code == 2

    def test_rerun_is_byte_identical(self, terms_file, tmp_path):
        out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
        for path in (out1, out2):
            code, _ = run(["analyze", "transforms", "--terms",
                           str(terms_file), "--out", str(path)])
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_terms_from_stdin(self, terms_file, monkeypatch):
        monkeypatch.setattr("sys.stdin",
                            io.StringIO(terms_file.read_text()))
        code, out = run(["analyze", "ratios", "--terms", "-", "--out", "-"])
        assert code == 0
        assert out.splitlines()[0] == "# n ratio"

    def test_missing_terms_file_exits_two(self, tmp_path):
        code, _ = run(["analyze", "ratios",
                       "--terms", str(tmp_path / "absent.b"), "--out", "-"])
        assert code == 2


class TestOeis:
    def test_fetch_packaged(self):
        code, out = run(["oeis", "fetch", "A113226"])
        assert code == 0
        assert out == "A113226 source=local entries=557 range=1..557\n"

    def test_compare_closed_form(self):
        code, out = run(["oeis", "compare", "A135922"])
        assert code == 0
        assert "agreement on full overlap 0..30" in out

    def test_compare_enumerated(self):
        code, out = run(["oeis", "compare", "A006455"])
        assert code == 0
        assert "0..7" in out

    def test_offline_cold_cache_exits_four(self, tmp_path):
        code, _ = run(["oeis", "fetch", "A000002", "--cache",
                       str(tmp_path), "--offline"])
        assert code == 4

    def test_malformed_id_exits_two(self):
        code, _ = run(["oeis", "fetch", "nope"])
        assert code == 2

    def test_cache_flag_reads_user_copy(self, tmp_path):
        (tmp_path / "A135922.b").write_text("0 1\n1 1\n")
        code, out = run(["oeis", "fetch", "A135922", "--cache",
                         str(tmp_path)])
        assert code == 0
        assert "source=cache entries=2" in out


class TestGlobalFlags:
    @pytest.fixture(autouse=True)
    def restore_backend(self):
        old = config.active_backend()
        yield
        config.set_backend(old)

    def test_backend_flag(self):
        code, _ = run(["--backend", "numpy", "count", "--family",
                       "av12-34", "--max-n", "5"])
        assert code == 0
        assert config.active_backend() in ("numba", "numpy")

    def test_config_file_limits(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("# settings\nbrute-force-limit=3\n")
        code, _ = run(["--config", str(cfg), "count", "--family", "nl",
                       "--max-n", "4"])
        assert code == 3
        code, _ = run(["--config", str(cfg), "count", "--family", "nl",
                       "--max-n", "3"])
        assert code == 0

    def test_config_file_syntax_error(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("nonsense\n")
        code, _ = run(["--config", str(cfg), "count", "--family", "nl",
                       "--max-n", "2"])
        assert code == 2
