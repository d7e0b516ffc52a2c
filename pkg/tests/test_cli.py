import json

import pytest
from mpmath import mpc, mpf

from hooklab.cli import main, parse_complex, parse_partition
from hooklab.partitions import Partition
from hooklab.qseries import RationalSeries, euler_product


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestParsers:
    @pytest.mark.parametrize("text,expected", [
        ("0+1i", mpc(0, 1)),
        ("2i", mpc(0, 2)),
        ("i", mpc(0, 1)),
        ("-i", mpc(0, -1)),
        ("0.5", mpc("0.5", 0)),
        ("0.5+0.25i", mpc("0.5", "0.25")),
        ("1-2i", mpc(1, -2)),
        (" 0.3 + 0.7i ", mpc("0.3", "0.7")),
    ])
    def test_complex_ok(self, text, expected):
        assert parse_complex(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1+2j+3", "i2"])
    def test_complex_malformed(self, text):
        with pytest.raises(SystemExit):
            parse_complex(text)

    def test_partition(self):
        assert parse_partition("4,3,1") == Partition((4, 3, 1))
        assert parse_partition("") == Partition(())
        with pytest.raises(SystemExit):
            parse_partition("1,2,x")
        with pytest.raises(SystemExit):
            parse_partition("1,3")  # increasing


class TestHooks:
    def test_human(self, capsys):
        code, out = run(capsys, "hooks", "--partition", "4,3,1", "--t", "2")
        assert code == 0
        assert "hooks divisible by 2: [2, 4, 4, 6]" in out
        assert "f_2 = 29/36" in out

    def test_json(self, capsys):
        code, out = run(capsys, "hooks", "--partition", "4,3,1",
                        "--output", "json")
        obj = json.loads(out)
        assert obj["partition"] == [4, 3, 1]
        assert obj["hooks"] == [1, 1, 1, 2, 3, 4, 4, 6]
        assert obj["f_t"] == ["253", "72"]


class TestSeries:
    def test_euler_json_round_trip(self, capsys):
        code, out = run(capsys, "series", "euler", "--order", "25",
                        "--output", "json")
        assert code == 0
        ser = RationalSeries.from_json(json.loads(out))
        assert ser == euler_product(25)

    def test_eta_offset_shown(self, capsys):
        code, out = run(capsys, "series", "eta", "--order", "5")
        assert "q^(1/24)" in out

    def test_deterministic(self, capsys):
        argv = ("series", "partition", "--order", "30", "--output", "json")
        _, a = run(capsys, *argv)
        _, b = run(capsys, *argv)
        assert a == b


class TestBracket:
    def test_size_bracket(self, capsys):
        code, out = run(capsys, "bracket", "size", "--order", "6",
                        "--output", "json")
        obj = json.loads(out)
        assert obj["coeffs"][1:5] == [["1", "1"], ["3", "1"], ["4", "1"],
                                      ["7", "1"]]

    def test_f_bracket_human(self, capsys):
        code, out = run(capsys, "bracket", "f", "--t", "2", "--order", "8")
        assert code == 0
        assert "<f_2>_q" in out


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ("verify", "theorem1", "--t", "2", "--order", "12"),
        ("verify", "han", "--t", "2", "--y", "1/3", "--w", "2",
         "--order", "10"),
        ("verify", "nekrasov-okounkov", "--s", "-1", "--order", "10"),
        ("verify", "size-bracket", "--order", "15"),
        ("verify", "exp-identity", "--order", "30"),
    ])
    def test_pass_exit_zero(self, capsys, argv):
        code, out = run(capsys, *argv)
        assert code == 0
        assert "pass" in out

    def test_json_report(self, capsys):
        code, out = run(capsys, "verify", "theorem1", "--t", "3",
                        "--order", "9", "--output", "json")
        obj = json.loads(out)
        assert obj["equal"] is True
        assert obj["first_discrepancy"] is None


class TestEval:
    def test_eta_i(self, capsys):
        code, out = run(capsys, "eval", "eta", "--z", "i")
        assert code == 0
        assert "0.768225" in out

    def test_json_schema(self, capsys):
        code, out = run(capsys, "eval", "Psi", "--z", "2i",
                        "--output", "json")
        obj = json.loads(out)
        assert set(obj) == {"re", "im", "prec_bits", "err_log2"}
        assert obj["prec_bits"] == 128

    def test_hstar_t2(self, capsys):
        code, out = run(capsys, "eval", "Hstar", "--t", "2", "--z", "0+1i",
                        "--output", "json")
        assert abs(mpf(json.loads(out)["re"]) - mpf("4.5395e-6")) < mpf("1e-9")

    def test_im_too_small_exits(self, capsys):
        with pytest.raises(SystemExit):
            main(["eval", "E", "--z", "0.01i"])


class TestTransform:
    @pytest.mark.parametrize("check", ["inversion", "translation", "berndt",
                                       "h1star", "eta-inversion"])
    def test_pass(self, capsys, check):
        code, out = run(capsys, "transform", check, "--z", "0.5+1i",
                        "--t", "2")
        assert code == 0
        assert "FAIL" not in out

    def test_json_rows(self, capsys):
        code, out = run(capsys, "transform", "h1star", "--z", "2i",
                        "--output", "json")
        rows = json.loads(out)
        assert {r["check"] for r in rows} \
            == {"h1star-translation", "h1star-inversion"}
        assert all(r["pass"] for r in rows)


class TestCs:
    def test_report_2i(self, capsys):
        code, out = run(capsys, "cs", "--tau", "2i", "--D", "-4",
                        "--output", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["pass"] is True
        assert obj["probe"] == {"power": 8, "rational": ["1", "2"]}

    def test_degenerate_point_human(self, capsys):
        code, out = run(capsys, "cs", "--tau", "i", "--D", "-4")
        assert "degenerate" in out

    def test_not_fundamental_exits(self, capsys):
        with pytest.raises(SystemExit):
            main(["cs", "--tau", "2i", "--D", "-5"])


class TestExamples:
    def test_all_sections_pass(self, capsys):
        code, out = run(capsys, "examples", "--order", "12")
        assert code == 0
        assert "overall: 3/3 sections pass" in out
        assert "FAIL" not in out

    def test_relaxed_settings(self, capsys):
        code, out = run(capsys, "examples", "--order", "5", "--prec", "64")
        assert code == 0


class TestConfig:
    def test_bad_order(self):
        with pytest.raises(SystemExit):
            main(["series", "euler", "--order", "0"])

    def test_bad_prec(self):
        with pytest.raises(SystemExit):
            main(["eval", "eta", "--z", "i", "--prec", "32"])

    def test_cap_below_order(self):
        with pytest.raises(SystemExit):
            main(["bracket", "size", "--order", "50", "--cap", "30"])

    def test_env_overrides(self, capsys, monkeypatch):
        monkeypatch.setenv("HOOKLAB_ORDER", "7")
        monkeypatch.setenv("HOOKLAB_OUTPUT", "json")
        code, out = run(capsys, "series", "euler")
        obj = json.loads(out)
        assert obj["order"] == 7

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HOOKLAB_ORDER", "7")
        code, out = run(capsys, "series", "euler", "--order", "3",
                        "--output", "json")
        assert json.loads(out)["order"] == 3

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
