import logging
import os
import re

import pandas as pd
import pytest

import cli
from automaton_manager import accepts, parse_word
from config import HARDNESS_CONFIG
from data_manager import load_automaton, write_dimacs
from hardness_manager import Cnf3
from oracle_manager import subword_profile


@pytest.fixture
def run(capsys):
    """cli.main 실행 → (종료 코드, stdout 줄 목록, stderr)"""

    def invoke(*argv):
        code = cli.main([str(arg) for arg in argv])
        captured = capsys.readouterr()
        return code, captured.out.splitlines(), captured.err

    yield invoke
    logging.getLogger().setLevel(logging.WARNING)


@pytest.fixture
def aut(corpus_dir):
    return lambda name: os.path.join(corpus_dir, f"{name}.aut")


class TestSeparate:
    def test_pt_not_separable(self, run, aut):
        code, out, _ = run("separate", "--method", "pt", aut("ab_plus"), aut("ba_plus"))
        assert code == 1
        assert out == ["NOT_SEPARABLE"]

    def test_pt_evidence(self, run, aut):
        code, out, _ = run("separate", "--evidence", aut("ab_plus"), aut("ba_plus"))
        assert code == 1
        assert out == ["NOT_SEPARABLE", "u: ε", "B: a b", "u: ε"]

    def test_pt_separable(self, run, aut):
        code, out, _ = run("separate", aut("a_star"), aut("b_plus"))
        assert (code, out) == (0, ["SEPARABLE"])

    def test_prefix(self, run, aut):
        code, out, _ = run("separate", "--method", "prefix", aut("aAstar"), aut("bAstar"))
        assert (code, out) == (0, ["SEPARABLE"])

    def test_prefix_lasso_evidence(self, run, aut):
        code, out, _ = run("separate", "--method", "prefix", "--evidence", aut("a_star"), aut("a_star_b"))
        assert code == 1
        assert out[0] == "NOT_SEPARABLE"
        assert out[1].startswith("common: ") or out[1].startswith("lasso: ")

    def test_suffix(self, run, aut):
        code, out, _ = run("separate", "--method", "suffix", aut("aAstar"), aut("bAstar"))
        assert (code, out) == (1, ["NOT_SEPARABLE"])

    def test_suffix_lasso_is_mirrored(self, run, tmp_path):
        # a*b 와 b a+ b 는 공통 단어가 없지만 왼쪽 무한 단어 …aaab 를 공유
        left = tmp_path / "astar_b.aut"
        left.write_text("alphabet: a b\nstates: 2\ninitial: 0\nfinal: 1\ntrans: 0 a 0\ntrans: 0 b 1\n", encoding="utf-8")
        right = tmp_path / "b_aplus_b.aut"
        right.write_text(
            "alphabet: a b\nstates: 4\ninitial: 0\nfinal: 3\n"
            "trans: 0 b 1\ntrans: 1 a 2\ntrans: 2 a 2\ntrans: 2 b 3\n",
            encoding="utf-8",
        )
        code, out, _ = run("separate", "--method", "suffix", "--evidence", left, right)
        assert code == 1
        assert out[0] == "NOT_SEPARABLE"
        match = re.fullmatch(r"lasso: \((.+)\)\^ω (.+)", out[1])
        assert match is not None
        assert parse_word(match.group(1)) == ("a",)
        assert parse_word(match.group(2)) in (("b",), ("a", "b"))

    def test_missing_file(self, run, aut, tmp_path):
        code, out, err = run("separate", aut("ab_plus"), tmp_path / "missing.aut")
        assert code == 2
        assert out == []
        assert "error:" in err

    def test_unknown_method(self, aut):
        with pytest.raises(SystemExit) as info:
            cli.main(["separate", "--method", "magic", aut("ab_plus"), aut("ba_plus")])
        assert info.value.code == 2


class TestIsPt:
    def test_piecewise_testable(self, run, aut):
        assert run("is-pt", aut("astar_bstar"))[:2] == (0, ["PIECEWISE_TESTABLE"])

    def test_not_piecewise_testable(self, run, aut):
        assert run("is-pt", aut("aa_star"))[:2] == (1, ["NOT_PIECEWISE_TESTABLE"])

    def test_nfa_rejected(self, run, tmp_path):
        path = tmp_path / "nfa.aut"
        path.write_text("alphabet: a\nstates: 2\ninitial: 0\nfinal: 1\ntrans: 0 a 0\ntrans: 0 a 1\n", encoding="utf-8")
        code, _, err = run("is-pt", path)
        assert code == 2
        assert "error:" in err

    def test_parse_error_reports_line(self, run, tmp_path):
        path = tmp_path / "bad.aut"
        path.write_text("alphabet: a\nstates: 1\ninitial: 0\nfinal: 0\ntrans: 0 z 0\n", encoding="utf-8")
        code, _, err = run("is-pt", path)
        assert code == 2
        assert "line 5" in err


class TestOracleAndWitness:
    def test_oracle_common_class(self, run, aut):
        code, out, _ = run("oracle", "--max-n", 4, aut("ab_plus"), aut("ba_plus"))
        assert code == 1
        assert out[0] == "COMMON_CLASS up to n=4"
        assert out[1].startswith("profile: ")

    def test_oracle_separable(self, run, aut):
        code, out, _ = run("oracle", aut("a_star"), aut("b_plus"))
        assert (code, out) == (0, ["SEPARABLE at n=1"])

    def test_witness(self, run, aut):
        code, out, _ = run("witness", "-n", 2, aut("ab_plus"), aut("ba_plus"))
        assert code == 0
        assert out[:4] == ["u: ε", "B: a b", "u: ε", "pattern_word: a b a b"]
        left = parse_word(out[4].removeprefix("left: "))
        right = parse_word(out[5].removeprefix("right: "))
        assert accepts(load_automaton(aut("ab_plus")), left)
        assert accepts(load_automaton(aut("ba_plus")), right)
        assert subword_profile(left, 2) == subword_profile(right, 2)

    def test_witness_when_separable(self, run, aut):
        assert run("witness", aut("a_star"), aut("b_plus"))[:2] == (1, ["SEPARABLE"])


class TestHardnessCommands:
    def test_gen_sat_then_same_content(self, run, corpus_dir, tmp_path):
        prefix = tmp_path / "gen" / "sat"
        code, out, _ = run("gen-sat", os.path.join(corpus_dir, "sat_small.cnf"), prefix)
        assert code == 0
        assert out == [f"{prefix}.A1.aut", f"{prefix}.A2.aut"]
        assert load_automaton(out[0]).num_states == 4
        assert load_automaton(out[1]).num_states == 7

        code, found, _ = run("same-content", *out)
        assert code == 0
        assert found[0].startswith("# exponential search")
        assert found[1] == "FOUND"
        assert [line.split(":")[0] for line in found[2:]] == ["content", "left", "right"]

    def test_unsat_has_no_pair(self, run, corpus_dir, tmp_path):
        prefix = tmp_path / "unsat"
        _, out, _ = run("gen-sat", os.path.join(corpus_dir, "unsat_small.cnf"), prefix)
        code, lines, _ = run("same-content", *out)
        assert code == 1
        assert lines[-1] == "NONE"

    def test_large_formula_reports_bound(self, run, tmp_path, monkeypatch):
        monkeypatch.setitem(HARDNESS_CONFIG, "max_nodes", 20_000)
        cnf = tmp_path / "wide.cnf"
        cnf.write_text(write_dimacs(Cnf3(num_vars=1200, clauses=tuple((v,) for v in range(1, 1201)))), encoding="utf-8")
        _, out, _ = run("gen-sat", cnf, tmp_path / "wide")
        code, lines, err = run("same-content", "--len-bound", 2400, *out)
        assert code == 2
        assert "error:" in err
        assert lines == ["# exponential search over accepted words (path contents, not loops)"]


class TestForest:
    def test_two_letters(self, run):
        code, out, _ = run("forest", "ab")
        assert code == 0
        assert out == ["a b", "  a", "  b", "height: 1 (bound 12)"]

    def test_token_arguments(self, run):
        code, out, _ = run("forest", "x1", "x2")
        assert code == 0
        assert out[0] == "x1 x2"

    def test_empty_word(self, run):
        assert run("forest", "")[0] == 2


class TestCheckCorpus:
    def test_corpus_with_export(self, run, corpus_dir, tmp_path):
        report = tmp_path / "report.csv"
        code, out, _ = run("check-corpus", corpus_dir, "--max-n", 3, "--export", report)
        assert code == 0
        assert out[0].split("\t")[0] == "left"
        assert out[-1].startswith("pairs=78 ")
        assert out[-1].endswith("inconsistent=0")
        assert len(pd.read_csv(report)) == 78

    def test_verbose_keeps_stdout_clean(self, run, aut):
        code, out, _ = run("-v", "separate", aut("ab_plus"), aut("ba_plus"))
        assert (code, out) == (1, ["NOT_SEPARABLE"])
