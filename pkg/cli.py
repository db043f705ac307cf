"""
=================================================================
🖥️ PT 분리 판정 툴킷 - 명령줄 인터페이스 (cli.py)
=================================================================

📋 명령:
- separate --method {pt,prefix,suffix} [--evidence] F1 F2
- is-pt F
- oracle [--max-n N] F1 F2
- witness [-n N] F1 F2
- gen-sat CNF OUT_PREFIX
- forest WORD...
- same-content [--len-bound K] F1 F2
- check-corpus DIR [--max-n N] [--export FILE]

🔁 --method suffix --evidence 의 올가미는 원래 언어 기준의 왼쪽 무한 단어 `(순환)^ω 줄기` 로 출력합니다.

⚡ 종료 코드: 0 = 긍정 (분리 가능 / PT / 증인 발견 …), 1 = 부정, 2 = 사용법 / 파싱 / 계약 오류
   보고서는 stdout, 로그와 오류 메시지는 stderr 로만 나갑니다.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from automaton_manager import content, format_alphabet, format_word, parse_word, product, reverse, shortest_word
from config import APP_CONFIG, CLI_CONFIG
from data_manager import export_table, load_automaton, load_dimacs, save_automaton
from errors import SeparationError
from forest_manager import height_bound, ramsey_factorization
from hardness_manager import same_content_witness, sat_reduction
from oracle_manager import oracle_pt_separable
from pattern_manager import pattern_witness
from prefix_manager import closure_buchi, find_lasso, prefix_separable, suffix_separable
from report_manager import corpus_pairs, cross_check, format_cross_check, load_corpus_dir, summarize
from separation_manager import is_piecewise_testable, pt_separable, separation_evidence
from utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_YES = CLI_CONFIG["exit_affirmative"]
EXIT_NO = CLI_CONFIG["exit_negative"]
EXIT_ERROR = CLI_CONFIG["exit_error"]


def _emit(lines: List[str]) -> None:
    for line in lines:
        print(line)


def _verdict(yes: bool, positive: str, negative: str) -> int:
    print(positive if yes else negative)
    return EXIT_YES if yes else EXIT_NO


# ====================================
# 🧩 명령 처리기
# ====================================

def _cmd_separate(args) -> int:
    a1 = load_automaton(args.file1)
    a2 = load_automaton(args.file2)

    if args.method == "pt":
        separable = pt_separable(a1, a2)
        code = _verdict(separable, "SEPARABLE", "NOT_SEPARABLE")
        if args.evidence and not separable:
            _emit(separation_evidence(a1, a2).pattern.lines())
        return code

    if args.method == "prefix":
        separable = prefix_separable(a1, a2)
    else:
        separable = suffix_separable(a1, a2)
        a1, a2 = reverse(a1), reverse(a2)
    code = _verdict(separable, "SEPARABLE", "NOT_SEPARABLE")
    if args.evidence and not separable:
        common = shortest_word(product(a1, a2))
        if common is not None:
            shown = common if args.method == "prefix" else tuple(reversed(common))
            print(f"common: {format_word(shown)}")
        else:
            stem, cycle = find_lasso(closure_buchi(a1), closure_buchi(a2))
            if args.method == "prefix":
                print(f"lasso: {format_word(stem)} ({format_word(cycle)})^ω")
            else:
                # 왼쪽으로 무한한 단어: 거꾸로 읽은 순환이 앞쪽으로 반복된 뒤 거꾸로 읽은 줄기
                mirrored_cycle = format_word(tuple(reversed(cycle)))
                mirrored_stem = format_word(tuple(reversed(stem)))
                print(f"lasso: ({mirrored_cycle})^ω {mirrored_stem}")
    return code


def _cmd_is_pt(args) -> int:
    d = load_automaton(args.file)
    return _verdict(is_piecewise_testable(d), "PIECEWISE_TESTABLE", "NOT_PIECEWISE_TESTABLE")


def _cmd_oracle(args) -> int:
    verdict = oracle_pt_separable(load_automaton(args.file1), load_automaton(args.file2), args.max_n)
    print(verdict.describe())
    if verdict.common_profile is not None:
        print(f"profile: {verdict.common_profile.describe()}")
    return EXIT_YES if verdict.separable else EXIT_NO


def _cmd_witness(args) -> int:
    a1 = load_automaton(args.file1)
    a2 = load_automaton(args.file2)
    if pt_separable(a1, a2):
        print("SEPARABLE")
        return EXIT_NO

    evidence = separation_evidence(a1, a2)
    left, right = evidence.witness_words(args.n)
    _emit(evidence.pattern.lines())
    print(f"pattern_word: {format_word(pattern_witness(evidence.pattern, args.n))}")
    print(f"left: {format_word(left)}")
    print(f"right: {format_word(right)}")
    return EXIT_YES


def _cmd_gen_sat(args) -> int:
    a1, a2 = sat_reduction(load_dimacs(args.cnf))
    folder = os.path.dirname(os.path.abspath(args.out_prefix))
    os.makedirs(folder, exist_ok=True)
    for suffix, a in ((".A1.aut", a1), (".A2.aut", a2)):
        path = f"{args.out_prefix}{suffix}"
        save_automaton(a, path)
        print(path)
    return EXIT_YES


def _cmd_forest(args) -> int:
    word = parse_word(" ".join(args.word)) if len(args.word) > 1 else parse_word(args.word[0])
    tree = ramsey_factorization(word)
    _emit(tree.render())
    print(f"height: {tree.height} (bound {height_bound(word)})")
    return EXIT_YES


def _cmd_same_content(args) -> int:
    a1 = load_automaton(args.file1)
    a2 = load_automaton(args.file2)
    print("# exponential search over accepted words (path contents, not loops)")
    result = same_content_witness(a1, a2, args.len_bound)
    if result.pair is None:
        print("NONE")
        return EXIT_NO
    u, v = result.pair
    print("FOUND")
    print(f"content: {format_alphabet(content(u))}")
    print(f"left: {format_word(u)}")
    print(f"right: {format_word(v)}")
    return EXIT_YES


def _cmd_check_corpus(args) -> int:
    corpus = load_corpus_dir(args.dir)
    table = cross_check(corpus_pairs(corpus), args.max_n)
    _emit(format_cross_check(table))
    if args.export:
        export_table(table, args.export)
    return EXIT_YES if summarize(table)["inconsistent"] == 0 else EXIT_NO


# ====================================
# 🔧 인자 파서
# ====================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=APP_CONFIG["name"],
        description="Decide separability of regular languages by piecewise testable languages",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG 로그를 stderr로 출력")
    commands = parser.add_subparsers(dest="command", required=True)

    separate = commands.add_parser("separate", help="두 오토마톤 언어의 분리 가능성 판정")
    separate.add_argument("--method", choices=("pt", "prefix", "suffix"), default="pt")
    separate.add_argument("--evidence", action="store_true", help="분리 불가일 때 증거 출력")
    separate.add_argument("file1")
    separate.add_argument("file2")
    separate.set_defaults(handler=_cmd_separate)

    is_pt = commands.add_parser("is-pt", help="DFA가 PT 언어를 인식하는지 판정")
    is_pt.add_argument("file")
    is_pt.set_defaults(handler=_cmd_is_pt)

    oracle = commands.add_parser("oracle", help="부분단어 프로파일 브루트포스 오라클")
    oracle.add_argument("--max-n", type=int, default=None, dest="max_n")
    oracle.add_argument("file1")
    oracle.add_argument("file2")
    oracle.set_defaults(handler=_cmd_oracle)

    witness = commands.add_parser("witness", help="분리 불가 증인 단어 v_n ∼n w_n 출력")
    witness.add_argument("-n", type=int, default=2)
    witness.add_argument("file1")
    witness.add_argument("file2")
    witness.set_defaults(handler=_cmd_witness)

    gen_sat = commands.add_parser("gen-sat", help="3-CNF를 같은 내용 문제의 두 DFA로 환원")
    gen_sat.add_argument("cnf")
    gen_sat.add_argument("out_prefix")
    gen_sat.set_defaults(handler=_cmd_gen_sat)

    forest = commands.add_parser("forest", help="내용 사상의 Ramsey 인수분해 트리")
    forest.add_argument("word", nargs="+")
    forest.set_defaults(handler=_cmd_forest)

    same = commands.add_parser("same-content", help="c(u) = c(v) 인 수락 단어 쌍 완전 탐색")
    same.add_argument("--len-bound", type=int, default=None, dest="len_bound")
    same.add_argument("file1")
    same.add_argument("file2")
    same.set_defaults(handler=_cmd_same_content)

    check = commands.add_parser("check-corpus", help="폴더의 모든 쌍에 대해 판정기와 오라클 교차검증")
    check.add_argument("dir")
    check.add_argument("--max-n", type=int, default=None, dest="max_n")
    check.add_argument("--export", default=None, help=".csv / .json / .xlsx 보고서 경로")
    check.set_defaults(handler=_cmd_check_corpus)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging("DEBUG" if args.verbose else None)
    try:
        return args.handler(args)
    except (SeparationError, OSError) as e:
        logger.debug(f"명령 실패: {args.command}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
