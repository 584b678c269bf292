"""Command-line front end: ``varnamap <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 data error (tokenization,
lexicon, unknown theme, bad automaton file), 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

from . import automata, baselines, mlanguage
from .metric import (
    DistanceMatrix,
    MalformedMatrix,
    central_words,
    distance_matrix,
    format_table,
    word_path,
)
from .phonology import (
    CoordinateCollision,
    DuplicatePhoneme,
    MalformedExtensionLine,
    UnknownPhoneme,
    format_half,
    load_extensions,
)
from .translit import IllegalInitial, UntokenizableInput, normalize, render, tokenize

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3
LEXICON_ENV = "MFA_LEXICON"
DEFAULT_LEXICON = "lexicon.tsv"
STAGES = ("trie", "merged", "dfa", "min")

DATA_ERRORS = (
    UntokenizableInput,
    IllegalInitial,
    UnknownPhoneme,
    DuplicatePhoneme,
    MalformedExtensionLine,
    CoordinateCollision,
    mlanguage.LexiconError,
    mlanguage.UnknownTheme,
    automata.MalformedAutomatonFile,
    automata.EmptyWordList,
    automata.NotDeterministic,
    baselines.NonAlphabeticInput,
    MalformedMatrix,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threshold(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("threshold must lie in (0, 1]")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    data = _Parser(add_help=False)
    data.add_argument("--lexicon", metavar="PATH",
                      help=f"word bank TSV (default: ${LEXICON_ENV}, then ./{DEFAULT_LEXICON}, "
                           "then the bundled sample)")
    data.add_argument("--extensions", metavar="PATH", help="extra phonemes to register on the map")
    data.add_argument("--format", choices=("table", "csv"), default="table")
    data.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    themed = _Parser(add_help=False)
    themed.add_argument("--theme", metavar="ID")
    themed.add_argument("--exclude", metavar="WORD", action="append", default=[],
                        help="drop a member word (repeatable)")

    parser = _Parser(prog="varnamap", description="Phonetic-map distances and word-group automata.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("distance", parents=[data], help="per-prefix distance trace of one word")
    p.add_argument("word")

    sub.add_parser("matrix", parents=[data, themed], help="inter-word distance matrix")
    sub.add_parser("central", parents=[data, themed], help="rank words by row-sum distance")

    p = sub.add_parser("alphabet", parents=[data, themed], help="core or extended alphabet")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--core", action="store_true")
    which.add_argument("--extended", action="store_true")
    p.add_argument("--threshold", type=_threshold,
                   help="derive the core from member frequency instead of the curated core")
    p.add_argument("--indic", action="store_true", help="keep only members attested in Indic languages")

    p = sub.add_parser("membership", parents=[data, themed], help="membership signals for a word")
    p.add_argument("word")

    p = sub.add_parser("mfa", help="word-group automata")
    msub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    source = _Parser(add_help=False)
    source.add_argument("--automaton", metavar="PATH", help="saved automaton file instead of a theme")
    source.add_argument("--stage", choices=STAGES, default="min",
                        help="construction stage to use for a theme (default: min)")
    for action, help_text in (("build", "build and summarize (file written with --out)"),
                              ("save", "write the automaton file to --out"),
                              ("load", "read an automaton file and summarize it"),
                              ("export-dot", "Graphviz DOT"),
                              ("export-grammar", "right-linear grammar")):
        q = msub.add_parser(action, parents=[data, themed, source], help=help_text)
        if action == "export-grammar":
            q.add_argument("--compress", action="store_true",
                           help="fold single-path suffixes into multi-phoneme terminals")
    q = msub.add_parser("accept", parents=[data, themed, source], help="print true or false")
    q.add_argument("word")
    q = msub.add_parser("enumerate", parents=[data, themed, source], help="list accepted words")
    q.add_argument("--max-len", type=_positive, help="default: longest member + 2")

    p = sub.add_parser("baseline", help="Levenshtein and Soundex")
    bsub = p.add_subparsers(dest="method", required=True, parser_class=_Parser)
    q = bsub.add_parser("levenshtein", parents=[data])
    q.add_argument("a")
    q.add_argument("b")
    q = bsub.add_parser("soundex", parents=[data])
    q.add_argument("word")
    return parser


# --- configuration --------------------------------------------------------

def _lexicon_path(args) -> Path | None:
    """Explicit flag, then the environment, then ./lexicon.tsv; None means the bundled sample."""
    if getattr(args, "lexicon", None):
        return Path(args.lexicon)
    if os.environ.get(LEXICON_ENV):
        return Path(os.environ[LEXICON_ENV])
    local = Path(DEFAULT_LEXICON)
    return local if local.is_file() else None


def _check_paths(args) -> None:
    """Fail with an I/O error before doing any work."""
    inputs = []
    if args.command in ("matrix", "central", "alphabet", "membership") or (
            args.command == "mfa" and not getattr(args, "automaton", None)):
        path = _lexicon_path(args)
        if path is not None:
            inputs.append(path)
    for name in ("extensions", "automaton"):
        if getattr(args, name, None):
            inputs.append(Path(getattr(args, name)))
    for path in inputs:
        if not path.is_file():
            raise FileNotFoundError(f"no such file: {path}")
    out = getattr(args, "out", None)
    if out and not Path(out).resolve().parent.is_dir():
        raise FileNotFoundError(f"output directory does not exist: {Path(out).parent}")


def _map(args):
    if getattr(args, "extensions", None):
        return load_extensions(args.extensions)
    return mlanguage.bundled_map()


def _group(args, pmap) -> mlanguage.MLanguage:
    if not args.theme:
        raise UsageError("--theme is required")
    path = _lexicon_path(args) or mlanguage.bundled_lexicon_path()
    entries = mlanguage.load_lexicon(path)
    group = mlanguage.find_theme(mlanguage.group_by_theme(entries, pmap), args.theme)
    if args.exclude:
        group = group.without(args.exclude)
    if not group.members:
        raise automata.EmptyWordList(f"group {group.theme_id!r} has no members left")
    return group


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# --- commands ---------------------------------------------------------------

def cmd_distance(args, pmap) -> str:
    if not args.word.strip():
        raise UsageError("word must not be empty")
    path = word_path(pmap, tokenize(pmap, args.word))
    rows = [["input", "row", "col", "state", "dx", "dy"]]
    for sym, coord, prefix, total in zip(path.seq, path.coords, path.prefixes(), path.cumulative):
        rows.append([sym, format_half(coord.row2), format_half(coord.col2), prefix,
                     format_half(total.dx), format_half(total.dy)])
    word = render(path.seq)
    dx, dy = format_half(path.total.dx), format_half(path.total.dy)
    if args.format == "csv":
        return _csv(rows + [["", "", "", word, dx, dy]])
    return format_table(rows, left_columns=1) + f"{word} {dx} {dy}\n"


def _matrix(args, pmap) -> DistanceMatrix:
    group = _group(args, pmap)
    return distance_matrix(pmap, [m.seq for m in group.members])


def cmd_matrix(args, pmap) -> str:
    matrix = _matrix(args, pmap)
    return matrix.to_csv() if args.format == "csv" else matrix.to_table()


def cmd_central(args, pmap) -> str:
    rows = [["rank", "word", "row sum", "score"]]
    for c in central_words(_matrix(args, pmap)):
        rows.append([str(c.rank), c.word, str(c.row_sum), format_half(c.score)])
    if args.format == "csv":
        return _csv(rows)
    return format_table(rows, left_columns=2)


def cmd_alphabet(args, pmap) -> str:
    group = _group(args, pmap)
    if args.indic:
        group = group.restricted_to(mlanguage.INDIC_CODES)
        if not group.members:
            raise automata.EmptyWordList(f"group {group.theme_id!r} has no Indic members")
    if args.extended:
        ids = group.extended_alphabet
    elif args.threshold is not None:
        ids = mlanguage.core_alphabet_heuristic(group, args.threshold)
    else:
        ids = group.core_alphabet
    return ", ".join(sorted(ids)) + "\n"


def cmd_membership(args, pmap) -> str:
    report = mlanguage.membership_report(_group(args, pmap), args.word, pmap)
    return "\n".join(report.lines()) + "\n"


def _automaton(args, pmap) -> automata.Mfa:
    if args.automaton:
        return automata.load(args.automaton)
    group = _group(args, pmap)
    stage = STAGES.index(args.stage)
    return mlanguage.build_group_mfa(group, merge_suffixes=stage >= 1, determinize=stage >= 2,
                                     minimize=stage >= 3)


def _summary(m: automata.Mfa) -> str:
    n_edges = sum(len(t) for t in m.transitions.values()) + sum(len(t) for t in m.epsilon.values())
    return (f"states: {m.n_states}\n"
            f"accepting: {len(m.accepting)}\n"
            f"edges: {n_edges}\n"
            f"deterministic: {str(m.is_deterministic).lower()}\n"
            f"alphabet: {', '.join(sorted(m.alphabet))}\n"
            f"hash: {automata.structural_hash(m)}\n")


def cmd_mfa(args, pmap) -> str:
    if args.action == "save" and not args.out:
        raise UsageError("mfa save needs --out")
    if args.action == "load" and not args.automaton:
        raise UsageError("mfa load needs --automaton")
    if not args.automaton and not args.theme:
        raise UsageError("give --theme or --automaton")
    m = _automaton(args, pmap)
    if args.action == "build":
        if args.out:
            automata.save(m, args.out)
        return _summary(m)
    if args.action == "save":
        return automata.to_json(m)
    if args.action == "load":
        return _summary(m)
    if args.action == "accept":
        seq = tokenize(pmap, args.word)
        return "true\n" if automata.accepts(m, seq) else "false\n"
    if args.action == "enumerate":
        max_len = args.max_len
        if max_len is None:
            if args.automaton:
                raise UsageError("--max-len is required with --automaton")
            max_len = max(len(mem.seq) for mem in _group(args, pmap).members) + 2
        return "".join(render(w) + "\n" for w in automata.enumerate_words(m, max_len))
    if args.action == "export-dot":
        return automata.export_dot(m, name=args.theme or Path(args.automaton).stem)
    if args.action == "export-grammar":
        if not m.is_deterministic:
            m = automata.determinize(m)
        return "\n".join(automata.export_grammar(m, compress_suffixes=args.compress).rules()) + "\n"
    raise UsageError(f"unknown action {args.action!r}")


def cmd_baseline(args, pmap) -> str:
    if args.method == "levenshtein":
        return f"{baselines.levenshtein(normalize(args.a), normalize(args.b))}\n"
    return baselines.soundex(args.word) + "\n"


COMMANDS = {
    "distance": cmd_distance,
    "matrix": cmd_matrix,
    "central": cmd_central,
    "alphabet": cmd_alphabet,
    "membership": cmd_membership,
    "mfa": cmd_mfa,
    "baseline": cmd_baseline,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_paths(args)
        pmap = _map(args)
        text = COMMANDS[args.command](args, pmap)
        # mfa build saves the automaton itself and still prints its summary
        if getattr(args, "out", None) and not (args.command == "mfa" and args.action == "build"):
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"varnamap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DATA_ERRORS as exc:
        print(f"varnamap: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"varnamap: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
