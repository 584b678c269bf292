import subprocess
import sys

import pydot
import pytest

from varnamap import automata
from varnamap.cli import main
from varnamap.metric import DistanceMatrix, DistancePair
from varnamap.mlanguage import bundled_lexicon_path


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("MFA_LEXICON", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_distance_trace(capsys):
    code, out, _ = run(capsys, "distance", "kavitā")
    lines = out.splitlines()
    assert code == 0
    assert lines[-1] == "kavitā 39 17"
    assert lines[1].split() == ["k", "13", "1", "k", "13", "1"]
    assert lines[3].split() == ["v", "11", "5.5", "kav", "23", "5.5"]


@pytest.mark.parametrize("word, last", [("dīg", "dīg 31 13"), ("kaavya", "kāvya 27 10"), ("diirgha", "dīrgha 41 13")])
def test_distance_final_line(capsys, word, last):
    assert run(capsys, "distance", word)[1].splitlines()[-1] == last


def test_distance_csv(capsys):
    out = run(capsys, "distance", "kavi", "--format", "csv")[1]
    assert out.splitlines()[0] == "input,row,col,state,dx,dy"
    assert out.splitlines()[-1] == ",,,kavi,27,8"


def test_distance_errors(capsys):
    assert run(capsys, "distance", "")[0] == 1
    code, _, err = run(capsys, "distance", "kaxq")
    assert code == 2 and "position 2" in err
    assert run(capsys, "distance", "ḥa")[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["matrix", "--format", "xml"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["alphabet", "--theme", "poetry"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["alphabet", "--theme", "high", "--core", "--threshold", "2"])
    assert info.value.code == 1
    assert run(capsys, "matrix")[0] == 1


def test_matrix_table(capsys):
    code, out, _ = run(capsys, "matrix", "--theme", "poetry")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["kavi", "kavitā", "kāvya", "kavana", "Row", "Sum"]
    assert lines[2].split() == ["kavitā", "12,9", "0,0", "12,7", "8,6", "32,22"]


def test_matrix_exclude_csv_round_trip(capsys):
    out = run(capsys, "matrix", "--theme", "poetry", "--exclude", "kavana", "--format", "csv")[1]
    matrix = DistanceMatrix.from_csv(out)
    assert list(matrix.row_sums) == [DistancePair.of(12, 11), DistancePair.of(24, 16), DistancePair.of(12, 9)]


def test_matrix_out_file(capsys, tmp_path):
    target = tmp_path / "m.csv"
    code, out, _ = run(capsys, "matrix", "--theme", "dirgha", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert DistanceMatrix.from_csv(target.read_text(encoding="utf-8")).words[0] == "dīrgha"


def test_unknown_theme(capsys):
    assert run(capsys, "matrix", "--theme", "nope")[0] == 2


def test_central(capsys):
    lines = run(capsys, "central", "--theme", "poetry")[1].splitlines()
    assert lines[1].split() == ["1", "kavitā", "32,22", "54"]
    assert lines[2].split()[:2] == ["1", "kāvya"]
    lines = run(capsys, "central", "--theme", "poetry", "--exclude", "kavana")[1].splitlines()
    assert lines[1].split() == ["1", "kāvya", "12,9", "21"]
    lines = run(capsys, "central", "--theme", "poetry", "--exclude", "kavana", "--exclude", "kavitā",
                "--exclude", "kāvya")[1].splitlines()
    assert lines[1].split() == ["1", "kavi", "0,0", "0"]


def test_alphabet(capsys):
    assert run(capsys, "alphabet", "--theme", "poetry", "--extended")[1] == "a, i, k, n, t, v, y, ā\n"
    assert run(capsys, "alphabet", "--theme", "poetry", "--core")[1] == "a, k, v\n"
    out = run(capsys, "alphabet", "--theme", "high", "--core", "--indic", "--threshold", "0.5")[1]
    assert {"u", "c"} <= set(out.strip().split(", "))


def test_membership(capsys):
    out = run(capsys, "membership", "--theme", "poetry", "kavita")[1]
    assert "accepted: false" in out and "nearest member (map): kavitā" in out


def test_mfa_accept(capsys):
    assert run(capsys, "mfa", "accept", "--theme", "poetry", "kavi") == (0, "true\n", "")
    assert run(capsys, "mfa", "accept", "--theme", "poetry", "kav")[:2] == (0, "false\n")


def test_mfa_enumerate(capsys):
    out = run(capsys, "mfa", "enumerate", "--theme", "kinship", "--max-len", "8")[1]
    assert out.split() == ["bhrātā", "duhitā", "mātā", "pitā"]
    out = run(capsys, "mfa", "enumerate", "--theme", "poetry", "--stage", "trie")[1]
    assert len(out.split()) == 4


def test_mfa_grammar(capsys):
    plain = run(capsys, "mfa", "export-grammar", "--theme", "poetry")[1].splitlines()
    assert plain[:2] == ["Q0 -> k Q1", "Q1 -> a Q2"]
    compressed = run(capsys, "mfa", "export-grammar", "--theme", "poetry", "--compress")[1]
    assert "-> tā" in compressed
    merged = run(capsys, "mfa", "export-grammar", "--theme", "kinship", "--stage", "merged")[1]
    assert merged.startswith("Q0 ->")


def test_mfa_dot(capsys):
    out = run(capsys, "mfa", "export-dot", "--theme", "poetry", "--stage", "trie")[1]
    (graph,) = pydot.graph_from_dot_data(out)
    assert [n.get_shape() for n in graph.get_nodes()].count("doublecircle") == 4


def test_mfa_files(capsys, tmp_path):
    path = tmp_path / "poetry.json"
    code, out, _ = run(capsys, "mfa", "build", "--theme", "poetry", "--out", str(path))
    assert code == 0 and "states: 11" in out
    assert automata.accepts(automata.load(path), ["k", "a", "v", "i"])
    saved = tmp_path / "saved.json"
    assert run(capsys, "mfa", "save", "--theme", "poetry", "--out", str(saved))[0] == 0
    assert automata.load(saved) == automata.load(path)
    assert run(capsys, "mfa", "load", "--automaton", str(saved))[1] == out
    assert run(capsys, "mfa", "accept", "--automaton", str(saved), "kavana")[1] == "true\n"
    out = run(capsys, "mfa", "enumerate", "--automaton", str(saved), "--max-len", "6")[1]
    assert len(out.split()) == 4


def test_mfa_errors(capsys, tmp_path):
    assert run(capsys, "mfa", "load", "--automaton", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert run(capsys, "mfa", "load", "--automaton", str(bad))[0] == 2
    assert run(capsys, "mfa", "save", "--theme", "poetry")[0] == 1
    assert run(capsys, "mfa", "accept", "kavi")[0] == 1
    assert run(capsys, "mfa", "build", "--theme", "poetry", "--out", str(tmp_path / "no" / "x.json"))[0] == 3


def test_baselines(capsys):
    assert run(capsys, "baseline", "soundex", "Robert")[1] == "R163\n"
    assert run(capsys, "baseline", "levenshtein", "kavi", "kāvya")[1] == "3\n"
    assert run(capsys, "baseline", "levenshtein", "kaavya", "kāvya")[1] == "0\n"
    assert run(capsys, "baseline", "soundex", "1x")[0] == 2


def test_lexicon_resolution(capsys, tmp_path, monkeypatch):
    own = tmp_path / "mine.tsv"
    own.write_text("t\tgo\tSa\tmember\nt\tgau\tSa\tmember\n", encoding="utf-8")
    assert run(capsys, "alphabet", "--theme", "t", "--extended", "--lexicon", str(own))[1] == "au, g, o\n"
    monkeypatch.setenv("MFA_LEXICON", str(own))
    assert run(capsys, "alphabet", "--theme", "t", "--extended")[1] == "au, g, o\n"
    monkeypatch.delenv("MFA_LEXICON")
    (tmp_path / "lexicon.tsv").write_text("u\tgo\tSa\tmember\n", encoding="utf-8")
    assert run(capsys, "alphabet", "--theme", "u", "--extended")[1] == "g, o\n"
    assert run(capsys, "alphabet", "--theme", "poetry", "--extended")[0] == 2


def test_bad_inputs_exit_codes(capsys, tmp_path):
    assert run(capsys, "matrix", "--theme", "poetry", "--lexicon", str(tmp_path / "none.tsv"))[0] == 3
    broken = tmp_path / "broken.tsv"
    broken.write_text("t\tgo\n", encoding="utf-8")
    assert run(capsys, "matrix", "--theme", "t", "--lexicon", str(broken))[0] == 2
    ext = tmp_path / "ext.tsv"
    ext.write_text("k\t13\t1\tconsonant\tguttural\ttenuis\n", encoding="utf-8")
    assert run(capsys, "distance", "kavi", "--extensions", str(ext))[0] == 2


def test_extensions_flag(capsys, tmp_path):
    ext = tmp_path / "ext.tsv"
    ext.write_text("q\t13\t1.5\tconsonant\tguttural\ttenuis\n", encoding="utf-8")
    assert run(capsys, "distance", "qa", "--extensions", str(ext))[1].splitlines()[-1] == "qa 19 2"
    assert run(capsys, "distance", "fa")[0] == 0


def test_output_is_deterministic(capsys):
    first = run(capsys, "mfa", "save", "--theme", "middle")[1]
    assert run(capsys, "mfa", "save", "--theme", "middle")[1] == first


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "varnamap", "distance", "dīrgha"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "dīrgha 41 13"
    assert bundled_lexicon_path().is_file()
