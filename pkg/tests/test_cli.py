import pytest

from sentbound.cli import EXIT_FORMAT, EXIT_IO, EXIT_OK, main
from sentbound.synthetic import make_corpus, write_corpus


@pytest.fixture(scope="module")
def corpus_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "train.txt"
    write_corpus(make_corpus(120, seed=3), path)
    return path


@pytest.fixture(scope="module")
def model_file(tmp_path_factory, corpus_file):
    path = tmp_path_factory.mktemp("model") / "model.txt"
    rc = main(
        ["train", "--corpus", str(corpus_file), "--model", str(path), "--max-iters", "300"]
    )
    assert rc == EXIT_OK
    return path


def test_train_produces_model(model_file):
    assert model_file.exists()
    assert model_file.read_text().startswith("sentbound-model v1")


def test_train_loglikelihood_logged_non_decreasing(tmp_path, corpus_file, capsys):
    out = tmp_path / "m.txt"
    rc = main(
        ["train", "--corpus", str(corpus_file), "--model", str(out), "--max-iters", "40"]
    )
    assert rc == EXIT_OK
    lls = [
        float(line.split("log-likelihood ")[1].split()[0])
        for line in capsys.readouterr().err.splitlines()
        if line.startswith("iter ")
    ]
    assert len(lls) > 1
    assert all(b >= a - 1e-9 for a, b in zip(lls, lls[1:]))


def test_retrain_byte_identical(tmp_path, corpus_file, model_file):
    again = tmp_path / "again.txt"
    rc = main(
        ["train", "--corpus", str(corpus_file), "--model", str(again), "--max-iters", "300"]
    )
    assert rc == EXIT_OK
    assert again.read_bytes() == model_file.read_bytes()


def test_train_missing_corpus(tmp_path):
    rc = main(
        ["train", "--corpus", str(tmp_path / "nope.txt"), "--model", str(tmp_path / "m")]
    )
    assert rc == EXIT_IO


def test_train_best_with_missing_lexicon_file(tmp_path, corpus_file, capsys):
    rc = main(
        [
            "train", "--corpus", str(corpus_file), "--model", str(tmp_path / "m"),
            "--templates", "best", "--honorifics", str(tmp_path / "missing_lex.txt"),
        ]
    )
    assert rc == EXIT_IO
    assert "missing_lex" in capsys.readouterr().err


def test_segment_line_mode(tmp_path, model_file, capsys):
    inp = tmp_path / "raw.txt"
    inp.write_text("Acme Corp. chairman Dr. Smith resigned yesterday. Who leads Acme Corp. now?\n")
    rc = main(["segment", "--model", str(model_file), "--input", str(inp)])
    assert rc == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2


def test_segment_no_candidates(tmp_path, model_file, capsys):
    inp = tmp_path / "raw.txt"
    inp.write_text("just words no marks\n")
    rc = main(["segment", "--model", str(model_file), "--input", str(inp)])
    assert rc == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 1


def test_segment_offsets_mode_round_trip(tmp_path, model_file, capsys):
    text = "Shares of Globex Inc. fell 2.25 percent. Dr. Chen denied it!"
    inp = tmp_path / "raw.txt"
    inp.write_text(text)
    rc = main(["segment", "--model", str(model_file), "--input", str(inp), "--offsets"])
    assert rc == EXIT_OK
    offsets = [int(x) for x in capsys.readouterr().out.split()]
    data = text.encode()
    pieces, start = [], 0
    for off in offsets:
        pieces.append(data[start : off + 1])
        start = off + 1
    pieces.append(data[start:])
    assert b"".join(pieces) == data


def test_segment_template_mismatch(model_file, tmp_path):
    inp = tmp_path / "raw.txt"
    inp.write_text("Some text.")
    rc = main(
        ["segment", "--model", str(model_file), "--input", str(inp), "--templates", "best"]
    )
    assert rc == EXIT_FORMAT


def test_evaluate_on_training_corpus(corpus_file, model_file, capsys):
    rc = main(["evaluate", "--model", str(model_file), "--corpus", str(corpus_file)])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    kv = dict(
        line.split("=", 1) for line in out.splitlines() if "=" in line and " " not in line
    )
    assert float(kv["accuracy"]) >= float(kv["baseline_token_final"])


def test_induce_abbrevs_example1(tmp_path, capsys):
    corp = tmp_path / "c.txt"
    corp.write_text("ANLP Corp. chairman Dr. Smith resigned.\n")
    out = tmp_path / "abbrevs.txt"
    rc = main(["induce-abbrevs", "--corpus", str(corp), "--output", str(out)])
    assert rc == EXIT_OK
    assert out.read_text() == "Corp.\nDr.\n"


def test_learning_curve_oversized_request(tmp_path, corpus_file, capsys):
    rc = main(
        [
            "learning-curve", "--corpus", str(corpus_file), "--input", str(corpus_file),
            "--sizes", "99999",
        ]
    )
    assert rc == EXIT_FORMAT


def test_learning_curve_runs(tmp_path, corpus_file, capsys):
    eval_file = tmp_path / "eval.txt"
    write_corpus(make_corpus(40, seed=8), eval_file)
    rc = main(
        [
            "learning-curve", "--corpus", str(corpus_file), "--input", str(eval_file),
            "--sizes", "30,120", "--max-iters", "100", "--seed", "7",
        ]
    )
    assert rc == EXIT_OK
    rows = [line.split(",") for line in capsys.readouterr().out.splitlines()]
    assert [r[0] for r in rows] == ["30", "120"]


def test_output_flag_writes_file(tmp_path, model_file, corpus_file):
    out = tmp_path / "report.txt"
    rc = main(
        ["evaluate", "--model", str(model_file), "--corpus", str(corpus_file), "--output", str(out)]
    )
    assert rc == EXIT_OK
    assert "accuracy=" in out.read_text()
