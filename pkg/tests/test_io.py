import pytest
from hypothesis import given, settings

from helpers import corpus_embedding, cut_derivations, exprs
from ordanalysis import corpus
from ordanalysis.infinitary import check_coherence, eliminate, eliminate_all
from ordanalysis.infinitary.io import (
    deriv_from_text, deriv_to_text, oexpr_from_sx, oexpr_to_sx,
)
from ordanalysis.sexpr import ParseError, dumps, loads


def round_trip(d):
    text = deriv_to_text(d)
    back = deriv_from_text(text)
    assert deriv_to_text(back) == text
    return back


@pytest.mark.parametrize("name", sorted(corpus.CORPUS))
def test_embeddings_round_trip(name):
    d = corpus_embedding(name)
    back = round_trip(d)
    assert back.height == d.height and back.rank == d.rank
    assert check_coherence(back).ok


@pytest.mark.parametrize("name", ["zero-add", "ti-excluded-middle"])
def test_eliminated_derivations_round_trip(name):
    d = eliminate_all(corpus_embedding(name))
    back = round_trip(d)
    assert back.height == d.height
    assert check_coherence(back, samples=(0, 3)).ok


@pytest.mark.parametrize("name", sorted(corpus.INF_CORPUS))
def test_shipped_files_match_the_corpus(name):
    from pathlib import Path
    path = Path(__file__).resolve().parent.parent / "corpus" / f"{name}.inf"
    text = path.read_text().strip()
    assert text == deriv_to_text(corpus.INF_CORPUS[name]())


@settings(max_examples=30)
@given(cut_derivations())
def test_random_derivations_round_trip(d):
    round_trip(d)
    round_trip(eliminate(d, d.rank - 1))


@given(exprs)
def test_height_expressions_round_trip(e):
    sx = loads(dumps(oexpr_to_sx(e)))
    assert oexpr_from_sx(sx) == e


def test_annotations_are_present():
    text = deriv_to_text(corpus.forall_plus_zero())
    assert ":height" in text and ":rank" in text and ":heightExpr" in text


@pytest.mark.parametrize("bad", [
    "(infderiv)",
    "(proof)",
    '(infderiv (axTrue (seq (= 0 0)) :height "0" (= 0 0)))',
    '(infderiv (frob (seq) :height "0" :rank 0 (= 0 0)))',
    '(infderiv (omega (seq) :height "1" :rank 0 (all x (= x x)) x :heightExpr "0" (gen valid (d 9))))',
])
def test_malformed_files(bad):
    with pytest.raises(ParseError):
        deriv_from_text(bad)
