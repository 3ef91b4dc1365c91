import pytest

from sentbound.corpus import corpus_from_sentences, label_candidates
from sentbound.features import default_lexicons
from sentbound.synthetic import make_corpus

EXAMPLE1 = "ANLP Corp. chairman Dr. Smith resigned."
DC_SENTENCE = "He lives in Washington, D.C."


@pytest.fixture
def example1_corpus():
    return corpus_from_sentences([EXAMPLE1])


@pytest.fixture
def example1_labeled(example1_corpus):
    return label_candidates(example1_corpus)


@pytest.fixture
def dc_corpus():
    return corpus_from_sentences([DC_SENTENCE])


@pytest.fixture
def two_sentence_corpus():
    return corpus_from_sentences([EXAMPLE1, DC_SENTENCE])


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture(scope="session")
def synthetic_train():
    return make_corpus(500, seed=11)


@pytest.fixture(scope="session")
def synthetic_eval():
    return make_corpus(200, seed=977)
