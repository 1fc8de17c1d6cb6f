from pathlib import Path

import pytest

from reasoner.herbrand import from_extensions
from reasoner.parser import parse_document

DATA_DIR = Path(__file__).parent / "data"

collect_ignore = ["examples"]


def load(name):
    return parse_document((DATA_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def penguin_w():
    """Weighted logician KB: L <= S [3], S <= E [2], L <= !E [1], N : L [inf]."""
    return load("penguin.kb")


@pytest.fixture
def penguin():
    """Defeasible logician KB with hints (1, 2, 3)."""
    return load("penguin_defeasible.kb")


@pytest.fixture
def mono():
    return load("mono.kb")


@pytest.fixture
def mono_prime():
    return load("mono_prime.kb")


@pytest.fixture
def single_dci():
    return load("single_dci.kb")


@pytest.fixture
def world():
    """world(kb, L=True, S=False, ...) for single-individual vocabularies, by name prefix."""
    def make(kb, **flags):
        vocab = kb.vocab
        (individual,) = vocab.individual_names
        concepts = {}
        for name in vocab.concept_names:
            for key, value in flags.items():
                if name.startswith(key) and value:
                    concepts[name] = {individual}
        return from_extensions(vocab, concepts)
    return make
