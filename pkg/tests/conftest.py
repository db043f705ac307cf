import os

import pytest

from config import DATA_CONFIG
from data_manager import load_automaton


@pytest.fixture(scope="session")
def corpus_dir():
    return DATA_CONFIG["corpus_folder"]


@pytest.fixture(scope="session")
def corpus(corpus_dir):
    """corpus("ab_plus") → corpus/ab_plus.aut 오토마톤"""

    def load(name):
        return load_automaton(os.path.join(corpus_dir, f"{name}{DATA_CONFIG['aut_suffix']}"))

    return load
