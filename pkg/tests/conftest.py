"""
Configurazione condivisa della suite: src/ nel path come negli script,
ambiente dev senza file di log.
"""

import os
import sys

os.environ.setdefault('ENV', 'dev')
os.environ['ARBOR_FILE_LOGGING'] = '0'
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from core.binary_problem import BinaryProblem, Color
from core.problem_catalog import get_named_problem
from trees.colored_tree import ColoredTree
from trees.generators import gen_caterpillar, gen_complete_biregular, gen_path, gen_random_biregular


@pytest.fixture
def sinkless_orientation() -> BinaryProblem:
    return get_named_problem('sinkless_orientation')


@pytest.fixture
def regular_matching() -> BinaryProblem:
    return get_named_problem('regular_matching')


@pytest.fixture
def two_coloring() -> BinaryProblem:
    return get_named_problem('two_coloring')


@pytest.fixture
def contradiction() -> BinaryProblem:
    return get_named_problem('contradiction')


@pytest.fixture
def small_random_tree() -> ColoredTree:
    return gen_random_biregular(3, 2, 200, seed=7)


@pytest.fixture
def complete_33() -> ColoredTree:
    return gen_complete_biregular(3, 3, 2)


@pytest.fixture
def caterpillar() -> ColoredTree:
    return gen_caterpillar(3, 50)


@pytest.fixture
def tiny_path() -> ColoredTree:
    """bianco - nero - bianco"""
    return gen_path(3, Color.WHITE)


@pytest.fixture
def tree_file(tmp_path, complete_33):
    """Albero biregolare (3,3) di raggio 2 scritto su file"""
    import json

    path = tmp_path / 'tree.json'
    path.write_text(json.dumps(complete_33.to_document()))
    return path
