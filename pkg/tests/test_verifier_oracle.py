import pytest

from classification.classifier import Complexity, classify
from core.binary_problem import BinaryProblem, Color, is_restriction, problems_up_to
from core.exceptions import LabelingError, ResourceCapError
from solvers.dispatch import solve
from trees.colored_tree import all_labeled, edge_key
from trees.generators import gen_complete_biregular, gen_path, gen_random_biregular
from verification.oracle import OracleMode, brute_force_solve, standard_witness, witness_center
from verification.verifier import verify_labeling, violations_document

SINKLESS = BinaryProblem(3, 2, '1110', '010')


def test_valid_labeling_has_no_violations(tiny_path):
    x = {edge_key(1, 2): 1, edge_key(2, 3): 0}
    assert verify_labeling(tiny_path, SINKLESS, x) == []


def test_violations_only_at_constrained_nodes(tiny_path):
    violations = verify_labeling(tiny_path, SINKLESS, all_labeled(tiny_path, 1))
    assert [(v.node_id, v.color, v.observed) for v in violations] == [(2, Color.BLACK, 2)]
    document = violations_document(violations)
    assert document == {
        'valid': False,
        'violations': [{'node': 2, 'color': 'black', 'expected': '010', 'observed': 2}],
    }


@pytest.mark.parametrize('labeling', [
    {(1, 2): 1},
    {(1, 2): 1, (2, 3): 0, (3, 4): 1},
    {(1, 2): 1, (2, 3): 5},
])
def test_malformed_labelings(tiny_path, labeling):
    with pytest.raises(LabelingError):
        verify_labeling(tiny_path, SINKLESS, labeling)


# Oracolo

def test_count_on_path(tiny_path):
    result = brute_force_solve(tiny_path, SINKLESS, OracleMode.COUNT)
    assert result.count == 2
    assert result.edges == 2
    assert result.to_document(tiny_path) == {'mode': 'count', 'edges': 2, 'count': 2}


def test_first_solution_is_lexicographic(tiny_path):
    result = brute_force_solve(tiny_path, SINKLESS, OracleMode.FIRST)
    assert result.count is None
    assert result.solutions == [{(1, 2): 0, (2, 3): 1}]
    document = result.to_document(tiny_path)
    assert document['solution'] == {'labels': [{'edge': [1, 2], 'x': 0}, {'edge': [2, 3], 'x': 1}]}


def test_all_solutions(tiny_path):
    result = brute_force_solve(tiny_path, SINKLESS, 'all')
    assert result.count == 2
    assert result.solutions == [{(1, 2): 0, (2, 3): 1}, {(1, 2): 1, (2, 3): 0}]
    assert len(result.to_document(tiny_path)['solutions']) == 2


def test_star_count():
    star = gen_complete_biregular(4, 2, 1)
    assert brute_force_solve(star, BinaryProblem(4, 2, '00100', '111')).count == 6


def test_unsolvable_examples():
    contradiction = BinaryProblem(3, 2, '0111', '100')
    assert brute_force_solve(standard_witness(contradiction), contradiction).count == 0
    assert brute_force_solve(gen_path(3, Color.BLACK), BinaryProblem(2, 2, '000', '111')).count == 0


def test_edge_cap():
    tree = gen_complete_biregular(3, 3, 2)
    with pytest.raises(ResourceCapError):
        brute_force_solve(tree, SINKLESS, max_edges=5)


def test_witness_center():
    assert witness_center(BinaryProblem(2, 2, '100', '011')) is Color.BLACK
    assert witness_center(BinaryProblem(3, 2, '0111', '100')) is Color.WHITE
    assert witness_center(SINKLESS) is Color.WHITE
    witness = standard_witness(BinaryProblem(2, 2, '100', '011'))
    assert witness.color(1) is Color.BLACK
    assert witness.n == 5


def test_witness_separates_solvable_from_unsolvable():
    """Sul testimone i problemi irrisolvibili non hanno soluzioni, gli altri sì"""
    for p in problems_up_to(3, 3):
        count = brute_force_solve(standard_witness(p), p).count
        if classify(p).complexity is Complexity.UNSOLVABLE:
            assert count == 0, p
        else:
            assert count > 0, p


def test_forced_violation_at_center():
    tree = gen_complete_biregular(3, 2, 2)
    violations = verify_labeling(tree, BinaryProblem(3, 2, '0111', '100'), all_labeled(tree, 0))
    assert [(v.node_id, v.color) for v in violations] == [(1, Color.WHITE)]
    assert verify_labeling(gen_path(6), BinaryProblem(2, 2, '111', '111'), all_labeled(gen_path(6), 1)) == []


def test_sinkless_on_path_rejects_all_zero():
    path = gen_path(5)
    violations = verify_labeling(path, SINKLESS, all_labeled(path, 0))
    assert {v.color for v in violations} == {Color.BLACK}
    assert [v.node_id for v in violations] == [2, 4]


@pytest.mark.slow
def test_solutions_verify_on_witness_and_random_trees():
    for p in problems_up_to(3, 3):
        if classify(p).complexity is Complexity.UNSOLVABLE:
            continue
        trees = [standard_witness(p)] + [gen_random_biregular(p.d, p.delta, 200, seed=seed) for seed in range(5)]
        for tree in trees:
            assert verify_labeling(tree, p, solve(p, tree)) == [], p


@pytest.mark.slow
def test_restriction_solutions_solve_relaxation():
    for d, delta in ((2, 2), (2, 3), (3, 2), (3, 3)):
        tree = gen_complete_biregular(d, delta, 2)
        problems = [p for p in problems_up_to(3, 3) if (p.d, p.delta) == (d, delta)]
        solutions = {
            p: {frozenset(x.items()) for x in brute_force_solve(tree, p, OracleMode.ALL).solutions}
            for p in problems
        }
        for sub in problems:
            for sup in problems:
                if is_restriction(sub, sup):
                    assert solutions[sub] <= solutions[sup], (sub, sup)
