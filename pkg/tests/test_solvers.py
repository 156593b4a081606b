import numpy as np
import pytest

from classification.classifier import Complexity, classify
from core.binary_problem import BinaryProblem, Color, EquivalenceMap, problems_up_to
from core.exceptions import NotApplicableError
from core.problem_catalog import get_catalog
from solvers.constant import constant_side, solve_constant, white_port_labels
from solvers.dispatch import (
    HYPERGRAPH_MATCHING,
    PRIVATE_EDGE,
    RESILIENT,
    SPECIAL,
    plan_dispatch,
    solve,
    solve_detailed,
)
from solvers.global_solvers import global_plan, solve_global
from solvers.layered import (
    HypergraphMatchingStrategy,
    ResilientStrategy,
    SpecialStrategy,
    hypergraph_matching,
    private_edge_labels,
    solve_hypergraph_matching,
    solve_private_edge,
    solve_resilient,
    solve_special,
    special_problem,
)
from solvers.layers import DecompositionVariant
from trees.colored_tree import x_degree
from trees.generators import gen_caterpillar, gen_complete_biregular, gen_path, gen_random_biregular
from verification.verifier import verify_labeling


def trees_for(d, delta):
    """Istanze di prova per i gradi dati: casuali, complete e (delta = 2) caterpillar"""
    trees = [
        gen_random_biregular(d, delta, 150, seed=1),
        gen_random_biregular(d, delta, 300, seed=2, id_seed=9),
        gen_complete_biregular(d, delta, 3),
        gen_complete_biregular(d, delta, 3, Color.BLACK),
        gen_path(1),
        gen_path(6, Color.BLACK),
    ]
    if delta == 2 and d >= 3:
        trees.append(gen_caterpillar(d, 40))
    return trees


def assert_solves(p, tree, labeling):
    assert set(labeling) == set(tree.edges)
    assert verify_labeling(tree, p, labeling) == []


# Costanti

@pytest.mark.parametrize('p', [
    BinaryProblem(4, 2, '00100', '111'),
    BinaryProblem(2, 2, '101', '011'),
    BinaryProblem(3, 3, '1000', '1010'),
    BinaryProblem(3, 2, '1111', '010'),
])
def test_constant_solutions(p):
    for tree in trees_for(p.d, p.delta):
        assert_solves(p, tree, solve_constant(p, tree))


def test_constant_rules():
    trivial = BinaryProblem(4, 2, '00100', '111')
    assert white_port_labels(trivial, 4) == [1, 1, 0, 0]
    assert white_port_labels(trivial, 1) == [1]
    assert constant_side(BinaryProblem(3, 2, '1111', '010')) is Color.BLACK
    assert constant_side(trivial) is Color.WHITE


def test_constant_rejects_other_classes():
    with pytest.raises(NotApplicableError):
        solve_constant(BinaryProblem(3, 2, '1110', '010'), gen_path(3))


# Globali

@pytest.mark.parametrize('p, plan', [
    (BinaryProblem(3, 2, '1001', '010'), (EquivalenceMap.IDENTITY, 'V.a')),
    (BinaryProblem(2, 3, '010', '1001'), (EquivalenceMap.SWAP, 'V.a')),
    (BinaryProblem(3, 3, '0100', '0010'), (EquivalenceMap.IDENTITY, 'VI.b')),
    (BinaryProblem(3, 3, '0010', '0100'), (EquivalenceMap.SWAP, 'VI.b')),
])
def test_global_solutions(p, plan):
    assert global_plan(p) == plan
    for tree in trees_for(p.d, p.delta):
        assert_solves(p, tree, solve_global(p, tree))


def test_two_coloring_alternates_along_blacks(small_random_tree):
    p = BinaryProblem(3, 2, '1001', '010')
    labeling = solve_global(p, small_random_tree)
    for v in small_random_tree.nodes_of(Color.WHITE):
        assert x_degree(small_random_tree, labeling, v) in (0, small_random_tree.degree(v))


def test_global_rejects_other_classes():
    with pytest.raises(NotApplicableError):
        solve_global(BinaryProblem(4, 2, '00100', '111'), gen_path(3))


# Strategie a livelli

def test_resilient_strategy_variants():
    assert ResilientStrategy(BinaryProblem(3, 2, '1110', '010')).variant is DecompositionVariant.BLACK_RESTRICTED
    assert ResilientStrategy(BinaryProblem(4, 4, '01110', '01110')).variant is DecompositionVariant.WHITE_RESTRICTED
    with pytest.raises(NotApplicableError):
        ResilientStrategy(BinaryProblem(3, 3, '0100', '0100'))


def test_strategies_check_their_problem():
    with pytest.raises(NotApplicableError):
        HypergraphMatchingStrategy(BinaryProblem(3, 2, '0100', '010'))
    with pytest.raises(NotApplicableError):
        SpecialStrategy(BinaryProblem(2, 2, '010', '101'))
    with pytest.raises(NotApplicableError):
        solve_private_edge(BinaryProblem(3, 2, '0100', '101'), gen_path(3))


def test_private_edge_labels():
    assert private_edge_labels([1, 0, 0], True) == [0, 1, 0]
    assert private_edge_labels([1, 1], False) == [0, 0]


# Dispatch

@pytest.mark.parametrize('p, strategy, equivalence', [
    (BinaryProblem(3, 2, '1110', '010'), RESILIENT, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 2, '0110', '101'), RESILIENT, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 2, '0110', '010'), RESILIENT, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 2, '1010', '010'), RESILIENT, EquivalenceMap.IDENTITY),
    (BinaryProblem(4, 4, '01110', '01110'), RESILIENT, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 3, '0110', '0110'), RESILIENT, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 3, '1100', '0100'), HYPERGRAPH_MATCHING, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 3, '0010', '0010'), HYPERGRAPH_MATCHING, EquivalenceMap.COMPLEMENT),
    (BinaryProblem(3, 2, '0100', '101'), SPECIAL, EquivalenceMap.IDENTITY),
    (BinaryProblem(3, 3, '0100', '1001'), SPECIAL, EquivalenceMap.IDENTITY),
    (BinaryProblem(2, 3, '101', '0100'), SPECIAL, EquivalenceMap.SWAP),
    (BinaryProblem(3, 2, '0100', '110'), PRIVATE_EDGE, EquivalenceMap.IDENTITY),
])
def test_dispatch_plans(p, strategy, equivalence):
    plan = plan_dispatch(p)
    assert plan.strategy == strategy
    assert plan.equivalence is equivalence


def test_dispatch_flips():
    plan = plan_dispatch(BinaryProblem(3, 3, '1100', '0100'))
    assert plan.target == BinaryProblem(3, 3, '0100', '0100')
    assert plan.flips == frozenset({(Color.WHITE, 0)})
    assert plan_dispatch(BinaryProblem(3, 3, '0010', '0010')).flips == frozenset()
    document = plan_dispatch(BinaryProblem(3, 3, '1100', '0100')).to_document()
    assert document['flips'] == [{'side': 'white', 'index': 0}]


@pytest.mark.parametrize('p', [
    BinaryProblem(3, 2, '1110', '010'),
    BinaryProblem(3, 2, '0110', '101'),
    BinaryProblem(3, 2, '1010', '010'),
    BinaryProblem(4, 4, '01110', '01110'),
    BinaryProblem(3, 3, '1100', '0100'),
    BinaryProblem(3, 3, '0010', '0010'),
    BinaryProblem(3, 2, '0100', '101'),
    BinaryProblem(3, 3, '0100', '1001'),
    BinaryProblem(2, 3, '101', '0100'),
    BinaryProblem(3, 2, '0100', '110'),
])
def test_logarithmic_solutions(p):
    for tree in trees_for(p.d, p.delta):
        result = solve_detailed(p, tree)
        assert result.complexity is Complexity.LOGARITHMIC
        assert result.decomposition is not None
        assert_solves(p, tree, result.labeling)


def test_solve_dispatches_every_class(small_random_tree):
    for p in (BinaryProblem(3, 2, '1111', '010'), BinaryProblem(3, 2, '1001', '010'),
              BinaryProblem(3, 2, '1110', '010')):
        assert_solves(p, small_random_tree, solve(p, small_random_tree))


def test_solve_rejects_unsolvable(small_random_tree):
    with pytest.raises(NotApplicableError):
        solve(BinaryProblem(3, 2, '0111', '100'), small_random_tree)


def test_sinkless_orientation_on_caterpillar(caterpillar):
    p = BinaryProblem(3, 2, '1110', '010')
    labeling = solve(p, caterpillar)
    for v in caterpillar.nodes_of(Color.WHITE):
        if caterpillar.degree(v) == 3:
            assert x_degree(caterpillar, labeling, v) < 3
    for v in caterpillar.nodes_of(Color.BLACK):
        assert x_degree(caterpillar, labeling, v) == 1


@pytest.mark.slow
def test_logarithmic_solutions_on_large_trees():
    for p in (BinaryProblem(3, 2, '1110', '010'), BinaryProblem(3, 3, '0100', '0100'),
              BinaryProblem(3, 2, '0100', '101')):
        tree = gen_random_biregular(p.d, p.delta, 20000, seed=5)
        assert_solves(p, tree, solve(p, tree))


@pytest.mark.parametrize('solver, p', [
    (solve_resilient, BinaryProblem(3, 2, '0110', '101')),
    (solve_resilient, BinaryProblem(3, 3, '0110', '0110')),
    (solve_hypergraph_matching, hypergraph_matching(3, 3)),
    (solve_special, special_problem(3, 3)),
    (solve_special, special_problem(4, 2)),
])
def test_layered_entry_points(solver, p):
    for seed in range(2):
        tree = gen_random_biregular(p.d, p.delta, 600, seed=seed)
        assert verify_labeling(tree, p, solver(p, tree)) == []


def test_layered_entry_points_check_preconditions():
    tree = gen_random_biregular(3, 3, 100, seed=0)
    with pytest.raises(NotApplicableError):
        solve_hypergraph_matching(special_problem(3, 3), tree)
    with pytest.raises(NotApplicableError):
        solve_special(hypergraph_matching(3, 3), tree)


def random_type_seven_problems(count, seed=11):
    candidates = [p for p in problems_up_to(5, 5) if classify(p).primary_family == 'VII']
    rng = np.random.default_rng(seed)
    return [candidates[i] for i in rng.choice(len(candidates), size=count, replace=False)]


@pytest.mark.slow
def test_solver_soundness_at_scale():
    catalog = get_catalog()
    named = [catalog.get(name) for name in catalog.names()]
    for p in named + random_type_seven_problems(20):
        if classify(p).complexity is Complexity.UNSOLVABLE:
            continue
        for seed in range(20):
            n = 10000 if seed == 0 else (2000 if seed % 4 == 0 else 300)
            tree = gen_random_biregular(p.d, p.delta, n, seed=seed)
            assert verify_labeling(tree, p, solve(p, tree)) == [], (p, seed)
