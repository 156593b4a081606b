import pytest

from classification.classifier import (
    Bound,
    Complexity,
    classification_report,
    classify,
    family_complexity,
    matching_families,
    randomized_bounds,
    sweep_dataframe,
)
from classification.relaxation import TargetKind, relaxation_target
from core.binary_problem import BinaryProblem, Color, EquivalenceMap, equivalent_set, is_restriction, problems_up_to
from core.exceptions import NotApplicableError
from core.problem_catalog import get_catalog

SWEEP = problems_up_to(3, 3)


@pytest.mark.parametrize('p, complexity, family', [
    (BinaryProblem(3, 2, '0111', '100'), Complexity.UNSOLVABLE, 'I.c'),
    (BinaryProblem(2, 2, '000', '111'), Complexity.UNSOLVABLE, 'II.a'),
    (BinaryProblem(4, 2, '00100', '111'), Complexity.CONSTANT, 'III.a'),
    (BinaryProblem(2, 2, '101', '011'), Complexity.CONSTANT, 'IV.b'),
    (BinaryProblem(3, 2, '1001', '010'), Complexity.GLOBAL, 'V.a'),
    (BinaryProblem(3, 3, '0100', '0010'), Complexity.GLOBAL, 'VI.b'),
    (BinaryProblem(3, 2, '1110', '010'), Complexity.LOGARITHMIC, 'VII'),
    (BinaryProblem(3, 3, '0100', '0100'), Complexity.LOGARITHMIC, 'VII'),
])
def test_classify_examples(p, complexity, family):
    result = classify(p)
    assert result.complexity is complexity
    assert result.primary_family == family
    assert result.matched_families[0] == family


def test_first_match_wins():
    p = BinaryProblem(2, 2, '100', '000')
    assert matching_families(p) == ['I.a', 'II.b']
    assert classify(p).primary_family == 'I.a'
    assert classify(p).complexity is Complexity.UNSOLVABLE


def test_catalog_expected_classes():
    catalog = get_catalog()
    for name in catalog.names():
        expected = catalog.expected_complexity(name)
        if expected is not None:
            assert classify(catalog.get(name)).complexity.value == expected, name


def test_complexity_invariant_under_equivalence():
    for p in SWEEP:
        classes = {classify(q).complexity for q in equivalent_set(p)}
        assert len(classes) == 1, p


def test_randomized_bounds_examples():
    so = randomized_bounds(BinaryProblem(3, 2, '1110', '010'))
    assert (so.lower, so.upper) == (Bound.LOGLOG, Bound.LOG)
    assert so.justification == ('forbidden-degree-relaxation',)

    hm = randomized_bounds(BinaryProblem(3, 3, '0100', '0100'))
    assert (hm.lower, hm.upper) == (Bound.LOG, Bound.LOG)
    assert 'no-escape-propagation' in hm.justification

    assert randomized_bounds(BinaryProblem(4, 2, '00100', '111')).lower is Bound.CONSTANT
    assert randomized_bounds(BinaryProblem(3, 2, '1001', '010')).upper is Bound.LINEAR


def test_randomized_bounds_reject_unsolvable():
    with pytest.raises(NotApplicableError):
        randomized_bounds(BinaryProblem(3, 2, '0111', '100'))


def test_randomized_bounds_are_ordered_and_invariant():
    for p in SWEEP:
        if classify(p).complexity is Complexity.UNSOLVABLE:
            continue
        bounds = randomized_bounds(p)
        assert bounds.lower.rank <= bounds.upper.rank
        for q in equivalent_set(p):
            other = randomized_bounds(q)
            assert (other.lower, other.upper) == (bounds.lower, bounds.upper)


def test_relaxation_of_sinkless_orientation():
    target = relaxation_target(BinaryProblem(3, 2, '1110', '010'))
    assert target.kind is TargetKind.SINKLESS_ORIENTATION
    assert target.target == BinaryProblem(3, 2, '1110', '011')
    assert target.flips == frozenset({(Color.BLACK, 2)})
    assert target.equivalence_applied is EquivalenceMap.IDENTITY


def test_relaxation_to_forbidden_degree():
    p = BinaryProblem(3, 2, '1011', '010')
    target = relaxation_target(p)
    assert target.kind is TargetKind.FORBIDDEN_DEGREE
    assert target.index == 1
    assert target.target == p
    assert target.flips == frozenset()


def test_relaxation_exists_for_every_logarithmic_problem():
    for p in SWEEP:
        if classify(p).complexity is not Complexity.LOGARITHMIC:
            continue
        target = relaxation_target(p)
        assert is_restriction(target.equivalence_applied.apply(p), target.target)


def test_relaxation_rejects_other_classes():
    with pytest.raises(NotApplicableError):
        relaxation_target(BinaryProblem(3, 2, '1001', '010'))


def test_classification_report_document():
    report = classification_report(BinaryProblem(3, 2, '1110', '010'))
    assert report['complexity'] == 'Logarithmic'
    assert report['primary_family'] == 'VII'
    assert report['randomized']['lower'] == 'LogLog'
    assert report['relaxation_target']['kind'] == 'SinklessOrientation'
    assert report['relaxation_target']['flips'] == [{'side': 'black', 'index': 2}]

    unsolvable = classification_report(BinaryProblem(3, 2, '0111', '100'))
    assert unsolvable['randomized'] is None
    assert 'relaxation_target' not in unsolvable


def test_sweep_dataframe():
    frame = sweep_dataframe(3, 3)
    assert len(frame) == 576
    assert set(frame['complexity']) <= {c.value for c in Complexity}
    assert frame['problem'].is_unique
    unsolvable = frame[frame['complexity'] == 'Unsolvable']
    assert unsolvable['randomized_lower'].isna().all()


@pytest.mark.slow
def test_exhaustive_sweep_up_to_five():
    problems = problems_up_to(5, 5)
    assert len(problems) == 14400
    for p in problems:
        result = classify(p)
        assert len({family_complexity(tag) for tag in result.matched_families}) == 1, p
        if p.d == 2 and p.delta == 2:
            assert result.primary_family != 'VII', p
        assert {classify(q).complexity for q in equivalent_set(p)} == {result.complexity}, p


@pytest.mark.slow
def test_solvability_is_monotone_under_relaxation():
    solvable = {p: classify(p).complexity is not Complexity.UNSOLVABLE for p in SWEEP}
    for sub in SWEEP:
        if not solvable[sub]:
            continue
        for sup in SWEEP:
            if is_restriction(sub, sup):
                assert solvable[sup], (sub, sup)
