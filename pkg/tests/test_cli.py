import json

import pytest

from scripts.arbor_cli import EXIT_CAP, EXIT_EXPECTATION, EXIT_INPUT, EXIT_OK, main

# tree_file è biregolare (3,3)
MATCHING_33 = 'd=3,delta=3,W=0100,B=0100'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def stdout_document(out):
    return json.loads(out.strip().splitlines()[-1])


def stderr_document(err):
    # l'ultima riga di stderr è il documento di errore, prima può esserci logging
    return json.loads(err.strip().splitlines()[-1])


def test_classify_named(capsys):
    code, out, _ = run(capsys, 'classify', '--named', 'sinkless_orientation')
    assert code == EXIT_OK
    document = stdout_document(out)
    assert document['command'] == 'classify'
    assert document['result']['complexity'] == 'Logarithmic'
    assert document['result']['relaxation_target'] is not None
    assert document['manifest']['output_digests']['result'].startswith('sha256:')


def test_classify_inline_constant(capsys):
    code, out, _ = run(capsys, 'classify', '--inline', 'd=4,delta=2,W=00100,B=111')
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert result['complexity'] == 'Constant'
    assert 'relaxation_target' not in result


def test_classify_sweep(capsys):
    code, out, _ = run(capsys, 'classify', '--sweep', '3', '3')
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert result['count'] == 576
    assert len(result['rows']) == 576


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, 'classify', '--inline', 'd=3,delta=2,W=1110,B=010')
    _, second, _ = run(capsys, 'classify', '--inline', 'd=3,delta=2,W=1110,B=010')
    assert first == second


def test_malformed_problem_exit_code(capsys):
    code, out, err = run(capsys, 'classify', '--inline', 'd=3,delta=2,W=11,B=010')
    assert code == EXIT_INPUT
    assert out == ''
    assert stderr_document(err)['error'] == 'MalformedProblemError'


def test_unknown_named_problem(capsys):
    code, _, err = run(capsys, 'classify', '--named', 'no_such_problem')
    assert code == EXIT_INPUT
    assert 'no_such_problem' in stderr_document(err)['message']


def test_gen_tree_solve_verify(capsys, tmp_path):
    tree_path = tmp_path / 'tree.json'
    labels_path = tmp_path / 'labels.json'

    code, out, _ = run(capsys, 'gen-tree', '--kind', 'complete', '--d', '3', '--delta', '2',
                       '--radius', '2', '--out', str(tree_path))
    assert code == EXIT_OK
    assert stdout_document(out)['result']['nodes'] == 7
    assert tree_path.is_file()

    code, out, _ = run(capsys, 'solve', '--named', 'regular_matching', '--tree', str(tree_path),
                       '--out', str(labels_path))
    assert code == EXIT_OK
    manifest = stdout_document(out)['manifest']
    assert set(manifest['output_digests']) == {'labeling', 'result'}
    assert set(manifest['input_digests']) == {'problem', 'tree'}

    code, out, _ = run(capsys, 'verify', '--named', 'regular_matching', '--tree', str(tree_path),
                       '--labeling', str(labels_path))
    assert code == EXIT_OK
    assert stdout_document(out)['result'] == {'valid': True, 'violations': []}


def test_verify_reports_violations(capsys, tree_file, tmp_path):
    tree = json.loads(tree_file.read_text())
    labels_path = tmp_path / 'labels.json'
    labels = [{'edge': edge, 'x': 1} for edge in tree['edges']]
    labels_path.write_text(json.dumps({'labels': labels}))

    code, out, _ = run(capsys, 'verify', '--inline', MATCHING_33, '--tree', str(tree_file),
                       '--labeling', str(labels_path))
    assert code == EXIT_EXPECTATION
    result = stdout_document(out)['result']
    assert result['valid'] is False
    assert result['violations']


def test_solve_local_with_layers(capsys, tree_file):
    code, out, _ = run(capsys, 'solve', '--inline', MATCHING_33, '--tree', str(tree_file),
                       '--mode', 'local')
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert result['mode'] == 'local'
    assert result['rounds'] >= 0
    assert len(result['labels']) == 9

    code, out, _ = run(capsys, 'solve', '--inline', MATCHING_33, '--tree', str(tree_file),
                       '--emit-layers')
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert len(result['layers']['layers']) == 10


def test_missing_tree_file(capsys, tmp_path):
    code, _, err = run(capsys, 'solve', '--named', 'trivial', '--tree', str(tmp_path / 'missing.json'))
    assert code == EXIT_INPUT
    assert stderr_document(err)['error'] == 'InputError'


def test_oracle_on_witness(capsys):
    code, out, _ = run(capsys, 'oracle', '--named', 'contradiction', '--witness', 'auto')
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert result['count'] == 0
    assert result['mode'] == 'count'


def test_oracle_edge_cap(capsys, tree_file):
    code, out, err = run(capsys, 'oracle', '--inline', MATCHING_33, '--tree', str(tree_file),
                         '--max-edges', '5')
    assert code == EXIT_CAP
    assert out == ''
    assert stderr_document(err)['cap'] == {'name': 'max_edges', 'value': 5}


def test_re_step(capsys, tmp_path):
    out_path = tmp_path / 'step.json'
    code, out, _ = run(capsys, 're-step', '--inline', 'd=3,delta=2,W=1110,B=010', '--out', str(out_path))
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert result['side'] == 'black'
    assert json.loads(out_path.read_text()) == result['output']


@pytest.mark.parametrize('expect, exit_code', [('true', EXIT_OK), ('false', EXIT_EXPECTATION)])
def test_fixed_point(capsys, expect, exit_code):
    code, out, _ = run(capsys, 'fixed-point', '--fdso', 'd=3,delta=3,s=1', '--expect', expect)
    assert code == exit_code
    assert stdout_document(out)['result']['fixed_point'] is True


def test_fixed_point_bad_parameters(capsys):
    code, _, _ = run(capsys, 'fixed-point', '--fdso', 'd=3,s=1')
    assert code == EXIT_INPUT


def test_pipeline_unsolvable(capsys):
    code, out, _ = run(capsys, 'pipeline', '--named', 'contradiction', '--n', '50', '--expect-solvable')
    assert code == EXIT_EXPECTATION
    assert stdout_document(out)['result']['verdict'] == 'UNSOLVABLE'

    code, _, _ = run(capsys, 'pipeline', '--named', 'contradiction', '--n', '50')
    assert code == EXIT_OK


def test_pipeline_local(capsys):
    code, out, _ = run(capsys, 'pipeline', '--named', 'sinkless_orientation', '--kind', 'random',
                       '--n', '200', '--mode', 'local')
    assert code == EXIT_OK
    result = stdout_document(out)['result']
    assert result['verdict'] == 'PASS'
    assert result['within_round_bound'] is True
    assert set(result['orientation']) == {'sinks', 'sources', 'unoriented'}


def test_pipeline_node_cap(capsys, monkeypatch):
    monkeypatch.setenv('ARBOR_MAX_NODES', '1000')
    code, _, err = run(capsys, 'pipeline', '--named', 'trivial', '--kind', 'path', '--n', '1001')
    assert code == EXIT_CAP
    document = stderr_document(err)
    assert document['stage'] == 'generate'
    assert document['cap']['name'] == 'max_nodes'


def test_pipeline_report(capsys, tmp_path):
    code, _, _ = run(capsys, '--report-dir', str(tmp_path), 'pipeline', '--named', 'two_coloring',
                     '--kind', 'caterpillar', '--path-len', '10')
    assert code == EXIT_OK
    assert list(tmp_path.glob('pipeline_*_report.json'))


def test_problem_option_accepts_catalog_names(capsys):
    code, out, _ = run(capsys, 'oracle', '--problem', 'contradiction', '--witness', 'auto')
    assert code == EXIT_OK
    assert stdout_document(out)['result']['count'] == 0


def test_pretty_sweep_keeps_stdout_parseable(capsys):
    code, out, err = run(capsys, '--pretty', 'classify', '--sweep', '2', '2')
    assert code == EXIT_OK
    assert json.loads(out)['result']['count'] == 64
    assert err.strip()


def test_unwritable_out_path(capsys, tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    code, out, err = run(capsys, 'gen-tree', '--kind', 'complete', '--d', '3', '--delta', '2',
                         '--radius', '2', '--out', str(blocker / 'tree.json'))
    assert code == EXIT_INPUT
    assert out == ''
    assert stderr_document(err)['error'] == 'InputError'


def test_unwritable_report_dir(capsys, tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    code, _, err = run(capsys, '--report-dir', str(blocker / 'reports'), 'classify', '--sweep', '2', '2')
    assert code == EXIT_INPUT
    assert stderr_document(err)['error'] == 'InputError'
