import json

import pandas as pd
import pytest

from classification.classifier import sweep_rows
from core.binary_problem import BinaryProblem
from core.config import Config, get_limits_config, get_report_config
from core.exceptions import MalformedProblemError
from core.problem_catalog import ProblemCatalog, get_named_problem
from reports.report_generator import ReportGenerator
from scripts.manifest import RunManifest, canonical_json, digest_bytes, digest_document


# Configurazione

def test_dev_limits():
    limits = Config('dev').get_limits_config()
    assert limits['max_nodes'] == 150000
    assert limits['max_edges'] == 22
    assert limits['max_alphabet'] == 5


def test_prod_overrides():
    config = Config('prod')
    assert config.get_limits_config()['max_nodes'] == 1000000
    assert config.get_report_config()['formats'] == ['json', 'excel']


def test_env_override_is_read_per_call(monkeypatch):
    monkeypatch.setenv('ARBOR_MAX_EDGES', '7')
    assert get_limits_config()['max_edges'] == 7
    monkeypatch.setenv('ARBOR_MAX_EDGES', 'many')
    assert get_limits_config()['max_edges'] == 22
    monkeypatch.delenv('ARBOR_MAX_EDGES')
    assert get_limits_config()['max_edges'] == 22


def test_simulation_defaults():
    simulation = Config('dev').get_simulation_config()
    assert simulation == {'round_constant_k': 24, 'global_round_factor': 2, 'strip_ids': False}


# Catalogo

def test_catalog_matches_expected_classes():
    catalog = ProblemCatalog()
    assert 'sinkless_orientation' in catalog.names()
    assert catalog.get('two_coloring') == BinaryProblem(3, 2, '1001', '010')
    assert catalog.expected_complexity('two_coloring') == 'Global'
    assert all(entry.expected for entry in catalog.entries.values())


def test_unknown_problem():
    with pytest.raises(MalformedProblemError):
        get_named_problem('no_such_problem')


def test_malformed_catalog(tmp_path):
    path = tmp_path / 'problems.yaml'
    path.write_text("problems: [unterminated\n")
    with pytest.raises(MalformedProblemError):
        ProblemCatalog(path)


# Manifest

def test_manifest_is_deterministic(tmp_path):
    path = tmp_path / 'tree.json'
    path.write_text('{"nodes": []}')

    def build():
        manifest = RunManifest(command='solve', parameters={'mode': 'local', 'out': None})
        manifest.add_input('tree', path=path)
        manifest.add_input('problem', text='d=3,delta=2,W=1110,B=010')
        manifest.add_output_document('result', {'b': 1, 'a': [1, 2]})
        return canonical_json(manifest.to_document())

    assert build() == build()
    document = json.loads(build())
    assert list(document['input_digests']) == ['problem', 'tree']
    assert document['input_digests']['tree'] == digest_bytes(path.read_bytes())


def test_document_digest_ignores_key_order():
    assert digest_document({'a': 1, 'b': 2}) == digest_document({'b': 2, 'a': 1})
    assert digest_document({'a': 1}) != digest_document({'a': 2})
    assert digest_bytes(b'').startswith('sha256:e3b0c442')


def test_missing_input_is_skipped():
    manifest = RunManifest(command='verify', parameters={})
    manifest.add_input('tree', path='/nonexistent/tree.json')
    assert manifest.input_digests == {}


# Report

def test_sweep_report(tmp_path):
    rows = sweep_rows(2, 2)
    files = ReportGenerator(str(tmp_path)).generate_sweep_report(rows, 2, 2)
    assert set(files) == set(get_report_config()['formats'])

    if 'json' in files:
        with open(files['json'], encoding='utf-8') as f:
            report = json.load(f)
        assert report['summary']['operation_type'] == 'SWEEP'
        assert report['summary']['problems'] == len(rows)
        counted = sum(v for k, v in report['summary'].items() if k.startswith('count_'))
        assert counted == len(rows)
    if 'csv' in files:
        assert len(pd.read_csv(files['csv'])) == len(rows)
    if 'excel' in files:
        sheets = pd.read_excel(files['excel'], sheet_name=None)
        assert set(sheets) == {'Summary', 'Details', 'Metadata'}


def test_pipeline_report_without_details(tmp_path):
    files = ReportGenerator(str(tmp_path)).generate_pipeline_report({'verdict': 'PASS', 'violations': 0}, [])
    if 'json' in files:
        with open(files['json'], encoding='utf-8') as f:
            report = json.load(f)
        assert report['summary'] == {'operation_type': 'PIPELINE', 'verdict': 'PASS', 'violations': 0}
        assert report['details'] == []


def test_disabled_reports(tmp_path, monkeypatch):
    monkeypatch.setattr('reports.report_generator.get_report_config',
                        lambda: {'report_dir': str(tmp_path), 'enabled': False, 'formats': ['json']})
    assert ReportGenerator().generate_sweep_report(sweep_rows(2, 2), 2, 2) == {}
    assert list(tmp_path.iterdir()) == []


def test_invalid_value_falls_back_to_default():
    config = Config('dev')
    config.parser.set('limits', 'max_edges', 'lots')
    assert config.get_limits_config()['max_edges'] == 22
    assert config.get('limits', 'missing', 'fallback') == 'fallback'
    assert config.loaded_files == ['config.conf', 'config.dev.conf']


def test_in_memory_override_and_sections():
    config = Config('dev')
    config.set('witness', 'radius', 3)
    assert config.get_witness_config() == {'radius': 3}
    config.set('extra', 'flag', 'yes')
    assert config.get('extra', 'flag', False, bool) is True
    assert config.get_section('extra') == {'flag': 'yes'}
    assert config.get_section('missing') == {}
