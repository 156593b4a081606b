#!/usr/bin/env python3
# ============================================================================
# arbor_cli.py
"""
Interfaccia a riga di comando di arbor: classificazione, risoluzione, verifica,
oracolo, round elimination e generazione di alberi.

Ogni comando scrive un solo documento JSON su stdout, accompagnato dal manifest
dell'esecuzione; il logging va su stderr.
"""

import argparse
import json
import os
import sys
from math import log2
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

# Aggiungi il percorso del modulo src al path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from classification.classifier import Complexity, classification_report, classify, sweep_dataframe
from core.binary_problem import BinaryProblem, parse_problem
from core.config import get_simulation_config
from core.exceptions import ArborError, InputError, InvalidTreeError, MalformedProblemError, ResourceCapError
from core.log import get_scripts_logger, log_function_call, set_debug_mode, setup_logging
from core.problem_catalog import get_catalog, get_named_problem
from reports.report_generator import ReportGenerator
from round_elimination.fdso import is_fixed_point, make_fdso
from round_elimination.general_problem import GeneralProblem, from_binary, general_from_document
from round_elimination.output_problems import black_output, white_output
from scripts.manifest import RunManifest, canonical_json
from solvers.dispatch import solve_detailed
from solvers.local_algorithms import simulate_solve
from trees.colored_tree import ColoredTree, labeling_from_document, labeling_to_document, orientation_digraph
from trees.generators import gen_caterpillar, gen_complete_biregular, gen_path, gen_random_biregular
from verification.oracle import brute_force_solve, standard_witness
from verification.verifier import verify_labeling, violations_document

setup_logging()
logger = get_scripts_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INPUT = 2
EXIT_EXPECTATION = 3
EXIT_CAP = 4


class ExpectationFailure(Exception):
    """Il comando è andato a buon fine ma l'esito non è quello atteso (exit 3)"""

    def __init__(self, message: str, document: Dict[str, Any]):
        super().__init__(message)
        self.document = document


# ---------------------------------------------------------------------------
# Input

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise InputError(f"Impossibile leggere {path}: {e}") from e


def _read_json(path: str, error_type=InputError) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise error_type(f"{path} non è un JSON valido: {e}") from e


def load_problem(args: argparse.Namespace, manifest: RunManifest) -> BinaryProblem:
    """Problema da --inline, --named o --problem (file oppure forma inline)"""
    if getattr(args, 'named', None):
        manifest.add_input('problem', text=args.named)
        return get_named_problem(args.named)
    if getattr(args, 'inline', None):
        manifest.add_input('problem', text=args.inline)
        return parse_problem(args.inline)
    source = getattr(args, 'problem', None)
    if not source:
        raise MalformedProblemError("Serve uno tra --problem, --inline e --named")
    if Path(source).is_file():
        manifest.add_input('problem', path=source)
        return parse_problem(_read_text(source))
    manifest.add_input('problem', text=source)
    if source in get_catalog().names():
        return get_named_problem(source)
    return parse_problem(source)


def load_general_problem(args: argparse.Namespace, manifest: RunManifest) -> GeneralProblem:
    """File di problema generale, oppure un problema binario convertito"""
    source = getattr(args, 'problem', None)
    if source and Path(source).is_file():
        text = _read_text(source)
        try:
            document = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise MalformedProblemError(f"{source} non è un documento valido: {e}") from e
        if isinstance(document, dict) and 'alphabet' in document:
            manifest.add_input('problem', path=source)
            return general_from_document(document)
    return from_binary(load_problem(args, manifest))


def load_tree(path: str, manifest: RunManifest) -> ColoredTree:
    manifest.add_input('tree', path=path)
    return ColoredTree.from_document(_read_json(path, InvalidTreeError))


def write_json(path: str, document: Any, manifest: RunManifest, name: str) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False))
            f.write('\n')
    except OSError as e:
        raise InputError(f"Impossibile scrivere {path}: {e}") from e
    manifest.add_output_file(name, path)
    logger.info(f"Scritto {path}")


def _manifest_for(args: argparse.Namespace) -> RunManifest:
    parameters = {key: value for key, value in sorted(vars(args).items())
                  if key not in ('func', 'verbose', 'threads', 'pretty')}
    return RunManifest(command=args.command, parameters=parameters)


def _finish(result: Dict[str, Any], manifest: RunManifest) -> Dict[str, Any]:
    manifest.add_output_document('result', result)
    return {'command': manifest.command, 'result': result, 'manifest': manifest.to_document()}


# ---------------------------------------------------------------------------
# Comandi

def cmd_classify(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    if args.sweep:
        d_max, delta_max = args.sweep
        frame = sweep_dataframe(d_max, delta_max)
        rows = frame.to_dict(orient='records')
        if args.report_dir:
            ReportGenerator(args.report_dir).generate_sweep_report(rows, d_max, delta_max)
        if args.pretty:
            # stdout resta riservato al documento JSON
            print(frame.to_string(index=False), file=sys.stderr)
        return _finish({'rows': rows, 'count': len(rows)}, manifest)

    p = load_problem(args, manifest)
    return _finish(classification_report(p), manifest)


def _layers_path(out: str) -> str:
    path = Path(out)
    return str(path.with_name(path.stem + '.layers.json'))


def cmd_solve(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    p = load_problem(args, manifest)
    tree = load_tree(args.tree, manifest)
    result: Dict[str, Any] = {'problem': p.to_document(), 'mode': args.mode}

    if args.mode == 'local':
        simulation = simulate_solve(p, tree, max_rounds=args.max_rounds)
        labeling = simulation.labeling
        result.update(complexity=classify(p).complexity.value, **simulation.summary())
        if args.emit_layers:
            logger.warning("--emit-layers è disponibile solo in modalità centralized")
    else:
        solved = solve_detailed(p, tree)
        labeling = solved.labeling
        result.update(complexity=solved.complexity.value, strategy=solved.strategy,
                      plan=solved.plan.to_document() if solved.plan else None)
        if args.emit_layers:
            layers = solved.decomposition.to_document() if solved.decomposition else None
            if layers is None:
                logger.warning(f"La strategia {solved.strategy} non usa una decomposizione a livelli")
            elif args.out:
                write_json(_layers_path(args.out), layers, manifest, 'layers')
            else:
                result['layers'] = layers

    document = labeling_to_document(tree, labeling)
    if args.out:
        write_json(args.out, document, manifest, 'labeling')
    else:
        result['labels'] = document['labels']
    return _finish(result, manifest)


def cmd_verify(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    p = load_problem(args, manifest)
    tree = load_tree(args.tree, manifest)
    manifest.add_input('labeling', path=args.labeling)
    labeling = labeling_from_document(tree, _read_json(args.labeling))

    document = violations_document(verify_labeling(tree, p, labeling))
    finished = _finish(document, manifest)
    if not document['valid']:
        raise ExpectationFailure(f"{len(document['violations'])} violazioni", finished)
    return finished


def cmd_oracle(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    p = load_problem(args, manifest)
    if args.tree:
        tree = load_tree(args.tree, manifest)
    else:
        tree = standard_witness(p)
    outcome = brute_force_solve(tree, p, args.mode, max_edges=args.max_edges)
    result = {'problem': p.to_document(), 'tree': tree.to_document(), **outcome.to_document(tree)}
    return _finish(result, manifest)


def cmd_re_step(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    g = load_general_problem(args, manifest)
    output = black_output(g) if args.side == 'black' else white_output(g)
    document = output.to_document()
    if args.out:
        write_json(args.out, document, manifest, 'problem')
    return _finish({'side': args.side, 'input': g.to_document(), 'output': document}, manifest)


def _parse_fdso(text: str) -> Tuple[int, int, int]:
    fields = {}
    for part in text.split(','):
        key, _, value = part.partition('=')
        fields[key.strip()] = value.strip()
    try:
        return int(fields['d']), int(fields['delta']), int(fields['s'])
    except (KeyError, ValueError) as e:
        raise MalformedProblemError(f"Parametri FDSO non validi {text!r}: attesi d=,delta=,s=") from e


def cmd_fixed_point(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    if args.fdso:
        manifest.add_input('problem', text=args.fdso)
        g = make_fdso(*_parse_fdso(args.fdso))
    else:
        g = load_general_problem(args, manifest)

    outcome = is_fixed_point(g, args.pairs)
    result = {'problem': g.to_document(), 'pairs': args.pairs, **outcome.to_document()}
    finished = _finish(result, manifest)
    if args.expect is not None and outcome.is_fixed_point != (args.expect == 'true'):
        raise ExpectationFailure(f"Punto fisso {outcome.is_fixed_point}, atteso {args.expect}", finished)
    return finished


@log_function_call(logger)
def generate_tree(args: argparse.Namespace) -> ColoredTree:
    """Albero dai flag --kind, --d, --delta, --radius, --n, --path-len, --seed"""
    if args.kind == 'complete':
        return gen_complete_biregular(args.d, args.delta, args.radius, id_seed=args.id_seed)
    if args.kind == 'random':
        return gen_random_biregular(args.d, args.delta, args.n, seed=args.seed, id_seed=args.id_seed)
    if args.kind == 'caterpillar':
        return gen_caterpillar(args.d, args.path_len, id_seed=args.id_seed)
    return gen_path(args.n, id_seed=args.id_seed)


def cmd_gen_tree(args: argparse.Namespace) -> Dict[str, Any]:
    manifest = _manifest_for(args)
    tree = generate_tree(args)
    document = tree.to_document()
    if args.out:
        write_json(args.out, document, manifest, 'tree')
        return _finish({'kind': args.kind, 'nodes': tree.n, 'edges': len(tree.edges)}, manifest)
    return _finish({'kind': args.kind, 'nodes': tree.n, 'edges': len(tree.edges), 'tree': document}, manifest)


def _round_bound(complexity: Complexity, n: int) -> Optional[float]:
    config = get_simulation_config()
    if complexity is Complexity.CONSTANT:
        return 1
    if complexity is Complexity.LOGARITHMIC:
        return config['round_constant_k'] * log2(max(n, 2))
    if complexity is Complexity.GLOBAL:
        return config['global_round_factor'] * n
    return None


def cmd_pipeline(args: argparse.Namespace) -> Dict[str, Any]:
    """generate -> classify -> solve -> verify, con diagnostica per fase"""
    manifest = _manifest_for(args)
    stage = 'problem'
    try:
        p = load_problem(args, manifest)
        stage = 'generate'
        tree = generate_tree(args)
        stage = 'classify'
        classification = classify(p)
        result: Dict[str, Any] = {
            'problem': p.to_document(),
            'tree': {'kind': args.kind, 'nodes': tree.n, 'edges': len(tree.edges)},
            'classification': classification.to_document(),
        }

        if classification.complexity is Complexity.UNSOLVABLE:
            result['verdict'] = 'UNSOLVABLE'
            finished = _finish(result, manifest)
            if args.expect_solvable:
                raise ExpectationFailure(f"{p} non è risolvibile", finished)
            return finished

        stage = 'solve'
        if args.mode == 'local':
            simulation = simulate_solve(p, tree, max_rounds=args.max_rounds)
            labeling = simulation.labeling
            bound = _round_bound(classification.complexity, tree.n)
            result['rounds'] = simulation.rounds
            result['round_bound'] = bound
            result['within_round_bound'] = simulation.rounds <= bound
        else:
            solved = solve_detailed(p, tree, verify=False)
            labeling = solved.labeling
            result['strategy'] = solved.strategy
            if solved.decomposition is not None:
                result['layers'] = solved.decomposition.L

        stage = 'verify'
        violations = verify_labeling(tree, p, labeling)
        result['verdict'] = 'PASS' if not violations else 'FAIL'
        result['violations'] = len(violations)
        if p.delta == 2:
            digraph = orientation_digraph(tree, labeling)
            result['orientation'] = {
                'sinks': sum(1 for v in digraph if digraph.out_degree(v) == 0 and digraph.in_degree(v) > 0),
                'sources': sum(1 for v in digraph if digraph.in_degree(v) == 0 and digraph.out_degree(v) > 0),
                'unoriented': len(digraph.graph['unoriented']),
            }
        if args.out:
            write_json(args.out, labeling_to_document(tree, labeling), manifest, 'labeling')
    except ArborError as e:
        logger.error(f"Pipeline interrotta nella fase '{stage}': {e}")
        e.stage = stage
        raise

    if args.report_dir:
        details = [{'node': v.node_id, 'color': v.color.value, 'expected': v.expected, 'observed': v.observed}
                   for v in violations]
        summary = {key: value for key, value in result.items() if not isinstance(value, dict)}
        summary['problem'] = p.serialize()
        ReportGenerator(args.report_dir).generate_pipeline_report(summary, details)

    finished = _finish(result, manifest)
    if violations:
        raise ExpectationFailure(f"Verifica fallita: {len(violations)} violazioni", finished)
    return finished


# ---------------------------------------------------------------------------
# Argomenti

def _add_problem_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--problem', help='File del problema (JSON/YAML), nome del catalogo o forma inline')
    group.add_argument('--inline', help='Forma inline, es. d=3,delta=2,W=1110,B=010')
    group.add_argument('--named', help='Nome di un problema del catalogo (es. sinkless_orientation)')


def _add_generator_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument('--kind', choices=['complete', 'random', 'caterpillar', 'path'], required=required,
                        default=None if required else 'random', help='Famiglia di alberi')
    parser.add_argument('--d', type=int, default=3, help='Grado pieno dei bianchi (default: 3)')
    parser.add_argument('--delta', type=int, default=2, help='Grado pieno dei neri (default: 2)')
    parser.add_argument('--radius', type=int, default=3, help='Raggio per --kind complete (default: 3)')
    parser.add_argument('--n', type=int, default=1000, help='Nodi per --kind random/path (default: 1000)')
    parser.add_argument('--path-len', type=int, default=50, help='Lunghezza per --kind caterpillar (default: 50)')
    parser.add_argument('--seed', type=int, default=0, help='Seed della struttura casuale (default: 0)')
    parser.add_argument('--id-seed', type=int, default=None, help='Seed per permutare gli id in [1, n^2]')


def parse_arguments(argv=None) -> argparse.Namespace:
    """Parse command line arguments"""
    parser = argparse.ArgumentParser(
        description='arbor - Problemi di etichettatura binaria su alberi 2-colorati',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Esempi di utilizzo:
  python arbor_cli.py classify --inline d=3,delta=2,W=1110,B=010
  python arbor_cli.py classify --sweep 3 3 --pretty
  python arbor_cli.py gen-tree --kind complete --d 3 --delta 3 --radius 2 --out tree.json
  python arbor_cli.py solve --named regular_matching --tree tree.json --out labels.json
  python arbor_cli.py verify --named regular_matching --tree tree.json --labeling labels.json
  python arbor_cli.py oracle --named contradiction --witness auto --mode count
  python arbor_cli.py fixed-point --fdso d=3,delta=3,s=1 --pairs 1
  python arbor_cli.py pipeline --named sinkless_orientation --kind random --n 10000 --mode local

Codici di uscita: 0 ok, 2 input non valido, 3 esito diverso dall'atteso,
4 limite di risorse superato, 1 altri errori.
        """
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='Output verbose')
    parser.add_argument('--pretty', action='store_true', help='Output leggibile (JSON indentato, tabelle)')
    parser.add_argument('--report-dir', default=None, help='Directory dei report JSON/CSV/Excel')
    parser.add_argument('--threads', type=int, default=1, help='Accettato per compatibilità: non cambia gli output')

    subparsers = parser.add_subparsers(dest='command', required=True)

    classify_parser = subparsers.add_parser('classify', help='Classifica un problema o tutti fino a (d, delta)')
    _add_problem_arguments(classify_parser, required=False)
    classify_parser.add_argument('--sweep', nargs=2, type=int, metavar=('D_MAX', 'DELTA_MAX'),
                                 help='Classifica tutti i problemi con d <= D_MAX, delta <= DELTA_MAX')
    classify_parser.set_defaults(func=cmd_classify)

    solve_parser = subparsers.add_parser('solve', help='Risolve un problema su un albero')
    _add_problem_arguments(solve_parser)
    solve_parser.add_argument('--tree', required=True, help='File dell\'albero')
    solve_parser.add_argument('--mode', choices=['centralized', 'local'], default='centralized')
    solve_parser.add_argument('--emit-layers', action='store_true', help='Scrive anche la decomposizione a livelli')
    solve_parser.add_argument('--max-rounds', type=int, default=None, help='Budget di round in modalità local')
    solve_parser.add_argument('--out', help='File di output dell\'etichettatura')
    solve_parser.set_defaults(func=cmd_solve)

    verify_parser = subparsers.add_parser('verify', help='Verifica un\'etichettatura')
    _add_problem_arguments(verify_parser)
    verify_parser.add_argument('--tree', required=True)
    verify_parser.add_argument('--labeling', required=True)
    verify_parser.set_defaults(func=cmd_verify)

    oracle_parser = subparsers.add_parser('oracle', help='Enumerazione esaustiva delle soluzioni')
    _add_problem_arguments(oracle_parser)
    tree_group = oracle_parser.add_mutually_exclusive_group(required=True)
    tree_group.add_argument('--tree', help='File dell\'albero')
    tree_group.add_argument('--witness', choices=['auto'], help='Usa l\'albero testimone standard')
    oracle_parser.add_argument('--mode', choices=['first', 'count', 'all'], default='count')
    oracle_parser.add_argument('--max-edges', type=int, default=None, help='Limite sugli archi (default da configurazione)')
    oracle_parser.set_defaults(func=cmd_oracle)

    re_parser = subparsers.add_parser('re-step', help='Problema di output nero o bianco')
    _add_problem_arguments(re_parser)
    re_parser.add_argument('--side', choices=['black', 'white'], default='black')
    re_parser.add_argument('--out', help='File di output del problema')
    re_parser.set_defaults(func=cmd_re_step)

    fixed_parser = subparsers.add_parser('fixed-point', help='Test di punto fisso della round elimination')
    fixed_source = fixed_parser.add_mutually_exclusive_group(required=True)
    fixed_source.add_argument('--fdso', help='Parametri FDSO, es. d=3,delta=3,s=1')
    fixed_source.add_argument('--problem', help='File del problema generale o binario')
    fixed_source.add_argument('--inline', help='Problema binario inline')
    fixed_source.add_argument('--named', help='Problema binario del catalogo')
    fixed_parser.add_argument('--pairs', type=int, default=1, help='Coppie (nero, bianco) da applicare')
    fixed_parser.add_argument('--expect', choices=['true', 'false'], default=None,
                              help='Esito atteso (exit 3 se diverso)')
    fixed_parser.set_defaults(func=cmd_fixed_point)

    gen_parser = subparsers.add_parser('gen-tree', help='Genera un albero 2-colorato')
    _add_generator_arguments(gen_parser)
    gen_parser.add_argument('--out', help='File di output dell\'albero')
    gen_parser.set_defaults(func=cmd_gen_tree)

    pipeline_parser = subparsers.add_parser('pipeline', help='generate -> classify -> solve -> verify')
    _add_problem_arguments(pipeline_parser)
    _add_generator_arguments(pipeline_parser, required=False)
    pipeline_parser.add_argument('--mode', choices=['centralized', 'local'], default='centralized')
    pipeline_parser.add_argument('--max-rounds', type=int, default=None)
    pipeline_parser.add_argument('--expect-solvable', action='store_true',
                                 help='Exit 3 se il problema non è risolvibile')
    pipeline_parser.add_argument('--out', help='File di output dell\'etichettatura')
    pipeline_parser.set_defaults(func=cmd_pipeline)

    args = parser.parse_args(argv)
    if args.command == 'classify' and not args.sweep and not (args.problem or args.inline or args.named):
        parser.error("classify richiede --sweep oppure uno tra --problem, --inline e --named")
    return args


def _emit(document: Dict[str, Any], pretty: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if pretty:
        stream.write(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False, default=str))
    else:
        stream.write(canonical_json(document))
    stream.write('\n')


def _error_document(e: Exception) -> Dict[str, Any]:
    document = {'error': type(e).__name__, 'message': str(e)}
    if getattr(e, 'stage', None):
        document['stage'] = e.stage
    if isinstance(e, ResourceCapError):
        document['cap'] = {'name': e.cap_name, 'value': e.cap_value}
    return document


def main(argv=None) -> int:
    args = parse_arguments(argv)
    if args.verbose:
        set_debug_mode(True)
    if args.threads != 1:
        logger.debug(f"--threads={args.threads} ignorato: l'esecuzione è sequenziale")

    try:
        document = args.func(args)
        _emit(document, args.pretty)
        return EXIT_OK
    except ExpectationFailure as e:
        logger.warning(str(e))
        _emit(e.document, args.pretty)
        return EXIT_EXPECTATION
    except InputError as e:
        logger.error(f"Input non valido: {e}")
        _emit(_error_document(e), args.pretty, sys.stderr)
        return EXIT_INPUT
    except ResourceCapError as e:
        logger.error(f"Limite superato: {e}")
        _emit(_error_document(e), args.pretty, sys.stderr)
        return EXIT_CAP
    except ArborError as e:
        logger.error(f"Errore: {e}")
        _emit(_error_document(e), args.pretty, sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
