"""
Manifest di esecuzione: comando, parametri risolti e digest di input e output.

Nessun timestamp: due esecuzioni con lo stesso manifest producono gli stessi byte.
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Union

TOOL_VERSION = '1.0.0'


def canonical_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(',', ':'), ensure_ascii=False, default=str)


def digest_bytes(data: bytes) -> str:
    return 'sha256:' + hashlib.sha256(data).hexdigest()


def digest_document(document: Any) -> str:
    return digest_bytes(canonical_json(document).encode('utf-8'))


def digest_file(path: Union[str, Path]) -> str:
    return digest_bytes(Path(path).read_bytes())


@dataclass
class RunManifest:
    command: str
    parameters: Dict[str, Any]
    version: str = TOOL_VERSION
    input_digests: Dict[str, str] = field(default_factory=dict)
    output_digests: Dict[str, str] = field(default_factory=dict)

    def add_input(self, name: str, *, path: Union[str, Path, None] = None, text: str = None) -> None:
        """Digest del file se esiste, altrimenti del testo inline"""
        if path is not None and Path(path).is_file():
            self.input_digests[name] = digest_file(path)
        elif text is not None:
            self.input_digests[name] = digest_bytes(text.encode('utf-8'))

    def add_output_file(self, name: str, path: Union[str, Path]) -> None:
        self.output_digests[name] = digest_file(path)

    def add_output_document(self, name: str, document: Any) -> None:
        self.output_digests[name] = digest_document(document)

    def to_document(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'parameters': self.parameters,
            'version': self.version,
            'input_digests': dict(sorted(self.input_digests.items())),
            'output_digests': dict(sorted(self.output_digests.items())),
        }
