"""
Report Generator - report tabellari JSON, CSV ed Excel per sweep e pipeline
"""

import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from core.config import PROJECT_ROOT, get_report_config
from core.exceptions import InputError
from core.log import get_scripts_logger

logger = get_scripts_logger(__name__)

GENERATOR_NAME = 'arbor ReportGenerator'


class ReportGenerator:
    """Scrive un riepilogo e una tabella di dettaglio per ogni operazione"""

    def __init__(self, output_dir: Optional[str] = None):
        config = get_report_config()
        output_dir = Path(output_dir or config['report_dir'])
        # path relativi alla root del progetto
        self.output_dir = output_dir if output_dir.is_absolute() else PROJECT_ROOT / output_dir
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise InputError(f"Directory dei report non utilizzabile: {self.output_dir}: {e}") from e

        self.report_enabled = config['enabled']
        self.enabled_formats = [fmt for fmt in config['formats'] if fmt in ('json', 'csv', 'excel')]
        logger.debug(f"ReportGenerator: output {self.output_dir}, formati {', '.join(self.enabled_formats)}")

    def generate_sweep_report(self, rows: List[Dict[str, Any]], d_max: int, delta_max: int) -> Dict[str, str]:
        """
        Report della classificazione di tutti i problemi con d <= d_max, delta <= delta_max

        Returns:
            dict: formato -> path del file generato
        """
        frame = pd.DataFrame(rows)
        summary = {
            'operation_type': 'SWEEP',
            'd_max': d_max,
            'delta_max': delta_max,
            'problems': len(frame),
        }
        if not frame.empty:
            for complexity, count in frame['complexity'].value_counts().sort_index().items():
                summary[f'count_{complexity.lower()}'] = int(count)
        return self._generate(summary, rows, 'sweep')

    def generate_pipeline_report(self, summary: Dict[str, Any], details: List[Dict[str, Any]]) -> Dict[str, str]:
        """Report di una esecuzione classify -> solve -> verify"""
        return self._generate({'operation_type': 'PIPELINE', **summary}, details, 'pipeline')

    def _generate(self, summary: Dict[str, Any], details: List[Dict[str, Any]], operation_type: str) -> Dict[str, str]:
        if not self.report_enabled:
            logger.info("Generazione report disabilitata dalla configurazione")
            return {}

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        operation_name = f"{operation_type}_{timestamp}"
        writers = {
            'json': self._generate_json_report,
            'csv': self._generate_csv_report,
            'excel': self._generate_excel_report,
        }

        report_files = {}
        for fmt in self.enabled_formats:
            try:
                path = writers[fmt](summary, details, operation_name, operation_type)
                report_files[fmt] = str(path)
                logger.info(f"Report {fmt.upper()} generato: {path}")
            except Exception as e:
                logger.error(f"Errore generazione {fmt.upper()}: {e}")
        return report_files

    @staticmethod
    def _metadata(operation_type: str) -> Dict[str, str]:
        return {
            'report_generated': datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            'operation_type': operation_type.upper(),
            'generator': GENERATOR_NAME,
        }

    def _generate_json_report(self, summary: Dict, details: List[Dict], operation_name: str, operation_type: str) -> Path:
        json_path = self.output_dir / f"{operation_name}_report.json"
        report_data = {
            'metadata': self._metadata(operation_type),
            'summary': summary,
            'details': details,
        }
        with open(json_path, 'w', encoding='utf-8') as f:
            json.dump(report_data, f, indent=2, default=str)
        return json_path

    def _generate_csv_report(self, summary: Dict, details: List[Dict], operation_name: str, operation_type: str) -> Path:
        """Solo la tabella di dettaglio; il riepilogo sta nel JSON e nell'Excel"""
        csv_path = self.output_dir / f"{operation_name}_report.csv"
        pd.DataFrame(details).to_csv(csv_path, index=False, encoding='utf-8')
        return csv_path

    def _generate_excel_report(self, summary: Dict, details: List[Dict], operation_name: str, operation_type: str) -> Path:
        excel_path = self.output_dir / f"{operation_name}_report.xlsx"
        with pd.ExcelWriter(excel_path, engine='openpyxl') as writer:
            pd.DataFrame([summary]).to_excel(writer, sheet_name='Summary', index=False)
            if details:
                pd.DataFrame(details).to_excel(writer, sheet_name='Details', index=False)
            pd.DataFrame([self._metadata(operation_type)]).to_excel(writer, sheet_name='Metadata', index=False)
        return excel_path
