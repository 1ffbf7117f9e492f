"""
Module de chargement des schémas JSON des sorties
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import jsonschema

import config

logger = logging.getLogger(__name__)


class SchemaLoader:
    """Chargeur des schémas de sortie depuis data/schemas"""

    def __init__(self, schemas_dir: Optional[Path] = None):
        """
        Initialise le chargeur

        Args:
            schemas_dir: Répertoire des fichiers <sous-commande>.json
        """
        self.schemas_dir = Path(schemas_dir or config.SCHEMAS_DIR)
        self.schemas: Dict[str, Dict] = {}
        self.load_schemas()

    def load_schemas(self):
        """Charge tous les schémas du répertoire"""
        if not self.schemas_dir.is_dir():
            raise FileNotFoundError(f"❌ Répertoire {self.schemas_dir} introuvable")
        for path in sorted(self.schemas_dir.glob('*.json')):
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    schema = json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"❌ Schéma JSON invalide {path.name}: {e}") from e
            jsonschema.Draft7Validator.check_schema(schema)
            self.schemas[path.stem] = schema
        logger.debug("%d schémas chargés depuis %s", len(self.schemas), self.schemas_dir)

    def get_schema(self, command: str) -> Dict:
        """Retourne le schéma d'une sous-commande"""
        if command not in self.schemas:
            raise KeyError(f"Aucun schéma pour la sous-commande {command}")
        return self.schemas[command]

    def get_commands(self) -> List[str]:
        return sorted(self.schemas)

    def validate(self, command: str, payload: Dict):
        """
        Valide une sortie contre son schéma

        Raises:
            jsonschema.ValidationError si la sortie ne respecte pas le contrat
        """
        jsonschema.validate(payload, self.get_schema(command), cls=jsonschema.Draft7Validator)


_loader: Optional[SchemaLoader] = None


def get_loader() -> SchemaLoader:
    """Chargeur partagé, créé au premier appel"""
    global _loader
    if _loader is None:
        _loader = SchemaLoader()
    return _loader
