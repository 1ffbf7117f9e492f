"""
Configuration globale pour RepVar Calculator
"""
import os
from pathlib import Path

# Répertoires
BASE_DIR = Path(__file__).resolve().parent
DATA_DIR = BASE_DIR / 'data'
SCHEMAS_DIR = DATA_DIR / 'schemas'

# Bornes de calcul
MAX_ENUM = int(os.environ.get('REPVAR_MAX_ENUM', 10**6))
MAX_SUBGROUP_ORDER = 10_000
ORDER_CUTOFF = 100_000
TRACE_STEP_BUDGET = 1_000_000

# Recherche de témoins
DEFAULT_TRIALS = int(os.environ.get('REPVAR_TRIALS', 10_000))
DEFAULT_SEED = int(os.environ.get('REPVAR_SEED', 0))
DEFAULT_JOBS = int(os.environ.get('REPVAR_JOBS', 1))
MAX_JOBS = int(os.environ.get('REPVAR_MAX_JOBS', 32))

# Journalisation
LOG_LEVEL = os.environ.get('REPVAR_LOG_LEVEL', 'WARNING')
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

# Serveur API
PORT = int(os.environ.get('PORT', 8080))
DEBUG_MODE = os.environ.get('FLASK_ENV', 'production') != 'production'

# Codes de sortie de la CLI
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNDETERMINED = 2

# Métadonnées
APP_NAME = "RepVar Calculator"
APP_VERSION = "1.0.0"
