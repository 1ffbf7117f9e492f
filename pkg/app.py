"""
RepVar Calculator - API REST Flask
Expose chaque sous-commande en POST /api/<sous-commande>
Version: 1.0.0
"""
import logging

from flask import Flask, jsonify, request

import config
from modules.commands import COMMANDS, RunConfig, run_command

logger = logging.getLogger(__name__)

# === CONFIGURATION FLASK ===
app = Flask(__name__)
app.config['MAX_CONTENT_LENGTH'] = 1024 * 1024
app.json.ensure_ascii = False
app.json.sort_keys = True


# === API ENDPOINTS ===
@app.route('/api/health')
def api_health():
    """API - État du service"""
    return jsonify({
        'success': True,
        'name': config.APP_NAME,
        'version': config.APP_VERSION,
        'commands': list(COMMANDS)
    })


@app.route('/api/<command>', methods=['POST'])
def api_command(command):
    """API - Exécute une sous-commande avec les options du corps JSON"""
    if command not in COMMANDS:
        return jsonify({'success': False, 'error': f"Sous-commande inconnue : {command}"}), 404
    data = request.get_json(silent=True)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        return jsonify({'success': False, 'error': "Le corps doit être un objet JSON"}), 400
    try:
        cfg = RunConfig.from_dict(command, data)
        payload, code = run_command(cfg)
    except (TypeError, ValueError) as e:
        logger.info("Requête %s refusée : %s", command, e)
        return jsonify({'success': False, 'error': str(e)}), 400
    return jsonify({'success': True, 'exit_code': code, 'result': payload})


# === GESTION DES ERREURS ===
@app.errorhandler(404)
def page_not_found(e):
    return jsonify({'success': False, 'error': "Ressource introuvable"}), 404


@app.errorhandler(405)
def method_not_allowed(e):
    return jsonify({'success': False, 'error': "Méthode non autorisée"}), 405


# === LANCEMENT ===
if __name__ == '__main__':
    logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
    print("\n" + "=" * 80)
    print(f"🧮  {config.APP_NAME.upper()} - API REST")
    print("=" * 80)
    print(f"\n✅ Serveur démarré sur http://0.0.0.0:{config.PORT}")

    # Production : gunicorn app:app
    if config.DEBUG_MODE:
        print("\n💡 Mode DÉVELOPPEMENT - Flask dev server\n")
        app.run(debug=True, host='0.0.0.0', port=config.PORT)
    else:
        print("\n🚀 Mode PRODUCTION - lancer via : gunicorn app:app\n")
