"""
RepVar Calculator - Interface en ligne de commande
Actions de Aut(F_n) sur les variétés de représentations Gⁿ
Version: 1.0.0
"""
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

import config
from modules.commands import COMMANDS, RunConfig, run_command

logger = logging.getLogger(__name__)


class UsageArgumentParser(argparse.ArgumentParser):
    """argparse sortant avec le code d'usage de l'application"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(config.EXIT_USAGE, f"❌ {self.prog}: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = UsageArgumentParser(prog='repvar', description=f"{config.APP_NAME} {config.APP_VERSION}")
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=UsageArgumentParser)
    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        sub.add_argument('--group', help="Descripteur : sl2:p=5, psl2:p=7, gl:d=3,p=5, sl2:Q, borel:p=7, center:p=5")
        sub.add_argument('--n', type=int, help="Rang du groupe libre")
        sub.add_argument('--word', help="Mot : 'a b A B' ou 'x1 x2^-1', ou delta<k>")
        sub.add_argument('--point', help="Point : '[1,1;0,1];[1,0;1,1]'")
        sub.add_argument('--auto', action='append', default=[],
                         help="Automorphisme de F_n (répétable) : nielsen:s12, braid:1, inner:a, ...")
        sub.add_argument('--gamma', help="Automorphisme de G : inner:<matrice>, transpose-inverse, id")
        sub.add_argument('--quotient', help="Générateurs de R séparés par '|', ou Int")
        sub.add_argument('--trials', type=int, default=config.DEFAULT_TRIALS)
        sub.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
        sub.add_argument('--jobs', type=int, default=config.DEFAULT_JOBS)
        sub.add_argument('--mode', choices=['sample', 'exhaustive'], default='sample')
        sub.add_argument('--output', choices=['json', 'text'], default='json')
        sub.add_argument('--factors', help="Facteurs simples : A2,D5,E6")
        sub.add_argument('--all-nielsen', action='store_true')
        sub.add_argument('--verbose', '-v', action='store_true')
    return parser


def setup_logging(verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr, force=True)


def to_json(payload: Dict) -> str:
    """Sortie JSON stable (clés triées) pour comparaison octet à octet"""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def format_text(payload: Dict) -> str:
    """Rendu lisible d'une sortie, avec marqueurs ✅ / ⚠️"""
    command = payload['command']
    lines = []
    if command == 'kernel-test':
        lines.append(f"{payload['group']}  n={payload['n']}  |R|={payload['quotient_order']}  mode={payload['mode']}")
        for entry in payload['results']:
            mark = "⚠️ " if entry['verdict'] == 'Undetermined' else "✅"
            lines.append(f"{mark} {entry['spec']}: {entry['verdict']} ({entry['trials']} essais)")
        lines.append(f"Bilan : {payload['summary']}")
    elif command == 'identity-test':
        mark = "✅" if payload['verdict'] == 'NotIdentity' else "⚠️ "
        lines.append(f"{mark} {payload['word']} sur {payload['group']}: {payload['verdict']}")
    elif command == 'trace':
        lines.append(payload['polynomial'])
    elif command == 'induced-trace-action':
        lines.extend(f"{name} ↦ {poly}" for name, poly in payload['action'].items())
    elif command == 'weyl-classify':
        for detail in payload['details']:
            lines.append(f"{detail['factor']}: -1 ∈ W = {detail['minus_one_in_weyl']}")
        mark = "✅" if payload['faithful_n1'] else "⚠️ "
        lines.append(f"{mark} fidèle : {payload['faithful_n1']}")
    elif command == 'braid-check':
        for relation in payload['relations']:
            lines.append(f"{'✅' if relation['holds'] else '❌'} {relation['relation']}")
    else:
        lines.append(to_json(payload))
    return "\n".join(lines)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        group=args.group,
        n=args.n,
        word=args.word,
        point=args.point,
        auto=list(args.auto),
        gamma=args.gamma,
        quotient=args.quotient,
        trials=args.trials,
        seed=args.seed,
        jobs=args.jobs,
        mode=args.mode,
        output=args.output,
        factors=args.factors,
        all_nielsen=args.all_nielsen,
        verbose=args.verbose
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Point d'entrée

    Returns:
        0 succès, 1 usage ou lecture, 2 verdict indéterminé
    """
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    setup_logging(cfg.verbose)
    try:
        payload, code = run_command(cfg)
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return config.EXIT_USAGE
    print(format_text(payload) if cfg.output == 'text' else to_json(payload))
    return code


if __name__ == '__main__':
    sys.exit(main())
