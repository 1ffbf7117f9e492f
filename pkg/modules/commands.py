"""
Module des sous-commandes : configuration d'exécution et construction des
sorties JSON, communs à la CLI et à l'API REST
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

import config
from modules.automorphisms import (braid_generator, certifies_non_inner,
                                   check_braid_relations, identity_aut,
                                   nielsen_generators, parse_automorphism)
from modules.character_variety import (format_polynomial, induced_action,
                                       trace_polynomial)
from modules.errors import RepVarError, UnsupportedError
from modules.faithfulness import (NotIdentity, derived_identity_word,
                                  faithfulness_report, word_identity_test)
from modules.free_group import ReducedWord, format_word, parse_word
from modules.matrix_groups import (AutSubgroupR, MatrixGroup, parse_group,
                                   parse_group_automorphism,
                                   parse_group_automorphisms, quadric_to_sl2,
                                   scalar_to_json, sl2_to_quadric,
                                   trivial_subgroup)
from modules.representation_variety import (act, evaluate_word, orbit,
                                            point_from_text, point_to_dict)
from modules.schema_loader import get_loader
from modules.weyl_group import (RootSystem, classify_faithful_n1,
                                longest_element, minus_one_in_weyl,
                                parse_factors)

logger = logging.getLogger(__name__)

COMMANDS = ('eval', 'act', 'kernel-test', 'identity-test', 'trace',
            'induced-trace-action', 'weyl-classify', 'braid-check', 'quadric')


class UsageError(RepVarError):
    """Option manquante ou incohérente"""


@dataclass
class RunConfig:
    """Options d'une exécution, validées avant l'appel de la sous-commande"""
    command: str
    group: Optional[str] = None
    n: Optional[int] = None
    word: Optional[str] = None
    point: Optional[str] = None
    auto: List[str] = field(default_factory=list)
    gamma: Optional[str] = None
    quotient: Optional[str] = None
    trials: int = config.DEFAULT_TRIALS
    seed: int = config.DEFAULT_SEED
    jobs: int = config.DEFAULT_JOBS
    mode: str = 'sample'
    output: str = 'json'
    factors: Optional[str] = None
    all_nielsen: bool = False
    verbose: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"Sous-commande inconnue : {self.command}")
        if self.trials <= 0:
            raise UsageError("--trials doit être strictement positif")
        if not 1 <= self.jobs <= config.MAX_JOBS:
            raise UsageError(f"--jobs doit être compris entre 1 et {config.MAX_JOBS}")
        if self.n is not None and self.n < 1:
            raise UsageError("--n doit être au moins 1")
        if self.mode not in ('sample', 'exhaustive'):
            raise UsageError(f"Mode inconnu : {self.mode}")
        if self.output not in ('json', 'text'):
            raise UsageError(f"Format de sortie inconnu : {self.output}")

    def require(self, *names: str):
        for name in names:
            if getattr(self, name) in (None, [], False):
                raise UsageError(f"--{name.replace('_', '-')} est requis pour {self.command}")

    @classmethod
    def from_dict(cls, command: str, data: Dict) -> "RunConfig":
        """Construit une configuration depuis un corps JSON (API REST)"""
        known = {f for f in cls.__dataclass_fields__ if f != 'command'}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"Options inconnues : {', '.join(sorted(unknown))}")
        values = dict(data)
        if isinstance(values.get('auto'), str):
            values['auto'] = [values['auto']]
        return cls(command=command, **values)


# === AIDES ===

def _group(cfg: RunConfig) -> MatrixGroup:
    cfg.require('group')
    return parse_group(cfg.group)


def _header(cfg: RunConfig, group: Optional[MatrixGroup] = None) -> Dict:
    payload = {'command': cfg.command}
    if group is not None:
        payload['group'] = str(group)
        payload['modulus'] = group.modulus
    return payload


def _quotient(cfg: RunConfig, group: MatrixGroup) -> AutSubgroupR:
    if not cfg.quotient:
        return trivial_subgroup(group)
    return parse_group_automorphisms(cfg.quotient, group)


_DELTA = re.compile(r"\s*delta(\d+)\s*$")


def _word(cfg: RunConfig, rank: Optional[int]) -> ReducedWord:
    """Mot de --word ; « delta<k> » désigne le mot de série dérivée δ_k"""
    cfg.require('word')
    match = _DELTA.match(cfg.word)
    if match:
        return derived_identity_word(int(match.group(1)))
    return parse_word(cfg.word, rank)


def _automorphisms(cfg: RunConfig, n: int) -> list:
    autos = [parse_automorphism(spec, n) for spec in cfg.auto]
    if cfg.all_nielsen:
        autos = nielsen_generators(n) + autos
    return autos


# === SOUS-COMMANDES ===

def run_eval(cfg: RunConfig) -> Tuple[Dict, int]:
    group = _group(cfg)
    cfg.require('point')
    x = point_from_text(cfg.point, group)
    w = parse_word(cfg.word or "", x.n)
    payload = _header(cfg, group)
    payload.update({'n': x.n, 'word': format_word(w), 'result': evaluate_word(w, x).to_list()})
    return payload, config.EXIT_OK


def run_act(cfg: RunConfig) -> Tuple[Dict, int]:
    group = _group(cfg)
    cfg.require('point')
    x = point_from_text(cfg.point, group)
    sigma = parse_automorphism(";".join(cfg.auto), x.n) if cfg.auto else identity_aut(x.n)
    gamma = parse_group_automorphism(cfg.gamma or 'id', group)
    image = act(sigma, gamma, x)
    payload = _header(cfg, group)
    payload.update({'n': x.n, 'auto': sigma.label, 'gamma': str(gamma)})
    if cfg.quotient:
        R = _quotient(cfg, group)
        payload['quotient_order'] = R.order
        payload['orbit'] = orbit(image, R).to_dict()
    else:
        payload['point'] = point_to_dict(image)
    return payload, config.EXIT_OK


def run_kernel_test(cfg: RunConfig) -> Tuple[Dict, int]:
    group = _group(cfg)
    cfg.require('n')
    autos = _automorphisms(cfg, cfg.n)
    if not autos:
        raise UsageError("kernel-test exige --auto ou --all-nielsen")
    R = _quotient(cfg, group)
    report = faithfulness_report(group, R, cfg.n, autos, cfg.trials, cfg.seed, cfg.mode, cfg.jobs)
    payload = {'command': cfg.command}
    payload.update(report)
    code = config.EXIT_UNDETERMINED if report['summary'] == 'undetermined' else config.EXIT_OK
    return payload, code


def run_identity_test(cfg: RunConfig) -> Tuple[Dict, int]:
    group = _group(cfg)
    w = _word(cfg, cfg.n)
    if w.is_identity():
        raise UsageError("Le mot testé doit être non vide")
    verdict = word_identity_test(w, group, cfg.trials, np.random.default_rng(cfg.seed), cfg.jobs)
    payload = _header(cfg, group)
    payload.update({'n': w.rank, 'word': format_word(w), 'seed': cfg.seed, 'jobs': cfg.jobs})
    payload.update(verdict.to_dict())
    if isinstance(verdict, NotIdentity):
        payload['value'] = evaluate_word(w, verdict.witness).to_list()
    return payload, config.EXIT_OK


def run_trace(cfg: RunConfig) -> Tuple[Dict, int]:
    w = _word(cfg, cfg.n)
    payload = _header(cfg)
    payload.update({'n': w.rank, 'word': format_word(w), 'polynomial': format_polynomial(trace_polynomial(w))})
    return payload, config.EXIT_OK


def run_induced_trace_action(cfg: RunConfig) -> Tuple[Dict, int]:
    cfg.require('n', 'auto')
    sigma = parse_automorphism(";".join(cfg.auto), cfg.n)
    action = induced_action(sigma)
    payload = _header(cfg)
    payload.update({
        'n': cfg.n,
        'auto': sigma.label,
        'action': {name: format_polynomial(P) for name, P in action.items()}
    })
    return payload, config.EXIT_OK


def run_weyl_classify(cfg: RunConfig) -> Tuple[Dict, int]:
    cfg.require('factors')
    factors = parse_factors(cfg.factors)
    n = cfg.n or 1
    details = []
    for root_type, rank in factors:
        rs = RootSystem(root_type, rank)
        details.append({
            'factor': rs.label,
            'minus_one_in_weyl': minus_one_in_weyl(rs),
            'longest_length': longest_element(rs).length
        })
    payload = _header(cfg)
    payload.update({
        'factors': [d['factor'] for d in details],
        'n': n,
        'faithful_n1': classify_faithful_n1(factors, n),
        'details': details
    })
    return payload, config.EXIT_OK


def run_braid_check(cfg: RunConfig) -> Tuple[Dict, int]:
    cfg.require('n')
    if cfg.n < 2:
        raise UnsupportedError("braid-check exige n ≥ 2")
    relations = check_braid_relations(cfg.n)
    gens = [braid_generator(i, cfg.n) for i in range(1, cfg.n)]
    distinct = len({g.forward for g in gens}) == len(gens)
    payload = _header(cfg)
    payload.update({
        'n': cfg.n,
        'relations': relations,
        'all_hold': all(r['holds'] for r in relations),
        'generators': [{'generator': g.label, 'images': g.forward.to_dict(),
                        'non_inner': certifies_non_inner(g)} for g in gens],
        'distinct': distinct
    })
    return payload, config.EXIT_OK


def run_quadric(cfg: RunConfig) -> Tuple[Dict, int]:
    group = _group(cfg)
    if group.kind != 'sl2':
        raise UnsupportedError("Le modèle quadrique concerne SL₂")
    payload = _header(cfg, group)
    if cfg.point:
        x = point_from_text(cfg.point, group)
        images = [sl2_to_quadric(g) for g in x.coords]
        payload['points'] = [[scalar_to_json(c) for c in q] for q in images]
        payload['on_quadric'] = all(quadric_to_sl2(q, group) == g for q, g in zip(images, x.coords))
        return payload, config.EXIT_OK
    images = {}
    for g in group.elements():
        images[sl2_to_quadric(g)] = g
    F = group.field
    on_quadric = all(F.reduce(x1 * x2 + x3 * x4) == 1 for x1, x2, x3, x4 in images)
    round_trip = all(quadric_to_sl2(q, group) == g for q, g in images.items())
    payload.update({
        'checked': group.order(),
        'distinct_images': len(images),
        'on_quadric': on_quadric,
        'bijective': round_trip and len(images) == group.order()
    })
    return payload, config.EXIT_OK


HANDLERS: Dict[str, Callable[[RunConfig], Tuple[Dict, int]]] = {
    'eval': run_eval,
    'act': run_act,
    'kernel-test': run_kernel_test,
    'identity-test': run_identity_test,
    'trace': run_trace,
    'induced-trace-action': run_induced_trace_action,
    'weyl-classify': run_weyl_classify,
    'braid-check': run_braid_check,
    'quadric': run_quadric,
}


def run_command(cfg: RunConfig) -> Tuple[Dict, int]:
    """
    Exécute une sous-commande et valide sa sortie contre son schéma

    Args:
        cfg: Configuration validée

    Returns:
        (sortie JSON, code de sortie)
    """
    cfg.validate()
    payload, code = HANDLERS[cfg.command](cfg)
    get_loader().validate(cfg.command, payload)
    logger.debug("Sous-commande %s terminée (code %d)", cfg.command, code)
    return payload, code
