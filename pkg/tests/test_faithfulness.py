"""
Tests des identités de mots et des certificats de non-appartenance au noyau
"""
import numpy as np
import pytest

from modules.automorphisms import (identity_aut, inner, inversion,
                                   nielsen_generators, transvection)
from modules.errors import IndexOutOfRangeError, RankMismatchError
from modules.faithfulness import (InKernel, NotIdentity, NotInKernel,
                                  ProbablyIdentity, Undetermined,
                                  derived_identity_word, faithfulness_report,
                                  global_fixed_points, in_kernel_locus,
                                  kernel_member_exhaustive, kernel_witness_search,
                                  kernel_word, membership_X_w_gamma_i,
                                  orbit_of_sigma_equals, power_substitute,
                                  verify_identity_witness, verify_kernel_witness,
                                  word_identity_test)
from modules.free_group import format_word, parse_word
from modules.matrix_groups import (identity_automorphism,
                                   inner_automorphism_group, parse_group,
                                   trivial_subgroup)
from modules.representation_variety import point_from_text


@pytest.fixture
def center():
    return parse_group("center:p=3")


# === MOTS ===

def test_derived_identity_words():
    d1 = derived_identity_word(1)
    assert d1 == parse_word("A B a b", 2)
    d2 = derived_identity_word(2)
    assert d2.rank == 4 and len(d2) == 16
    d3 = derived_identity_word(3)
    assert d3.rank == 8 and len(d3) == 64
    with pytest.raises(ValueError):
        derived_identity_word(0)


def test_power_substitute():
    assert power_substitute(parse_word("a B", 2), 2) == parse_word("a^2 B^2", 2)
    assert power_substitute(parse_word("a B", 2), 1) == parse_word("a B", 2)
    with pytest.raises(ValueError):
        power_substitute(parse_word("a", 1), 0)


def test_kernel_word():
    assert kernel_word(transvection(1, 2, 2)) == parse_word("a b A", 2)
    assert kernel_word(inversion(1, 2)) == parse_word("A^2", 2)
    with pytest.raises(ValueError):
        kernel_word(identity_aut(2))


# === IDENTITÉS DE MOTS ===

def test_commutator_is_not_identity_of_sl2(sl2_5, rng):
    w = derived_identity_word(1)
    verdict = word_identity_test(w, sl2_5, 50, rng)
    assert isinstance(verdict, NotIdentity)
    assert verify_identity_witness(w, verdict)
    assert 1 <= verdict.trials_used <= 50


def test_solvable_groups_satisfy_derived_words(rng):
    borel = parse_group("borel:p=7")
    assert isinstance(word_identity_test(derived_identity_word(2), borel, 100, rng), ProbablyIdentity)
    assert isinstance(word_identity_test(derived_identity_word(1), borel, 100, rng), NotIdentity)
    center = parse_group("center:p=7")
    assert word_identity_test(derived_identity_word(1), center, 20, rng) == ProbablyIdentity(20)


def test_large_sl2_has_no_short_identity(sl2_101, rng):
    w = power_substitute(derived_identity_word(2), 2)
    verdict = word_identity_test(w, sl2_101, 20, rng)
    assert isinstance(verdict, NotIdentity)
    assert verify_identity_witness(w, verdict)


def test_identity_test_requires_trials(sl2_5, rng):
    with pytest.raises(ValueError):
        word_identity_test(derived_identity_word(1), sl2_5, 0, rng)


def test_identity_test_is_deterministic(sl2_5):
    w = parse_word("a^5", 1)
    first = word_identity_test(w, sl2_5, 30, np.random.default_rng(7))
    second = word_identity_test(w, sl2_5, 30, np.random.default_rng(7))
    assert first == second


def test_parallel_identity_test_is_deterministic(sl2_5):
    w = derived_identity_word(1)
    first = word_identity_test(w, sl2_5, 40, np.random.default_rng(3), jobs=2)
    second = word_identity_test(w, sl2_5, 40, np.random.default_rng(3), jobs=2)
    assert first == second
    assert isinstance(first, NotIdentity)


# === PRÉDICATS ===

def test_membership_locus(sl2_5):
    x = point_from_text("[1,1;0,1];[1,0;1,1]", sl2_5)
    one = identity_automorphism(sl2_5)
    assert membership_X_w_gamma_i(x, parse_word("a", 2), one, 1)
    assert not membership_X_w_gamma_i(x, parse_word("a b", 2), one, 1)
    with pytest.raises(IndexOutOfRangeError):
        membership_X_w_gamma_i(x, parse_word("a", 2), one, 3)


def test_in_kernel_locus(center, sl2_5):
    one = identity_automorphism(center)
    x = point_from_text("[1,0;0,1];[-1,0;0,-1]", center)
    assert in_kernel_locus(x, inversion(1, 2), one)
    assert not in_kernel_locus(x, transvection(1, 2, 2), one)
    with pytest.raises(RankMismatchError):
        in_kernel_locus(x, inversion(1, 3), one)


def test_orbit_of_sigma_equals_for_inner(sl2_3, rng):
    from modules.representation_variety import random_point
    R = inner_automorphism_group(sl2_3)
    sigma = inner(parse_word("a b", 2))
    for _ in range(10):
        assert orbit_of_sigma_equals(sigma, random_point(sl2_3, 2, rng), R)


# === NOYAU ===

def test_kernel_witness_search(sl2_5, rng):
    sigma = transvection(1, 2, 2)
    R = trivial_subgroup(sl2_5)
    verdict = kernel_witness_search(sigma, sl2_5, R, 2, 50, rng)
    assert isinstance(verdict, NotInKernel)
    assert not verdict.exhaustive
    assert verify_kernel_witness(sigma, R, verdict)


def test_kernel_search_identity_is_undetermined(sl2_5, rng):
    verdict = kernel_witness_search(identity_aut(2), sl2_5, trivial_subgroup(sl2_5), 2, 10, rng)
    assert verdict == Undetermined(10)


def test_kernel_search_rank_mismatch(sl2_5, rng):
    with pytest.raises(RankMismatchError):
        kernel_witness_search(transvection(1, 2, 3), sl2_5, trivial_subgroup(sl2_5), 2, 10, rng)


def test_inner_automorphism_undetermined_modulo_int(sl2_3, rng):
    R = inner_automorphism_group(sl2_3)
    verdict = kernel_witness_search(inner(parse_word("a B", 2)), sl2_3, R, 2, 30, rng)
    assert verdict == Undetermined(30)


def test_exhaustive_on_center(center):
    R = trivial_subgroup(center)
    verdict = kernel_member_exhaustive(transvection(1, 2, 2), center, R, 2)
    assert isinstance(verdict, NotInKernel)
    assert verdict.exhaustive
    assert str(verdict.witness) == "[1,0;0,1];[2,0;0,2]"
    assert kernel_member_exhaustive(inversion(1, 2), center, R, 2) == InKernel(4)


def test_inner_automorphisms_in_kernel_modulo_int(sl2_3):
    R = inner_automorphism_group(sl2_3)
    verdict = kernel_member_exhaustive(inner(parse_word("a b", 2)), sl2_3, R, 2)
    assert verdict == InKernel(576)


def test_global_fixed_points(center):
    assert len(global_fixed_points(center, 1)) == 2
    fixed = global_fixed_points(center, 2)
    assert [str(x) for x in fixed] == ["[1,0;0,1];[1,0;0,1]"]


# === RAPPORT ===

def test_exhaustive_report_on_center(center):
    report = faithfulness_report(center, trivial_subgroup(center), 2, nielsen_generators(2),
                                 trials=10, seed=1, mode='exhaustive')
    verdicts = {entry['spec']: entry['verdict'] for entry in report['results']}
    assert verdicts == {
        "nielsen:tau1": "NotInKernel",
        "nielsen:inv1": "InKernel",
        "nielsen:s12": "NotInKernel",
    }
    assert report['summary'] == 'kernel_found'
    assert report['quotient_order'] == 1


def test_sample_report_all_certified(sl2_5):
    report = faithfulness_report(sl2_5, trivial_subgroup(sl2_5), 2, nielsen_generators(2),
                                 trials=50, seed=42)
    assert report['summary'] == 'all_certified'
    assert all(entry['seed'] == 42 for entry in report['results'])
    assert [entry['stream'] for entry in report['results']] == [0, 1, 2]


def test_report_skips_identity(sl2_5):
    report = faithfulness_report(sl2_5, trivial_subgroup(sl2_5), 2,
                                 [identity_aut(2), transvection(1, 2, 2)], trials=20, seed=0)
    assert len(report['results']) == 1
    assert report['results'][0]['stream'] == 1


def test_sample_report_undetermined_on_center():
    G = parse_group("center:p=5")
    report = faithfulness_report(G, trivial_subgroup(G), 2, [inversion(1, 2)], trials=20, seed=0)
    assert report['summary'] == 'undetermined'
    assert report['results'][0]['verdict'] == 'Undetermined'


def test_report_is_deterministic(sl2_5):
    args = (sl2_5, trivial_subgroup(sl2_5), 3, nielsen_generators(3))
    assert faithfulness_report(*args, trials=30, seed=9) == faithfulness_report(*args, trials=30, seed=9)


def test_report_rejects_unknown_mode(sl2_5):
    with pytest.raises(ValueError):
        faithfulness_report(sl2_5, trivial_subgroup(sl2_5), 2, [], trials=1, seed=0, mode='fast')


def test_verdict_serialization(sl2_5, rng):
    verdict = word_identity_test(derived_identity_word(1), sl2_5, 50, rng)
    data = verdict.to_dict()
    assert data['verdict'] == 'NotIdentity'
    assert data['witness']['group'] == "sl2:p=5"
    assert format_word(derived_identity_word(1)) == "x1^-1 x2^-1 x1 x2"
    assert InKernel(8).to_dict() == {'verdict': 'InKernel', 'trials': 8, 'exhaustive': True}


def test_fixed_points_of_nielsen_generators_on_sl2_f3(sl2_3):
    assert [str(x) for x in global_fixed_points(sl2_3, 2)] == ["[1,0;0,1];[1,0;0,1]"]
    assert sorted(str(x) for x in global_fixed_points(sl2_3, 1)) == ["[1,0;0,1]", "[2,0;0,2]"]


@pytest.mark.parametrize("text", ["sl2:p=5", "psl2:p=5"])
def test_certificates_modulo_involution(text):
    from modules.automorphisms import braid_generator
    from modules.matrix_groups import close_subgroup, inner_automorphism
    G = parse_group(text)
    R = close_subgroup([inner_automorphism(G.element([[0, 1], [-1, 0]]))], G)
    assert R.order == 2
    n = 3
    autos = nielsen_generators(n) + [braid_generator(i, n) for i in (1, 2)] + [inner(parse_word("a", n))]
    report = faithfulness_report(G, R, n, autos, trials=10_000, seed=2024)
    assert report['summary'] == 'all_certified'
    for entry, sigma in zip(report['results'], autos):
        assert entry['spec'] == sigma.label
        assert entry['verdict'] == 'NotInKernel'


def test_second_derived_word_is_not_identity_of_sl2_f5(sl2_5):
    w = derived_identity_word(2)
    verdict = word_identity_test(w, sl2_5, 1000, np.random.default_rng(0))
    assert isinstance(verdict, NotIdentity)
    assert verify_identity_witness(w, verdict)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_borel_satisfies_second_derived_word(p):
    borel = parse_group(f"borel:p={p}")
    verdict = word_identity_test(derived_identity_word(2), borel, 1000, np.random.default_rng(p))
    assert verdict == ProbablyIdentity(1000)


@pytest.mark.parametrize("text", ["sl2:p=5", "psl2:p=5"])
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("with_involution", [False, True])
def test_certificates_for_generators_and_braids(text, n, with_involution):
    from modules.automorphisms import braid_generator
    from modules.matrix_groups import close_subgroup, inner_automorphism
    G = parse_group(text)
    if with_involution:
        R = close_subgroup([inner_automorphism(G.element([[0, 1], [-1, 0]]))], G)
    else:
        R = trivial_subgroup(G)
    autos = (nielsen_generators(n) + [braid_generator(i, n) for i in range(1, n)]
             + [inner(parse_word("a", n))])
    report = faithfulness_report(G, R, n, autos, trials=10_000, seed=2024)
    assert report['quotient_order'] == (2 if with_involution else 1)
    assert report['summary'] == 'all_certified'
    assert [entry['spec'] for entry in report['results']] == [sigma.label for sigma in autos]
