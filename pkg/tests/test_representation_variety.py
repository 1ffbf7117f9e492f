"""
Tests de la variété de représentations et des actions de Aut(F_n)×Aut(G)
"""
import pytest

from modules.automorphisms import (compose_aut, identity_aut, inner, inversion,
                                   nielsen_generators, transvection)
from modules.errors import (BoundExceededError, DescriptorMismatchError,
                            ParseError, RankMismatchError, UnsupportedError)
from modules.free_group import parse_word
from modules.matrix_groups import (close_subgroup, composite,
                                   identity_automorphism, inner_automorphism,
                                   parse_group)
from modules.representation_variety import (Point, act, commutes_with_all,
                                            enumerate_X, evaluate_word,
                                            gamma_X, homomorphism, make_point,
                                            orbit, orbit_members,
                                            point_from_text, point_to_dict,
                                            pushforward, random_point,
                                            sigma_on_quotient, sigma_X)


@pytest.fixture
def UL(sl2_5):
    return point_from_text("[1,1;0,1];[1,0;1,1]", sl2_5)


def test_point_from_text(UL):
    assert UL.n == 2
    assert str(UL) == "[1,1;0,1];[1,0;1,1]"
    assert point_to_dict(UL) == {
        'group': "sl2:p=5",
        'modulus': 5,
        'coords': [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]
    }


@pytest.mark.parametrize("text", ["[1,1;0,1];;[1,0;1,1]", "[1,1;0,1", "[1,1;0,1]]", "[2,0;0,1]"])
def test_point_from_text_errors(sl2_5, text):
    with pytest.raises(ParseError):
        point_from_text(text, sl2_5)


def test_point_rejects_foreign_coordinates(sl2_3, sl2_5):
    with pytest.raises(DescriptorMismatchError):
        make_point(sl2_5, [sl2_3.identity()])


def test_evaluate_word(UL):
    assert evaluate_word(parse_word("a b", 2), UL).to_list() == [[2, 1], [1, 1]]
    assert evaluate_word(parse_word("", 2), UL).is_identity()
    U, L = UL.coords
    expected = U.inverse() * L.inverse() * U * L
    assert evaluate_word(parse_word("A B a b", 2), UL) == expected


def test_evaluate_rank_mismatch(UL):
    with pytest.raises(RankMismatchError):
        evaluate_word(parse_word("a b c", 3), UL)


def test_act_by_transvection(UL):
    image = act(transvection(1, 2, 2), identity_automorphism(UL.group), UL)
    assert [g.to_list() for g in image.coords] == [[[0, 1], [4, 1]], [[1, 0], [1, 1]]]


def test_sigma_X_is_anti_action(sl2_5, rng):
    sigma, tau = transvection(1, 2, 2), inversion(2, 2)
    for _ in range(10):
        x = random_point(sl2_5, 2, rng)
        assert sigma_X(compose_aut(sigma, tau), x) == sigma_X(tau, sigma_X(sigma, x))


def test_act_is_left_action(sl2_5, rng):
    sigma = transvection(1, 2, 2)
    tau = compose_aut(inversion(1, 2), nielsen_generators(2)[0])
    gamma = inner_automorphism(sl2_5.element([[1, 1], [0, 1]]))
    delta = inner_automorphism(sl2_5.element([[2, 0], [0, 3]]))
    for _ in range(10):
        x = random_point(sl2_5, 2, rng)
        lhs = act(compose_aut(sigma, tau), composite([gamma, delta], sl2_5), x)
        assert lhs == act(sigma, gamma, act(tau, delta, x))


def test_act_by_identity(UL):
    assert act(identity_aut(2), identity_automorphism(UL.group), UL) == UL


def test_inner_automorphism_of_F_n_is_gamma_action(sl2_5, rng):
    t = parse_word("a B", 2)
    x = random_point(sl2_5, 2, rng)
    t_x = evaluate_word(t, x)
    # x∘int_t = int_{t(x)}∘x
    assert sigma_X(inner(t), x) == gamma_X(inner_automorphism(t_x), x)


def test_orbit_under_involution(sl2_3):
    R = close_subgroup([inner_automorphism(sl2_3.element([[0, 1], [-1, 0]]))], sl2_3)
    x = point_from_text("[1,1;0,1];[1,0;1,1]", sl2_3)
    rep = orbit(x, R)
    assert rep.orbit_size == 2
    assert rep.canonical == orbit_members(x, R)[0]
    assert rep.canonical.order_key() <= x.order_key()


def test_orbit_is_class_invariant(sl2_3, rng):
    R = close_subgroup([inner_automorphism(sl2_3.element([[0, 1], [-1, 0]]))], sl2_3)
    for _ in range(10):
        x = random_point(sl2_3, 2, rng)
        for gamma in R:
            assert orbit(gamma_X(gamma, x), R) == orbit(x, R)


def test_sigma_on_quotient_is_well_defined(sl2_3, rng):
    R = close_subgroup([inner_automorphism(sl2_3.element([[0, 1], [-1, 0]]))], sl2_3)
    sigma = transvection(1, 2, 2)
    for _ in range(10):
        x = random_point(sl2_3, 2, rng)
        images = {sigma_on_quotient(sigma, orbit(y, R), R) for y in orbit_members(x, R)}
        assert len(images) == 1
        assert images.pop() == orbit(sigma_X(sigma, x), R)


def test_commutes_with_all(UL, sl2_5):
    assert commutes_with_all(sl2_5.element([[-1, 0], [0, -1]]), UL)
    assert not commutes_with_all(sl2_5.element([[1, 1], [0, 1]]), UL)


def test_pushforward_commutes_with_evaluation(sl2_5, rng):
    theta = homomorphism('sl2_to_psl2', sl2_5)
    w = parse_word("a b A b^2", 2)
    for _ in range(10):
        x = random_point(sl2_5, 2, rng)
        assert theta(evaluate_word(w, x)) == evaluate_word(w, pushforward(theta, x))


def test_projection_kills_center(sl2_5):
    theta = homomorphism('sl2_to_psl2', sl2_5)
    assert theta(sl2_5.element([[-1, 0], [0, -1]])).is_identity()
    assert str(theta.target) == "psl2:p=5"


def test_inclusions():
    borel = parse_group("borel:p=5")
    theta = homomorphism('borel_to_sl2', borel)
    g = borel.element([[2, 1], [0, 3]])
    assert theta(g).entries == g.entries
    assert str(theta.target) == "sl2:p=5"


def test_homomorphism_errors(sl2_5):
    with pytest.raises(UnsupportedError):
        homomorphism('sl2_to_gl', sl2_5)
    with pytest.raises(DescriptorMismatchError):
        homomorphism('borel_to_sl2', sl2_5)
    theta = homomorphism('sl2_to_psl2', sl2_5)
    with pytest.raises(DescriptorMismatchError):
        theta(parse_group("sl2:p=7").identity())


def test_enumerate_small_variety():
    G = parse_group("center:p=3")
    points = list(enumerate_X(G, 3))
    assert len(points) == 8
    assert len(set(points)) == 8
    assert all(isinstance(x, Point) and x.n == 3 for x in points)


def test_enumerate_bound(sl2_3, sl2_5):
    with pytest.raises(BoundExceededError):
        next(enumerate_X(sl2_5, 3))
    with pytest.raises(BoundExceededError):
        next(enumerate_X(sl2_3, 2, bound=100))
    assert sum(1 for _ in enumerate_X(sl2_3, 2)) == 576


def test_enumerate_reads_configured_bound(monkeypatch, sl2_3):
    import config
    monkeypatch.setattr(config, 'MAX_ENUM', 10)
    with pytest.raises(BoundExceededError):
        next(enumerate_X(sl2_3, 1))


def test_borel_points_stay_in_borel(rng):
    borel = parse_group("borel:p=7")
    theta = homomorphism('borel_to_sl2', borel)
    sigma = transvection(2, 1, 3)
    for _ in range(10):
        x = random_point(borel, 3, rng)
        image = sigma_X(sigma, x)
        assert all(g.entries[1][0] == 0 for g in image.coords)
        assert pushforward(theta, image) == sigma_X(sigma, pushforward(theta, x))


def test_central_multiplicativity(sl2_101, rng):
    minus = sl2_101.element([[-1, 0], [0, -1]])
    sigma = compose_aut(transvection(1, 2, 2), inversion(2, 2))
    for _ in range(10):
        x = random_point(sl2_101, 2, rng)
        c = make_point(sl2_101, [minus, sl2_101.identity()])
        cx = make_point(sl2_101, [a * b for a, b in zip(c.coords, x.coords)])
        lhs = sigma_X(sigma, cx)
        rhs = [a * b for a, b in zip(sigma_X(sigma, c).coords, sigma_X(sigma, x).coords)]
        assert list(lhs.coords) == rhs


def test_inner_fixed_point_criterion(sl2_5, rng):
    t = parse_word("a b", 2)
    for _ in range(20):
        x = random_point(sl2_5, 2, rng)
        fixed = sigma_X(inner(t), x) == x
        assert fixed == commutes_with_all(evaluate_word(t, x), x)


def test_orbits_partition_variety(sl2_3):
    R = close_subgroup([inner_automorphism(sl2_3.element([[0, 1], [-1, 0]]))], sl2_3)
    seen = {}
    for x in enumerate_X(sl2_3, 2):
        rep = orbit(x, R)
        assert R.order % rep.orbit_size == 0
        seen.setdefault(rep.canonical, set()).add(x)
    assert sum(len(members) for members in seen.values()) == 576
    for canonical, members in seen.items():
        assert len(members) == orbit(canonical, R).orbit_size


def test_quotient_equivariance_square(sl2_3):
    R = close_subgroup([inner_automorphism(sl2_3.element([[0, 1], [-1, 0]]))], sl2_3)
    for sigma in nielsen_generators(2):
        for x in enumerate_X(sl2_3, 2):
            assert sigma_on_quotient(sigma, orbit(x, R), R) == orbit(sigma_X(sigma, x), R)


# === INVARIANTS À GRANDE ÉCHELLE ===

def random_automorphism(n, rng, length=3):
    gens = nielsen_generators(n)
    gens = gens + [g.inverted() for g in gens]
    sigma = identity_aut(n)
    for _ in range(length):
        sigma = compose_aut(sigma, gens[int(rng.integers(0, len(gens)))])
    return sigma


@pytest.mark.parametrize("n", [2, 3])
def test_anti_action_over_f101(sl2_101, rng, n):
    for _ in range(1000):
        sigma, tau = random_automorphism(n, rng), random_automorphism(n, rng)
        x = random_point(sl2_101, n, rng)
        assert sigma_X(compose_aut(sigma, tau), x) == sigma_X(tau, sigma_X(sigma, x))


@pytest.mark.parametrize("n", [2, 3])
def test_borel_stability_for_each_generator(rng, n):
    borel = parse_group("borel:p=7")
    for sigma in nielsen_generators(n):
        for _ in range(20):
            image = sigma_X(sigma, random_point(borel, n, rng))
            assert all(g.entries[1][0] == 0 for g in image.coords)


@pytest.mark.parametrize("n", [2, 3])
def test_central_multiplicativity_for_each_generator(sl2_101, rng, n):
    signs = [sl2_101.identity(), sl2_101.element([[-1, 0], [0, -1]])]
    for sigma in nielsen_generators(n):
        for _ in range(20):
            c = make_point(sl2_101, [signs[int(rng.integers(0, 2))] for _ in range(n)])
            x = random_point(sl2_101, n, rng)
            cx = make_point(sl2_101, [a * b for a, b in zip(c.coords, x.coords)])
            expected = [a * b for a, b in zip(sigma_X(sigma, c).coords, sigma_X(sigma, x).coords)]
            assert list(sigma_X(sigma, cx).coords) == expected


@pytest.mark.parametrize("n", [2, 3])
def test_projection_is_equivariant(sl2_101, rng, n):
    theta = homomorphism('sl2_to_psl2', sl2_101)
    for sigma in nielsen_generators(n):
        for _ in range(20):
            x = random_point(sl2_101, n, rng)
            assert pushforward(theta, sigma_X(sigma, x)) == sigma_X(sigma, pushforward(theta, x))


@pytest.mark.parametrize("text", ["a", "a b"])
def test_inner_fixed_points_on_sl2_f3(sl2_3, text):
    t = parse_word(text, 2)
    for x in enumerate_X(sl2_3, 2):
        fixed = sigma_X(inner(t), x) == x
        assert fixed == commutes_with_all(evaluate_word(t, x), x)
