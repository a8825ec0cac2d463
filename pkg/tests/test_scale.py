"""Scale function: closed form, coset-index oracle, minimizing checks,
modular function."""

from fractions import Fraction

import pytest

from treescale import (
    BallFixatorSpec,
    OracleBudget,
    OracleBudgetError,
    PortraitAut,
    ROOT,
    TreeParams,
    Vertex,
    compose,
    compose_all,
    identity,
    invert,
    is_minimizing,
    modular,
    power,
    scale,
    scale_bruteforce_index,
    spine_shift,
)
from treescale.sampling import (
    random_automorphism,
    random_ball_fixator_element,
    random_elliptic,
    random_hyperbolic,
)

from conftest import enumerate_index_oracle


def test_scale_paper_values(t3, t23):
    # homogeneous q=2: s = q^l
    assert scale(spine_shift(t3, 1)) == 2
    assert scale(spine_shift(t3, 3)) == 8
    # biregular (2,3): s = (qE*qO)^(l/2)
    assert scale(spine_shift(t23, 2)) == 6
    assert scale(spine_shift(t23, 4)) == 36


def test_scale_elliptic_is_one(t3, rng):
    assert scale(identity(t3)) == 1
    for _ in range(30):
        assert scale(random_elliptic(rng, t3)) == 1


def test_scale_independent_of_axis_vertex(t3, t23, rng):
    from treescale.automorphism import axis_window, motion_profile
    from treescale.tree_core import path_between

    for params in (t3, t23):
        for _ in range(30):
            g = random_hyperbolic(rng, params)
            value = scale(g)
            for w in axis_window(g, 1):
                product = 1
                for v in path_between(w, g.apply(w))[1:]:
                    product *= params.branching(v.parity)
                assert product == value


def test_bruteforce_trivial(t3):
    fix = BallFixatorSpec(ROOT, 1)
    assert scale_bruteforce_index(identity(t3), fix) == 1
    rot = PortraitAut(t3, 1, {(): {0: 2, 1: 1, 2: 0}})
    assert scale_bruteforce_index(rot, fix) == 1  # elliptic fixing center
    assert scale_bruteforce_index(spine_shift(t3, 1), fix) == 2


def test_bruteforce_matches_exhaustive_enumeration(t3, t23, rng):
    cases = [
        (t3, spine_shift(t3, 1), ROOT, 1),
        (t3, spine_shift(t3, 2), ROOT, 1),
        (t3, spine_shift(t3, 1), Vertex((2,)), 1),  # off-axis center
        (t3, spine_shift(t3, 2), ROOT, 2),  # radius-2 ball over-fixes
        (t3, PortraitAut(t3, 1, {(): {0: 1, 1: 0, 2: 2}}), ROOT, 1),
        (t3, identity(t3), Vertex((1,)), 1),
        (t23, spine_shift(t23, 2), ROOT, 1),
        (t23, spine_shift(t23, 2), Vertex((1,)), 1),  # odd-parity center
    ]
    for params, g, center, radius in cases:
        fix = BallFixatorSpec(center, radius)
        got = scale_bruteforce_index(g, fix)
        want = enumerate_index_oracle(params, g, center, radius)
        assert got == want, (g, center, radius, got, want)


def test_minimizing_on_and_off_axis(t3):
    g = spine_shift(t3, 1)
    assert is_minimizing(BallFixatorSpec(ROOT, 1), g)
    off = BallFixatorSpec(Vertex((2,)), 1)
    assert not is_minimizing(off, g)
    assert scale_bruteforce_index(g, off) > scale(g)


def test_minimizing_elliptic_fixing_center(t3, rng):
    for _ in range(20):
        g = random_ball_fixator_element(rng, t3, 1)
        assert is_minimizing(BallFixatorSpec(ROOT, 1), g)


def test_larger_balls_need_not_minimize(t3):
    # the radius-2 fixator over-fixes near the axis
    g = spine_shift(t3, 2)
    assert scale_bruteforce_index(g, BallFixatorSpec(ROOT, 2)) == 8
    assert scale(g) == 4


def test_oracle_budget_enforced(t3):
    g = spine_shift(t3, 2)
    with pytest.raises(OracleBudgetError):
        scale_bruteforce_index(g, BallFixatorSpec(ROOT, 4))
    with pytest.raises(OracleBudgetError):
        scale_bruteforce_index(power(g, 3), BallFixatorSpec(ROOT, 1))
    big = TreeParams(4, 4)
    with pytest.raises(OracleBudgetError):
        scale_bruteforce_index(spine_shift(big, 1), BallFixatorSpec(ROOT, 1))
    scale_bruteforce_index(
        power(g, 3),
        BallFixatorSpec(ROOT, 1),
        OracleBudget(max_displacement=6),
    )


def test_power_law(t3, t23, rng):
    for params in (t3, t23):
        for _ in range(60):
            g = random_automorphism(rng, params)
            s = scale(g)
            for n in range(1, 5):
                assert scale(power(g, n)) == s**n


def test_spectral_radius_consistency(t3):
    # for minimizing V the index is multiplicative along powers
    g = spine_shift(t3, 1)
    fix = BallFixatorSpec(ROOT, 1)
    budget = OracleBudget(max_displacement=4)
    for n in range(1, 4):
        assert scale_bruteforce_index(power(g, n), fix, budget) == scale(g) ** n


def test_double_coset_law(t3, rng):
    x = spine_shift(t3, 2)
    fix = BallFixatorSpec(ROOT, 1)
    assert is_minimizing(fix, x)
    for _ in range(40):
        n = rng.randrange(1, 4)
        word = [random_ball_fixator_element(rng, t3, 1)]
        for _ in range(n):
            word.append(x)
            word.append(random_ball_fixator_element(rng, t3, 1))
        y = compose_all(t3, word)
        assert scale(y) == scale(x) ** n


def test_generated_semigroup_multiplicative(t3, rng):
    x = spine_shift(t3, 2)

    def sample(reps):
        word = [random_ball_fixator_element(rng, t3, 1)]
        for _ in range(reps):
            word.append(x)
            word.append(random_ball_fixator_element(rng, t3, 1))
        return compose_all(t3, word)

    for _ in range(30):
        y = sample(rng.randrange(1, 3))
        z = sample(rng.randrange(1, 3))
        assert scale(compose(y, z)) == scale(y) * scale(z)


def test_modular_trivial_and_homomorphism(t3, rng):
    assert modular(identity(t3)) == Fraction(1)
    for _ in range(60):
        g = random_automorphism(rng, t3)
        # the full automorphism group is unimodular here
        assert modular(g) == 1
    for _ in range(60):
        g = random_automorphism(rng, t3)
        h = random_automorphism(rng, t3)
        assert modular(compose(g, h)) == modular(g) * modular(h)
