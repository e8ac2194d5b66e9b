from __future__ import annotations

import numpy as np
import pytest

from quadrica import (
    ALGEBRA_KINDS,
    FAMILY_KINDS,
    AlgebraData,
    ExampleSpec,
    build_example,
    commutativity_census,
    module_from_algebra,
    set_config,
    verify_bhp_module,
)
from quadrica.errors import InvalidEpsilon, NotAnAlgebra, PreconditionUnmet


def test_kind_catalogues():
    assert FAMILY_KINDS == ("classical", "rnil", "lambda", "tensor", "sym", "gamma")
    assert ALGEBRA_KINDS == ("lie", "assoc", "comm", "divided")


def test_build_example_accepts_spec_objects():
    a = build_example(ExampleSpec("sym", 2))
    b = build_example("sym", 2)
    assert np.array_equal(a.re.mul, b.re.mul) and np.array_equal(a.act, b.act)


def test_unknown_kind():
    with pytest.raises(PreconditionUnmet):
        build_example("octonion", 2)


@pytest.mark.parametrize("n", [3, 4])
def test_tensor_family_projected_action_formula(n):
    """P of the two-slot action applied to an H value collapses to
    (0, 2*r*r'*s'') -- the computation that pins down which distributivity
    the pair ring drops."""
    sr = build_example("tensor", n)
    for e1 in range(n * n):
        r1 = e1 // n
        for e2 in range(n * n):
            r2 = e2 // n
            for e3 in range(n * n):
                s3 = e3 % n
                lhs = sr.p[sr.act[e1, e2, sr.h[e3], sr.one]]
                assert lhs == (2 * r1 * r2 * s3) % n  # (0, k) sits at index k


def test_gamma_epsilon_validity_sets():
    valid = {2: {0, 1}, 3: {0}, 4: {0, 2}}
    for n, eps_set in valid.items():
        for eps in range(n):
            if eps in eps_set:
                build_example("gamma", n, epsilon=eps)
            else:
                with pytest.raises(InvalidEpsilon):
                    build_example("gamma", n, epsilon=eps)


def test_gamma_commutativity_census():
    set_config(cap_ring=64, cap_group=256)
    rows = commutativity_census([ExampleSpec("gamma", n, 0) for n in range(2, 7)])
    assert [r["n"] for r in rows] == [2, 3, 4, 5, 6]
    assert all(r["commutative"] for r in rows)
    assert all(r["i2_equals_2R"] for r in rows)


def test_census_plain_rings_lack_the_gamma_column():
    rows = commutativity_census([("sym", 2, None), ("rnil", 3, None)])
    assert all(r["commutative"] for r in rows)
    assert all("i2_equals_2R" not in r for r in rows)


def _heisenberg_gamma_data() -> AlgebraData:
    """Divided-power data on (Z/2)^3 with index 4a + 2b + c: gamma(a,b,c)
    counts the cross term ab into the last coordinate, so its polar form
    is the Heisenberg pairing and every gamma value annihilates products."""
    return AlgebraData(
        n=2,
        factors=(2, 2, 2),
        gamma_map=tuple(1 if (i >> 2) & 1 and (i >> 1) & 1 else 0 for i in range(8)),
    )


def test_module_from_algebra_round_trips():
    lie = module_from_algebra(
        "lie",
        AlgebraData(n=3, factors=(3, 3), product=tuple((0,) * 9 for _ in range(9))),
    )
    assert verify_bhp_module(lie).passed
    assert lie.sr.re.order == 3  # realized over the exterior-style ring

    # m*q = 2mq on Z/4: bilinear, symmetric, and all triples vanish mod 4
    doubled = tuple(tuple((2 * m * q) % 4 for q in range(4)) for m in range(4))
    assoc = module_from_algebra(
        "assoc",
        AlgebraData(n=4, factors=(4,), product=doubled),
    )
    assert verify_bhp_module(assoc).passed
    assert assoc.nm == 4

    comm = module_from_algebra(
        "comm",
        AlgebraData(n=4, factors=(4,), product=doubled),
    )
    assert verify_bhp_module(comm).passed

    div = module_from_algebra("divided", _heisenberg_gamma_data())
    assert verify_bhp_module(div).passed
    assert div.nm == 8


def test_module_from_algebra_rejections():
    with pytest.raises(PreconditionUnmet):
        module_from_algebra("jordan", _heisenberg_gamma_data())
    with pytest.raises(NotAnAlgebra):  # factor order must divide the modulus
        module_from_algebra("lie", AlgebraData(n=2, factors=(3,), product=((0,) * 3,) * 3))
    with pytest.raises(NotAnAlgebra):  # lie products must be alternating
        module_from_algebra("lie", AlgebraData(n=2, factors=(2,), product=((0, 0), (0, 1))))
    with pytest.raises(NotAnAlgebra):  # comm products must be symmetric
        module_from_algebra("comm", AlgebraData(n=2, factors=(2, 2), product=tuple((0,) * 3 + (1,) for _ in range(4))))
    with pytest.raises(NotAnAlgebra):  # divided data needs its gamma table
        module_from_algebra("divided", AlgebraData(n=2, factors=(2,)))
    with pytest.raises(NotAnAlgebra):  # gamma must vanish at zero
        module_from_algebra("divided", AlgebraData(n=2, factors=(2,), gamma_map=(1, 0)))
    with pytest.raises(NotAnAlgebra):  # wrong product shape
        module_from_algebra("assoc", AlgebraData(n=2, factors=(2,), product=((0, 0),)))
