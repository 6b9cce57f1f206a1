import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ensemble import random_instance
from pcs_equiv.errors import ParseError, ValidationError
from pcs_equiv.instance import (
    Instance,
    dumps_instance,
    enumerate_sign_patterns,
    expand_pattern,
    loads_instance,
    negate,
    require_valid,
    signed_rhs,
    validate,
)
from pcs_equiv.l0 import solve_l0_branch


def test_validate_examples():
    assert validate(Instance.from_values([[1, -1]], [1])).ok
    rep = validate(Instance.from_values([[1, 0], [2, 0]], [1, 1]))
    assert not rep.ok and not rep.checks["full_row_rank"]
    rep = validate(Instance.from_values([[1, -1]], [-1]))
    assert not rep.ok and not rep.checks["b_nonnegative"]
    with pytest.raises(ValidationError):
        require_valid(Instance.from_values([[1, -1]], [-1]))


def test_square_instance_warns():
    inst = Instance.from_values([[1, 0], [0, 1]], [1, 1])
    rep = validate(inst)
    assert rep.ok and rep.warnings
    with pytest.warns(UserWarning):
        require_valid(inst)


def test_signed_rhs_examples():
    assert signed_rhs(Instance.from_values([[1, -1]], [1]), (-1,)) == (F(-1),)
    assert signed_rhs(Instance.from_values([[5, 1]], [2]), (1,)) == (F(2),)
    assert signed_rhs(Instance.from_values([[1, 0], [0, 1]], [0, 3]), (-1, 1)) == (F(0), F(3))


def test_sign_pattern_examples():
    inst = Instance.from_values([[1, -1]], [1])
    assert enumerate_sign_patterns(inst, reduce_symmetry=False) == [(-1,), (1,)]
    assert enumerate_sign_patterns(inst) == [(1,)]
    inst2 = Instance.from_values([[1, 0, 1], [0, 1, 1]], [0, 1])
    assert enumerate_sign_patterns(inst2) == [(1, 1)]
    assert len(enumerate_sign_patterns(inst2, reduce_symmetry=False)) == 4


def test_expand_covers_all_patterns():
    inst = Instance.from_values([[1, 0, 1], [0, 1, 1], [1, 1, 0]], [0, 2, 3])
    covered = {full for eps in enumerate_sign_patterns(inst) for full, _ in expand_pattern(inst, eps)}
    assert covered == set(itertools.product((-1, 1), repeat=3))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_signed_rhs_antipodal(seed):
    inst = random_instance(random.Random(seed), positive_b=False)
    for eps in enumerate_sign_patterns(inst, reduce_symmetry=False):
        assert signed_rhs(inst, negate(eps)) == tuple(-v for v in signed_rhs(inst, eps))


def _branch_union(inst, patterns, expand):
    out = set()
    for eps in patterns:
        _, sols = solve_l0_branch(inst.phi, signed_rhs(inst, eps))
        if expand:
            for _, sign in expand_pattern(inst, eps):
                out |= {tuple(sign * v for v in x) for x in sols}
        else:
            out |= set(sols)
    return out


@pytest.mark.parametrize("seed", range(30))
def test_reduced_enumeration_reexpands_to_full_union(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, m_choices=(1, 2, 3), n_choices=(3, 4), positive_b=False)
    full = _branch_union(inst, enumerate_sign_patterns(inst, reduce_symmetry=False), expand=False)
    reduced = _branch_union(inst, enumerate_sign_patterns(inst), expand=True)
    assert full == reduced


def test_zero_entry_reduction_by_brute_force():
    inst = Instance.from_values([[1, 0, 2], [0, 1, -1]], [0, 1])
    full = _branch_union(inst, enumerate_sign_patterns(inst, reduce_symmetry=False), expand=False)
    reduced = _branch_union(inst, [(1, 1)], expand=True)
    assert full == reduced


def test_file_round_trip_is_bit_exact():
    text = '{"m": 2, "n": 3, "phi": [[1, "-2/3", 0.25], ["7", 0, "1e-2"]], "b": ["1/7", 2.5]}'
    inst = loads_instance(text)
    assert inst.phi[0] == (F(1), F(-2, 3), F(1, 4))
    assert inst.phi[1][2] == F(1, 100)
    assert inst.b == (F(1, 7), F(5, 2))
    dumped = dumps_instance(inst)
    assert loads_instance(dumped) == inst
    assert dumps_instance(loads_instance(dumped)) == dumped


def test_decimal_literals_are_exact():
    inst = loads_instance('{"m": 1, "n": 2, "phi": [[0.1, 0.2]], "b": [0.3]}')
    assert inst.phi[0] == (F(1, 10), F(1, 5))
    assert inst.b == (F(3, 10),)


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"m": 1, "n": 2, "phi": [[1, -1]]}', "b"),
        ('{"m": 1, "n": 2, "phi": [[1]], "b": [1]}', "phi"),
        ('{"m": 1, "n": 2, "phi": [[1, "x"]], "b": [1]}', "phi[0][1]"),
        ('{"m": 1, "n": 2, "phi": [[1, "1/0"]], "b": [1]}', "phi[0][1]"),
        ('{"m": 0, "n": 2, "phi": [], "b": []}', "m"),
        ('{"m": 1, "n": 2, "phi": [[1, 2]], "b": [true]}', "b[0]"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(ParseError) as exc:
        loads_instance(text)
    assert exc.value.field == field
    assert field in str(exc.value)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        loads_instance('{"m": 1,\n "n": 2 "phi": []}')
    assert exc.value.line == 2
