import json
import math

import pytest
from hypothesis import given, strategies as st

from fpfunctors.agj import dual
from fpfunctors.freyd import ext1_functor, is_valid_nat, iso_functors, rep_functor, tensor_functor
from fpfunctors.modules import FpModule, invariant_factors, is_zero_module, validate_morphism
from fpfunctors.serialize import functor_to_json, module_to_json
from fpfunctors.testkit import (
    brute_ext,
    brute_ext1_cyclic,
    brute_tor,
    brute_tor1_cyclic,
    check_objectwise,
    default_testbed,
    homology_signature,
    module_signature,
    random_functor,
    random_module,
    random_nat,
)

from conftest import Z, Z8, cyc, mat

seeds = st.integers(0, 10**6)
rings = pytest.mark.parametrize("ring", [Z, Z8], ids=str)


def dump(obj):
    return json.dumps(obj, sort_keys=True).encode()


@rings
def test_default_testbed_shape(ring):
    bed = default_testbed(ring)
    mods = list(bed)
    assert mods and invariant_factors(mods[0]).factors == (0,)
    assert [m.gens for m in default_testbed(ring, extra=0)] == [m.gens for m in mods[:len(mods) - 2]]


@rings
@given(seed=seeds)
def test_generators_are_deterministic(ring, seed):
    assert dump(module_to_json(random_module(ring, seed))) == dump(module_to_json(random_module(ring, seed)))
    assert dump(functor_to_json(random_functor(ring, seed))) == dump(functor_to_json(random_functor(ring, seed)))
    a, b = random_nat(ring, seed), random_nat(ring, seed)
    assert (a.u.phi, a.v.phi) == (b.u.phi, b.v.phi)


@given(seed=seeds, bound=st.integers(0, 6))
def test_random_module_bounds(seed, bound):
    M = random_module(Z, seed, bound=bound)
    assert all(abs(x) <= bound for row in M.rel.rows() for x in row)


def test_random_module_degenerate_and_canonical():
    assert random_module(Z, 1, max_g=0).gens == 0
    for seed in range(20):
        M = random_module(Z8, seed, bound=7)
        assert all(0 <= x < 8 for row in M.rel.rows() for x in row)


@rings
@given(seed=seeds)
def test_random_arrows_are_certified(ring, seed):
    F = random_functor(ring, seed)
    f = F.arrow
    assert f.phi @ f.src.rel == f.tgt.rel @ f.cert
    assert validate_morphism(f.src, f.tgt, f.phi) is not None
    assert is_valid_nat(random_nat(ring, seed))


def test_check_objectwise_examples():
    bed = list(default_testbed(Z))
    F = ext1_functor(cyc(Z, 4))
    assert check_objectwise(F, F, bed).all_agree
    report = check_objectwise(rep_functor(cyc(Z, 4)), tensor_functor(cyc(Z, 4)), bed)
    bad = report.first_disagreement
    assert bad is not None and invariant_factors(bad.module).factors == (0,)
    assert is_zero_module(bad.left) and invariant_factors(bad.right).factors == (4,)
    assert check_objectwise(dual(rep_functor(cyc(Z, 4))), tensor_functor(cyc(Z, 4)), bed).all_agree


@rings
@given(seed=seeds)
def test_yes_verdicts_pass_objectwise_check(ring, seed):
    F = random_functor(ring, seed)
    G = dual(dual(F))
    d = iso_functors(F, G)
    if d.is_yes:
        assert check_objectwise(F, G).all_agree


# --- the brute-force oracle itself ----------------------------------------------


def test_signature_of_known_groups():
    # Z/2 x Z/2 and Z/4 have the same order but different 2-torsion
    assert module_signature(FpModule(Z, 2, mat(Z, [[2, 0], [0, 2]]))) == {1: 1, 2: 4, 4: 4}
    assert module_signature(cyc(Z, 4)) == {1: 1, 2: 2, 4: 4}
    # Z/4 -(2)-> Z/4 -(2)-> Z/4 is exact; Z/4 -(0)-> Z/4 -(2)-> Z/4 has homology Z/2
    assert homology_signature([4], [4], [4], [[2]], [[2]]) == {1: 1}
    assert homology_signature([4], [4], [4], [[0]], [[2]]) == {1: 1, 2: 2}


@pytest.mark.parametrize("a", range(2, 10))
@pytest.mark.parametrize("b", range(2, 10))
def test_cyclic_oracle_matches_gcd(a, b):
    expected = module_signature(cyc(Z, math.gcd(a, b)))
    assert brute_ext1_cyclic(a, b) == expected
    assert brute_tor1_cyclic(a, b) == expected


def test_resolution_oracle_on_noncyclic_input():
    M = FpModule(Z, 2, mat(Z, [[2, 0], [0, 6]]))
    assert brute_ext(1, M, [4]) == module_signature(FpModule(Z, 2, mat(Z, [[2, 0], [0, 2]])))
    assert brute_tor(1, M, [3]) == module_signature(cyc(Z, 3))
    assert brute_ext(0, M, [4]) == module_signature(FpModule(Z, 2, mat(Z, [[2, 0], [0, 2]])))


def test_degenerate_source_gives_zero_functor():
    from fpfunctors.freyd import is_zero_functor

    zero_src = [F for F in (random_functor(Z, s) for s in range(200)) if F.X.gens == 0]
    assert zero_src
    assert all(is_zero_functor(F) for F in zero_src)
