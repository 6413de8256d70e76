import itertools

import pytest

from fpfunctors.agj import dual, satellite
from fpfunctors.freyd import (
    ext1_functor,
    functor_sum,
    rep_functor,
    tensor_functor,
    zero_functor,
)
from fpfunctors.linkage import (
    STAGES,
    candidate_module,
    extension_recognize,
    linkage_chain,
    linkage_table,
    linked_functor,
    linked_module,
    omega_tr,
)
from fpfunctors.modules import (
    FpModule,
    direct_sum,
    invariant_factors,
    is_projective,
    is_zero_module,
    iso_modules,
    syzygy,
    transpose,
)
from fpfunctors.ring import RingSpec
from fpfunctors.testkit import check_objectwise, default_testbed

from conftest import Z, Z8, cyc


def factors(M):
    return invariant_factors(M).factors


def test_omega_tr_examples():
    assert iso_modules(omega_tr(cyc(Z, 4)), FpModule.free(Z, 1))
    assert is_zero_module(omega_tr(FpModule.free(Z, 2)))
    assert is_zero_module(omega_tr(FpModule.free(Z8, 1)))
    assert iso_modules(omega_tr(cyc(Z8, 2)), cyc(Z8, 4))


def test_linked_module_examples():
    linked, trace = linked_module(cyc(Z8, 2))
    assert linked and trace.render() == "2 -> 2 -> 4 -> 4 -> 2"
    assert len(trace.modules) == len(STAGES)
    linked, trace = linked_module(cyc(Z8, 4))
    assert linked and trace.render() == "4 -> 4 -> 2 -> 2 -> 4"
    linked, trace = linked_module(cyc(Z, 4))
    assert not linked and not trace.stably_zero
    linked, trace = linked_module(FpModule.free(Z, 1))
    assert linked and trace.stably_zero


def test_chain_is_recomputable():
    M = cyc(Z8, 2)
    _, trace = linked_module(M)
    again = linkage_chain(M)
    assert all(iso_modules(a, b) for a, b in zip(trace.modules, again))


@pytest.mark.parametrize("p, k", [(p, k) for p in (2, 3) for k in (1, 2, 3)])
def test_prime_power_closed_form(p, k):
    ring = RingSpec.zmod(p ** k)
    cyclics = [FpModule.cyclic(ring, p ** i) for i in range(1, k)]
    for i, M in enumerate(cyclics, start=1):
        assert iso_modules(omega_tr(M), FpModule.cyclic(ring, p ** (k - i)))
        assert linked_module(M)[0]
    for A, B in itertools.combinations_with_replacement(cyclics, 2):
        assert linked_module(direct_sum(A, B))[0]
    for P in (FpModule.free(ring, 1), FpModule.zero(ring)):
        linked, trace = linked_module(P)
        assert linked and trace.stably_zero


def test_over_z_linked_iff_projective():
    for M in default_testbed(Z):
        assert linked_module(M)[0] == is_projective(M)


def test_candidate_module_examples():
    assert iso_modules(candidate_module(ext1_functor(cyc(Z, 4))), cyc(Z, 4))
    assert is_zero_module(candidate_module(rep_functor(cyc(Z, 4))))
    assert iso_modules(candidate_module(ext1_functor(cyc(Z8, 2))), cyc(Z8, 2))


def test_extension_recognize_examples():
    M = extension_recognize(ext1_functor(cyc(Z, 4)))
    assert M is not None and iso_modules(M, cyc(Z, 4))
    bed = list(default_testbed(Z))
    # over Z, A/4A is both Z/4 (x) A and Ext^1(Z/4, A)
    M = extension_recognize(tensor_functor(cyc(Z, 4)), testbed=bed)
    assert M is not None and iso_modules(M, cyc(Z, 4))
    assert extension_recognize(rep_functor(cyc(Z8, 4)), testbed=list(default_testbed(Z8))) is None
    assert extension_recognize(tensor_functor(cyc(Z8, 4)), testbed=list(default_testbed(Z8))) is None
    M = extension_recognize(zero_functor(Z))
    assert M is not None and is_zero_module(M)


def test_linked_functor_examples():
    assert linked_functor(ext1_functor(cyc(Z8, 2))).is_yes
    d = linked_functor(ext1_functor(cyc(Z, 4)), testbed=list(default_testbed(Z)))
    assert d.is_no and d.certificate is not None
    assert linked_functor(zero_functor(Z8)).is_yes


@pytest.mark.parametrize("ring", [Z, Z8], ids=str)
def test_functor_and_module_linkage_agree(ring):
    bed = list(default_testbed(ring))
    for M in bed:
        d = linked_functor(ext1_functor(M), testbed=bed)
        assert not d.verdict.value == "unknown"
        assert d.is_yes == linked_module(M)[0]


def test_sum_of_extension_functors_is_linked_over_z8():
    F = functor_sum(ext1_functor(cyc(Z8, 2)), ext1_functor(cyc(Z8, 4)))
    assert linked_functor(F, testbed=list(default_testbed(Z8))).is_yes


@pytest.mark.parametrize("d", [2, 4])
def test_transpose_relations_over_z8(d):
    M = cyc(Z8, d)
    bed = list(default_testbed(Z8))
    DE = dual(ext1_functor(M))
    T = transpose(M)
    assert check_objectwise(satellite(DE, 1), ext1_functor(T), bed).all_agree
    for k in (1, 2):
        OkT = T
        for _ in range(k):
            OkT = syzygy(OkT)
        assert check_objectwise(satellite(DE, k + 1), ext1_functor(OkT), bed).all_agree


def test_linkage_table():
    rows = {r.d: r for r in linkage_table(Z8)}
    assert sorted(rows) == [1, 2, 4, 8]
    assert rows[2].linked and rows[4].linked
    assert rows[1].linked and rows[1].stably_zero
    assert rows[8].linked and rows[8].stably_zero
    with pytest.raises(ValueError):
        linkage_table(Z)
