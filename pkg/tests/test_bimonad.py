import dataclasses

import pytest

from weakhopf import bimonad as bm
from weakhopf import instances as inst
from weakhopf.bimonad import Algebra, Coalgebra, WeakYBPair
from weakhopf.errors import PrerequisiteAxiomFailed, TauPrimeRequired
from weakhopf.exactmat import Mat
from weakhopf.tensorexpr import compose, flip_map, hmap, identity_map


def mutate_map(f, row, col, value):
    rows = [list(r) for r in f.mat.data]
    rows[row][col] = value
    return dataclasses.replace(f, mat=Mat(f.mat.rows, f.mat.cols, rows))


def with_m(bim, m):
    return dataclasses.replace(bim, alg=Algebra(bim.n, m, bim.e))


def with_eps(bim, eps):
    return dataclasses.replace(bim, coa=Coalgebra(bim.n, bim.delta, eps))


def test_all_builtin_instances_pass(any_pipeline):
    for report in bm.check_instance(any_pipeline.bim).values():
        assert report.passed, report.failed_ids()


def test_groupoid_mutated_structure_constant_fails_with_witness():
    bim = inst.g2()
    broken = with_m(bim, mutate_map(bim.m, 0, 0, 2))
    report = bm.check_algebra(broken.alg)
    assert not report.passed
    failing = [e for e in report.entries if not e.holds]
    assert failing and all(e.witness is not None for e in failing)
    # witness is the lexicographically first disagreeing entry
    entry = report.entry("alg.unit-left")
    assert not entry.holds and entry.witness == (0, 0)


def test_scaled_counit_breaks_wbb6():
    bim = inst.g2()
    broken = with_eps(bim, dataclasses.replace(bim.eps, mat=bim.eps.mat.scale(2)))
    report = bm.check_weak_braided_bimonad(broken)
    assert not report.entry("wbb6").holds


def test_flip_with_identity_partner_fails_regularity():
    tau = flip_map(2)
    one2 = identity_map((2, 2))
    yb = WeakYBPair(tau=tau, tau_prime=one2, nabla=compose([one2, tau]))
    report = bm.check_weak_yb(yb)
    assert not report.entry("yb.reg-tau-prime").holds


def test_tau_prime_defaulting_requires_involution():
    tau = flip_map(2)
    assert WeakYBPair.make(tau).tau_prime == tau
    not_involution = hmap(2, 2, 2, Mat.from_entries(4, 4, {(i, i): 2 if i == 0
                                                           else 1
                                                           for i in range(4)}))
    with pytest.raises(TauPrimeRequired):
        WeakYBPair.make(not_involution)


def test_checks_report_instead_of_raising():
    bim = inst.g2()
    broken = with_m(bim, mutate_map(bim.m, 0, 0, 2))
    reports = bm.check_instance(broken)  # no exception
    assert not all(r.passed for r in reports.values())
    with pytest.raises(PrerequisiteAxiomFailed) as err:
        bm.require_instance(broken)
    assert err.value.axiom_ids


def test_report_determinism(g2):
    bim = inst.g2()
    broken = with_eps(bim, dataclasses.replace(bim.eps, mat=bim.eps.mat.scale(2)))
    first = bm.check_weak_braided_bimonad(broken)
    second = bm.check_weak_braided_bimonad(broken)
    assert [ (e.axiom_id, e.holds, e.witness) for e in first.entries ] == \
        [ (e.axiom_id, e.holds, e.witness) for e in second.entries ]


def test_seven_wbb_entry_ids(g2):
    report = bm.check_weak_braided_bimonad(g2.bim)
    assert [e.axiom_id for e in report.entries] == \
        [f"wbb{k}" for k in range(1, 8)]


def test_z2_has_trivial_nabla(z2):
    assert z2.bim.nabla == identity_map((2, 2))
