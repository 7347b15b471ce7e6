"""The base object H^xibar: splitting, Frobenius data, actions, pi-splitting.

The base carrier is the abstract r-dimensional space of the splitting
(q, iota) of xibar, not a subspace of H; all base maps are conjugated through
(q, iota):

    m_base     = q . m . (iota (x) iota)
    e_base     = q . e
    delta_base = (q (x) q) . delta . iota
    eps_base   = eps . iota
    upsilon    = (q (x) q) . delta . e
"""

from __future__ import annotations

from dataclasses import dataclass

from .bimonad import AxiomReport, WeakBraidedBimonad, compare
from .entwining import EntwiningData
from .errors import InconsistencyError
from .exactmat import (
    Splitting,
    kernel_basis,
    rank,
    same_column_span,
    split_idempotent,
)
from .tensorexpr import TensorMap, compose, identity_map, tensor


@dataclass(frozen=True)
class BaseObject:
    split: Splitting
    q: TensorMap        # (n,) -> (r,)
    iota: TensorMap     # (r,) -> (n,)
    m_base: TensorMap   # (r, r) -> (r,)
    e_base: TensorMap   # () -> (r,)
    delta_base: TensorMap  # (r,) -> (r, r)
    eps_base: TensorMap    # (r,) -> ()
    upsilon: TensorMap     # () -> (r, r)

    @property
    def r(self):
        return self.split.rank

    def xibar_map(self) -> TensorMap:
        return compose([self.q, self.iota])


@dataclass(frozen=True)
class ActionData:
    rho_l: TensorMap   # (r, n) -> (n,)
    rho_r: TensorMap   # (n, r) -> (n,)
    theta_l: TensorMap  # (n,) -> (r, n)
    theta_r: TensorMap  # (n,) -> (n, r)
    report: AxiomReport


def _require(report: AxiomReport, context: str):
    failed = report.failed_ids()
    if failed:
        raise InconsistencyError(f"{context}: {', '.join(failed)}")


def build_base(bim: WeakBraidedBimonad, ent: EntwiningData) -> BaseObject:
    """Split xibar and conjugate the (co)monad structure onto the base.

    Asserts the split (co)equaliser shapes: iota equalises delta with
    (chi (x) id).delta (also in the unit-precomposed form), the agreement
    locus of that pair is exactly the image of iota, and q coequalises m
    with m.(chibar (x) id) with cokernel of the correct dimension.
    """
    n = bim.n
    one = bim.id1()
    split = split_idempotent(ent.xibar.mat)
    r = split.rank
    q = TensorMap((n,), (r,), split.p)
    iota = TensorMap((r,), (n,), split.i)

    m, e, delta, eps = bim.m, bim.e, bim.delta, bim.eps
    base = BaseObject(
        split=split, q=q, iota=iota,
        m_base=compose([tensor(iota, iota), m, q]),
        e_base=compose([e, q]),
        delta_base=compose([iota, delta, tensor(q, q)]),
        eps_base=compose([iota, eps]),
        upsilon=compose([e, delta, tensor(q, q)]),
    )

    # split equaliser of (delta, (chi (x) id).delta) through iota
    upper = compose([iota, delta])
    lower = compose([iota, delta, tensor(ent.chi, one)])
    report = AxiomReport()
    report.add(compare("base.equaliser-chain", lower, upper))
    chain = compose([tensor(e, one), tensor(delta, one), tensor(one, m)])
    report.add(compare("base.equaliser-unit-form",
                       compose([iota, chain]), upper))
    locus = kernel_basis(compose([delta, tensor(ent.chi, one)]).mat - delta.mat)
    if not same_column_span(locus, iota.mat):
        raise InconsistencyError("base.equaliser-locus: kernel span != image(iota)")

    # split coequaliser of (m, m.(chibar (x) id)) through q
    co_d = compose([tensor(ent.chibar, one), m]).mat - m.mat
    report.add(compare("base.coequaliser-chain",
                       compose([tensor(ent.chibar, one), m, q]),
                       compose([m, q])))
    if rank(co_d) != n - r:
        raise InconsistencyError("base.coequaliser-rank: cokernel dim != r")
    _require(report, "build_base")
    return base


def check_frobenius_separable(base: BaseObject) -> AxiomReport:
    """Frobenius square, separability, and the upsilon identities."""
    r = base.r
    one = identity_map((r,))
    mb, eb, db, epsb, ups = (base.m_base, base.e_base, base.delta_base,
                             base.eps_base, base.upsilon)
    report = AxiomReport()
    report.add(compare("base.alg.assoc",
                       compose([tensor(mb, one), mb]),
                       compose([tensor(one, mb), mb])))
    report.add(compare("base.alg.unit-left", compose([tensor(eb, one), mb]), one))
    report.add(compare("base.alg.unit-right", compose([tensor(one, eb), mb]), one))
    report.add(compare("base.coa.coassoc",
                       compose([db, tensor(db, one)]),
                       compose([db, tensor(one, db)])))
    report.add(compare("base.coa.counit-left", compose([db, tensor(epsb, one)]), one))
    report.add(compare("base.coa.counit-right", compose([db, tensor(one, epsb)]), one))
    frob = compose([mb, db])
    report.add(compare("base.frobenius-left",
                       frob, compose([tensor(db, one), tensor(one, mb)])))
    report.add(compare("base.frobenius-right",
                       frob, compose([tensor(one, db), tensor(mb, one)])))
    report.add(compare("base.separable", compose([db, mb]), one))
    report.add(compare("base.upsilon-unit", compose([ups, mb]), eb))
    report.add(compare("base.upsilon-left",
                       db, compose([tensor(ups, one), tensor(one, mb)])))
    report.add(compare("base.upsilon-right",
                       db, compose([tensor(one, ups), tensor(mb, one)])))
    return report


def build_actions(bim: WeakBraidedBimonad, base: BaseObject) -> ActionData:
    """H as H^xibar-bimodule and -bicomodule, with all laws verified."""
    one = bim.id1()
    idr = identity_map((base.r,))
    m, delta = bim.m, bim.delta
    rho_l = compose([tensor(base.iota, one), m])
    rho_r = compose([tensor(one, base.iota), m])
    theta_l = compose([delta, tensor(base.q, one)])
    theta_r = compose([delta, tensor(one, base.q)])

    report = AxiomReport()
    report.add(compare("act.left-assoc",
                       compose([tensor(base.m_base, one), rho_l]),
                       compose([tensor(idr, rho_l), rho_l])))
    report.add(compare("act.left-unit",
                       compose([tensor(base.e_base, one), rho_l]), one))
    report.add(compare("act.right-assoc",
                       compose([tensor(one, base.m_base), rho_r]),
                       compose([tensor(rho_r, idr), rho_r])))
    report.add(compare("act.right-unit",
                       compose([tensor(one, base.e_base), rho_r]), one))
    report.add(compare("act.bimodule",
                       compose([tensor(rho_l, idr), rho_r]),
                       compose([tensor(idr, rho_r), rho_l])))
    report.add(compare("coact.left-coassoc",
                       compose([theta_l, tensor(base.delta_base, one)]),
                       compose([theta_l, tensor(idr, theta_l)])))
    report.add(compare("coact.left-counit",
                       compose([theta_l, tensor(base.eps_base, one)]), one))
    report.add(compare("coact.right-coassoc",
                       compose([theta_r, tensor(one, base.delta_base)]),
                       compose([theta_r, tensor(theta_r, idr)])))
    report.add(compare("coact.right-counit",
                       compose([theta_r, tensor(one, base.eps_base)]), one))
    report.add(compare("coact.bicomodule",
                       compose([theta_l, tensor(idr, theta_r)]),
                       compose([theta_r, tensor(theta_l, idr)])))
    report.add(compare("act.q-module-morphism",
                       compose([tensor(one, base.iota), m, base.q]),
                       compose([tensor(base.q, idr), base.m_base])))
    _require(report, "build_actions")
    return ActionData(rho_l=rho_l, rho_r=rho_r, theta_l=theta_l, theta_r=theta_r,
                      report=report)


def check_pi_splitting(bim: WeakBraidedBimonad, base: BaseObject) -> AxiomReport:
    """Splitting witness for the change-of-base coequaliser pair.

    Specialised at the left regular module (H, rho_l), the pair is
    (rho_r (x) id_H, id_H (x) rho_l) on H (x) H^xibar (x) H and

        pi = (rho_r (x) id (x) id) . (id (x) delta_base (x) id)
                                   . (id (x) e_base (x) id).

    pi.section asserts (rho_r (x) id) . pi = id (needs separability);
    pi.coequalise asserts the split-pair equation for the other leg.
    """
    one = bim.id1()
    idr = identity_map((base.r,))
    m = bim.m
    rho_l = compose([tensor(base.iota, one), m])
    rho_r = compose([tensor(one, base.iota), m])
    pi = compose([
        tensor(one, base.e_base, one),
        tensor(one, base.delta_base, one),
        tensor(rho_r, idr, one),
    ])
    d_act = tensor(one, rho_l)   # id_H (x) rho_l
    d_mul = tensor(rho_r, one)   # rho_r (x) id_H
    report = AxiomReport()
    report.add(compare("pi.section",
                       compose([pi, d_mul]), identity_map((bim.n, bim.n))))
    report.add(compare("pi.coequalise",
                       compose([d_mul, pi, d_act]),
                       compose([d_act, pi, d_act])))
    return report
