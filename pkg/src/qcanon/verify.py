"""
Relation and form checks on realized weight spaces.

Each check id names the identity it tests:

  kef.1  K_i K_j = K_j K_i              rel.kinv  K_i K_i^-1 = 1
  kef.2  K_i E_j = q^(a_ij) E_j K_i
  kef.3  K_i F_j = q^(-a_ij) F_j K_i
  kef.4  E_i^(n-1) E_i = [n] E_i^(n)    kef.5  the same for F
  kef.6  E_i F_i - F_i E_i = [k] on vectors with K_i-exponent k
  kef.7  E_i F_j = F_j E_i for i != j
  kef.8  quantum Serre sum in E          kef.9  quantum Serre sum in F
  rel.comm  E_i F_j - F_j E_i = delta_ij [k]

Identities that would leave the realized depth are skipped; every report
records how many vectors each check actually saw.
"""

from __future__ import annotations

import json
from itertools import groupby
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .cartan import Weight
from .involution import build_bar_basis, bar_basis, bar_matrix, bar_vector
from .qarith import LaurentInt, RatQ, matrix_rank, qfact, qint, to_ratq
from .tensor import TensorModule
from .verma import DepthError, Gen, ModuleVector

__all__ = [
    "CheckResult",
    "RelationReport",
    "verify_relations",
    "verify_kef_shadow",
    "verify_forms",
    "verify_bar",
    "vector_to_json",
    "vector_from_json",
    "vector_str",
]


def _qpow(k: int) -> RatQ:
    return to_ratq(LaurentInt.monomial(k))


def _word_label(names, word) -> tuple[str, LaurentInt]:
    """Divided-power label of a plain word, and the factor [n1]!...[nk]! with
    plain word = factor * label."""
    out, factor = [], LaurentInt.const(1)
    for i, run in groupby(word):
        n = len(list(run))
        out.append(f"F_{names[i]}" + (f"^({n})" if n > 1 else ""))
        factor = factor * qfact(n)
    return "".join(out) + "η", factor


def vector_str(tm: TensorModule, v: ModuleVector) -> str:
    """Readable form over divided-power monomials, e.g. 'η ⊗ F_iη + (q^-1) F_iη ⊗ η'."""
    if not v:
        return "0"
    names = tm.cd.vertices
    out = []
    for key in sorted(v.coeffs, key=tm.index(v.nu).__getitem__):
        parts = []
        c = v.coeffs[key]
        for comp, (part, idx) in zip(tm.components, key):
            ws = comp.weight_space(part)
            label, factor = _word_label(names, ws.words[ws.pivots[idx]])
            parts.append(label)
            c = c * factor
        label = " ⊗ ".join(parts) if parts else "1"
        out.append(label if c == RatQ(1) else f"({c.pretty()}) {label}")
    return " + ".join(out)


def vector_to_json(tm: TensorModule, v: ModuleVector) -> dict:
    terms = []
    for key in sorted(v.coeffs, key=tm.index(v.nu).__getitem__):
        terms.append({"key": [[list(part), idx] for part, idx in key], "coeff": v.coeffs[key].to_json()})
    return {"nu": tm.cd.weight_dict(v.nu), "terms": terms}


def vector_from_json(tm: TensorModule, data: dict) -> ModuleVector:
    nu = tm.cd.weight(data["nu"])
    coeffs = {}
    for t in data["terms"]:
        key = tuple((tuple(part), idx) for part, idx in t["key"])
        coeffs[key] = RatQ.from_json(t["coeff"])
    return ModuleVector(nu, coeffs)


@dataclass
class CheckResult:
    id: str
    cases: int = 0
    failures: int = 0
    vector: dict | None = None
    lhs: str | None = None
    rhs: str | None = None
    label: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        out = {"id": self.id, "vector": self.vector, "pass": self.passed, "cases": self.cases}
        if not self.passed:
            out["witness"] = {"label": self.label, "lhs": self.lhs, "rhs": self.rhs}
        return out


@dataclass
class RelationReport:
    module: str
    depth: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, cid: str) -> CheckResult:
        for c in self.checks:
            if c.id == cid:
                return c
        c = CheckResult(cid)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        npass = sum(c.passed for c in self.checks)
        return {
            "module": self.module,
            "depth": self.depth,
            "checks": [c.to_json() for c in self.checks],
            "summary": {"pass": npass, "fail": len(self.checks) - npass},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class _Recorder:
    def __init__(self, tm: TensorModule, report: RelationReport):
        self.tm = tm
        self.report = report

    def compare(self, cid: str, v: ModuleVector, lhs: Callable, rhs: Callable, label: str = "") -> None:
        try:
            a = lhs()
            b = rhs()
        except DepthError:
            return
        res = self.report.check(cid)
        res.cases += 1
        if a != b:
            res.failures += 1
            if res.vector is None:
                res.vector = vector_to_json(self.tm, v)
                res.label = label
                res.lhs = vector_str(self.tm, a) if isinstance(a, ModuleVector) else str(a)
                res.rhs = vector_str(self.tm, b) if isinstance(b, ModuleVector) else str(b)

    def truth(self, cid: str, v: ModuleVector | None, ok: bool, label: str = "") -> None:
        res = self.report.check(cid)
        res.cases += 1
        if not ok:
            res.failures += 1
            if res.vector is None:
                res.vector = vector_to_json(self.tm, v) if v is not None else None
                res.label = label


def _contents(tm: TensorModule, depth: int) -> list[Weight]:
    if tm.depth is not None and depth > tm.depth:
        raise DepthError(f"verification depth {depth} exceeds module depth {tm.depth}; raise --depth")
    from .cartan import enumerate_contents

    return enumerate_contents(tm.cd, depth)


def _vectors(tm: TensorModule, depth: int) -> Iterable[ModuleVector]:
    for nu in _contents(tm, depth):
        for n in range(tm.dim(nu)):
            yield tm.basis_vector(nu, n)


def _module_id(tm: TensorModule) -> str:
    return repr(tm)


def verify_relations(tm: TensorModule, depth: int) -> RelationReport:
    report = RelationReport(_module_id(tm), depth)
    rec = _Recorder(tm, report)
    cd = tm.cd
    r = cd.rank
    for v in _vectors(tm, depth):
        w = v.nu
        for i in range(r):
            Ki, Kii = Gen("K", i, 1), Gen("K", i, -1)
            rec.compare("rel.kinv", v, lambda: tm.act_word([Ki, Kii], v), lambda: v, f"K_{i}K_{i}^-1")
            for j in range(r):
                Kj = Gen("K", j, 1)
                rec.compare("kef.1", v, lambda: tm.act_word([Ki, Kj], v), lambda: tm.act_word([Kj, Ki], v), f"i={i} j={j}")
                a = cd.a[i][j]
                rec.compare(
                    "kef.2", v,
                    lambda: tm.act_word([Ki, Gen("E", j, 1)], v),
                    lambda: tm.act_word([Gen("E", j, 1), Ki], v).scale(_qpow(a)),
                    f"i={i} j={j}",
                )
                rec.compare(
                    "kef.3", v,
                    lambda: tm.act_word([Ki, Gen("F", j, 1)], v),
                    lambda: tm.act_word([Gen("F", j, 1), Ki], v).scale(_qpow(-a)),
                    f"i={i} j={j}",
                )
                k = tm.k_exponent(w, i)
                rec.compare(
                    "rel.comm", v,
                    lambda: tm.act_word([Gen("E", i, 1), Gen("F", j, 1)], v) - tm.act_word([Gen("F", j, 1), Gen("E", i, 1)], v),
                    lambda: v.scale(to_ratq(qint(k))) if i == j else ModuleVector(w),
                    f"i={i} j={j}",
                )
                if i != j:
                    top = 1 - a
                    for kind, cid in (("E", "kef.8"), ("F", "kef.9")):
                        def serre(kind=kind, top=top):
                            acc = None
                            for m in range(top + 1):
                                gens = [Gen(kind, i, m), Gen(kind, j, 1), Gen(kind, i, top - m)]
                                gens = [g for g in gens if g.n]
                                term = tm.act_word(gens, v)
                                term = term if m % 2 == 0 else -term
                                acc = term if acc is None else acc + term
                            return acc

                        rec.compare(cid, v, serre, lambda: ModuleVector(w), f"i={i} j={j}")
    return report


def verify_kef_shadow(tm: TensorModule, depth: int, max_power: int = 3) -> RelationReport:
    report = RelationReport(_module_id(tm), depth)
    rec = _Recorder(tm, report)
    r = tm.cd.rank
    for v in _vectors(tm, depth):
        for i in range(r):
            for n in range(2, max_power + 1):
                qn = to_ratq(qint(n))
                for kind, cid in (("E", "kef.4"), ("F", "kef.5")):
                    rec.compare(
                        cid, v,
                        lambda: tm.act_word([Gen(kind, i, n - 1), Gen(kind, i, 1)], v),
                        lambda: tm.act(Gen(kind, i, n), v).scale(qn),
                        f"i={i} n={n}",
                    )
            k = tm.k_exponent(v.nu, i)
            rec.compare(
                "kef.6", v,
                lambda: tm.act_word([Gen("E", i, 1), Gen("F", i, 1)], v) - tm.act_word([Gen("F", i, 1), Gen("E", i, 1)], v),
                lambda: v.scale(to_ratq(qint(k))),
                f"i={i}",
            )
            for j in range(r):
                if j == i:
                    continue
                rec.compare(
                    "kef.7", v,
                    lambda: tm.act_word([Gen("E", i, 1), Gen("F", j, 1)], v),
                    lambda: tm.act_word([Gen("F", j, 1), Gen("E", i, 1)], v),
                    f"i={i} j={j}",
                )
    return report


def _rho(gen: Gen) -> tuple[RatQ, list[Gen]]:
    """rho(x) as a scalar times a word of generators (rightmost acts first)."""
    if gen.kind == "K":
        return RatQ(1), [gen]
    n = gen.n
    if gen.kind == "E":
        return _qpow(n * n), [Gen("K", gen.i, 1)] * n + [Gen("F", gen.i, n)]
    return _qpow(n * n), [Gen("K", gen.i, -1)] * n + [Gen("E", gen.i, n)]


def verify_forms(tm: TensorModule, depth: int, max_power: int = 2) -> RelationReport:
    """Symmetry, contravariance (n = 1 as form.contra, n >= 2 as form.adj),
    nondegeneracy and N[q, q^-1]-integrality of standard-vector Gram entries."""
    report = RelationReport(_module_id(tm), depth)
    rec = _Recorder(tm, report)
    r = tm.cd.rank
    for nu in _contents(tm, depth):
        d = tm.dim(nu)
        if not d:
            continue
        G = tm.gram(nu)
        rec.truth("form.sym", None, all(G[a][b] == G[b][a] for a in range(d) for b in range(d)), str(nu))
        rank, _ = matrix_rank(G)
        rec.truth("form.nondeg", None, rank == d, str(nu))
        bb = bar_basis(tm, nu)
        lvecs = [tm.from_dense(nu, [bb.to_tensor[x][c] for x in range(d)]) for c in range(d)]
        ok = True
        for a in range(d):
            for b in range(d):
                g = tm.form(lvecs[a], lvecs[b])
                if not (g.is_laurent() and g.num.is_nonnegative()):
                    ok = False
        rec.truth("form.lgram", None, ok, str(nu))
        vecs = [tm.basis_vector(nu, n) for n in range(d)]
        for u in vecs:
            for i in range(r):
                for gen in [Gen("K", i, 1), Gen("K", i, -1)] + [Gen(kind, i, n) for kind in "EF" for n in range(1, max_power + 1)]:
                    target = _shift(nu, gen)
                    if target is None:
                        continue
                    try:
                        tdim = tm.dim(target)
                    except DepthError:
                        continue
                    scal, word = _rho(gen)
                    cid = "form.contra" if gen.n in (1, -1) else "form.adj"
                    for m in range(tdim):
                        w = tm.basis_vector(target, m)
                        rec.compare(
                            cid, u,
                            lambda: tm.form(tm.act(gen, u), w),
                            lambda: tm.form(u, tm.act_word(word, w)) * scal,
                            f"{gen}",
                        )
    return report


def _shift(nu: Weight, gen: Gen) -> Weight | None:
    if gen.kind == "K":
        return nu
    out = list(nu)
    out[gen.i] += gen.n if gen.kind == "F" else -gen.n
    if out[gen.i] < 0:
        return None
    return tuple(out)


def verify_bar(tm: TensorModule, depth: int, max_power: int = 2) -> RelationReport:
    """Psi^2 = id, Psi F^(n) = F^(n) Psi, Psi(u x eta) = Psi(u) x eta, and
    independence of Psi from the choice of spanning standard vectors."""
    report = RelationReport(_module_id(tm), depth)
    rec = _Recorder(tm, report)
    r = tm.cd.rank
    prev = tm.prefix(tm.length - 1) if tm.length else None
    for nu in _contents(tm, depth):
        d = tm.dim(nu)
        if not d:
            continue
        alt = build_bar_basis(tm, nu, order="reversed")
        rec.truth("bar.basis", None, bar_matrix(tm, nu) == bar_matrix(tm, nu, alt), str(nu))
        q = to_ratq(LaurentInt.q())
        for n in range(d):
            v = tm.basis_vector(nu, n)
            # a generic non-bar-fixed vector: q * basis vector
            u = v.scale(q)
            rec.compare("bar.inv", v, lambda: bar_vector(tm, bar_vector(tm, u)), lambda: u)
            for i in range(r):
                for m in range(1, max_power + 1):
                    g = Gen("F", i, m)
                    rec.compare("bar.f", v, lambda: bar_vector(tm, tm.act(g, u)), lambda: tm.act(g, bar_vector(tm, u)), str(g))
        if prev is not None:
            try:
                pd = prev.dim(nu)
            except DepthError:
                continue
            for n in range(pd):
                u = prev.basis_vector(nu, n).scale(to_ratq(LaurentInt.q()))
                rec.compare("bar.embed", tm.embed(u), lambda: bar_vector(tm, tm.embed(u)), lambda: tm.embed(bar_vector(prev, u)))
    return report
