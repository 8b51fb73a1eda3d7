"""
The bar involution Psi on weight spaces of tensor modules.

Psi is the q-antilinear map fixing every standard vector L_mu.  On a weight
space we pick standard vectors forming a basis, write v in that basis, bar
the coefficients and map back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import Weight
from .qarith import IncrementalSpan, RatQ, matrix_inverse
from .tensor import MuSeq, TensorModule
from .verma import ModuleVector

__all__ = ["SpanningFailure", "BarBasis", "build_bar_basis", "bar_basis", "bar_vector", "bar_matrix"]


class SpanningFailure(RuntimeError):
    """The standard vectors did not span a weight space."""


@dataclass(frozen=True)
class BarBasis:
    nu: Weight
    selected: tuple[MuSeq, ...]
    # columns: selected standard vectors in pure-tensor coordinates
    to_tensor: tuple[tuple[RatQ, ...], ...]
    # inverse: pure-tensor coordinates -> standard-vector coordinates
    from_tensor: tuple[tuple[RatQ, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.selected)


def build_bar_basis(tm: TensorModule, nu: Weight, order: str = "forward") -> BarBasis:
    """Greedy scan of the sequence enumeration, keeping each standard vector
    that increases the rank."""
    dim = tm.dim(nu)
    mus = tm.enumerate_mu(nu)
    if order == "reversed":
        mus = reversed(list(mus))
    elif order != "forward":
        raise ValueError(f"unknown order {order!r}")
    span = IncrementalSpan(dim)
    selected: list[MuSeq] = []
    cols: list[list[RatQ]] = []
    if dim:
        for mu in mus:
            v = tm.l_vector(mu)
            if not v:
                continue
            dense = tm.to_dense(v)
            if span.add(dense):
                selected.append(mu)
                cols.append(dense)
                if span.rank == dim:
                    break
    if len(selected) < dim:
        raise SpanningFailure(
            f"standard vectors span only {len(selected)} of {dim} dimensions at content {nu}"
        )
    P = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    Pinv = matrix_inverse(P) if dim else []
    return BarBasis(nu, tuple(selected), tuple(map(tuple, P)), tuple(map(tuple, Pinv)))


def bar_basis(tm: TensorModule, nu: Weight) -> BarBasis:
    """Cached forward-order BarBasis."""
    cache = tm.cache.setdefault("bar_basis", {})
    bb = cache.get(nu)
    if bb is None:
        bb = build_bar_basis(tm, nu)
        cache[nu] = bb
    return bb


def _matvec(M, xs):
    out = []
    for row in M:
        acc = RatQ()
        for a, x in zip(row, xs):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def bar_vector(tm: TensorModule, v: ModuleVector, bb: BarBasis | None = None) -> ModuleVector:
    """Psi(v)."""
    if not v:
        return v
    if bb is None:
        bb = bar_basis(tm, v.nu)
    coords = _matvec(bb.from_tensor, tm.to_dense(v))
    coords = [c.bar() for c in coords]
    return tm.from_dense(v.nu, _matvec(bb.to_tensor, coords))


def bar_matrix(tm: TensorModule, nu: Weight, bb: BarBasis | None = None) -> list[list[RatQ]]:
    """M with Psi(v) = M bar(v) in pure-tensor coordinates, i.e. P bar(P^-1)."""
    if bb is None:
        bb = bar_basis(tm, nu)
    n = bb.dim
    inv_bar = [[x.bar() for x in row] for row in bb.from_tensor]
    return [
        [sum((bb.to_tensor[r][k] * inv_bar[k][c] for k in range(n)), RatQ()) for c in range(n)]
        for r in range(n)
    ]
