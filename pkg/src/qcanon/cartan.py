"""
Quiver input, the symmetric generalized Cartan matrix, and weight bookkeeping.

Dominant weights and contents are plain tuples of non-negative ints aligned
with ``CartanData.vertices``.  A dominant weight component omega_i stands for
the framing multiplicity at the framing vertex attached to i; no framed quiver
is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

__all__ = [
    "CartanData",
    "CartanError",
    "Weight",
    "from_graph",
    "from_matrix",
    "k_exponent",
    "enumerate_contents",
    "add",
    "sub",
    "size",
    "unit",
]

Weight = tuple[int, ...]


class CartanError(ValueError):
    """Invalid quiver, matrix, or weight input."""


@dataclass(frozen=True)
class CartanData:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    a: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str | int) -> int:
        if isinstance(vertex, int):
            if not 0 <= vertex < self.rank:
                raise CartanError(f"vertex index {vertex} out of range")
            return vertex
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise CartanError(f"unknown vertex {vertex!r}") from None

    def weight(self, spec: Mapping[str, int] | Sequence[int] | None = None, **kw: int) -> Weight:
        """Build a weight/content tuple from a {vertex: multiplicity} map."""
        if spec is None:
            spec = kw
        if isinstance(spec, Mapping):
            out = [0] * self.rank
            for v, n in spec.items():
                n = int(n)
                if n < 0:
                    raise CartanError(f"negative multiplicity {n} at {v!r}")
                out[self.index(v)] += n
            return tuple(out)
        out = tuple(int(n) for n in spec)
        if len(out) != self.rank or any(n < 0 for n in out):
            raise CartanError(f"bad weight {spec!r}")
        return out

    def weight_dict(self, w: Weight) -> dict[str, int]:
        return {v: n for v, n in zip(self.vertices, w)}

    def zero(self) -> Weight:
        return (0,) * self.rank

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "matrix": [list(r) for r in self.a],
        }


def from_graph(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> CartanData:
    """a_ii = 2 and -a_ij = number of edges joining i and j."""
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise CartanError("duplicate vertex names")
    index = {v: k for k, v in enumerate(vertices)}
    n = len(vertices)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    clean = []
    for e in edges:
        if len(e) != 2:
            raise CartanError(f"edge {e!r} must join two vertices")
        u, v = str(e[0]), str(e[1])
        for x in (u, v):
            if x not in index:
                raise CartanError(f"edge {e!r} references unknown vertex {x!r}")
        if u == v:
            raise CartanError(f"circle edges forbidden: {u!r}-{v!r}")
        a[index[u]][index[v]] -= 1
        a[index[v]][index[u]] -= 1
        clean.append((u, v))
    return CartanData(vertices, tuple(clean), tuple(tuple(r) for r in a))


def from_matrix(vertices: Iterable[str], matrix: Sequence[Sequence[int]]) -> CartanData:
    """Accept an explicit matrix, validating that it comes from a graph."""
    vertices = tuple(str(v) for v in vertices)
    n = len(vertices)
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise CartanError("matrix shape does not match vertices")
    a = [[int(x) for x in r] for r in matrix]
    for i in range(n):
        if a[i][i] != 2:
            raise CartanError(f"diagonal entry a[{i}][{i}] = {a[i][i]} must be 2")
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise CartanError(f"matrix not symmetric at ({i},{j})")
            if i != j and a[i][j] > 0:
                raise CartanError(f"off-diagonal entry a[{i}][{j}] = {a[i][j]} must be <= 0")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.extend([(vertices[i], vertices[j])] * (-a[i][j]))
    return from_graph(vertices, edges)


def k_exponent(cd: CartanData, omega: Weight, nu: Weight, i: int) -> int:
    """Exponent of q by which K_i acts on the omega - nu weight space."""
    row = cd.a[i]
    return omega[i] - sum(row[j] * nu[j] for j in range(len(nu)))


def add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Weight, b: Weight) -> Weight | None:
    """a - b, or None when some component would go negative."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        return None
    return out


def size(w: Weight) -> int:
    return sum(w)


def unit(rank: int, i: int, n: int = 1) -> Weight:
    return tuple(n if k == i else 0 for k in range(rank))


def enumerate_contents(cd: CartanData, depth: int) -> list[Weight]:
    """All contents of total size <= depth, graded, then lex in vertex order
    (more of the earlier vertices first)."""
    if depth < 0:
        raise CartanError("depth must be >= 0")
    n = cd.rank
    out: list[Weight] = []
    for total in range(depth + 1):
        level = set()
        for combo in combinations_with_replacement(range(n), total):
            level.add(tuple(combo.count(k) for k in range(n)))
        out.extend(sorted(level, reverse=True))
    return out
