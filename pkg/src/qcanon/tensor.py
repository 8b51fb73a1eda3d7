"""
Tensor products Lambda(omega^1) x ... x Lambda(omega^t).

Weight-space bases are pure tensors of component pivot words, keyed by tuples
``((nu_1, idx_1), ..., (nu_t, idx_t))``.  Generators act through the iterated
comultiplication

    Delta F_i = F_i x K_i^-1 + 1 x F_i,    Delta E_i = E_i x 1 + K_i x E_i,

so F_i on factor a picks up K_i^-1 from every factor to its right and E_i on
factor a picks up K_i from every factor to its left.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence, Union

from .cartan import CartanData, CartanError, Weight, add, k_exponent, size, sub, unit
from .qarith import RATQ_ONE, RATQ_ZERO, LaurentInt, RatQ, qfact, to_ratq
from .verma import DepthError, Gen, HighestWeightModule, ModuleVector, accumulate

__all__ = [
    "TypeI",
    "TypeII",
    "MuSeq",
    "TensorModule",
    "mu_to_json",
    "mu_from_json",
    "mu_str",
]

Key = tuple[tuple[Weight, int], ...]


@dataclass(frozen=True)
class TypeI:
    """An F_i^{(n)} step."""

    i: int
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("type I entries need n >= 1")


@dataclass(frozen=True)
class TypeII:
    """A u -> u x eta_omega step."""

    omega: Weight


Entry = Union[TypeI, TypeII]
MuSeq = tuple[Entry, ...]


def mu_to_json(cd: CartanData, mu: MuSeq) -> list[dict]:
    out = []
    for e in mu:
        if isinstance(e, TypeII):
            out.append({"type": "II", "omega": cd.weight_dict(e.omega)})
        else:
            out.append({"type": "I", "vertex": cd.vertices[e.i], "n": e.n})
    return out


def mu_from_json(cd: CartanData, data: Sequence[dict]) -> MuSeq:
    out: list[Entry] = []
    for e in data:
        if e["type"] == "II":
            out.append(TypeII(cd.weight(e["omega"])))
        elif e["type"] == "I":
            out.append(TypeI(cd.index(e["vertex"]), int(e.get("n", 1))))
        else:
            raise CartanError(f"unknown sequence entry type {e['type']!r}")
    return tuple(out)


def mu_str(cd: CartanData, mu: MuSeq) -> str:
    parts = []
    for e in mu:
        if isinstance(e, TypeII):
            w = "+".join(
                (f"{n}" if n > 1 else "") + v + "^" for v, n in zip(cd.vertices, e.omega) if n
            )
            parts.append(w or "0")
        else:
            parts.append(cd.vertices[e.i] if e.n == 1 else f"{e.n}{cd.vertices[e.i]}")
    return "(" + ", ".join(parts) + ")"


class TensorModule:
    """Lambda(omega^1) x ... x Lambda(omega^t), truncated at total content `depth`.

    Component modules are shared through `registry` so that prefixes and
    extensions of the same factor sequence reuse weight-space computations.
    """

    def __init__(
        self,
        cd: CartanData,
        factors: Sequence[Weight],
        depth: int | None = None,
        registry: dict[Weight, HighestWeightModule] | None = None,
    ):
        self.cd = cd
        self.factors = tuple(tuple(w) for w in factors)
        for w in self.factors:
            if len(w) != cd.rank or any(x < 0 for x in w):
                raise CartanError(f"bad dominant weight {w!r}")
        self.depth = depth
        self.registry = registry if registry is not None else {}
        self.components = tuple(self._component(w) for w in self.factors)
        self._bases: dict[Weight, tuple[Key, ...]] = {}
        self._index: dict[Weight, dict[Key, int]] = {}
        self._fmat: dict[tuple[Weight, int], dict[Key, dict[Key, RatQ]]] = {}
        self._emat: dict[tuple[Weight, int], dict[Key, dict[Key, RatQ]]] = {}
        self._gram: dict[Weight, list[list[LaurentInt]]] = {}
        self._prefixes: dict[int, TensorModule] = {}
        self.cache: dict = {}  # per-module caches for involution/canon

    def _component(self, w: Weight) -> HighestWeightModule:
        m = self.registry.get(w)
        if m is None:
            m = HighestWeightModule(self.cd, w)
            self.registry[w] = m
        return m

    def __repr__(self) -> str:
        ws = ", ".join(str(self.cd.weight_dict(w)) for w in self.factors)
        return f"TensorModule([{ws}], depth={self.depth})"

    @property
    def length(self) -> int:
        return len(self.factors)

    def prefix(self, k: int) -> "TensorModule":
        if k == self.length:
            return self
        tm = self._prefixes.get(k)
        if tm is None:
            tm = TensorModule(self.cd, self.factors[:k], self.depth, self.registry)
            self._prefixes[k] = tm
        return tm

    def extend(self, omega: Weight) -> "TensorModule":
        """The module for factors + (omega,), sharing component caches."""
        return TensorModule(self.cd, self.factors + (tuple(omega),), self.depth, self.registry)

    def contents(self) -> list[Weight]:
        from .cartan import enumerate_contents

        if self.depth is None:
            raise DepthError("module has no depth cutoff; contents are unbounded")
        return enumerate_contents(self.cd, self.depth)

    # -- bases --------------------------------------------------------------

    def _check_depth(self, nu: Weight) -> None:
        if self.depth is not None and size(nu) > self.depth:
            raise DepthError(
                f"content {self.cd.weight_dict(nu)} exceeds depth {self.depth}; raise --depth"
            )

    def basis(self, nu: Weight) -> tuple[Key, ...]:
        hit = self._bases.get(nu)
        if hit is not None:
            return hit
        self._check_depth(nu)
        keys: list[Key] = []
        if self.length == 0:
            if not any(nu):
                keys.append(())
        else:
            for split in self._splits(nu, self.length):
                ranges = []
                for comp, part in zip(self.components, split):
                    d = comp.weight_space(part).dim
                    if not d:
                        break
                    ranges.append([(part, x) for x in range(d)])
                else:
                    keys.extend(product(*ranges))
        keys.sort(key=self._order)
        hit = tuple(keys)
        self._bases[nu] = hit
        self._index[nu] = {k: n for n, k in enumerate(hit)}
        return hit

    @staticmethod
    def _order(key: Key):
        return tuple((sum(part), tuple(-x for x in part), idx) for part, idx in key)

    def _splits(self, nu: Weight, t: int) -> Iterator[tuple[Weight, ...]]:
        if t == 1:
            yield (nu,)
            return
        for first in product(*(range(n, -1, -1) for n in nu)):
            rest = tuple(n - f for n, f in zip(nu, first))
            for tail in self._splits(rest, t - 1):
                yield (tuple(first),) + tail

    def dim(self, nu: Weight) -> int:
        return len(self.basis(nu))

    def index(self, nu: Weight) -> dict[Key, int]:
        self.basis(nu)
        return self._index[nu]

    def to_dense(self, v: ModuleVector) -> list[RatQ]:
        idx = self.index(v.nu)
        out = [RATQ_ZERO] * len(idx)
        for k, c in v.items():
            out[idx[k]] = c
        return out

    def from_dense(self, nu: Weight, xs: Sequence) -> ModuleVector:
        keys = self.basis(nu)
        return ModuleVector(nu, {k: to_ratq(x) for k, x in zip(keys, xs) if x})

    def basis_vector(self, nu: Weight, n: int) -> ModuleVector:
        return ModuleVector.basis(nu, self.basis(nu)[n])

    def vacuum(self) -> ModuleVector:
        """eta x ... x eta (the element 1 of the trivial module when t = 0)."""
        z = self.cd.zero()
        return ModuleVector.basis(z, tuple((z, 0) for _ in self.factors))

    def pure(self, parts: Sequence[ModuleVector]) -> ModuleVector:
        """Tensor product of component vectors."""
        if len(parts) != self.length:
            raise ValueError("need one vector per factor")
        nu = self.cd.zero()
        for p in parts:
            nu = add(nu, p.nu)
        out: dict[Key, RatQ] = {(): RATQ_ONE}
        for p in parts:
            nxt: dict[Key, RatQ] = {}
            for k, c in out.items():
                for a, x in p.items():
                    nxt[k + ((p.nu, a),)] = c * x
            out = nxt
        return ModuleVector(nu, out)

    def embed(self, v: ModuleVector) -> ModuleVector:
        """phi_omega: v -> v x eta for v in the prefix of length t - 1."""
        if self.length == 0:
            raise ValueError("the trivial module has no predecessor")
        z = self.cd.zero()
        return ModuleVector(v.nu, {k + ((z, 0),): c for k, c in v.items()})

    # -- actions ----------------------------------------------------------------

    def _kexp(self, a: int, part: Weight, i: int) -> int:
        return k_exponent(self.cd, self.factors[a], part, i)

    def k_exponent(self, nu: Weight, i: int) -> int:
        """K_i eigenvalue exponent on the whole nu weight space."""
        return sum(self.factors[a][i] for a in range(self.length)) - sum(
            self.cd.a[i][j] * nu[j] for j in range(self.cd.rank)
        )

    def _f_matrix(self, nu: Weight, i: int) -> dict[Key, dict[Key, RatQ]]:
        hit = self._fmat.get((nu, i))
        if hit is not None:
            return hit
        target = add(nu, unit(self.cd.rank, i))
        self._check_depth(target)
        hit = {}
        for key in self.basis(nu):
            out: dict[Key, RatQ] = {}
            # K_i^-1 accumulated from factors right of a
            right = 0
            for a in range(self.length - 1, -1, -1):
                part, idx = key[a]
                comp = self.components[a]
                img = comp._f_matrix(part, i)[idx]
                if img:
                    newpart = add(part, unit(self.cd.rank, i))
                    scale = LaurentInt.monomial(-right)
                    for b, c in img.items():
                        k2 = key[:a] + ((newpart, b),) + key[a + 1 :]
                        accumulate(out, {k2: c}, to_ratq(scale))
                right += self._kexp(a, part, i)
            hit[key] = out
        self._fmat[(nu, i)] = hit
        return hit

    def _e_matrix(self, nu: Weight, i: int) -> dict[Key, dict[Key, RatQ]]:
        hit = self._emat.get((nu, i))
        if hit is not None:
            return hit
        hit = {}
        for key in self.basis(nu):
            out: dict[Key, RatQ] = {}
            left = 0
            for a in range(self.length):
                part, idx = key[a]
                comp = self.components[a]
                if part[i] > 0:
                    img = comp._e_matrix(part, i)[idx]
                    newpart = sub(part, unit(self.cd.rank, i))
                    scale = LaurentInt.monomial(left)
                    for b, c in img.items():
                        k2 = key[:a] + ((newpart, b),) + key[a + 1 :]
                        accumulate(out, {k2: c}, to_ratq(scale))
                left += self._kexp(a, part, i)
            hit[key] = out
        self._emat[(nu, i)] = hit
        return hit

    def apply_f(self, i: int, v: ModuleVector) -> ModuleVector:
        target = add(v.nu, unit(self.cd.rank, i))
        self._check_depth(target)
        if not v:
            return ModuleVector(target)
        mat = self._f_matrix(v.nu, i)
        out: dict[Key, RatQ] = {}
        for k, c in v.items():
            accumulate(out, mat[k], c)
        return ModuleVector._make(target, out)

    def apply_e(self, i: int, v: ModuleVector) -> ModuleVector:
        target = sub(v.nu, unit(self.cd.rank, i))
        if target is None:
            return ModuleVector(v.nu)
        if not v:
            return ModuleVector(target)
        mat = self._e_matrix(v.nu, i)
        out: dict[Key, RatQ] = {}
        for k, c in v.items():
            accumulate(out, mat[k], c)
        return ModuleVector._make(target, out)

    def act(self, gen: Gen, v: ModuleVector) -> ModuleVector:
        """tensor_act: exact action of K_i^{+-1}, E_i^{(n)}, F_i^{(n)}."""
        i = gen.i
        if gen.kind == "K":
            return v.scale(LaurentInt.monomial(gen.n * self.k_exponent(v.nu, i)))
        step = self.apply_f if gen.kind == "F" else self.apply_e
        for _ in range(gen.n):
            v = step(i, v)
        if gen.n > 1:
            v = v.scale(RatQ(1, qfact(gen.n)))
        return v

    def act_word(self, gens: Sequence[Gen], v: ModuleVector) -> ModuleVector:
        """Apply a product x_1 x_2 ... x_k (rightmost first)."""
        for g in reversed(gens):
            v = self.act(g, v)
        return v

    # -- contravariant form ----------------------------------------------------

    def gram(self, nu: Weight) -> list[list[LaurentInt]]:
        """Product form on the pure-tensor basis of the nu weight space."""
        hit = self._gram.get(nu)
        if hit is not None:
            return hit
        keys = self.basis(nu)
        zero = LaurentInt()
        g = [[zero] * len(keys) for _ in keys]
        for r, k1 in enumerate(keys):
            for c in range(r, len(keys)):
                k2 = keys[c]
                val = LaurentInt.const(1)
                for a, ((p1, x1), (p2, x2)) in enumerate(zip(k1, k2)):
                    if p1 != p2:
                        val = zero
                        break
                    ws = self.components[a].weight_space(p1)
                    val = val * ws.gram[ws.pivots[x1]][ws.pivots[x2]]
                    if not val:
                        break
                g[r][c] = val
                g[c][r] = val
        self._gram[nu] = g
        return g

    def form(self, u: ModuleVector, w: ModuleVector) -> RatQ:
        """tensor_form: (u1 x u2, w1 x w2) = (u1, w1)(u2, w2), bilinearly."""
        if u.nu != w.nu or not u or not w:
            return RATQ_ZERO
        g = self.gram(u.nu)
        idx = self.index(u.nu)
        acc = RATQ_ZERO
        for k1, x in u.items():
            row = g[idx[k1]]
            for k2, y in w.items():
                e = row[idx[k2]]
                if e:
                    acc = acc + x * y * e
        return acc

    # -- standard vectors ----------------------------------------------------

    def l_vector(self, mu: MuSeq) -> ModuleVector:
        """The standard vector of a sequence of type I / type II steps."""
        omegas = tuple(e.omega for e in mu if isinstance(e, TypeII))
        if omegas != self.factors:
            raise CartanError(
                "type II subsequence does not match the module factors: "
                f"{[self.cd.weight_dict(w) for w in omegas]} vs "
                f"{[self.cd.weight_dict(w) for w in self.factors]}"
            )
        k = 0
        cur = self.prefix(0)
        v = cur.vacuum()
        for e in mu:
            if isinstance(e, TypeII):
                k += 1
                cur = self.prefix(k)
                v = cur.embed(v)
            else:
                if cur.length == 0:
                    # the trivial module is killed by every F_i
                    v = ModuleVector(add(v.nu, unit(self.cd.rank, e.i, e.n)))
                    continue
                v = cur.act(Gen("F", e.i, e.n), v)
        return v

    def enumerate_mu(self, nu: Weight) -> Iterator[MuSeq]:
        """All sequences with this module's type II subsequence and type I
        content nu, with adjacent equal-vertex type I entries merged and no
        type I entries before the first type II entry (those vanish)."""
        t = self.length
        if t == 0:
            if not any(nu):
                yield ()
            return
        for split in self._splits(nu, t) if t > 1 else [(nu,)]:
            slot_options = [_slot_sequences(part) for part in split]
            for choice in product(*slot_options):
                mu: list[Entry] = []
                for w, slot in zip(self.factors, choice):
                    mu.append(TypeII(w))
                    mu.extend(slot)
                yield tuple(mu)


_slot_cache: dict[Weight, list[tuple[TypeI, ...]]] = {}


def _slot_sequences(part: Weight) -> list[tuple[TypeI, ...]]:
    """Type I runs of content `part` with no two adjacent entries sharing a
    vertex; fewer entries first, then by vertex with bigger powers first."""
    hit = _slot_cache.get(part)
    if hit is not None:
        return hit
    out: list[tuple[TypeI, ...]] = []

    def rec(rem: list[int], last: int, acc: list[TypeI]):
        if not any(rem):
            out.append(tuple(acc))
            return
        for i, r in enumerate(rem):
            if i == last or r == 0:
                continue
            for n in range(r, 0, -1):
                rem[i] -= n
                acc.append(TypeI(i, n))
                rec(rem, i, acc)
                acc.pop()
                rem[i] += n

    rec(list(part), -1, [])
    out.sort(key=lambda s: (len(s), [(e.i, -e.n) for e in s]))
    _slot_cache[part] = out
    return out
