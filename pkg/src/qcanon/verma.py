"""
Irreducible highest weight modules realized as Verma quotients.

A weight space of Lambda(omega) is spanned by the monomials
F_{i1} F_{i2} ... F_{ik} eta applied to the highest weight vector; its
quotient by the radical of the contravariant form is cut out by choosing the
leftmost linearly independent columns of the Gram matrix (the pivot words).

Words are tuples of vertex indices; the leftmost letter is the outermost
operator, so the rightmost letter acts on eta first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterable, Mapping, Sequence

from .cartan import CartanData, Weight, add, k_exponent, sub, unit
from .qarith import (
    ONE,
    RATQ_ONE,
    RATQ_ZERO,
    LaurentInt,
    RatQ,
    matrix_inverse,
    matrix_rank,
    qfact,
    qint,
    to_ratq,
)

__all__ = [
    "DepthError",
    "FWord",
    "ModuleVector",
    "WeightSpace",
    "HighestWeightModule",
    "Gen",
    "E",
    "F",
    "K",
    "word_content",
]

Word = tuple[int, ...]


class DepthError(ValueError):
    """A weight space beyond the configured depth cutoff was requested."""


# -- generators ---------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    """One of K_i^{+-1} (kind 'K', n = +-1), E_i^{(n)}, F_i^{(n)}."""

    kind: str
    i: int
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("E", "F", "K"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "K" and self.n not in (1, -1):
            raise ValueError("K exponent must be +1 or -1")
        if self.kind != "K" and self.n < 0:
            raise ValueError("divided power must be >= 0")

    def __str__(self) -> str:
        if self.kind == "K":
            return f"K{self.i}" if self.n == 1 else f"K{self.i}^-1"
        return f"{self.kind}{self.i}" if self.n == 1 else f"{self.kind}{self.i}^({self.n})"


def E(i: int, n: int = 1) -> Gen:
    return Gen("E", i, n)


def F(i: int, n: int = 1) -> Gen:
    return Gen("F", i, n)


def K(i: int, n: int = 1) -> Gen:
    return Gen("K", i, n)


# -- words --------------------------------------------------------------------


@dataclass(frozen=True)
class FWord:
    """F_{i1}^{(n1)} ... F_{ik}^{(nk)} as a tuple of (vertex index, n) letters."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, n in self.letters:
            if n < 1:
                raise ValueError("divided power exponents must be >= 1")

    @classmethod
    def plain(cls, word: Iterable[int]) -> "FWord":
        return cls(tuple((i, 1) for i in word))

    def content(self, rank: int) -> Weight:
        out = [0] * rank
        for i, n in self.letters:
            out[i] += n
        return tuple(out)

    def expand(self) -> tuple[Word, LaurentInt]:
        """The plain word F^n... and the product of [n]! it must be divided by."""
        word: list[int] = []
        den = ONE
        for i, n in self.letters:
            word.extend([i] * n)
            if n > 1:
                den = den * qfact(n)
        return tuple(word), den

    def to_json(self, cd: CartanData) -> list:
        return [[cd.vertices[i], n] for i, n in self.letters]


def word_content(word: Word, rank: int) -> Weight:
    out = [0] * rank
    for i in word:
        out[i] += 1
    return tuple(out)


def words_of_content(nu: Weight) -> list[Word]:
    letters = [i for i, n in enumerate(nu) for _ in range(n)]
    return sorted(set(permutations(letters)))


# -- vectors --------------------------------------------------------------------


class ModuleVector:
    """A weight vector: content nu plus sparse coordinates over a basis of the
    nu weight space (pivot indices for Lambda(omega), pure tensors for
    tensor products).  Zero coordinates are never stored."""

    __slots__ = ("nu", "coeffs")

    def __init__(self, nu: Weight, coeffs: Mapping[Hashable, RatQ] | None = None):
        self.nu = nu
        self.coeffs = {k: to_ratq(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def zero(cls, nu: Weight) -> "ModuleVector":
        return cls(nu)

    @classmethod
    def basis(cls, nu: Weight, key: Hashable) -> "ModuleVector":
        return cls(nu, {key: RATQ_ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, key) -> RatQ:
        return self.coeffs.get(key, RATQ_ZERO)

    def items(self):
        return self.coeffs.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.nu == other.nu and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nu, frozenset(self.coeffs.items())))

    def _check(self, other: "ModuleVector"):
        if self.nu != other.nu and self.coeffs and other.coeffs:
            raise ValueError(f"adding vectors of different content {self.nu} and {other.nu}")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ModuleVector._make(self.nu if self.coeffs else other.nu, out)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector._make(self.nu, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, c) -> "ModuleVector":
        c = to_ratq(c)
        if not c:
            return ModuleVector(self.nu)
        return ModuleVector._make(self.nu, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = scale

    def add_scaled(self, other: "ModuleVector", c) -> "ModuleVector":
        return self + other.scale(c)

    def bar_coeffs(self) -> "ModuleVector":
        return ModuleVector._make(self.nu, {k: v.bar() for k, v in self.coeffs.items()})

    @classmethod
    def _make(cls, nu, coeffs: dict) -> "ModuleVector":
        obj = object.__new__(cls)
        obj.nu = nu
        obj.coeffs = coeffs
        return obj

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items(), key=lambda kv: repr(kv[0])))
        return f"ModuleVector(nu={self.nu}, {{{body}}})"


def accumulate(target: dict, vec: Mapping, c: RatQ | None = None) -> None:
    """target += c * vec in place (sparse dicts of RatQ)."""
    for k, v in vec.items():
        if c is not None:
            v = v * c
        s = target.get(k)
        s = v if s is None else s + v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


# -- weight spaces --------------------------------------------------------------


@dataclass
class WeightSpace:
    """One weight space Lambda(omega)_{omega - nu}, realized via pivot words."""

    omega: Weight
    nu: Weight
    words: tuple[Word, ...]
    gram: tuple[tuple[LaurentInt, ...], ...]
    pivots: tuple[int, ...]
    dim: int
    # coordinates (over the pivot words) of every spanning word
    word_coords: dict[Word, tuple[RatQ, ...]] = field(repr=False, default_factory=dict)

    @property
    def pivot_words(self) -> tuple[Word, ...]:
        return tuple(self.words[p] for p in self.pivots)

    def pivot_gram(self) -> list[list[LaurentInt]]:
        return [[self.gram[a][b] for b in self.pivots] for a in self.pivots]

    def to_json(self, cd: CartanData) -> dict:
        return {
            "omega": cd.weight_dict(self.omega),
            "nu": cd.weight_dict(self.nu),
            "dim": self.dim,
            "pivot_words": [FWord.plain(w).to_json(cd) for w in self.pivot_words],
        }


class HighestWeightModule:
    """Lambda(omega) with lazily realized, cached weight spaces.

    All caches are local to this object; build one module per task if
    weight spaces are to be realized concurrently.
    """

    def __init__(self, cd: CartanData, omega: Weight):
        if len(omega) != cd.rank or any(x < 0 for x in omega):
            raise ValueError(f"bad dominant weight {omega!r}")
        self.cd = cd
        self.omega = tuple(omega)
        self._efree: dict[tuple[Word, int], dict[Word, LaurentInt]] = {}
        self._form: dict[tuple[Word, Word], LaurentInt] = {}
        self._spaces: dict[Weight, WeightSpace] = {}
        self._fmat: dict[tuple[Weight, int], list[dict[int, RatQ]]] = {}
        self._emat: dict[tuple[Weight, int], list[dict[int, RatQ]]] = {}

    def __repr__(self) -> str:
        return f"HighestWeightModule(omega={self.cd.weight_dict(self.omega)})"

    def content(self, word: Word) -> Weight:
        return word_content(word, self.cd.rank)

    def k_exp(self, nu: Weight, i: int) -> int:
        return k_exponent(self.cd, self.omega, nu, i)

    # -- free (Verma) computations ----------------------------------------

    def e_action_free(self, i: int, word: Word) -> dict[Word, LaurentInt]:
        """E_i applied to the monomial `word` eta in M(omega)."""
        key = (word, i)
        hit = self._efree.get(key)
        if hit is not None:
            return hit
        out: dict[Word, LaurentInt] = {}
        if word:
            j, rest = word[0], word[1:]
            for w, c in self.e_action_free(i, rest).items():
                out[(j,) + w] = c
            if j == i:
                e = qint(self.k_exp(self.content(rest), i))
                if e:
                    s = out.get(rest)
                    s = e if s is None else s + e
                    if s:
                        out[rest] = s
                    else:
                        out.pop(rest, None)
        self._efree[key] = out
        return out

    def e_action_sum(self, i: int, v: Mapping[Word, LaurentInt | RatQ]) -> dict[Word, RatQ]:
        out: dict[Word, RatQ] = {}
        for w, c in v.items():
            accumulate(out, {x: to_ratq(d) for x, d in self.e_action_free(i, w).items()}, to_ratq(c))
        return out

    def plain_form(self, u: Word, w: Word) -> LaurentInt:
        """Contravariant form on plain monomials, normalized by (eta, eta) = 1.

        (F_i u', w) = (u', q K_i^-1 E_i w) = q^(1 - e') (u', E_i w), where q^e'
        is the K_i eigenvalue on E_i w.
        """
        key = (u, w)
        hit = self._form.get(key)
        if hit is not None:
            return hit
        if len(u) != len(w) or sorted(u) != sorted(w):
            val = LaurentInt()
        elif not u:
            val = ONE
        else:
            i, rest = u[0], u[1:]
            e_prime = self.k_exp(self.content(rest), i)
            acc = LaurentInt()
            for x, c in self.e_action_free(i, w).items():
                acc = acc + c * self.plain_form(rest, x)
            val = acc.shift(1 - e_prime)
        self._form[key] = val
        return val

    def shapovalov(self, u: FWord, w: FWord) -> RatQ:
        uw, ud = u.expand()
        ww, wd = w.expand()
        return RatQ(self.plain_form(uw, ww), ud * wd)

    # -- weight spaces ----------------------------------------------------

    def weight_space(self, nu: Weight) -> WeightSpace:
        ws = self._spaces.get(nu)
        if ws is None:
            ws = self._build(nu)
            self._spaces[nu] = ws
        return ws

    def _build(self, nu: Weight) -> WeightSpace:
        if len(nu) != self.cd.rank or any(x < 0 for x in nu):
            raise ValueError(f"bad content {nu!r}")
        # Lambda_nu is spanned by F_i Lambda_{nu - i}; skip words entirely when
        # every predecessor space vanishes
        if any(nu) and all(
            (p := sub(nu, unit(self.cd.rank, i))) is None or self.weight_space(p).dim == 0
            for i in range(self.cd.rank)
        ):
            words = tuple(words_of_content(nu))
            zero = LaurentInt()
            gram = tuple(tuple(zero for _ in words) for _ in words)
            return WeightSpace(self.omega, nu, words, gram, (), 0, {w: () for w in words})
        words = tuple(words_of_content(nu))
        gram = tuple(tuple(self.plain_form(u, w) for w in words) for u in words)
        rank, pivots = matrix_rank(gram)
        word_coords: dict[Word, tuple[RatQ, ...]] = {}
        if rank:
            pg = [[gram[a][b] for b in pivots] for a in pivots]
            inv = matrix_inverse(pg)
            for c, w in enumerate(words):
                rhs = [gram[a][c] for a in pivots]
                coords = []
                for row in inv:
                    acc = RATQ_ZERO
                    for x, y in zip(row, rhs):
                        if x and y:
                            acc = acc + x * y
                    coords.append(acc)
                word_coords[w] = tuple(coords)
        else:
            word_coords = {w: () for w in words}
        return WeightSpace(self.omega, nu, words, gram, pivots, rank, word_coords)

    def reduce_to_basis(self, nu: Weight, v: Mapping[Word, LaurentInt | RatQ]) -> ModuleVector:
        """Image in Lambda(omega) of a formal word sum of content nu."""
        ws = self.weight_space(nu)
        out: dict[int, RatQ] = {}
        for w, c in v.items():
            c = to_ratq(c)
            if not c:
                continue
            coords = ws.word_coords[w]
            accumulate(out, {a: x for a, x in enumerate(coords) if x}, c)
        return ModuleVector(nu, out)

    def eta(self) -> ModuleVector:
        return ModuleVector.basis(self.cd.zero(), 0)

    def word_vector(self, word: FWord | Sequence[int]) -> ModuleVector:
        """The image of a monomial applied to eta."""
        if not isinstance(word, FWord):
            word = FWord.plain(word)
        plain, den = word.expand()
        nu = self.content(plain)
        return self.reduce_to_basis(nu, {plain: RatQ(1, den)})

    def lift(self, v: ModuleVector) -> dict[Word, RatQ]:
        """A formal word sum representing v (pivot words only)."""
        ws = self.weight_space(v.nu)
        return {ws.words[ws.pivots[a]]: c for a, c in v.items()}

    # -- actions ----------------------------------------------------------

    def _f_matrix(self, nu: Weight, i: int) -> list[dict[int, RatQ]]:
        key = (nu, i)
        hit = self._fmat.get(key)
        if hit is None:
            ws = self.weight_space(nu)
            target = add(nu, unit(self.cd.rank, i))
            hit = [self.reduce_to_basis(target, {(i,) + pw: RATQ_ONE}).coeffs for pw in ws.pivot_words]
            self._fmat[key] = hit
        return hit

    def _e_matrix(self, nu: Weight, i: int) -> list[dict[int, RatQ]]:
        key = (nu, i)
        hit = self._emat.get(key)
        if hit is None:
            ws = self.weight_space(nu)
            target = sub(nu, unit(self.cd.rank, i))
            if target is None:
                hit = [{} for _ in ws.pivot_words]
            else:
                hit = [
                    self.reduce_to_basis(target, self.e_action_free(i, pw)).coeffs
                    for pw in ws.pivot_words
                ]
            self._emat[key] = hit
        return hit

    def apply_f(self, i: int, v: ModuleVector) -> ModuleVector:
        target = add(v.nu, unit(self.cd.rank, i))
        if not v:
            return ModuleVector(target)
        mat = self._f_matrix(v.nu, i)
        out: dict[int, RatQ] = {}
        for a, c in v.items():
            accumulate(out, mat[a], c)
        return ModuleVector._make(target, out)

    def apply_e(self, i: int, v: ModuleVector) -> ModuleVector:
        target = sub(v.nu, unit(self.cd.rank, i))
        if target is None:
            return ModuleVector(v.nu)
        if not v:
            return ModuleVector(target)
        mat = self._e_matrix(v.nu, i)
        out: dict[int, RatQ] = {}
        for a, c in v.items():
            accumulate(out, mat[a], c)
        return ModuleVector._make(target, out)

    def act(self, gen: Gen, v: ModuleVector) -> ModuleVector:
        i = gen.i
        if gen.kind == "K":
            return v.scale(LaurentInt.monomial(gen.n * self.k_exp(v.nu, i)))
        step = self.apply_f if gen.kind == "F" else self.apply_e
        for _ in range(gen.n):
            v = step(i, v)
        if gen.n > 1:
            v = v.scale(RatQ(1, qfact(gen.n)))
        return v

    def form(self, u: ModuleVector, w: ModuleVector) -> RatQ:
        """Contravariant form on pivot coordinates."""
        if u.nu != w.nu or not u or not w:
            return RATQ_ZERO
        ws = self.weight_space(u.nu)
        acc = RATQ_ZERO
        for a, x in u.items():
            row = ws.gram[ws.pivots[a]]
            for b, y in w.items():
                g = row[ws.pivots[b]]
                if g:
                    acc = acc + x * y * g
        return acc
