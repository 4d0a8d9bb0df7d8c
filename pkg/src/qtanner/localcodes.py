"""Cyclic and double-circulant component codes and their tensor products.

Polynomials live in F2[X]/(X^ell - 1), packed as Python ints with bit ``j``
holding the coefficient of ``X^j``.  Circulant matrices follow the
convention that row ``i`` is the coefficient vector of ``X^i * f``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _kernels, gf2
from .gf2 import BitMatrix

__all__ = [
    "Poly",
    "CyclicCode",
    "DoubleCirculantCode",
    "TensorCode",
    "circulant",
    "reciprocal",
    "cyclic_dual",
    "double_circulant_dual",
    "tensor_parity",
    "tensor_dual_generators",
    "kron_generators",
    "reduced_generator_basis",
]


def _rotate(mask: int, i: int, ell: int) -> int:
    full = (1 << ell) - 1
    i %= ell
    return ((mask << i) | (mask >> (ell - i))) & full if i else mask & full


def _plain_divmod(num: int, den: int) -> tuple[int, int]:
    """Long division of plain F2[X] polynomials packed as ints."""
    if den == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    dd = den.bit_length() - 1
    while num.bit_length() - 1 >= dd and num:
        shift = (num.bit_length() - 1) - dd
        q |= 1 << shift
        num ^= den << shift
    return q, num


@dataclass(frozen=True)
class Poly:
    """An element of F2[X]/(X^ell - 1)."""

    ell: int
    mask: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be positive, got {self.ell}")
        if not 0 <= self.mask < (1 << self.ell):
            raise ValueError(f"mask {self.mask:#x} out of range for ell={self.ell}")

    @classmethod
    def zero(cls, ell: int) -> Poly:
        return cls(ell, 0)

    @classmethod
    def one(cls, ell: int) -> Poly:
        return cls(ell, 1)

    @classmethod
    def from_exponents(cls, ell: int, exponents) -> Poly:
        mask = 0
        for e in exponents:
            mask ^= 1 << (int(e) % ell)
        return cls(ell, mask)

    @classmethod
    def from_plain_int(cls, ell: int, plain: int) -> Poly:
        """Reduce a plain F2[X] polynomial modulo X^ell - 1."""
        mask = plain & ((1 << ell) - 1)
        plain >>= ell
        e = ell
        while plain:
            if plain & 1:
                mask ^= 1 << (e % ell)
            plain >>= 1
            e += 1
        return cls(ell, mask)

    def exponents(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.ell) if (self.mask >> j) & 1)

    @property
    def degree(self) -> int:
        return self.mask.bit_length() - 1

    @property
    def weight(self) -> int:
        return bin(self.mask).count("1")

    def is_zero(self) -> bool:
        return self.mask == 0

    def shift(self, i: int) -> Poly:
        """Multiplication by X^i."""
        return Poly(self.ell, _rotate(self.mask, i, self.ell))

    def star(self) -> Poly:
        """Exponent negation: X^j maps to X^(-j mod ell)."""
        out = 0
        for j in range(self.ell):
            if (self.mask >> j) & 1:
                out |= 1 << ((-j) % self.ell)
        return Poly(self.ell, out)

    def __add__(self, other: Poly) -> Poly:
        if self.ell != other.ell:
            raise ValueError(f"ring mismatch: ell {self.ell} vs {other.ell}")
        return Poly(self.ell, self.mask ^ other.mask)

    def __mul__(self, other: Poly) -> Poly:
        if self.ell != other.ell:
            raise ValueError(f"ring mismatch: ell {self.ell} vs {other.ell}")
        acc = 0
        for i in range(self.ell):
            if (self.mask >> i) & 1:
                acc ^= _rotate(other.mask, i, self.ell)
        return Poly(self.ell, acc)

    def __str__(self) -> str:
        if self.mask == 0:
            return "0"
        terms = []
        for j in self.exponents():
            terms.append("1" if j == 0 else ("X" if j == 1 else f"X^{j}"))
        return " + ".join(terms)


def circulant(f: Poly) -> BitMatrix:
    """The ell x ell matrix whose row ``i`` is ``X^i * f``."""
    m = gf2.zeros(f.ell, f.ell)
    for i in range(f.ell):
        row = _rotate(f.mask, i, f.ell)
        for w in range(m.words.shape[1]):
            m.words[i, w] = (row >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return m


def reciprocal(h: Poly) -> Poly:
    """Coefficient reversal: X^degree(h) * h(1/X)."""
    if h.is_zero():
        raise ValueError("reciprocal of the zero polynomial is undefined")
    d = h.degree
    out = 0
    for j in range(d + 1):
        if (h.mask >> j) & 1:
            out |= 1 << (d - j)
    return Poly(h.ell, out)


@dataclass(frozen=True)
class CyclicCode:
    """The cyclic code of length ``ell`` generated by ``g``; requires
    ``g | X^ell - 1`` (the zero polynomial gives the zero code)."""

    ell: int
    g: Poly

    def __post_init__(self):
        if self.g.ell != self.ell:
            raise ValueError(f"generator lives in ell={self.g.ell}, code in {self.ell}")
        if not self.g.is_zero():
            _, rem = _plain_divmod((1 << self.ell) | 1, self.g.mask)
            if rem:
                raise ValueError(
                    f"{self.g} does not divide X^{self.ell} - 1"
                )

    @property
    def dimension(self) -> int:
        return 0 if self.g.is_zero() else self.ell - self.g.degree

    def check_polynomial(self) -> int:
        """The plain-int quotient (X^ell - 1) / g."""
        if self.g.is_zero():
            raise ValueError("the zero code has no check polynomial")
        q, _ = _plain_divmod((1 << self.ell) | 1, self.g.mask)
        return q

    def generator_matrix(self) -> BitMatrix:
        return circulant(self.g)


def cyclic_dual(c: CyclicCode) -> CyclicCode:
    """The dual cyclic code, generated by the reciprocal of the check
    polynomial."""
    if c.g.is_zero():
        return CyclicCode(c.ell, Poly.one(c.ell))
    h = c.check_polynomial()
    d = h.bit_length() - 1
    rev = 0
    for j in range(d + 1):
        if (h >> j) & 1:
            rev |= 1 << (d - j)
    return CyclicCode(c.ell, Poly.from_plain_int(c.ell, rev))


@dataclass(frozen=True)
class DoubleCirculantCode:
    """The [2*ell, ell] code with generator matrix [C(1) | C(f)]."""

    ell: int
    f: Poly

    def __post_init__(self):
        if self.f.ell != self.ell:
            raise ValueError(f"f lives in ell={self.f.ell}, code in {self.ell}")

    def generator_matrix(self) -> BitMatrix:
        return gf2.hstack([circulant(Poly.one(self.ell)), circulant(self.f)])


def double_circulant_dual(d: DoubleCirculantCode) -> BitMatrix:
    """Generator matrix [C(f*) | C(1)] of the dual, where ``f*`` negates
    exponents.  Row ``i`` of the result is orthogonal to every row of the
    primal generator because C(1) C(f*)^T = C(f*) C(1)^T."""
    return gf2.hstack([circulant(d.f.star()), circulant(Poly.one(d.ell))])


@dataclass(frozen=True)
class TensorCode:
    """Tensor product of two component codes on a grid of ``lc * ld``
    coordinates, position (i, j) stored at ``i * ld + j``."""

    lc: int
    ld: int
    parity: BitMatrix

    @property
    def length(self) -> int:
        return self.lc * self.ld


def tensor_parity(hc: BitMatrix, hd: BitMatrix) -> TensorCode:
    """Parity checks of the tensor code: rows ``hc x I`` then ``I x hd``."""
    lc, ld = hc.ncols, hd.ncols
    parity = gf2.stack([
        gf2.kron(hc, gf2.identity(ld)),
        gf2.kron(gf2.identity(lc), hd),
    ])
    return TensorCode(lc, ld, parity)


def tensor_dual_generators(cdual_gen: BitMatrix, ddual_gen: BitMatrix) -> BitMatrix:
    """Spanning rows of the dual of a tensor code, assembled from dual
    generators of the components: all ``u x e_j`` followed by all
    ``e_i x v``."""
    lc, ld = cdual_gen.ncols, ddual_gen.ncols
    return gf2.stack([
        gf2.kron(cdual_gen, gf2.identity(ld)),
        gf2.kron(gf2.identity(lc), ddual_gen),
    ])


def kron_generators(ga: BitMatrix, gb: BitMatrix) -> BitMatrix:
    """Generator rows ``a_i x b_j`` of a product code, ``i``-major."""
    return gf2.kron(ga, gb)


def reduced_generator_basis(gen: BitMatrix, max_dim: int = 16) -> BitMatrix:
    """A minimum-weight generating set for the rowspace of ``gen``.

    Enumerates the full rowspace (dimension capped by ``max_dim``), sorts
    codewords by (weight, numeric value) and greedily keeps those that are
    independent of the ones already kept."""
    red, r, pivots = gf2.rref(gen)
    if r > max_dim:
        raise ValueError(f"rowspace dimension {r} exceeds max_dim={max_dim}")
    if r == 0:
        raise ValueError("cannot build a basis for the zero rowspace")
    basis_rows = red.words[:r]
    words = []
    acc = basis_rows[0] * 0
    for idx in range(1, 1 << r):
        flip = ((idx ^ (idx >> 1)) ^ ((idx - 1) ^ ((idx - 1) >> 1))).bit_length() - 1
        acc = acc ^ basis_rows[flip]
        words.append(acc.copy())
    def sort_key(wrow):
        wt = int(_kernels.popcount_words(wrow).sum())
        return (wt, tuple(int(x) for x in wrow[::-1]))
    words.sort(key=sort_key)
    chosen = gf2.zeros(r, gen.ncols)
    count = 0
    for wrow in words:
        if count == r:
            break
        trial = chosen.words[: count + 1]
        trial[count] = wrow
        probe = trial.copy()
        got, _ = _kernels.rref(probe, gen.ncols)
        if got == count + 1:
            chosen.words[count] = wrow
            count += 1
        else:
            chosen.words[count] = 0
    return chosen
