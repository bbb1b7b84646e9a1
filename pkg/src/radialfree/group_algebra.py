"""
The group algebra of a free group with exact rational coefficients.

Elements are finitely supported functions ``Word -> Fraction``; the product
is convolution. The module also carries the canonical trace, the parity
automorphism, the averaging map onto radial elements, the normalized sphere
indicators ``h_n`` and the signed basis action of the limit representations
``lambda_{+1}`` and ``lambda_{-1}``.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

from .errors import DomainError
from .words import (
    DEFAULT_CAP,
    IDENTITY,
    Rank,
    Word,
    as_rank,
    check_word,
    format_word,
    inverse,
    is_reduced,
    multiply,
    parse_word,
    sphere,
    sphere_size,
)
from .radial import RadialElement


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise DomainError(f"coefficients must be exact rationals, got {type(x).__name__}")


class AlgebraElement:
    """A finitely supported function on the free group of a given rank.

    ``terms`` never stores zero coefficients. Arithmetic operators are
    overloaded: ``+``, ``-``, scalar ``*`` and ``*`` between elements, which
    is convolution.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms: Mapping[Word, object] = (), *, _trusted=False):
        self.rank = as_rank(rank)
        if _trusted:
            self.terms = terms
            return
        clean: Dict[Word, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            check_word(w, self.rank)
            if not is_reduced(w):
                raise DomainError(f"word {format_word(w)!r} is not reduced")
            c = _as_fraction(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def delta(cls, rank, w: Word = IDENTITY, coeff=1) -> "AlgebraElement":
        return cls(rank, {tuple(w): coeff})

    @classmethod
    def zero(cls, rank) -> "AlgebraElement":
        return cls(rank, {}, _trusted=True)

    def __getitem__(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def support(self) -> Tuple[Word, ...]:
        return tuple(sorted(self.terms, key=lambda w: (len(w), w)))

    def _same_rank(self, other: "AlgebraElement") -> None:
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self.rank.l} vs {other.rank.l}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same_rank(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return AlgebraElement(self.rank, out, _trusted=True)

    def __neg__(self):
        return AlgebraElement(self.rank, {w: -c for w, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, a) -> "AlgebraElement":
        a = _as_fraction(a)
        if not a:
            return AlgebraElement.zero(self.rank)
        return AlgebraElement(self.rank, {w: a * c for w, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __repr__(self):
        if not self.terms:
            return f"AlgebraElement(l={self.rank.l}, 0)"
        body = " + ".join(f"{c}*[{format_word(w)}]" for w, c in sorted(self.terms.items()))
        return f"AlgebraElement(l={self.rank.l}, {body})"


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Exact convolution ``(f*g)(w) = sum_{u v = w} f(u) g(v)``."""
    f._same_rank(g)
    out: Dict[Word, Fraction] = {}
    get = out.get
    g_items = list(g.terms.items())
    for u, a in f.terms.items():
        for v, b in g_items:
            w = multiply(u, v)
            out[w] = get(w, 0) + a * b
    return AlgebraElement(f.rank, {w: c for w, c in out.items() if c}, _trusted=True)


def involution(f: AlgebraElement) -> AlgebraElement:
    # coefficients are rational, so complex conjugation is the identity
    return AlgebraElement(f.rank, {inverse(w): c for w, c in f.terms.items()}, _trusted=True)


def trace(f: AlgebraElement) -> Fraction:
    """Coefficient of the identity."""
    return f.terms.get(IDENTITY, Fraction(0))


def trace_product(f: AlgebraElement, g: AlgebraElement) -> Fraction:
    """``trace(f * g)`` without forming the product: ``sum_u f(u) g(u^-1)``."""
    f._same_rank(g)
    if len(g.terms) < len(f.terms):
        f, g = g, f
    total = Fraction(0)
    for u, a in f.terms.items():
        b = g.terms.get(inverse(u))
        if b:
            total += a * b
    return total


def parity(f: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(
        f.rank, {w: (-c if len(w) % 2 else c) for w, c in f.terms.items()}, _trusted=True
    )


def radialize(f: AlgebraElement) -> RadialElement:
    """The averaging map: ``delta_g -> h_{|g|}``, extended linearly."""
    sums: Dict[int, Fraction] = {}
    for w, c in f.terms.items():
        sums[len(w)] = sums.get(len(w), 0) + c
    if not sums:
        return RadialElement(f.rank, ())
    coeffs = [Fraction(0)] * (max(sums) + 1)
    for n, c in sums.items():
        coeffs[n] = Fraction(c)
    return RadialElement(f.rank, coeffs)


def elementary_radial(rank, n: int, cap: int = DEFAULT_CAP) -> AlgebraElement:
    """``h_n``: the indicator of the sphere of radius ``n`` divided by its size."""
    rank = as_rank(rank)
    words = sphere(rank, n, cap=cap)
    c = Fraction(1, len(words))
    return AlgebraElement(rank, {w: c for w in words}, _trusted=True)


def embed(a: RadialElement, cap: int = DEFAULT_CAP) -> AlgebraElement:
    """Expand ``sum_n a_n h_n`` into a full group-algebra element."""
    out: Dict[Word, Fraction] = {}
    for n, c in enumerate(a.coeffs):
        if not c:
            continue
        share = c / sphere_size(a.rank, n)
        for w in sphere(a.rank, n, cap=cap):
            out[w] = share
    return AlgebraElement(a.rank, out, _trusted=True)


def sphere_indicator(rank, n: int, cap: int = DEFAULT_CAP) -> AlgebraElement:
    rank = as_rank(rank)
    return AlgebraElement(rank, {w: Fraction(1) for w in sphere(rank, n, cap=cap)}, _trusted=True)


# -- the limit representations lambda_{+1}, lambda_{-1} -----------------------


@dataclass(frozen=True)
class SignedWord:
    word: Word
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign!r}")


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")


def _generator_step(sign: int, a: int, g: Word) -> Tuple[Word, int]:
    if not g:
        return IDENTITY, sign
    if len(g) == 1 and g[0] == -a:
        return (a,), -sign
    return multiply((a,), g), 1


def lambda_pm1_generator_action(sign: int, a: Word, g: Word) -> SignedWord:
    """Image of the basis vector ``g`` under ``lambda_{sign}(a)`` for a letter ``a``.

    The identity is sent to ``sign * e``, the inverse letter ``a^-1`` to
    ``-sign * a``, and every other word ``g`` to ``a g`` with sign ``+1``.
    """
    _check_sign(sign)
    a = tuple(a)
    if len(a) != 1:
        raise DomainError(f"generator action needs a word of length 1, got length {len(a)}")
    return SignedWord(*_generator_step(sign, a[0], tuple(g)))


def lambda_pm1_word(sign: int, g: Word, w: Word) -> SignedWord:
    """``lambda_{sign}(g)`` on the basis vector ``w``, letters applied right to left."""
    _check_sign(sign)
    s = 1
    for a in reversed(g):
        w, t = _generator_step(sign, a, w)
        s *= t
    return SignedWord(w, s)


def lambda_pm1_apply(sign: int, g: Word, v: AlgebraElement) -> AlgebraElement:
    """Apply ``lambda_{sign}(g)`` to a finitely supported vector of ``l^2(G)``."""
    _check_sign(sign)
    g = tuple(g)
    check_word(g, v.rank)
    if not is_reduced(g):
        raise DomainError(f"word {format_word(g)!r} is not reduced")
    out: Dict[Word, Fraction] = {}
    for w, c in v.terms.items():
        image = lambda_pm1_word(sign, g, w)
        # a signed permutation never sends two basis words to the same image
        out[image.word] = c if image.sign == 1 else -c
    return AlgebraElement(v.rank, out, _trusted=True)


def right_end_class(w: Word) -> int:
    """Index ``i`` of the class ``G(i)`` of words ending in ``s_i`` or its inverse; 0 for e."""
    return abs(w[-1]) if w else 0


# -- serialization -------------------------------------------------------------


def to_json_dict(f: AlgebraElement) -> dict:
    rows = sorted((format_word(w), c) for w, c in f.terms.items())
    return {
        "l": f.rank.l,
        "terms": [{"word": text, "num": c.numerator, "den": c.denominator} for text, c in rows],
    }


def to_json(f: AlgebraElement) -> str:
    return json.dumps(to_json_dict(f))


def from_json_dict(data: dict) -> AlgebraElement:
    try:
        rank = Rank(int(data["l"]))
        terms = []
        for row in data["terms"]:
            w = parse_word(row["word"], rank)
            terms.append((w, Fraction(int(row["num"]), int(row["den"]))))
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed algebra element: {exc}") from exc
    return AlgebraElement(rank, terms)


def from_json(text: str) -> AlgebraElement:
    return from_json_dict(json.loads(text))


def linear_combination(rank, pairs: Iterable[Tuple[object, AlgebraElement]]) -> AlgebraElement:
    out = AlgebraElement.zero(rank)
    for c, f in pairs:
        out = out + f.scale(c)
    return out
