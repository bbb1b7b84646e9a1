"""
The primitive ideal space of the radial C*-algebra as a finite topological model.

Points are the collapsed regular-spectrum class ``Bot``, the two characters
``CharPlus``/``CharMinus`` at ``t = +1``/``-1``, and ``Sph(t)`` for every
complementary parameter ``s < |t| < 1`` (``s = 2 sqrt(r(1-r))``). A subset
is stored as three flags plus a canonical finite union of intervals of
complementary parameters; on that representation the closure operator is
exact. The closure of a nonempty parameter set ``C`` is the image of its
euclidean closure in ``[-1, 1]`` together with ``Bot``; ``Bot`` and the
characters are closed points.

The model needs ``l >= 2``; for ``l = 1`` the regular spectrum is the whole
of ``[-1, 1]``.
"""

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError
from .radial import regular_radius
from .words import as_rank

#: Points within this distance of the regular spectrum are collapsed to ``Bot``.
SIGMA_TOL = 1e-12


def _edge(rank) -> float:
    rank = as_rank(rank)
    if rank.l < 2:
        raise DomainError("the primitive ideal model needs at least two generators")
    return regular_radius(rank)


# -- points --------------------------------------------------------------------


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "bot"


@dataclass(frozen=True)
class CharPlus:
    def __str__(self):
        return "char+"


@dataclass(frozen=True)
class CharMinus:
    def __str__(self):
        return "char-"


@dataclass(frozen=True)
class Sph:
    t: float

    def __str__(self):
        return f"point:{self.t!r}"


PrimPoint = Union[Bot, CharPlus, CharMinus, Sph]

BOT, CHAR_PLUS, CHAR_MINUS = Bot(), CharPlus(), CharMinus()


def quotient(rank, t: float) -> PrimPoint:
    """Image of ``t`` in ``[-1, 1]`` under the quotient collapsing the regular spectrum."""
    s = _edge(rank)
    t = float(t)
    if not math.isfinite(t) or abs(t) > 1:
        raise DomainError(f"spectral parameter must lie in [-1, 1], got {t}")
    if t == 1.0:
        return CHAR_PLUS
    if t == -1.0:
        return CHAR_MINUS
    if abs(t) <= s + SIGMA_TOL:
        return BOT
    return Sph(t)


def sph(rank, t: float) -> Sph:
    p = quotient(rank, t)
    if not isinstance(p, Sph):
        raise DomainError(f"{t} is not a complementary parameter")
    return p


# -- interval sets -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, t: float) -> bool:
        above = t > self.lo or (self.lo_closed and t == self.lo)
        below = t < self.hi or (self.hi_closed and t == self.hi)
        return above and below

    def __str__(self):
        if self.is_point():
            return f"point:{self.lo!r}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"interval:{left}{self.lo!r},{self.hi!r}{right}"


def _legal_components(s: float) -> Tuple[Interval, Interval]:
    return Interval(-1.0, -s), Interval(s, 1.0)


def _snap(x: float, s: float) -> float:
    for b in (-1.0, -s, s, 1.0):
        if abs(x - b) <= SIGMA_TOL:
            return b
    return x


def _check_interval(iv: Interval, s: float) -> Interval:
    lo, hi = iv.lo, iv.hi
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"malformed interval {iv}")
    if lo != hi:
        lo, hi = _snap(lo, s), _snap(hi, s)
        iv = Interval(lo, hi, iv.lo_closed, iv.hi_closed)
    if lo == hi and not (iv.lo_closed and iv.hi_closed):
        raise DomainError(f"degenerate interval {iv} must be a closed point")
    neg, pos = _legal_components(s)
    for comp in (neg, pos):
        if comp.lo <= lo and hi <= comp.hi:
            if (lo == comp.lo and iv.lo_closed) or (hi == comp.hi and iv.hi_closed):
                raise DomainError(f"{iv} includes a non-complementary endpoint")
            if lo == hi == comp.lo or lo == hi == comp.hi:
                raise DomainError(f"{iv} is not a complementary parameter")
            return iv
    raise DomainError(f"{iv} leaves the complementary parameters (-1,-{s!r}) u ({s!r},1)")


def _canonical(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    """Sort and merge overlapping or abutting pieces into maximal disjoint intervals."""
    ivs = sorted(intervals, key=lambda iv: (iv.lo, not iv.lo_closed, iv.hi, iv.hi_closed))
    out: List[Interval] = []
    for iv in ivs:
        if out:
            last = out[-1]
            touches = iv.lo < last.hi or (iv.lo == last.hi and (last.hi_closed or iv.lo_closed))
            if touches:
                if iv.hi > last.hi or (iv.hi == last.hi and iv.hi_closed and not last.hi_closed):
                    hi, hi_closed = iv.hi, iv.hi_closed
                else:
                    hi, hi_closed = last.hi, last.hi_closed
                lo_closed = last.lo_closed or (iv.lo == last.lo and iv.lo_closed)
                out[-1] = Interval(last.lo, hi, lo_closed, hi_closed)
                continue
        out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class PrimSet:
    """Subset of the primitive ideal space.

    Build with :func:`prim_set` so that parameters are validated and put in
    canonical form; two canonical sets are equal iff they are the same set.
    """

    has_bot: bool = False
    has_char_plus: bool = False
    has_char_minus: bool = False
    params: Tuple[Interval, ...] = field(default=())

    def is_empty(self) -> bool:
        return not (self.has_bot or self.has_char_plus or self.has_char_minus or self.params)

    def contains(self, p: PrimPoint) -> bool:
        if isinstance(p, Bot):
            return self.has_bot
        if isinstance(p, CharPlus):
            return self.has_char_plus
        if isinstance(p, CharMinus):
            return self.has_char_minus
        return any(iv.contains(p.t) for iv in self.params)

    def __contains__(self, p):
        return self.contains(p)

    def __str__(self):
        return format_prim_set(self)


def prim_set(rank, bot=False, char_plus=False, char_minus=False, params: Iterable[Interval] = ()) -> PrimSet:
    s = _edge(rank)
    checked = [_check_interval(iv, s) for iv in params]
    return PrimSet(bool(bot), bool(char_plus), bool(char_minus), _canonical(checked))


def from_points(rank, points: Iterable[PrimPoint]) -> PrimSet:
    bot = cp = cm = False
    ivs = []
    for p in points:
        if isinstance(p, Bot):
            bot = True
        elif isinstance(p, CharPlus):
            cp = True
        elif isinstance(p, CharMinus):
            cm = True
        else:
            ivs.append(Interval(p.t, p.t, True, True))
    return prim_set(rank, bot, cp, cm, ivs)


def union(a: PrimSet, b: PrimSet) -> PrimSet:
    return PrimSet(
        a.has_bot or b.has_bot,
        a.has_char_plus or b.has_char_plus,
        a.has_char_minus or b.has_char_minus,
        _canonical(a.params + b.params),
    )


def _subtract(comp: Interval, pieces: Sequence[Interval]) -> List[Interval]:
    """``comp`` minus the union of canonical ``pieces`` lying inside it."""
    out = []
    lo, lo_closed = comp.lo, comp.lo_closed
    for iv in pieces:
        if iv.hi < comp.lo or iv.lo > comp.hi:
            continue
        # gap between current cursor and the start of iv
        hi, hi_closed = iv.lo, not iv.lo_closed
        if lo < hi or (lo == hi and lo_closed and hi_closed):
            out.append(Interval(lo, hi, lo_closed, hi_closed))
        lo, lo_closed = iv.hi, not iv.hi_closed
    hi, hi_closed = comp.hi, comp.hi_closed
    if lo < hi or (lo == hi and lo_closed and hi_closed):
        out.append(Interval(lo, hi, lo_closed, hi_closed))
    return out


def complement(rank, S: PrimSet) -> PrimSet:
    s = _edge(rank)
    pieces = []
    for comp in _legal_components(s):
        pieces.extend(_subtract(comp, S.params))
    return PrimSet(not S.has_bot, not S.has_char_plus, not S.has_char_minus, _canonical(pieces))


def intersection(rank, a: PrimSet, b: PrimSet) -> PrimSet:
    return complement(rank, union(complement(rank, a), complement(rank, b)))


def is_subset(rank, a: PrimSet, b: PrimSet) -> bool:
    return union(a, b) == b


# -- topology ------------------------------------------------------------------


def closure(rank, S: PrimSet) -> PrimSet:
    """Closure in the hull-kernel topology.

    Parameter pieces gain their euclidean endpoints; an endpoint at ``+-1``
    becomes the matching character and an endpoint on the regular spectrum
    becomes ``Bot``. Any nonempty parameter set also adds ``Bot``.
    """
    s = _edge(rank)
    bot, cp, cm = S.has_bot, S.has_char_plus, S.has_char_minus
    closed = []
    for iv in S.params:
        _check_interval(iv, s)
        lo_closed, hi_closed = iv.lo_closed, iv.hi_closed
        for end in (iv.lo, iv.hi):
            if end == 1.0:
                cp = True
            elif end == -1.0:
                cm = True
            elif abs(end) == s:
                bot = True
        lo_closed = lo_closed or abs(iv.lo) not in (1.0, s)
        hi_closed = hi_closed or abs(iv.hi) not in (1.0, s)
        closed.append(Interval(iv.lo, iv.hi, lo_closed, hi_closed))
    if S.params:
        bot = True
    return PrimSet(bot, cp, cm, _canonical(closed))


def is_closed(rank, S: PrimSet) -> bool:
    return closure(rank, S) == S


def is_open(rank, S: PrimSet) -> bool:
    return is_closed(rank, complement(rank, S))


def point_closure(rank, p: PrimPoint) -> PrimSet:
    return closure(rank, from_points(rank, [p]))


def specializes(rank, p: PrimPoint, q: PrimPoint) -> bool:
    """True iff ``q`` lies in the closure of ``{p}``."""
    return point_closure(rank, p).contains(q)


def same_primitive_ideal(rank, c1: float, c2: float) -> bool:
    return quotient(rank, c1) == quotient(rank, c2)


@dataclass(frozen=True)
class SpectrumDescriptor:
    """``[-s, s]`` together with an optional isolated eigenvalue."""

    edge: float
    point: Optional[float] = None

    def __str__(self):
        body = f"[{-self.edge!r},{self.edge!r}]"
        return body if self.point is None else f"{body} u {{{self.point!r}}}"


def h1_spectrum_in_rep(rank, c: float) -> SpectrumDescriptor:
    """Spectrum of ``h_1`` in the spherical representation of parameter ``c``."""
    s = _edge(rank)
    c = float(c)
    if not math.isfinite(c) or abs(c) > 1:
        raise DomainError(f"spectral parameter must lie in [-1, 1], got {c}")
    if abs(c) <= s + SIGMA_TOL:
        return SpectrumDescriptor(s)
    return SpectrumDescriptor(s, c)


# -- continuous functions on the space ----------------------------------------


@dataclass(frozen=True)
class Piece:
    """Values of a function on one interval of complementary parameters.

    ``values`` is a constant, a callable of one float, or a pair of arrays
    ``(ts, vs)`` of samples inside the interval.
    """

    interval: Interval
    values: object

    def samples(self, n: int = 65) -> Tuple[np.ndarray, np.ndarray]:
        iv = self.interval
        if isinstance(self.values, tuple):
            ts, vs = (np.asarray(a, dtype=float) for a in self.values)
            if ts.shape != vs.shape or ts.ndim != 1:
                raise DomainError("sampled piece needs matching 1-d arrays")
            if not all(iv.contains(t) for t in ts):
                raise DomainError(f"sample outside {iv}")
            return ts, vs
        if iv.is_point():
            ts = np.array([iv.lo])
        else:
            # interior grid plus the closed endpoints
            ts = np.linspace(iv.lo, iv.hi, n + 2)[1:-1]
            ends = [iv.lo] if iv.lo_closed else []
            ends += [iv.hi] if iv.hi_closed else []
            ts = np.sort(np.concatenate([ts, ends]))
        if callable(self.values):
            vs = np.array([float(self.values(t)) for t in ts])
        else:
            vs = np.full(ts.shape, float(self.values))
        return ts, vs

    def limit_at(self, end: float, depth: int = 30) -> Optional[float]:
        """Value approached as ``t -> end`` from inside, or None if not determined."""
        iv = self.interval
        if isinstance(self.values, tuple):
            ts, vs = self.samples()
            if not ts.size:
                return None
            return float(vs[np.argmin(np.abs(ts - end))])
        if not callable(self.values):
            return float(self.values)
        inner = iv.lo if end == iv.hi else iv.hi
        t = end + (inner - end) * 2.0**-depth
        return float(self.values(t))


@dataclass(frozen=True)
class FunctionDescriptor:
    bot: float
    char_plus: float
    char_minus: float
    pieces: Tuple[Piece, ...]


@dataclass(frozen=True)
class Certificate:
    kind: str  # "specialization" or "discontinuity"
    point: object
    value: float
    expected: float

    def __str__(self):
        return f"{self.kind} at {self.point}: value {self.value!r}, expected {self.expected!r}"


def is_continuous_function(rank, f: FunctionDescriptor, tol: float = 1e-12):
    """Decide continuity of a function on the primitive ideal space.

    Two checks, in order: every ``Sph(t)`` value must equal the value at
    ``Bot`` (``Bot`` lies in the closure of each ``Sph`` point), and the
    lift to ``[-1, 1]`` must be continuous at ``t = +-1``. Together they
    force the function to be constant. Returns ``(ok, certificate)``;
    the certificate names the first violation or is None.
    """
    s = _edge(rank)
    try:
        covered = _canonical(_check_interval(p.interval, s) for p in f.pieces)
    except DomainError as exc:
        raise DomainError(f"malformed descriptor: {exc}") from exc
    if covered != _canonical(_legal_components(s)):
        raise DomainError("malformed descriptor: pieces must cover all complementary parameters")
    values = (f.bot, f.char_plus, f.char_minus)
    if not all(math.isfinite(v) for v in values):
        raise DomainError("malformed descriptor: non-finite value")

    samples = []
    for piece in f.pieces:
        ts, vs = piece.samples()
        samples.extend(zip(ts.tolist(), vs.tolist()))
    for t, v in sorted(samples):
        if not math.isfinite(v):
            raise DomainError(f"malformed descriptor: non-finite value at {t}")
        if abs(v - f.bot) > tol:
            return False, Certificate("specialization", Sph(t), v, f.bot)

    for end, char_value in ((1.0, f.char_plus), (-1.0, f.char_minus)):
        for piece in f.pieces:
            if end in (piece.interval.lo, piece.interval.hi):
                lim = piece.limit_at(end)
                if lim is not None and abs(lim - char_value) > tol:
                    return False, Certificate("discontinuity", end, char_value, lim)
    return True, None


def constant_descriptor(rank, value: float) -> FunctionDescriptor:
    s = _edge(rank)
    neg, pos = _legal_components(s)
    return FunctionDescriptor(value, value, value, (Piece(neg, value), Piece(pos, value)))


# -- text form -----------------------------------------------------------------

_ITEM = re.compile(
    r"\s*(?:(bot|char\+|char-)|point:([^,\s]+)|interval:([\(\[])\s*([^,\s]+)\s*,\s*([^\]\)\s]+)\s*([\)\]]))\s*(?:,|$)"
)


def parse_prim_set(rank, text: str) -> PrimSet:
    """Parse ``bot, char+, char-, point:0.9, interval:(0.87,0.95]`` (comma separated)."""
    pos = 0
    text = text.strip()
    flags = {"bot": False, "char+": False, "char-": False}
    ivs = []
    while pos < len(text):
        m = _ITEM.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse set text at {text[pos:]!r}")
        try:
            if m.group(1):
                flags[m.group(1)] = True
            elif m.group(2):
                t = float(m.group(2))
                p = quotient(rank, t)
                if isinstance(p, Sph):
                    ivs.append(Interval(t, t, True, True))
                else:
                    flags[str(p)] = True
            else:
                ivs.append(
                    Interval(float(m.group(4)), float(m.group(5)), m.group(3) == "[", m.group(6) == "]")
                )
        except ValueError as exc:
            raise DomainError(f"bad number in {m.group(0)!r}") from exc
        pos = m.end()
    return prim_set(rank, flags["bot"], flags["char+"], flags["char-"], ivs)


def parse_point(rank, text: str) -> PrimPoint:
    """Parse ``bot``, ``char+``, ``char-`` or ``point:t``; ``point:t`` goes through :func:`quotient`."""
    text = text.strip()
    named = {"bot": BOT, "char+": CHAR_PLUS, "char-": CHAR_MINUS}
    if text in named:
        _edge(rank)
        return named[text]
    if text.startswith("point:"):
        try:
            t = float(text[len("point:") :])
        except ValueError as exc:
            raise DomainError(f"bad number in {text!r}") from exc
        return quotient(rank, t)
    raise DomainError(f"cannot parse point {text!r}")


def format_prim_set(S: PrimSet) -> str:
    parts = [str(iv) for iv in S.params]
    if S.has_bot:
        parts.append("bot")
    if S.has_char_plus:
        parts.append("char+")
    if S.has_char_minus:
        parts.append("char-")
    return ",".join(parts)
