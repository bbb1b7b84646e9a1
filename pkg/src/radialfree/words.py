"""
Reduced words in the free group on ``l`` generators.

A word is a tuple of nonzero integers: ``k`` stands for the generator
``s_k`` and ``-k`` for its inverse. Words handed out by this module are
always freely reduced, so they can be hashed and compared directly. The
identity is the empty tuple.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import DomainError, ResourceError

Word = Tuple[int, ...]

IDENTITY: Word = ()

#: Default upper bound on the number of words a single enumeration may produce.
DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class Rank:
    """Number of free generators; ``r = 1/(2l)`` is the recurrence constant."""

    l: int

    def __post_init__(self):
        if not isinstance(self.l, int) or isinstance(self.l, bool) or self.l < 1:
            raise DomainError(f"rank must be a positive integer, got {self.l!r}")

    @property
    def r(self) -> Fraction:
        return Fraction(1, 2 * self.l)

    @property
    def letters(self) -> Tuple[int, ...]:
        """All letters in lexicographic order: -l, ..., -1, 1, ..., l."""
        return tuple(range(-self.l, 0)) + tuple(range(1, self.l + 1))


def as_rank(rank) -> Rank:
    return rank if isinstance(rank, Rank) else Rank(int(rank))


def check_word(w: Sequence[int], rank: Rank) -> None:
    for i, k in enumerate(w):
        if not isinstance(k, int) or k == 0 or abs(k) > rank.l:
            raise DomainError(f"letter {k!r} at index {i} is not a generator of rank {rank.l}")


def reduce(letters: Iterable[int], rank=None) -> Word:
    """Freely reduce a letter sequence with a single stack pass.

    >>> reduce([1, 2, -2, -1, 1])
    (1,)
    """
    letters = list(letters)
    if rank is not None:
        check_word(letters, as_rank(rank))
    stack: List[int] = []
    for k in letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return tuple(stack)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def multiply(w1: Word, w2: Word) -> Word:
    # both inputs reduced: cancellation only happens at the junction
    n1, n2 = len(w1), len(w2)
    k = 0
    while k < n1 and k < n2 and w1[n1 - 1 - k] == -w2[k]:
        k += 1
    if k == 0:
        return w1 + w2
    return w1[: n1 - k] + w2[k:]


def inverse(w: Word) -> Word:
    return tuple(-k for k in reversed(w))


def length(w: Word) -> int:
    return len(w)


def sphere_size(rank, n: int) -> int:
    """Number of reduced words of length exactly ``n``."""
    rank = as_rank(rank)
    if n < 0:
        raise DomainError(f"sphere radius must be nonnegative, got {n}")
    if n == 0:
        return 1
    return 2 * rank.l * (2 * rank.l - 1) ** (n - 1)


def ball_size(rank, radius: int) -> int:
    return sum(sphere_size(rank, n) for n in range(radius + 1))


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise ResourceError(f"{what} would contain {size} words, above the cap {cap}", size=size)


def _sphere_words(rank: Rank, n: int) -> List[Word]:
    # extending each word of the previous sphere, in order, by the letters in
    # order keeps the output lexicographic
    level: List[Word] = [IDENTITY]
    letters = rank.letters
    for _ in range(n):
        level = [w + (k,) for w in level for k in letters if not w or w[-1] != -k]
    return level


def sphere(rank, n: int, cap: int = DEFAULT_CAP) -> List[Word]:
    """All reduced words of length exactly ``n``, lexicographically sorted."""
    rank = as_rank(rank)
    _check_cap(sphere_size(rank, n), cap, f"sphere of radius {n}")
    return _sphere_words(rank, n)


def ball(rank, radius: int, cap: int = DEFAULT_CAP) -> List[Word]:
    """Words of length at most ``radius``, ordered by length then lexicographically."""
    rank = as_rank(rank)
    _check_cap(ball_size(rank, radius), cap, f"ball of radius {radius}")
    out: List[Word] = []
    for n in range(radius + 1):
        out.extend(_sphere_words(rank, n))
    return out


def format_word(w: Word) -> str:
    return ",".join(str(k) for k in w)


def parse_word(text: str, rank=None) -> Word:
    """Parse ``"1,-2,1"``; the empty string is the identity. The result is reduced."""
    text = text.strip()
    if not text:
        return IDENTITY
    try:
        letters = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"malformed word text {text!r}") from exc
    if rank is None:
        for i, k in enumerate(letters):
            if k == 0:
                raise DomainError(f"letter 0 at index {i} is not a generator")
    return reduce(letters, rank)
