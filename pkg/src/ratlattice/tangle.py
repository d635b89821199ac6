"""Conway words, continued fractions and pillowcase forms of rational tangles.

A word ``[a1, ..., an]`` is built from the zero tangle by ``a1`` horizontal
twists, then ``a2`` vertical twists, and so on, alternating.  Its value is

    a_n + 1/(a_{n-1} + 1/(... + 1/a_1))

The pillowcase form ``(t, s)`` counts gaps between the arcs across the
top/bottom (``t``) and across each side (``s``).  Horizontal twists send
``(t, s) -> (t + s, s)`` and vertical twists send ``(t, s) -> (t, t + s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

INT64_MAX = 2**63 - 1


class DomainError(ValueError):
    """Input outside the supported domain of an operation."""


def _check_width(*values: int) -> None:
    for v in values:
        if abs(v) > INT64_MAX:
            raise OverflowError(f"value {v} exceeds the 64-bit range")


@dataclass(frozen=True)
class TangleFraction:
    """Coprime positive pair ``p/q`` naming a rational tangle or link."""

    p: int
    q: int

    def __post_init__(self):
        _check_width(self.p, self.q)
        if self.p < 1 or self.q < 1:
            raise DomainError(f"p and q must be positive, got {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise DomainError("p and q must be coprime")

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ConwayWord:
    entries: tuple[int, ...]

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(int(a) for a in entries))
        if not self.entries:
            raise DomainError("a Conway word needs at least one entry")
        if any(a < 1 for a in self.entries):
            raise DomainError(f"Conway entries must be positive: {list(self.entries)}")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "[" + ",".join(map(str, self.entries)) + "]"

    @property
    def ends_horizontal(self) -> bool:
        # a1 is horizontal, so odd length means the last region is horizontal
        return len(self.entries) % 2 == 1


@dataclass(frozen=True)
class PillowForm:
    t: int
    s: int

    def __post_init__(self):
        _check_width(self.t, self.s)
        if self.t < 0 or self.s < 0 or (self.t == 0 and self.s == 0):
            raise DomainError(f"invalid pillowcase form ({self.t},{self.s})")
        if gcd(self.t, self.s) != 1:
            raise DomainError(f"pillowcase form ({self.t},{self.s}) is not coprime")

    def as_pair(self) -> tuple[int, int]:
        return (self.t, self.s)

    def reflected(self) -> PillowForm:
        return PillowForm(self.s, self.t)


ZERO_TANGLE = PillowForm(0, 1)


def evaluate_conway(word: ConwayWord) -> TangleFraction:
    """Exact value of the nested continued fraction, in lowest terms."""
    num, den = word.entries[0], 1
    for a in word.entries[1:]:
        # a + 1/(num/den) = (a*num + den)/num
        num, den = a * num + den, num
        _check_width(num, den)
    g = gcd(num, den)
    return TangleFraction(num // g, den // g)


def continued_fraction(p: int, q: int) -> list[int]:
    """Greedy quotients ``[c0; c1, ..., ck]`` of ``p/q``."""
    out = []
    while q:
        c, r = divmod(p, q)
        out.append(c)
        p, q = q, r
    return out


def normalize_word(word: ConwayWord) -> ConwayWord:
    """Equal-valued word of odd length, so the last twist region is horizontal."""
    a = list(word.entries)
    if len(a) % 2 == 1:
        return word
    if a[0] == 1:
        # 1 horizontal twist then a2 vertical ones is the integer tangle a2+1
        return ConwayWord([a[1] + 1] + a[2:])
    return ConwayWord([1, a[0] - 1] + a[1:])


def expand_fraction(frac: TangleFraction) -> ConwayWord:
    """All-positive word of odd length whose value is ``frac``.

    Requires ``p > q`` so the closing region is horizontal.
    """
    if frac.p <= frac.q:
        raise DomainError(f"expand_fraction needs p > q, got {frac}")
    quotients = continued_fraction(frac.p, frac.q)
    return normalize_word(ConwayWord(reversed(quotients)))


def twist_vertical(form: PillowForm) -> PillowForm:
    out = PillowForm(form.t, form.t + form.s)
    assert gcd(out.t, out.s) == 1
    return out


def twist_horizontal(form: PillowForm) -> PillowForm:
    out = PillowForm(form.t + form.s, form.s)
    assert gcd(out.t, out.s) == 1
    return out


def pillow_trace(word: ConwayWord) -> list[PillowForm]:
    """Every intermediate form, starting from the zero tangle ``(0,1)``."""
    forms = [ZERO_TANGLE]
    for k, a in enumerate(word.entries):
        step = twist_horizontal if k % 2 == 0 else twist_vertical
        for _ in range(a):
            forms.append(step(forms[-1]))
    return forms


def pillow_of_word(word: ConwayWord) -> PillowForm:
    """Pillowcase form of the tangle named by ``word``.

    When the word finishes with a vertical region the form is reflected so
    that it reads as the tangle's fraction ``(p, q)``.
    """
    last = pillow_trace(word)[-1]
    return last if word.ends_horizontal else last.reflected()


def word_from_pillow(form: PillowForm) -> ConwayWord:
    """Undo twists by subtraction until the zero tangle is reached.

    Independent of :func:`expand_fraction`; the result has odd length.
    """
    t, s = form.t, form.s
    if t <= s:
        raise DomainError(f"expected t > s, got ({t},{s})")
    counts = []
    horizontal = True
    while (t, s) != (0, 1):
        n = 0
        if horizontal:
            while t >= s and (t, s) != (0, 1):
                t -= s
                n += 1
        else:
            while s > t > 0:
                s -= t
                n += 1
        if n == 0:
            raise DomainError(f"form ({form.t},{form.s}) does not reduce to (0,1)")
        counts.append(n)
        horizontal = not horizontal
    return ConwayWord(reversed(counts))
