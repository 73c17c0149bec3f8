"""Two-cell vertical gridded permutations ("dominoes") and their
correspondence with primitives.

A domino with p points assigns each column a cell tag (bottom or top),
a bottom word avoiding 132 and a top word avoiding 213; every bottom value
lies below every top value in the underlying permutation, which must avoid
1324. The tag list plus the two reduced cell words is the canonical
encoding; the underlying permutation is always derived, never stored.

A primitive of size n maps to a domino with n - 2 points through its
inverse: the first letter i of the inverse becomes a separator, middle
letters below i form the bottom cell and letters above i + 1 the top
cell. An independent exhaustive generator (enumerate_dominoes) provides
the oracle side for verifying the correspondence.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .permutations import (
    DomainError,
    Permutation,
    _word_contains_132,
    _word_contains_1324,
    _word_contains_213,
    parse_permutation,
    reduce_word,
    inverse,
)
from .products import is_primitive


class GriddedDomino:
    """Canonical form: per-column tags over {'b', 't'} plus the reduced
    bottom and top cell words."""

    __slots__ = ("cols", "bottom", "top")

    def __init__(self, cols: Sequence[str], bottom: Permutation, top: Permutation,
                 validate: bool = True):
        self.cols = tuple(cols)
        self.bottom = bottom
        self.top = top
        if validate:
            self._validate()

    def _validate(self) -> None:
        if any(c not in ("b", "t") for c in self.cols):
            raise DomainError(f"bad column tags {self.cols}")
        b = self.cols.count("b")
        if len(self.bottom) != b or len(self.top) != len(self.cols) - b:
            raise DomainError("cell word lengths do not match column tags")
        if _word_contains_132(self.bottom.values):
            raise DomainError(f"bottom word {self.bottom!r} contains 132")
        if _word_contains_213(self.top.values):
            raise DomainError(f"top word {self.top!r} contains 213")
        if _word_contains_1324(self._underlying_values()):
            raise DomainError("underlying permutation contains 1324")

    @property
    def points(self) -> int:
        return len(self.cols)

    def _underlying_values(self) -> tuple[int, ...]:
        b = len(self.bottom)
        bit = iter(self.bottom.values)
        tit = iter(self.top.values)
        return tuple(next(bit) if c == "b" else next(tit) + b for c in self.cols)

    def underlying(self) -> Permutation:
        """Bottom values 1..b below top values b+1..p, interleaved by column."""
        return Permutation(self._underlying_values(), validate=False)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GriddedDomino) and self.cols == other.cols
                and self.bottom == other.bottom and self.top == other.top)

    def __hash__(self) -> int:
        return hash((self.cols, self.bottom.values, self.top.values))

    def __repr__(self) -> str:
        return f"GriddedDomino({self.to_text()!r})"

    def to_text(self) -> str:
        return (f"B:{self.bottom.to_text()}|T:{self.top.to_text()}"
                f"|cols:{''.join(self.cols)}")


def parse_domino(text: str) -> GriddedDomino:
    """Parse the text form "B:<bottom>|T:<top>|cols:<tags>"."""
    parts = text.strip().split("|")
    if len(parts) != 3 or not (parts[0].startswith("B:") and parts[1].startswith("T:")
                               and parts[2].startswith("cols:")):
        raise ValueError(f"cannot parse domino {text!r}")
    return GriddedDomino(parts[2][5:], parse_permutation(parts[0][2:]),
                         parse_permutation(parts[1][2:]))


def to_domino(p: Permutation) -> GriddedDomino:
    """Domino with n - 2 points for a primitive of size n.

    With q the inverse permutation, i = q(1). The middle letters q(2..n-1)
    split by value: below i to the bottom cell, above i + 1 to the top.
    """
    if not is_primitive(p):
        raise DomainError(f"{p!r} is not primitive")
    q = inverse(p).values
    i = q[0]
    cols = []
    bottom = []
    top = []
    for v in q[1:-1]:
        if v < i:
            cols.append("b")
            bottom.append(v)
        else:
            cols.append("t")
            top.append(v)
    return GriddedDomino(cols, reduce_word(bottom), reduce_word(top),
                         validate=False)


def from_domino(d: GriddedDomino) -> Permutation:
    """Exact inverse of to_domino; the result is primitive of size p + 2."""
    b = len(d.bottom)
    i = b + 1
    bit = iter(d.bottom.values)
    tit = iter(d.top.values)
    q = [i]
    q.extend(next(bit) if c == "b" else next(tit) + b + 2 for c in d.cols)
    q.append(i + 1)
    result = inverse(Permutation(q))
    if not is_primitive(result):
        raise DomainError(f"domino {d.to_text()} does not map to a primitive")
    return result


def enumerate_dominoes(p: int) -> Iterator[GriddedDomino]:
    """All valid dominoes with p points, each once, generated directly from
    the definition (tag vectors x avoiding cell words, filtered on the
    underlying permutation) -- independent of to_domino/from_domino.
    """
    from .enumeration import generate_avoiders

    if p < 0:
        raise ValueError("p must be >= 0")
    pat132 = Permutation((1, 3, 2))
    pat213 = Permutation((2, 1, 3))
    bottoms = {size: list(generate_avoiders(size, pat132)) for size in range(p + 1)}
    tops = {size: list(generate_avoiders(size, pat213)) for size in range(p + 1)}
    for mask in range(1 << p):
        cols = tuple("b" if mask & (1 << c) else "t" for c in range(p))
        b = cols.count("b")
        for bw in bottoms[b]:
            for tw in tops[p - b]:
                d = GriddedDomino(cols, bw, tw, validate=False)
                if not _word_contains_1324(d._underlying_values()):
                    yield d
