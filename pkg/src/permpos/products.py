"""The splice product on 1324-avoiders, unique primitive factorization, the
insert-a-1 expansion, and the marked-tuple codec.

A *primitive* is an avoider whose 1 sits immediately left of its maximum.
Writing a primitive as pi1 . 1 m . tau1 and a second avoider (with 1 left
of its maximum L) as pi2 . 1 . theta2 . L . tau2, the product splices them
as

    pi2^ pi1 1 m theta2^ n tau2^ tau1        (n = L + m - 1)

where hatted blocks have every entry raised by m - 1. Every avoider with 1
left of its maximum factors uniquely into primitives under this product;
the number of factors equals the position distance from 1 to the maximum.
Recomposition is right-nested -- sigma_1 . (sigma_2 . (... . sigma_k)) --
so the innermost factor carries the global maximum.

The marked-tuple codec encodes the class-(2, k) avoiders that do not end
in 1: delete the 1 (marking its right neighbour), factor the reduction
into k primitives, and re-insert the 1 at the transported mark. Marks are
tracked as position indices, never by value, since values shift under the
product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .enumeration import PositionalClass, classify
from .permutations import (
    DomainError,
    Permutation,
    _word_contains_1324,
)


def is_primitive(p: Permutation) -> bool:
    """True iff n >= 2, p avoids 1324, and 1 sits immediately left of n."""
    n = len(p)
    if n < 2:
        return False
    vals = p.values
    if vals.index(n) - vals.index(1) != 1:
        return False
    return not _word_contains_1324(vals)


def is_marked_component(p: Permutation) -> bool:
    """True iff p qualifies as the marked component of a tuple: its 2 sits
    immediately left of its maximum, its 1 is right of the maximum but not
    last, and it avoids 1324. The smallest such size is 4 (e.g. 2413)."""
    n = len(p)
    if n < 4 or p.values[-1] == 1:
        return False
    if _word_contains_1324(p.values):
        return False
    return classify(p, validate=False) == PositionalClass(2, 1)


# -- raw helpers on value tuples ---------------------------------------------
#
# The verification sweeps run these over hundreds of thousands of members,
# so they work on bare tuples and assume class membership was established
# by the caller (the public wrappers validate).


def _split_primitive(t: Sequence[int]) -> tuple[tuple[int, ...], int, tuple[int, ...]]:
    i = t.index(1)
    if t.index(len(t)) != i + 1:
        raise DomainError(f"{t} is not primitive: 1 not adjacent-left of the maximum")
    return tuple(t[:i]), len(t), tuple(t[i + 2:])


def _odot_raw(t1: Sequence[int], t2: Sequence[int]) -> tuple[int, ...]:
    pi1, m, tau1 = _split_primitive(t1)
    j = t2.index(1)
    jm = t2.index(len(t2))
    d = m - 1
    return (tuple(v + d for v in t2[:j]) + pi1 + (1, m)
            + tuple(v + d for v in t2[j + 1:jm]) + (len(t2) + d,)
            + tuple(v + d for v in t2[jm + 1:]) + tau1)


def _odot_mark(t1: Sequence[int], t2: Sequence[int], mark: int,
               in_left: bool) -> int:
    """New 1-based position of a marked entry of t1 (in_left) or t2 after
    the product. The mark may not sit on either factor's 1, which the
    product replaces."""
    pos1_left = t1.index(1) + 1
    total = len(t1) + len(t2) - 1
    if in_left:
        if mark == pos1_left:
            raise DomainError("mark may not sit on the 1 of a factor")
        if mark <= pos1_left + 1:
            return t2.index(1) + mark
        return total - (len(t1) - mark)
    pos1_right = t2.index(1) + 1
    if mark == pos1_right:
        raise DomainError("mark may not sit on the 1 of a factor")
    if mark < pos1_right:
        return mark
    return mark + pos1_left


def _factorize_raw(t: Sequence[int]) -> list[tuple[int, ...]]:
    """Primitive factors of an avoider with 1 left of its maximum, by
    repeatedly splitting off the values up to min(theta). Raises DomainError
    on structural violations (non-increasing theta, interleaved blocks),
    which indicate the input is outside the class."""
    factors: list[tuple[int, ...]] = []
    cur = tuple(t)
    while True:
        size = len(cur)
        i = cur.index(1)
        j = cur.index(size)
        if j <= i:
            raise DomainError(f"{t}: maximum not right of 1")
        if j == i + 1:
            factors.append(cur)
            return factors
        theta = cur[i + 1:j]
        if any(a >= b for a, b in zip(theta, theta[1:])):
            raise DomainError(f"{t}: segment between 1 and the maximum not increasing")
        m = theta[0]
        # prefix must be big-values block then small-values block
        seen_small = False
        for v in cur[:i]:
            if v < m:
                seen_small = True
            elif seen_small:
                raise DomainError(f"{t}: prefix blocks interleave around {m}")
        seen_small = False
        for v in cur[j + 1:]:
            if v < m:
                seen_small = True
            elif seen_small:
                raise DomainError(f"{t}: suffix blocks interleave around {m}")
        factors.append(tuple(v for v in cur if v <= m))
        cur = tuple(v - m + 1 for v in cur if v >= m)


def _recompose_raw(factors: Sequence[Sequence[int]]) -> tuple[int, ...]:
    acc = tuple(factors[-1])
    for f in reversed(factors[:-1]):
        acc = _odot_raw(tuple(f), acc)
    return acc


def _encode_raw(sig: Sequence[int]) -> tuple[list[tuple[int, ...]], int]:
    """Marked k-tuple (components, 0-based marked index) for a class-(2, k)
    avoider not ending in 1."""
    mark = sig.index(1) + 1  # right neighbour slides into this slot
    cur = tuple(v - 1 for v in sig if v != 1)
    comps: list[tuple[int, ...]] = []
    marked_idx = -1
    in_mark = -1
    while True:
        size = len(cur)
        i = cur.index(1)
        j = cur.index(size)
        if j == i + 1:
            comps.append(cur)
            if marked_idx < 0:
                marked_idx = len(comps) - 1
                in_mark = mark
            break
        theta = cur[i + 1:j]
        if any(a >= b for a, b in zip(theta, theta[1:])):
            raise DomainError(f"{tuple(sig)}: segment between 1 and the maximum not increasing")
        m = theta[0]
        if marked_idx < 0:
            if cur[mark - 1] < m:
                marked_idx = len(comps)
                in_mark = sum(1 for v in cur[:mark] if v <= m)
            else:
                mark = sum(1 for v in cur[:mark] if v >= m)
        comps.append(tuple(v for v in cur if v <= m))
        cur = tuple(v - m + 1 for v in cur if v >= m)
    f = comps[marked_idx]
    comps[marked_idx] = (tuple(v + 1 for v in f[:in_mark - 1]) + (1,)
                         + tuple(v + 1 for v in f[in_mark - 1:]))
    return comps, marked_idx


def _decode_raw(comps: Sequence[Sequence[int]], marked_idx: int) -> tuple[int, ...]:
    """Inverse of _encode_raw: strip the 1 from the marked component, fold
    right-nested while transporting the mark, then re-insert the 1."""
    marked = tuple(comps[marked_idx])
    i1 = marked.index(1)
    mark = i1 + 1
    stripped = tuple(v - 1 for v in marked if v != 1)
    k = len(comps)
    if marked_idx == k - 1:
        acc, acc_mark = stripped, mark
    else:
        acc, acc_mark = tuple(comps[k - 1]), -1
    for j in range(k - 2, -1, -1):
        if j == marked_idx:
            left, new_mark = stripped, _odot_mark(stripped, acc, mark, True)
        else:
            left = tuple(comps[j])
            new_mark = _odot_mark(left, acc, acc_mark, False) if acc_mark > 0 else -1
        acc = _odot_raw(left, acc)
        acc_mark = new_mark
    return (tuple(v + 1 for v in acc[:acc_mark - 1]) + (1,)
            + tuple(v + 1 for v in acc[acc_mark - 1:]))


# -- public surface -----------------------------------------------------------


def _require_one_left_of_max(p: Permutation, who: str) -> PositionalClass:
    cls = classify(p)  # validates 1324-avoidance
    if cls is None or cls.a != 1:
        raise DomainError(f"{who}: {p!r} does not have 1 left of its maximum")
    return cls


def odot(p1: Permutation, p2: Permutation, validate: bool = True) -> Permutation:
    """Splice product of a primitive p1 with an avoider p2 whose 1 is left
    of its maximum. If p2 is in class (1, k), the result is in (1, k+1)."""
    if validate:
        if not is_primitive(p1):
            raise DomainError(f"left factor {p1!r} is not primitive")
        _require_one_left_of_max(p2, "right factor")
    return Permutation(_odot_raw(p1.values, p2.values), validate=False)


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """Ordered primitive factors; right-nested recomposition returns the
    source permutation."""

    factors: tuple[Permutation, ...]

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    def recompose(self) -> Permutation:
        return Permutation(_recompose_raw([f.values for f in self.factors]),
                           validate=False)


def factorize(p: Permutation) -> PrimitiveDecomposition:
    """Unique decomposition of an avoider with 1 left of its maximum into
    k = pos(max) - pos(1) primitives."""
    cls = _require_one_left_of_max(p, "factorize")
    factors = _factorize_raw(p.values)
    if len(factors) != cls.k:
        raise DomainError(
            f"factorize: {p!r} produced {len(factors)} factors, expected {cls.k}")
    return PrimitiveDecomposition(tuple(
        Permutation(f, validate=False) for f in factors))


def expand_with_one(p: Permutation, validate: bool = True) -> list[Permutation]:
    """All ways of turning a class-(1, k) avoider of size n-1 into a
    class-(2, k) avoider of size n: raise every value by one, then insert
    1 into each gap strictly right of the maximum."""
    if validate:
        _require_one_left_of_max(p, "expand_with_one")
    up = tuple(v + 1 for v in p.values)
    posmax = p.values.index(len(p)) + 1
    return [Permutation(up[:t - 1] + (1,) + up[t - 1:], validate=False)
            for t in range(posmax + 1, len(p) + 2)]


def contract_one(p: Permutation, validate: bool = True) -> Permutation:
    """Remove the 1 and reduce; left inverse of every expand_with_one
    branch. Requires a class-(2, k) avoider."""
    if validate:
        cls = classify(p)
        if cls is None or cls.a != 2:
            raise DomainError(f"contract_one: {p!r} is not in a class with a = 2")
    return Permutation((v - 1 for v in p.values if v != 1), validate=False)


@dataclass(frozen=True)
class MarkedTuple:
    """k components, exactly one of which (1-based marked_index) is a
    marked component (see is_marked_component); the others are primitive.
    Decodes to an avoider of size sum(sizes) - (k - 1) in class (2, k)."""

    components: tuple[Permutation, ...]
    marked_index: int

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def target_size(self) -> int:
        return sum(len(c) for c in self.components) - (self.k - 1)

    def validate(self) -> None:
        if not 1 <= self.marked_index <= self.k:
            raise DomainError(f"marked index {self.marked_index} out of 1..{self.k}")
        for idx, comp in enumerate(self.components, start=1):
            if idx == self.marked_index:
                if not is_marked_component(comp):
                    raise DomainError(f"component {idx} ({comp!r}) is not a valid "
                                      "marked component")
            elif not is_primitive(comp):
                raise DomainError(f"component {idx} ({comp!r}) is not primitive")

    def to_text(self) -> str:
        parts = [("^" if i == self.marked_index else "") + c.to_text()
                 for i, c in enumerate(self.components, start=1)]
        return "(" + ", ".join(parts) + ")"


def parse_marked_tuple(text: str) -> MarkedTuple:
    """Parse "(12, ^2413, 132)" -- the "^" prefix marks one component.

    Components are separated by comma-space; bare commas inside a component
    belong to its own comma-form permutation text.
    """
    from .permutations import parse_permutation

    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"cannot parse marked tuple {text!r}")
    comps = []
    marked = 0
    for i, tok in enumerate(s[1:-1].split(", "), start=1):
        tok = tok.strip()
        if tok.startswith("^"):
            if marked:
                raise ValueError("more than one marked component")
            marked = i
            tok = tok[1:]
        comps.append(parse_permutation(tok))
    if not marked:
        raise ValueError("no marked component")
    return MarkedTuple(tuple(comps), marked)


def decode_tuple(t: MarkedTuple, validate: bool = True) -> Permutation:
    """The class-(2, k) avoider (not ending in 1) encoded by a marked
    k-tuple."""
    if validate:
        t.validate()
    result = Permutation(
        _decode_raw([c.values for c in t.components], t.marked_index - 1),
        validate=False)
    if validate:
        cls = classify(result)
        if cls != PositionalClass(2, t.k) or result.values[-1] == 1:
            raise DomainError(f"decoded {result!r} is not a class-(2, {t.k}) "
                              "avoider off the ends-with-1 case")
    return result


def encode_perm(p: Permutation, validate: bool = True) -> MarkedTuple:
    """Marked tuple for a class-(2, k) avoider not ending in 1; inverse of
    decode_tuple."""
    if validate:
        cls = classify(p)
        if cls is None or cls.a != 2:
            raise DomainError(f"encode_perm: {p!r} is not in a class with a = 2")
        if p.values[-1] == 1:
            raise DomainError(f"encode_perm: {p!r} ends with 1")
    comps, marked_idx = _encode_raw(p.values)
    t = MarkedTuple(tuple(Permutation(c, validate=False) for c in comps),
                    marked_idx + 1)
    if validate:
        t.validate()
    return t
