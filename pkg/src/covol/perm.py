"""Permutations in one-line notation and the Bruhat order."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

DEFAULT_MAX_N = 6


def max_n() -> int:
    """Upper bound on the symmetric-group size for enumerations (``COVOL_MAX_N``)."""
    return int(os.environ.get("COVOL_MAX_N", DEFAULT_MAX_N))


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "Permutation":
        """Accept ``"3412"``, ``"3,4,1,2"`` or an integer sequence."""
        if not isinstance(text, str):
            return cls(tuple(text))
        text = text.strip().strip("[]")
        if "," in text or " " in text:
            return cls(tuple(int(x) for x in text.replace(",", " ").split()))
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, p: int) -> "Permutation":
        return cls(tuple(range(1, p + 1)))

    @classmethod
    def transposition(cls, p: int, i: int) -> "Permutation":
        """The simple transposition swapping ``i`` and ``i+1`` (1-based)."""
        w = list(range(1, p + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(tuple(w))

    @property
    def size(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        if self.size <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    def to_json(self):
        return str(self) if self.size <= 9 else list(self.word)

    def length(self) -> int:
        return length(self)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.word, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def prefix_set(self, k: int) -> tuple[int, ...]:
        """The sorted set ``{w(1), ..., w(k)}``."""
        return tuple(sorted(self.word[:k]))

    def ascents(self) -> list[int]:
        return [i for i in range(1, self.size) if self.word[i - 1] < self.word[i]]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)


def length(w: Permutation) -> int:
    word = w.word
    return sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])


def _check_same_size(a: Permutation, b: Permutation) -> None:
    if a.size != b.size:
        raise ValueError(f"size mismatch: S_{a.size} vs S_{b.size}")


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """``u <= w`` iff every sorted prefix set of ``w`` dominates that of ``u``."""
    _check_same_size(u, w)
    for k in range(1, u.size):
        if any(a > b for a, b in zip(u.prefix_set(k), w.prefix_set(k))):
            return False
    return True


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a o b)(i) = a(b(i))``."""
    _check_same_size(a, b)
    return Permutation(tuple(a.word[x - 1] for x in b.word))


def w0(p: int) -> Permutation:
    return Permutation(tuple(range(p, 0, -1)))


def all_permutations(p: int) -> list[Permutation]:
    return [Permutation(w) for w in permutations(range(1, p + 1))]


def enumerate_bruhat_pairs(p: int, bound: int | None = None) -> Iterator[tuple[Permutation, Permutation]]:
    """Yield every comparable pair ``(u, w)`` with ``u <= w``, sorted lexicographically."""
    bound = max_n() if bound is None else bound
    if p > bound:
        raise BoundExceeded(f"S_{p} exceeds the configured bound {bound} (set COVOL_MAX_N)")
    perms = all_permutations(p)
    for u in perms:
        lu = length(u)
        for w in perms:
            if length(w) >= lu and bruhat_leq(u, w):
                yield u, w
