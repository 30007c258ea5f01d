"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are kept as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise, so integer arithmetic stays on the
fast path while normalization can still introduce factorial denominators.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]
Coeff = int | Fraction


def _canon(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    return _canon(Fraction(c))


def grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero exact coefficients.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Coeff] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent {e}: Laurent terms are not representable")
            c = _canon(c)
            if c:
                clean[e] = _canon(clean.get(e, 0) + c)
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Coeff]) -> "MultiPoly":
        # trusted constructor: terms already canonical and zero-free
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "MultiPoly":
        """The variable with 0-based index ``i``."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): c})

    # queries

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Coeff]]:
        return iter(sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def coefficient(self, e: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(e), 0)

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.terms))

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def used_variables(self) -> list[int]:
        return [i for i, m in enumerate(self.max_exponents()) if m > 0]

    # arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _canon(v)
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Exponent, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: _canon(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        c = _canon(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: _canon(v * c) for e, v in self.terms.items()})

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(e, c) for e, c in self.terms.items()})

    # variable manipulation

    def permute_variables(self, perm: Sequence[int]) -> "MultiPoly":
        """Send variable ``i`` to variable ``perm[i]`` (0-based)."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation of the variables")
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for i, a in enumerate(e):
                new[perm[i]] = a
            out[tuple(new)] = c
        return MultiPoly._raw(self.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "MultiPoly":
        """Re-express in ``nvars`` variables; variable ``i`` goes to ``positions[i]``."""
        positions = list(range(self.nvars)) if positions is None else list(positions)
        out = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for i, a in enumerate(e):
                if a:
                    new[positions[i]] += a
            out[tuple(new)] = c
        return MultiPoly(nvars, out)

    def restrict(self, keep: Sequence[int]) -> "MultiPoly":
        """Set every variable outside ``keep`` to zero and drop it."""
        keep = list(keep)
        drop = [i for i in range(self.nvars) if i not in keep]
        out = {}
        for e, c in self.terms.items():
            if all(e[i] == 0 for i in drop):
                out[tuple(e[i] for i in keep)] = c
        return MultiPoly._raw(len(keep), out)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Evaluate with variable ``i`` replaced by ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        total = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def derivative(self, alpha: Sequence[int]) -> "MultiPoly":
        """Iterated partial derivative d^alpha."""
        out = {}
        for e, c in self.terms.items():
            if all(a <= x for a, x in zip(alpha, e)):
                f = 1
                for a, x in zip(alpha, e):
                    for k in range(a):
                        f *= x - k
                out[tuple(x - a for x, a in zip(e, alpha))] = c * f
        return MultiPoly._raw(self.nvars, {e: _canon(c) for e, c in out.items() if c})

    def evaluate(self, point: Sequence) -> Coeff:
        total = 0
        for e, c in self.terms.items():
            total += c * prod(x**k for x, k in zip(point, e))
        return _canon(total)

    # display

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = default_names(self.nvars) if names is None else names
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self:
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.to_string()!r})"


def default_names(nvars: int, prefix: str = "t") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(nvars)]


def double_names(p: int) -> list[str]:
    return default_names(p, "t") + default_names(p, "s")


def poly_from_string(text: str, names: Sequence[str]) -> MultiPoly:
    """Parse a polynomial written with ``+``, ``-``, ``*``, ``^`` and integer/rational constants.

    Only meant for literals in tests and CLI input; parsing is done by
    sympy, whose expansion is then read back into exact coefficients.
    """
    import sympy

    symbols = sympy.symbols(list(names))
    local = dict(zip(names, symbols))
    expr = sympy.sympify(text.replace("^", "**"), locals=local)
    p = sympy.Poly(sympy.expand(expr), *symbols)
    return MultiPoly(len(names), {e: Fraction(int(c.p), int(c.q)) for e, c in p.terms()})


# the named transforms


def arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def multi_factorial(e: Iterable[int]) -> int:
    return prod(factorial(k) for k in e)


def normalize(h: MultiPoly) -> MultiPoly:
    """Divide each coefficient by the factorial of its exponent vector."""
    return MultiPoly._raw(
        h.nvars, {e: _canon(Fraction(c) / multi_factorial(e)) for e, c in h.terms.items()}
    )


def denormalize(h: MultiPoly) -> MultiPoly:
    return MultiPoly._raw(h.nvars, {e: _canon(c * multi_factorial(e)) for e, c in h.terms.items()})


def reverse(h: MultiPoly, m: Sequence[int]) -> MultiPoly:
    """Return ``t^m * h(1/t_1, ..., 1/t_p)``."""
    m = tuple(m)
    if len(m) != h.nvars:
        raise ValueError("reversal bound has the wrong length")
    out = {}
    for e, c in h.terms.items():
        new = tuple(a - b for a, b in zip(m, e))
        if any(x < 0 for x in new):
            raise ValueError(f"reversal bound {m} is smaller than exponent {e}")
        out[new] = c
    return MultiPoly._raw(h.nvars, out)


def truncate(h: MultiPoly, w: Sequence[int]) -> MultiPoly:
    """Keep the terms whose exponent is componentwise at most ``w``."""
    w = tuple(w)
    return MultiPoly._raw(
        h.nvars, {e: c for e, c in h.terms.items() if all(a <= b for a, b in zip(e, w))}
    )


def flip_signs(h: MultiPoly, variables: Iterable[int]) -> MultiPoly:
    """Substitute ``t_i -> -t_i`` for each 0-based index in ``variables``."""
    vs = set(variables)
    return MultiPoly._raw(
        h.nvars,
        {e: (-c if sum(e[i] for i in vs) % 2 else c) for e, c in h.terms.items()},
    )


def subst_one_minus(h: MultiPoly) -> MultiPoly:
    """Substitute ``t_i -> 1 - t_i`` for every variable and expand."""
    out: dict[Exponent, Coeff] = {}
    for e, c in h.terms.items():
        # expand prod (1 - t_i)^{e_i} by the binomial theorem
        partial: dict[Exponent, int] = {(): 1}
        for k in e:
            nxt = {}
            for pe, pc in partial.items():
                for j in range(k + 1):
                    nxt[pe + (j,)] = pc * comb(k, j) * (-1) ** j
            partial = nxt
        for pe, pc in partial.items():
            out[pe] = out.get(pe, 0) + c * pc
    return MultiPoly._raw(h.nvars, {e: _canon(c) for e, c in out.items() if c})


# JSON wire format


def _coeff_to_str(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _coeff_from_str(s) -> Coeff:
    if isinstance(s, int):
        return s
    return _canon(Fraction(str(s)))


def to_json_obj(h: MultiPoly, names: Sequence[str] | None = None) -> dict:
    names = default_names(h.nvars) if names is None else list(names)
    if len(names) != h.nvars:
        raise ValueError("one name per variable required")
    return {
        "vars": list(names),
        "terms": [{"e": list(e), "c": _coeff_to_str(c)} for e, c in h],
    }


def from_json_obj(obj: Mapping) -> tuple[MultiPoly, list[str]]:
    try:
        names = list(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            e = tuple(int(x) for x in t["e"])
            c = _coeff_from_str(t["c"])
            terms[e] = terms.get(e, 0) + c
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed polynomial JSON: {exc}") from exc
    return MultiPoly(len(names), terms), names


def dumps(h: MultiPoly, names: Sequence[str] | None = None) -> str:
    """Canonical single-line serialization (used for digests and golden files)."""
    return json.dumps(to_json_obj(h, names), separators=(",", ":"))


def loads(text: str) -> tuple[MultiPoly, list[str]]:
    return from_json_obj(json.loads(text))
