"""Integer Laurent polynomials in one variable v, stored densely."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Value is sum(coeffs[d] * v**(offset + d)).

    The stored form is canonical: no leading or trailing zero coefficients,
    and the zero polynomial has offset 0 and an empty coefficient tuple.
    """

    __slots__ = ("offset", "coeffs", "_hash")

    def __init__(self, offset: int = 0, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.offset, self.coeffs = 0, ()
        else:
            self.offset, self.coeffs = offset + lo, tuple(cs[lo:hi])
        self._hash = None

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "LaurentPoly":
        return cls(power, (coeff,))

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        terms = {d: c for d, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(d, 0) for d in range(lo, hi + 1)])

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls(0, (x,))
        raise TypeError(f"cannot convert {x!r} to LaurentPoly")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> dict[int, int]:
        return {self.offset + d: c for d, c in enumerate(self.coeffs) if c}

    def min_degree(self) -> int | None:
        return self.offset if self.coeffs else None

    def max_degree(self) -> int | None:
        return self.offset + len(self.coeffs) - 1 if self.coeffs else None

    def at_one(self) -> int:
        return sum(self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v**k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.offset + k, self.coeffs)

    def bar(self) -> "LaurentPoly":
        """The substitution v -> 1/v."""
        if not self.coeffs:
            return self
        return LaurentPoly(-self.max_degree(), reversed(self.coeffs))

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def has_nonnegative_coeffs(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def in_v_nat_v(self) -> bool:
        """True when the polynomial lies in v*N[v] (zero included)."""
        if not self.coeffs:
            return True
        return self.offset >= 1 and self.has_nonnegative_coeffs()

    def __add__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.offset, other.offset)
        hi = max(self.max_degree(), other.max_degree())
        out = [0] * (hi - lo + 1)
        for d, c in enumerate(self.coeffs):
            out[self.offset - lo + d] += c
        for d, c in enumerate(other.coeffs):
            out[other.offset - lo + d] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.offset, [-c for c in self.coeffs])

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, x in enumerate(self.coeffs):
            if x:
                for b, y in enumerate(other.coeffs):
                    out[a + b] += x * y
        return LaurentPoly(self.offset + other.offset, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly(0, (1,))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.offset == other.offset and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.offset, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.offset}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return self.render()

    def render(self, compact: bool = True) -> str:
        """Human form such as '2v^-1 + 1 + v2'.

        With compact=True powers are written as 'v2' (the layout used in
        decomposition tables); otherwise as 'v^2'.
        """
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in sorted(self.terms().items()):
            if d == 0:
                mono = ""
            elif d == 1:
                mono = "v"
            elif compact and d > 0:
                mono = f"v{d}"
            else:
                mono = f"v^{d}"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"offset": self.offset, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls(int(data["offset"]), [int(c) for c in data["coeffs"]])


ZERO = LaurentPoly()
ONE = LaurentPoly(0, (1,))
V = LaurentPoly(1, (1,))


def quantum_integer(n: int) -> LaurentPoly:
    """[n] = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    if n <= 0:
        return ZERO
    return LaurentPoly(1 - n, [1 if d % 2 == 0 else 0 for d in range(2 * n - 1)])


def quantum_factorial(n: int) -> LaurentPoly:
    out = ONE
    for m in range(2, n + 1):
        out = out * quantum_integer(m)
    return out
