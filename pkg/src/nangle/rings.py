"""Exact arithmetic in local rings R with maximal ideal m = (p), m^2 = 0.

Two families are supported:

* ``Z/q^2`` for a prime q (uniformizer p = q), and
* ``GF(q)[x]/(x^2)`` for a prime power q = p^e (uniformizer p = x).

Every element of such a ring is zero, a unit, or u*p for a unit u.  Elements
are stored as canonical integer codes ``code = a + q*b`` standing for
``a + b*p``, where a and b are residue-field codes in ``0..q-1``.  For the
first family the code coincides with the integer value mod q^2.  Equality of
elements is equality of codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

# Lex-smallest monic irreducible polynomial of degree e over GF(p), for every
# prime power p^e <= 512 with e >= 2.  Coefficients low degree first, monic.
IRREDUCIBLE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (2, 6): (1, 0, 0, 0, 0, 1, 1),
    (2, 7): (1, 0, 0, 0, 0, 0, 1, 1),
    (2, 8): (1, 0, 0, 0, 1, 1, 0, 1, 1),
    (2, 9): (1, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 0, 1, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (5, 2): (1, 1, 1),
    (5, 3): (1, 0, 1, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (1, 0, 1, 1),
    (11, 2): (1, 0, 1),
    (13, 2): (1, 3, 1),
    (17, 2): (1, 1, 1),
    (19, 2): (1, 0, 1),
}

MAX_DUAL_Q = 512

# Ring op tables are built eagerly when |R| = q^2 is at most this bound; all
# rings used by the deciders in anger are far below it.
TABLE_ORDER_BOUND = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n = p^e, p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            m = n
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
        p += 1
    return (n, 1)


class ResidueField:
    """GF(p^e) with elements coded as ints in 0..p^e-1 (base-p digits are the
    coefficients of the polynomial basis 1, y, ..., y^(e-1))."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"field characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.order = p**e
        if e > 1:
            try:
                self.modulus = IRREDUCIBLE_POLYS[(p, e)]
            except KeyError:
                raise ValueError(f"no irreducible polynomial on file for GF({p}^{e})")
            # y^(e+i) expressed in the polynomial basis, for i = 0..e-2
            self._reductions: list[tuple[int, ...]] = []
            last = tuple((-c) % p for c in self.modulus[:e])
            self._reductions.append(last)
            for _ in range(e - 2):
                shifted = [0] + list(last[: e - 1])
                top = last[e - 1]
                nxt = [(shifted[i] + top * self._reductions[0][i]) % p for i in range(e)]
                self._reductions.append(tuple(nxt))
                last = tuple(nxt)
        else:
            self.modulus = None
        if e > 1:
            self._inv: list[int | None] = [None] * self.order
            for x in range(1, self.order):
                if self._inv[x] is None:
                    for y in range(1, self.order):
                        if self.mul(x, y) == 1:
                            self._inv[x] = y
                            self._inv[y] = x
                            break

    def digits(self, x: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(x % p)
            x //= p
        return out

    def undigits(self, ds) -> int:
        x = 0
        for c in reversed(ds):
            x = x * self.p + c
        return x

    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        p = self.p
        dx, dy = self.digits(x), self.digits(y)
        return self.undigits([(a + b) % p for a, b in zip(dx, dy)])

    def neg(self, x: int) -> int:
        if self.e == 1:
            return (-x) % self.p
        return self.undigits([(-a) % self.p for a in self.digits(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x * y) % self.p
        p, e = self.p, self.e
        dx, dy = self.digits(x), self.digits(y)
        conv = [0] * (2 * e - 1)
        for i, a in enumerate(dx):
            if a:
                for j, b in enumerate(dy):
                    conv[i + j] = (conv[i + j] + a * b) % p
        out = conv[:e]
        for i in range(e, 2 * e - 1):
            c = conv[i]
            if c:
                red = self._reductions[i - e]
                for k in range(e):
                    out[k] = (out[k] + c * red[k]) % p
        return self.undigits(out)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 is not invertible in the residue field")
        if self.e == 1:
            return pow(x, -1, self.p)
        return self._inv[x]  # type: ignore[return-value]

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def __eq__(self, other) -> bool:
        return isinstance(other, ResidueField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash(("ResidueField", self.p, self.e))

    def __repr__(self) -> str:
        return f"GF({self.order})"


class Ring:
    """Common surface of both ring families.

    Attributes set by subclasses: ``q`` (residue field order), ``k``
    (ResidueField), ``order`` (= q^2), ``p`` (code of the uniformizer),
    ``two_p_zero``, ``spec`` (the canonical spec string), ``family``.
    """

    q: int
    k: ResidueField
    order: int
    p: int
    two_p_zero: bool
    spec: str
    family: str

    zero = 0
    one = 1

    def _raw_add(self, x: int, y: int) -> int:
        raise NotImplementedError

    def _raw_neg(self, x: int) -> int:
        raise NotImplementedError

    def _raw_mul(self, x: int, y: int) -> int:
        raise NotImplementedError

    def _finish_init(self) -> None:
        self.p = self.q
        self.two_p_zero = self._raw_add(self.p, self.p) == 0
        if self.order <= TABLE_ORDER_BOUND:
            rng = range(self.order)
            self._add_table = [[self._raw_add(x, y) for y in rng] for x in rng]
            self._mul_table = [[self._raw_mul(x, y) for y in rng] for x in rng]
            self._neg_table = [self._raw_neg(x) for x in rng]
            self.add = lambda x, y: self._add_table[x][y]
            self.mul = lambda x, y: self._mul_table[x][y]
            self.neg = lambda x: self._neg_table[x]
        else:
            self.add = self._raw_add
            self.mul = self._raw_mul
            self.neg = self._raw_neg

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    # canonical form accessors: code = a + q*b  <->  a + b*p
    def residue(self, x: int) -> int:
        return x % self.q

    def p_part(self, x: int) -> int:
        return x // self.q

    def from_parts(self, a: int, b: int) -> int:
        return a + self.q * b

    def from_residue(self, a: int) -> int:
        """The lift of a residue with zero p-part."""
        return a

    def is_unit(self, x: int) -> bool:
        return x % self.q != 0

    def inv(self, x: int) -> int:
        kind, data = self.classify(x)
        if kind != "unit":
            raise ZeroDivisionError(f"element {x} of {self.spec} is not a unit")
        return data

    def classify(self, x: int) -> tuple[str, int | None]:
        """('zero', None) | ('unit', inverse) | ('unit_times_p', u).

        For x = u*p the returned u is the canonical representative with zero
        p-part; u is only determined mod m.
        """
        if not 0 <= x < self.order:
            raise ValueError(f"{x} is not a canonical element code of {self.spec}")
        if x == 0:
            return ("zero", None)
        if self.is_unit(x):
            return ("unit", self._unit_inverse(x))
        return ("unit_times_p", self.from_residue(self.p_part(x)))

    def _unit_inverse(self, x: int) -> int:
        raise NotImplementedError

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def units(self) -> Iterator[int]:
        return (x for x in range(self.order) if x % self.q != 0)

    def unit_class_reps(self) -> list[int]:
        """One representative per class of units under u ~ v iff u*p = v*p.

        u*p = v*p iff u = v mod m, so the classes are the lifts of the nonzero
        residues; the zero-p-part lift is the canonical representative.
        """
        return [self.from_residue(a) for a in range(1, self.q)]

    # JSON element encoding: plain int for Z/q^2, [a, b] for GF(q)[x]/(x^2)
    def encode_element(self, x: int):
        raise NotImplementedError

    def decode_element(self, obj) -> int:
        raise NotImplementedError

    def format_element(self, x: int) -> str:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(("Ring", self.spec))

    def __repr__(self) -> str:
        return f"Ring({self.spec!r})"


class IntModQSquared(Ring):
    """Z/q^2 for a prime q.  Codes are the integer values mod q^2."""

    family = "int_mod_q_squared"

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"{q * q} is not the square of a prime")
        self.q = q
        self.order = q * q
        self.k = ResidueField(q, 1)
        self.spec = f"Z/{q * q}"
        self._finish_init()

    def _raw_add(self, x: int, y: int) -> int:
        return (x + y) % self.order

    def _raw_neg(self, x: int) -> int:
        return (-x) % self.order

    def _raw_mul(self, x: int, y: int) -> int:
        return (x * y) % self.order

    def _unit_inverse(self, x: int) -> int:
        return pow(x, -1, self.order)

    def encode_element(self, x: int):
        return x

    def decode_element(self, obj) -> int:
        if not isinstance(obj, int) or isinstance(obj, bool) or not 0 <= obj < self.order:
            raise ValueError(f"invalid element {obj!r} for {self.spec}")
        return obj

    def format_element(self, x: int) -> str:
        return str(x)


class DualNumbers(Ring):
    """GF(q)[x]/(x^2) for a prime power q = p^e <= 512."""

    family = "dual_numbers"

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        if q > MAX_DUAL_Q:
            raise ValueError(f"residue field order {q} exceeds the supported bound {MAX_DUAL_Q}")
        self.q = q
        self.order = q * q
        self.k = ResidueField(*pe)
        self.spec = f"GF({q})[x]/(x^2)"
        self._finish_init()

    def _raw_add(self, x: int, y: int) -> int:
        q, k = self.q, self.k
        return k.add(x % q, y % q) + q * k.add(x // q, y // q)

    def _raw_neg(self, x: int) -> int:
        q, k = self.q, self.k
        return k.neg(x % q) + q * k.neg(x // q)

    def _raw_mul(self, x: int, y: int) -> int:
        q, k = self.q, self.k
        a1, b1 = x % q, x // q
        a2, b2 = y % q, y // q
        return k.mul(a1, a2) + q * k.add(k.mul(a1, b2), k.mul(b1, a2))

    def _unit_inverse(self, x: int) -> int:
        # (a + bx)^-1 = a^-1 - a^-2 b x
        q, k = self.q, self.k
        a, b = x % q, x // q
        ai = k.inv(a)
        return ai + q * k.neg(k.mul(k.mul(ai, ai), b))

    def encode_element(self, x: int):
        return [x % self.q, x // self.q]

    def decode_element(self, obj) -> int:
        ok = (
            isinstance(obj, (list, tuple))
            and len(obj) == 2
            and all(isinstance(c, int) and not isinstance(c, bool) and 0 <= c < self.q for c in obj)
        )
        if not ok:
            raise ValueError(f"invalid element {obj!r} for {self.spec}")
        return obj[0] + self.q * obj[1]

    def format_element(self, x: int) -> str:
        a, b = x % self.q, x // self.q
        if b == 0:
            return str(a)
        if a == 0:
            return f"{b}*x" if b != 1 else "x"
        return f"{a}+{b}*x" if b != 1 else f"{a}+x"


def make_ring(spec: str) -> Ring:
    """Parse a ring spec string: ``Z/<m>`` with m = q^2, or ``GF(<q>)[x]/(x^2)``."""
    s = spec.strip().replace(" ", "")
    if s.startswith("Z/"):
        body = s[2:]
        if not body.isdigit():
            raise ValueError(f"cannot parse ring spec {spec!r}")
        m = int(body)
        q = _int_sqrt(m)
        if q is None or not is_prime(q):
            raise ValueError(f"{m} is not the square of a prime")
        return IntModQSquared(q)
    if s.startswith("GF(") and s.endswith(")[x]/(x^2)"):
        body = s[3 : -len(")[x]/(x^2)")]
        if not body.isdigit():
            raise ValueError(f"cannot parse ring spec {spec!r}")
        return DualNumbers(int(body))
    raise ValueError(f"cannot parse ring spec {spec!r}")


def _int_sqrt(m: int) -> int | None:
    if m < 1:
        return None
    q = int(m**0.5)
    for c in (q - 1, q, q + 1):
        if c > 0 and c * c == m:
            return c
    return None


@dataclass(frozen=True)
class RingElement:
    """Canonical element a + b*p of a fixed ring, wrapping an integer code."""

    ring: Ring
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.ring.order:
            raise ValueError(f"code {self.code} out of range for {self.ring.spec}")

    @property
    def a(self) -> int:
        return self.ring.residue(self.code)

    @property
    def b(self) -> int:
        return self.ring.p_part(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other.code
        if isinstance(other, int):
            # bare ints are element codes (for Z/q^2 that is the value mod q^2)
            if self.ring.family == "int_mod_q_squared":
                return other % self.ring.order
            if not 0 <= other < self.ring.order:
                raise ValueError(f"code {other} out of range for {self.ring.spec}")
            return other
        raise TypeError(f"cannot combine RingElement with {type(other).__name__}")

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.code, self._coerce(other)))

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.code, self._coerce(other)))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.code, self._coerce(other)))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.code))

    def __repr__(self) -> str:
        return f"<{self.ring.format_element(self.code)} in {self.ring.spec}>"


def arith(op: str, x: RingElement, y: RingElement | None = None) -> RingElement:
    """Dispatch add/sub/mul/neg on wrapped elements."""
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"binary op {op!r} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")
