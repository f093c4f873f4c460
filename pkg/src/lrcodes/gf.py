"""Exact arithmetic for prime fields GF(p) and binary extension fields GF(2^e).

Elements are stored as canonical integers: residues for GF(p), and for
GF(2^e) the integer whose base-2 digits are the coefficients of the
polynomial representative (bit i holds the coefficient of x^i). All
arithmetic is exact; nothing here touches floating point.

General GF(p^e) with odd p is deliberately unsupported: every size
requirement in this package can be met by a prime or a power of two.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence, Union

from .errors import (
    BoundTooLarge,
    CompositeCharacteristic,
    DivisionByZero,
    FieldMismatch,
    ReduciblePolynomial,
    UnsupportedExtension,
)

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field_make",
    "field_at_least",
    "is_prime",
    "IRREDUCIBLE_POLY",
]

# Smallest-integer monic irreducible polynomial over GF(2) per degree,
# encoded as bitmasks (bit i = coefficient of x^i). Fixed constants so
# binary-field arithmetic is reproducible across runs and machines.
IRREDUCIBLE_POLY: dict[int, int] = {
    2: 0b111,               # x^2 + x + 1
    3: 0b1011,              # x^3 + x + 1
    4: 0b10011,             # x^4 + x + 1
    5: 0b100101,            # x^5 + x^2 + 1
    6: 0b1000011,           # x^6 + x + 1
    7: 0b10000011,          # x^7 + x + 1
    8: 0b100011011,         # x^8 + x^4 + x^3 + x + 1
    9: 0b1000000011,        # x^9 + x + 1
    10: 0b10000001001,      # x^10 + x^3 + 1
    11: 0b100000000101,     # x^11 + x^2 + 1
    12: 0b1000000001001,    # x^12 + x^3 + 1
    13: 0b10000000011011,   # x^13 + x^4 + x^3 + x + 1
    14: 0b100000000100001,  # x^14 + x^5 + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10000000000101011,  # x^16 + x^5 + x^3 + x + 1
}

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test.

    The witness set is exact for every n below 3.3e24, far beyond any
    field order this package constructs.
    """
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_mul_gf2(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials in bitmask form."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _poly_mod_gf2(a: int, modulus: int) -> int:
    """Remainder of a modulo the given polynomial, both bitmasks."""
    dm = modulus.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= modulus << (a.bit_length() - 1 - dm)
    return a


def _poly_irreducible_gf2(poly: int) -> bool:
    """Trial division over GF(2); adequate for the supported degrees."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly & 1 == 0:
        return False
    for divisor in range(2, 1 << (deg // 2 + 1)):
        if divisor.bit_length() - 1 >= 1 and _poly_mod_gf2(poly, divisor) == 0:
            return False
    return True


class FieldSpec:
    """A finite field GF(p) or GF(2^e), operating on integer representatives.

    Parameters
    ----------
    characteristic : int
        Prime characteristic p.
    degree : int
        Extension degree e; 1 for prime fields, and then characteristic
        must be 2 for e > 1.
    modulus_poly : int, optional
        Irreducible polynomial bitmask of degree e. When omitted for
        e > 1, the built-in table supplies a fixed polynomial.

    Notes
    -----
    Use :func:`field_make` rather than the constructor when input comes
    from outside; the constructor assumes already-validated arguments.
    Arithmetic methods (`add`, `mul`, ...) act on canonical integers and
    are the hot path; :class:`FieldElement` wraps them with operators.
    """

    __slots__ = ("p", "e", "poly", "q")

    def __init__(self, p: int, e: int = 1, poly: int = 0) -> None:
        self.p = p
        self.e = e
        self.poly = poly if e > 1 else 0
        self.q = p ** e

    # identity

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.e, self.poly) == (other.p, other.e, other.poly)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.poly))

    def __repr__(self) -> str:
        return f"GF({self.q})" if self.e == 1 else f"GF(2^{self.e})"

    # canonicalization

    def canon(self, value: int) -> int:
        """Reduce an arbitrary integer to its canonical representative."""
        if self.e == 1:
            return value % self.p
        if 0 <= value < self.q:
            return value
        return _poly_mod_gf2(abs(value), self.poly)

    # arithmetic on canonical integers

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        return a ^ b

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return a

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return _poly_mod_gf2(_poly_mul_gf2(a, b), self.poly)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero(f"division by zero in {self!r}")
        return self.mul(a, self.inv(b))

    def pow(self, a: int, exponent: int) -> int:
        if self.e == 1:
            if exponent < 0:
                return pow(self.inv(a), -exponent, self.p)
            return pow(a, exponent, self.p)
        if exponent < 0:
            a = self.inv(a)
            exponent = -exponent
        result = 1
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    # element factory and iteration

    def element(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"element of {value.spec!r} used in {self!r}")
            return value
        return FieldElement(self, self.canon(value))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements in canonical integer order."""
        for v in range(self.q):
            yield FieldElement(self, v)

    # serialization

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "poly": self.poly}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return field_make(int(data["p"]), int(data["e"]),
                          int(data["poly"]) or None)


class FieldElement:
    """A field element: a canonical integer bound to its FieldSpec.

    Supports the usual operators against elements of the same field or
    plain integers (reduced into the field first). Mixing fields raises
    FieldMismatch.
    """

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int) -> None:
        self.spec = spec
        self.value = value

    def _coerce(self, other: Union[int, "FieldElement"]) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(
                    f"cannot combine {self.spec!r} and {other.spec!r} elements")
            return other.value
        if isinstance(other, int):
            return self.spec.canon(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(v, self.value))

    def __pow__(self, exponent: int):
        return FieldElement(self.spec, self.spec.pow(self.value, exponent))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == self.spec.canon(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}:{self.spec!r}"


def field_make(characteristic: int, degree: int = 1,
               modulus_poly: Optional[Union[int, Sequence[int]]] = None) -> FieldSpec:
    """Build a validated FieldSpec.

    `modulus_poly` may be an integer bitmask or a coefficient sequence
    (index i = coefficient of x^i). It must be monic of the requested
    degree and irreducible over GF(2); omitted, the built-in table
    (degrees 2..16) is used.
    """
    if not is_prime(characteristic):
        raise CompositeCharacteristic(f"{characteristic} is not prime")
    if degree < 1:
        raise UnsupportedExtension(f"degree must be >= 1, got {degree}")
    if degree == 1:
        return FieldSpec(characteristic, 1, 0)
    if characteristic != 2:
        raise UnsupportedExtension(
            f"extension fields are supported only over GF(2), "
            f"got characteristic {characteristic}")
    if modulus_poly is None:
        try:
            poly = IRREDUCIBLE_POLY[degree]
        except KeyError:
            raise UnsupportedExtension(
                f"no built-in modulus for degree {degree}; "
                f"supported degrees are 2..16") from None
    else:
        if isinstance(modulus_poly, int):
            poly = modulus_poly
        else:
            poly = 0
            for i, c in enumerate(modulus_poly):
                if c not in (0, 1):
                    raise ReduciblePolynomial(
                        "modulus coefficients must be 0 or 1")
                poly |= (c & 1) << i
        if poly.bit_length() - 1 != degree:
            raise ReduciblePolynomial(
                f"modulus must be monic of degree {degree}, "
                f"got degree {poly.bit_length() - 1}")
        if not _poly_irreducible_gf2(poly):
            raise ReduciblePolynomial(
                f"polynomial {bin(poly)} is reducible over GF(2)")
    return FieldSpec(2, degree, poly)


def field_at_least(bound: int, prefer: str = "prime",
                   ceiling: int = 2 ** 31) -> FieldSpec:
    """Smallest supported field of order >= bound.

    prefer="prime" walks up to the next prime; prefer="binary" rounds up
    to the next power of two (degree capped at 16 by the modulus table).
    Raises BoundTooLarge when the result would exceed `ceiling`.
    """
    if bound < 2:
        bound = 2
    if prefer == "prime":
        q = bound
        while q <= ceiling:
            if is_prime(q):
                return FieldSpec(q, 1, 0)
            q += 1
        raise BoundTooLarge(
            f"no prime in [{bound}, {ceiling}]; raise the ceiling")
    if prefer == "binary":
        e = max(1, (bound - 1).bit_length())
        if 2 ** e > ceiling:
            raise BoundTooLarge(f"2^{e} exceeds the ceiling {ceiling}")
        if e > 16:
            raise BoundTooLarge(
                f"2^{e} exceeds the supported binary degrees (2..16)")
        return field_make(2, e)
    raise ValueError(f"prefer must be 'prime' or 'binary', got {prefer!r}")
