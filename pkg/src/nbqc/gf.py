"""GF(2^p) finite field arithmetic.

Field elements are plain integers in [0, 2^p); the binary digits of an
element are the coefficients of its polynomial representation over GF(2).
Addition is xor.  Multiplication and inversion go through discrete
log/antilog tables built once per field from a primitive polynomial.

Default primitive polynomials (one per extension degree, the conventional
choices):

    p=1 : x + 1            -> 0b11        = 3
    p=2 : x^2 + x + 1      -> 0b111       = 7
    p=3 : x^3 + x + 1      -> 0b1011      = 11
    p=4 : x^4 + x + 1      -> 0b10011     = 19
    p=5 : x^5 + x^2 + 1    -> 0b100101    = 37
    p=6 : x^6 + x + 1      -> 0b1000011   = 67
    p=7 : x^7 + x^3 + 1    -> 0b10001001  = 137
    p=8 : x^8+x^4+x^3+x^2+1-> 0b100011101 = 285

A different polynomial may be passed explicitly; it is rejected unless it
is primitive (the element x must have multiplicative order 2^p - 1, which
the table construction verifies as a side effect).
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIMITIVE_POLY: dict[int, int] = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}


class GF:
    """The finite field GF(2^p) with table-driven arithmetic.

    Parameters
    ----------
    p : int
        Extension degree, 1 <= p <= 8 with the default polynomials.
    primitive_poly : int, optional
        Bit-encoded primitive polynomial of degree p over GF(2).
        Defaults to the conventional polynomial for the degree.
    """

    def __init__(self, p: int, primitive_poly: int | None = None) -> None:
        if primitive_poly is None:
            if p not in DEFAULT_PRIMITIVE_POLY:
                raise ValueError(
                    f"no default primitive polynomial for p={p}; supply one explicitly"
                )
            primitive_poly = DEFAULT_PRIMITIVE_POLY[p]
        if p < 1:
            raise ValueError(f"extension degree must be positive, got {p}")
        if primitive_poly >> p != 1:
            raise ValueError(
                f"primitive polynomial {bin(primitive_poly)} does not have degree {p}"
            )
        self.p = p
        self.q = 1 << p
        self.primitive_poly = primitive_poly

        # exp_table[i] = x^i; doubled length so mul can skip one reduction.
        self.exp_table = [0] * (2 * self.q)
        self.log_table = [0] * self.q
        val = 1
        for i in range(self.q - 1):
            if val == 1 and i > 0:
                raise ValueError(
                    f"polynomial {bin(primitive_poly)} is not primitive: "
                    f"x has order {i} < {self.q - 1}"
                )
            self.exp_table[i] = val
            self.log_table[val] = i
            val <<= 1
            if val & self.q:
                val ^= primitive_poly
        if val != 1:
            raise ValueError(f"polynomial {bin(primitive_poly)} is not primitive")
        for i in range(self.q - 1, 2 * self.q):
            self.exp_table[i] = self.exp_table[i - (self.q - 1)]

        self._mul_table: np.ndarray | None = None

    # ------------------------------------------------------------------
    # element-wise arithmetic
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        """Characteristic-2 sum: xor of the polynomial representations."""
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Product in GF(2^p); zero if either operand is zero."""
        if a == 0 or b == 0:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative inverse")
        return self.exp_table[(self.q - 1) - self.log_table[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """a raised to a non-negative integer power."""
        if a == 0:
            return 0 if n else 1
        return self.exp_table[(self.log_table[a] * n) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    # ------------------------------------------------------------------
    # vectorized support
    # ------------------------------------------------------------------
    @property
    def mul_table(self) -> np.ndarray:
        """Full q x q multiplication table (built lazily, read-only)."""
        if self._mul_table is None:
            log = np.array(self.log_table, dtype=np.int64)
            exp = np.array(self.exp_table, dtype=np.int64)
            table = exp[log[:, None] + log[None, :]]
            table[0, :] = 0
            table[:, 0] = 0
            table = table.astype(np.int16)
            table.setflags(write=False)
            self._mul_table = table
        return self._mul_table

    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and self.p == other.p
            and self.primitive_poly == other.primitive_poly
        )

    def __hash__(self) -> int:
        return hash((self.p, self.primitive_poly))

    def __repr__(self) -> str:
        return f"GF(2^{self.p}, poly={bin(self.primitive_poly)})"
