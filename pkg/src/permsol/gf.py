"""Small finite fields GF(p^e) for building projective-line actions.

Elements are encoded as integers 0..q-1 whose base-p digits are the
coefficients of the residue polynomial (little-endian).  Extension fields use
fixed published irreducible (Conway) polynomials so the construction is
deterministic; supported q are exactly the ones the built-in psl2/pgl2
catalogue needs.
"""

from __future__ import annotations

# little-endian coefficient lists, leading coefficient 1
_IRREDUCIBLE: dict[int, list[int]] = {
    4: [1, 1, 1],          # x^2 + x + 1 over GF(2)
    8: [1, 1, 0, 1],       # x^3 + x + 1
    9: [2, 2, 1],          # x^2 + 2x + 2 over GF(3)
    16: [1, 1, 0, 0, 1],   # x^4 + x + 1
    25: [2, 4, 1],         # x^2 + 4x + 2 over GF(5)
    27: [1, 2, 0, 1],      # x^3 + 2x + 1
    32: [1, 0, 1, 0, 0, 1],  # x^5 + x^2 + 1
}


def factor_prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, p prime; raises for non prime powers."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


class GF:
    """Arithmetic in GF(q) on integer-encoded elements."""

    def __init__(self, q: int):
        p, e = factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e > 1 and q not in _IRREDUCIBLE:
            raise ValueError(f"no irreducible polynomial on file for GF({q})")
        self._mul = [[0] * q for _ in range(q)]
        self._add = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                self._add[a][b] = self._add_slow(a, b)
                self._mul[a][b] = self._mul_slow(a, b)
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: list[int]) -> int:
        val = 0
        for d in reversed(digits):
            val = val * self.p + d
        return val

    def _add_slow(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def _mul_slow(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if not x:
                continue
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        if e == 1:
            return prod[0]
        poly = _IRREDUCIBLE[self.q]
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if not c:
                continue
            prod[k] = 0
            for j in range(e):
                prod[k - e + j] = (prod[k - e + j] - c * poly[j]) % p
        return self._encode(prod[:e])

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._add[a].index(0)

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def generator(self) -> int:
        """Smallest multiplicative generator of GF(q)*."""
        for g in range(2, self.q):
            x = g
            n = 1
            while x != 1:
                x = self.mul(x, g)
                n += 1
            if n == self.q - 1:
                return g
        raise AssertionError("no multiplicative generator found")
