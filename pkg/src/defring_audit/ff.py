"""Exact linear algebra over finite fields F_{p^m}.

Field elements are encoded as integers in [0, p^m): the base-p digits of
the encoding are the coefficients of the element written in the power
basis of the generator, lowest degree first.  Every operation is exact
integer arithmetic; nothing in this module (or anywhere downstream)
touches floating point.

The canonical model of F_{p^m} is fixed once and for all by
:func:`mk_field`, which selects the lexicographically smallest monic
irreducible modulus (coefficients compared constant term first).  This
makes every computation reproducible across runs and platforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

DEFAULT_SCAN_BUDGET = 2**20


class ScanBudgetExceeded(ValueError):
    """Root scanning would need an extension field beyond the budget."""


class InternalCheckError(RuntimeError):
    """A mathematically guaranteed invariant failed; indicates a bug."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial arithmetic over the prime field F_p (coefficient lists of ints,
# lowest degree first).  Used only for modulus selection and embeddings.
# ---------------------------------------------------------------------------


def _ptrim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _prem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    _ptrim(a)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ptrim(a)
    return a


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _prem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = _prem(base, mod, p)
    while e:
        if e & 1:
            result = _prem(_pmul(result, b, p), mod, p)
        b = _prem(_pmul(b, b, p), mod, p)
        e >>= 1
    return result


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    t = _ppowmod(x, p**m, poly, p)
    diff = _ptrim([(a - b) % p for a, b in itertools.zip_longest(t, x, fillvalue=0)])
    if diff:
        return False
    for r in _prime_divisors(m):
        t = _ppowmod(x, p ** (m // r), poly, p)
        diff = _ptrim([(a - b) % p for a, b in itertools.zip_longest(t, x, fillvalue=0)])
        if len(_pgcd(diff, poly, p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class PrimeField:
    """F_{p^m} with a fixed monic irreducible modulus.

    ``modulus`` is a coefficient tuple of length m+1, lowest degree first.
    For m = 1 the modulus is T by convention.
    """

    __slots__ = ("p", "m", "order", "modulus", "_reductions")

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.order = p**m
        self.modulus = tuple(int(c) % p for c in modulus)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        # digit vectors of T^k mod modulus for k in [m, 2m-2]
        reds: dict[int, tuple[int, ...]] = {}
        if m > 1:
            cur = [(-c) % p for c in self.modulus[:m]]
            reds[m] = tuple(cur)
            for k in range(m + 1, 2 * m - 1):
                top = cur[m - 1]
                cur = [0] + cur[: m - 1]
                if top:
                    cur = [(o + top * r) % p for o, r in zip(cur, reds[m])]
                reds[k] = tuple(cur)
        self._reductions = reds

    # -- encoding ------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of length m, lowest degree first."""
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(a % p)
            a //= p
        return tuple(out)

    def encode(self, coeffs: Iterable[int]) -> int:
        out = 0
        mult = 1
        for c in coeffs:
            out += (c % self.p) * mult
            mult *= self.p
        return out

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a * b) % p
        if a == 0 or b == 0:
            return 0
        m = self.m
        da = self.coeffs(a)
        db = self.coeffs(b)
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        digits = [c % p for c in conv[:m]]
        for k in range(m, 2 * m - 1):
            c = conv[k] % p
            if c:
                red = self._reductions[k]
                digits = [(d + c * r) % p for d, r in zip(digits, red)]
        return self.encode(digits)

    def inv(self, a: int) -> int:
        if a % self.order == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.m == 1:
            return pow(a, e, self.p)
        result = 1
        b = a
        while e:
            if e & 1:
                result = self.mul(result, b)
            b = self.mul(b, b)
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.order)

    # -- identity ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PrimeField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.m}"


@lru_cache(maxsize=None)
def mk_field(p: int, m: int = 1) -> PrimeField:
    """Canonical F_{p^m}: lexicographically smallest irreducible modulus.

    Candidate moduli are compared by coefficient vectors, constant term
    first.  For m = 1 the modulus is T.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return PrimeField(p, 1, (0, 1))
    for tail in itertools.product(range(p), repeat=m):
        cand = list(tail) + [1]
        if _is_irreducible(cand, p):
            return PrimeField(p, m, cand)
    raise InternalCheckError("no irreducible modulus found")


def embed_field(sub: PrimeField, ext: PrimeField) -> Callable[[int], int]:
    """A fixed field embedding F_{p^m} -> F_{p^M} (requires m | M).

    The generator of the subfield is sent to the smallest root (by
    integer encoding) of the subfield modulus in the extension, so the
    embedding is deterministic.  Prime subfields embed as constants.
    """
    if sub == ext:
        return lambda a: a
    if sub.p != ext.p or ext.m % sub.m != 0:
        raise ValueError("target is not an extension of the source field")
    if sub.m == 1:
        return lambda a: a
    root = None
    for z in ext.elements():
        acc = 0
        for c in reversed(sub.modulus):
            acc = ext.add(ext.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    if root is None:
        raise InternalCheckError("subfield modulus has no root in extension")
    powers = [1]
    for _ in range(sub.m - 1):
        powers.append(ext.mul(powers[-1], root))

    def emb(a: int) -> int:
        out = 0
        for c, w in zip(sub.coeffs(a), powers):
            if c:
                out = ext.add(out, ext.mul(c, w))
        return out

    return emb


# ---------------------------------------------------------------------------
# Polynomials over a PrimeField
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyFF:
    """Polynomial over a PrimeField; coefficients lowest degree first."""

    field: PrimeField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def evaluate(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __add__(self, other: "PolyFF") -> "PolyFF":
        f = self._common_field(other)
        out = [
            f.add(a, b)
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        ]
        return PolyFF(f, tuple(out))

    def __sub__(self, other: "PolyFF") -> "PolyFF":
        f = self._common_field(other)
        out = [
            f.sub(a, b)
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        ]
        return PolyFF(f, tuple(out))

    def __mul__(self, other: "PolyFF") -> "PolyFF":
        f = self._common_field(other)
        if self.is_zero() or other.is_zero():
            return PolyFF(f, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return PolyFF(f, tuple(out))

    def __pow__(self, e: int) -> "PolyFF":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = PolyFF(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _common_field(self, other: "PolyFF") -> PrimeField:
        if self.field != other.field:
            raise ValueError("mixed fields in polynomial arithmetic")
        return self.field

    def __repr__(self) -> str:
        return f"PolyFF({self.field!r}, {self.coeffs})"


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class MatrixFF:
    """Immutable exact matrix over a PrimeField, row-major entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: PrimeField, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("entry count must equal rows * cols")
        if not all(isinstance(e, int) and 0 <= e < field.order for e in entries):
            raise ValueError("entries must be encoded elements of the field")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]]) -> "MatrixFF":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(field, r, c, [int(e) % field.order for row in rows for e in row])

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "MatrixFF":
        return cls(field, rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "MatrixFF":
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    # -- access ------------------------------------------------------------

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # -- arithmetic ----------------------------------------------------------

    def _check_same_shape(self, other: "MatrixFF") -> None:
        if self.field != other.field:
            raise ValueError("mixed fields")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __add__(self, other: "MatrixFF") -> "MatrixFF":
        self._check_same_shape(other)
        f = self.field
        return MatrixFF(
            f, self.rows, self.cols,
            [f.add(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "MatrixFF") -> "MatrixFF":
        self._check_same_shape(other)
        f = self.field
        return MatrixFF(
            f, self.rows, self.cols,
            [f.sub(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "MatrixFF":
        f = self.field
        return MatrixFF(f, self.rows, self.cols, [f.neg(a) for a in self.entries])

    def __mul__(self, other: "MatrixFF") -> "MatrixFF":
        if not isinstance(other, MatrixFF):
            return NotImplemented
        if self.field != other.field:
            raise ValueError("mixed fields")
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        f = self.field
        n, k, m = self.rows, self.cols, other.cols
        e1, e2 = self.entries, other.entries
        out = [0] * (n * m)
        if f.m == 1:
            p = f.p
            for i in range(n):
                base = i * k
                for j in range(m):
                    s = 0
                    for t in range(k):
                        s += e1[base + t] * e2[t * m + j]
                    out[i * m + j] = s % p
        else:
            for i in range(n):
                base = i * k
                for j in range(m):
                    s = 0
                    for t in range(k):
                        s = f.add(s, f.mul(e1[base + t], e2[t * m + j]))
                    out[i * m + j] = s
        return MatrixFF(f, n, m, out)

    def transpose(self) -> "MatrixFF":
        return MatrixFF(
            self.field, self.cols, self.rows,
            [self.at(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def matpow(self, e: int) -> "MatrixFF":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        result = MatrixFF.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixFF)
            and self.field == other.field
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"MatrixFF({self.field!r}, {self.to_lists()})"


def nilpotent_block(field: PrimeField, m: int) -> MatrixFF:
    """The m x m nilpotent Jordan block with ones on the superdiagonal."""
    return MatrixFF(
        field, m, m, [1 if j == i + 1 else 0 for i in range(m) for j in range(m)]
    )


def block_diag(blocks: Sequence[MatrixFF], field: PrimeField | None = None) -> MatrixFF:
    """Block-diagonal assembly of square blocks over a common field."""
    if blocks:
        field = blocks[0].field
        if any(b.field != field for b in blocks):
            raise ValueError("mixed fields in block_diag")
    elif field is None:
        raise ValueError("empty block list needs an explicit field")
    for b in blocks:
        if b.rows != b.cols:
            raise ValueError("blocks must be square")
    n = sum(b.rows for b in blocks)
    out = MatrixFF.zeros(field, n, n).to_lists()
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b.at(i, j)
        off += b.rows
    return MatrixFF.from_rows(field, out) if n else MatrixFF(field, 0, 0, ())


def mat_rank(M: MatrixFF) -> int:
    """Rank by exact Gaussian elimination."""
    f = M.field
    rows = [list(M.row(i)) for i in range(M.rows)]
    rank = 0
    for col in range(M.cols):
        piv = None
        for r in range(rank, M.rows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = f.inv(rows[rank][col])
        rows[rank] = [f.mul(inv, x) for x in rows[rank]]
        pivot_row = rows[rank]
        for r in range(rank + 1, M.rows):
            c = rows[r][col]
            if c:
                rowr = rows[r]
                for j in range(col, M.cols):
                    rowr[j] = f.sub(rowr[j], f.mul(c, pivot_row[j]))
        rank += 1
        if rank == M.rows:
            break
    return rank


def kernel_dim(M: MatrixFF) -> int:
    """dim ker M = cols - rank."""
    return M.cols - mat_rank(M)


def mat_inverse(M: MatrixFF) -> MatrixFF:
    """Inverse by Gauss-Jordan; raises ValueError on singular input."""
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    f = M.field
    n = M.rows
    aug = [list(M.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = f.inv(aug[col][col])
        aug[col] = [f.mul(inv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                rowr = aug[r]
                rowc = aug[col]
                for j in range(2 * n):
                    rowr[j] = f.sub(rowr[j], f.mul(c, rowc[j]))
    return MatrixFF.from_rows(f, [row[n:] for row in aug])


def charpoly(M: MatrixFF) -> PolyFF:
    """Monic characteristic polynomial det(T*I - M), division-free.

    Uses the Berkowitz iteration (Toeplitz convolutions over principal
    submatrices), so it is valid over any field, including F_2 and F_3
    where fraction-based methods break down.
    """
    if M.rows != M.cols:
        raise ValueError("charpoly needs a square matrix")
    f = M.field
    n = M.rows
    if n == 0:
        return PolyFF(f, (1,))
    A = M.to_lists()
    c = [1]  # descending powers
    for k in range(1, n + 1):
        a = A[k - 1][k - 1]
        v = [1, f.neg(a)]
        if k > 1:
            R = A[k - 1][:k - 1]
            w = [A[i][k - 1] for i in range(k - 1)]
            for j in range(k - 1):
                s = 0
                for x, y in zip(R, w):
                    s = f.add(s, f.mul(x, y))
                v.append(f.neg(s))
                if j < k - 2:
                    w = [
                        _dot(f, A[i][:k - 1], w)
                        for i in range(k - 1)
                    ]
        new = [0] * (k + 1)
        for i, vi in enumerate(v):
            if vi:
                for j, cj in enumerate(c):
                    if i + j <= k and cj:
                        new[i + j] = f.add(new[i + j], f.mul(vi, cj))
        c = new
    return PolyFF(f, tuple(reversed(c)))


def _dot(f: PrimeField, xs: Sequence[int], ys: Sequence[int]) -> int:
    s = 0
    for x, y in zip(xs, ys):
        if x and y:
            s = f.add(s, f.mul(x, y))
    return s


def is_unipotent(M: MatrixFF) -> bool:
    """True iff (M - I)^n = 0 with n the dimension."""
    if M.rows != M.cols:
        raise ValueError("unipotence is defined for square matrices")
    n = M.rows
    if n == 0:
        return True
    return (M - MatrixFF.identity(M.field, n)).matpow(n).is_zero()


def _synthetic_div(coeffs: list[int], z: int, f: PrimeField) -> tuple[list[int], int]:
    # divide by (T - z); coeffs lowest degree first, length >= 2
    n = len(coeffs) - 1
    q = [0] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = f.add(coeffs[i], f.mul(z, acc))
    return q, acc


def eigenvalues_in_splitting_field(
    M: MatrixFF, budget: int = DEFAULT_SCAN_BUDGET
) -> tuple[PrimeField, tuple[int, ...]]:
    """All n eigenvalues of M, located in a common extension field.

    Scans extensions F_{p^{m*d}} for d = 1, 2, ... in order, peeling
    roots of the characteristic polynomial off by synthetic division
    until all n are found; the scan is exhaustive and deterministic.
    Raises ScanBudgetExceeded once the candidate extension would have
    more than ``budget`` elements.
    """
    if M.rows != M.cols:
        raise ValueError("eigenvalues of a non-square matrix")
    K = M.field
    n = M.rows
    chi = charpoly(M)
    if n == 0:
        return K, ()
    d = 1
    while K.order**d <= budget:
        L = K if d == 1 else mk_field(K.p, K.m * d)
        emb = embed_field(K, L)
        poly = [emb(c) for c in chi.coeffs]
        roots: list[int] = []
        for z in L.elements():
            while len(poly) > 1:
                q, rem = _synthetic_div(poly, z, L)
                if rem != 0:
                    break
                roots.append(z)
                poly = q
            if len(poly) == 1:
                break
        if len(roots) == n:
            return L, tuple(sorted(roots))
        d += 1
    raise ScanBudgetExceeded(
        f"splitting field of the characteristic polynomial needs more than "
        f"{budget} elements"
    )
