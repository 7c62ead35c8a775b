"""Young-diagram combinatorics and the partition model of unipotent
inertial types.

A partition (l_1 >= ... >= l_k) of n corresponds to the unipotent matrix
I + diag(B_{l_1}, ..., B_{l_k}) built from nilpotent Jordan blocks; the
inverse direction reads off the kernel sequence of (M - I), and the
round trip through both maps is the classical conjugation (transpose) of
the Young diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .ff import (
    MatrixFF,
    PrimeField,
    block_diag,
    is_unipotent,
    kernel_dim,
    mk_field,
    nilpotent_block,
)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; n is their sum."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if not self.parts:
            raise ValueError("partition must be nonempty")
        if any(x < 1 for x in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the comma-separated serialization, e.g. ``"3,1"``."""
        try:
            parts = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse partition {text!r}") from exc
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n, largest first part first."""
    if n < 1:
        raise ValueError("partitions are defined for n >= 1")

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield Partition(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram: part i = #{j : l_j >= i}."""
    out = [0] * lam.parts[0]
    for part in lam.parts:
        for i in range(part):
            out[i] += 1
    return Partition(tuple(out))


def nabla_matrix(lam: Partition, field: PrimeField) -> MatrixFF:
    """I + diag(B_{l_1}, ..., B_{l_k}): the unipotent matrix of the type."""
    blocks = [nilpotent_block(field, part) for part in lam.parts]
    return MatrixFF.identity(field, lam.n) + block_diag(blocks, field)


def kernel_sequence(M: MatrixFF) -> Partition:
    """The partition (s_1, ..., s_r) with s_i = dim ker(M-I)^i - dim ker(M-I)^{i-1}.

    r is minimal with ker(M-I)^r the full space; requires M unipotent.
    """
    if M.rows != M.cols or M.rows == 0:
        raise ValueError("kernel sequence needs a nonempty square matrix")
    if not is_unipotent(M):
        raise ValueError("not unipotent")
    n = M.rows
    A = M - MatrixFF.identity(M.field, n)
    seq = []
    prev = 0  # dim ker (M-I)^0 = dim ker I = 0
    power = A
    while prev < n:
        cur = kernel_dim(power)
        seq.append(cur - prev)
        prev = cur
        power = power * A
    return Partition(tuple(seq))


_DEFAULT_THETA_FIELD: PrimeField | None = None


def _default_field() -> PrimeField:
    global _DEFAULT_THETA_FIELD
    if _DEFAULT_THETA_FIELD is None:
        _DEFAULT_THETA_FIELD = mk_field(5)
    return _DEFAULT_THETA_FIELD


def theta(lam: Partition, field: PrimeField | None = None) -> Partition:
    """Kernel sequence of the block-unipotent model of lam.

    The result is independent of the field; the default F_5 keeps the
    CLI deterministic.
    """
    if field is None:
        field = _default_field()
    return kernel_sequence(nabla_matrix(lam, field))


@dataclass(frozen=True)
class LemmaReport:
    checked: int
    failures: tuple[tuple[str, str, str], ...]  # (partition, theta, conjugate)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_conjugation_lemma(n: int, field: PrimeField | None = None) -> LemmaReport:
    """Check theta == conjugate on every partition of n (n <= 12)."""
    if n < 1 or n > 12:
        raise ValueError("lemma verification supports 1 <= n <= 12")
    if field is None:
        field = _default_field()
    checked = 0
    failures = []
    for lam in partitions_of(n):
        checked += 1
        got = theta(lam, field)
        want = conjugate(lam)
        if got != want:
            failures.append((str(lam), str(got), str(want)))
    return LemmaReport(checked, tuple(failures))
