"""Moment/cumulant combinatorics for a single variable, computed without any bialgebra.

These functions use set-partition sums and power-series composition.  They
share no code with :mod:`uauprod.products` or :mod:`uauprod.lachs`, which
lets them cross-check those modules.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

__all__ = [
    "SetPartition",
    "cumulants_from_moments",
    "is_interval",
    "is_noncrossing",
    "moments_from_cumulants",
    "monotone_convolve_series",
    "set_partitions_rgs",
]

SetPartition = Tuple[Tuple[int, ...], ...]


def set_partitions_rgs(n: int) -> Iterator[SetPartition]:
    """Partitions of ``{1..n}`` from restricted growth strings ``a_1 = 0, a_i <= 1 + max(a_<i)``."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i: int, top: int):
        if i == n:
            groups: dict = {}
            for pos, b in enumerate(a, start=1):
                groups.setdefault(b, []).append(pos)
            yield tuple(tuple(groups[b]) for b in sorted(groups))
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    a[0] = 0
    yield from rec(1, 0)


def is_noncrossing(p: SetPartition) -> bool:
    where = {x: k for k, blk in enumerate(p) for x in blk}
    elems = sorted(where)
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            for c in elems:
                if c <= b:
                    continue
                for d in elems:
                    if d <= c:
                        continue
                    if where[a] == where[c] and where[b] == where[d] and where[a] != where[b]:
                        return False
    return True


def is_interval(p: SetPartition) -> bool:
    return all(blk[-1] - blk[0] + 1 == len(blk) for blk in p)


_KINDS = {
    "classical": lambda p: True,
    "free": is_noncrossing,
    "boolean": is_interval,
}


def _admissible(kind: str, n: int) -> List[SetPartition]:
    try:
        keep = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected classical, free or boolean") from None
    return [p for p in set_partitions_rgs(n) if keep(p)]


def moments_from_cumulants(kind: str, kappa: Sequence) -> List[Fraction]:
    """``m_n = sum_pi prod_B kappa_|B|`` over all, non-crossing or interval partitions.

    ``kappa[0]`` is the first cumulant; the result has the same length.
    """
    kappa = [Fraction(k) for k in kappa]
    out = []
    for n in range(1, len(kappa) + 1):
        total = Fraction(0)
        for p in _admissible(kind, n):
            term = Fraction(1)
            for blk in p:
                term *= kappa[len(blk) - 1]
            total += term
        out.append(total)
    return out


def cumulants_from_moments(kind: str, moments: Sequence) -> List[Fraction]:
    """Inverse of :func:`moments_from_cumulants`, solved one order at a time."""
    moments = [Fraction(m) for m in moments]
    kappa: List[Fraction] = []
    for n in range(1, len(moments) + 1):
        rest = Fraction(0)
        for p in _admissible(kind, n):
            if len(p) == 1:
                continue
            term = Fraction(1)
            for blk in p:
                term *= kappa[len(blk) - 1]
            rest += term
        kappa.append(moments[n - 1] - rest)
    return kappa


def _series_mul(a: List[Fraction], b: List[Fraction], order: int) -> List[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def _compose(outer: List[Fraction], inner: List[Fraction], order: int) -> List[Fraction]:
    """``outer(inner(w))`` for ``inner`` without constant term, truncated at ``w^order``."""
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for c in outer[: order + 1]:
        if c:
            out = [o + c * p for o, p in zip(out, power)]
        power = _series_mul(power, inner, order)
    return out


def monotone_convolve_series(mu: Sequence, nu: Sequence, N: int | None = None) -> List[Fraction]:
    """Moments ``m_1..m_N`` of the monotone convolution of ``mu`` and ``nu``.

    With ``H(w) = w + m_1 w^2 + m_2 w^3 + ...`` (the Cauchy transform in the
    variable ``w = 1/z``), the convolution has ``H = H_mu ∘ H_nu``.
    """
    N = N if N is not None else min(len(mu), len(nu))
    if N > 8:
        raise ValueError("series oracle is limited to N <= 8")
    mu = [Fraction(x) for x in mu] + [Fraction(0)] * N
    nu = [Fraction(x) for x in nu] + [Fraction(0)] * N
    order = N + 1
    h_mu = [Fraction(0), Fraction(1)] + mu[:N]
    h_nu = [Fraction(0), Fraction(1)] + nu[:N]
    h = _compose(h_mu, h_nu, order)
    return h[2: N + 2]
