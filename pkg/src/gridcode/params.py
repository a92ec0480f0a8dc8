"""Derived parameters of one code instance.

Everything follows from three free inputs: the grid dimension ``d``, the
number of shades per pigment ``b`` and the scale ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ColourOverflowError, InstanceTooLargeError, ParameterError

#: Default ceiling on n**d, the number of grid cells we agree to allocate.
DEFAULT_MAX_CELLS = 2**31

MAX_COLOURS = 255


def t_sequence(s_p: int, m: int, b: int) -> tuple[int, ...]:
    """Return ``(T_0, ..., T_b)`` for profile parameter ``s_p`` and window ``m``."""
    seq = [0]
    if b >= 1:
        seq.append(2 * s_p)
    for _ in range(2, b + 1):
        seq.append((2 * m * s_p + 1) * seq[-1] - 2)
    return tuple(seq)


def closed_form_length(s_p: int, m: int, b: int) -> Fraction:
    """Packing length from the solved T-recurrence, as an exact rational."""
    q = 2 * m * s_p
    inv = Fraction(1, s_p)
    return (q + 1) ** (b - 1) * (q - inv) + inv


@dataclass(frozen=True)
class CodeParams:
    d: int
    b: int
    t: int
    m: int
    k: int
    s_max: int
    s_p: int
    T: tuple[int, ...]
    n: int

    @property
    def blank(self) -> int:
        return self.k - 1

    @property
    def cells(self) -> int:
        return self.n**self.d

    @property
    def window_cells(self) -> int:
        return self.m**self.d

    def colour(self, pigment: int, shade: int) -> int:
        return pigment + shade * self.d

    def as_dict(self) -> dict:
        return {
            "d": self.d, "b": self.b, "t": self.t, "m": self.m, "k": self.k,
            "s_max": self.s_max, "s_p": self.s_p, "T": list(self.T), "n": self.n,
        }


def derive_params(d: int, b: int, t: int, max_cells: int | None = DEFAULT_MAX_CELLS) -> CodeParams:
    """Compute every parameter of the ``(d, b, t)`` instance.

    ``max_cells`` bounds n**d; pass ``None`` when no grid will be allocated
    (decoding only needs the packing, whose length is n).
    """
    for name, value, low in (("d", d, 2), ("b", b, 1), ("t", t, 1)):
        if not isinstance(value, int) or isinstance(value, bool) or value < low:
            raise ParameterError(f"{name} must be an integer >= {low}, got {value!r}")
    k = b * d + 1
    if k > MAX_COLOURS:
        raise ColourOverflowError(f"colour byte overflow: k = b*d + 1 = {k} > {MAX_COLOURS}")

    m = 2 * b * d * t
    s_p = (2 * b * d) ** (d - 2) * t ** (d - 1)
    s_max, rem = divmod(m ** (d - 1), b * d)
    if rem or s_max != 2 * s_p:
        raise AssertionError(f"m^(d-1)/(bd) = {m ** (d - 1)}/{b * d} is not 2*s_p = {2 * s_p}")
    T = t_sequence(s_p, m, b)
    n = m * T[b]
    if closed_form_length(s_p, m, b) != n:
        raise AssertionError(f"recurrence length {n} disagrees with closed form")

    if max_cells is not None and n**d > max_cells:
        raise InstanceTooLargeError(
            f"instance too large: n^d = {n}^{d} = {n**d} cells exceeds budget {max_cells}"
        )
    return CodeParams(d=d, b=b, t=t, m=m, k=k, s_max=s_max, s_p=s_p, T=T, n=n)


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    windows: int
    multisets: int

    @property
    def margin(self) -> int:
        return self.multisets - self.windows


def counting_bound(n: int, d: int, m: int, k: int) -> BoundCheck:
    """Compare n**d windows with the number of k-colour multisets of size m**d."""
    windows = n**d
    multisets = comb(m**d + k - 1, k - 1)
    return BoundCheck(windows <= multisets, windows, multisets)


def bound_check(p: CodeParams) -> BoundCheck:
    return counting_bound(p.n, p.d, p.m, p.k)


def asymptotic_ratio(p: CodeParams) -> dict:
    """Measured n / m**(k-1) next to the two candidate limiting constants.

    ``construction_limit`` is what the construction converges to,
    ``(1/(k-1))**b``; ``nominal_constant`` is ``C_k**(1/d)`` with
    ``C_k = (2/(k-1))**(k-1)``.  Neither is asserted.
    """
    k1 = p.k - 1
    return {
        "ratio": p.n / p.m**k1,
        "construction_limit": (1 / k1) ** p.b,
        "nominal_constant": ((2 / k1) ** k1) ** (1 / p.d),
    }
