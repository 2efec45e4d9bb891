"""Monomials, unit-coefficient binomials, and degree balancing.

A monomial is a plain exponent tuple over an ordered variable set.  A
binomial is an ordered pair of monomials with disjoint supports and a
canonical sign, standing for the difference of its two sides; this is the
only polynomial shape the package needs.  The textual form is
``z1^2*z2 - x^3`` with exponent 1 omitted and the canonically positive
side first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .parametrization import Parametrization

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class VariableSet:
    """Ordered, duplicate-free variable names; order fixes coordinates."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            seen = [n for i, n in enumerate(self.names) if n in self.names[:i]]
            raise ValueError(f"duplicate variable name {seen[0]!r}")

    @classmethod
    def of(cls, *names: str) -> "VariableSet":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None


@dataclass(frozen=True)
class Binomial:
    """x^u_plus - x^u_minus with disjoint supports and canonical sign.

    The canonical sign makes the first nonzero entry of
    ``u_plus - u_minus`` positive; the zero binomial has both sides zero.
    Use :func:`split_disjoint` or :meth:`from_pair` to build canonically.
    """

    u_plus: tuple[int, ...]
    u_minus: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.u_plus) != len(self.u_minus):
            raise ValueError("binomial sides have different lengths")
        for p, m in zip(self.u_plus, self.u_minus):
            if p < 0 or m < 0:
                raise ValueError("exponents must be non-negative")
            if p and m:
                raise ValueError("binomial sides must have disjoint supports")
        diff = next((p - m for p, m in zip(self.u_plus, self.u_minus) if p != m), 0)
        if diff < 0:
            raise ValueError("binomial is not in canonical sign form")

    @classmethod
    def from_pair(cls, plus: Sequence[int], minus: Sequence[int]) -> "Binomial":
        """Canonicalize an arbitrary monomial pair (cancel and fix sign)."""
        return split_disjoint(tuple(int(p) - int(m) for p, m in zip(plus, minus)))

    @classmethod
    def zero(cls, nvars: int) -> "Binomial":
        z = (0,) * nvars
        return cls(z, z)

    @property
    def nvars(self) -> int:
        return len(self.u_plus)

    @property
    def is_zero(self) -> bool:
        return not any(self.u_plus) and not any(self.u_minus)

    @property
    def is_balanced(self) -> bool:
        """Both sides have the same total degree."""
        return sum(self.u_plus) == sum(self.u_minus)

    @property
    def degree(self) -> int:
        return max(sum(self.u_plus), sum(self.u_minus))

    def involves(self, index: int) -> bool:
        return bool(self.u_plus[index] or self.u_minus[index])

    def sort_key(self) -> tuple:
        return (self.degree, self.u_plus, self.u_minus)


@dataclass(frozen=True)
class IdealPresentation:
    """A variable set with binomial generators and an optional parametrization."""

    vars: VariableSet
    generators: tuple[Binomial, ...]
    parametrization: "Parametrization | None" = None

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.nvars != len(self.vars):
                raise ValueError("generator does not match the variable set")
        if self.parametrization is not None and self.parametrization.vars != self.vars:
            raise ValueError("attached parametrization is over a different variable set")


def split_disjoint(u: Sequence[int]) -> Binomial:
    """Split an integer vector into the canonical disjoint-support binomial.

    ``u_plus - u_minus == u`` up to the canonical sign flip, which is
    applied when the first nonzero entry of ``u`` is negative.
    """
    vec = tuple(int(x) for x in u)
    first = next((x for x in vec if x), 0)
    if first < 0:
        vec = tuple(-x for x in vec)
    plus = tuple(x if x > 0 else 0 for x in vec)
    minus = tuple(-x if x < 0 else 0 for x in vec)
    return Binomial(plus, minus)


def total_degree(u: Sequence[int]) -> int:
    """Sum of the exponents of a monomial."""
    return sum(u)


def homogenize_binomial(b: Binomial) -> Binomial:
    """Balance the two sides by a power of a fresh last variable.

    The lower-degree side is multiplied by the degree gap; the fresh
    variable occupies the appended final coordinate.  Both sides of the
    result have equal total degree.
    """
    dp, dm = sum(b.u_plus), sum(b.u_minus)
    return Binomial(
        b.u_plus + (max(dm - dp, 0),),
        b.u_minus + (max(dp - dm, 0),),
    )


def dehomogenize_binomial(b: Binomial, index: int) -> Binomial:
    """Drop the variable at ``index`` from both sides and re-canonicalize.

    Cancellation can collapse the binomial to zero, e.g. when the two
    sides differed only in the dropped variable.
    """
    if not 0 <= index < b.nvars:
        raise ValueError(f"variable index {index} out of range")
    diff = tuple(p - m for k, (p, m) in enumerate(zip(b.u_plus, b.u_minus)) if k != index)
    return split_disjoint(diff)


def relabel_binomial(b: Binomial, old_vars: VariableSet, new_vars: VariableSet) -> Binomial:
    """Re-index a binomial into a larger variable set by name (zero-extend)."""
    if b.nvars != len(old_vars):
        raise ValueError("binomial does not match its variable set")
    plus = [0] * len(new_vars)
    minus = [0] * len(new_vars)
    for k, name in enumerate(old_vars):
        j = new_vars.index(name)
        plus[j] = b.u_plus[k]
        minus[j] = b.u_minus[k]
    return Binomial.from_pair(plus, minus)


def format_monomial(u: Sequence[int], vars: VariableSet) -> str:
    if len(u) != len(vars):
        raise ValueError("monomial does not match the variable set")
    factors = []
    for name, e in zip(vars, u):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def format_binomial(b: Binomial, vars: VariableSet) -> str:
    if b.is_zero:
        return "0"
    return f"{format_monomial(b.u_plus, vars)} - {format_monomial(b.u_minus, vars)}"


def parse_binomial(text: str, vars: VariableSet) -> Binomial:
    """Parse the textual binomial grammar, canonicalizing the result."""
    s = text.strip()
    if s == "0":
        return Binomial.zero(len(vars))
    parts = s.split("-")
    if len(parts) != 2:
        raise ValueError(f"expected 'monomial - monomial', got {text.strip()!r}")
    return Binomial.from_pair(
        _parse_monomial(parts[0].strip(), vars),
        _parse_monomial(parts[1].strip(), vars),
    )


def _parse_monomial(s: str, vars: VariableSet) -> tuple[int, ...]:
    if s == "1":
        return (0,) * len(vars)
    if not s:
        raise ValueError("empty monomial")
    exponents = [0] * len(vars)
    for factor in s.split("*"):
        factor = factor.strip()
        name, caret, e = factor.partition("^")
        name = name.strip()
        if caret:
            try:
                exponent = int(e.strip())
            except ValueError:
                raise ValueError(f"malformed exponent in {factor!r}") from None
            if exponent < 0:
                raise ValueError(f"negative exponent in {factor!r}")
        else:
            exponent = 1
        exponents[vars.index(name)] += exponent
    return tuple(exponents)
