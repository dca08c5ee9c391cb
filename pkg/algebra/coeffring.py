"""
Coefficient layer: exact (Laurent) polynomials over the rationals, vector
fields, free modules, linear maps and derivation pairs.

A polynomial stores its terms as a dict from exponent tuple to Fraction, with
zero coefficients stripped on construction. Rings are compared by their
ordered variable names and Laurent flag.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from algebra.errors import (
    ModuleMismatchError,
    PolyParseError,
    RingMismatchError,
    VariableCollisionError,
)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_VARIABLE = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?:\^(-?\d+))?$")
_NUMBER = re.compile(r"^(\d+)(?:/(\d+))?$")


def format_fraction(value: Fraction) -> str:
    """Rational as "p" or "p/q" """
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse "p", "-p" or "p/q" into a Fraction"""
    raw = text.strip()
    sign = 1
    while raw[:1] in ("-", "+"):
        if raw[0] == "-":
            sign = -sign
        raw = raw[1:]
    match = _NUMBER.match(raw)
    if not match:
        raise PolyParseError(f"not a rational number: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise PolyParseError(f"zero denominator in {text!r}")
    return sign * Fraction(num, den)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over the rationals on named variables"""

    variables: Tuple[str, ...] = ()
    laurent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise VariableCollisionError(f"repeated variable in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_field(self) -> bool:
        """True when the ring is the rationals themselves"""
        return self.nvars == 0

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PolyParseError(f"unknown variable {name!r} for ring {self.variables}")

    def zero(self) -> "Poly":
        return Poly(self)

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, value: Scalar) -> "Poly":
        return Poly(self, {(0,) * self.nvars: Fraction(value)})

    def var(self, which: Union[int, str]) -> "Poly":
        idx = self.index(which) if isinstance(which, str) else which
        exps = [0] * self.nvars
        exps[idx] = 1
        return Poly(self, {tuple(exps): Fraction(1)})

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> "Poly":
        return Poly(self, {tuple(exps): Fraction(coeff)})

    def parse(self, text: str) -> "Poly":
        return Poly.parse(text, self)

    def tensor(self, other: "Ring") -> "Ring":
        """Disjoint union of variables; Laurent if either factor is"""
        clash = set(self.variables) & set(other.variables)
        if clash:
            raise VariableCollisionError(f"variables {sorted(clash)} occur in both rings")
        return Ring(self.variables + other.variables, self.laurent or other.laurent)

    def contains(self, other: "Ring") -> bool:
        return set(other.variables) <= set(self.variables) and (self.laurent or not other.laurent)


QQ_RING = Ring()


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Optional[Dict[Sequence[int], Scalar]] = None):
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            value = Fraction(coeff)
            if value == 0:
                continue
            key = tuple(int(e) for e in exps)
            if len(key) != ring.nvars:
                raise RingMismatchError(f"exponent {key} does not fit ring {ring.variables}")
            if not ring.laurent and any(e < 0 for e in key):
                raise PolyParseError(f"negative exponent {key} outside a Laurent ring")
            clean[key] = clean.get(key, Fraction(0)) + value
            if clean[key] == 0:
                del clean[key]
        self.ring = ring
        self.terms = clean

    # ----- coercion -----
    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring.variables} vs {other.ring.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    # ----- arithmetic -----
    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in rhs.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            return Poly(self.ring, {e: c * value for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        rhs = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in rhs.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Poly(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if not self.ring.laurent or len(self.terms) != 1:
                raise ValueError("only monomials of a Laurent ring have negative powers")
            (exps, coeff), = self.terms.items()
            return Poly(self.ring, {tuple(e * n for e in exps): coeff ** n})
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    # ----- calculus -----
    def derivative(self, i: int) -> "Poly":
        """Partial derivative in the i-th variable (integer power rule)"""
        out: Dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            out[key] = out.get(key, Fraction(0)) + coeff * e
        return Poly(self.ring, out)

    def embed(self, ring: Ring) -> "Poly":
        """Same polynomial viewed in a ring with more variables"""
        if ring == self.ring:
            return self
        if not ring.contains(self.ring):
            raise RingMismatchError(f"cannot embed {self.ring.variables} into {ring.variables}")
        slots = [ring.index(v) for v in self.ring.variables]
        out = {}
        for exps, coeff in self.terms.items():
            key = [0] * ring.nvars
            for slot, e in zip(slots, exps):
                key[slot] = e
            out[tuple(key)] = coeff
        return Poly(ring, out)

    # ----- queries -----
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Optional[Fraction]:
        """The rational value of a constant polynomial, None otherwise"""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            return None
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # ----- canonical text -----
    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, highest first"""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(format_fraction(coeff))
                continue
            if coeff == 1:
                prefix = ""
            elif coeff == -1:
                prefix = "-"
            else:
                prefix = format_fraction(coeff) + "*"
            parts.append(prefix + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    @classmethod
    def parse(cls, text: str, ring: Ring) -> "Poly":
        """
        Read a polynomial written with +, -, *, ^ (or **) and p/q rationals

        Args:
            text: Polynomial text, canonical or hand-written
            ring: Ring the variables belong to

        Returns:
            Parsed polynomial
        """
        if not isinstance(text, str):
            raise PolyParseError(f"expected text, got {type(text).__name__}")
        raw = text.replace(" ", "").replace("**", "^")
        if not raw:
            raise PolyParseError("empty polynomial text")
        pieces: List[str] = []
        buf = ""
        for i, ch in enumerate(raw):
            if ch in "+-" and i > 0 and raw[i - 1] not in "^*/+-":
                pieces.append(buf)
                buf = "" if ch == "+" else "-"
            else:
                buf += ch
        pieces.append(buf)
        total = ring.zero()
        for piece in pieces:
            total = total + cls._parse_term(piece, ring, text)
        return total

    @staticmethod
    def _parse_term(piece: str, ring: Ring, source: str) -> "Poly":
        sign = 1
        while piece[:1] in ("+", "-"):
            if piece[0] == "-":
                sign = -sign
            piece = piece[1:]
        if not piece:
            raise PolyParseError(f"dangling sign in {source!r}")
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        for factor in piece.split("*"):
            while factor[:1] == "-":
                coeff = -coeff
                factor = factor[1:]
            if not factor:
                raise PolyParseError(f"empty factor in {source!r}")
            if _NUMBER.match(factor):
                coeff *= parse_fraction(factor)
                continue
            match = _VARIABLE.match(factor)
            if not match:
                raise PolyParseError(f"cannot read factor {factor!r} in {source!r}")
            power = int(match.group(2)) if match.group(2) else 1
            if power < 0 and not ring.laurent:
                raise PolyParseError(f"negative exponent in {source!r} outside a Laurent ring")
            exps[ring.index(match.group(1))] += power
        return Poly(ring, {tuple(exps): coeff})


def _as_poly(ring: Ring, value) -> Poly:
    if isinstance(value, Poly):
        if value.ring != ring:
            raise RingMismatchError(f"{value.ring.variables} vs {ring.variables}")
        return value
    if isinstance(value, str):
        return Poly.parse(value, ring)
    return ring.const(value)


class VectorField:
    """Derivation sum_i p_i d/dx_i of the coefficient ring"""

    __slots__ = ("ring", "components")

    def __init__(self, ring: Ring, components: Sequence):
        comps = tuple(_as_poly(ring, c) for c in components)
        if len(comps) != ring.nvars:
            raise RingMismatchError(f"{len(comps)} components for {ring.nvars} variables")
        self.ring = ring
        self.components = comps

    @classmethod
    def zero(cls, ring: Ring) -> "VectorField":
        return cls(ring, [ring.zero()] * ring.nvars)

    @classmethod
    def partial(cls, ring: Ring, which: Union[int, str]) -> "VectorField":
        idx = ring.index(which) if isinstance(which, str) else which
        return cls(ring, [ring.one() if k == idx else ring.zero() for k in range(ring.nvars)])

    def _check(self, other: "VectorField"):
        if not isinstance(other, VectorField) or other.ring != self.ring:
            raise RingMismatchError("vector fields over different rings")

    def __call__(self, p: Poly) -> Poly:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring.variables} vs {self.ring.variables}")
        out = self.ring.zero()
        for i, comp in enumerate(self.components):
            if comp:
                out = out + comp * p.derivative(i)
        return out

    def commutator(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(
            self.ring,
            [self(b) - other(a) for a, b in zip(self.components, other.components)],
        )

    def compose_product(self, other: "VectorField") -> "VectorField":
        """Coordinate pre-Lie product sum_j X(Y_j) d/dx_j"""
        self._check(other)
        return VectorField(self.ring, [self(c) for c in other.components])

    def __add__(self, other):
        self._check(other)
        return VectorField(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._check(other)
        return VectorField(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.ring, [-a for a in self.components])

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction, Poly)):
            factor = _as_poly(self.ring, scalar)
            return VectorField(self.ring, [factor * a for a in self.components])
        return NotImplemented

    def embed(self, ring: Ring) -> "VectorField":
        comps = [ring.zero()] * ring.nvars
        for name, comp in zip(self.ring.variables, self.components):
            comps[ring.index(name)] = comp.embed(ring)
        return VectorField(ring, comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.ring == other.ring and self.components == other.components

    def __hash__(self):
        return hash((self.ring, self.components))

    def __str__(self) -> str:
        parts = [f"({c})*d/d{v}" for v, c in zip(self.ring.variables, self.components) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


@dataclass(frozen=True)
class FreeModule:
    """Free module over a ring with a named basis"""

    ring: Ring
    basis_names: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basis_names", tuple(self.basis_names))
        if len(set(self.basis_names)) != len(self.basis_names):
            raise ModuleMismatchError(f"repeated basis names in {self.basis_names}")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def zero(self) -> "Element":
        return Element(self, [self.ring.zero()] * self.rank)

    def basis(self, i: int) -> "Element":
        return Element(self, [self.ring.one() if k == i else self.ring.zero() for k in range(self.rank)])

    def element(self, coeffs: Sequence) -> "Element":
        return Element(self, coeffs)

    def direct_sum(self, other: "FreeModule") -> "FreeModule":
        """Basis of self followed by basis of other, primes appended on clashes"""
        if other.ring != self.ring:
            raise RingMismatchError("direct sum of modules over different rings")
        names = list(self.basis_names)
        for name in other.basis_names:
            while name in names:
                name = name + "'"
            names.append(name)
        return FreeModule(self.ring, tuple(names))

    def with_ring(self, ring: Ring) -> "FreeModule":
        return FreeModule(ring, self.basis_names)


class Element:
    """Element of a free module, stored by its coefficient polynomials"""

    __slots__ = ("module", "coeffs")

    def __init__(self, module: FreeModule, coeffs: Sequence):
        values = tuple(_as_poly(module.ring, c) for c in coeffs)
        if len(values) != module.rank:
            raise ModuleMismatchError(f"{len(values)} coefficients for rank {module.rank}")
        self.module = module
        self.coeffs = values

    def _check(self, other):
        if not isinstance(other, Element) or other.module != self.module:
            raise ModuleMismatchError("elements of different modules")

    def __add__(self, other):
        self._check(other)
        return Element(self.module, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.module, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Element(self.module, [-a for a in self.coeffs])

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction, Poly)):
            factor = _as_poly(self.module.ring, scalar)
            return Element(self.module, [factor * a for a in self.coeffs])
        return NotImplemented

    def __getitem__(self, i: int) -> Poly:
        return self.coeffs[i]

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.coeffs)

    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.module == other.module and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.module, self.coeffs))

    def __str__(self) -> str:
        parts = [f"({c})*{n}" for n, c in zip(self.module.basis_names, self.coeffs) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class LinearMap:
    """A-linear map between free modules; rows[i][j] is the i-th coordinate of the image of e_j"""

    __slots__ = ("domain", "codomain", "rows")

    def __init__(self, domain: FreeModule, codomain: FreeModule, rows: Sequence[Sequence]):
        if domain.ring != codomain.ring:
            raise RingMismatchError("linear map between modules over different rings")
        table = tuple(tuple(_as_poly(domain.ring, c) for c in row) for row in rows)
        if len(table) != codomain.rank or any(len(r) != domain.rank for r in table):
            raise ModuleMismatchError(
                f"matrix shape does not match {codomain.rank}x{domain.rank}"
            )
        self.domain = domain
        self.codomain = codomain
        self.rows = table

    @classmethod
    def zero(cls, domain: FreeModule, codomain: FreeModule) -> "LinearMap":
        ring = domain.ring
        return cls(domain, codomain, [[ring.zero()] * domain.rank for _ in range(codomain.rank)])

    @classmethod
    def identity(cls, module: FreeModule) -> "LinearMap":
        return cls.from_columns(module, module, [module.basis(j) for j in range(module.rank)])

    @classmethod
    def from_columns(cls, domain: FreeModule, codomain: FreeModule, columns: Sequence[Element]) -> "LinearMap":
        if len(columns) != domain.rank:
            raise ModuleMismatchError(f"{len(columns)} columns for rank {domain.rank}")
        for col in columns:
            if col.module != codomain:
                raise ModuleMismatchError("column outside the codomain")
        rows = [[columns[j].coeffs[i] for j in range(domain.rank)] for i in range(codomain.rank)]
        return cls(domain, codomain, rows)

    def column(self, j: int) -> Element:
        return Element(self.codomain, [row[j] for row in self.rows])

    def columns(self) -> List[Element]:
        return [self.column(j) for j in range(self.domain.rank)]

    def __call__(self, u: Element) -> Element:
        if u.module != self.domain:
            raise ModuleMismatchError("argument outside the domain")
        ring = self.domain.ring
        out = []
        for row in self.rows:
            acc = ring.zero()
            for a, c in zip(row, u.coeffs):
                if a and c:
                    acc = acc + a * c
            out.append(acc)
        return Element(self.codomain, out)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other"""
        if other.codomain != self.domain:
            raise ModuleMismatchError("maps do not compose")
        return LinearMap.from_columns(other.domain, self.codomain, [self(c) for c in other.columns()])

    def __add__(self, other):
        self._check(other)
        return LinearMap(self.domain, self.codomain,
                         [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return LinearMap(self.domain, self.codomain,
                         [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return LinearMap(self.domain, self.codomain, [[-a for a in r] for r in self.rows])

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction, Poly)):
            factor = _as_poly(self.domain.ring, scalar)
            return LinearMap(self.domain, self.codomain, [[factor * a for a in r] for r in self.rows])
        return NotImplemented

    def _check(self, other):
        if not isinstance(other, LinearMap) or (other.domain, other.codomain) != (self.domain, self.codomain):
            raise ModuleMismatchError("linear maps with different domain or codomain")

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain, self.codomain, self.rows) == (other.domain, other.codomain, other.rows)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.rows))

    def __str__(self) -> str:
        return "; ".join(f"{n} -> {self.column(j)}" for j, n in enumerate(self.domain.basis_names))

    __repr__ = __str__


class DerivationPair:
    """
    Derivation (D, sigma_D) of a free module: D(a u) = a D(u) + sigma_D(a) u.

    linear_part holds the values D(e_j) as columns; symbol is sigma_D.
    """

    __slots__ = ("linear_part", "symbol")

    def __init__(self, linear_part: LinearMap, symbol: VectorField):
        if linear_part.domain != linear_part.codomain:
            raise ModuleMismatchError("derivation pair must act on a single module")
        if symbol.ring != linear_part.domain.ring:
            raise RingMismatchError("symbol and module over different rings")
        self.linear_part = linear_part
        self.symbol = symbol

    @property
    def module(self) -> FreeModule:
        return self.linear_part.domain

    @classmethod
    def zero(cls, module: FreeModule) -> "DerivationPair":
        return cls(LinearMap.zero(module, module), VectorField.zero(module.ring))

    @classmethod
    def from_linear(cls, f: LinearMap) -> "DerivationPair":
        return cls(f, VectorField.zero(f.domain.ring))

    def __call__(self, u: Element) -> Element:
        """Full derivation: sum_j u_j D(e_j) + sigma(u_j) e_j"""
        if u.module != self.module:
            raise ModuleMismatchError("argument outside the module of the derivation")
        return self.linear_part(u) + Element(self.module, [self.symbol(c) for c in u.coeffs])

    def apply(self, a: Poly, u: Element) -> Element:
        return a * self(u) + self.symbol(a) * u

    def commutator(self, other: "DerivationPair") -> "DerivationPair":
        self._check(other)
        cols = [self(other(e)) - other(self(e)) for e in (self.module.basis(j) for j in range(self.module.rank))]
        return DerivationPair(
            LinearMap.from_columns(self.module, self.module, cols),
            self.symbol.commutator(other.symbol),
        )

    def __add__(self, other):
        if isinstance(other, LinearMap):
            other = DerivationPair.from_linear(other)
        self._check(other)
        return DerivationPair(self.linear_part + other.linear_part, self.symbol + other.symbol)

    def __sub__(self, other):
        if isinstance(other, LinearMap):
            other = DerivationPair.from_linear(other)
        self._check(other)
        return DerivationPair(self.linear_part - other.linear_part, self.symbol - other.symbol)

    def __neg__(self):
        return DerivationPair(-self.linear_part, -self.symbol)

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction, Poly)):
            return DerivationPair(scalar * self.linear_part, scalar * self.symbol)
        return NotImplemented

    def _check(self, other):
        if not isinstance(other, DerivationPair) or other.module != self.module:
            raise ModuleMismatchError("derivation pairs on different modules")

    def is_zero(self) -> bool:
        return self.linear_part.is_zero() and self.symbol.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DerivationPair):
            return NotImplemented
        return self.linear_part == other.linear_part and self.symbol == other.symbol

    def __hash__(self):
        return hash((self.linear_part, self.symbol))

    def __str__(self) -> str:
        return f"D[{self.linear_part}] sigma[{self.symbol}]"

    __repr__ = __str__


# ----- functional aliases -----

def poly_arith(op: str, p: Poly, q: Union[Poly, Scalar]) -> Poly:
    """Add, multiply or scale polynomials"""
    if op == "add":
        return p + q
    if op == "mul":
        if not isinstance(q, Poly):
            raise RingMismatchError("mul expects two polynomials; use scale for rationals")
        return p * q
    if op == "scale":
        return p * Fraction(q) if not isinstance(q, Poly) else p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def apply_vector_field(d: VectorField, p: Poly) -> Poly:
    return d(p)


def vf_commutator(d1: VectorField, d2: VectorField) -> VectorField:
    return d1.commutator(d2)


def apply_derivation_pair(dp: DerivationPair, a: Poly, u: Element) -> Element:
    return dp.apply(a, u)


def derivation_pair_commutator(dp1: DerivationPair, dp2: DerivationPair) -> DerivationPair:
    return dp1.commutator(dp2)
