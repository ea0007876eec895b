"""Explicit rank-4 Hopf algebras over Z[1/N] and checks of their group laws.

A presentation has coordinate variables (x, y) subject to rewrite rules
x^2 -> r_x(x, y) and y^2 -> r_y(y), so every element has a unique normal
form in the basis {1, x, y, xy}.  The group law is a pair of polynomials
in two copies (x, y), (w, z) of the coordinates.
"""

from __future__ import annotations

import ast
import json
import operator
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from .arith.integers import factorint, squarefree_class
from .errors import DataFileError, DomainError, ResourceError, UnsupportedCaseError

Monomial = tuple  # exponent tuple


class CoefficientDomainError(DomainError):
    """A coefficient has a denominator not supported by the inverted integer."""


# -- polynomials ------------------------------------------------------------

class MPoly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, nvars: int, c) -> MPoly:
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise DomainError("polynomials in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.nvars, {m: c / other for m, c in self.terms.items()})
        if isinstance(other, MPoly) and other.is_constant():
            return self / other.constant_term()
        raise DomainError("division by a non-constant polynomial")

    def __rtruediv__(self, other):
        if self.is_constant():
            return MPoly.const(self.nvars, Fraction(other) / self.constant_term())
        raise DomainError("division by a non-constant polynomial")

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        out = MPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficients(self):
        return self.terms.values()

    def __repr__(self):
        return f"MPoly({self.terms})"


# -- restricted expression evaluation ---------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def evaluate_expression(text: str, names: Mapping[str, object]):
    """Evaluate +, -, *, /, ** on integers and the given names.

    ``^`` is accepted as a synonym for ``**``.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse {text!r}: {exc}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise DomainError(f"unknown name {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = ev(node.right)
                if not (isinstance(exp, Fraction) and exp.denominator == 1 and exp >= 0):
                    raise DomainError(f"bad exponent in {text!r}")
                return ev(node.left) ** int(exp)
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise DomainError(f"operator not allowed in {text!r}")
            return op(ev(node.left), ev(node.right))
        raise DomainError(f"unsupported syntax in {text!r}")

    return ev(tree)


# -- presentations -----------------------------------------------------------

def _check_domain(poly: MPoly, inverted: int, what: str):
    allowed = set(factorint(inverted)) if abs(inverted) > 1 else set()
    for c in poly.coefficients():
        if c.denominator > 1 and not set(factorint(c.denominator)) <= allowed:
            raise CoefficientDomainError(f"{what}: coefficient {c} not in Z[1/{inverted}]")


@dataclass(frozen=True)
class HopfPresentation:
    """R[v_1..v_d]/(v_i^2 - rule_i) with a group law, R = Z[1/inverted].

    ``rules[i]`` and the law components are MPolys in ``copies`` blocks of
    d variables; rules use block 0, laws use blocks 0 and 1.  Rules must
    only involve variables of index <= i so rewriting terminates.
    """

    name: str
    inverted: int
    variables: tuple[str, ...]
    rules: tuple[MPoly, ...]
    law: tuple[MPoly, ...]
    n: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return len(self.variables)

    def __post_init__(self):
        for r in self.rules:
            _check_domain(r, self.inverted, f"{self.name} relation")
        for s in self.law:
            _check_domain(s, self.inverted, f"{self.name} law")

    def with_law(self, law: Sequence[MPoly], name: str | None = None) -> HopfPresentation:
        return HopfPresentation(name or self.name, self.inverted, self.variables, self.rules, tuple(law), self.n,
                                self.meta)


class HopfRing:
    """The tensor power A^{(x) copies} with reduction to normal form."""

    def __init__(self, pres: HopfPresentation, copies: int):
        self.pres = pres
        self.copies = copies
        self.d = pres.dim
        self.nvars = self.d * copies
        self._cache: dict = {}

    def var(self, copy: int, j: int) -> MPoly:
        return MPoly.var(self.nvars, copy * self.d + j)

    def point(self, copy: int) -> list[MPoly]:
        return [self.var(copy, j) for j in range(self.d)]

    def zero_point(self) -> list[MPoly]:
        return [MPoly(self.nvars) for _ in range(self.d)]

    def embed(self, poly: MPoly, copy_map: Sequence[int]) -> MPoly:
        """Move a polynomial in k blocks into this ring: block b -> copy_map[b]."""
        out = {}
        for m, c in poly.terms.items():
            e = [0] * self.nvars
            for b in range(len(m) // self.d):
                for j in range(self.d):
                    e[copy_map[b] * self.d + j] += m[b * self.d + j]
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return MPoly(self.nvars, out)

    def _reduce_block(self, exps: tuple[int, ...]) -> MPoly:
        """Normal form of a single-block monomial, as a 1-block MPoly."""
        if exps in self._cache:
            return self._cache[exps]
        d = self.d
        if all(e < 2 for e in exps):
            res = MPoly(d, {exps: Fraction(1)})
        else:
            # reduce the highest-index variable with exponent >= 2 first
            j = max(i for i, e in enumerate(exps) if e >= 2)
            rest = list(exps)
            rest[j] -= 2
            res = MPoly(d)
            rule = self.pres.rules[j]
            for m, c in rule.terms.items():
                combined = tuple(a + b for a, b in zip(rest, m))
                res = res + self._reduce_block(combined) * c
        self._cache[exps] = res
        return res

    def normal_form(self, poly: MPoly) -> MPoly:
        d = self.d
        out: dict = {}
        for m, c in poly.terms.items():
            parts = [self._reduce_block(tuple(m[b * d:(b + 1) * d])) for b in range(self.copies)]
            acc = {(): c}
            for part in parts:
                nxt = {}
                for pre, pc in acc.items():
                    for mm, mc in part.terms.items():
                        key = pre + mm
                        nxt[key] = nxt.get(key, 0) + pc * mc
                acc = nxt
            for key, v in acc.items():
                out[key] = out.get(key, 0) + v
        res = MPoly(self.nvars, out)
        _check_domain(res, self.pres.inverted, self.pres.name)
        return res

    def mul(self, a: MPoly, b: MPoly) -> MPoly:
        return self.normal_form(a * b)

    def substitute(self, poly: MPoly, images: Sequence[MPoly]) -> MPoly:
        """Evaluate a polynomial whose variable i is replaced by images[i] (elements here)."""
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = MPoly.const(self.nvars, 1) if e == 0 else self.mul(power(i, e - 1), images[i])
            return powers[key]

        acc = MPoly(self.nvars)
        for m, c in poly.terms.items():
            t = MPoly.const(self.nvars, c)
            for i, e in enumerate(m):
                if e:
                    t = self.mul(t, power(i, e))
            acc = acc + t
        return self.normal_form(acc)

    def add_points(self, p: Sequence[MPoly], q: Sequence[MPoly]) -> list[MPoly]:
        """Group law applied to two points with coordinates in this ring."""
        images = list(p) + list(q)
        return [self.substitute(s, images) for s in self.pres.law]


def rewrite_stepwise(poly: MPoly, pres: HopfPresentation, copies: int, strategy: str | int = "low") -> MPoly:
    """Normal form by single rewrite steps in a chosen order.

    ``strategy`` is "low" (lowest variable index first), "high", or an
    integer seed for a random choice among reducible positions.
    """
    d = pres.dim
    rng = random.Random(strategy) if isinstance(strategy, int) else None
    terms = dict(poly.terms)
    while True:
        candidates = [(m, i) for m in terms for i, e in enumerate(m) if e >= 2]
        if not candidates:
            return MPoly(poly.nvars, terms)
        if rng is not None:
            m, i = rng.choice(sorted(candidates))
        elif strategy == "high":
            m, i = max(candidates, key=lambda t: (t[1], t[0]))
        else:
            m, i = min(candidates, key=lambda t: (t[1], t[0]))
        c = terms.pop(m)
        block, j = divmod(i, d)
        rest = list(m)
        rest[i] -= 2
        for rm, rc in pres.rules[j].terms.items():
            e = list(rest)
            for k, a in enumerate(rm):
                e[block * d + k] += a
            key = tuple(e)
            terms[key] = terms.get(key, 0) + c * rc
            if not terms[key]:
                del terms[key]


def perturb_law(pres: HopfPresentation, component: int, term: str) -> HopfPresentation:
    """Add ``term`` (in the two coordinate blocks) to one law component."""
    names = pres.variables + tuple(pres.meta.get("second_copy", ()))
    extra = _parse_poly(term, names, {"n": Fraction(pres.n or 0)})
    law = list(pres.law)
    law[component] = law[component] + extra
    return pres.with_law(law, f"{pres.name} + {term}")


def normal_form(poly: MPoly, pres: HopfPresentation) -> MPoly:
    copies = poly.nvars // pres.dim
    return HopfRing(pres, copies).normal_form(poly)


# -- law checks --------------------------------------------------------------

def check_identity(pres: HopfPresentation) -> bool:
    """(x, y) + (0, 0) reduces to (x, y)."""
    ring = HopfRing(pres, 1)
    p = ring.point(0)
    return ring.add_points(p, ring.zero_point()) == p


def check_commutativity(pres: HopfPresentation) -> bool:
    ring = HopfRing(pres, 2)
    a, b = ring.point(0), ring.point(1)
    return ring.add_points(a, b) == ring.add_points(b, a)


def check_law_is_morphism(pres: HopfPresentation) -> bool:
    """The law components satisfy the relations, so the law is an algebra map A -> A (x) A."""
    ring = HopfRing(pres, 2)
    law = ring.add_points(ring.point(0), ring.point(1))
    for j in range(pres.dim):
        if ring.mul(law[j], law[j]) != ring.substitute(ring.embed(pres.rules[j], [0]), law):
            return False
    return True


def check_coassociativity(pres: HopfPresentation) -> bool:
    """((a+b)+c) = (a+(b+c)) in three coordinate blocks.

    Composing the law with itself is only meaningful when the law is a
    well-defined algebra map, so that is checked first.
    """
    if not check_law_is_morphism(pres):
        return False
    ring = HopfRing(pres, 3)
    a, b, c = ring.point(0), ring.point(1), ring.point(2)
    left = ring.add_points(ring.add_points(a, b), c)
    right = ring.add_points(a, ring.add_points(b, c))
    return left == right


def annihilation_order(pres: HopfPresentation, cap: int = 16) -> int:
    """Smallest 2^k with [2^k](x, y) = (0, 0), by repeated doubling."""
    ring = HopfRing(pres, 1)
    p = ring.point(0)
    zero = ring.zero_point()
    order = 1
    while order < cap:
        p = ring.add_points(p, p)
        order *= 2
        if p == zero:
            return order
    raise ResourceError(f"{pres.name}: not annihilated by {cap}")


def _roots_of_rule(rule: Sequence[Fraction]) -> tuple[list[Fraction], int]:
    """Roots of v^2 = a v + b, and the square class of its discriminant."""
    a, b = rule
    disc = a * a + 4 * b
    cls = squarefree_class(disc) if disc else 1
    if cls != 1:
        return [], cls
    from math import isqrt

    num, den = disc.numerator, disc.denominator
    r = Fraction(isqrt(num), isqrt(den))
    return sorted({(a + r) / 2, (a - r) / 2}), 1


def point_field_class(pres: HopfPresentation) -> int:
    """Square class d such that all points lie in Q(sqrt d), 1 if rational."""
    if pres.dim != 2:
        raise UnsupportedCaseError("point fields are implemented for two coordinates")
    rx, ry = pres.rules
    # y^2 = a y + b
    a = ry.terms.get((0, 1), Fraction(0))
    b = ry.terms.get((0, 0), Fraction(0))
    if any(m[0] for m in ry.terms):
        raise UnsupportedCaseError("y-rule must not involve x")
    ys, cls_y = _roots_of_rule((a, b))
    if cls_y != 1:
        raise UnsupportedCaseError("y-coordinates are irrational")
    classes = set()
    for y0 in ys:
        # x^2 = alpha(y0) x + beta(y0)
        alpha = sum((c * y0 ** m[1] for m, c in rx.terms.items() if m[0] == 1), Fraction(0))
        beta = sum((c * y0 ** m[1] for m, c in rx.terms.items() if m[0] == 0), Fraction(0))
        if any(m[0] > 1 for m in rx.terms):
            raise UnsupportedCaseError("x-rule must be linear in x")
        _, cls = _roots_of_rule((alpha, beta))
        if cls != 1:
            classes.add(cls)
    if not classes:
        return 1
    if len(classes) > 1:
        raise UnsupportedCaseError(f"points generate a biquadratic field: {sorted(classes)}")
    return classes.pop()


@dataclass(frozen=True)
class HopfMap:
    """Algebra map A_source -> A_target given on coordinates."""

    source: HopfPresentation
    target: HopfPresentation
    images: tuple[MPoly, ...]  # one per source variable, in one target block


def check_hopf_map(hmap: HopfMap) -> bool:
    """Ring map (relations go to 0), counit and comultiplication compatible."""
    src, tgt = hmap.source, hmap.target
    ring1 = HopfRing(tgt, 1)
    images = [ring1.normal_form(im) for im in hmap.images]
    for j in range(src.dim):
        lhs = ring1.mul(images[j], images[j])
        rhs = ring1.substitute(src.rules[j], images)
        if lhs != rhs:
            return False
    zero = ring1.zero_point()
    if any(not ring1.substitute(im, zero).is_zero() for im in images):
        return False
    ring2 = HopfRing(tgt, 2)
    im_a = [ring2.embed(im, [0]) for im in images]
    im_b = [ring2.embed(im, [1]) for im in images]
    law_t = ring2.add_points(ring2.point(0), ring2.point(1))
    for j in range(src.dim):
        lhs = ring2.substitute(src.law[j], im_a + im_b)
        rhs = ring2.substitute(ring2.embed(images[j], [0]), law_t)
        if lhs != rhs:
            return False
    return True


def check_sequence_maps(family: HopfFamily, n: int) -> bool:
    """Sub and quotient maps of the family's exact sequence are Hopf maps."""
    return all(check_hopf_map(m) for m in family.sequence_maps(n))


@dataclass(frozen=True)
class LawReport:
    identity: bool
    commutativity: bool
    morphism: bool
    coassociativity: bool
    annihilation_order: int | None
    point_field_class: int | None

    @property
    def passed(self) -> bool:
        return self.identity and self.commutativity and self.coassociativity


def law_report(pres: HopfPresentation) -> LawReport:
    ok = [check_identity(pres), check_commutativity(pres), check_law_is_morphism(pres)]
    coassoc = check_coassociativity(pres)
    order = cls = None
    if all(ok) and coassoc:
        order = annihilation_order(pres)
        cls = point_field_class(pres)
    return LawReport(ok[0], ok[1], ok[2], coassoc, order, cls)


def ext_mu_dimension(p: int, ell: int) -> int:
    """dim Ext^1(mu_ell, Z/ell) over Z[1/p]: 1 iff (p^2 - 1)/24 = 0 mod ell."""
    from .arith.finite_field import is_prime

    if p <= 3:
        raise DomainError("p must exceed 3")
    if not (is_prime(p) and is_prime(ell)) or p == ell:
        raise DomainError("p and ell must be distinct primes")
    return 1 if ((p * p - 1) // 24) % ell == 0 else 0


# -- catalog -----------------------------------------------------------------

def _parse_poly(text: str, var_names: Sequence[str], names: Mapping[str, object]) -> MPoly:
    nv = len(var_names)
    env = dict(names)
    for i, v in enumerate(var_names):
        env[v] = MPoly.var(nv, i)
    val = evaluate_expression(text, env)
    if isinstance(val, Fraction):
        return MPoly.const(nv, val)
    return val


@dataclass(frozen=True)
class HopfFamily:
    """A catalog entry: presentations parametrized by an integer n."""

    key: str
    name: str
    data: dict

    def _build(self, entry: dict, n: int) -> HopfPresentation:
        names = {"n": Fraction(n)}
        inverted = int(evaluate_expression(entry.get("inverted", "1"), names))
        variables = tuple(entry["variables"])
        second = tuple(entry["second_copy"])
        rules = tuple(_parse_poly(entry["rules"][v], variables, names) for v in variables)
        law = tuple(_parse_poly(entry["law"][v], variables + second, names) for v in variables)
        return HopfPresentation(entry.get("name", self.name), inverted, variables, rules, law, n, dict(entry))

    def variant(self, law: Mapping[str, str] | None = None, name: str | None = None) -> HopfFamily:
        """Same family with some law components replaced (for negative controls)."""
        data = dict(self.data)
        data["law"] = {**self.data["law"], **(law or {})}
        if name:
            data["name"] = name
        return HopfFamily(self.key, name or self.name, data)

    def presentation(self, n: int) -> HopfPresentation:
        if n == 0:
            raise DomainError("n must be nonzero")
        return self._build(self.data, n)

    def auxiliary(self, key: str, n: int) -> HopfPresentation:
        aux = dict(self.data["auxiliary"][key])
        aux.setdefault("inverted", self.data.get("inverted", "1"))
        return self._build(aux, n)

    def sequence_maps(self, n: int, quotient_images: Mapping[str, str] | None = None) -> list[HopfMap]:
        pres = self.presentation(n)
        names = {"n": Fraction(n)}
        out = []
        sub = self.data["sub"]
        sub_pres = self.auxiliary(sub["presentation"], n)
        images = tuple(_parse_poly(sub["images"][v], sub_pres.variables, names) for v in pres.variables)
        out.append(HopfMap(pres, sub_pres, images))
        quo = self.data["quotient"]
        quo_pres = self.auxiliary(quo["presentation"], n)
        qi = quotient_images or quo["images"]
        images = tuple(_parse_poly(qi[v], pres.variables, names) for v in quo_pres.variables)
        out.append(HopfMap(quo_pres, pres, images))
        return out

    @property
    def expected_order(self) -> int:
        return int(self.data["annihilation_order"])

    def expected_point_class(self, n: int) -> int:
        return squarefree_class(evaluate_expression(self.data["point_field"], {"n": Fraction(n)}))


def load_catalog(path: str | Path) -> dict[str, HopfFamily]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise DataFileError(path, f"unreadable catalog: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DataFileError(path, f"invalid JSON: {exc}") from None
    out = {}
    try:
        for entry in data["families"]:
            fam = HopfFamily(entry["key"], entry["name"], entry)
            fam.presentation(1)  # parse eagerly so bad files fail at load time
            out[fam.key] = fam
    except (KeyError, TypeError, DomainError) as exc:
        raise DataFileError(path, f"bad catalog entry: {exc!r}") from None
    return out


@lru_cache(maxsize=None)
def default_catalog() -> dict[str, HopfFamily]:
    from .data import data_path

    return load_catalog(data_path("hopf", "presentations.json"))
