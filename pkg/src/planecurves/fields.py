"""Exact scalar arithmetic over Q, prime fields, and finite extension towers.

Scalars are immutable and carry their field.  Mixed-field operations embed
along the unique tower inclusion when one exists and raise otherwise, so a
wrong-field bug surfaces at the first arithmetic step instead of as a wrong
answer later.

The univariate layer (UniPoly) provides division, gcd, and factorization.
Over a finite field factorization is complete: squarefree decomposition,
then distinct-degree splitting, then equal-degree splitting with a seeded
deterministic random stream.  Over Q only rational roots are split off;
a residual factor of degree >= 2 is returned whole and callers that need
an actual point raise NonRationalPoint.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from random import Random

from .errors import (
    DivisionByZero,
    IncompatibleFields,
    NonRationalPoint,
    ReducibleMinPoly,
    UnsupportedExtension,
    ZeroPolynomial,
)

DEFAULT_FACTOR_SEED = 0

NEG_INF = float("-inf")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the three field kinds."""

    kind = "abstract"

    def scalar(self, value) -> "Scalar":
        raise NotImplementedError

    def zero(self) -> "Scalar":
        return self.scalar(0)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def characteristic(self) -> int:
        raise NotImplementedError

    def order(self):
        """Number of elements, or None for an infinite field."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order() is not None

    def describe(self) -> str:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def elements(self):
        """Iterate all elements in a canonical order (finite fields only)."""
        raise NotImplementedError

    def random_scalar(self, rng: Random) -> "Scalar":
        raise NotImplementedError

    def _normalize(self, value):
        """Bring a raw representation back to canonical form."""
        return value

    def tower_contains(self, other: "Field") -> bool:
        """True when `other` appears in this field's extension tower."""
        cur = self
        while True:
            if cur == other:
                return True
            if isinstance(cur, ExtensionField):
                cur = cur.base
            else:
                return False

    def embed(self, s: "Scalar") -> "Scalar":
        """Lift a scalar from a subfield of the tower into this field."""
        if s.field == self:
            return s
        if not isinstance(self, ExtensionField):
            raise IncompatibleFields(f"{s.field.describe()} !< {self.describe()}")
        inner = self.base.embed(s)
        return Scalar(self, UniPoly(self.base, (inner,), self.gen_name))

    def __repr__(self):
        return self.describe()


class RationalField(Field):
    kind = "rationals"

    def scalar(self, value):
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            raise IncompatibleFields("cannot coerce into Q")
        return Scalar(self, Fraction(value))

    def characteristic(self):
        return 0

    def order(self):
        return None

    def describe(self):
        return "Q"

    def to_json(self):
        return {"kind": "rationals"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def scalar(self, value):
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            raise IncompatibleFields("cannot coerce into " + self.describe())
        if isinstance(value, Fraction):
            num = value.numerator % self.p
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return Scalar(self, num * pow(den, -1, self.p) % self.p)
        return Scalar(self, value % self.p)

    def _normalize(self, value):
        return value % self.p

    def characteristic(self):
        return self.p

    def order(self):
        return self.p

    def describe(self):
        return f"F{self.p}"

    def to_json(self):
        return {"kind": "prime", "p": self.p}

    def elements(self):
        return (Scalar(self, i) for i in range(self.p))

    def random_scalar(self, rng):
        return Scalar(self, rng.randrange(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class ExtensionField(Field):
    """base[z]/(minpoly), with the generator named z1, z2, ... by tower level."""

    kind = "extension"

    def __init__(self, base: Field, minpoly: "UniPoly", gen_name: str):
        self.base = base
        self.gen_name = gen_name
        self.minpoly = UniPoly(base, minpoly.coeffs, gen_name)
        self._describe = f"{base.describe()}[{gen_name}]/({self.minpoly})"

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def scalar(self, value):
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            if self.tower_contains(value.field):
                return self.embed(value)
            raise IncompatibleFields("cannot coerce into " + self.describe())
        return self.embed(self.base.scalar(value))

    def generator(self) -> "Scalar":
        return Scalar(self, UniPoly(self.base, (self.base.zero(), self.base.one()), self.gen_name))

    def _normalize(self, value):
        if value.degree >= self.degree:
            return value % self.minpoly
        return value

    def characteristic(self):
        return self.base.characteristic()

    def order(self):
        return self.base.order() ** self.degree

    def describe(self):
        return self._describe

    def to_json(self):
        return {
            "kind": "extension",
            "base": self.base.to_json(),
            "minpoly": str(self.minpoly),
            "generator": self.gen_name,
        }

    def elements(self):
        base_elems = list(self.base.elements())
        for combo in itertools.product(base_elems, repeat=self.degree):
            yield Scalar(self, UniPoly(self.base, combo, self.gen_name))

    def random_scalar(self, rng):
        coeffs = tuple(self.base.random_scalar(rng) for _ in range(self.degree))
        return Scalar(self, UniPoly(self.base, coeffs, self.gen_name))

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.gen_name == self.gen_name
            and other.base == self.base
            and other.minpoly.coeffs == self.minpoly.coeffs
        )

    def __hash__(self):
        return hash(("ext", self._describe))


def join_fields(a: Field, b: Field) -> Field:
    if a.tower_contains(b):
        return a
    if b.tower_contains(a):
        return b
    raise IncompatibleFields(f"{a.describe()} vs {b.describe()}")


class Scalar:
    """Immutable field element; arithmetic embeds along towers as needed."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def is_zero(self) -> bool:
        if isinstance(self.field, ExtensionField):
            return self.value.is_zero()
        return self.value == 0

    def __bool__(self):
        return not self.is_zero()

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.scalar(other)
        if not isinstance(other, Scalar):
            return None
        if self.field == other.field:
            return self, other
        target = join_fields(self.field, other.field)
        return target.embed(self), target.embed(other)

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Scalar(a.field, a.field._normalize(a.value + b.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field._normalize(-self.value))

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Scalar(a.field, a.field._normalize(a.value - b.value))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Scalar(a.field, a.field._normalize(a.value * b.value))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in " + self.field.describe())
        f = self.field
        if isinstance(f, RationalField):
            return Scalar(f, 1 / self.value)
        if isinstance(f, PrimeField):
            return Scalar(f, pow(self.value, -1, f.p))
        g, s, _ = uni_egcd(self.value, f.minpoly)
        # g is the monic gcd; for an invertible element it is 1.
        return Scalar(f, s % f.minpoly)

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.scalar(other)
            except IncompatibleFields:
                return NotImplemented
        if not isinstance(other, Scalar):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except IncompatibleFields:
            return False
        return a.value == b.value

    def __hash__(self):
        if isinstance(self.field, ExtensionField) and self.value.degree <= 0:
            # constants hash like their base-field image so towers agree
            return hash(self.value.coeffs[0]) if self.value.coeffs else hash(0)
        if isinstance(self.field, PrimeField) or isinstance(self.field, RationalField):
            return hash(self.value)
        return hash(self.value.coeffs)

    def __str__(self):
        return scalar_to_str(self)

    def __repr__(self):
        return f"<{scalar_to_str(self)} in {self.field.describe()}>"


def scalar_to_str(s: Scalar) -> str:
    """Canonical text form: '3', '-5/6', '2' mod p, '2*z1+1' in extensions."""
    if isinstance(s.field, ExtensionField):
        return str(s.value)
    return str(s.value)


def _needs_parens(text: str) -> bool:
    return "+" in text[1:] or "-" in text[1:] or "*" in text


class UniPoly:
    """Dense univariate polynomial over an explicit field.

    Coefficients are stored low degree first with trailing zeros trimmed;
    the zero polynomial has an empty tuple and degree -inf.
    """

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: Field, coeffs, var: str = "t"):
        cs = [c if isinstance(c, Scalar) else field.scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls, field, var="t"):
        return cls(field, (), var)

    @classmethod
    def constant(cls, c: Scalar, var="t"):
        return cls(c.field, (c,), var)

    @classmethod
    def x(cls, field, var="t"):
        return cls(field, (0, 1), var)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one()

    def lc(self) -> Scalar:
        if not self.coeffs:
            raise ZeroPolynomial("leading coefficient of 0")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def _pair(self, other):
        if isinstance(other, Scalar):
            other = UniPoly(other.field, (other,), self.var)
        elif isinstance(other, (int, Fraction)):
            other = UniPoly(self.field, (self.field.scalar(other),), self.var)
        if not isinstance(other, UniPoly):
            return None
        if self.field == other.field:
            return self, other
        target = join_fields(self.field, other.field)
        return self.map_field(target), other.map_field(target)

    def map_field(self, target: Field) -> "UniPoly":
        if target == self.field:
            return self
        return UniPoly(target, tuple(target.embed(c) for c in self.coeffs), self.var)

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly(a.field, [a.coeff(i) + b.coeff(i) for i in range(n)], a.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly(a.field, [a.coeff(i) - b.coeff(i) for i in range(n)], a.var)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        if a.is_zero() or b.is_zero():
            return UniPoly.zero(a.field, a.var)
        out = [a.field.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ca * cb
        return UniPoly(a.field, out, a.var)

    __rmul__ = __mul__

    def __divmod__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        if b.is_zero():
            raise DivisionByZero("polynomial division by zero")
        inv_lead = b.lc().inverse()
        rem = list(a.coeffs)
        db = len(b.coeffs) - 1
        if len(rem) - 1 < db:
            return UniPoly.zero(a.field, a.var), a
        quo = [a.field.zero()] * (len(rem) - db)
        for top in range(len(rem) - 1, db - 1, -1):
            c = rem[top]
            if c.is_zero():
                continue
            q = c * inv_lead
            quo[top - db] = q
            for j in range(db + 1):
                rem[top - db + j] = rem[top - db + j] - q * b.coeffs[j]
        return UniPoly(a.field, quo, a.var), UniPoly(a.field, rem, a.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        result = UniPoly(self.field, (self.field.one(),), self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_mod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly(self.field, (self.field.one(),), self.var) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroPolynomial("monic of 0")
        if self.lc() == self.field.one():
            return self
        inv = self.lc().inverse()
        return UniPoly(self.field, [c * inv for c in self.coeffs], self.var)

    def derivative(self) -> "UniPoly":
        return UniPoly(
            self.field,
            [self.field.scalar(k) * c for k, c in enumerate(self.coeffs)][1:],
            self.var,
        )

    def eval(self, a) -> Scalar:
        a = self.field.scalar(a) if not isinstance(a, Scalar) else a
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def shift(self, a) -> "UniPoly":
        """Return self(t + a)."""
        lin = UniPoly(self.field, (a, self.field.one()), self.var)
        acc = UniPoly.zero(self.field, self.var)
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = UniPoly(self.field, (self.field.scalar(other),), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except IncompatibleFields:
            return False
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            cs = scalar_to_str(c)
            if k == 0:
                parts.append(cs)
                continue
            if cs == "1":
                head = ""
            elif _needs_parens(cs):
                head = f"({cs})*"
            else:
                head = f"{cs}*"
            tail = self.var if k == 1 else f"{self.var}^{k}"
            parts.append(head + tail)
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"UniPoly({self}, {self.field.describe()})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(f, 0) = monic f, gcd(0, 0) = 0."""
    if not isinstance(b, UniPoly):
        b = UniPoly(a.field, (a.field.scalar(b),), a.var)
    a, b = a._pair(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def uni_egcd(a: UniPoly, b: UniPoly):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    field, var = a.field, a.var
    one = UniPoly(field, (field.one(),), var)
    zero = UniPoly.zero(field, var)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lc().inverse()
    scale = UniPoly(field, (inv,), var)
    return r0.monic(), s0 * scale, t0 * scale


def _divisors(n: int) -> list:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _squarefree_decomposition_char0(f: UniPoly):
    result = []
    g = uni_gcd(f, f.derivative())
    w = f // g
    i = 1
    while w.degree >= 1:
        y = uni_gcd(w, g)
        z = w // y
        if z.degree >= 1:
            result.append((z, i))
        w, g = y, g // y
        i += 1
    return result

def _rational_roots_split(g: UniPoly):
    """Split the rational roots off a squarefree monic g over Q.

    Returns (roots, residual) where residual has no rational roots.
    """
    field = g.field
    roots = []
    # strip the root at 0 first
    while g.coeff(0).is_zero() and g.degree >= 1:
        roots.append(field.zero())
        g = g // UniPoly(field, (0, 1), g.var)
    if g.degree < 1:
        return roots, g
    denom_lcm = 1
    for c in g.coeffs:
        denom_lcm = denom_lcm * c.value.denominator // math.gcd(denom_lcm, c.value.denominator)
    ints = [int(c.value * denom_lcm) for c in g.coeffs]
    a0, an = ints[0], ints[-1]
    candidates = []
    for p in _divisors(a0):
        for q in _divisors(an):
            if math.gcd(p, q) == 1:
                candidates.append(Fraction(p, q))
                candidates.append(Fraction(-p, q))
    for cand in candidates:
        if g.degree < 1:
            break
        root = field.scalar(cand)
        if g.eval(root).is_zero():
            roots.append(root)
            g = g // UniPoly(field, (-root, field.one()), g.var)
    return roots, g


def _pth_root(f: UniPoly) -> UniPoly:
    p = f.field.characteristic()
    q = f.field.order()
    inv_frob = q // p
    out = []
    for k, c in enumerate(f.coeffs):
        if k % p:
            if not c.is_zero():
                raise ValueError("not a p-th power")
            continue
        out_k = k // p
        while len(out) <= out_k:
            out.append(f.field.zero())
        out[out_k] = c ** inv_frob
    return UniPoly(f.field, out, f.var)


def _squarefree_decomposition_finite(f: UniPoly):
    p = f.field.characteristic()
    fp = f.derivative()
    if fp.is_zero():
        return [(h, p * m) for h, m in _squarefree_decomposition_finite(_pth_root(f))]
    result = []
    g = uni_gcd(f, fp)
    w = f // g
    i = 1
    while w.degree >= 1:
        y = uni_gcd(w, g)
        z = w // y
        if z.degree >= 1:
            result.append((z, i))
        w, g = y, g // y
        i += 1
    if g.degree >= 1:
        result.extend((h, p * m) for h, m in _squarefree_decomposition_finite(_pth_root(g)))
    return result


def _distinct_degree(f: UniPoly):
    """f monic squarefree; returns [(product of degree-d irreducibles, d)]."""
    q = f.field.order()
    x = UniPoly.x(f.field, f.var)
    out = []
    v = f
    w = x % v
    d = 0
    while v.degree >= 2 * (d + 1):
        d += 1
        w = w.pow_mod(q, v)
        g = uni_gcd(w - x, v)
        if g.degree >= 1:
            out.append((g, d))
            v = v // g
            w = w % v
    if v.degree >= 1:
        out.append((v, int(v.degree)))
    return out


def _equal_degree(f: UniPoly, d: int, rng: Random):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    field = f.field
    q = field.order()
    p = field.characteristic()
    n = int(f.degree)
    one = UniPoly(field, (field.one(),), f.var)
    while True:
        h = UniPoly(field, [field.random_scalar(rng) for _ in range(n)], f.var)
        if h.degree < 1:
            continue
        g = uni_gcd(h, f)
        if 1 <= g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)
        if p == 2:
            k = q.bit_length() - 1  # q = 2^k
            acc = h % f
            cur = h % f
            for _ in range(k * d - 1):
                cur = cur.pow_mod(2, f)
                acc = (acc + cur) % f
            g = uni_gcd(acc, f)
        else:
            w = h.pow_mod((q ** d - 1) // 2, f)
            g = uni_gcd(w - one, f)
        if 1 <= g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def uni_factor(f: UniPoly, seed=None):
    """Factor f into (unit, [(monic factor, multiplicity), ...]).

    The product of the factors with multiplicity, times the unit, is f.
    Over a finite field every factor is irreducible.  Over Q the rational
    roots come off as linear factors and a residual without rational roots
    is returned whole (its full factorization is out of scope here).
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor 0")
    unit = f.lc()
    if f.degree < 1:
        return unit, []
    f = f.monic()
    out = []
    if isinstance(f.field, RationalField):
        for g, m in _squarefree_decomposition_char0(f):
            roots, residual = _rational_roots_split(g)
            for r in roots:
                out.append((UniPoly(f.field, (-r, f.field.one()), f.var), m))
            if residual.degree >= 1:
                out.append((residual, m))
    else:
        rng = Random(DEFAULT_FACTOR_SEED if seed is None else seed)
        for g, m in _squarefree_decomposition_finite(f):
            for h, d in _distinct_degree(g):
                for irr in _equal_degree(h, d, rng):
                    out.append((irr.monic(), m))
    out.sort(key=lambda fm: (fm[0].degree, str(fm[0])))
    return unit, out


def is_irreducible(f: UniPoly) -> bool:
    """Rabin's test over finite fields; root test for degree <= 3 over Q."""
    if f.is_zero() or f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if isinstance(f.field, RationalField):
        if f.degree > 3:
            raise ValueError("irreducibility over Q is only certified up to degree 3")
        roots, _ = _rational_roots_split(f.monic())
        return not roots
    q = f.field.order()
    n = int(f.degree)
    x = UniPoly.x(f.field, f.var)

    def x_power_q_tower(m):
        w = x % f
        for _ in range(m):
            w = w.pow_mod(q, f)
        return w

    prime_divs = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            prime_divs.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        prime_divs.append(m)
    for ell in prime_divs:
        g = uni_gcd(x_power_q_tower(n // ell) - x, f)
        if g.degree >= 1:
            return False
    return (x_power_q_tower(n) - x % f).is_zero()


def extend_field(base: Field, minpoly: UniPoly) -> ExtensionField:
    """Adjoin a root of a monic irreducible polynomial (finite fields only)."""
    if isinstance(base, RationalField):
        raise UnsupportedExtension("extensions of Q are not supported")
    minpoly = minpoly.map_field(base) if minpoly.field != base else minpoly
    if minpoly.degree < 2:
        raise ValueError("minimal polynomial must have degree >= 2")
    if minpoly.lc() != base.one():
        raise ValueError("minimal polynomial must be monic")
    if not is_irreducible(minpoly):
        raise ReducibleMinPoly(str(minpoly))
    level = 1
    cur = base
    while isinstance(cur, ExtensionField):
        level += 1
        cur = cur.base
    return ExtensionField(base, minpoly, f"z{level}")


def find_irreducible(field: Field, degree: int) -> UniPoly:
    """Smallest (in canonical scan order) monic irreducible of given degree."""
    base_elems = list(field.elements())
    for combo in itertools.product(base_elems, repeat=degree):
        f = UniPoly(field, list(combo) + [field.one()])
        if is_irreducible(f):
            return f
    raise RuntimeError("no irreducible found; impossible over a finite field")


def roots_with_extension(f: UniPoly, seed=None):
    """All roots of f with multiplicity, over f's field or a finite extension.

    Returns (field, [(root, multiplicity), ...]).  Over Q an irreducible
    residual of degree >= 2 raises NonRationalPoint; over a finite field the
    tower is extended until f splits into linear factors.
    """
    if f.is_zero():
        raise ZeroPolynomial("roots of 0")
    field = f.field
    while True:
        _, factors = uni_factor(f, seed=seed)
        nonlinear = [g for g, _ in factors if g.degree >= 2]
        if not nonlinear:
            roots = [(-g.coeff(0), m) for g, m in factors]
            roots.sort(key=lambda rm: str(rm[0]))
            return field, roots
        if isinstance(field, RationalField):
            raise NonRationalPoint(str(nonlinear[0]))
        field = extend_field(field, nonlinear[0])
        f = f.map_field(field)
