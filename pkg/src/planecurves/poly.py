"""Sparse multivariate polynomials and coordinate changes.

Polynomials are exponent-tuple -> Scalar maps over an explicit field, in
affine variables (x, y) or homogeneous ones (X, Y, Z).  Blow-up charts
additionally use (x, t).  Everything here is exact; there is no floating
point anywhere in the package.

The text format round-trips: str() output reparses to an identical
polynomial (same field, same terms).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotSuitable, ZeroPolynomial
from .fields import (
    NEG_INF,
    ExtensionField,
    Field,
    RationalField,
    Scalar,
    UniPoly,
    extend_field,
    find_irreducible,
    join_fields,
    scalar_to_str,
    uni_gcd,
)

AFFINE = ("x", "y")
CHART = ("x", "t")
PROJECTIVE = ("X", "Y", "Z")


class MultiPoly:
    """Immutable sparse polynomial in named variables over a field."""

    __slots__ = ("field", "variables", "terms")

    def __init__(self, field: Field, variables, terms):
        variables = tuple(variables)
        clean = {}
        for exps, c in terms.items():
            if not isinstance(c, Scalar):
                c = field.scalar(c)
            elif c.field != field:
                c = field.embed(c) if field.tower_contains(c.field) else field.scalar(c)
            if len(exps) != len(variables):
                raise ValueError("exponent arity does not match variables")
            if not c.is_zero():
                key = tuple(int(e) for e in exps)
                clean[key] = clean[key] + c if key in clean else c
        clean = {k: v for k, v in clean.items() if not v.is_zero()}
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls, field, variables=AFFINE):
        return cls(field, variables, {})

    @classmethod
    def constant(cls, field, c, variables=AFFINE):
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, field, name, variables=AFFINE):
        exps = [0] * len(variables)
        exps[list(variables).index(name)] = 1
        return cls(field, variables, {tuple(exps): field.one()})

    # ---- basic queries ----

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def min_total_degree(self):
        return min((sum(e) for e in self.terms), default=NEG_INF)

    def degree_in(self, name: str):
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coeff(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), self.field.zero())

    def constant_term(self) -> Scalar:
        return self.coeff((0,) * len(self.variables))

    # ---- arithmetic ----

    def _pair(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = MultiPoly.constant(
                other.field if isinstance(other, Scalar) else self.field,
                other,
                self.variables,
            )
        if not isinstance(other, MultiPoly):
            return None
        if other.variables != self.variables:
            raise ValueError(
                f"variable mismatch: {self.variables} vs {other.variables}"
            )
        if self.field == other.field:
            return self, other
        target = join_fields(self.field, other.field)
        return self.map_field(target), other.map_field(target)

    def map_field(self, target: Field) -> "MultiPoly":
        if target == self.field:
            return self
        return MultiPoly(
            target,
            self.variables,
            {e: target.embed(c) for e, c in self.terms.items()},
        )

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(a.field, a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        out = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                c = ca * cb
                out[e] = out[e] + c if e in out else c
        return MultiPoly(a.field, a.variables, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiPoly.constant(self.field, self.field.one(), self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = MultiPoly.constant(self.field, self.field.scalar(other), self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except Exception:
            return False
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # ---- calculus and forms ----

    def derivative(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            k = self.field.scalar(e[i]) * c
            if k.is_zero():
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = k
        return MultiPoly(self.field, self.variables, out)

    def form_of_degree(self, d: int) -> "MultiPoly":
        return MultiPoly(
            self.field,
            self.variables,
            {e: c for e, c in self.terms.items() if sum(e) == d},
        )

    def mult_at_origin(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("multiplicity of the zero polynomial")
        return int(self.min_total_degree())

    def lowest_form(self) -> "MultiPoly":
        return self.form_of_degree(self.mult_at_origin())

    # ---- substitution ----

    def evaluate(self, values: dict) -> Scalar:
        vals = []
        for v in self.variables:
            a = values[v]
            vals.append(a if isinstance(a, Scalar) else self.field.scalar(a))
        acc = None
        for e, c in self.terms.items():
            term = c
            for a, k in zip(vals, e):
                if k:
                    term = term * a ** k
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.field.zero()

    def substitute(self, repl: dict, variables=None) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Unreplaced variables must exist in the target variable tuple, which
        defaults to this polynomial's own.
        """
        variables = tuple(variables) if variables is not None else self.variables
        field = self.field
        images = {}
        for v in self.variables:
            img = repl.get(v)
            if img is None:
                img = MultiPoly.var(field, v, variables)
            elif isinstance(img, (int, Fraction, Scalar)):
                img = MultiPoly.constant(
                    img.field if isinstance(img, Scalar) else field, img, variables
                )
            field = join_fields(field, img.field)
            images[v] = img
        base = self.map_field(field)
        images = {v: p.map_field(field) for v, p in images.items()}
        powers = {v: {0: MultiPoly.constant(field, field.one(), variables)} for v in images}

        def power(v, k):
            cache = powers[v]
            if k not in cache:
                cache[k] = power(v, k - 1) * images[v]
            return cache[k]

        acc = MultiPoly.zero(field, variables)
        for e, c in base.terms.items():
            term = MultiPoly.constant(field, c, variables)
            for v, k in zip(self.variables, e):
                if k:
                    term = term * power(v, k)
            acc = acc + term
        return acc

    def rename(self, variables) -> "MultiPoly":
        variables = tuple(variables)
        if len(variables) != len(self.variables):
            raise ValueError("rename must preserve arity")
        return MultiPoly(self.field, variables, dict(self.terms))

    # ---- printing ----

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e)))
        parts = []
        for e in keys:
            c = self.terms[e]
            cs = scalar_to_str(c)
            vars_part = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.variables, e)
                if k
            )
            if not vars_part:
                parts.append(cs if not _needs_parens(cs) else f"({cs})")
            elif cs == "1":
                parts.append(vars_part)
            elif cs == "-1":
                parts.append("-" + vars_part)
            elif _needs_parens(cs):
                parts.append(f"({cs})*{vars_part}")
            else:
                parts.append(f"{cs}*{vars_part}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"MultiPoly({self}, {self.field.describe()}, vars={self.variables})"


def _needs_parens(text: str) -> bool:
    return "+" in text[1:] or "-" in text[1:] or "*" in text


# ---------------------------------------------------------------------------
# curve-level operations
# ---------------------------------------------------------------------------


def mult_at_origin(F: MultiPoly) -> int:
    return F.mult_at_origin()


def lowest_form(F: MultiPoly) -> MultiPoly:
    return F.lowest_form()


def translate(F: MultiPoly, a, b) -> MultiPoly:
    """F(x + a, y + b): move the point (a, b) to the origin."""
    x, y = F.variables
    fa = a if isinstance(a, Scalar) else F.field.scalar(a)
    fb = b if isinstance(b, Scalar) else F.field.scalar(b)
    field = join_fields(join_fields(F.field, fa.field), fb.field)
    xv = MultiPoly.var(field, x, F.variables)
    yv = MultiPoly.var(field, y, F.variables)
    return F.substitute({x: xv + fa, y: yv + fb})


def homogenize(F: MultiPoly) -> MultiPoly:
    """(x, y) -> (X, Y, Z) with Z carrying the degree."""
    if len(F.variables) != 2:
        raise ValueError("homogenize expects an affine polynomial")
    if F.is_zero():
        return MultiPoly.zero(F.field, PROJECTIVE)
    n = int(F.total_degree())
    out = {}
    for (i, j), c in F.terms.items():
        out[(i, j, n - i - j)] = c
    return MultiPoly(F.field, PROJECTIVE, out)


def dehomogenize(F: MultiPoly, chart: str = "Z") -> MultiPoly:
    """Set one projective variable to 1; the other two become (x, y).

    chart Z: (X, Y) -> (x, y); chart Y: (X, Z) -> (x, y);
    chart X: (Y, Z) -> (x, y).
    """
    if len(F.variables) != 3:
        raise ValueError("dehomogenize expects a homogeneous polynomial")
    idx = F.variables.index(chart)
    keep = [i for i in range(3) if i != idx]
    out = {}
    for e, c in F.terms.items():
        key = (e[keep[0]], e[keep[1]])
        out[key] = out[key] + c if key in out else c
    return MultiPoly(F.field, AFFINE, out)


# ---------------------------------------------------------------------------
# coordinate changes
# ---------------------------------------------------------------------------


class CoordChange:
    """A composition of invertible primitive substitutions.

    Steps act left to right on polynomials.  Supported primitives:
    ("translate", a, b), ("shear", lam) for x -> x + lam*y, ("swap",),
    and ("chart", shift) which is bookkeeping for a blow-down and acts as
    the identity on polynomials.
    """

    __slots__ = ("steps",)

    def __init__(self, steps=()):
        object.__setattr__(self, "steps", tuple(steps))

    def __setattr__(self, *a):
        raise AttributeError("CoordChange is immutable")

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def shear(cls, lam):
        return cls((("shear", lam),))

    @classmethod
    def translation(cls, a, b):
        return cls((("translate", a, b),))

    @classmethod
    def swap(cls):
        return cls((("swap",),))

    @classmethod
    def chart_note(cls, shift):
        return cls((("chart", shift),))

    def is_identity(self):
        return all(s[0] == "chart" for s in self.steps)

    def then(self, other: "CoordChange") -> "CoordChange":
        return CoordChange(self.steps + other.steps)

    def apply(self, F: MultiPoly) -> MultiPoly:
        for step in self.steps:
            F = _apply_step(step, F)
        return F

    def inverse(self) -> "CoordChange":
        inv = []
        for step in reversed(self.steps):
            kind = step[0]
            if kind == "translate":
                inv.append(("translate", -step[1], -step[2]))
            elif kind == "shear":
                inv.append(("shear", -step[1]))
            elif kind == "swap":
                inv.append(("swap",))
            else:
                inv.append(step)
        return CoordChange(inv)

    def to_json(self):
        out = []
        for step in self.steps:
            if step[0] == "translate":
                out.append({"kind": "translate", "a": str(step[1]), "b": str(step[2])})
            elif step[0] == "shear":
                out.append({"kind": "shear", "lambda": str(step[1])})
            elif step[0] == "swap":
                out.append({"kind": "swap"})
            else:
                out.append({"kind": "chart", "shift": str(step[1])})
        return out

    def __repr__(self):
        return f"CoordChange({self.to_json()})"


def _apply_step(step, F: MultiPoly) -> MultiPoly:
    kind = step[0]
    x, y = F.variables
    if kind == "translate":
        return translate(F, step[1], step[2])
    if kind == "shear":
        lam = step[1]
        xv = MultiPoly.var(F.field, x, F.variables)
        yv = MultiPoly.var(F.field, y, F.variables)
        return F.substitute({x: xv + yv * lam})
    if kind == "swap":
        return F.substitute(
            {x: MultiPoly.var(F.field, y, F.variables), y: MultiPoly.var(F.field, x, F.variables)}
        )
    return F  # chart note: identity on polynomials


def is_suitable(F: MultiPoly) -> bool:
    """True when the lowest form does not vanish at (x, y) = (0, 1)."""
    L = F.lowest_form()
    x, y = F.variables
    return not L.evaluate({x: 0, y: 1}).is_zero()


def _shear_candidates(field: Field):
    if isinstance(field, RationalField):
        def gen():
            yield field.zero()
            k = 1
            while True:
                yield field.scalar(k)
                yield field.scalar(-k)
                k += 1
        return gen()
    return field.elements()


def make_suitable_many(polys):
    """One shear making every polynomial in the list suitable at once.

    Returns (sheared polys, CoordChange, field).  Over a finite field the
    tower is extended when no element of the current field works; over Q a
    working integer always exists.
    """
    field = polys[0].field
    for p in polys[1:]:
        field = join_fields(field, p.field)
    polys = [p.map_field(field) for p in polys]
    for p in polys:
        if p.is_zero():
            raise ZeroPolynomial("cannot shear the zero polynomial")

    while True:
        forms = [p.lowest_form() for p in polys]
        x, y = polys[0].variables
        limit = sum(int(p.total_degree()) for p in polys) + 2
        count = 0
        for lam in _shear_candidates(field):
            count += 1
            if all(not L.evaluate({x: lam, y: field.one()}).is_zero() for L in forms):
                if lam.is_zero():
                    return polys, CoordChange.identity(), field
                change = CoordChange.shear(lam)
                return [change.apply(p) for p in polys], change, field
            if not field.is_finite and count > limit:
                raise NotSuitable("no rational shear found; impossible")
        # finite field exhausted: grow the tower and rescan
        field = extend_field(field, find_irreducible(field, 2))
        polys = [p.map_field(field) for p in polys]


def make_suitable(F: MultiPoly):
    """Shear x -> x + lam*y until the chart at [1:0] captures all tangents.

    Returns (G, change) with G = change.apply(F); the change is the identity
    when F is already suitable.
    """
    if F.is_zero():
        raise ZeroPolynomial("cannot make the zero polynomial suitable")
    if is_suitable(F):
        return F, CoordChange.identity()
    sheared, change, _ = make_suitable_many([F])
    return sheared[0], change


# ---------------------------------------------------------------------------
# bivariate gcd and resultants (UniPoly-coefficient representation)
# ---------------------------------------------------------------------------


def biv_coeffs(F: MultiPoly, main: str) -> list:
    """F as a polynomial in `main` with UniPoly coefficients in the other var."""
    if len(F.variables) != 2:
        raise ValueError("expected a polynomial in two variables")
    mi = F.variables.index(main)
    ci = 1 - mi
    co = F.variables[ci]
    dm = F.degree_in(main)
    n = 0 if dm == NEG_INF else int(dm)
    rows = [dict() for _ in range(n + 1)]
    for e, c in F.terms.items():
        rows[e[mi]][e[ci]] = c
    out = []
    for row in rows:
        if row:
            deg = max(row)
            coeffs = [row.get(k, F.field.zero()) for k in range(deg + 1)]
        else:
            coeffs = []
        out.append(UniPoly(F.field, coeffs, co))
    return out


def from_biv_coeffs(field, coeffs, main: str, variables) -> MultiPoly:
    mi = list(variables).index(main)
    terms = {}
    for k, u in enumerate(coeffs):
        for j, c in enumerate(u.coeffs):
            if c.is_zero():
                continue
            e = [0, 0]
            e[mi] = k
            e[1 - mi] = j
            terms[tuple(e)] = c
    return MultiPoly(field, variables, terms)


def _uni_list_trim(cs):
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _pseudo_rem(A: list, B: list, field, var) -> list:
    """Pseudo-remainder of UniPoly-coefficient lists (main-variable dense)."""
    A = list(A)
    db = len(B) - 1
    lb = B[-1]
    while len(A) - 1 >= db and A:
        la = A[-1]
        shift = len(A) - 1 - db
        A = [c * lb for c in A]
        for j in range(db + 1):
            A[shift + j] = A[shift + j] - la * B[j]
        A.pop()
        _uni_list_trim(A)
        if not A:
            break
    return A


def _content(coeffs: list, field, co_var) -> UniPoly:
    g = UniPoly.zero(field, co_var)
    for c in coeffs:
        g = uni_gcd(g, c)
        if g.degree == 0:
            break
    return g


def _primitive(coeffs: list, field, co_var):
    g = _content(coeffs, field, co_var)
    if g.is_zero() or g.is_one():
        return list(coeffs), g
    out = []
    for c in coeffs:
        q, r = divmod(c, g)
        assert r.is_zero()
        out.append(q)
    return out, g


def biv_gcd(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """Gcd of two bivariate polynomials, primitive with monic leading part."""
    if F.is_zero():
        return _normalize_biv(G)
    if G.is_zero():
        return _normalize_biv(F)
    F, G = F._pair(G)
    field = F.field
    x, y = F.variables
    A = biv_coeffs(F, y)
    B = biv_coeffs(G, y)
    if len(A) < len(B):
        A, B = B, A
    contA = _content(A, field, x)
    contB = _content(B, field, x)
    cont = uni_gcd(contA, contB)
    A, _ = _primitive(A, field, x)
    B, _ = _primitive(B, field, x)
    while True:
        if len(B) == 1:
            # B is a unit times content already removed: gcd in y is trivial
            prim = [UniPoly(field, (field.one(),), x)]
            break
        R = _pseudo_rem(A, B, field, x)
        if not R:
            prim, _ = _primitive(B, field, x)
            break
        R, _ = _primitive(R, field, x)
        A, B = B, R
    g_coeffs = [c * cont for c in prim]
    return _normalize_biv(from_biv_coeffs(field, g_coeffs, y, F.variables))


def _normalize_biv(F: MultiPoly) -> MultiPoly:
    if F.is_zero():
        return F
    keys = sorted(F.terms, key=lambda e: (-sum(e), tuple(-k for k in e)))
    lead = F.terms[keys[0]]
    if lead == F.field.one():
        return F
    return F * lead.inverse()


def squarefree_defect(F: MultiPoly) -> MultiPoly | None:
    """A nonconstant witness shared by F and its gradient, or None.

    Over a perfect field this is nonempty exactly when F has a repeated
    factor; when both partials vanish identically the whole F is a p-th
    power and F itself is returned.
    """
    x, y = F.variables
    fx = F.derivative(x)
    fy = F.derivative(y)
    if fx.is_zero() and fy.is_zero():
        return F
    g = F
    for d in (fx, fy):
        if not d.is_zero():
            g = biv_gcd(g, d)
    if g.total_degree() >= 1:
        return g
    return None


def _bareiss_det(M, field, var):
    """Fraction-free determinant of a matrix of UniPoly entries."""
    n = len(M)
    if n == 0:
        return UniPoly(field, (field.one(),), var)
    M = [row[:] for row in M]
    sign = 1
    prev = UniPoly(field, (field.one(),), var)
    zero = UniPoly.zero(field, var)
    for k in range(n - 1):
        if M[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if pivot is None:
                return zero
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                q, r = divmod(num, prev)
                assert r.is_zero(), "Bareiss division must be exact"
                M[i][j] = q
            M[i][k] = zero
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant_biv(F: MultiPoly, G: MultiPoly, main: str) -> UniPoly:
    """Resultant eliminating `main`; the result lives in the other variable."""
    F, G = F._pair(G)
    field = F.field
    co = [v for v in F.variables if v != main][0]
    A = biv_coeffs(F, main)
    B = biv_coeffs(G, main)
    m, n = len(A) - 1, len(B) - 1
    if m < 0 or n < 0:
        raise ZeroPolynomial("resultant with the zero polynomial")
    if m == 0 and n == 0:
        return UniPoly(field, (field.one(),), co)
    if m == 0:
        return A[0] ** n
    if n == 0:
        return B[0] ** m
    size = m + n
    zero = UniPoly.zero(field, co)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows, field, co)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} in polynomial")
    tokens.append(("end", None))
    return tokens


def _generator_table(field: Field):
    gens = {}
    cur = field
    while isinstance(cur, ExtensionField):
        gens[cur.gen_name] = field.embed(cur.generator())
        cur = cur.base
    return gens


class _Parser:
    def __init__(self, tokens, field, variables, gens):
        self.tokens = tokens
        self.pos = 0
        self.field = field
        self.variables = variables
        self.gens = gens
        self.varmap = {}
        for v in variables:
            self.varmap[v.lower()] = v
            self.varmap[v.upper()] = v

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek()[0] != "end":
            raise ValueError(f"trailing input near token {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in "+-":
            op = self.take()[0]
            t = self.term()
            acc = acc - t if op == "-" else acc + t
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "name", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            if self.peek()[0] == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num" or v2 == 0:
                    raise ValueError("malformed rational coefficient")
                return MultiPoly.constant(self.field, Fraction(val, v2), self.variables)
            return MultiPoly.constant(self.field, val, self.variables)
        if kind == "name":
            if val in self.gens:
                return MultiPoly.constant(self.field, self.gens[val], self.variables)
            v = self.varmap.get(val)
            if v is None:
                raise ValueError(f"unknown symbol {val!r} for variables {self.variables}")
            return MultiPoly.var(self.field, v, self.variables)
        if kind == "(":
            inner = self.expr()
            if self.take()[0] != ")":
                raise ValueError("unbalanced parenthesis")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def parse_poly(text: str, field: Field, space: str = "auto") -> MultiPoly:
    """Parse the CLI polynomial grammar.

    space: "affine" for (x, y), "homogeneous" for (X, Y, Z), or "auto" which
    picks homogeneous exactly when a z/Z variable occurs.  Case is folded to
    the target space, but mixing upper and lower case in one input is
    rejected as a likely mistake.
    """
    tokens = _tokenize(text)
    gens = _generator_table(field)
    names = [v for k, v in tokens if k == "name" and v not in gens]
    for n in names:
        if n.lower() not in ("x", "y", "z"):
            raise ValueError(f"unknown variable {n!r}")
    if space == "auto":
        space = "homogeneous" if any(n.lower() == "z" for n in names) else "affine"
    lowers = [n for n in names if n.islower()]
    uppers = [n for n in names if n.isupper()]
    if lowers and uppers:
        raise ValueError("mixed upper and lower case variables")
    variables = PROJECTIVE if space == "homogeneous" else AFFINE
    if space == "affine" and any(n.lower() == "z" for n in names):
        raise ValueError("z is not an affine variable; affine input uses x, y")
    return _Parser(tokens, field, variables, gens).parse()
