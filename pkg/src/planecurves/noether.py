"""Projective common points, the local AF+BG condition, and the solver.

Common points of two coprime projective curves come from eliminating Z by
a resultant after moving [0:0:1] off both curves, factoring the resulting
binary form into directions, and intersecting the two fibers over each
direction.  Field extensions are threaded sequentially, so every point
lives somewhere along a single tower and points can be compared.

The AF+BG machinery has two independent halves: check_condition walks
joint blow-up trees at every common point of F and G and verifies the
multiplicity inequality r_H >= r_F + r_G - 1 at each infinitely near
point, while solve_af_bg sets up the linear system on coefficients of A
and B directly and solves it exactly.  Agreement of the two halves on
both positive and negative instances is what the test suite leans on.
"""

from __future__ import annotations

from itertools import count

from .blowup import DEFAULT_MAX_DEPTH, joint_tree
from .errors import (
    CommonComponent,
    IncompatibleFields,
    Reducible,
    ZeroPolynomial,
)
from .fields import (
    Field,
    RationalField,
    Scalar,
    UniPoly,
    extend_field,
    find_irreducible,
    join_fields,
    roots_with_extension,
    uni_gcd,
)
from .invariants import _localize, intersection_multiplicity
from .linalg import solve_linear
from .poly import MultiPoly, PROJECTIVE, biv_gcd, dehomogenize, resultant_biv


class ProjPoint:
    """Projective point with the first nonzero coordinate scaled to 1."""

    __slots__ = ("coords", "field")

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("projective points have three coordinates")
        field = coords[0].field
        for c in coords[1:]:
            field = join_fields(field, c.field)
        coords = tuple(field.embed(c) for c in coords)
        pivot = next((c for c in coords if not c.is_zero()), None)
        if pivot is None:
            raise ValueError("all coordinates are zero")
        inv = pivot.inverse()
        self.coords = tuple(c * inv for c in coords)
        self.field = field

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        try:
            return all(a == b for a, b in zip(self.coords, other.coords))
        except IncompatibleFields:
            return False

    def __repr__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    def to_json(self):
        return {"coords": [str(c) for c in self.coords], "field": self.field.describe()}


def _strip_var(F: MultiPoly, idx: int):
    # F = v^k * rest with v the idx-th variable and rest not divisible by v
    k = min(e[idx] for e in F.terms)
    if k == 0:
        return F, 0
    terms = {
        tuple(ei - k if i == idx else ei for i, ei in enumerate(e)): c
        for e, c in F.terms.items()
    }
    return MultiPoly(F.field, F.variables, terms), k


def _assert_coprime_forms(F: MultiPoly, G: MultiPoly):
    """Raise CommonComponent when two forms share a nonconstant factor."""
    Fh, kF = _strip_var(F, 2)
    Gh, kG = _strip_var(G, 2)
    if kF >= 1 and kG >= 1:
        raise CommonComponent("curves share the component Z")
    if Fh.total_degree() >= 1 and Gh.total_degree() >= 1:
        if biv_gcd(dehomogenize(Fh, "Z"), dehomogenize(Gh, "Z")).total_degree() >= 1:
            raise CommonComponent("curves share a component")


def _pair_candidates(field: Field):
    if isinstance(field, RationalField):
        def gen():
            cands = [field.zero()]
            k = 1
            for s in count(0):
                while len(cands) <= s:
                    cands.append(field.scalar(k))
                    cands.append(field.scalar(-k))
                    k += 1
                for i in range(s + 1):
                    yield cands[i], cands[s - i]
        return gen()

    def gen_finite():
        elems = list(field.elements())
        for a in elems:
            for b in elems:
                yield a, b
    return gen_finite()


def _as_tz(P: MultiPoly) -> MultiPoly:
    # specialize X = 1, keep (Y, Z) as the bivariate pair (t, Z)
    terms = {}
    for (i, j, k), c in P.terms.items():
        key = (j, k)
        terms[key] = terms[key] + c if key in terms else c
    return MultiPoly(P.field, ("t", "Z"), terms)


def _z_fiber(P: MultiPoly, x0: Scalar, y0: Scalar) -> UniPoly:
    # P(x0, y0, Z) as a univariate polynomial in Z
    field = join_fields(P.field, join_fields(x0.field, y0.field))
    P = P.map_field(field)
    x0, y0 = field.embed(x0), field.embed(y0)
    deg = P.degree_in("Z")
    coeffs = [field.zero() for _ in range(deg + 1)]
    for (i, j, k), c in P.terms.items():
        coeffs[k] = coeffs[k] + c * x0 ** i * y0 ** j
    return UniPoly(field, coeffs, var="Z")


def _direction_points(b: MultiPoly, fld: Field):
    """Zeros [x:y:0] of a binary form b(X, Y) on the line Z = 0."""
    deg = b.total_degree()
    u = UniPoly(
        fld,
        [fld.embed(b.coeff((deg - j, j, 0))) for j in range(deg + 1)],
        var="t",
    )
    points = []
    if u.degree >= 1:
        fld, roots = roots_with_extension(u)
        points = [(fld.one(), t, fld.zero()) for t, _ in roots]
    if u.degree < deg:
        points.append((fld.zero(), fld.one(), fld.zero()))
    return points, fld


def find_common_points(F: MultiPoly, G: MultiPoly):
    """All common projective zeros of two coprime forms, as ProjPoints.

    Over Q a common point with irrational coordinates raises
    NonRationalPoint; over a finite field the coefficient tower grows as
    needed and each returned point carries the field it lives in.
    """
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("common points with the zero curve")
    if F.variables != PROJECTIVE or G.variables != PROJECTIVE:
        raise ValueError("common points expect homogeneous polynomials in X, Y, Z")
    if not (F.is_homogeneous() and G.is_homogeneous()):
        raise ValueError("common points expect homogeneous polynomials in X, Y, Z")
    if F.total_degree() < 1 or G.total_degree() < 1:
        raise ValueError("curves must have degree at least 1")
    fld = join_fields(F.field, G.field)
    F, G = F.map_field(fld), G.map_field(fld)
    _assert_coprime_forms(F, G)

    points = []

    def add(raw):
        p = ProjPoint(raw)
        if not any(p == q for q in points):
            points.append(p)

    Fh, kF = _strip_var(F, 2)
    Gh, kG = _strip_var(G, 2)

    # the component Z = 0 of one input meets the other in its directions
    if Fh.total_degree() >= 1 and Gh.total_degree() >= 1:
        fld = _common_points_core(Fh, Gh, fld, add)
    if kF >= 1:
        raws, fld = _direction_points(G.map_field(fld), fld)
        for raw in raws:
            add(raw)
    if kG >= 1:
        raws, fld = _direction_points(F.map_field(fld), fld)
        for raw in raws:
            add(raw)
    return points


def _common_points_core(F: MultiPoly, G: MultiPoly, fld: Field, add):
    """Z-free coprime forms: eliminate Z, factor directions, intersect fibers."""
    n, m = F.total_degree(), G.total_degree()

    # move [0:0:1] off both curves so the Z-leading coefficients are constants
    while True:
        a = b = None
        for ca, cb in _pair_candidates(fld):
            one = fld.one()
            if not F.evaluate({"X": ca, "Y": cb, "Z": one}).is_zero() and not G.evaluate(
                {"X": ca, "Y": cb, "Z": one}
            ).is_zero():
                a, b = ca, cb
                break
        if a is not None:
            break
        fld = extend_field(fld, find_irreducible(fld, 2))
        F, G = F.map_field(fld), G.map_field(fld)

    F, G = F.map_field(fld), G.map_field(fld)
    Xv, Yv, Zv = (MultiPoly.var(fld, v, PROJECTIVE) for v in PROJECTIVE)
    Fp = F.substitute({"X": Xv + Zv * a, "Y": Yv + Zv * b})
    Gp = G.substitute({"X": Xv + Zv * a, "Y": Yv + Zv * b})
    assert not Fp.coeff((0, 0, n)).is_zero() and not Gp.coeff((0, 0, m)).is_zero()

    R1 = resultant_biv(_as_tz(Fp), _as_tz(Gp), main="Z")
    assert not R1.is_zero()
    directions = []
    if R1.degree >= 1:
        fld, roots = roots_with_extension(R1.map_field(fld))
        directions = [(fld.one(), t) for t, _ in roots]
    if R1.degree < n * m:
        directions.append((fld.zero(), fld.one()))

    for x0, y0 in directions:
        h = uni_gcd(_z_fiber(Fp, x0, y0), _z_fiber(Gp, x0, y0))
        assert h.degree >= 1
        fld, roots = roots_with_extension(h.map_field(fld))
        for z0, _ in roots:
            x1, y1 = fld.embed(x0), fld.embed(y0)
            add((x1 + fld.embed(a) * z0, y1 + fld.embed(b) * z0, z0))
    return fld


def find_singular_points(F: MultiPoly):
    """Singular points of a projective curve, via resultant elimination.

    Common zeros of one coprime pair among the curve and its partials are
    computed and then filtered through all four equations.  If every
    partial derivative vanishes identically the curve is a p-th power and
    Reducible is raised.
    """
    if F.is_zero():
        raise ZeroPolynomial("singular points of the zero curve")
    if F.variables != PROJECTIVE or not F.is_homogeneous():
        raise ValueError("singular points expect a homogeneous polynomial in X, Y, Z")
    if F.total_degree() == 1:
        return []
    parts = [F.derivative(v) for v in PROJECTIVE]
    if all(p.is_zero() for p in parts):
        raise Reducible("every partial vanishes; the curve is a p-th power")
    system = [F] + parts
    cands = None
    pairs = [(1, 2), (1, 3), (2, 3), (0, 1), (0, 2), (0, 3)]
    for i, j in pairs:
        P, Q = system[i], system[j]
        if P.is_zero() or Q.is_zero():
            continue
        if P.total_degree() < 1 or Q.total_degree() < 1:
            continue
        try:
            cands = find_common_points(P, Q)
            break
        except CommonComponent:
            continue
    if cands is None:
        raise CommonComponent("all pairs of defining equations share components")
    out = []
    for p in cands:
        vals = {"X": p.coords[0], "Y": p.coords[1], "Z": p.coords[2]}
        if all(eq.evaluate(vals).is_zero() for eq in system):
            out.append(p)
    return out


class PointCondition:
    """Result of the multiplicity inequality at one common point."""

    __slots__ = ("point", "chart", "ok", "entries", "failure_depth")

    def __init__(self, point, chart, ok, entries, failure_depth):
        self.point = point
        self.chart = chart
        self.ok = ok
        self.entries = entries
        self.failure_depth = failure_depth

    def to_json(self):
        return {
            "point": self.point.to_json(),
            "chart": self.chart,
            "ok": self.ok,
            "nodes": [
                {"depth": d, "r_F": rf, "r_G": rg, "r_H": rh, "margin": mg}
                for d, rf, rg, rh, mg in self.entries
            ],
            "failure_depth": self.failure_depth,
        }


class ConditionReport:
    __slots__ = ("ok", "points")

    def __init__(self, ok, points):
        self.ok = ok
        self.points = points

    def to_json(self):
        return {"ok": self.ok, "points": [p.to_json() for p in self.points]}


def check_condition(
    F: MultiPoly, G: MultiPoly, H: MultiPoly, max_depth: int = DEFAULT_MAX_DEPTH
) -> ConditionReport:
    """Verify r_H >= r_F + r_G - 1 at every infinitely near common point.

    At each common point of F and G a joint tree is grown through the
    points where at least one of F, G still passes, and the inequality is
    read off at every node.  A curve H passing the check at all points
    satisfies the local hypothesis of the AF+BG construction.
    """
    for P in (F, G, H):
        if P.is_zero():
            raise ZeroPolynomial("check_condition needs nonzero curves")
        if P.variables != PROJECTIVE or not P.is_homogeneous():
            raise ValueError("check_condition expects homogeneous polynomials in X, Y, Z")
    fld = join_fields(join_fields(F.field, G.field), H.field)
    F, G, H = F.map_field(fld), G.map_field(fld), H.map_field(fld)
    _assert_coprime_forms(F, G)
    report_points = []
    all_ok = True
    for p in find_common_points(F, G):
        fL, chart = _localize(F, p.coords)
        gL, _ = _localize(G, p.coords)
        hL, _ = _localize(H, p.coords)
        jt = joint_tree(
            [fL, gL, hL], max_depth=max_depth, labels=("F", "G", "H"), witness=True
        )
        entries = []
        failure_depth = None
        for node in jt.nodes():
            rf, rg, rh = node.rs
            margin = rh - (rf + rg - 1)
            entries.append((node.depth, rf, rg, rh, margin))
            if margin < 0 and failure_depth is None:
                failure_depth = node.depth
        ok = failure_depth is None
        all_ok = all_ok and ok
        report_points.append(PointCondition(p, chart, ok, entries, failure_depth))
    return ConditionReport(all_ok, report_points)


class NoetherCertificate:
    """Outcome of the AF+BG solver: cofactors or a refusal.

    status is "Solved" with A, B and a recomputed residual (always zero for
    a solved instance), or "NoSolution" when the exact linear system is
    inconsistent.  point and depth are reserved for condition failures
    attached by callers that run the checker first.
    """

    __slots__ = ("status", "A", "B", "residual", "point", "depth")

    def __init__(self, status, A=None, B=None, residual=None, point=None, depth=None):
        self.status = status
        self.A = A
        self.B = B
        self.residual = residual
        self.point = point
        self.depth = depth

    def to_json(self):
        return {
            "status": self.status,
            "A": None if self.A is None else str(self.A),
            "B": None if self.B is None else str(self.B),
            "residual": None if self.residual is None else str(self.residual),
            "point": None if self.point is None else self.point.to_json(),
            "depth": self.depth,
        }


def _monomials(deg: int):
    # every exponent triple of total degree deg, X-heaviest first
    return [
        (i, j, deg - i - j)
        for i in range(deg, -1, -1)
        for j in range(deg - i, -1, -1)
    ]


def solve_af_bg(
    F: MultiPoly, G: MultiPoly, H: MultiPoly, free_values=None
) -> NoetherCertificate:
    """Solve H = A*F + B*G exactly by linear algebra on coefficients.

    Unknowns are the coefficients of A (degree deg H - deg F) followed by
    the coefficients of B (degree deg H - deg G), each block in the
    _monomials order; free_values pins chosen free columns by that index.
    The returned residual is recomputed from A and B independently of the
    solver and must be zero on a Solved certificate.
    """
    for P in (F, G, H):
        if P.is_zero():
            raise ZeroPolynomial("solve_af_bg needs nonzero curves")
        if P.variables != PROJECTIVE or not P.is_homogeneous():
            raise ValueError("solve_af_bg expects homogeneous polynomials in X, Y, Z")
    fld = join_fields(join_fields(F.field, G.field), H.field)
    F, G, H = F.map_field(fld), G.map_field(fld), H.map_field(fld)
    _assert_coprime_forms(F, G)
    c, d, e = F.total_degree(), G.total_degree(), H.total_degree()
    mons_A = _monomials(e - c) if e >= c else []
    mons_B = _monomials(e - d) if e >= d else []
    if not mons_A and not mons_B:
        return NoetherCertificate("NoSolution")
    targets = _monomials(e)

    def entry(P, target, mon):
        diff = tuple(t - u for t, u in zip(target, mon))
        if any(x < 0 for x in diff):
            return fld.zero()
        return P.coeff(diff)

    rows = [
        [entry(F, t, u) for u in mons_A] + [entry(G, t, v) for v in mons_B]
        for t in targets
    ]
    rhs = [H.coeff(t) for t in targets]
    sol = solve_linear(rows, rhs, fld, free_values=free_values)
    if sol is None:
        return NoetherCertificate("NoSolution")
    nA = len(mons_A)
    A = MultiPoly(fld, PROJECTIVE, dict(zip(mons_A, sol[:nA])))
    B = MultiPoly(fld, PROJECTIVE, dict(zip(mons_B, sol[nA:])))
    residual = H - A * F - B * G
    assert residual.is_zero()
    return NoetherCertificate("Solved", A=A, B=B, residual=residual)


class BezoutReport:
    """Sum of local intersection numbers against the degree product."""

    __slots__ = ("total", "expected", "ok", "entries")

    def __init__(self, total, expected, entries):
        self.total = total
        self.expected = expected
        self.ok = total == expected
        self.entries = entries

    def to_json(self):
        return {
            "total": self.total,
            "expected": self.expected,
            "ok": self.ok,
            "points": [
                {"point": p.to_json(), "chart": chart, "multiplicity": rep.to_json()}
                for p, chart, rep in self.entries
            ],
        }


def bezout_check(
    F: MultiPoly, G: MultiPoly, max_depth: int = DEFAULT_MAX_DEPTH
) -> BezoutReport:
    """Sum local intersection numbers over all common points of F and G.

    Each local number is computed through a joint tree and cross-checked
    against the resultant oracle; the total is compared with
    deg F * deg G.  Any mismatch survives into the report rather than
    being patched over.
    """
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("Bezout with the zero curve")
    fld = join_fields(F.field, G.field)
    F, G = F.map_field(fld), G.map_field(fld)
    _assert_coprime_forms(F, G)
    entries = []
    total = 0
    for p in find_common_points(F, G):
        fL, chart = _localize(F, p.coords)
        gL, _ = _localize(G, p.coords)
        rep = intersection_multiplicity(fL, gL, max_depth=max_depth)
        entries.append((p, chart, rep))
        total += rep.noether_sum
    return BezoutReport(total, F.total_degree() * G.total_degree(), entries)
