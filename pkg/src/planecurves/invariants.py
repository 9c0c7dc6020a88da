"""Numerical invariants read off resolution trees.

The delta invariant of a curve singularity is the sum of r*(r-1)/2 over
the multiplicities r of all infinitely near points, the conductor degree
is twice that, and the genus of an irreducible plane curve of degree n
drops from (n-1)(n-2)/2 by the delta of each singular point.  Local
intersection multiplicities come out of a joint tree as the sum of
products of multiplicities, checked against an independent resultant
computation so that neither route is trusted alone.
"""

from __future__ import annotations

from .blowup import (
    DEFAULT_MAX_DEPTH,
    InfNearTree,
    joint_tree,
    resolve_tree,
    tracked_resolution,
)
from .errors import (
    CommonComponent,
    FiberNotIsolated,
    NegativeGenus,
    Reducible,
    UnresolvedTree,
    ZeroPolynomial,
)
from .fields import RationalField, UniPoly, join_fields, uni_factor, uni_gcd
from .poly import (
    MultiPoly,
    PROJECTIVE,
    _shear_candidates,
    biv_gcd,
    dehomogenize,
    resultant_biv,
    squarefree_defect,
    translate,
)


class SingularityReport:
    """Delta invariant and conductor degree of one singular point."""

    __slots__ = ("point", "field", "multiplicity_sequence", "delta", "conductor_degree")

    def __init__(self, point, field, multiplicity_sequence, delta, conductor_degree):
        self.point = point
        self.field = field
        self.multiplicity_sequence = multiplicity_sequence
        self.delta = delta
        self.conductor_degree = conductor_degree

    def to_json(self):
        return {
            "point": [str(c) for c in self.point],
            "field": self.field.describe(),
            "multiplicity_sequence": [[d, r] for d, r in self.multiplicity_sequence],
            "delta": self.delta,
            "conductor_degree": self.conductor_degree,
        }


def delta_invariant(tree: InfNearTree, point=None) -> SingularityReport:
    """Sum r*(r-1)/2 over the multiplicity sequence of a resolved tree."""
    if tree.termination != "Resolved":
        raise UnresolvedTree(
            f"tree terminated with {tree.termination}; raise max_depth and retry"
        )
    seq = tree.multiplicity_sequence()
    delta = sum(r * (r - 1) // 2 for _, r in seq)
    field = tree.root.field
    if point is None:
        point = (field.zero(), field.zero())
    return SingularityReport(tuple(point), field, seq, delta, 2 * delta)


class IntersectionReport:
    """Local intersection number computed two ways, with the receipts."""

    __slots__ = ("point", "field", "contributions", "noether_sum", "oracle_value", "agreement")

    def __init__(self, point, field, contributions, noether_sum, oracle_value):
        self.point = point
        self.field = field
        self.contributions = contributions
        self.noether_sum = noether_sum
        self.oracle_value = oracle_value
        self.agreement = noether_sum == oracle_value

    def to_json(self):
        return {
            "point": [str(c) for c in self.point],
            "field": self.field.describe(),
            "contributions": [[d, rc, rd] for d, rc, rd in self.contributions],
            "noether_sum": self.noether_sum,
            "oracle_value": self.oracle_value,
            "agreement": self.agreement,
        }


def _y_fiber(P: MultiPoly) -> UniPoly:
    # restriction to the line x = 0, as a polynomial in y
    deg = P.degree_in("y")
    coeffs = [P.coeff((0, j)) for j in range(deg + 1)]
    return UniPoly(P.field, coeffs, var="y")


def _trailing_order(f: UniPoly) -> int:
    for k in range(f.degree + 1):
        if not f.coeff(k).is_zero():
            return k
    raise ZeroPolynomial("order of 0")


def intersection_oracle(F: MultiPoly, G: MultiPoly) -> int:
    """Local intersection number at the origin via a sheared resultant.

    After a shear x -> x + lam*y chosen so that both leading y-coefficients
    are constants and the origin is the only common zero on the line x = 0,
    the order of Res_y at x = 0 equals the local intersection multiplicity.
    Each candidate shear is validated before use; over a small finite field
    the supply can run out, which raises FiberNotIsolated (the tree route
    does not have this restriction).
    """
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("intersection with the zero curve")
    if biv_gcd(F, G).total_degree() >= 1:
        raise CommonComponent("curves share a component")
    field = join_fields(F.field, G.field)
    F = F.map_field(field)
    G = G.map_field(field)
    if not (F.constant_term().is_zero() and G.constant_term().is_zero()):
        return 0
    n, m = F.total_degree(), G.total_degree()
    xv = MultiPoly.var(field, "x")
    yv = MultiPoly.var(field, "y")
    for lam in _shear_candidates(field):
        Fs = F.substitute({"x": xv + yv * lam})
        Gs = G.substitute({"x": xv + yv * lam})
        if Fs.coeff((0, n)).is_zero() or Gs.coeff((0, m)).is_zero():
            continue
        h = uni_gcd(_y_fiber(Fs), _y_fiber(Gs))
        if h.degree != _trailing_order(h):
            # another common zero sits on x = 0; try the next shear
            continue
        R = resultant_biv(Fs, Gs, main="y")
        assert not R.is_zero()
        return _trailing_order(R)
    raise FiberNotIsolated(
        "no shear over this field isolates the origin on x = 0; "
        "retry over an extension"
    )


def intersection_multiplicity(
    F: MultiPoly, G: MultiPoly, max_depth: int = DEFAULT_MAX_DEPTH
) -> IntersectionReport:
    """Local intersection number at the origin, computed two ways.

    The primary route sums r_C * r_D over the shared infinitely near
    points of a joint tree; the oracle route is an independent resultant
    order.  Both land in the report, together with the per-depth
    contributions.
    """
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("intersection with the zero curve")
    if biv_gcd(F, G).total_degree() >= 1:
        raise CommonComponent("curves share a component")
    field = join_fields(F.field, G.field)
    F = F.map_field(field)
    G = G.map_field(field)
    origin = (field.zero(), field.zero())
    if not (F.constant_term().is_zero() and G.constant_term().is_zero()):
        return IntersectionReport(origin, field, [], 0, 0)
    jt = joint_tree([F, G], max_depth=max_depth, labels=("C", "D"))
    contributions = [(d, rs[0], rs[1]) for d, rs in jt.contributions()]
    noether_sum = sum(rc * rd for _, rc, rd in contributions)
    oracle = intersection_oracle(F, G)
    return IntersectionReport(origin, field, contributions, noether_sum, oracle)


class AdjointReport:
    """Outcome of the adjoint test r_Q(G) >= r_Q(C) - 1 on a resolution tree."""

    __slots__ = ("ok", "entries")

    def __init__(self, ok, entries):
        self.ok = ok
        self.entries = entries

    def to_json(self):
        return {
            "ok": self.ok,
            "nodes": [
                {"depth": d, "r_C": rc, "r_G": rg, "margin": margin}
                for d, rc, rg, margin in self.entries
            ],
        }


def adjoint_check(
    C: MultiPoly, G: MultiPoly, max_depth: int = DEFAULT_MAX_DEPTH
) -> AdjointReport:
    """Check r_Q(G) >= r_Q(C) - 1 at every infinitely near point of C.

    C is resolved at the origin and G is carried through the same charts;
    the margin r_Q(G) - r_Q(C) + 1 is reported per node.  This is the
    sufficient local condition under which G can play the adjoint role in
    the residue argument, not a full conductor membership test.
    """
    if C.is_zero() or G.is_zero():
        raise ZeroPolynomial("adjoint check with the zero curve")
    if C.mult_at_origin() < 1:
        raise ValueError("curve does not pass through the origin")
    if biv_gcd(C, G).total_degree() >= 1:
        raise CommonComponent("candidate shares a component with the curve")
    tree = tracked_resolution([C, G], max_depth=max_depth, labels=("C", "G"))
    entries = []
    ok = True
    for node in tree.nodes():
        rc, rg = node.rs
        margin = rg - rc + 1
        entries.append((node.depth, rc, rg, margin))
        if margin < 0:
            ok = False
    return AdjointReport(ok, entries)


def _localize(F: MultiPoly, coords):
    """Affine equation of a projective curve with the given point at the origin.

    Picks the chart Z, Y or X, preferring the later coordinate when it is
    nonzero so the choice is deterministic.  Returns (affine poly, chart).
    """
    field = F.field
    for c in coords:
        field = join_fields(field, c.field)
    coords = tuple(field.embed(c) for c in coords)
    F = F.map_field(field)
    for chart, idx, others in (("Z", 2, (0, 1)), ("Y", 1, (0, 2)), ("X", 0, (1, 2))):
        if not coords[idx].is_zero():
            inv = coords[idx].inverse()
            a, b = coords[others[0]] * inv, coords[others[1]] * inv
            return translate(dehomogenize(F, chart), a, b), chart
    raise ValueError("projective point has no nonzero coordinate")


def _full_degree_fibers(F: MultiPoly, n: int):
    # affine restrictions whose main-variable degree stays n, if any chart allows it
    for chart in ("Z", "Y", "X"):
        aff = dehomogenize(F, chart)
        for main, other in (("y", "x"), ("x", "y")):
            top = (0, n) if main == "y" else (n, 0)
            if aff.coeff(top).is_zero():
                continue
            field = F.field
            samples = _shear_candidates(field)
            for _ in range(8):
                try:
                    a = next(samples)
                except StopIteration:
                    break
                fib = aff.substitute({other: MultiPoly.constant(field, a)})
                coeffs = [
                    fib.coeff((0, j) if main == "y" else (j, 0)) for j in range(n + 1)
                ]
                yield UniPoly(field, coeffs, var=main)
            return


def _certify_irreducible(F: MultiPoly):
    """Raise Reducible unless F passes the (partial) irreducibility guard.

    A repeated factor is always detected.  Full irreducibility is certified
    when some specialized fiber of full degree is irreducible: over a finite
    field that test is exact for any degree, over Q only up to cubics, so
    higher-degree rational inputs need assume_irreducible.
    """
    n = F.total_degree()
    if n == 1:
        return
    for v in PROJECTIVE:
        idx = PROJECTIVE.index(v)
        if all(e[idx] >= 1 for e in F.terms):
            raise Reducible(f"curve is divisible by {v}")
    aff = dehomogenize(F, "Z")
    defect = squarefree_defect(aff)
    if defect is not None:
        raise Reducible(f"repeated factor detected: {defect}")
    rational = isinstance(F.field, RationalField)
    for fib in _full_degree_fibers(F, n):
        if fib.degree != n:
            continue
        _, factors = uni_factor(fib)
        if len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == n:
            if rational and n > 3:
                continue  # residual factors are not certified irreducible over Q
            return
    raise Reducible(
        "could not certify irreducibility; pass assume_irreducible for a "
        "curve known to be irreducible"
    )


def genus(
    F: MultiPoly,
    singular_points,
    assume_irreducible: bool = False,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> int:
    """Geometric genus (n-1)(n-2)/2 - sum of deltas of the singular points.

    F must be homogeneous and irreducible; singular_points must list every
    singular point of the curve (empty for a smooth curve).  A negative
    result means the list was incomplete or the curve reducible, and raises
    NegativeGenus rather than returning nonsense.
    """
    if F.is_zero():
        raise ZeroPolynomial("genus of the zero curve")
    if F.variables != PROJECTIVE or not F.is_homogeneous():
        raise ValueError("genus expects a homogeneous polynomial in X, Y, Z")
    n = F.total_degree()
    if n < 1:
        raise ValueError("genus needs degree at least 1")
    if not assume_irreducible:
        _certify_irreducible(F)
    total = 0
    for p in singular_points:
        coords = tuple(getattr(p, "coords", p))
        local, _ = _localize(F, coords)
        if not local.constant_term().is_zero():
            raise ValueError(f"point {[str(c) for c in coords]} is not on the curve")
        report = delta_invariant(resolve_tree(local, max_depth=max_depth), point=coords)
        total += report.delta
    g = (n - 1) * (n - 2) // 2 - total
    if g < 0:
        raise NegativeGenus(
            f"genus came out {g}; the singular-point list is incomplete "
            "or the curve is reducible"
        )
    return g
