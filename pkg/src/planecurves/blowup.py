"""Blow-up chart transforms and infinitely near point trees.

The single chart y = x*t suffices once coordinates are suitable: every
point of the proper transform over the origin has a finite t-coordinate.
A tree node records the recentered, re-suitabilized local equation, so the
blow-up step is always the same substitution.  Trees come in two flavors:
one curve resolved until every branch is smooth, or several curves carried
through shared charts until their transforms separate.

Over finite fields, tangent directions that do not exist over the current
field trigger an extension of the coefficient tower; over Q a non-rational
direction raises NonRationalPoint instead (retry over a finite field).
"""

from __future__ import annotations

from collections import deque
from itertools import count

from .errors import (
    CommonComponent,
    DepthCapExceeded,
    HypothesisFailed,
    NonRationalPoint,
    NotSquarefree,
    NotSuitable,
    ZeroPolynomial,
)
from .fields import RationalField, Scalar, UniPoly, roots_with_extension, uni_factor, uni_gcd
from .poly import (
    AFFINE,
    CHART,
    CoordChange,
    MultiPoly,
    biv_gcd,
    is_suitable,
    make_suitable,
    make_suitable_many,
    squarefree_defect,
    translate,
)

DEFAULT_MAX_DEPTH = 48
JOINT_LABELS = ("C", "D", "H")


def _chart_transform(F: MultiPoly, r: int) -> MultiPoly:
    """F(x, x*t) / x^r, exact; result in variables (x, t)."""
    terms = {}
    for (i, j), c in F.terms.items():
        terms[(i + j - r, j)] = c
    return MultiPoly(F.field, CHART, terms)


def blow_up_chart(F: MultiPoly) -> MultiPoly:
    """Proper transform F' with F(x, x*t) = x^r * F'(x, t).

    F must vanish at the origin and be suitable, so that F'(0, t) has
    degree exactly r and no tangent direction escapes the chart.
    """
    r = F.mult_at_origin()
    if r < 1:
        raise ValueError("blow-up center must lie on the curve (r >= 1)")
    if not is_suitable(F):
        raise NotSuitable(f"lowest form of {F} vanishes at (0, 1)")
    return _chart_transform(F, r)


def fiber_poly(Fprime: MultiPoly) -> UniPoly:
    """F'(0, t) as a univariate polynomial: the exceptional fiber."""
    coeffs = {}
    for (i, j), c in Fprime.terms.items():
        if i == 0:
            coeffs[j] = c
    if not coeffs:
        return UniPoly.zero(Fprime.field, "t")
    dense = [coeffs.get(k, Fprime.field.zero()) for k in range(max(coeffs) + 1)]
    return UniPoly(Fprime.field, dense, "t")


def exceptional_points(Fprime: MultiPoly):
    """Roots of F'(0, t) with multiplicities, the tangent directions.

    Over a finite field the tower is extended until every root is rational;
    over Q a surviving nonlinear factor raises NonRationalPoint.
    """
    fiber = fiber_poly(Fprime)
    if fiber.is_zero():
        raise ZeroPolynomial("exceptional fiber is identically zero")
    _, roots = roots_with_extension(fiber)
    return roots


# ---------------------------------------------------------------------------
# single-curve resolution trees
# ---------------------------------------------------------------------------


class InfNearNode:
    __slots__ = ("id", "depth", "field", "local_eq", "r", "shift", "coord_change", "children")

    def __init__(self, id, depth, field, local_eq, r, shift, coord_change):
        self.id = id
        self.depth = depth
        self.field = field
        self.local_eq = local_eq
        self.r = r
        self.shift = shift  # recentering root on the parent's exceptional line; None at the root
        self.coord_change = coord_change
        self.children = []

    def to_json(self):
        return {
            "id": self.id,
            "depth": self.depth,
            "field": self.field.describe(),
            "local_eq": str(self.local_eq),
            "r": self.r,
            "shift": None if self.shift is None else str(self.shift),
            "coord_change": self.coord_change.to_json(),
            "children": [c.to_json() for c in self.children],
        }


class InfNearTree:
    __slots__ = ("root", "termination")

    def __init__(self, root: InfNearNode, termination: str):
        self.root = root
        self.termination = termination  # "Resolved" | "DepthCapped"

    def nodes(self):
        queue = deque([self.root])
        while queue:
            node = queue.popleft()
            yield node
            queue.extend(node.children)

    def multiplicity_sequence(self):
        return [(n.depth, n.r) for n in self.nodes() if n.r >= 2]

    def to_json(self):
        return {"termination": self.termination, "root": self.root.to_json()}


def _split_fiber(fiber: UniPoly):
    """All roots of the fiber, extending finite fields; list of (alpha, mult)."""
    _, roots = roots_with_extension(fiber)
    return roots


def resolve_tree(F: MultiPoly, max_depth: int = DEFAULT_MAX_DEPTH) -> InfNearTree:
    """Infinitely near tree of F at the origin.

    Nodes with r >= 2 are blown up; every exceptional point becomes a child
    (smooth ones as r = 1 leaves).  Requires squarefree input, otherwise the
    process cannot terminate.
    """
    if F.is_zero():
        raise ZeroPolynomial("cannot resolve the zero polynomial")
    if F.mult_at_origin() < 1:
        raise ValueError("curve does not pass through the origin")
    defect = squarefree_defect(F)
    if defect is not None:
        raise NotSquarefree(f"repeated factor detected: {defect}")

    ids = count()
    capped = [False]

    def build(eq: MultiPoly, depth: int, shift) -> InfNearNode:
        suitable_eq, shear = make_suitable(eq)
        change = CoordChange.identity() if shift is None else CoordChange.translation(0, shift)
        change = change.then(shear)
        r = suitable_eq.mult_at_origin()
        node = InfNearNode(next(ids), depth, suitable_eq.field, suitable_eq, r, shift, change)
        if r >= 2:
            if depth >= max_depth:
                capped[0] = True
                return node
            Fp = _chart_transform(suitable_eq, r)
            for alpha, _m in _split_fiber(fiber_poly(Fp)):
                child_eq = translate(Fp.rename(AFFINE).map_field(alpha.field), 0, alpha)
                node.children.append(build(child_eq, depth + 1, alpha))
        return node

    root = build(F, 0, None)
    return InfNearTree(root, "DepthCapped" if capped[0] else "Resolved")


def to_dot(tree) -> str:
    """Graphviz rendering of a resolution or joint tree."""
    lines = ["digraph blowups {", '  node [shape=box, fontname="monospace"];']
    for node in tree.nodes():
        if isinstance(node, JointNode):
            rs = ", ".join(
                f"{lab}:{r}" for lab, r in zip(tree.labels, node.rs)
            )
            label = f"depth {node.depth}\\n{rs}"
        else:
            label = f"depth {node.depth}, r={node.r}\\n{node.local_eq}"
        lines.append(f'  n{node.id} [label="{label}"];')
        for child in node.children:
            lines.append(f"  n{node.id} -> n{child.id};")
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# joint trees: several curves through shared charts
# ---------------------------------------------------------------------------


class JointNode:
    __slots__ = ("id", "depth", "field", "eqs", "rs", "shift", "coord_change", "children")

    def __init__(self, id, depth, field, eqs, rs, shift, coord_change):
        self.id = id
        self.depth = depth
        self.field = field
        self.eqs = eqs  # tuple of transforms, one per tracked curve, shared chart
        self.rs = rs  # multiplicity of each transform at this point (0 = absent)
        self.shift = shift
        self.coord_change = coord_change
        self.children = []

    def to_json(self, labels):
        return {
            "id": self.id,
            "depth": self.depth,
            "field": self.field.describe(),
            "curves": {
                lab: {"local_eq": str(eq), "r": r}
                for lab, eq, r in zip(labels, self.eqs, self.rs)
            },
            "shift": None if self.shift is None else str(self.shift),
            "coord_change": self.coord_change.to_json(),
            "children": [c.to_json(labels) for c in self.children],
        }


class JointTree:
    __slots__ = ("root", "labels")

    def __init__(self, root: JointNode, labels):
        self.root = root
        self.labels = tuple(labels)

    def nodes(self):
        queue = deque([self.root])
        while queue:
            node = queue.popleft()
            yield node
            queue.extend(node.children)

    def contributions(self):
        return [(n.depth, n.rs) for n in self.nodes()]

    def max_depth(self):
        return max(n.depth for n in self.nodes())

    def to_json(self):
        return {"labels": list(self.labels), "root": self.root.to_json(self.labels)}


def _rational_fiber_roots(fiber: UniPoly):
    """Rational roots plus the leftover nonlinear irreducible factors (Q base)."""
    roots = []
    residuals = []
    _unit, factors = uni_factor(fiber)
    for fac, mult in factors:
        if fac.degree == 1:
            roots.append((-fac.coeff(0), mult))
        else:
            residuals.append(fac)
    return roots, residuals


def _assert_no_singular_residual(Fp: MultiPoly, residuals):
    """Over Q: a nonlinear fiber factor is tolerable only at smooth points."""
    if not residuals:
        return
    g = fiber_poly(Fp)
    for part in (Fp.derivative("x"), Fp.derivative("t")):
        g = uni_gcd(g, fiber_poly(part)) if not part.is_zero() else g
    for q in residuals:
        if uni_gcd(q, g).degree >= 1:
            raise NonRationalPoint(
                f"singular infinitely near point with non-rational direction (factor {q})"
            )


def joint_tree(
    curves,
    max_depth: int = DEFAULT_MAX_DEPTH,
    labels=None,
    witness: bool = False,
) -> JointTree:
    """Shared infinitely-near tree of 2 or 3 curves at the origin.

    The first two curves drive growth: a node is expanded while both pass
    through it, and children are the exceptional points both transforms
    share.  A third curve is carried along the same charts (its multiplicity
    is reported at every node) but never influences which points appear.

    witness=True additionally materializes, up to one level past the deepest
    shared node, the points where a single driver passes, and keeps blowing
    up those where that driver is singular.  This is the point set over
    which the AF+BG hypothesis must be verified; plain intersection trees
    do not need it.
    """
    if not 2 <= len(curves) <= 3:
        raise ValueError("joint_tree tracks two or three curves")
    labels = tuple(labels) if labels is not None else JOINT_LABELS[: len(curves)]
    for c in curves[:2]:
        if c.is_zero():
            raise ZeroPolynomial("tracked curve is the zero polynomial")
        if c.mult_at_origin() < 1:
            raise ValueError("both driving curves must pass through the origin")
    g = biv_gcd(curves[0], curves[1])
    if g.total_degree() >= 1:
        raise CommonComponent(f"curves share the factor {g}")

    shared = _grow_joint(list(curves), max_depth, witness=False, depth_limit=None)
    if not witness:
        return JointTree(shared, labels)
    limit = max(n.depth for n in _bfs(shared)) + 1
    root = _grow_joint(list(curves), max_depth, witness=True, depth_limit=limit)
    return JointTree(root, labels)


def _bfs(root):
    queue = deque([root])
    while queue:
        node = queue.popleft()
        yield node
        queue.extend(node.children)


def _grow_joint(curves, max_depth, witness, depth_limit):
    ids = count()
    rational = isinstance(curves[0].field, RationalField)

    def build(eqs, depth, shift):
        suited, change, field = make_suitable_many(eqs)
        if shift is not None:
            change = CoordChange.translation(0, shift).then(change)
        rs = tuple(0 if not e.constant_term().is_zero() else e.mult_at_origin() for e in suited)
        node = JointNode(next(ids), depth, field, tuple(suited), rs, shift, change)

        drivers = rs[:2]
        both = all(r >= 1 for r in drivers)
        single_singular = witness and not both and any(r >= 2 for r in drivers)
        if not (both or single_singular):
            return node
        if depth_limit is not None and depth >= depth_limit:
            return node

        transforms = [_chart_transform(e, r) for e, r in zip(suited, rs)]
        candidates = _child_points(transforms[:2], drivers, witness, rational)
        for alpha in candidates:
            child_eqs = [
                translate(t.rename(AFFINE).map_field(alpha.field), 0, alpha)
                for t in transforms
            ]
            passing = [e.constant_term().is_zero() for e in child_eqs[:2]]
            keep = all(passing) if not witness else any(passing)
            if not keep:
                continue
            if depth + 1 > max_depth:
                raise DepthCapExceeded(
                    f"joint tree exceeded max depth {max_depth}; transforms still meet"
                )
            node.children.append(build(child_eqs, depth + 1, alpha))
        return node

    return build(curves, 0, None)


def _child_points(driver_transforms, driver_rs, witness, rational):
    """Candidate exceptional t-values for the next level, deterministic order."""
    fibers = [fiber_poly(t) for t in driver_transforms]
    if not witness:
        shared = uni_gcd(fibers[0], fibers[1])
        if shared.degree < 1:
            return []
        _, roots = roots_with_extension(shared)
        return [alpha for alpha, _m in roots]
    if rational:
        points = []
        for Fp, fib, r in zip(driver_transforms, fibers, driver_rs):
            if r < 1:
                continue
            roots, residuals = _rational_fiber_roots(fib)
            _assert_no_singular_residual(Fp, residuals)
            points.extend(alpha for alpha, _m in roots)
        seen = []
        for alpha in sorted(points, key=str):
            if not any(alpha == s for s in seen):
                seen.append(alpha)
        return seen
    product = None
    for fib, r in zip(fibers, driver_rs):
        if r < 1:
            continue
        product = fib if product is None else product * fib
    if product is None or product.degree < 1:
        return []
    _, roots = roots_with_extension(product)
    return [alpha for alpha, _m in roots]


def tracked_resolution(curves, max_depth: int = DEFAULT_MAX_DEPTH, labels=None) -> JointTree:
    """Resolution tree of the first curve with companions carried along.

    Expansion is driven by the first curve alone (blown up while singular,
    every exceptional point becomes a child); the other curves only report
    their multiplicities r_Q along the same shared charts.  This is the
    structure the adjoint condition r_Q(G) >= r_Q(C) - 1 is read from.
    """
    labels = tuple(labels) if labels is not None else JOINT_LABELS[: len(curves)]
    lead = curves[0]
    if lead.is_zero():
        raise ZeroPolynomial("cannot resolve the zero polynomial")
    if lead.mult_at_origin() < 1:
        raise ValueError("curve does not pass through the origin")
    defect = squarefree_defect(lead)
    if defect is not None:
        raise NotSquarefree(f"repeated factor detected: {defect}")

    ids = count()

    def build(eqs, depth, shift):
        suited, change, field = make_suitable_many(eqs)
        if shift is not None:
            change = CoordChange.translation(0, shift).then(change)
        rs = tuple(e.mult_at_origin() if e.constant_term().is_zero() else 0 for e in suited)
        node = JointNode(next(ids), depth, field, tuple(suited), rs, shift, change)
        if rs[0] >= 2:
            if depth >= max_depth:
                raise DepthCapExceeded(
                    f"resolution exceeded max depth {max_depth}; lead curve still singular"
                )
            transforms = [_chart_transform(e, r) for e, r in zip(suited, rs)]
            for alpha, _m in _split_fiber(fiber_poly(transforms[0])):
                child_eqs = [
                    translate(t.rename(AFFINE).map_field(alpha.field), 0, alpha)
                    for t in transforms
                ]
                node.children.append(build(child_eqs, depth + 1, alpha))
        return node

    return JointTree(build(list(curves), 0, None), labels)


# ---------------------------------------------------------------------------
# the Appendix recursion: one branch, tangent direction normalized each step
# ---------------------------------------------------------------------------


def _is_pure_y_power(L: MultiPoly) -> bool:
    keys = list(L.terms)
    return len(keys) == 1 and keys[0][0] == 0


def appendix_sequence(F: MultiPoly, n: int):
    """Iterate F^(i-1)(X, XY) = X^r F^(i)(X, Y - a_i X) for i = 2..n.

    F must have lowest form c*y^r.  Each stage demands a unique point of
    multiplicity r on the exceptional line; when that breaks (it must,
    for irreducible F), HypothesisFailed(stage) is raised carrying the
    stages completed so far.  Returns (stages, phi) where stages is a list
    of (i, F^(i), a_i) starting at (1, F, None) and phi(x) = sum a_i x^i.
    """
    if F.is_zero():
        raise ZeroPolynomial("appendix recursion needs a nonzero curve")
    if n < 1:
        raise ValueError("stage count must be at least 1")
    r = F.mult_at_origin()
    if r < 1:
        raise ValueError("curve does not pass through the origin")
    if not _is_pure_y_power(F.lowest_form()):
        raise ValueError("lowest form must be c*y^r; shear the input first")

    stages = [(1, F, None)]
    phi = MultiPoly.zero(F.field, AFFINE)
    if r == 1:
        # already smooth: nothing forces the process to stop, and nothing
        # interesting happens; report the trivial sequence
        return stages, phi

    cur = F
    for i in range(2, n + 1):
        Fp = _chart_transform(cur, r).rename(AFFINE)
        m = Fp.mult_at_origin()
        if m < r:
            err = HypothesisFailed(i, f"multiplicity dropped from {r} to {m}")
            err.stages = stages
            err.phi = phi
            raise err
        L = Fp.lowest_form()
        a = _unique_tangent(L, r)
        if a is None:
            err = HypothesisFailed(i, "tangent cone is not a single r-fold line")
            err.stages = stages
            err.phi = phi
            raise err
        xv = MultiPoly.var(Fp.field, "x", AFFINE)
        yv = MultiPoly.var(Fp.field, "y", AFFINE)
        cur = Fp.substitute({"y": yv + xv * a})
        phi = phi.map_field(Fp.field) + MultiPoly(Fp.field, AFFINE, {(i, 0): a})
        stages.append((i, cur, a))
    return stages, phi


def _unique_tangent(L: MultiPoly, r: int):
    """The scalar a with L = c*(y - a*x)^r, or None."""
    coeffs = [L.coeff((r - j, j)) for j in range(r + 1)]
    u = UniPoly(L.field, coeffs, "t")
    if u.degree != r:
        return None
    _unit, factors = uni_factor(u)
    if len(factors) != 1:
        return None
    fac, mult = factors[0]
    if mult != r or fac.degree != 1:
        return None
    return -fac.coeff(0)
