"""Tight right-hand sides and simplex-face decomposition coefficients.

Every subset of the ground set has a tight supporting value z computed from
its two-level spine; Moebius inversion of z gives the coefficients y of the
decomposition of the polytope into dilated faces of the standard simplex.
The closed form for y is supported on negative paths; the Moebius oracle
stays available as the runtime ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from .errors import BoundExceeded, InvalidPath, InversionMismatch
from .fans import kappa_extended
from .spines import Spine, one_node_spine
from .trees import SignedTree


def two_level_spine(tree: SignedTree, subset: Iterable) -> Spine:
    """The unique spine whose source labels union to the given subset.

    Computed by sweeping the two-block ordered partition (subset first);
    the extreme subsets collapse to the one-node spine.
    """
    subset = frozenset(subset)
    if not subset or subset == tree.standard_set:
        return one_node_spine(tree)
    return kappa_extended(tree, (subset, tree.standard_set - subset))


def _source_nodes(spine: Spine, subset: frozenset) -> tuple:
    return tuple(node for node in spine.nodes if node <= subset)


def tight_rhs(tree: SignedTree, subset: Iterable) -> int:
    """The minimum of the subset-coordinate sum over all polytope vertices.

    Evaluated on the two-level spine: the binomial values of its source
    sets, corrected by the full binomial once per extra arc at each source
    node.
    """
    subset = frozenset(subset)
    if not subset:
        return 0
    nu = tree.nu
    spine = two_level_spine(tree, subset)
    total = sum(
        comb(len(spine.source_set(arc)) + 1, 2) for arc in spine.arcs
    )
    degree_excess = sum(
        len(spine._incident[node]) - 1 for node in _source_nodes(spine, subset)
    )
    return total - comb(nu + 1, 2) * degree_excess


@dataclass(frozen=True)
class NegativePath:
    members: frozenset
    endpoints: tuple  # (p, q) with p <= q; p == q for singletons


def negative_paths(tree: SignedTree) -> tuple:
    """Subsets spanning a tree path that contain all its negative vertices.

    The endpoints always belong; interior positive vertices are optional.
    Singletons always qualify.
    """
    vertices = sorted(tree.standard)
    paths = []
    for v in vertices:
        paths.append(NegativePath(frozenset({v}), (v, v)))
    for p, q in combinations(vertices, 2):
        route = tree.path_between(p, q)
        interior = route[1:-1]
        required = [w for w in interior if w in tree.negatives]
        optional = [w for w in interior if w in tree.positives]
        base = frozenset({p, q}) | frozenset(required)
        for r in range(len(optional) + 1):
            for extra in combinations(optional, r):
                paths.append(NegativePath(base | frozenset(extra), (p, q)))
    return tuple(sorted(paths, key=lambda np: (len(np.members), tuple(sorted(np.members)))))


def _component_sizes(tree: SignedTree, vertex, away_from=None) -> list:
    sizes = []
    for comp in tree.components(frozenset({vertex})):
        if away_from is not None and away_from in comp:
            continue
        sizes.append(len(comp))
    return sizes


def path_weight(tree: SignedTree, path: NegativePath) -> Fraction:
    """The alternating weight of a negative path, as an exact rational.

    For distinct endpoints the weight multiplies the two endpoint factors
    (negative endpoints count -1, positive ones 1 plus the mass hanging
    away from the path) with a sign per positive member.  A positive
    singleton weighs minus half the sum over the components at the vertex
    of (nu - size) * (size + 1); that value can be half-integral on its
    own, and only the degree correction of the coefficient formula makes
    the combination integral.
    """
    p, q = path.endpoints
    members = path.members
    if p == q:
        if p not in members or members != {p}:
            raise InvalidPath("singleton path must consist of its endpoint")
        if p in tree.negatives:
            return Fraction(1)
        nu = tree.nu
        total = sum(
            (nu - len(comp)) * (len(comp) + 1)
            for comp in tree.components(frozenset({p}))
        )
        return -Fraction(total, 2)

    route = tree.path_between(p, q)
    if not members <= frozenset(route):
        raise InvalidPath("members must lie on the endpoint path")
    positive_members = sum(1 for v in members if v in tree.positives)

    def endpoint_factor(x, y):
        if x in tree.negatives:
            return -1
        return 1 + sum(_component_sizes(tree, x, away_from=y))

    sign = -1 if positive_members % 2 else 1
    return Fraction(sign * endpoint_factor(p, q) * endpoint_factor(q, p))


@dataclass(frozen=True)
class CoefficientTable:
    z: tuple  # (subset, int) pairs over nonempty subsets
    y: tuple  # (subset, int) pairs over nonempty subsets
    checked: bool  # True when verified against the Moebius oracle

    def z_of(self, subset: Iterable) -> int:
        return dict(self.z)[frozenset(subset)]

    def y_of(self, subset: Iterable) -> int:
        return dict(self.y)[frozenset(subset)]


def _subset_key(pair) -> tuple:
    return (len(pair[0]), tuple(sorted(pair[0])))


def minkowski_coefficients(
    tree: SignedTree, max_nu: int = 7, check: bool = True
) -> CoefficientTable:
    """Closed-form decomposition coefficients, optionally oracle-checked.

    y vanishes off negative paths; positive singletons add the degree
    correction nu * deg / 2 + 1 to their weight; every other negative path
    contributes its weight as is.
    """
    if tree.nu > max_nu:
        raise BoundExceeded(f"nu = {tree.nu} exceeds the bound {max_nu}")
    nu = tree.nu
    vertices = sorted(tree.standard)

    y = {}
    for r in range(1, nu + 1):
        for combo in combinations(vertices, r):
            y[frozenset(combo)] = 0
    for path in negative_paths(tree):
        weight = path_weight(tree, path)
        if len(path.members) == 1:
            (member,) = path.members
            if member in tree.positives:
                weight += Fraction(nu * tree.degree(member), 2) + 1
        if weight.denominator != 1:
            raise InvalidPath(
                f"non-integral coefficient {weight} on {sorted(path.members)}"
            )
        y[path.members] = int(weight)

    z = {}
    for subset in y:
        z[subset] = tight_rhs(tree, subset)

    checked = False
    if check:
        oracle = dict(moebius_oracle(tree, max_nu=max_nu))
        for subset, value in y.items():
            if oracle[subset] != value:
                raise InversionMismatch(
                    f"closed form gives {value} but Moebius inversion "
                    f"{oracle[subset]} on {sorted(subset)}"
                )
        checked = True
    else:
        for subset, z_value in z.items():
            implied = sum(y[w] for w in y if w <= subset)
            if implied != z_value:
                raise InversionMismatch(
                    f"y does not invert to z on {sorted(subset)}"
                )

    return CoefficientTable(
        tuple(sorted(z.items(), key=_subset_key)),
        tuple(sorted(y.items(), key=_subset_key)),
        checked,
    )


def moebius_oracle(tree: SignedTree, max_nu: int = 7) -> tuple:
    """Inclusion-exclusion of the tight right-hand sides: the ground truth y."""
    if tree.nu > max_nu:
        raise BoundExceeded(f"nu = {tree.nu} exceeds the bound {max_nu}")
    vertices = sorted(tree.standard)
    z = {frozenset(): 0}
    for r in range(1, len(vertices) + 1):
        for combo in combinations(vertices, r):
            z[frozenset(combo)] = tight_rhs(tree, combo)
    y = []
    for r in range(1, len(vertices) + 1):
        for combo in combinations(vertices, r):
            subset = frozenset(combo)
            value = 0
            members = sorted(subset)
            for k in range(len(members) + 1):
                for sub in combinations(members, k):
                    value += (-1) ** (len(subset) - k) * z[frozenset(sub)]
            y.append((subset, value))
    return tuple(sorted(y, key=_subset_key))
