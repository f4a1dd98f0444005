"""Closed-form cohesion and separation measures for node and link sets.

Cohesion of a link set is measured by the number of directly connected
link pairs and its density relative to the star maximum.  Separation is
measured by random-walk escape ratios: persistence/escape probability,
conductance and normalized cut for node sets, and the normalized
node-cut for link sets (cutting nodes instead of links).

Counts are integers, ratios are accumulated as exact rationals and
returned as 64-bit floats; identities such as complement symmetry of the
node-cut weight hold to better than 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .graph import LinkSet, NodeSet


# ---------------------------------------------------------------------------
# Link-set cohesion


def pair_connectedness(link_set: LinkSet) -> int:
    """Number of ordered pairs of directly connected links in the set:
    ``sum_i kin_i * (kin_i - 1)`` over all nodes."""
    if link_set.size < 1:
        raise PreconditionError("pair connectedness needs at least one link")
    return sum(k * (k - 1) for k in link_set.kin_node if k > 1)


def connectedness_density(link_set: LinkSet) -> float:
    """Pair connectedness relative to its maximum ``|L| * (|L| - 1)``,
    which a star attains.  Undefined (0/0) for a single link, so sets of
    fewer than two links are rejected."""
    size = link_set.size
    if size < 2:
        raise PreconditionError(
            f"connectedness density is undefined for {size} link(s); need at least 2"
        )
    return pair_connectedness(link_set) / (size * (size - 1))


# ---------------------------------------------------------------------------
# Node-set separation


def node_volumes(node_set: NodeSet) -> tuple[int, int, int]:
    """Degree volumes ``(k_in, k_out, k)`` of a node set.

    ``k`` sums total degrees over members; ``k_in`` counts internal edge
    endpoints (an internal edge contributes 2); ``k_out = k - k_in``.
    """
    graph = node_set.graph
    members = node_set.nodes
    k = sum(graph.degree[i] for i in members)
    k_in = 0
    for i in members:
        for j in graph.adjacency[i]:
            if j in members:
                k_in += 1
    return k_in, k - k_in, k


def persistence_probability(node_set: NodeSet) -> float:
    """Probability that a random walker inside the set stays inside on
    its next step: ``k_in / k``."""
    k_in, _, k = node_volumes(node_set)
    if k == 0:
        raise PreconditionError("persistence undefined: node set has zero degree volume")
    return k_in / k


def node_escape_probability(node_set: NodeSet) -> float:
    """Complement of persistence: ``k_out / k``."""
    _, k_out, k = node_volumes(node_set)
    if k == 0:
        raise PreconditionError("escape undefined: node set has zero degree volume")
    return k_out / k


def is_weak_community(node_set: NodeSet) -> bool:
    """Radicchi-style weak-community test: more internal than external
    degree, equivalently persistence above one half."""
    k_in, k_out, _ = node_volumes(node_set)
    return k_in > k_out


def conductance(node_set: NodeSet) -> float:
    """Cut size normalized by the smaller side's degree volume."""
    graph = node_set.graph
    if node_set.size == 0 or node_set.size == graph.n:
        raise PreconditionError("conductance needs a non-empty proper node subset")
    _, k_out, k = node_volumes(node_set)
    k_rest = 2 * graph.m - k
    return k_out / min(k, k_rest)


def normalized_cut(node_set: NodeSet) -> float:
    """Cut size normalized by both sides: ``k_out/k(C) + k_out/k(V-C)``."""
    graph = node_set.graph
    if node_set.size == 0 or node_set.size == graph.n:
        raise PreconditionError("normalized cut needs a non-empty proper node subset")
    _, k_out, k = node_volumes(node_set)
    k_rest = 2 * graph.m - k
    return k_out / k + k_out / k_rest


# ---------------------------------------------------------------------------
# Link-set separation


def _cut_weight_fraction(link_set: LinkSet) -> Fraction:
    """Exact node-cut weight ``sum_i kin_i * kout_i / k_i`` with
    ``kout_i = k_i - kin_i`` taken against full graph degrees."""
    degree = link_set.graph.degree
    if link_set.graph.n == 0:
        return Fraction(0)
    # single shared denominator keeps this an integer accumulation
    denom = math.lcm(*(d for d in degree if d > 0)) if any(degree) else 1
    total = 0
    for i, kin in enumerate(link_set.kin_node):
        if kin == 0:
            continue
        kout = degree[i] - kin
        if kout:
            total += kin * kout * (denom // degree[i])
    return Fraction(total, denom)


def node_cut_weight(link_set: LinkSet) -> float:
    """Weight of the node cut separating a link set from the rest of the
    graph; zero exactly when no touched node has external links."""
    return float(_cut_weight_fraction(link_set))


@dataclass(frozen=True)
class SeparationReport:
    """Normalized node-cut of a link set within a context set.

    ``value`` is the sum of the two escape terms; ``escape`` is the
    link-node-link walker's escape probability from the set itself and
    ``complement_escape`` the one from the context complement.
    """

    cut_weight: float
    kin: int
    value: float
    escape: float
    complement_escape: float


def normalized_node_cut(link_set: LinkSet, context: LinkSet) -> SeparationReport:
    """Separation of ``link_set`` within ``context``.

    Both the set and its complement in the context must be non-empty.
    The value is ``sigma/k_in(L) + sigma/k_in(E-L)`` with
    ``k_in(E-L) = 2|E| - k_in(L)``; it never exceeds 2.  For an
    alternating ring (every second cycle edge in the set) both escape
    terms equal 1/2, so the value is exactly 1.
    """
    if link_set.graph is not context.graph:
        raise PreconditionError("link set and context belong to different graphs")
    if not link_set.edges <= context.edges:
        raise PreconditionError("link set is not a subset of its context")
    if link_set.size == 0:
        raise PreconditionError("normalized node-cut needs a non-empty link set")
    kin = link_set.kin_total
    kin_rest = 2 * context.size - kin
    if kin_rest == 0:
        raise PreconditionError(
            "normalized node-cut is undefined when the set equals its context"
        )
    sigma = _cut_weight_fraction(link_set)
    esc = sigma / kin
    esc_rest = sigma / kin_rest
    return SeparationReport(
        cut_weight=float(sigma),
        kin=kin,
        value=float(esc + esc_rest),
        escape=float(esc),
        complement_escape=float(esc_rest),
    )


def link_escape_probability(link_set: LinkSet) -> float:
    """Escape probability of the link-node-link walker:
    ``sigma / k_in(L)``."""
    if link_set.size == 0:
        raise PreconditionError("escape undefined for an empty link set")
    return float(_cut_weight_fraction(link_set) / link_set.kin_total)
