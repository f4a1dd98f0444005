"""Growing hierarchical core-periphery structures ("towns") in a link
community.

A town is grown from a large star by attaching smaller stars: every star
of the community is a centre candidate, the largest founds the first
town, and each following candidate either joins one town, is split
between several, founds a new town, or is dropped because it adds
nothing.  A resolution parameter ``q`` in ``[0, 1)`` sets the minimum
share of a star's outer nodes that must already lie inside a town for a
node-overlap attachment: the test is strictly ``shared > q * star_size``.

Candidates are ranked by size once, up front; the ranking does not
change while towns grow.  Ties are broken by ascending centre index, or
randomly when a seed is given.  With the deterministic tie rule the
whole decomposition is reproducible bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, PreconditionError
from .graph import Graph, LinkSet, Star, enumerate_stars, is_link_connected

DECISION_UNITED = "united"
DECISION_SPLIT = "split"
DECISION_NEW_TOWN = "new-town"
DECISION_SKIPPED = "skipped"
DECISION_PRUNED = "pruned"

ROUTE_LINK = "link"
ROUTE_NODE_OVERLAP = "node-overlap"
ROUTE_FOUNDER = "founder"

KIND_FOUNDER = "founder"
KIND_LINK_SHARED = "link-shared"
KIND_NODE_OVERLAP = "node-overlap"
KIND_SPLIT_PART = "split-part"


@dataclass(frozen=True)
class StarAttachment:
    """One entry of a town's growth history."""

    centre: int
    kind: str  # founder | link-shared | node-overlap | split-part
    overlap: Fraction  # shared outer nodes / star size at attachment time
    star_size: int


@dataclass(frozen=True)
class Town:
    """A grown core-periphery structure: founding centre, final body, and
    the ordered record of every star that shaped it."""

    centre: int
    body: LinkSet
    star_log: tuple[StarAttachment, ...]


@dataclass(frozen=True)
class TownAttachment:
    """How one candidate star connected to one town at decision time."""

    town: int
    route: str  # link | node-overlap | founder
    overlap: Fraction


@dataclass(frozen=True)
class MergeRecord:
    """One candidate decision in processing order."""

    centre: int
    star_size: int
    decision: str  # united | split | new-town | skipped | pruned
    attachments: tuple[TownAttachment, ...]


@dataclass(frozen=True)
class TownDecomposition:
    """Result of one run at a fixed resolution.

    Town bodies jointly cover the input community; bodies may overlap in
    links and nodes, and the per-pair overlaps are first-class outputs.
    """

    q: Fraction
    towns: tuple[Town, ...]
    merge_log: tuple[MergeRecord, ...]
    overlap_links: dict[tuple[int, int], frozenset[int]]
    overlap_nodes: dict[tuple[int, int], frozenset[int]]

    @property
    def shared_link_ids(self) -> frozenset[int]:
        """Edges that belong to more than one town."""
        out: set[int] = set()
        for links in self.overlap_links.values():
            out |= links
        return frozenset(out)


class _TownState:
    """Mutable town under construction."""

    __slots__ = ("centre", "body", "nodes", "star_centres", "star_log")

    def __init__(self, founder: Star):
        self.centre = founder.centre
        self.body: set[int] = set(founder.links)
        self.nodes: set[int] = {founder.centre} | set(founder.outer_nodes)
        self.star_centres: set[int] = {founder.centre}
        self.star_log: list[StarAttachment] = [
            StarAttachment(founder.centre, KIND_FOUNDER, Fraction(1), founder.size)
        ]

    def absorb(self, graph: Graph, links: frozenset[int] | set[int]) -> None:
        for eid in links:
            if eid not in self.body:
                self.body.add(eid)
                u, v = graph.edges[eid]
                self.nodes.add(u)
                self.nodes.add(v)


def _as_resolution(q) -> Fraction:
    """Normalize ``q`` to an exact fraction and check its domain.

    Pass a ``Fraction`` or a string such as ``"4/9"`` when the threshold
    must sit exactly on a rational boundary; floats are taken at their
    binary value.
    """
    try:
        q = Fraction(q)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise PreconditionError(f"invalid resolution {q!r}") from exc
    if not 0 <= q < 1:
        raise PreconditionError(f"resolution must lie in [0, 1), got {q}")
    return q


def build_towns(
    community: LinkSet,
    q: Fraction | float | int | str,
    tie_seed: int | None = None,
) -> TownDecomposition:
    """Decompose a link-connected community into towns at resolution ``q``.

    A candidate star connects to a town when it shares at least one link
    with the town's body, when its centre has a direct link to one of the
    town's star centres, or when strictly more than ``q`` times its size
    of its outer nodes already belong to the town.  A candidate connected
    to exactly one town is united with it wholly; one connected to
    several towns is split: each involved town receives the candidate's
    links leading into it, and links leading into none of them go to the
    towns whose node overlap clears the resolution threshold (to every
    involved town when none does).  Candidates whose links are all
    covered by towns are
    pruned, and front candidates whose every town-incident link is
    already inside the respective town are skipped (they would only
    re-centre inside already covered stars).

    Returns the towns plus a complete decision log, which the resolution
    sweep uses to derive the next threshold.
    """
    q = _as_resolution(q)
    graph = community.graph
    if community.size == 0:
        raise PreconditionError("cannot decompose an empty link set")
    if not is_link_connected(community):
        raise PreconditionError(
            "community is not link-connected; decompose it with "
            "connected_components() and run each component separately"
        )

    rng = random.Random(tie_seed) if tie_seed is not None else None
    ranked = enumerate_stars(community, rng=rng)

    founder = ranked[0]
    towns: list[_TownState] = [_TownState(founder)]
    covered: set[int] = set(founder.links)
    merge_log: list[MergeRecord] = [
        MergeRecord(
            founder.centre,
            founder.size,
            DECISION_NEW_TOWN,
            (TownAttachment(0, ROUTE_FOUNDER, Fraction(1)),),
        )
    ]

    def town_incident_uncovered(cand: Star) -> tuple[bool, bool]:
        """(has a link leading into some town, all such links already
        inside that town).  A link of the candidate leads into a town
        when its outer endpoint is one of the town's nodes."""
        touches = False
        all_inside = True
        for eid in cand.links:
            u, v = graph.edges[eid]
            outer = v if u == cand.centre else u
            for town in towns:
                if outer in town.nodes:
                    touches = True
                    if eid not in town.body:
                        all_inside = False
                        return touches, all_inside
        return touches, all_inside

    decided_once = False
    for cand in ranked[1:]:
        if decided_once:
            # lazy form of the per-step cleanup: a fully covered star is
            # pruned, and a front candidate is skipped when it has links
            # into towns but every one of them is already inside
            if cand.links <= covered:
                merge_log.append(
                    MergeRecord(cand.centre, cand.size, DECISION_PRUNED, ())
                )
                continue
            touches, all_inside = town_incident_uncovered(cand)
            if touches and all_inside:
                merge_log.append(
                    MergeRecord(cand.centre, cand.size, DECISION_SKIPPED, ())
                )
                continue
        decided_once = True

        connected: list[TownAttachment] = []
        for idx, town in enumerate(towns):
            shares_link = not cand.links.isdisjoint(town.body)
            direct_centre_link = not cand.outer_nodes.isdisjoint(town.star_centres)
            shared_outer = len(cand.outer_nodes & town.nodes)
            overlap = Fraction(shared_outer, cand.size)
            if shares_link or direct_centre_link:
                connected.append(TownAttachment(idx, ROUTE_LINK, overlap))
            elif shared_outer > q * cand.size:
                connected.append(TownAttachment(idx, ROUTE_NODE_OVERLAP, overlap))

        if not connected:
            towns.append(_TownState(cand))
            covered |= cand.links
            merge_log.append(
                MergeRecord(
                    cand.centre,
                    cand.size,
                    DECISION_NEW_TOWN,
                    (TownAttachment(len(towns) - 1, ROUTE_FOUNDER, Fraction(1)),),
                )
            )
        elif len(connected) == 1:
            att = connected[0]
            town = towns[att.town]
            town.absorb(graph, cand.links)
            kind = KIND_LINK_SHARED if att.route == ROUTE_LINK else KIND_NODE_OVERLAP
            town.star_log.append(
                StarAttachment(cand.centre, kind, att.overlap, cand.size)
            )
            covered |= cand.links
            merge_log.append(
                MergeRecord(cand.centre, cand.size, DECISION_UNITED, (att,))
            )
        else:
            # snapshot node sets so the split does not depend on the order
            # in which the involved towns receive their parts
            snapshots = {att.town: frozenset(towns[att.town].nodes) for att in connected}
            assigned: set[int] = set()
            parts: dict[int, set[int]] = {att.town: set() for att in connected}
            for eid in cand.links:
                u, v = graph.edges[eid]
                outer = v if u == cand.centre else u
                for att in connected:
                    if outer in snapshots[att.town]:
                        parts[att.town].add(eid)
                        assigned.add(eid)
            remaining = cand.links - assigned
            # leftover links follow the towns the star overlaps with beyond
            # the resolution threshold; a link-sharing town below it only
            # receives the links that lead into it
            overlap_towns = {att.town for att in connected if att.overlap > q}
            if not overlap_towns:
                overlap_towns = {att.town for att in connected}
            for att in connected:
                town = towns[att.town]
                extra = remaining if att.town in overlap_towns else frozenset()
                town.absorb(graph, parts[att.town] | extra)
                town.star_log.append(
                    StarAttachment(cand.centre, KIND_SPLIT_PART, att.overlap, cand.size)
                )
            covered |= cand.links
            merge_log.append(
                MergeRecord(cand.centre, cand.size, DECISION_SPLIT, tuple(connected))
            )

    if covered != community.edges:
        raise InvariantError(
            f"{len(community.edges - covered)} community links ended up in no town"
        )

    final_towns = tuple(
        Town(t.centre, LinkSet(graph, t.body), tuple(t.star_log)) for t in towns
    )
    overlap_links: dict[tuple[int, int], frozenset[int]] = {}
    overlap_nodes: dict[tuple[int, int], frozenset[int]] = {}
    for i in range(len(towns)):
        for j in range(i + 1, len(towns)):
            shared_links = frozenset(towns[i].body & towns[j].body)
            shared_nodes = frozenset(towns[i].nodes & towns[j].nodes)
            if shared_links or shared_nodes:
                overlap_links[(i, j)] = shared_links
                overlap_nodes[(i, j)] = shared_nodes

    return TownDecomposition(
        q=q,
        towns=final_towns,
        merge_log=tuple(merge_log),
        overlap_links=overlap_links,
        overlap_nodes=overlap_nodes,
    )
