"""
Braid Group Enumeration

Closure computations over the image of the braid group: the group order
modulo global phase, and orbits of states under braid gates.
"""
import logging
from collections import deque
from itertools import combinations
from typing import Dict, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

SignedPermutation = Tuple[int, ...]


def _braid_action(n_modes: int, p: int, q: int) -> SignedPermutation:
    """Signed image of every mode under conjugation by B_{p,q}"""
    image = list(range(1, n_modes + 1))
    image[p - 1] = q
    image[q - 1] = -p
    return tuple(image)


def _compose(first: SignedPermutation, second: SignedPermutation) -> SignedPermutation:
    """Action of 'first' followed by 'second'"""
    result = []
    for t in first:
        mapped = second[abs(t) - 1]
        result.append(mapped if t > 0 else -mapped)
    return tuple(result)


def enumerate_image_group(n_pairs: int, max_pairs: int = 3) -> int:
    """
    Order of the group generated by all B_{p,q} on 2n modes, modulo phase.

    Group elements are identified with their conjugation action on the
    Majorana operators, which is a signed permutation; the action is
    faithful modulo phase because only multiples of the identity commute
    with every c_p.

    Args:
        n_pairs: Number of mode pairs n
        max_pairs: Enumeration feasibility bound

    Returns:
        Group order, expected to be 2^{2n-1} (2n)!
    """
    if n_pairs < 1:
        raise ValueError(f"Need at least one pair, got {n_pairs}")
    if n_pairs > max_pairs:
        raise ValueError(f"Group enumeration limited to {max_pairs} pairs, got {n_pairs}")
    n_modes = 2 * n_pairs
    generators = [_braid_action(n_modes, p, q)
                  for p, q in combinations(range(1, n_modes + 1), 2)]
    identity = tuple(range(1, n_modes + 1))
    seen = {identity}
    frontier = deque([identity])
    while frontier:
        element = frontier.popleft()
        for gen in generators:
            child = _compose(element, gen)
            if child not in seen:
                seen.add(child)
                frontier.append(child)
    logger.info(f"Braid image group on {n_modes} modes has order {len(seen)}")
    return len(seen)


def expected_group_order(n_pairs: int) -> int:
    """2^{2n-1} (2n)!"""
    order = 2 ** (2 * n_pairs - 1)
    for k in range(2, 2 * n_pairs + 1):
        order *= k
    return order


def orbit_graph(start, max_pairs: int = 4, max_states: int = 100000) -> nx.Graph:
    """
    Graph of states reachable from start by braid gates.

    Nodes are canonical state keys; an edge joins two states related by one
    B_{p,q}. Works for any state exposing braid() and canonical_key().
    """
    n_modes = start.n_modes
    if n_modes // 2 > max_pairs:
        raise ValueError(f"Orbit enumeration limited to {max_pairs} pairs, got {n_modes // 2}")
    pairs = list(combinations(range(1, n_modes + 1), 2))
    graph = nx.Graph()
    start_key = start.canonical_key()
    graph.add_node(start_key)
    states: Dict[bytes, object] = {start_key: start}
    frontier = deque([start_key])
    while frontier:
        key = frontier.popleft()
        state = states.pop(key)
        for p, q in pairs:
            child = state.braid(p, q)
            child_key = child.canonical_key()
            if child_key not in graph:
                if graph.number_of_nodes() >= max_states:
                    raise ValueError(f"Orbit exceeds {max_states} states")
                graph.add_node(child_key)
                states[child_key] = child
                frontier.append(child_key)
            graph.add_edge(key, child_key, braid=(p, q))
    return graph


def orbit_size(start, max_pairs: int = 4, max_states: int = 100000) -> int:
    """Number of distinct states, modulo phase, reachable from start by braids"""
    graph = orbit_graph(start, max_pairs, max_states)
    if not nx.is_connected(graph):
        raise RuntimeError("Orbit graph is not connected")
    size = graph.number_of_nodes()
    logger.info(f"Orbit of {start.n_modes}-mode state has {size} states")
    return size
