"""Lattice families for tests and benchmarks, plus exhaustive small-case
enumeration.

Every generator is deterministic: the same spec and seed produce byte
identical TRG files.  Outputs are valid partial lattices by construction;
the test suite re-checks them against the validators anyway.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .trg import TRG

FAMILIES = (
    "chain",
    "antichain_bounded",
    "boolean",
    "divisor",
    "grid",
    "random_distributive",
    "random_poset_completion",
)

COMPLETION_NODE_CAP = 5000
COMPLETION_BASE_CAP = 64
DISTRIBUTIVE_TARGET_CAP = 20000


class GenerationLimitError(ValueError):
    """A family spec asks for more than the generator supports."""


@dataclass(frozen=True)
class FamilySpec:
    """Which lattice to generate.

    The size parameter is family specific: chain length, antichain width,
    atom count (boolean), the integer itself (divisor), grid dimensions
    (a pair, or a single target that is split near-square), target node
    count (random_distributive), or base poset size (random_poset_completion,
    at most 64 elements before completion).
    """

    family: str
    size: int | tuple[int, ...]
    seed: int = 0


def generate(spec: FamilySpec) -> TRG:
    """Build the TRG for a family spec; see :data:`FAMILIES` for names."""
    fam = spec.family
    if fam == "chain":
        return chain(_scalar(spec))
    if fam == "antichain_bounded":
        return antichain_bounded(_scalar(spec))
    if fam == "boolean":
        return boolean(_scalar(spec))
    if fam == "divisor":
        return divisor(_scalar(spec))
    if fam == "grid":
        if isinstance(spec.size, tuple):
            rows, cols = spec.size
        else:
            rows, cols = _near_square(spec.size)
        return grid(rows, cols)
    if fam == "random_distributive":
        return random_distributive(_scalar(spec), spec.seed)
    if fam == "random_poset_completion":
        return random_poset_completion(_scalar(spec), spec.seed)
    raise ValueError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")


def _scalar(spec: FamilySpec) -> int:
    if isinstance(spec.size, tuple):
        raise ValueError(f"family {spec.family!r} takes a single size parameter")
    return spec.size


def _near_square(target: int) -> tuple[int, int]:
    import math

    rows = max(1, math.isqrt(target))
    cols = max(1, target // rows)  # round down: rows * cols never exceeds target
    return rows, cols


def _from_edges(n: int, edges) -> TRG:
    out_nb = [[] for _ in range(n)]
    in_nb = [[] for _ in range(n)]
    edges = sorted(set(edges))
    for u, v in edges:
        out_nb[u].append(v)
        in_nb[v].append(u)
    return TRG(n=n, out_neighbours=out_nb, in_neighbours=in_nb, edge_count=len(edges))


def chain(n: int) -> TRG:
    """Total order 0 < 1 < ... < n-1."""
    if n < 1:
        raise GenerationLimitError("chain needs at least one element")
    return _from_edges(n, ((i, i + 1) for i in range(n - 1)))


def antichain_bounded(width: int) -> TRG:
    """An antichain of ``width`` elements with a common bottom and top."""
    if width < 1:
        raise GenerationLimitError("antichain width must be positive")
    top = width + 1
    edges = [(0, i) for i in range(1, width + 1)]
    edges += [(i, top) for i in range(1, width + 1)]
    return _from_edges(width + 2, edges)


def boolean(atoms: int) -> TRG:
    """Subsets of an ``atoms``-element set ordered by inclusion (n = 2**atoms).

    Node ids are the subset bitmasks; covering means adding one element.
    """
    if not 0 <= atoms <= 16:
        raise GenerationLimitError("boolean atoms must be in [0, 16]")
    n = 1 << atoms
    edges = []
    for s in range(n):
        for b in range(atoms):
            if not s >> b & 1:
                edges.append((s, s | 1 << b))
    return _from_edges(n, edges)


def divisor(number: int) -> TRG:
    """Divisors of ``number`` under divisibility; covering means a prime ratio.

    Ids are dense, assigned in ascending divisor order.
    """
    if number < 1:
        raise GenerationLimitError("divisor lattice needs a positive integer")
    factors = _factorise(number)
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    divs.sort()
    index = {d: i for i, d in enumerate(divs)}
    edges = []
    for d in divs:
        for p in factors:
            if number % (d * p) == 0:
                edges.append((index[d], index[d * p]))
    return _from_edges(len(divs), edges)


def _factorise(number: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    rest = number
    p = 2
    while p * p <= rest:
        while rest % p == 0:
            factors[p] = factors.get(p, 0) + 1
            rest //= p
        p += 1 if p == 2 else 2
    if rest > 1:
        factors[rest] = factors.get(rest, 0) + 1
    return factors


def grid(rows: int, cols: int) -> TRG:
    """Product of two chains: points (i, j) ordered coordinatewise."""
    if rows < 1 or cols < 1:
        raise GenerationLimitError("grid dimensions must be positive")
    def nid(i, j):
        return i * cols + j
    edges = []
    for i in range(rows):
        for j in range(cols):
            if i + 1 < rows:
                edges.append((nid(i, j), nid(i + 1, j)))
            if j + 1 < cols:
                edges.append((nid(i, j), nid(i, j + 1)))
    return _from_edges(rows * cols, edges)


def random_distributive(target: int, seed: int = 0) -> TRG:
    """Lattice of downsets of a random poset, grown to at least ``target``
    elements (at most double).

    The base poset is built one maximal element at a time: each new element
    sits above a randomly chosen existing downset, which lets the family of
    downsets be maintained incrementally and the size steered.  Downset
    lattices are distributive, and any distributive lattice on n elements
    has maximum degree at most log2(n): a node covering d others does so by
    removing d maximal elements, and dropping any subset of those gives 2**d
    distinct lattice elements.
    """
    if not 1 <= target <= DISTRIBUTIVE_TARGET_CAP:
        raise GenerationLimitError(
            f"random_distributive target must be in [1, {DISTRIBUTIVE_TARGET_CAP}]"
        )
    rng = random.Random(seed)
    strict_below: list[int] = []  # per poset element, mask of elements below it
    downs = [0]  # downset masks of the base poset, in creation order
    while len(downs) < target:
        if len(strict_below) > 2048:
            raise GenerationLimitError("base poset grew past 2048 elements")
        base = downs[rng.randrange(len(downs))]
        x = len(strict_below)
        strict_below.append(base)
        bit = 1 << x
        added = [m | bit for m in downs if m & base == base]
        downs.extend(added)
    order = sorted(downs, key=lambda m: (m.bit_count(), m))
    index = {m: i for i, m in enumerate(order)}
    p = len(strict_below)
    edges = []
    for m in order:
        for x in range(p):
            bit = 1 << x
            if not m & bit and strict_below[x] & m == strict_below[x]:
                edges.append((index[m], index[m | bit]))
    return _from_edges(len(order), edges)


def random_poset_completion(base_size: int, seed: int = 0,
                            relation_probability: float = 0.3) -> TRG:
    """Smallest complete lattice containing a random poset (cut completion).

    The base poset on ``base_size`` elements relates each pair, visited in a
    random permutation order, with probability ``relation_probability``,
    then closes transitively.  The completion is the family of all
    intersections of principal downsets (plus the full set), ordered by
    inclusion; its size is capped at 5000 nodes.
    """
    if not 1 <= base_size <= COMPLETION_BASE_CAP:
        raise GenerationLimitError(
            f"base poset size must be in [1, {COMPLETION_BASE_CAP}]"
        )
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(base_size) for j in range(i + 1, base_size)]
    rng.shuffle(pairs)
    below = [1 << i for i in range(base_size)]  # reflexive downset masks
    chosen = [(i, j) for i, j in pairs if rng.random() < relation_probability]
    for i, j in sorted(chosen):  # i < j everywhere, so natural order closes transitively
        below[j] |= below[i]
    full = (1 << base_size) - 1
    closed = {full}
    queue = [full]
    while queue:
        s = queue.pop()
        for g_mask in below:
            t = s & g_mask
            if t not in closed:
                if len(closed) >= COMPLETION_NODE_CAP:
                    raise GenerationLimitError(
                        f"completion exceeds {COMPLETION_NODE_CAP} nodes"
                    )
                closed.add(t)
                queue.append(t)
    order = sorted(closed, key=lambda m: (m.bit_count(), m))
    index = {m: i for i, m in enumerate(order)}
    n = len(order)
    edges = []
    by_size: dict[int, list[int]] = {}
    for m in order:
        by_size.setdefault(m.bit_count(), []).append(m)
    sizes = sorted(by_size)
    for t in order:
        # upper covers of t: minimal proper supersets within the family
        covers: list[int] = []
        tc = t.bit_count()
        for sz in sizes:
            if sz <= tc:
                continue
            for s in by_size[sz]:
                if s & t == t and not any(c & s == c for c in covers):
                    covers.append(s)
        for s in covers:
            edges.append((index[t], index[s]))
    return _from_edges(n, edges)


def spec_for_target(family: str, target: int, seed: int = 0) -> FamilySpec:
    """Spec whose generated lattice lands close to ``target`` nodes.

    Used by benchmarks; the realised node count is whatever the family
    yields (read it off the TRG) and slope fits use the realised sizes.
    """
    if family == "chain":
        return FamilySpec("chain", target, seed)
    if family == "antichain_bounded":
        return FamilySpec("antichain_bounded", max(1, target - 2), seed)
    if family == "boolean":
        atoms = max(0, target.bit_length() - 1)
        return FamilySpec("boolean", atoms, seed)
    if family == "divisor":
        return FamilySpec("divisor", _divisor_target(target), seed)
    if family == "grid":
        return FamilySpec("grid", _near_square(target), seed)
    if family == "random_distributive":
        return FamilySpec("random_distributive", target, seed)
    if family == "random_poset_completion":
        return FamilySpec("random_poset_completion", min(COMPLETION_BASE_CAP, target), seed)
    raise ValueError(f"unknown family {family!r}")


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _divisor_target(target: int) -> int:
    """An integer with close to ``target`` divisors: products of prime cubes
    (divisor count 4 per prime) and single primes (count 2)."""
    number = 1
    count = 1
    i = 0
    while count * 4 <= target and i < len(_PRIMES):
        number *= _PRIMES[i] ** 3
        count *= 4
        i += 1
    while count * 2 <= target and i < len(_PRIMES):
        number *= _PRIMES[i]
        count *= 2
        i += 1
    return number


def enumerate_small_lattices(n: int):
    """Yield the TRG of every partial lattice on n <= 7 elements whose natural
    id order is a linear extension, exactly once each.

    Enumerates the subsets of the pairs (i, j) with i < j, keeps the
    transitive ones, filters by the lattice property, and emits the
    transitive reduction.  Every partial lattice on n elements appears up to
    relabelling, which is what oracle-equivalence sweeps need.
    """
    if not 1 <= n <= 7:
        raise ValueError("exhaustive enumeration supports 1 <= n <= 7")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    npairs = len(pairs)
    for mask in range(1 << npairs):
        above = [0] * n  # strictly-greater masks
        for b in range(npairs):
            if mask >> b & 1:
                i, j = pairs[b]
                above[i] |= 1 << j
        if not _is_transitive(above, n):
            continue
        if not _mask_lattice_property(above, n):
            continue
        yield _reduce_relation(above, n)


def _is_transitive(above: list[int], n: int) -> bool:
    for i in range(n):
        rest = above[i]
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if above[j] & ~above[i]:
                return False
    return True


def _mask_lattice_property(above: list[int], n: int) -> bool:
    up = [above[i] | 1 << i for i in range(n)]
    down = [1 << i for i in range(n)]
    for i in range(n):
        rest = above[i]
        while rest:
            low = rest & -rest
            down[low.bit_length() - 1] |= 1 << i
            rest ^= low
    for a in range(n):
        for b in range(a + 1, n):
            for masks in (up, down):
                s = masks[a] & masks[b]
                maximal = 0
                rest = s
                while rest:
                    low = rest & -rest
                    z = low.bit_length() - 1
                    rest ^= low
                    other = up if masks is down else down
                    if other[z] & s == 1 << z:
                        maximal += 1
                        if maximal > 1:
                            return False
    return True


def _reduce_relation(above: list[int], n: int) -> TRG:
    below = [0] * n
    for i in range(n):
        rest = above[i]
        while rest:
            low = rest & -rest
            below[low.bit_length() - 1] |= 1 << i
            rest ^= low
    edges = []
    for i in range(n):
        rest = above[i]
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            # covering pair iff nothing sits strictly between i and j
            if not above[i] & below[j]:
                edges.append((i, j))
    return _from_edges(n, edges)
