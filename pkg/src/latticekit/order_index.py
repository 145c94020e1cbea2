"""Constant-time order testing over a block decomposition.

Two stores answer "is x <= y?" in O(1):

* one meet array per block header, mapping every element z to its meet
  with that header (so the representative of any element inside any
  principal block costs a single array read), and
* one membership dictionary per element holding its local downset (the
  part of its downset inside its own block).

The query splits into three cases.  If x sits in a principal block, map y
to its representative in that block and test membership in the
representative's local downset.  If x and y are both residual, test
membership directly.  A residual x can never be below a principal y.
Every call costs at most five probes (array reads, one dictionary
membership, and a few block-id comparisons).

The structure is immutable after the build; concurrent queries are safe.
Callers that want probe counts pass their own ``QueryStats`` recorder, so
counting never contends across threads.
"""

from __future__ import annotations

from .decomposition import BlockDecomposition, block_decompose
from .metrics import QueryStats, SpaceReport, ceil_sqrt
from .trg import TRG


class OrderIndex:
    """Header-meet arrays plus local-downset dictionaries; see module docs."""

    def __init__(self, g: TRG, bd: BlockDecomposition, header_meet, down,
                 build_edge_visits: int):
        self.g = g
        self.bd = bd
        self.n = g.n
        self.null = g.n  # sentinel id meaning "no meet" in the dense arrays
        self.header_meet = header_meet
        self.down = down
        self.build_edge_visits = build_edge_visits
        self._block_of = bd.block_of
        self._m = bd.m
        self.position = bd.extension.position

    # -- queries ---------------------------------------------------------

    def test_order(self, x: int, y: int, stats: QueryStats | None = None) -> bool:
        """True iff x <= y.  At most 5 probes, counted into ``stats``."""
        block_of = self._block_of
        bx = block_of[x]
        if bx < self._m:
            yi = self.header_meet[bx][y]
            if yi == self.null or block_of[yi] != bx:
                if stats is not None:
                    stats.array_probes += 1
                    stats.note_order_test(3)
                return False
            hit = x in self.down[yi]
            if stats is not None:
                stats.array_probes += 1
                stats.dict_probes += 1
                stats.note_order_test(4)
            return hit
        if block_of[y] == self._m:
            hit = x in self.down[y]
            if stats is not None:
                stats.dict_probes += 1
                stats.note_order_test(3)
            return hit
        if stats is not None:
            stats.note_order_test(2)
        return False

    leq = test_order

    def meet_with_header(self, i: int, x: int,
                         stats: QueryStats | None = None) -> int | None:
        """Meet of x with the header of principal block i: one array read."""
        if not 0 <= i < self._m:
            raise ValueError(f"block {i} is not principal")
        if stats is not None:
            stats.array_probes += 1
        z = self.header_meet[i][x]
        return None if z == self.null else z

    # -- accounting ------------------------------------------------------

    @property
    def down_entries(self) -> int:
        return sum(len(s) for s in self.down)

    def _space_counts(self) -> SpaceReport:
        return SpaceReport(
            n=self.n,
            header_meet_cells=self._m * self.n,
            down_entries=self.down_entries,
        )


def build_order_index(g: TRG, bd: BlockDecomposition | None = None,
                      k: int | None = None) -> OrderIndex:
    """Build the order-testing structure (default block size ceil(sqrt n)).

    The meet array of a header h is filled by walking h's downset in
    reverse linear-extension order and flooding each element's upset in the
    full graph: the last element of the restricted extension that reaches z
    is the meet of z and h (bounds are unique in a partial lattice, and the
    unique maximal lower bound is the latest one in any linear extension).
    Visited nodes are tokened per header, so each build costs one pass over
    the TRG's edges per header.
    """
    if bd is None:
        bd = block_decompose(g, k if k is not None else ceil_sqrt(g.n))
    n = g.n
    null = n
    position = bd.extension.position
    out_nb = g.out_neighbours
    in_nb = g.in_neighbours
    visits = bd.edge_visits
    mark = [0] * n
    token = 0

    header_meet: list[list[int]] = []
    for h in bd.headers:
        row = [null] * n
        # downset of h in the full lattice (it can exceed h's own block)
        members = [h]
        token += 1
        mark[h] = token
        stack = [h]
        while stack:
            z = stack.pop()
            for w in in_nb[z]:
                visits += 1
                if mark[w] != token:
                    mark[w] = token
                    members.append(w)
                    stack.append(w)
        members.sort(key=position.__getitem__)
        token += 1
        for y in reversed(members):
            if mark[y] == token:
                continue
            mark[y] = token
            row[y] = y
            stack = [y]
            while stack:
                z = stack.pop()
                for w in out_nb[z]:
                    visits += 1
                    if mark[w] != token:
                        mark[w] = token
                        row[w] = y
                        stack.append(w)
        header_meet.append(row)

    block_of = bd.block_of
    down: list[frozenset[int]] = [frozenset()] * n
    for x in range(n):
        bx = block_of[x]
        local = {x}
        stack = [x]
        while stack:
            z = stack.pop()
            for w in in_nb[z]:
                visits += 1
                if block_of[w] == bx and w not in local:
                    local.add(w)
                    stack.append(w)
        down[x] = frozenset(local)

    idx = OrderIndex(g, bd, header_meet, down, visits)
    headers = set(bd.headers)
    for x in range(n):
        # non-headers must be thin inside their own block
        assert x in headers or len(down[x]) < bd.k, (
            f"node {x} has local downset of size {len(down[x])} >= k={bd.k}"
        )
    return idx
