"""Meet and join queries via a two-level block/subblock decomposition.

On top of the order-testing structure, each principal block gets a
subblock decomposition (size sqrt of the block length) and three stores:

* per subblock header, an array of its meets with every block member,
* per principal subblock, a square table with the meet of every member
  pair, null whenever that meet falls outside the subblock, and
* per residual-subblock member, its downset inside the residual subblock
  as a plain list.

A meet query collects candidate lower bounds: every principal block
contributes the in-block meet of the two representatives (when both
representatives land in the block), and the residual block is scanned
directly when both arguments live there.  Every candidate is a lower bound
of the true meet, and the true meet always shows up among the candidates,
so the maximum of the candidate set (by order tests) is the answer; an
empty set means the meet does not exist.  The in-block subroutine repeats
the same shape one level down, using the pair tables for same-subblock
hits.

Blocks are interval-closed, which pays off twice here: a meet computed
inside a block or subblock universe is automatically the global meet
whenever any common lower bound exists in that universe, so the restricted
builds store exactly the right values.

Joins run the same algorithm against a second copy of everything built on
the flipped graph.

The block size is ceil(n**c) for a chosen exponent c in [1/2, 1]; larger c
buys faster queries (order n**(1-c/2) work) for more space (order n**(1+c)
entries).  At c = 1/2 both are the balanced n**(3/2)-space, n**(3/4)-time
point.
"""

from __future__ import annotations

from .decomposition import (
    DecompositionParams,
    SubblockEntry,
    _Scratch,
    block_decompose,
    subblock_decompose,
)
from .metrics import QueryStats, SpaceReport, ceil_pow
from .order_index import OrderIndex, build_order_index
from .trg import TRG, flip


class MeetIndex:
    """Two-level meet/join structure; built by :func:`build_meet_index`."""

    def __init__(self, g: TRG, c: float, order: OrderIndex,
                 subs: list[SubblockEntry],
                 subheader_meet: list[list[list[int]]],
                 pair_tables: list[list[list[list[int]]]],
                 residual_downsets: list[dict[int, tuple[int, ...]]],
                 block_rank: list[dict[int, int]],
                 sub_rank: list[list[dict[int, int]]],
                 build_edge_visits: int):
        self.g = g
        self.c = c
        self.n = g.n
        self.null = g.n
        self.order = order
        self.bd = order.bd
        self.params = DecompositionParams(c=c, k=order.bd.k)
        self.subs = subs
        self.subheader_meet = subheader_meet
        self.pair_tables = pair_tables
        self.residual_downsets = residual_downsets
        self.block_rank = block_rank
        self.sub_rank = sub_rank
        self.build_edge_visits = build_edge_visits
        self.dual: MeetIndex | None = None

    # -- queries ---------------------------------------------------------

    def test_order(self, x: int, y: int, stats: QueryStats | None = None) -> bool:
        return self.order.test_order(x, y, stats)

    def meet(self, x: int, y: int, stats: QueryStats | None = None) -> int | None:
        """Greatest lower bound of x and y, or None if they have none."""
        oi = self.order
        null = self.null
        block_of = oi._block_of
        m = oi._m
        candidates: list[int] = []
        for i in range(m):
            row = oi.header_meet[i]
            xi = row[x]
            yi = row[y]
            if stats is not None:
                stats.array_probes += 2
            if xi == null or yi == null:
                continue
            if block_of[xi] != i or block_of[yi] != i:
                continue
            z = self.meet_in_block(i, xi, yi, stats)
            if z is not None:
                candidates.append(z)
        if block_of[x] == m and block_of[y] == m:
            # both residual: scan x's local downset for lower bounds of y
            for z in sorted(oi.down[x]):
                if stats is not None:
                    stats.scanned_elements += 1
                if oi.test_order(z, y, stats):
                    candidates.append(z)
        return self._maximum(candidates, stats)

    def meet_in_block(self, i: int, xi: int, yi: int,
                      stats: QueryStats | None = None) -> int | None:
        """Meet of two members of principal block i, or None when that meet
        exists only outside the block (or not at all)."""
        header = self.bd.headers[i]
        if xi == header:
            return yi
        if yi == header:
            return xi
        entry = self.subs[i]
        rank = self.block_rank[i]
        rx = rank[xi]
        ry = rank[yi]
        sub_of = entry.sub_of
        candidates: list[int] = []
        for j in range(entry.count):
            row = self.subheader_meet[i][j]
            xj = row[rx]
            yj = row[ry]
            if stats is not None:
                stats.array_probes += 2
            if xj == self.null or yj == self.null:
                continue
            if sub_of.get(xj, -2) != j or sub_of.get(yj, -2) != j:
                continue
            srank = self.sub_rank[i][j]
            z = self.pair_tables[i][j][srank[xj]][srank[yj]]
            if stats is not None:
                stats.table_probes += 1
            if z != self.null:
                candidates.append(z)
        if sub_of.get(xi, -2) == -1 and sub_of.get(yi, -2) == -1:
            for z in self.residual_downsets[i][xi]:
                if stats is not None:
                    stats.scanned_elements += 1
                if self.order.test_order(z, yi, stats):
                    candidates.append(z)
        return self._maximum(candidates, stats)

    def join(self, x: int, y: int, stats: QueryStats | None = None) -> int | None:
        """Least upper bound, answered by the dual index on the flipped graph."""
        if self.dual is None:
            raise ValueError("index was built without a dual; joins unavailable")
        return self.dual.meet(x, y, stats)

    def _maximum(self, candidates: list[int],
                 stats: QueryStats | None) -> int | None:
        """Largest element of a candidate set that is known to contain its own
        upper bound (every candidate is below the true meet)."""
        if stats is not None:
            stats.candidate_count += len(candidates)
            stats.candidates.extend(candidates)
        if not candidates:
            return None
        best = candidates[0]
        for z in candidates[1:]:
            if self.order.test_order(best, z, stats):
                best = z
        return best

    # -- accounting ------------------------------------------------------

    def _space_counts(self) -> SpaceReport:
        own = self._own_space()
        if self.dual is not None:
            own = own.merged(self.dual._own_space())
        return own

    def _own_space(self) -> SpaceReport:
        base = self.order._space_counts()
        sub_cells = 0
        table_cells = 0
        res_cells = 0
        for i, entry in enumerate(self.subs):
            blen = len(self.bd.blocks[i])
            sub_cells += entry.count * blen
            table_cells += sum(len(s) ** 2 for s in entry.subblocks)
            res_cells += sum(len(v) for v in self.residual_downsets[i].values())
        return SpaceReport(
            n=self.n,
            c=self.c,
            header_meet_cells=base.header_meet_cells,
            down_entries=base.down_entries,
            subheader_meet_cells=sub_cells,
            pair_table_cells=table_cells,
            residual_list_cells=res_cells,
        )

    def pair_table_cells_of_block(self, i: int) -> int:
        return sum(len(s) ** 2 for s in self.subs[i].subblocks)


def _restricted_meet_rows(g: TRG, universe: list[int], headers: list[int],
                          position, mark: list[int], token_box: list[int]):
    """Meet arrays over a universe that is interval-closed in the lattice.

    For each h in ``headers``, computes h's meet with every universe member,
    by the reverse-extension upset flood restricted to the universe.  A
    non-null result is the true lattice meet: any common lower bound inside
    the universe forces the global meet into it (the interval from that
    bound up to either argument stays inside).  Returns rows indexed by
    universe rank, plus the edge-visit count.
    """
    null = g.n
    in_nb = g.in_neighbours
    out_nb = g.out_neighbours
    rank = {x: r for r, x in enumerate(universe)}
    visits = 0
    rows = []
    for h in headers:
        row = [null] * len(universe)
        token_box[0] += 1
        token = token_box[0]
        mark[h] = token
        members = [h]
        stack = [h]
        while stack:
            z = stack.pop()
            for w in in_nb[z]:
                visits += 1
                if w in rank and mark[w] != token:
                    mark[w] = token
                    members.append(w)
                    stack.append(w)
        members.sort(key=position.__getitem__)
        token_box[0] += 1
        token = token_box[0]
        for y in reversed(members):
            if mark[y] == token:
                continue
            mark[y] = token
            row[rank[y]] = y
            stack = [y]
            while stack:
                z = stack.pop()
                for w in out_nb[z]:
                    visits += 1
                    if w in rank and mark[w] != token:
                        mark[w] = token
                        row[rank[w]] = y
                        stack.append(w)
        rows.append(row)
    return rows, visits


def build_meet_index(g: TRG, c: float = 0.5, *, with_dual: bool = True,
                     k: int | None = None) -> MeetIndex:
    """Build the meet/join structure with block size ceil(n**c).

    ``with_dual`` also builds the flipped copy that answers joins (roughly
    doubling space and build time).
    """
    if not 0.5 <= c <= 1.0:
        raise ValueError(f"tradeoff exponent c={c} outside [1/2, 1]")
    n = g.n
    if k is None:
        k = min(n, ceil_pow(n, c))
    bd = block_decompose(g, k)
    oi = build_order_index(g, bd)
    position = bd.extension.position
    visits = oi.build_edge_visits
    mark = [0] * n
    token_box = [0]
    scratch = _Scratch(n)

    subs: list[SubblockEntry] = []
    subheader_meet: list[list[list[int]]] = []
    pair_tables: list[list[list[list[int]]]] = []
    residual_downsets: list[dict[int, tuple[int, ...]]] = []
    block_rank: list[dict[int, int]] = []
    sub_rank: list[list[dict[int, int]]] = []

    for i, blk in enumerate(bd.blocks):
        entry = subblock_decompose(g, bd, i, scratch)
        visits += entry.edge_visits
        subs.append(entry)
        block_rank.append({x: r for r, x in enumerate(blk)})

        rows, v = _restricted_meet_rows(g, blk, entry.subheaders, position,
                                        mark, token_box)
        visits += v
        subheader_meet.append(rows)

        tables = []
        ranks = []
        for sub in entry.subblocks:
            # meets of every member pair, computed inside the subblock
            trows, v = _restricted_meet_rows(g, sub, sub, position, mark, token_box)
            visits += v
            tables.append(trows)
            ranks.append({x: r for r, x in enumerate(sub)})
        pair_tables.append(tables)
        sub_rank.append(ranks)

        res_set = set(entry.residual)
        res_down: dict[int, tuple[int, ...]] = {}
        for x in entry.residual:
            local = {x}
            stack = [x]
            while stack:
                z = stack.pop()
                for w in g.in_neighbours[z]:
                    visits += 1
                    if w in res_set and w not in local:
                        local.add(w)
                        stack.append(w)
            res_down[x] = tuple(sorted(local))
        residual_downsets.append(res_down)

    idx = MeetIndex(g, c, oi, subs, subheader_meet, pair_tables,
                    residual_downsets, block_rank, sub_rank, visits)
    if with_dual:
        idx.dual = build_meet_index(flip(g), c, with_dual=False, k=k)
    return idx
