"""Backtracking generator for 4-valent sphere maps.

Maps are grown as dart pairings over per-vertex slot tables: vertex v owns
dart positions 4v..4v+3, whose cyclic slot order is the rotation at v.
Pairing position p with position q creates the edge between their vertices.
Face walks follow next(d) = rotate(partner(d)); a completed pairing is a
sphere map exactly when the face count equals n + 2 (4-regularity plus
Euler).

Canonical growth keeps the search finite: the root edge occupies slot 0 of
vertices 0 and 1, and every newly discovered vertex takes the next free
label, entering at its slot 0.  Each isomorphism class is therefore
produced a bounded number of times (once per rooting) and duplicates are
removed afterwards.

The driver extends the open face walk through the earliest assigned dart,
restricting candidates to the closing one when the walk has reached the
face-size cap; an open walk of L darts can only close into a face of at
least L + 1 edges, which makes both prunes safe.
"""

from __future__ import annotations

from typing import Iterator

from .errors import SearchLimitExceeded

Rotation = tuple[tuple[int, ...], ...]


def _sig(p: int) -> int:
    return (p & ~3) | ((p + 1) & 3)


def _sig_inv(p: int) -> int:
    return (p & ~3) | ((p - 1) & 3)


def search_quartic_maps(
    max_n: int,
    allowed_sizes: frozenset[int],
    face_cap: int,
    prefix: tuple[int, ...] | None = None,
    collect_at: int | None = None,
    step_limit: int | None = None,
) -> Iterator:
    """Yield rotation tables of candidate 4-valent sphere maps.

    ``allowed_sizes`` restricts closed face sizes, ``face_cap`` bounds every
    face (cap >= max allowed size).  With ``prefix`` the first choices are
    forced; with ``collect_at`` the search yields ("prefix", path) markers at
    that depth instead of descending, together with any completions reached
    earlier.
    """
    total_pos = 4 * max_n
    partner: list[int | None] = [None] * total_pos
    adj: list[set[int]] = [set() for _ in range(max_n)]
    partner[0] = 4
    partner[4] = 0
    adj[0].add(1)
    adj[1].add(0)
    state = {"n": 2, "steps": 0}
    path: list[int] = []

    def face_status(d: int):
        """(closed, length, stall, head) of the face walk through dart d."""
        cur = d
        count = 1
        while True:
            prev_pos = _sig_inv(cur)
            pd = partner[prev_pos]
            if pd is None:
                break
            if pd == d:
                return True, count, None, None
            cur = pd
            count += 1
        head = cur
        cur = d
        while True:
            nxt = _sig(partner[cur])
            if partner[nxt] is None:
                return False, count, nxt, head
            cur = nxt
            count += 1

    def first_open():
        for d in range(4 * state["n"]):
            if partner[d] is None:
                continue
            st = face_status(d)
            if not st[0]:
                return st
        return None

    def emit() -> Rotation | None:
        n = state["n"]
        if any(partner[d] is None for d in range(4 * n)):
            return None
        seen: set[int] = set()
        f = 0
        for d in range(4 * n):
            if d in seen:
                continue
            f += 1
            cur = d
            while True:
                seen.add(cur)
                cur = _sig(partner[cur])
                if cur == d:
                    break
        if f != n + 2:
            return None
        return tuple(
            tuple(partner[4 * v + s] >> 2 for s in range(4)) for v in range(n)
        )

    def rec(depth: int):
        state["steps"] += 1
        if step_limit is not None and state["steps"] > step_limit:
            raise SearchLimitExceeded(f"exceeded {step_limit} search nodes")
        status = first_open()
        if status is None:
            out = emit()
            if out is not None:
                yield out
            return
        if collect_at is not None and depth == collect_at:
            yield ("prefix", tuple(path))
            return
        _, length, stall, head = status
        u = stall >> 2
        cands: list[int] = []
        if length == face_cap - 1:
            # only closing this face keeps it within the cap
            q = _sig_inv(head)
            w = q >> 2
            if partner[q] is None and w != u and w not in adj[u]:
                cands.append(q)
        else:
            for w in range(state["n"]):
                if w == u or w in adj[u]:
                    continue
                base = 4 * w
                for s in range(4):
                    if partner[base + s] is None:
                        cands.append(base + s)
            if state["n"] < max_n:
                cands.append(4 * state["n"])
        for idx, q in enumerate(cands):
            if prefix is not None and depth < len(prefix) and idx != prefix[depth]:
                continue
            w = q >> 2
            fresh = w == state["n"]
            partner[stall] = q
            partner[q] = stall
            adj[u].add(w)
            adj[w].add(u)
            if fresh:
                state["n"] += 1
            ok = True
            for d in (stall, q):
                closed, cnt, _, _ = face_status(d)
                if closed:
                    if cnt not in allowed_sizes:
                        ok = False
                        break
                elif cnt + 1 > face_cap:
                    ok = False
                    break
            if ok:
                path.append(idx)
                yield from rec(depth + 1)
                path.pop()
            if fresh:
                state["n"] -= 1
            adj[u].discard(w)
            adj[w].discard(u)
            partner[stall] = None
            partner[q] = None

    yield from rec(0)


def collect_prefixes(
    max_n: int,
    allowed_sizes: frozenset[int],
    face_cap: int,
    want: int = 64,
    max_depth: int = 14,
) -> tuple[list[Rotation], list[tuple[int, ...]], int]:
    """Split points for deterministic parallel search.

    Returns (completions shallower than the chosen depth, prefixes, depth).
    The result depends only on the search tree, never on the worker count.
    """
    depth = 1
    best: tuple[list[Rotation], list[tuple[int, ...]]] = ([], [()])
    while depth <= max_depth:
        shallow: list[Rotation] = []
        prefixes: list[tuple[int, ...]] = []
        for item in search_quartic_maps(
            max_n, allowed_sizes, face_cap, collect_at=depth
        ):
            if isinstance(item, tuple) and len(item) == 2 and item[0] == "prefix":
                prefixes.append(item[1])
            else:
                shallow.append(item)
        best = (shallow, prefixes)
        if len(prefixes) >= want or not prefixes:
            break
        depth += 1
    return best[0], best[1], depth
