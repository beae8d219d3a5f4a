"""Predicted mesh-family presentations over Dynkin quivers.

The cone-type family lives on vertices (x, l) with l in the simplex of
size ell_x; the cylinder-type family frees the last coordinate.  Arrows come
in three kinds (backwards copies a*, forward steps b, and coordinate steps)
and the relations are the commuting squares plus one mesh sum per vertex,
everything pruned by the zero-symbol convention.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import build_algebra
from .linalg import ONE
from .quivers import (Path, Presentation, Quiver, Relation,
                      WeakTranslationQuiver)
from .taucluster import tau_closure


class NotDynkin(ValueError):
    pass


def is_dynkin(q: Quiver) -> bool:
    """Simply-laced Dynkin check on the underlying graph (types A, D, E)."""
    n = len(q.vertices)
    if n == 0 or len(q.arrows) != n - 1:
        return False
    adj: Dict[str, List[str]] = {v: [] for v in q.vertices}
    seen_edges = set()
    for a in q.arrows:
        if a.source == a.target:
            return False
        key = frozenset((a.source, a.target))
        if key in seen_edges:
            return False
        seen_edges.add(key)
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    # connectivity
    stack, seen = [q.vertices[0]], {q.vertices[0]}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return False
    degrees = sorted(len(adj[v]) for v in q.vertices)
    branch = [v for v in q.vertices if len(adj[v]) >= 3]
    if not branch:
        return True  # type A
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        return False
    # arm lengths from the branch vertex
    arms = []
    b = branch[0]
    for start in adj[b]:
        length, prev, at = 1, b, start
        while True:
            nxt = [w for w in adj[at] if w != prev]
            if not nxt:
                break
            prev, at = at, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return True  # type D
    return arms in ([1, 2, 2], [1, 2, 3], [1, 2, 4])  # E6, E7, E8


def ell_values(q: Quiver) -> Dict[str, int]:
    """Nilpotency depth of the classical translation on each injective."""
    if not is_dynkin(q):
        raise NotDynkin("underlying graph is not a simply-laced Dynkin diagram")
    alg = build_algebra(Presentation(q, []))
    closure = tau_closure(alg, 1)
    return {v: closure.ell[i] for i, v in enumerate(q.vertices)}


def simplex(n: int, ell: int) -> List[Tuple[int, ...]]:
    """Lattice points with nonnegative coordinates summing to at most ell."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if ell < 0:
        raise ValueError("ell must be >= 0")
    out = [pt for pt in product(range(ell + 1), repeat=n) if sum(pt) <= ell]
    out.sort()
    return out


def _vec_add(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _unit(n: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def _v(n: int, i: int) -> Tuple[int, ...]:
    if i == 1:
        return tuple(-x for x in _unit(n, 1))
    return tuple(x - y for x, y in zip(_unit(n, i - 1), _unit(n, i)))


def _vname(x: str, ell: Tuple[int, ...]) -> str:
    return f"{x};{','.join(str(k) for k in ell)}"


def build_family(q: Quiver, n: int, kind: str = "cone",
                 window: Optional[Tuple[int, int]] = None) -> Presentation:
    """Predicted presentation of the iterated closure category over kQ.

    kind="cone" uses the bounded simplex in all coordinates; kind="cylinder"
    lets the last coordinate range over the given window (default -2..2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ells = ell_values(q)
    if kind == "cone":
        def coords(x: str):
            return simplex(n, ells[x])
    elif kind == "cylinder":
        lo, hi = window if window is not None else (-2, 2)
        def coords(x: str):
            if n == 1:
                return [(k,) for k in range(lo, hi + 1)]
            base = simplex(n - 1, ells[x])
            return sorted(head + (k,) for head in base for k in range(lo, hi + 1))
    else:
        raise ValueError(f"unknown kind {kind!r}")

    grid = {x: set(coords(x)) for x in q.vertices}
    vertices = []
    for x in q.vertices:
        for ell in sorted(grid[x]):
            vertices.append(_vname(x, ell))
    vset = set(vertices)

    def exists(x: str, ell: Tuple[int, ...]) -> bool:
        return ell in grid[x]

    arrows = []

    def star_name(a: str, ell) -> str:
        return f"{a}*@{','.join(map(str, ell))}"

    def fwd_name(b: str, ell) -> str:
        return f"{b}@{','.join(map(str, ell))}"

    def step_name(x: str, ell, i: int) -> str:
        return f"t{i}[{x}@{','.join(map(str, ell))}]"

    v1 = _v(n, 1)
    for x in q.vertices:
        for ell in sorted(grid[x]):
            for a in q.in_arrows(x):
                if exists(a.source, ell):
                    arrows.append((star_name(a.name, ell),
                                   _vname(x, ell), _vname(a.source, ell)))
            for b in q.out_arrows(x):
                tgt = _vec_add(ell, v1)
                if exists(b.target, tgt):
                    arrows.append((fwd_name(b.name, ell),
                                   _vname(x, ell), _vname(b.target, tgt)))
            for i in range(2, n + 1):
                tgt = _vec_add(ell, _v(n, i))
                if exists(x, tgt):
                    arrows.append((step_name(x, ell, i),
                                   _vname(x, ell), _vname(x, tgt)))
    quiver = Quiver(vertices, arrows)
    arrow_set = {a[0] for a in arrows}

    en = _unit(n, n)
    tau = {}
    for x in q.vertices:
        for ell in sorted(grid[x]):
            up = _vec_add(ell, en)
            if exists(x, up):
                tau[_vname(x, ell)] = _vname(x, up)
    wtq = WeakTranslationQuiver(quiver, tau)

    def path_of(x: str, ell, steps: Sequence[Tuple[str, str, Tuple[int, ...]]]):
        """Compose symbolic steps; None when any symbol is pruned to zero.

        Each step is (kind, name, ...) relative to the running position.
        """
        pos_x, pos_l = x, ell
        names = []
        if not exists(pos_x, pos_l):
            return None
        for step in steps:
            skind = step[0]
            if skind == "star":
                a = step[1]
                nm = star_name(a.name, pos_l)
                nxt_x, nxt_l = a.source, pos_l
            elif skind == "fwd":
                b = step[1]
                nm = fwd_name(b.name, pos_l)
                nxt_x, nxt_l = b.target, _vec_add(pos_l, v1)
            else:
                i = step[1]
                nm = step_name(pos_x, pos_l, i)
                nxt_x, nxt_l = pos_x, _vec_add(pos_l, _v(n, i))
            if nm not in arrow_set or not exists(nxt_x, nxt_l):
                return None
            names.append(nm)
            pos_x, pos_l = nxt_x, nxt_l
        return Path(_vname(x, ell), tuple(names), _vname(pos_x, pos_l))

    relations: List[Relation] = []
    for x in q.vertices:
        for ell in sorted(grid[x]):
            # commuting squares with the coordinate steps
            for i in range(2, n + 1):
                for a in q.in_arrows(x):
                    lhs = path_of(x, ell, [("star", a), ("step", i)])
                    rhs = path_of(x, ell, [("step", i), ("star", a)])
                    _add_square(relations, lhs, rhs)
                for b in q.out_arrows(x):
                    lhs = path_of(x, ell, [("fwd", b), ("step", i)])
                    rhs = path_of(x, ell, [("step", i), ("fwd", b)])
                    _add_square(relations, lhs, rhs)
                for j in range(i + 1, n + 1):
                    lhs = path_of(x, ell, [("step", j), ("step", i)])
                    rhs = path_of(x, ell, [("step", i), ("step", j)])
                    _add_square(relations, lhs, rhs)
            # mesh sum through level v1
            terms = []
            for a in q.in_arrows(x):
                p = path_of(x, ell, [("star", a), ("fwd", a)])
                if p is not None:
                    terms.append((ONE, p))
            for b in q.out_arrows(x):
                p = path_of(x, ell, [("fwd", b), ("star", b)])
                if p is not None:
                    terms.append((-ONE, p))
            if terms:
                relations.append(Relation(terms))
    return Presentation(wtq, relations)


def _add_square(relations: List[Relation], lhs: Optional[Path],
                rhs: Optional[Path]) -> None:
    terms = []
    if lhs is not None:
        terms.append((ONE, lhs))
    if rhs is not None:
        terms.append((-ONE, rhs))
    if terms:
        relations.append(Relation(terms))


def _shift_arrow_name(name: str) -> str:
    """Same arrow symbol one translation step later (last coordinate - 1)."""
    if name.startswith("t") and name.endswith("]"):
        head, _, tail = name.partition("[")
        body = tail[:-1]
        x, _, coords = body.rpartition("@")
        parts = [int(c) for c in coords.split(",")]
        parts[-1] -= 1
        return f"{head}[{x}@{','.join(map(str, parts))}]"
    head, _, coords = name.rpartition("@")
    parts = [int(c) for c in coords.split(",")]
    parts[-1] -= 1
    return f"{head}@{','.join(map(str, parts))}"


def family_tau_minus(fam: Presentation):
    """Inverse-translate arrow data for a mesh family presentation.

    In these categories the inverse translate of an arrow is the like-named
    arrow one translation step later, whenever it exists in the grid.
    """
    wtq = fam.translation
    if wtq is None:
        raise ValueError("family presentation carries no translation data")
    out = {}
    for a in fam.quiver.arrows:
        if a.source not in wtq.tau_inv or a.target not in wtq.tau_inv:
            continue
        shifted = _shift_arrow_name(a.name)
        other = fam.quiver.arrow_by_name.get(shifted)
        if other is None:
            continue
        x, y = wtq.tau_inv[a.source], wtq.tau_inv[a.target]
        if other.source != x or other.target != y:
            raise ValueError(f"shifted arrow {shifted!r} has unexpected endpoints")
        out[a.name] = [(ONE, Path(x, (shifted,), y))]
    return out


def linear_a_quiver(m: int) -> Quiver:
    if m < 1:
        raise ValueError("m must be >= 1")
    vertices = [str(i) for i in range(1, m + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, m)]
    return Quiver(vertices, arrows)


def tower_presentation(m: int, n: int) -> Optional[Presentation]:
    """Mesh-family presentation whose opposite presents the tower algebra.

    Level n = 1 is the path algebra itself (None is returned: no relations
    needed beyond the linear quiver).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return None
    return build_family(linear_a_quiver(m), n - 1, kind="cone")


def tower_algebra(m: int, n: int, length_cap: int = 128):
    """The m-by-m triangular tower at level n as a bound quiver algebra."""
    if n == 1:
        return build_algebra(Presentation(linear_a_quiver(m), []), length_cap)
    family = tower_presentation(m, n)
    return build_algebra(family.opposite(), length_cap)
