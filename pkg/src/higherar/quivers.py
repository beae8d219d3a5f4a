"""Quivers, paths, relations, weak translation quivers, cones and cylinders.

Purely combinatorial layer.  Paths list their arrows in traversal order
(first-traversed first); the right-to-left composition convention used when
talking about morphism algebras is a display convention handled elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import ONE


class QuiverError(ValueError):
    pass


class UnknownVertex(QuiverError):
    pass


class InconsistentRelation(QuiverError):
    """Relation terms are not parallel paths."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Finite quiver: ordered vertices, ordered named arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        self.vertices: List[str] = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        vset = set(self.vertices)
        self.arrows: List[Arrow] = []
        names = set()
        for name, src, tgt in arrows:
            name, src, tgt = str(name), str(src), str(tgt)
            if name in names:
                raise QuiverError(f"duplicate arrow name {name!r}")
            names.add(name)
            if src not in vset or tgt not in vset:
                raise UnknownVertex(f"arrow {name!r} endpoints {src!r}->{tgt!r} missing")
            self.arrows.append(Arrow(name, src, tgt))
        self.arrow_by_name: Dict[str, Arrow] = {a.name: a for a in self.arrows}
        self.arrow_index: Dict[str, int] = {a.name: i for i, a in enumerate(self.arrows)}
        self.vertex_index: Dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        self._out: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self._in: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def out_arrows(self, v: str) -> List[Arrow]:
        if v not in self._out:
            raise UnknownVertex(v)
        return self._out[v]

    def in_arrows(self, v: str) -> List[Arrow]:
        if v not in self._in:
            raise UnknownVertex(v)
        return self._in[v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows])

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


@dataclass(frozen=True)
class Path:
    """Composable arrow sequence; ``arrows`` empty means the idempotent e_source."""

    source: str
    arrows: Tuple[str, ...]
    target: str

    @staticmethod
    def trivial(v: str) -> "Path":
        return Path(v, (), v)

    @staticmethod
    def of_arrow(a: Arrow) -> "Path":
        return Path(a.source, (a.name,), a.target)

    def __len__(self) -> int:
        return len(self.arrows)

    def then(self, other: "Path") -> "Path":
        """Concatenate: self first, then other."""
        if self.target != other.source:
            raise QuiverError(f"paths do not compose: {self} then {other}")
        return Path(self.source, self.arrows + other.arrows, other.target)

    def validate(self, q: Quiver) -> None:
        at = self.source
        for name in self.arrows:
            a = q.arrow_by_name.get(name)
            if a is None or a.source != at:
                raise QuiverError(f"path {self} invalid in quiver")
            at = a.target
        if at != self.target:
            raise QuiverError(f"path {self} has wrong target")

    def sort_key(self, q: "Quiver") -> tuple:
        return (len(self.arrows), tuple(q.arrow_index[a] for a in self.arrows),
                q.vertex_index[self.source])


class Relation:
    """Formal linear combination of parallel paths."""

    def __init__(self, terms: Iterable[Tuple[Fraction, Path]]):
        cleaned = [(Fraction(c), p) for c, p in terms if c != 0]
        if not cleaned:
            raise InconsistentRelation("relation with no nonzero terms")
        src, tgt = cleaned[0][1].source, cleaned[0][1].target
        for _, p in cleaned:
            if p.source != src or p.target != tgt:
                raise InconsistentRelation("relation terms are not parallel")
        self.terms: List[Tuple[Fraction, Path]] = cleaned
        self.source = src
        self.target = tgt

    def min_length(self) -> int:
        return min(len(p) for _, p in self.terms)

    def max_length(self) -> int:
        return max(len(p) for _, p in self.terms)

    def validate(self, q: Quiver) -> None:
        for _, p in self.terms:
            p.validate(q)

    def __repr__(self):
        body = " + ".join(f"{c}*{'.'.join(p.arrows) or 'e'}" for c, p in self.terms)
        return f"Relation({body})"


class WeakTranslationQuiver:
    """Quiver with a partial translation bijection tau: Q_P -> Q_I.

    No compatibility between tau and the arrows is assumed.
    """

    def __init__(self, quiver: Quiver, tau: Dict[str, str]):
        self.quiver = quiver
        vset = set(quiver.vertices)
        self.tau: Dict[str, str] = {str(k): str(v) for k, v in tau.items()}
        for k, v in self.tau.items():
            if k not in vset or v not in vset:
                raise UnknownVertex(f"tau pair {k!r}->{v!r} outside quiver")
        if len(set(self.tau.values())) != len(self.tau):
            raise QuiverError("tau is not injective")
        self.q_p: List[str] = [v for v in quiver.vertices if v in self.tau]
        targets = set(self.tau.values())
        self.q_i: List[str] = [v for v in quiver.vertices if v in targets]
        self.tau_inv: Dict[str, str] = {v: k for k, v in self.tau.items()}

    def opposite(self) -> "WeakTranslationQuiver":
        # reversing arrows swaps the roles of the two vertex classes
        return WeakTranslationQuiver(self.quiver.opposite(), dict(self.tau_inv))

    def __repr__(self):
        return f"WeakTranslationQuiver({self.quiver!r}, |Q_P|={len(self.q_p)})"


class Presentation:
    """Quiver (possibly with translation data) plus a list of relations."""

    def __init__(self, quiver, relations: Sequence[Relation]):
        if isinstance(quiver, WeakTranslationQuiver):
            self.translation: Optional[WeakTranslationQuiver] = quiver
            self.quiver = quiver.quiver
        else:
            self.translation = None
            self.quiver = quiver
        self.relations: List[Relation] = list(relations)
        for r in self.relations:
            r.validate(self.quiver)

    def opposite(self) -> "Presentation":
        base = self.translation.opposite() if self.translation else self.quiver.opposite()
        rels = []
        for r in self.relations:
            rels.append(Relation(
                [(c, Path(p.target, tuple(reversed(p.arrows)), p.source)) for c, p in r.terms]
            ))
        return Presentation(base, rels)

    def __repr__(self):
        return f"Presentation({self.quiver!r}, {len(self.relations)} relations)"


def enumerate_paths(q: Quiver, source: str, target: str, max_length: int) -> List[Path]:
    """All paths source -> target of length <= max_length.

    Ordered by (length, lexicographic arrow index).
    """
    if source not in q.vertex_index or target not in q.vertex_index:
        raise UnknownVertex(f"{source!r} or {target!r}")
    if max_length < 0:
        raise QuiverError("max_length must be >= 0")
    out: List[Path] = []
    frontier: List[Path] = [Path.trivial(source)]
    for length in range(max_length + 1):
        for p in frontier:
            if p.target == target:
                out.append(p)
        if length == max_length:
            break
        nxt: List[Path] = []
        for p in frontier:
            for a in q.out_arrows(p.target):
                nxt.append(p.then(Path.of_arrow(a)))
        nxt.sort(key=lambda p: tuple(q.arrow_index[x] for x in p.arrows))
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# cones and cylinders


def layer_vertex(x: str, ell: int) -> str:
    return f"{x}@{ell}"


def layer_arrow(a: str, ell: int) -> str:
    return f"{a}@{ell}"


def translation_arrow(x: str, ell: int) -> str:
    return f"t[{x}@{ell}]"


class _LayeredBuilder:
    """Shared assembly for cone and cylinder quivers."""

    def __init__(self, base: Presentation, tau_minus_arrow_map):
        if base.translation is None:
            raise QuiverError("cone/cylinder need a weak translation quiver")
        self.base = base
        self.wtq = base.translation
        self.q = base.quiver
        self.tau_map = self._check_tau_minus(tau_minus_arrow_map or {})

    def _check_tau_minus(self, raw):
        out = {}
        for name, combo in raw.items():
            arrow = self.q.arrow_by_name.get(name)
            if arrow is None:
                raise UnknownVertex(f"tau_minus map for unknown arrow {name!r}")
            if arrow.source not in self.wtq.tau_inv:
                raise QuiverError(
                    f"tau_minus map for arrow {name!r} whose source is not in Q_I")
            x = self.wtq.tau_inv[arrow.source]
            if arrow.target not in self.wtq.tau_inv:
                raise QuiverError(
                    f"tau_minus map for arrow {name!r} whose target is not in Q_I")
            y = self.wtq.tau_inv[arrow.target]
            terms = [(Fraction(c), p) for c, p in combo]
            if not terms:
                raise InconsistentRelation(f"empty tau_minus combination for {name!r}")
            for _, p in terms:
                p.validate(self.q)
                if p.source != x or p.target != y:
                    raise InconsistentRelation(
                        f"tau_minus of {name!r} must run {x!r}->{y!r}, got {p.source!r}->{p.target!r}")
            out[name] = terms
        return out

    def transport_path(self, p: Path, ell: int, exists) -> Optional[Path]:
        """(p, ell): the path at layer ell, or None if pruned to zero."""
        if not exists(p.source, ell) or not exists(p.target, ell):
            return None
        mid = p.source
        for a in p.arrows:
            mid = self.q.arrow_by_name[a].target
            if not exists(mid, ell):
                return None
        return Path(layer_vertex(p.source, ell),
                    tuple(layer_arrow(a, ell) for a in p.arrows),
                    layer_vertex(p.target, ell))

    def transported_relation(self, r: Relation, ell: int, exists) -> Optional[Relation]:
        terms = []
        for c, p in r.terms:
            tp = self.transport_path(p, ell, exists)
            if tp is not None:
                terms.append((c, tp))
        if not terms:
            return None
        return Relation(terms)

    def square_relation(self, a: Arrow, ell: int, exists, trans_exists) -> Optional[Relation]:
        """Commuting square (or half-square) for arrow a: tau x -> y at layer ell.

        Left side: (tau^- y, ell)_1 after (tau^- a, ell); right side:
        (a, ell-1) after (x, ell)_1.  Symbols falling outside the quiver are
        dropped; if every term dies the relation is vacuous.
        """
        x = self.wtq.tau_inv[a.source]
        terms: List[Tuple[Fraction, Path]] = []
        # right side: -(a, ell-1) . (x, ell)_1
        if trans_exists(x, ell):
            ta = self.transport_path(Path.of_arrow(a), ell - 1, exists)
            if ta is not None:
                p = Path(layer_vertex(x, ell),
                         (translation_arrow(x, ell),) + ta.arrows,
                         ta.target)
                terms.append((-ONE, p))
        # left side: (tau^- y, ell)_1 . (tau^- a, ell)
        y = a.target
        ty = self.wtq.tau_inv.get(y)
        if ty is not None and a.name in self.tau_map and trans_exists(ty, ell):
            for c, q0 in self.tau_map[a.name]:
                tq = self.transport_path(q0, ell, exists)
                if tq is not None:
                    p = Path(tq.source,
                             tq.arrows + (translation_arrow(ty, ell),),
                             layer_vertex(y, ell - 1))
                    terms.append((c, p))
        if not terms:
            return None
        return Relation(terms)


def cone(p: Presentation, tau_minus_arrow_map=None) -> Presentation:
    """Cone of a weak translation quiver presentation.

    Vertex (x, ell) exists for ell >= 0 while tau^ell x is defined; layer
    arrows copy the base quiver, translation arrows (x, ell)_1 drop one
    layer; relations are the transported base relations plus one commuting
    square per base arrow out of a translated vertex, with out-of-range
    symbols pruned as zero.
    """
    b = _LayeredBuilder(p, tau_minus_arrow_map)
    wtq, q = b.wtq, b.q

    depth: Dict[str, int] = {}
    for v in q.vertices:
        d, at = 0, v
        while at in wtq.tau:
            at = wtq.tau[at]
            d += 1
        depth[v] = d

    def exists(x: str, ell: int) -> bool:
        return 0 <= ell <= depth[x]

    def trans_exists(x: str, ell: int) -> bool:
        # translation arrow (x, ell)_1 exists for ell > 0 at a live vertex
        return ell > 0 and exists(x, ell)

    vertices = []
    max_depth = max(depth.values(), default=0)
    for ell in range(max_depth + 1):
        for v in q.vertices:
            if exists(v, ell):
                vertices.append(layer_vertex(v, ell))
    arrows = []
    for ell in range(max_depth + 1):
        for v in q.vertices:
            if trans_exists(v, ell):
                arrows.append((translation_arrow(v, ell),
                               layer_vertex(v, ell), layer_vertex(wtq.tau[v], ell - 1)))
        for a in q.arrows:
            if exists(a.source, ell) and exists(a.target, ell):
                arrows.append((layer_arrow(a.name, ell),
                               layer_vertex(a.source, ell), layer_vertex(a.target, ell)))
    new_q = Quiver(vertices, arrows)
    tau = {}
    for v in q.vertices:
        for ell in range(depth[v]):
            tau[layer_vertex(v, ell)] = layer_vertex(v, ell + 1)
    new_wtq = WeakTranslationQuiver(new_q, tau)

    rels: List[Relation] = []
    for ell in range(max_depth + 1):
        for r in p.relations:
            tr = b.transported_relation(r, ell, exists)
            if tr is not None:
                rels.append(tr)
        for a in q.arrows:
            if a.source in wtq.tau_inv and ell > 0:
                sq = b.square_relation(a, ell, exists, trans_exists)
                if sq is not None:
                    rels.append(sq)
    return Presentation(new_wtq, rels)


def cylinder(p: Presentation, tau_minus_arrow_map=None,
             window: Tuple[int, int] = (0, 1)) -> Presentation:
    """Cylinder of a weak translation quiver presentation on a layer window.

    The full cylinder lives over all integers; this materializes layers
    lo..hi inclusive.  Translation arrows exist only at vertices from Q_P;
    the translation map is total (up to window truncation).
    """
    lo, hi = window
    if lo > hi:
        raise QuiverError("empty cylinder window")
    b = _LayeredBuilder(p, tau_minus_arrow_map)
    wtq, q = b.wtq, b.q
    qp = set(wtq.q_p)

    def exists(x: str, ell: int) -> bool:
        return lo <= ell <= hi

    def trans_exists(x: str, ell: int) -> bool:
        return x in qp and lo <= ell <= hi and lo <= ell - 1 <= hi

    vertices = [layer_vertex(v, ell) for ell in range(lo, hi + 1) for v in q.vertices]
    arrows = []
    for ell in range(lo, hi + 1):
        for v in q.vertices:
            if trans_exists(v, ell):
                arrows.append((translation_arrow(v, ell),
                               layer_vertex(v, ell), layer_vertex(wtq.tau[v], ell - 1)))
        for a in q.arrows:
            arrows.append((layer_arrow(a.name, ell),
                           layer_vertex(a.source, ell), layer_vertex(a.target, ell)))
    new_q = Quiver(vertices, arrows)
    tau = {}
    for v in q.vertices:
        for ell in range(lo, hi):
            tau[layer_vertex(v, ell)] = layer_vertex(v, ell + 1)
    new_wtq = WeakTranslationQuiver(new_q, tau)

    rels: List[Relation] = []
    for ell in range(lo, hi + 1):
        for r in p.relations:
            tr = b.transported_relation(r, ell, exists)
            if tr is not None:
                rels.append(tr)
        # half squares at the non-translated boundary:
        # (y, ell)_1 . (a, ell) = 0 for arrows a: x -> y with x outside Q_P
        for a in q.arrows:
            if a.source not in qp and trans_exists(a.target, ell):
                ta = b.transport_path(Path.of_arrow(a), ell, exists)
                if ta is None:
                    continue
                rels.append(Relation([(ONE, Path(
                    ta.source,
                    ta.arrows + (translation_arrow(a.target, ell),),
                    layer_vertex(wtq.tau[a.target], ell - 1)))]))
        # commuting squares through the translation
        for a in q.arrows:
            if a.source in wtq.tau_inv:
                sq = b.square_relation(a, ell, exists, trans_exists)
                if sq is not None:
                    rels.append(sq)
    return Presentation(new_wtq, rels)
