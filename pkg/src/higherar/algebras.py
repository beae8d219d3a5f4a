"""Finite-dimensional algebras from quiver presentations.

The normal-form engine is degreewise linear algebra: at each path length the
span of padded relation instances is removed from the path space by exact
row reduction, longest paths eliminated first.  All in-scope relation sets
(mesh, commutativity, zero relations) are length-homogeneous, so this is
exact; inhomogeneous relations are supported by carrying reduced tails
forward as fresh relations and restarting, with a hard cap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import ONE, ZERO, ExactMatrix, rref
from .quivers import Path, Presentation, Quiver, Relation


class AlgebraError(ValueError):
    pass


class NotAdmissible(AlgebraError):
    """A relation involves a term of path length < 2."""


class DimensionCapExceeded(AlgebraError):
    """Basis enumeration failed to stabilize under the length cap."""


Vector = Dict[Path, Fraction]


def _vec_add(acc: Vector, v: Vector, c: Fraction) -> None:
    for k, x in v.items():
        s = acc.get(k, ZERO) + c * x
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class BoundQuiverAlgebra:
    """Path algebra modulo an admissible ideal, with computed normal forms.

    ``basis`` holds the normal-form paths in (length, arrow-lex) order;
    ``reduce_path`` rewrites an arbitrary path into that basis.  Hom spaces
    of the presented category are read off as ``paths_between``.
    """

    def __init__(self, presentation: Presentation, length_cap: int = 64,
                 truncate_at_cap: bool = False):
        self.presentation = presentation
        self.quiver: Quiver = presentation.quiver
        self.length_cap = length_cap
        self.truncate_at_cap = truncate_at_cap
        self.truncated = False
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._reduce: Dict[Path, Vector] = {}
        self.basis_by_degree: List[List[Path]] = []
        self._build()
        self.basis: List[Path] = [p for deg in self.basis_by_degree for p in deg]
        self.basis_index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        self._pair: Dict[Tuple[str, str], List[Path]] = {}
        for p in self.basis:
            self._pair.setdefault((p.source, p.target), []).append(p)
        self.dimension = len(self.basis)

    # -- construction ------------------------------------------------------

    def _build(self) -> None:
        relations = list(self.presentation.relations)
        for r in relations:
            if r.min_length() < 2:
                raise NotAdmissible(f"relation term of length < 2: {r!r}")
        for attempt in range(32):
            tail = self._build_core(relations)
            if tail is None:
                return
            if tail.min_length() < 2:
                raise NotAdmissible(
                    "ideal closure produced a term of length < 2; the ideal is not admissible")
            relations.append(tail)
            self._reduce.clear()
            self.basis_by_degree = []
        raise DimensionCapExceeded("relation tails failed to stabilize")

    def _build_core(self, relations: List[Relation]) -> Optional[Relation]:
        q = self.quiver
        self.truncated = False
        self.basis_by_degree = [[Path.trivial(v) for v in q.vertices]]
        self._reduce = {p: {p: ONE} for p in self.basis_by_degree[0]}
        self._basis_set = set(self.basis_by_degree[0])
        if self.length_cap < 2:
            raise AlgebraError("length_cap must be >= 2")

        arrows_sorted = list(q.arrows)
        deg1 = [Path.of_arrow(a) for a in arrows_sorted]
        self.basis_by_degree.append(deg1)
        for p in deg1:
            self._reduce[p] = {p: ONE}
            self._basis_set.add(p)

        by_source: Dict[str, List[Path]] = {}
        by_target: Dict[str, List[Path]] = {}

        def index_basis(paths: List[Path]) -> None:
            for p in paths:
                by_source.setdefault(p.source, []).append(p)
                by_target.setdefault(p.target, []).append(p)

        index_basis(self.basis_by_degree[0])
        index_basis(self.basis_by_degree[1])

        quiet = 0
        d = 2
        while True:
            if d > self.length_cap:
                if self.truncate_at_cap:
                    self.truncated = True
                    while self.basis_by_degree and not self.basis_by_degree[-1]:
                        self.basis_by_degree.pop()
                    return None
                raise DimensionCapExceeded(
                    f"no stabilization by length cap {self.length_cap}")
            prev = self.basis_by_degree[d - 1] if d - 1 < len(self.basis_by_degree) else []
            cand: List[Path] = []
            for b in prev:
                for a in q.out_arrows(b.target):
                    cand.append(b.then(Path.of_arrow(a)))
            cand.sort(key=lambda p: tuple(q.arrow_index[x] for x in p.arrows))

            rows: List[Vector] = []
            for r in relations:
                lead = r.max_length()
                for ulen in range(0, d - lead + 1):
                    vlen = d - lead - ulen
                    us = ([Path.trivial(r.source)] if ulen == 0 else
                          [p for p in by_target.get(r.source, []) if len(p) == ulen])
                    vs = ([Path.trivial(r.target)] if vlen == 0 else
                          [p for p in by_source.get(r.target, []) if len(p) == vlen])
                    for u in us:
                        for v in vs:
                            vec: Vector = {}
                            for c, pt in r.terms:
                                full = u.then(pt).then(v)
                                _vec_add(vec, self._reduce_with_atoms(full, d), c)
                            if vec:
                                rows.append(vec)

            new_basis, tail = self._eliminate(cand, rows, d)
            if tail is not None:
                return tail
            self.basis_by_degree.append(new_basis)
            index_basis(new_basis)
            if new_basis:
                quiet = 0
            else:
                quiet += 1
                no_more_cand = not new_basis and not cand
                max_rel = max((r.max_length() for r in relations), default=2)
                max_basis = max(
                    (len(p) for deg in self.basis_by_degree for p in deg), default=0)
                instances_exhausted = d >= 2 * max_basis + max_rel
                if quiet >= 3 or (no_more_cand and instances_exhausted):
                    while self.basis_by_degree and not self.basis_by_degree[-1]:
                        self.basis_by_degree.pop()
                    return None
            d += 1

    def _reduce_with_atoms(self, path: Path, current_degree: int) -> Vector:
        """Rewrite into basis paths, leaving current-degree candidates as atoms."""
        hit = self._reduce.get(path)
        if hit is not None:
            return hit
        last_arrow = self.quiver.arrow_by_name[path.arrows[-1]]
        prefix = Path(path.source, path.arrows[:-1], last_arrow.source)
        if len(path) == current_degree and prefix in self._basis_set:
            # candidate of the degree being processed: keep symbolic
            return {path: ONE}
        last = Path.of_arrow(last_arrow)
        out: Vector = {}
        for bp, c in self._reduce_with_atoms(prefix, current_degree).items():
            ext = bp.then(last)
            _vec_add(out, self._reduce_with_atoms(ext, current_degree), c)
        if len(path) < current_degree:
            self._reduce[path] = out
        return out

    def _eliminate(self, cand: List[Path], rows: List[Vector], d: int):
        """Row-reduce relation instances; returns (new basis, pending tail)."""
        lower = [p for deg in self.basis_by_degree for p in deg]
        lower.sort(key=lambda p: (-len(p), tuple(self.quiver.arrow_index[x] for x in p.arrows)))
        columns = list(reversed(cand)) + lower
        col_index = {p: i for i, p in enumerate(columns)}
        if rows:
            mat = ExactMatrix(len(rows), len(columns))
            for i, vec in enumerate(rows):
                for p, c in vec.items():
                    mat.data[i][col_index[p]] = c
            red, pivots, _ = rref(mat)
        else:
            red, pivots = None, []
        killed = set()
        for rno, pc in enumerate(pivots):
            if pc >= len(cand):
                # constraint purely among lower-degree basis paths
                terms = [(red.data[rno][j], columns[j])
                         for j in range(len(columns)) if red.data[rno][j] != 0]
                return [], Relation(terms)
            pivot_path = columns[pc]
            entry: Vector = {}
            for j in range(pc + 1, len(columns)):
                v = red.data[rno][j]
                if v:
                    entry[columns[j]] = -v
            self._reduce[pivot_path] = entry
            killed.add(pivot_path)
        new_basis = [p for p in cand if p not in killed]
        for p in new_basis:
            self._reduce[p] = {p: ONE}
            self._basis_set.add(p)
        return new_basis, None

    # -- queries -----------------------------------------------------------

    def reduce_path(self, path: Path) -> Vector:
        """Normal form of an arbitrary path as a basis combination."""
        hit = self._reduce.get(path)
        if hit is not None:
            return hit
        if len(path) <= 1:
            raise AlgebraError(f"path {path} not in quiver")
        prefix = Path(path.source, path.arrows[:-1],
                      self.quiver.arrow_by_name[path.arrows[-1]].source)
        last = Path.of_arrow(self.quiver.arrow_by_name[path.arrows[-1]])
        out: Vector = {}
        for bp, c in self.reduce_path(prefix).items():
            _vec_add(out, self.reduce_path(bp.then(last)), c)
        self._reduce[path] = out
        return out

    def compose(self, first: Path, then: Path) -> Vector:
        """Normal form of the concatenation (first traversed, then second)."""
        return self.reduce_path(first.then(then))

    def paths_between(self, source: str, target: str) -> List[Path]:
        return self._pair.get((str(source), str(target)), [])

    def hom_dim(self, source: str, target: str) -> int:
        return len(self.paths_between(source, target))

    @property
    def vertices(self) -> List[str]:
        return self.quiver.vertices

    def max_path_length(self) -> int:
        return len(self.basis_by_degree) - 1

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            op = BoundQuiverAlgebra(self.presentation.opposite(), self.length_cap)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def reverse_path(self, p: Path) -> Path:
        """The same walk read in the opposite quiver."""
        return Path(p.target, tuple(reversed(p.arrows)), p.source)

    def __repr__(self):
        return (f"BoundQuiverAlgebra({len(self.vertices)} vertices, "
                f"dim {self.dimension})")


def build_algebra(presentation: Presentation, length_cap: int = 64,
                  truncate_at_cap: bool = False) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(presentation, length_cap, truncate_at_cap)
