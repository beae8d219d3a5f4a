"""Representations of bound quiver algebras and everything morphism-level.

Hom spaces are intertwiner solution spaces, kernels/cokernels are vertexwise
exact linear algebra, and decomposition into indecomposables runs the
characteristic-zero idempotent-splitting loop on endomorphism rings (trace
form radical, split squarefree minimal polynomial search, idempotent
lifting by e -> 3e^2 - 2e^3).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import BoundQuiverAlgebra
from .linalg import (ONE, ZERO, ExactMatrix, column_space_basis, is_invertible,
                     kernel_basis, rank, solve, solve_matrix, split_spectrum)
from .quivers import Path


class RepError(ValueError):
    pass


class NotProjective(RepError):
    pass


class NotInjective(RepError):
    pass


class NonSplitEndomorphismRing(RepError):
    """Semisimple endomorphism quotient does not split over the rationals."""


class Representation:
    """Module over a bound quiver algebra: a space per vertex, a matrix per arrow.

    Arrow matrices are target-dim x source-dim.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Dict[str, int],
                 mats: Dict[str, ExactMatrix], check: bool = True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        self.mats: Dict[str, ExactMatrix] = {}
        for a in algebra.quiver.arrows:
            m = mats.get(a.name)
            if m is None:
                m = ExactMatrix(self.dims[a.target], self.dims[a.source])
            if m.rows != self.dims[a.target] or m.cols != self.dims[a.source]:
                raise RepError(
                    f"arrow {a.name!r} matrix is {m.rows}x{m.cols}, expected "
                    f"{self.dims[a.target]}x{self.dims[a.source]}")
            self.mats[a.name] = m
        if check:
            self.check_relations()

    def check_relations(self) -> None:
        for r in self.algebra.presentation.relations:
            acc = ExactMatrix(self.dims[r.target], self.dims[r.source])
            for c, p in r.terms:
                acc = acc + self.path_matrix(p).scale(c)
            if not acc.is_zero():
                raise RepError(f"relation {r!r} not satisfied")

    def path_matrix(self, p: Path) -> ExactMatrix:
        m = ExactMatrix.identity(self.dims[p.source])
        for name in p.arrows:
            m = self.mats[name] * m
        return m

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def __repr__(self):
        return f"Representation{self.dim_vector()}"


class RepMorphism:
    """Vertexwise linear map intertwining all arrow actions."""

    def __init__(self, source: Representation, target: Representation,
                 blocks: Dict[str, ExactMatrix], check: bool = True):
        if source.algebra is not target.algebra:
            raise RepError("morphism between representations of different algebras")
        self.source = source
        self.target = target
        self.blocks: Dict[str, ExactMatrix] = {}
        for v in source.algebra.vertices:
            m = blocks.get(v)
            if m is None:
                m = ExactMatrix(target.dims[v], source.dims[v])
            if m.rows != target.dims[v] or m.cols != source.dims[v]:
                raise RepError(f"block at {v!r} has wrong shape")
            self.blocks[v] = m
        if check:
            self.check_intertwines()

    def check_intertwines(self) -> None:
        for a in self.source.algebra.quiver.arrows:
            lhs = self.blocks[a.target] * self.source.mats[a.name]
            rhs = self.target.mats[a.name] * self.blocks[a.source]
            if lhs != rhs:
                raise RepError(f"morphism fails to intertwine arrow {a.name!r}")

    @staticmethod
    def identity(x: Representation) -> "RepMorphism":
        return RepMorphism(x, x, {v: ExactMatrix.identity(x.dims[v])
                                  for v in x.algebra.vertices}, check=False)

    @staticmethod
    def zero(x: Representation, y: Representation) -> "RepMorphism":
        return RepMorphism(x, y, {}, check=False)

    def compose(self, first: "RepMorphism") -> "RepMorphism":
        """self after first."""
        if first.target is not self.source and first.target.dims != self.source.dims:
            raise RepError("composition shape mismatch")
        return RepMorphism(first.source, self.target,
                           {v: self.blocks[v] * first.blocks[v]
                            for v in self.source.algebra.vertices}, check=False)

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: self.blocks[v] + other.blocks[v]
                            for v in self.source.algebra.vertices}, check=False)

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: self.blocks[v] - other.blocks[v]
                            for v in self.source.algebra.vertices}, check=False)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: self.blocks[v].scale(c)
                            for v in self.source.algebra.vertices}, check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return all(is_invertible(self.blocks[v]) for v in self.source.algebra.vertices)

    def __eq__(self, other):
        return (isinstance(other, RepMorphism)
                and self.source.dims == other.source.dims
                and self.target.dims == other.target.dims
                and self.blocks == other.blocks)

    def __repr__(self):
        return f"RepMorphism({self.source!r} -> {self.target!r})"


# ---------------------------------------------------------------------------
# standard modules


def zero_rep(algebra: BoundQuiverAlgebra) -> Representation:
    return Representation(algebra, {}, {}, check=False)


def projective(algebra: BoundQuiverAlgebra, v: str) -> Representation:
    """P_v: basis at w = normal-form paths v -> w, arrows act by appending."""
    v = str(v)
    cache = algebra.__dict__.setdefault("_std_cache", {})
    hit = cache.get(("P", v))
    if hit is not None:
        return hit
    dims = {w: len(algebra.paths_between(v, w)) for w in algebra.vertices}
    mats = {}
    for a in algebra.quiver.arrows:
        src_paths = algebra.paths_between(v, a.source)
        tgt_paths = algebra.paths_between(v, a.target)
        tgt_index = {p: i for i, p in enumerate(tgt_paths)}
        m = ExactMatrix(len(tgt_paths), len(src_paths))
        step = Path.of_arrow(a)
        for j, p in enumerate(src_paths):
            for bp, c in algebra.reduce_path(p.then(step)).items():
                m.data[tgt_index[bp]][j] = c
        mats[a.name] = m
    rep = Representation(algebra, dims, mats, check=False)
    cache[("P", v)] = rep
    return rep


def injective(algebra: BoundQuiverAlgebra, v: str) -> Representation:
    """I_v: coordinates at w dual to normal-form paths w -> v."""
    v = str(v)
    cache = algebra.__dict__.setdefault("_std_cache", {})
    hit = cache.get(("I", v))
    if hit is not None:
        return hit
    dims = {w: len(algebra.paths_between(w, v)) for w in algebra.vertices}
    mats = {}
    for a in algebra.quiver.arrows:
        # dual of span(target -> v) -> span(source -> v), q -> a.q
        from_paths = algebra.paths_between(a.target, v)
        to_paths = algebra.paths_between(a.source, v)
        to_index = {p: i for i, p in enumerate(to_paths)}
        raw = ExactMatrix(len(to_paths), len(from_paths))
        step = Path.of_arrow(a)
        for j, q in enumerate(from_paths):
            for bp, c in algebra.reduce_path(step.then(q)).items():
                raw.data[to_index[bp]][j] = c
        mats[a.name] = raw.transpose()
    rep = Representation(algebra, dims, mats, check=False)
    cache[("I", v)] = rep
    return rep


def simple(algebra: BoundQuiverAlgebra, v: str) -> Representation:
    cache = algebra.__dict__.setdefault("_std_cache", {})
    hit = cache.get(("S", str(v)))
    if hit is not None:
        return hit
    rep = Representation(algebra, {str(v): 1}, {}, check=False)
    cache[("S", str(v))] = rep
    return rep


def std_modules(algebra: BoundQuiverAlgebra):
    """(projectives, injectives, simples), indexed like the vertex list."""
    ps = [projective(algebra, v) for v in algebra.vertices]
    qs = [injective(algebra, v) for v in algebra.vertices]
    ss = [simple(algebra, v) for v in algebra.vertices]
    return ps, qs, ss


def dualize(x: Representation) -> Representation:
    """Vector-space dual, a representation of the opposite algebra."""
    op = x.algebra.opposite()
    mats = {a.name: x.mats[a.name].transpose() for a in x.algebra.quiver.arrows}
    return Representation(op, dict(x.dims), mats, check=False)


def dualize_morphism(f: RepMorphism) -> RepMorphism:
    return RepMorphism(dualize(f.target), dualize(f.source),
                       {v: f.blocks[v].transpose() for v in f.source.algebra.vertices},
                       check=False)


# ---------------------------------------------------------------------------
# direct sums


@dataclass
class StdSum:
    """Direct sum of standard projectives or injectives with block offsets."""

    algebra: BoundQuiverAlgebra
    kind: str                      # "proj" | "inj"
    summands: List[str]
    rep: Representation = field(init=False)
    _offsets: List[Dict[str, int]] = field(init=False)

    def __post_init__(self):
        make = projective if self.kind == "proj" else injective
        parts = [make(self.algebra, v) for v in self.summands]
        self.rep, incls, projs = direct_sum(self.algebra, parts)
        self._offsets = []
        running = {v: 0 for v in self.algebra.vertices}
        for part in parts:
            self._offsets.append(dict(running))
            for v in self.algebra.vertices:
                running[v] += part.dims[v]
        self.parts = parts
        self.inclusions = incls
        self.projections = projs

    def block(self, f: RepMorphism, other: "StdSum", i: int, j: int) -> RepMorphism:
        """Component of f: self.rep -> other.rep from summand i to summand j."""
        return other.projections[j].compose(f).compose(self.inclusions[i])


def direct_sum(algebra: BoundQuiverAlgebra, parts: Sequence[Representation]):
    """Block-diagonal sum with inclusion and projection morphisms."""
    dims = {v: sum(p.dims[v] for p in parts) for v in algebra.vertices}
    mats = {}
    for a in algebra.quiver.arrows:
        m = ExactMatrix(dims[a.target], dims[a.source])
        roff = coff = 0
        for p in parts:
            pm = p.mats[a.name]
            for i in range(pm.rows):
                for j in range(pm.cols):
                    if pm.data[i][j]:
                        m.data[roff + i][coff + j] = pm.data[i][j]
            roff += p.dims[a.target]
            coff += p.dims[a.source]
        mats[a.name] = m
    total = Representation(algebra, dims, mats, check=False)
    incls, projs = [], []
    offsets = {v: 0 for v in algebra.vertices}
    for p in parts:
        ib = {}
        pb = {}
        for v in algebra.vertices:
            inc = ExactMatrix(dims[v], p.dims[v])
            prj = ExactMatrix(p.dims[v], dims[v])
            for i in range(p.dims[v]):
                inc.data[offsets[v] + i][i] = ONE
                prj.data[i][offsets[v] + i] = ONE
            ib[v] = inc
            pb[v] = prj
        incls.append(RepMorphism(p, total, ib, check=False))
        projs.append(RepMorphism(total, p, pb, check=False))
        for v in algebra.vertices:
            offsets[v] += p.dims[v]
    return total, incls, projs


def morphism_into_sum(components: Sequence[RepMorphism], total: Representation,
                      inclusions: Sequence[RepMorphism]) -> RepMorphism:
    """Column assembly X -> (sum of targets) from components X -> T_i."""
    out = RepMorphism.zero(components[0].source, total)
    for comp, inc in zip(components, inclusions):
        out = out + inc.compose(comp)
    return out


def morphism_from_sum(components: Sequence[RepMorphism], total: Representation,
                      projections: Sequence[RepMorphism]) -> RepMorphism:
    """Row assembly (sum of sources) -> Y from components S_i -> Y."""
    out = RepMorphism.zero(total, components[0].target)
    for comp, prj in zip(components, projections):
        out = out + comp.compose(prj)
    return out


# ---------------------------------------------------------------------------
# hom spaces


def hom_basis(x: Representation, y: Representation) -> List[RepMorphism]:
    """Deterministic basis of the intertwiner space Hom(x, y)."""
    if x.algebra is not y.algebra:
        raise RepError("hom between different algebras")
    alg = x.algebra
    var_offset = {}
    total = 0
    for v in alg.vertices:
        var_offset[v] = total
        total += y.dims[v] * x.dims[v]
    rows = []
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        xa, ya = x.mats[a.name], y.mats[a.name]
        # f_w * X_a - Y_a * f_u = 0; entry (r, c) for r < y.dims[w], c < x.dims[u]
        for r in range(y.dims[w]):
            for c in range(x.dims[u]):
                row = {}
                for k in range(x.dims[w]):
                    coef = xa.data[k][c]
                    if coef:
                        row[var_offset[w] + r * x.dims[w] + k] = \
                            row.get(var_offset[w] + r * x.dims[w] + k, ZERO) + coef
                for k in range(y.dims[u]):
                    coef = ya.data[r][k]
                    if coef:
                        idx = var_offset[u] + k * x.dims[u] + c
                        row[idx] = row.get(idx, ZERO) - coef
                if row:
                    rows.append(row)
    mat = ExactMatrix(len(rows), total)
    for i, row in enumerate(rows):
        for j, c in row.items():
            mat.data[i][j] = c
    basis = kernel_basis(mat)
    out = []
    for k in range(basis.cols):
        blocks = {}
        for v in alg.vertices:
            m = ExactMatrix(y.dims[v], x.dims[v])
            off = var_offset[v]
            for r in range(y.dims[v]):
                for c in range(x.dims[v]):
                    m.data[r][c] = basis.data[off + r * x.dims[v] + c][k]
            blocks[v] = m
        out.append(RepMorphism(x, y, blocks, check=False))
    return out


def hom_dim(x: Representation, y: Representation) -> int:
    return len(hom_basis(x, y))


def morphism_flat(f: RepMorphism) -> List[Fraction]:
    out = []
    for v in f.source.algebra.vertices:
        for row in f.blocks[v].data:
            out.extend(row)
    return out


def coordinates_in_basis(f: RepMorphism, basis: Sequence[RepMorphism]) -> List[Fraction]:
    """Coefficients of f over a linearly independent morphism list."""
    if not basis:
        if f.is_zero():
            return []
        raise RepError("nonzero morphism in empty basis")
    cols = [morphism_flat(b) for b in basis]
    mat = ExactMatrix(len(cols[0]), len(cols))
    for j, col in enumerate(cols):
        for i, val in enumerate(col):
            mat.data[i][j] = val
    sol = solve(mat, morphism_flat(f))
    if sol is None:
        raise RepError("morphism outside span of basis")
    return sol


# ---------------------------------------------------------------------------
# kernels, cokernels, images


def sub_representation(x: Representation, columns: Dict[str, ExactMatrix]):
    """Subrepresentation spanned by the given (independent) columns.

    Returns (sub, inclusion).  The span must be arrow-stable.
    """
    alg = x.algebra
    dims = {v: columns[v].cols for v in alg.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        pushed = x.mats[a.name] * columns[a.source]
        act = solve_matrix(columns[a.target], pushed)
        if act is None:
            raise RepError("columns do not span a subrepresentation")
        mats[a.name] = act
    sub = Representation(alg, dims, mats, check=False)
    incl = RepMorphism(sub, x, {v: columns[v] for v in alg.vertices}, check=False)
    return sub, incl


def quotient_representation(x: Representation, columns: Dict[str, ExactMatrix]):
    """Quotient of x by the arrow-stable span of the given columns.

    Returns (quotient, projection).
    """
    alg = x.algebra
    projs = {}
    for v in alg.vertices:
        # functionals vanishing on the span: null space of the transpose
        projs[v] = kernel_basis(columns[v].transpose()).transpose()
    dims = {v: projs[v].rows for v in alg.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        rhs = projs[a.target] * x.mats[a.name]
        # act * proj_source = rhs; proj_source is surjective
        sec = solve_matrix(projs[a.source], ExactMatrix.identity(dims[a.source]))
        if sec is None:
            raise RepError("projection has no section")
        mats[a.name] = rhs * sec
    quo = Representation(alg, dims, mats, check=False)
    proj = RepMorphism(x, quo, projs, check=False)
    return quo, proj


def ker_coker_im(f: RepMorphism):
    """(kernel, inclusion), (image, epi part, mono part), (cokernel, projection).

    The factorization satisfies mono . epi = f exactly; rank-nullity holds
    per vertex.
    """
    alg = f.source.algebra
    ker_cols = {v: kernel_basis(f.blocks[v]) for v in alg.vertices}
    kernel, k_incl = sub_representation(f.source, ker_cols)
    im_cols = {v: column_space_basis(f.blocks[v]) for v in alg.vertices}
    image, i_incl = sub_representation(f.target, im_cols)
    epi_blocks = {}
    for v in alg.vertices:
        w = solve_matrix(im_cols[v], f.blocks[v])
        assert w is not None
        epi_blocks[v] = w
    epi = RepMorphism(f.source, image, epi_blocks, check=False)
    coker, c_proj = quotient_representation(f.target, im_cols)
    return (kernel, k_incl), (image, epi, i_incl), (coker, c_proj)


def kernel_of(f: RepMorphism):
    return ker_coker_im(f)[0]


def cokernel_of(f: RepMorphism):
    return ker_coker_im(f)[2]


# ---------------------------------------------------------------------------
# radical, top, socle


def radical_columns(x: Representation) -> Dict[str, ExactMatrix]:
    alg = x.algebra
    out = {}
    for v in alg.vertices:
        incoming = [x.mats[a.name] for a in alg.quiver.in_arrows(v)]
        if incoming:
            stacked = incoming[0]
            for m in incoming[1:]:
                stacked = stacked.hstack(m)
            out[v] = column_space_basis(stacked)
        else:
            out[v] = ExactMatrix(x.dims[v], 0)
    return out


def top_rad_soc(x: Representation):
    """((top, projection), (radical, inclusion), (socle, inclusion))."""
    alg = x.algebra
    rad_cols = radical_columns(x)
    radical, r_incl = sub_representation(x, rad_cols)
    top, t_proj = quotient_representation(x, rad_cols)
    soc_cols = {}
    for v in alg.vertices:
        outgoing = [x.mats[a.name] for a in alg.quiver.out_arrows(v)]
        if outgoing:
            stacked = outgoing[0]
            for m in outgoing[1:]:
                stacked = stacked.vstack(m)
            soc_cols[v] = kernel_basis(stacked)
        else:
            soc_cols[v] = ExactMatrix.identity(x.dims[v])
    socle, s_incl = sub_representation(x, soc_cols)
    return (top, t_proj), (radical, r_incl), (socle, s_incl)


# ---------------------------------------------------------------------------
# covers and envelopes


def projective_cover(x: Representation) -> Tuple[StdSum, RepMorphism]:
    """Minimal projective cover as an explicit sum of standard projectives."""
    alg = x.algebra
    (top, t_proj), _, _ = top_rad_soc(x)
    summands: List[str] = []
    lifts: List[Tuple[str, List[Fraction]]] = []
    for v in alg.vertices:
        for k in range(top.dims[v]):
            unit = [ONE if i == k else ZERO for i in range(top.dims[v])]
            lift = solve(t_proj.blocks[v], unit)
            assert lift is not None
            summands.append(v)
            lifts.append((v, lift))
    psum = StdSum(alg, "proj", summands)
    blocks = {w: ExactMatrix(x.dims[w], psum.rep.dims[w]) for w in alg.vertices}
    for b_idx, (v, lift) in enumerate(lifts):
        for w in alg.vertices:
            paths = alg.paths_between(v, w)
            off = psum._offsets[b_idx][w]
            for pi, p in enumerate(paths):
                img = x.path_matrix(p).apply(lift)
                for r, val in enumerate(img):
                    if val:
                        blocks[w].data[r][off + pi] = val
    epi = RepMorphism(psum.rep, x, blocks, check=False)
    return psum, epi


def injective_envelope(x: Representation) -> Tuple[StdSum, RepMorphism]:
    """Minimal injective envelope as an explicit sum of standard injectives."""
    alg = x.algebra
    _, _, (socle, s_incl) = top_rad_soc(x)
    summands: List[str] = []
    functionals: List[Tuple[str, List[Fraction]]] = []
    for v in alg.vertices:
        cols = s_incl.blocks[v]
        if cols.cols == 0:
            continue
        # left inverse of the socle inclusion, rows = dual functionals
        left_t = solve_matrix(cols.transpose(), ExactMatrix.identity(cols.cols))
        assert left_t is not None
        for k in range(cols.cols):
            summands.append(v)
            functionals.append((v, left_t.col(k)))
    # keep vertex order stable
    order = sorted(range(len(summands)), key=lambda i: alg.quiver.vertex_index[summands[i]])
    summands = [summands[i] for i in order]
    functionals = [functionals[i] for i in order]
    isum = StdSum(alg, "inj", summands)
    blocks = {w: ExactMatrix(isum.rep.dims[w], x.dims[w]) for w in alg.vertices}
    for b_idx, (v, lam) in enumerate(functionals):
        for w in alg.vertices:
            paths = alg.paths_between(w, v)
            off = isum._offsets[b_idx][w]
            for pi, p in enumerate(paths):
                pm = x.path_matrix(p)
                # row: x -> lam(path action applied to x)
                for c in range(x.dims[w]):
                    s = ZERO
                    for r in range(x.dims[v]):
                        if pm.data[r][c] and lam[r]:
                            s += lam[r] * pm.data[r][c]
                    if s:
                        blocks[w].data[off + pi][c] = s
    mono = RepMorphism(x, isum.rep, blocks, check=False)
    return isum, mono


def cover_envelope(x: Representation, side: str):
    """Spec-level entry point: projective cover or injective envelope."""
    if side == "projective":
        return projective_cover(x)
    if side == "injective":
        return injective_envelope(x)
    raise RepError(f"unknown side {side!r}")


# ---------------------------------------------------------------------------
# Nakayama functor on projectives / injectives


def path_coefficients_proj(f: RepMorphism, src: StdSum, tgt: StdSum,
                           i: int, j: int) -> Dict[Path, Fraction]:
    """Coefficients over paths (tgt vertex_j -> src vertex_i) of a block P_i -> P_j."""
    alg = f.source.algebra
    vi, vj = src.summands[i], tgt.summands[j]
    triv_paths = alg.paths_between(vi, vi)
    idx = triv_paths.index(Path.trivial(vi))
    col = src._offsets[i][vi] + idx
    out = {}
    rows = alg.paths_between(vj, vi)
    for pi, p in enumerate(rows):
        val = f.blocks[vi].data[tgt._offsets[j][vi] + pi][col]
        if val:
            out[p] = val
    return out


def path_coefficients_inj(f: RepMorphism, src: StdSum, tgt: StdSum,
                          i: int, j: int) -> Dict[Path, Fraction]:
    """Coefficients over paths (tgt vertex_j -> src vertex_i) of a block I_i -> I_j."""
    alg = f.source.algebra
    vi, vj = src.summands[i], tgt.summands[j]
    triv_paths = alg.paths_between(vj, vj)
    idx = triv_paths.index(Path.trivial(vj))
    row = tgt._offsets[j][vj] + idx
    out = {}
    cols = alg.paths_between(vj, vi)
    for pi, p in enumerate(cols):
        val = f.blocks[vj].data[row][src._offsets[i][vj] + pi]
        if val:
            out[p] = val
    return out


def proj_morphism_from_path(alg: BoundQuiverAlgebra, p: Path) -> RepMorphism:
    """phi_p: P_{target(p)} -> P_{source(p)}, prepend p."""
    src = projective(alg, p.target)
    tgt = projective(alg, p.source)
    blocks = {}
    for w in alg.vertices:
        in_paths = alg.paths_between(p.target, w)
        out_paths = alg.paths_between(p.source, w)
        out_index = {q: i for i, q in enumerate(out_paths)}
        m = ExactMatrix(len(out_paths), len(in_paths))
        for j, q in enumerate(in_paths):
            for bp, c in alg.reduce_path(p.then(q)).items():
                m.data[out_index[bp]][j] = c
        blocks[w] = m
    return RepMorphism(src, tgt, blocks, check=False)


def inj_morphism_from_path(alg: BoundQuiverAlgebra, p: Path) -> RepMorphism:
    """iota_p: I_{target(p)} -> I_{source(p)} for p: source -> target... read on.

    For p: j -> i this is the map I_i -> I_j dual to appending p on the
    right, the Nakayama image of phi_p: P_i -> P_j.
    """
    j, i = p.source, p.target
    src = injective(alg, i)
    tgt = injective(alg, j)
    blocks = {}
    for w in alg.vertices:
        from_paths = alg.paths_between(w, j)
        to_paths = alg.paths_between(w, i)
        to_index = {q: k for k, q in enumerate(to_paths)}
        raw = ExactMatrix(len(to_paths), len(from_paths))
        for c, q in enumerate(from_paths):
            for bp, coef in alg.reduce_path(q.then(p)).items():
                raw.data[to_index[bp]][c] = coef
        blocks[w] = raw.transpose()
    return RepMorphism(src, tgt, blocks, check=False)


def nakayama_std(f: RepMorphism, src: StdSum, tgt: StdSum,
                 direction: str = "forward") -> Tuple[RepMorphism, StdSum, StdSum]:
    """Apply nu (forward, on projectives) or nu^- (inverse, on injectives).

    Blocks are extracted as path coefficients and rebuilt on the other side;
    nu P_v = I_v and nu^- I_v = P_v summandwise.
    """
    alg = f.source.algebra
    if direction == "forward":
        if src.kind != "proj" or tgt.kind != "proj":
            raise NotProjective("nakayama forward needs projective sums")
        nsrc = StdSum(alg, "inj", list(src.summands))
        ntgt = StdSum(alg, "inj", list(tgt.summands))
        out = RepMorphism.zero(nsrc.rep, ntgt.rep)
        for i in range(len(src.summands)):
            for j in range(len(tgt.summands)):
                coeffs = path_coefficients_proj(f, src, tgt, i, j)
                for p, c in coeffs.items():
                    block = inj_morphism_from_path(alg, p).scale(c)
                    out = out + ntgt.inclusions[j].compose(block).compose(
                        nsrc.projections[i])
        return out, nsrc, ntgt
    if direction == "inverse":
        if src.kind != "inj" or tgt.kind != "inj":
            raise NotInjective("nakayama inverse needs injective sums")
        nsrc = StdSum(alg, "proj", list(src.summands))
        ntgt = StdSum(alg, "proj", list(tgt.summands))
        out = RepMorphism.zero(nsrc.rep, ntgt.rep)
        for i in range(len(src.summands)):
            for j in range(len(tgt.summands)):
                coeffs = path_coefficients_inj(f, src, tgt, i, j)
                for p, c in coeffs.items():
                    block = proj_morphism_from_path(alg, p).scale(c)
                    out = out + ntgt.inclusions[j].compose(block).compose(
                        nsrc.projections[i])
        return out, nsrc, ntgt
    raise RepError(f"unknown direction {direction!r}")


def _match_std_sum(x: Representation, kind: str):
    """Decompose x and match every summand with a standard module.

    Returns (StdSum, iso: StdSum.rep -> x).
    """
    alg = x.algebra
    make = projective if kind == "proj" else injective
    summands = []
    pieces = decompose_flat(x)
    comps = []
    for rep, incl, proj in pieces:
        matched = None
        for v in alg.vertices:
            std = make(alg, v)
            iso = indec_isomorphic(std, rep)
            if iso is not None:
                matched = (v, iso)
                break
        if matched is None:
            if kind == "proj":
                raise NotProjective(f"summand {rep!r} is not projective")
            raise NotInjective(f"summand {rep!r} is not injective")
        v, iso = matched
        summands.append(v)
        comps.append(incl.compose(iso))
    ssum = StdSum(alg, kind, summands)
    iso = RepMorphism.zero(ssum.rep, x)
    for k, comp in enumerate(comps):
        iso = iso + comp.compose(ssum.projections[k])
    if not all(is_invertible(iso.blocks[v]) for v in alg.vertices):
        raise RepError("standard-sum matching failed to produce an isomorphism")
    return ssum, iso


def nakayama(f: RepMorphism, direction: str = "forward") -> RepMorphism:
    """Nakayama functor on a morphism between (sums of) projectives/injectives.

    Membership in add(Lambda) / add(D Lambda) is established by decomposing
    both ends and matching standard modules.
    """
    kind = "proj" if direction == "forward" else "inj"
    ssrc, src_iso = _match_std_sum(f.source, kind)
    stgt, tgt_iso = _match_std_sum(f.target, kind)
    tgt_iso_inv = invert_morphism(tgt_iso)
    transported = tgt_iso_inv.compose(f).compose(src_iso)
    out, _, _ = nakayama_std(transported, ssrc, stgt, direction)
    return out


def invert_morphism(f: RepMorphism) -> RepMorphism:
    from .linalg import inverse
    return RepMorphism(f.target, f.source,
                       {v: inverse(f.blocks[v]) for v in f.source.algebra.vertices},
                       check=False)


# ---------------------------------------------------------------------------
# decomposition into indecomposables


def _end_multiplication(basis: List[RepMorphism]):
    """Structure constants c[i][j] = coordinates of basis[i] . basis[j]."""
    k = len(basis)
    table = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            table[i][j] = coordinates_in_basis(basis[i].compose(basis[j]), basis)
    return table


def _left_mult_matrix(table, coords: List[Fraction]) -> ExactMatrix:
    k = len(table)
    m = ExactMatrix(k, k)
    for j in range(k):
        for i in range(k):
            ci = coords[i]
            if ci:
                col = table[i][j]
                for r in range(k):
                    if col[r]:
                        m.data[r][j] += ci * col[r]
    return m


def endo_radical_coords(basis: List[RepMorphism]) -> ExactMatrix:
    """Radical of End as coordinate columns, via the regular trace form."""
    k = len(basis)
    table = _end_multiplication(basis)
    lm = [_left_mult_matrix(table, [ONE if t == i else ZERO for t in range(k)])
          for i in range(k)]
    gram = ExactMatrix(k, k)
    for i in range(k):
        for j in range(k):
            prod = lm[i] * lm[j]
            gram.data[i][j] = sum(prod.data[t][t] for t in range(k))
    return kernel_basis(gram)


DEFAULT_SEED = 20240 + 1


def _splitting_idempotent(x: Representation, basis: List[RepMorphism],
                          rad: ExactMatrix, seed: int, trials: int):
    """A nontrivial idempotent endomorphism of x, or None if End/rad is 1-dim.

    Raises NonSplitEndomorphismRing when the semisimple quotient exceeds
    dimension one but no element with a split squarefree minimal polynomial
    shows up within the trial budget.
    """
    k = len(basis)
    proj = kernel_basis(rad.transpose()).transpose()     # quotient projection
    qdim = proj.rows
    if qdim <= 1:
        return None
    section = solve_matrix(proj, ExactMatrix.identity(qdim))
    table = _end_multiplication(basis)

    ident = coordinates_in_basis(RepMorphism.identity(x), basis)

    def quo_mult_matrix(qcoords):
        full = section.apply(qcoords)
        lm = _left_mult_matrix(table, full)
        return proj * lm * section

    candidates = []
    for i in range(qdim):
        candidates.append([ONE if t == i else ZERO for t in range(qdim)])
    for i in range(qdim):
        for j in range(i + 1, qdim):
            candidates.append([(ONE if t == i else ZERO) + (ONE if t == j else ZERO)
                               for t in range(qdim)])
    rng = random.Random(seed)
    while len(candidates) < trials:
        candidates.append([Fraction(rng.randint(-5, 5)) for _ in range(qdim)])

    one_q = proj.apply(ident)
    for cand in candidates[:trials]:
        m = quo_mult_matrix(cand)
        spec = split_spectrum(m)
        if spec is None or len(spec) < 2:
            continue
        for _, projector in spec:
            e_q = projector.apply(one_q)
            if all(v == 0 for v in e_q) or e_q == one_q:
                continue
            e_full = section.apply(e_q)
            e = RepMorphism.zero(x, x)
            for c, b in zip(e_full, basis):
                if c:
                    e = e + b.scale(c)
            # lift to an honest idempotent: e <- 3e^2 - 2e^3
            lifted = False
            for _ in range(64):
                e2 = e.compose(e)
                if e2 == e:
                    lifted = True
                    break
                e = e2.scale(3) - e2.compose(e).scale(2)
            if not lifted or e.is_zero() or e == RepMorphism.identity(x):
                continue
            return e
    raise NonSplitEndomorphismRing(
        f"semisimple endomorphism quotient of dimension {qdim} did not split "
        f"within {trials} trials")


def image_splitting(x: Representation, e: RepMorphism):
    """(image of e, inclusion, projection) with proj . incl = identity."""
    cols = {v: column_space_basis(e.blocks[v]) for v in x.algebra.vertices}
    img, incl = sub_representation(x, cols)
    projs = {}
    for v in x.algebra.vertices:
        w = solve_matrix(cols[v], e.blocks[v])
        assert w is not None
        projs[v] = w
    proj = RepMorphism(x, img, projs, check=False)
    return img, incl, proj


def decompose_flat(x: Representation, seed: int = DEFAULT_SEED, trials: int = 200):
    """Ungrouped indecomposable pieces: list of (rep, inclusion, projection)."""
    if x.is_zero():
        return []
    pieces: List[Tuple[Representation, RepMorphism, RepMorphism]] = []

    def work(y: Representation, incl: RepMorphism, proj: RepMorphism):
        basis = hom_basis(y, y)
        if len(basis) == 1:
            pieces.append((y, incl, proj))
            return
        rad = endo_radical_coords(basis)
        e = _splitting_idempotent(y, basis, rad, seed, trials)
        if e is None:
            pieces.append((y, incl, proj))
            return
        img1, i1, p1 = image_splitting(y, e)
        img2, i2, p2 = image_splitting(y, RepMorphism.identity(y) - e)
        work(img1, incl.compose(i1), p1.compose(proj))
        work(img2, incl.compose(i2), p2.compose(proj))

    work(x, RepMorphism.identity(x), RepMorphism.identity(x))
    return pieces


def decompose(x: Representation, seed: int = DEFAULT_SEED, trials: int = 200):
    """Indecomposable decomposition.

    Returns a list of (indecomposable, multiplicity, [(inclusion, projection)
    per copy]) where all pairs are expressed against the group representative,
    so they compose to its identity and to zero across distinct copies.
    """
    pieces = decompose_flat(x, seed, trials)
    grouped: List[Tuple[Representation, List[Tuple[RepMorphism, RepMorphism]]]] = []
    for rep, incl, proj in pieces:
        placed = False
        for g_rep, g_pairs in grouped:
            iso = indec_isomorphic(g_rep, rep)
            if iso is not None:
                g_pairs.append((incl.compose(iso),
                                invert_morphism(iso).compose(proj)))
                placed = True
                break
        if not placed:
            grouped.append((rep, [(incl, proj)]))
    return [(rep, len(pairs), pairs) for rep, pairs in grouped]


def indec_isomorphic(x: Representation, y: Representation) -> Optional[RepMorphism]:
    """Exact isomorphism test for indecomposables.

    Between indecomposables any non-radical morphism is invertible, so it
    suffices to look for an invertible hom-basis element.
    """
    if x.dim_vector() != y.dim_vector():
        return None
    for f in hom_basis(x, y):
        if f.is_isomorphism():
            return f
    return None


def find_isomorphism(x: Representation, y: Representation,
                     trials: int = 60, seed: int = DEFAULT_SEED) -> Optional[RepMorphism]:
    """Invertible-combination search over Hom(x, y); None if exhausted.

    For non-isomorphic modules with equal dimension vectors this is a
    probabilistic certificate of failure; decompose-and-match is the exact
    route.
    """
    if x.dim_vector() != y.dim_vector():
        return None
    basis = hom_basis(x, y)
    if not basis:
        return None if x.total_dim() else RepMorphism.zero(x, y)
    for f in basis:
        if f.is_isomorphism():
            return f
    rng = random.Random(seed)
    for _ in range(trials):
        f = RepMorphism.zero(x, y)
        for b in basis:
            f = f + b.scale(rng.randint(-3, 3))
        if f.is_isomorphism():
            return f
    return None


def is_isomorphic(x: Representation, y: Representation) -> bool:
    if x.dim_vector() != y.dim_vector():
        return False
    return find_isomorphism(x, y) is not None


def modules_isomorphic(x: Representation, y: Representation) -> bool:
    """Exact isomorphism test by decomposing and matching indecomposables."""
    if x.dim_vector() != y.dim_vector():
        return False
    if x.is_zero():
        return True
    dx = decompose_flat(x)
    dy = decompose_flat(y)
    if len(dx) != len(dy):
        return False
    used = set()
    for rep, _, _ in dx:
        found = None
        for j, (rep2, _, _) in enumerate(dy):
            if j in used:
                continue
            if indec_isomorphic(rep, rep2) is not None:
                found = j
                break
        if found is None:
            return False
        used.add(found)
    return True
