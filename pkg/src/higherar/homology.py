"""Minimal resolutions, Ext, homological dimensions, approximations, tilting.

Resolutions iterate projective covers (or injective envelopes) on syzygies,
so minimality is by construction.  Ext is the cohomology of Hom(P_*, -); a
dual route through injective coresolutions exists for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import BoundQuiverAlgebra
from .linalg import ExactMatrix, rank
from .reps import (RepError, RepMorphism, Representation, StdSum, decompose,
                   direct_sum, hom_basis, hom_dim, indec_isomorphic,
                   injective, injective_envelope, ker_coker_im, morphism_flat,
                   path_coefficients_proj, projective, projective_cover,
                   zero_rep)


@dataclass
class ResolutionChain:
    """Minimal projective resolution or injective coresolution.

    Projective side: terms[k] covers the k-th syzygy, diffs[k]:
    terms[k+1] -> terms[k], aug: terms[0] -> x.  Injective side runs the
    other way with aug: x -> terms[0].  ``complete`` means the final syzygy
    vanished, so the length equals pd (resp. id).
    """

    side: str
    module: Representation
    terms: List[StdSum]
    diffs: List[RepMorphism]
    aug: RepMorphism
    complete: bool

    def length(self) -> int:
        return len(self.terms) - 1

    def term_rep(self, k: int) -> Representation:
        if 0 <= k < len(self.terms):
            return self.terms[k].rep
        return zero_rep(self.module.algebra)


def min_resolution(x: Representation, side: str, length: int) -> ResolutionChain:
    """Resolution of x up to the given stage, stopping early at a zero syzygy."""
    if length < 0:
        raise RepError("resolution length must be >= 0")
    alg = x.algebra
    if side == "projective":
        psum, eps = projective_cover(x)
        terms, diffs = [psum], []
        aug = eps
        current = eps
        complete = x.is_zero()
        for _ in range(length):
            (ker, incl), _, _ = ker_coker_im(current)
            if ker.is_zero():
                complete = True
                break
            nxt, eps2 = projective_cover(ker)
            diffs.append(incl.compose(eps2))
            terms.append(nxt)
            current = eps2
        else:
            (ker, _), _, _ = ker_coker_im(current)
            complete = ker.is_zero()
        return ResolutionChain(side, x, terms, diffs, aug, complete)
    if side == "injective":
        isum, mono = injective_envelope(x)
        terms, diffs = [isum], []
        aug = mono
        current = mono
        complete = x.is_zero()
        for _ in range(length):
            _, _, (cok, proj) = ker_coker_im(current)
            if cok.is_zero():
                complete = True
                break
            nxt, mono2 = injective_envelope(cok)
            diffs.append(mono2.compose(proj))
            terms.append(nxt)
            current = mono2
        else:
            _, _, (cok, _) = ker_coker_im(current)
            complete = cok.is_zero()
        return ResolutionChain(side, x, terms, diffs, aug, complete)
    raise RepError(f"unknown side {side!r}")


def proj_dimension(x: Representation, cap: Optional[int] = None) -> Optional[int]:
    """Projective dimension; None when it exceeds the cap (reported as infinite)."""
    if x.is_zero():
        return 0
    if cap is None:
        cap = default_dimension_cap(x.algebra)
    chain = min_resolution(x, "projective", cap)
    return chain.length() if chain.complete else None


def inj_dimension(x: Representation, cap: Optional[int] = None) -> Optional[int]:
    if x.is_zero():
        return 0
    if cap is None:
        cap = default_dimension_cap(x.algebra)
    chain = min_resolution(x, "injective", cap)
    return chain.length() if chain.complete else None


def default_dimension_cap(alg: BoundQuiverAlgebra) -> int:
    # acyclic bound quiver algebras have gl.dim < #vertices; leave headroom
    return len(alg.vertices) + 2


# ---------------------------------------------------------------------------
# Ext via Hom(P_*, y)


def _hom_complex_matrix(d: RepMorphism, src: StdSum, tgt: StdSum,
                        y: Representation) -> ExactMatrix:
    """Matrix of Hom(tgt, y) -> Hom(src, y), precomposition with d: src -> tgt.

    Hom(P_v, y) is identified with the coordinate space y_v.
    """
    alg = y.algebra
    col_off, total_c = [], 0
    for v in tgt.summands:
        col_off.append(total_c)
        total_c += y.dims[v]
    row_off, total_r = [], 0
    for v in src.summands:
        row_off.append(total_r)
        total_r += y.dims[v]
    out = ExactMatrix(total_r, total_c)
    for i, vi in enumerate(src.summands):
        for j, vj in enumerate(tgt.summands):
            coeffs = path_coefficients_proj(d, src, tgt, i, j)
            for p, c in coeffs.items():
                pm = y.path_matrix(p)       # y_{vj} -> y_{vi}
                for r in range(pm.rows):
                    for cc in range(pm.cols):
                        if pm.data[r][cc]:
                            out.data[row_off[i] + r][col_off[j] + cc] += c * pm.data[r][cc]
    return out


def ext_dims(x: Representation, y: Representation, imax: int,
             chain: Optional[ResolutionChain] = None) -> List[int]:
    """Dimensions of Ext^0 .. Ext^imax computed from a projective resolution of x.

    A precomputed chain (of stage >= imax + 1 or complete) may be supplied.
    """
    if x.is_zero() or y.is_zero():
        return [0] * (imax + 1)
    if chain is None:
        chain = min_resolution(x, "projective", imax + 1)
    elif not chain.complete and chain.length() < imax + 1:
        raise RepError("supplied resolution chain is too short")
    length = chain.length()

    def dim_at(k: int) -> int:
        if k <= length:
            return sum(y.dims[v] for v in chain.terms[k].summands)
        return 0

    out = []
    prev_rank = 0
    for k in range(imax + 1):
        if k + 1 <= length:
            mat = _hom_complex_matrix(chain.diffs[k], chain.terms[k + 1],
                                      chain.terms[k], y)
        else:
            mat = ExactMatrix(0, dim_at(k))
        r = rank(mat)
        out.append((dim_at(k) - r) - prev_rank)
        prev_rank = r
    return out


def ext_dim(x: Representation, y: Representation, i: int) -> int:
    """dim Ext^i(x, y); Ext^0 is Hom."""
    if i < 0:
        raise RepError("ext degree must be >= 0")
    return ext_dims(x, y, i)[i]


def ext_cocycles(x: Representation, y: Representation, i: int) -> List[RepMorphism]:
    """Cocycle representatives: morphisms P_i(x) -> y killed by the next
    differential, spanning Ext^i together with the coboundaries."""
    from .linalg import kernel_basis
    if i < 0:
        raise RepError("ext degree must be >= 0")
    if x.is_zero() or y.is_zero():
        return []
    chain = min_resolution(x, "projective", i + 1)
    if i > chain.length():
        return []
    if i + 1 <= chain.length():
        mat = _hom_complex_matrix(chain.diffs[i], chain.terms[i + 1],
                                  chain.terms[i], y)
    else:
        mat = ExactMatrix(0, sum(y.dims[v] for v in chain.terms[i].summands))
    cycles = kernel_basis(mat)
    src = chain.terms[i]
    out = []
    for k in range(cycles.cols):
        blocks = {v: ExactMatrix(y.dims[v], src.rep.dims[v])
                  for v in y.algebra.vertices}
        off = 0
        for b_idx, vb in enumerate(src.summands):
            coords = [cycles.data[off + t][k] for t in range(y.dims[vb])]
            off += y.dims[vb]
            # morphism P_vb -> y with value `coords` at the trivial path
            for w in y.algebra.vertices:
                paths = y.algebra.paths_between(vb, w)
                for pi, p in enumerate(paths):
                    img = y.path_matrix(p).apply(coords)
                    col = src._offsets[b_idx][w] + pi
                    for r, val in enumerate(img):
                        if val:
                            blocks[w].data[r][col] = val
        out.append(RepMorphism(src.rep, y, blocks, check=False))
    return out


def ext_dim_via_injective(x: Representation, y: Representation, i: int) -> int:
    """Same Ext dimension from the injective coresolution of y (oracle route)."""
    if x.is_zero() or y.is_zero():
        return 0
    chain = min_resolution(y, "injective", i + 1)
    length = chain.length()
    spaces = [hom_basis(x, chain.term_rep(k)) for k in range(i + 2)]
    prev_rank = 0
    result = 0
    for k in range(i + 1):
        if k + 1 <= length:
            mm = ExactMatrix(len(spaces[k + 1]), len(spaces[k]))
            for j, f in enumerate(spaces[k]):
                col = _coords_against(chain.diffs[k].compose(f), spaces[k + 1])
                for r, val in enumerate(col):
                    mm.data[r][j] = val
        else:
            mm = ExactMatrix(0, len(spaces[k]))
        r = rank(mm)
        result = (len(spaces[k]) - r) - prev_rank
        prev_rank = r
    return result


def _coords_against(g: RepMorphism, basis: Sequence[RepMorphism]) -> List:
    from .reps import coordinates_in_basis
    return coordinates_in_basis(g, list(basis))


# ---------------------------------------------------------------------------
# algebra-level dimensions


def projective_injective_vertices(alg: BoundQuiverAlgebra) -> Dict[str, Optional[str]]:
    """For each vertex w: the vertex v with I_w isomorphic to P_v, if any."""
    out: Dict[str, Optional[str]] = {}
    projs = {v: projective(alg, v) for v in alg.vertices}
    for w in alg.vertices:
        iw = injective(alg, w)
        out[w] = None
        for v in alg.vertices:
            if indec_isomorphic(iw, projs[v]) is not None:
                out[w] = v
                break
    return out


def global_dimension(alg: BoundQuiverAlgebra, cap: Optional[int] = None) -> Optional[int]:
    """Max projective dimension of the simples; None means >= cap."""
    from .reps import simple
    if cap is None:
        cap = default_dimension_cap(alg)
    worst = 0
    for v in alg.vertices:
        pd = proj_dimension(simple(alg, v), cap)
        if pd is None:
            return None
        worst = max(worst, pd)
    return worst


def dominant_dimension(alg: BoundQuiverAlgebra, cap: Optional[int] = None):
    """Length of the projective head of the minimal injective coresolution of
    the regular module; None encodes the infinite flag (whole coresolution
    projective)."""
    if cap is None:
        cap = default_dimension_cap(alg)
    regular, _, _ = direct_sum(alg, [projective(alg, v) for v in alg.vertices])
    chain = min_resolution(regular, "injective", cap)
    pi = projective_injective_vertices(alg)
    count = 0
    for k in range(chain.length() + 1):
        if all(pi[w] is not None for w in chain.terms[k].summands):
            count += 1
        else:
            return count
    if chain.complete:
        return None  # infinite: every term of the full coresolution is projective
    return count


def homological_dimensions(alg: BoundQuiverAlgebra, cap: Optional[int] = None):
    """(gl_dim, dom_dim, per-simple pd) with None as the infinity flag."""
    from .reps import simple
    if cap is None:
        cap = default_dimension_cap(alg)
    per_simple = {v: proj_dimension(simple(alg, v), cap) for v in alg.vertices}
    gl = None if any(p is None for p in per_simple.values()) else max(per_simple.values())
    dom = dominant_dimension(alg, cap)
    return gl, dom, per_simple


# ---------------------------------------------------------------------------
# approximations


def approximation(x: Representation, generators: Sequence[Representation],
                  side: str) -> Tuple[RepMorphism, List[Tuple[int, int]]]:
    """Minimal right/left add(generators)-approximation of x.

    Returns (map, used) where used lists (generator index, hom-basis index)
    per remaining summand of the approximating object.  Minimization strips
    summands in construction order while the approximation property holds.
    """
    alg = x.algebra
    if side == "right":
        comps: List[Tuple[int, int, RepMorphism]] = []
        for gi, g in enumerate(generators):
            for hi, h in enumerate(hom_basis(g, x)):
                comps.append((gi, hi, h))

        def is_approx(active: List[Tuple[int, int, RepMorphism]]) -> bool:
            for g in generators:
                target_dim = hom_dim(g, x)
                if target_dim == 0:
                    continue
                vecs = []
                for gi, hi, h in active:
                    for u in hom_basis(g, generators[gi]):
                        vecs.append(morphism_flat(h.compose(u)))
                if not vecs:
                    return False
                m = ExactMatrix(len(vecs), len(vecs[0]))
                m.data = [list(v) for v in vecs]
                if rank(m) < target_dim:
                    return False
            return True

        active = comps[:]
        k = 0
        while k < len(active):
            trial = active[:k] + active[k + 1:]
            if is_approx(trial):
                active = trial
            else:
                k += 1
        parts = [generators[gi] for gi, _, _ in active]
        total, incls, projs = direct_sum(alg, parts)
        f = RepMorphism.zero(total, x)
        for (gi, hi, h), prj in zip(active, projs):
            f = f + h.compose(prj)
        return f, [(gi, hi) for gi, hi, _ in active]

    if side == "left":
        comps = []
        for gi, g in enumerate(generators):
            for hi, h in enumerate(hom_basis(x, g)):
                comps.append((gi, hi, h))

        def is_approx_left(active) -> bool:
            for g in generators:
                target_dim = hom_dim(x, g)
                if target_dim == 0:
                    continue
                vecs = []
                for gi, hi, h in active:
                    for u in hom_basis(generators[gi], g):
                        vecs.append(morphism_flat(u.compose(h)))
                if not vecs:
                    return False
                m = ExactMatrix(len(vecs), len(vecs[0]))
                m.data = [list(v) for v in vecs]
                if rank(m) < target_dim:
                    return False
            return True

        active = comps[:]
        k = 0
        while k < len(active):
            trial = active[:k] + active[k + 1:]
            if is_approx_left(trial):
                active = trial
            else:
                k += 1
        parts = [generators[gi] for gi, _, _ in active]
        total, incls, projs = direct_sum(alg, parts)
        f = RepMorphism.zero(x, total)
        for (gi, hi, h), inc in zip(active, incls):
            f = f + inc.compose(h)
        return f, [(gi, hi) for gi, hi, _ in active]
    raise RepError(f"unknown side {side!r}")


# ---------------------------------------------------------------------------
# tilting


def is_tilting(t: Representation, alg: BoundQuiverAlgebra,
               gl_dim: Optional[int] = None,
               gens: Optional[List[Representation]] = None):
    """Tilting test: finite pd, Ext-self-orthogonality, coresolution of the
    regular module by left add(t)-approximations.

    Returns (verdict, pd, witness) where witness lists the coresolution
    steps as dimension-vector pairs.  ``gens`` may supply the indecomposable
    summands of t when the caller already knows them.
    """
    if t.algebra is not alg:
        raise RepError("module is over a different algebra")
    if t.is_zero():
        return False, None, {"reason": "zero module"}
    if gl_dim is None:
        gl_dim = global_dimension(alg)
    pd = proj_dimension(t)
    if pd is None:
        return False, None, {"reason": "infinite projective dimension"}
    upto = gl_dim if gl_dim is not None else default_dimension_cap(alg)
    exts = ext_dims(t, t, max(upto, 1))
    for i in range(1, len(exts)):
        if exts[i]:
            return False, pd, {"reason": f"Ext^{i}(T,T) != 0"}
    if gens is None:
        gens = [rep for rep, _, _ in decompose(t)]
    regular, _, _ = direct_sum(alg, [projective(alg, v) for v in alg.vertices])
    chain = []
    current = regular
    for step in range(pd + 2):
        if current.is_zero():
            return True, pd, {"coresolution": chain}
        f, used = approximation(current, gens, "left")
        (ker, _), _, (cok, _) = ker_coker_im(f)
        chain.append({
            "from": current.dim_vector(),
            "to": f.target.dim_vector(),
            "summands": used,
        })
        if not ker.is_zero():
            return False, pd, {"reason": "left approximation not injective",
                               "coresolution": chain}
        current = cok
    return False, pd, {"reason": "coresolution did not terminate",
                       "coresolution": chain}


def perp_membership(t: Representation, x: Representation,
                    gl_dim: Optional[int] = None) -> bool:
    """x in T-perp: Ext^i(t, x) = 0 for all 0 < i <= gl.dim."""
    alg = t.algebra
    if gl_dim is None:
        gl_dim = global_dimension(alg)
    upto = gl_dim if gl_dim is not None else default_dimension_cap(alg)
    if upto == 0:
        return True
    exts = ext_dims(t, x, upto)
    return all(e == 0 for e in exts[1:])
