"""Perfect complexes, homotopy Hom, Serre twists, and windowed closures.

Complexes are cochain complexes (differentials raise degree).  The Serre
functor is the termwise Nakayama functor on a projective complex; its
n-shifted powers drive the closure.  Closure objects are kept in split form
as sums of shifted modules, with the splitting hypothesis (cohomology
concentrated on the n-grid) verified at every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import BoundQuiverAlgebra
from .homology import (default_dimension_cap, ext_dims, global_dimension,
                       min_resolution)
from .linalg import ExactMatrix, is_invertible, solve_matrix
from .reps import (RepMorphism, Representation, StdSum,
                   coordinates_in_basis, decompose_flat, direct_sum,
                   dualize, dualize_morphism, hom_basis, indec_isomorphic,
                   ker_coker_im, nakayama_std, projective, projective_cover,
                   zero_rep)
from .taucluster import LayerCapExceeded, tau, tau_closure


class DerivedError(ValueError):
    pass


class NotTauFinite(DerivedError):
    pass


class SplitHypothesisViolated(DerivedError):
    """A closure object has cohomology off the n-grid: input out of scope."""


class Complex:
    """Bounded cochain complex of representations."""

    def __init__(self, algebra: BoundQuiverAlgebra,
                 terms: Dict[int, Representation],
                 diffs: Dict[int, RepMorphism],
                 sums: Optional[Dict[int, StdSum]] = None,
                 check: bool = True):
        self.algebra = algebra
        self.terms = {i: t for i, t in terms.items() if not t.is_zero()}
        self.diffs = {}
        for i, d in diffs.items():
            if i in self.terms and (i + 1) in self.terms and not d.is_zero():
                self.diffs[i] = d
        self.sums = {i: s for i, s in (sums or {}).items() if i in self.terms}
        if check:
            self.validate()

    def validate(self) -> None:
        for i, d in self.diffs.items():
            if d.source.dims != self.term(i).dims or d.target.dims != self.term(i + 1).dims:
                raise DerivedError(f"differential at {i} has wrong endpoints")
            nxt = self.diffs.get(i + 1)
            if nxt is not None and not nxt.compose(d).is_zero():
                raise DerivedError(f"d^2 != 0 at degree {i}")

    def support(self) -> List[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def term(self, i: int) -> Representation:
        return self.terms.get(i) or zero_rep(self.algebra)

    def diff(self, i: int) -> RepMorphism:
        d = self.diffs.get(i)
        if d is not None:
            return d
        return RepMorphism.zero(self.term(i), self.term(i + 1))

    def shift(self, k: int) -> "Complex":
        """X[k]: degree i holds X^{i+k}; odd shifts flip differential signs."""
        sign = -1 if k % 2 else 1
        terms = {i - k: t for i, t in self.terms.items()}
        diffs = {i - k: (d if sign == 1 else d.scale(-1))
                 for i, d in self.diffs.items()}
        sums = {i - k: s for i, s in self.sums.items()}
        return Complex(self.algebra, terms, diffs, sums, check=False)

    def cohomology(self, i: int):
        """(H^i, cycle inclusion, projection cycles -> H^i)."""
        (cyc, incl), _, _ = ker_coker_im(self.diff(i))
        d_in = self.diff(i - 1)
        lift = {}
        for v in self.algebra.vertices:
            w = solve_matrix(incl.blocks[v], d_in.blocks[v])
            if w is None:
                raise DerivedError("boundaries do not lie in cycles")
            lift[v] = w
        g = RepMorphism(self.term(i - 1), cyc, lift, check=False)
        _, _, (h, proj) = ker_coker_im(g)
        return h, incl, proj

    def cohomology_module(self, i: int) -> Representation:
        return self.cohomology(i)[0]

    def total_dim(self) -> int:
        return sum(t.total_dim() for t in self.terms.values())

    def __repr__(self):
        body = ", ".join(f"{i}:{self.terms[i].dim_vector()}" for i in self.support())
        return f"Complex({body})"


def stalk_complex(x: Representation, degree: int = 0,
                  ssum: Optional[StdSum] = None) -> Complex:
    sums = {degree: ssum} if ssum is not None else None
    return Complex(x.algebra, {degree: x}, {}, sums, check=False)


def proj_resolution_complex(x: Representation, cap: Optional[int] = None) -> Complex:
    """Perfect complex quasi-isomorphic to the stalk of x in degree 0."""
    alg = x.algebra
    if cap is None:
        cap = default_dimension_cap(alg)
    chain = min_resolution(x, "projective", cap)
    if not chain.complete:
        raise DerivedError("module has no finite projective resolution")
    terms, diffs, sums = {}, {}, {}
    for k in range(chain.length() + 1):
        terms[-k] = chain.terms[k].rep
        sums[-k] = chain.terms[k]
    for k in range(1, chain.length() + 1):
        diffs[-k] = chain.diffs[k - 1]
    return Complex(alg, terms, diffs, sums, check=False)


def complex_dualize(c: Complex) -> Complex:
    """Vector-space dual over the opposite algebra; degrees negate."""
    terms = {-i: dualize(t) for i, t in c.terms.items()}
    diffs = {}
    for i, d in c.diffs.items():
        diffs[-i - 1] = dualize_morphism(d)
    op = c.algebra.opposite()
    return Complex(op, terms, diffs, check=False)


# ---------------------------------------------------------------------------
# homotopy Hom


class HomotopyHomData:
    """Hom complex data between two bounded complexes.

    Holds the cycle space (chain maps), the boundary columns (null-homotopic
    maps), and a chosen basis of their quotient; provides coordinates of an
    arbitrary chain map modulo homotopy.
    """

    def __init__(self, p: Complex, qs: Complex):
        self.p, self.qs = p, qs
        degrees = sorted(set(p.support()) | set(d - 1 for d in qs.support())
                         | set(qs.support()))
        self.degrees = degrees
        self.hom_spaces = {i: hom_basis(p.term(i), qs.term(i)) for i in degrees}
        h_spaces = {i: hom_basis(p.term(i), qs.term(i - 1)) for i in degrees}
        self.var_off, total = {}, 0
        for i in degrees:
            self.var_off[i] = total
            total += len(self.hom_spaces[i])
        self.total = total

        from .linalg import kernel_basis, rank
        rows = []
        for i in degrees:
            tgt = hom_basis(p.term(i), qs.term(i + 1))
            if not tgt:
                continue
            width = len(tgt)
            # chain condition at i: d_q . f_i - f_{i+1} . d_p = 0
            mat_cols = []
            for k, f in enumerate(self.hom_spaces[i]):
                g = qs.diff(i).compose(f)
                mat_cols.append((self.var_off[i] + k,
                                 coordinates_in_basis(g, tgt)))
            nxt = self.hom_spaces.get(i + 1, [])
            for k, f in enumerate(nxt):
                g = f.compose(p.diff(i))
                mat_cols.append((self.var_off[i + 1] + k,
                                 [-c for c in coordinates_in_basis(g, tgt)]))
            for r in range(width):
                row = {}
                for idx, col in mat_cols:
                    if col[r]:
                        row[idx] = row.get(idx, 0) + col[r]
                rows.append(row)
        mat = ExactMatrix(len(rows), total)
        for rno, row in enumerate(rows):
            for idx, val in row.items():
                mat.data[rno][idx] = val
        self.cycles = kernel_basis(mat)

        boundary_cols = []
        for i in degrees:
            for h in h_spaces[i]:
                comps: Dict[int, RepMorphism] = {}
                dh = qs.diff(i - 1).compose(h)
                comps[i] = dh
                hd = h.compose(p.diff(i - 1))
                comps[i - 1] = comps.get(
                    i - 1, RepMorphism.zero(p.term(i - 1), qs.term(i - 1))) + hd
                vec = self.ambient(comps)
                if vec is not None:
                    boundary_cols.append(vec)
        self.boundary_cols = boundary_cols
        bmat = ExactMatrix(total, len(boundary_cols))
        for j, col in enumerate(boundary_cols):
            for i2, v in enumerate(col):
                bmat.data[i2][j] = v
        self._bmat = bmat
        self.dim = self.cycles.cols - rank(bmat)

        chosen = []
        base = ExactMatrix(len(boundary_cols), total)
        base.data = [list(r) for r in boundary_cols]
        current = rank(base)
        for k in range(self.cycles.cols):
            cand = base.data + [self.cycles.col(k)]
            cm = ExactMatrix(len(cand), total)
            cm.data = [list(r) for r in cand]
            r = rank(cm)
            if r > current:
                chosen.append(k)
                base = cm
                current = r
        self.basis = []
        for k in chosen:
            comps = {}
            for i in degrees:
                f = RepMorphism.zero(p.term(i), qs.term(i))
                for kk, b in enumerate(self.hom_spaces[i]):
                    c = self.cycles.data[self.var_off[i] + kk][k]
                    if c:
                        f = f + b.scale(c)
                comps[i] = f
            self.basis.append(comps)

    def ambient(self, chain_map: Dict[int, RepMorphism]):
        """Coordinates over the raw Hom spaces; None when incompatible."""
        vec = [0] * self.total
        for i, f in chain_map.items():
            if f is None:
                continue
            if i not in self.var_off:
                if not f.is_zero():
                    return None
                continue
            for k, c in enumerate(coordinates_in_basis(f, self.hom_spaces[i])):
                vec[self.var_off[i] + k] = c
        return vec

    def coords_mod_homotopy(self, chain_map: Dict[int, RepMorphism]):
        """Coefficients over the chosen basis, discarding the homotopy part."""
        from .linalg import solve
        target = self.ambient(chain_map)
        if target is None:
            raise DerivedError("chain map incompatible with the Hom complex")
        basis_cols = [self.ambient(b) for b in self.basis]
        cols = basis_cols + self.boundary_cols
        mat = ExactMatrix(self.total, len(cols))
        for j, col in enumerate(cols):
            for i2, v in enumerate(col):
                mat.data[i2][j] = v
        sol = solve(mat, target)
        if sol is None:
            raise DerivedError("map is not a chain map modulo homotopy")
        return sol[:len(self.basis)]


def hom_homotopy(p: Complex, q: Complex, degree_shift: int = 0):
    """(dimension, basis) of chain maps p -> q[degree_shift] up to homotopy."""
    data = HomotopyHomData(p, q.shift(degree_shift))
    return data.dim, data.basis


def compose_chain_maps(f: Dict[int, RepMorphism], g: Dict[int, RepMorphism],
                       p: Complex, mid: Complex, q: Complex):
    """Composite p -> q of chain maps p -> mid -> q (g after f)."""
    out = {}
    degrees = sorted(set(f) | set(g))
    for i in degrees:
        fi = f.get(i) or RepMorphism.zero(p.term(i), mid.term(i))
        gi = g.get(i) or RepMorphism.zero(mid.term(i), q.term(i))
        out[i] = gi.compose(fi)
    return out


def is_null_homotopic(p: Complex, q: Complex,
                      chain_map: Dict[int, RepMorphism]) -> bool:
    """Whether a chain map p -> q is homotopic to zero."""
    degrees = sorted(set(p.support()) | set(q.support()) |
                     set(d + 1 for d in q.support()))
    h_spaces = {i: hom_basis(p.term(i), q.term(i - 1)) for i in degrees}
    hom_spaces = {i: hom_basis(p.term(i), q.term(i)) for i in degrees}
    var_off, total = {}, 0
    for i in degrees:
        var_off[i] = total
        total += len(hom_spaces[i])
    target = [0] * total
    for i, f in chain_map.items():
        if i not in var_off:
            if f is not None and not f.is_zero():
                return False
            continue
        for k, c in enumerate(coordinates_in_basis(f, hom_spaces[i])):
            target[var_off[i] + k] = c
    cols = []
    for i in degrees:
        for h in h_spaces[i]:
            vec = [0] * total
            dh = q.diff(i - 1).compose(h)
            if i in var_off:
                for k, c in enumerate(coordinates_in_basis(dh, hom_spaces[i])):
                    vec[var_off[i] + k] += c
            hd = h.compose(p.diff(i - 1))
            if i - 1 in var_off:
                for k, c in enumerate(coordinates_in_basis(hd, hom_spaces[i - 1])):
                    vec[var_off[i - 1] + k] += c
            cols.append(vec)
    from .linalg import solve
    mat = ExactMatrix(total, len(cols))
    for j, col in enumerate(cols):
        for i2, v in enumerate(col):
            mat.data[i2][j] = v
    return solve(mat, target) is not None


def identity_chain_map(p: Complex) -> Dict[int, RepMorphism]:
    return {i: RepMorphism.identity(p.term(i)) for i in p.support()}


def _solve_homotopy_inverse(p: Complex, q: Complex,
                            f: Dict[int, RepMorphism], bwd) -> Optional[Dict[int, RepMorphism]]:
    """g with g.f homotopic to id_p, as a combination of the given chain maps."""
    degrees = sorted(set(p.support()) | set(d + 1 for d in p.support()))
    end_spaces = {i: hom_basis(p.term(i), p.term(i)) for i in degrees}
    var_off, total = {}, 0
    for i in degrees:
        var_off[i] = total
        total += len(end_spaces[i])

    def flatten(cm: Dict[int, RepMorphism]) -> Optional[list]:
        vec = [0] * total
        for i, m in cm.items():
            if i not in var_off:
                if not m.is_zero():
                    return None
                continue
            for k, c in enumerate(coordinates_in_basis(m, end_spaces[i])):
                vec[var_off[i] + k] = c
        return vec

    cols = []
    for g in bwd:
        gf = compose_chain_maps(f, g, p, q, p)
        v = flatten(gf)
        if v is None:
            return None
        cols.append(v)
    n_g = len(cols)
    h_spaces = {i: hom_basis(p.term(i), p.term(i - 1)) for i in degrees}
    for i in degrees:
        for h in h_spaces[i]:
            vec = [0] * total
            dh = p.diff(i - 1).compose(h)
            if i in var_off:
                for k, c in enumerate(coordinates_in_basis(dh, end_spaces[i])):
                    vec[var_off[i] + k] += c
            hd = h.compose(p.diff(i - 1))
            if i - 1 in var_off:
                for k, c in enumerate(coordinates_in_basis(hd, end_spaces[i - 1])):
                    vec[var_off[i - 1] + k] += c
            cols.append(vec)
    target = flatten(identity_chain_map(p))
    from .linalg import solve
    mat = ExactMatrix(total, len(cols))
    for j, col in enumerate(cols):
        for i2, v in enumerate(col):
            mat.data[i2][j] = v
    sol = solve(mat, target)
    if sol is None:
        return None
    g = {}
    for j in range(n_g):
        c = sol[j]
        if not c:
            continue
        for i, m in bwd[j].items():
            g[i] = g.get(i, RepMorphism.zero(q.term(i), p.term(i))) + m.scale(c)
    return g


def homotopy_isomorphic(p: Complex, q: Complex, trials: int = 40,
                        seed: int = 2024) -> bool:
    """Mutually inverse-up-to-homotopy chain maps p <-> q, if any.

    Candidate forward maps are basis elements plus seeded random
    combinations; the backward map is solved for linearly.
    """
    import random as _random
    _, fwd = hom_homotopy(p, q, 0)
    _, bwd = hom_homotopy(q, p, 0)
    if not fwd or not bwd:
        return p.is_zero() and q.is_zero()
    idq = identity_chain_map(q)

    def try_f(f) -> bool:
        g = _solve_homotopy_inverse(p, q, f, bwd)
        if g is None:
            return False
        fg = compose_chain_maps(g, f, q, p, q)
        diff_q = {i: idq[i] - fg.get(i, RepMorphism.zero(q.term(i), q.term(i)))
                  for i in q.support()}
        return is_null_homotopic(q, q, diff_q)

    candidates = list(fwd)
    total = {}
    for comp in fwd:
        for i, m in comp.items():
            total[i] = total.get(i, RepMorphism.zero(p.term(i), q.term(i))) + m
    candidates.append(total)
    rng = _random.Random(seed)
    for _ in range(trials):
        f = {}
        for comp in fwd:
            c = rng.randint(-3, 3)
            for i, m in comp.items():
                f[i] = f.get(i, RepMorphism.zero(p.term(i), q.term(i))) + m.scale(c)
        candidates.append(f)
    for f in candidates:
        if try_f(f):
            return True
    return False


# ---------------------------------------------------------------------------
# replacements


def projective_replacement(c: Complex, cap: Optional[int] = None) -> Tuple[Complex, Dict[int, RepMorphism]]:
    """Quasi-isomorphic complex of projectives, built top-down by covers.

    Returns (P, chain map components).  Degreewise cohomology equality is
    verified, including that the induced maps are isomorphisms.
    """
    alg = c.algebra
    if c.is_zero():
        return Complex(alg, {}, {}, check=False), {}
    if cap is None:
        cap = default_dimension_cap(alg)
    top = max(c.support())
    bottom = min(c.support())
    terms: Dict[int, Representation] = {}
    sums: Dict[int, StdSum] = {}
    diffs: Dict[int, RepMorphism] = {}
    pmaps: Dict[int, RepMorphism] = {}

    psum, eps = projective_cover(c.term(top))
    terms[top], sums[top], pmaps[top] = psum.rep, psum, eps
    i = top - 1
    while i >= bottom - cap - 2:
        upper = terms.get(i + 1)
        if upper is None:
            upper = zero_rep(alg)
        d_up = diffs.get(i + 1)
        if d_up is None:
            d_up = RepMorphism.zero(upper, terms.get(i + 2, zero_rep(alg)))
        (z_rep, z_incl), _, _ = ker_coker_im(d_up)
        ci = c.term(i)
        total, incls, projs = direct_sum(alg, [ci, z_rep])
        # map (x, z) -> d_C(x) - p_{i+1}(z_incl(z))
        p_up = pmaps.get(i + 1)
        if p_up is None:
            p_up = RepMorphism.zero(upper, c.term(i + 1))
        f = c.diff(i).compose(projs[0]) - p_up.compose(z_incl).compose(projs[1])
        (w_rep, w_incl), _, _ = ker_coker_im(f)
        if w_rep.is_zero():
            if i <= bottom:
                break
            i -= 1          # a gap; lower degrees of c may still contribute
            continue
        psum, eps = projective_cover(w_rep)
        w_c = projs[0].compose(w_incl)
        w_z = projs[1].compose(w_incl)
        terms[i] = psum.rep
        sums[i] = psum
        pmaps[i] = w_c.compose(eps)
        diffs[i] = z_incl.compose(w_z).compose(eps)
        i -= 1
    else:
        raise DerivedError("projective replacement did not terminate; "
                           "is the global dimension finite?")
    out = Complex(alg, terms, diffs, sums, check=True)
    _verify_quasi_iso(out, c, pmaps)
    return out, pmaps


def _verify_quasi_iso(p: Complex, c: Complex, pmaps: Dict[int, RepMorphism]) -> None:
    degrees = sorted(set(p.support()) | set(c.support()))
    for i in degrees:
        hp, incl_p, proj_p = p.cohomology(i)
        hc, incl_c, proj_c = c.cohomology(i)
        if hp.dim_vector() != hc.dim_vector():
            raise DerivedError(f"cohomology mismatch at degree {i}: "
                               f"{hp.dim_vector()} vs {hc.dim_vector()}")
        if hp.is_zero():
            continue
        pm = pmaps.get(i)
        if pm is None:
            raise DerivedError(f"missing comparison map at degree {i}")
        induced = {}
        for v in p.algebra.vertices:
            # cycles of p -> cycles of c
            u = solve_matrix(incl_c.blocks[v], pm.blocks[v] * incl_p.blocks[v])
            if u is None:
                raise DerivedError("comparison map does not preserve cycles")
            sec = solve_matrix(proj_p.blocks[v],
                               ExactMatrix.identity(hp.dims[v]))
            induced[v] = proj_c.blocks[v] * u * sec
        if not all(is_invertible(m) for m in induced.values()):
            raise DerivedError(f"induced map on H^{i} is not invertible")


def injective_replacement(c: Complex, cap: Optional[int] = None) -> Complex:
    """Quasi-isomorphic complex of injectives via the opposite algebra."""
    dual = complex_dualize(c)
    rep, _ = projective_replacement(dual, cap)
    back = complex_dualize(rep)
    return Complex(c.algebra, back.terms, back.diffs, check=False)


# ---------------------------------------------------------------------------
# Serre functor


def nu_complex(p: Complex) -> Complex:
    """Termwise Nakayama functor of a complex of standard projective sums."""
    if p.is_zero():
        return p
    for i in p.support():
        if i not in p.sums or p.sums[i].kind != "proj":
            raise DerivedError("nu needs a complex of standard projective sums")
    terms, diffs, new_sums = {}, {}, {}
    images: Dict[int, StdSum] = {}
    for i in p.support():
        images[i] = StdSum(p.algebra, "inj", list(p.sums[i].summands))
        terms[i] = images[i].rep
        new_sums[i] = images[i]
    for i in p.support():
        if i + 1 in p.sums and i in p.diffs:
            nf, _, _ = nakayama_std(p.diffs[i], p.sums[i], p.sums[i + 1], "forward")
            diffs[i] = RepMorphism(images[i].rep, images[i + 1].rep,
                                   nf.blocks, check=False)
    return Complex(p.algebra, terms, diffs, new_sums, check=False)


def serre_shift(p: Complex, n: int, power: int = 1,
                cap: Optional[int] = None) -> Complex:
    """Iterated n-shifted Serre functor on a perfect complex.

    One forward application is nu termwise, shift by -n, then projective
    replacement; negative powers run the inverse recipe through injective
    replacements.
    """
    out = p
    if power >= 0:
        for _ in range(power):
            out = _perfectify(out, cap)
            nu = nu_complex(out)
            shifted = nu.shift(-n)
            out, _ = projective_replacement(shifted, cap)
        return _perfectify(out, cap)
    for _ in range(-power):
        inj = injective_replacement(out, cap)
        dual = complex_dualize(inj)
        dual_perfect, _ = projective_replacement(dual, cap)
        nu_dual = nu_complex(dual_perfect)
        undual = complex_dualize(nu_dual)
        out, _ = projective_replacement(undual.shift(n), cap)
    return out


def _perfectify(c: Complex, cap: Optional[int]) -> Complex:
    if all(i in c.sums and c.sums[i].kind == "proj" for i in c.support()):
        return c
    rep, _ = projective_replacement(c, cap)
    return rep


# ---------------------------------------------------------------------------
# shifted module objects and closures


@dataclass
class ShiftedModuleObject:
    """Direct sum of shifted stalk modules, canonically ordered."""

    components: List[Tuple[Representation, int]] = field(default_factory=list)

    def normalized(self) -> "ShiftedModuleObject":
        comps = [(r, k) for r, k in self.components if not r.is_zero()]
        comps.sort(key=lambda rk: (rk[1], rk[0].dim_vector()))
        return ShiftedModuleObject(comps)

    def shifts(self) -> List[int]:
        return sorted({k for _, k in self.components})

    def is_zero(self) -> bool:
        return not self.components

    def fingerprint(self) -> tuple:
        return tuple((k, r.dim_vector()) for r, k in self.normalized().components)

    def to_complex(self, algebra: BoundQuiverAlgebra) -> Complex:
        """Direct sum of stalks as an honest complex (no differentials)."""
        by_degree: Dict[int, List[Representation]] = {}
        for r, k in self.components:
            by_degree.setdefault(-k, []).append(r)
        terms = {}
        for deg, reps in by_degree.items():
            total, _, _ = direct_sum(algebra, reps)
            terms[deg] = total
        return Complex(algebra, terms, {}, check=False)


def _check_split_positions(positions: List[int], n: int, what: str) -> None:
    """Cohomology in one position is a stalk; two positions split exactly
    when they are the ends of a length-n gap; anything else is out of scope."""
    if len(positions) <= 1:
        return
    if sorted(positions) == [0, n]:
        return
    raise SplitHypothesisViolated(
        f"{what} has cohomology at relative positions {sorted(positions)}; "
        f"only a single stalk or the pair [0, {n}] splits")


def _serre_components_forward(x: Representation, n: int,
                              cap: Optional[int] = None):
    """Split components of the n-shifted Serre image of a stalk module.

    Returns {relative shift: module}: the translate part lands at 0, the
    Nakayama part at -n.  Cohomology spread that cannot split raises."""
    if x.is_zero():
        return {}
    res = proj_resolution_complex(x, cap)
    nu = nu_complex(res)
    found = {}
    for j in range(0, len(nu.support()) + n + 1):
        h = nu.cohomology_module(-j)
        if not h.is_zero():
            found[j] = h
    _check_split_positions(list(found), n, "Serre image")
    return {j - n: h for j, h in found.items()}


def _serre_components_inverse(x: Representation, n: int,
                              cap: Optional[int] = None):
    """Dual of the forward splitting: translate at 0, co-Nakayama at +n."""
    if x.is_zero():
        return {}
    xd = dualize(x)
    res = proj_resolution_complex(xd, cap)
    nu = nu_complex(res)
    found = {}
    for j in range(0, len(nu.support()) + n + 1):
        h = nu.cohomology_module(-j)
        if not h.is_zero():
            found[j] = h
    _check_split_positions(list(found), n, "inverse Serre image")
    return {n - j: dualize(h) for j, h in found.items()}


@dataclass
class _DMor:
    """Opaque morphism of the derived endomorphism oracle: a chain map."""

    src: int
    tgt: int
    comps: Dict[int, RepMorphism]


def split_complex_to_stalks(c: Complex, n: int) -> List[Tuple[Representation, int]]:
    """Split a complex into shifted stalk modules when the gaps allow it.

    Consecutive nonzero cohomology positions must be at least n apart (or
    there is a single position); otherwise the object is out of scope."""
    if c.is_zero():
        return []
    lo = min(c.support())
    hi = max(c.support())
    found = []
    for i in range(lo, hi + 1):
        h = c.cohomology_module(i)
        if not h.is_zero():
            found.append((i, h))
    positions = [i for i, _ in found]
    for a, b in zip(positions, positions[1:]):
        if b - a < n:
            raise SplitHypothesisViolated(
                f"start object has cohomology at degrees {positions}; "
                f"consecutive gaps must be >= {n} to split")
    return [(h, -i) for i, h in found]


def derived_endo_presentation(alg: BoundQuiverAlgebra,
                              components: List[Tuple[Representation, int]],
                              length_cap: int = 128):
    """Quiver presentation of the endomorphism algebra of a split object in
    the bounded homotopy category, reconstructed through chain maps modulo
    homotopy.  Returns (presentation, unique components)."""
    from .catpres import CategoryOracle, extract_presentation
    uniq: List[Tuple[Representation, int]] = []
    for x, k in components:
        if x.is_zero():
            continue
        for piece, _, _ in decompose_flat(x):
            if not any(k == k0 and indec_isomorphic(x0, piece) is not None
                       for x0, k0 in uniq):
                uniq.append((piece, k))
    if not uniq:
        raise DerivedError("empty start object")
    complexes = [projective_replacement(stalk_complex(x, -k))[0]
                 for x, k in uniq]
    data = {}
    for i in range(len(uniq)):
        for j in range(len(uniq)):
            data[(i, j)] = HomotopyHomData(complexes[i], complexes[j])

    def compose(f: _DMor, g: _DMor) -> _DMor:
        if g.tgt != f.src:
            raise DerivedError("composition mismatch in derived oracle")
        comps = compose_chain_maps(g.comps, f.comps, complexes[g.src],
                                   complexes[g.tgt], complexes[f.tgt])
        return _DMor(g.src, f.tgt, comps)

    def add(f: _DMor, g: _DMor) -> _DMor:
        comps = dict(f.comps)
        for i, m in g.comps.items():
            comps[i] = comps.get(i, RepMorphism.zero(
                complexes[f.src].term(i), complexes[f.tgt].term(i))) + m
        return _DMor(f.src, f.tgt, comps)

    oracle = CategoryOracle(
        size=len(uniq),
        hom=lambda i, j: [_DMor(i, j, comps) for comps in data[(i, j)].basis],
        compose=compose,
        add=add,
        scale=lambda f, c: _DMor(f.src, f.tgt,
                                 {i: m.scale(c) for i, m in f.comps.items()}),
        flatten=lambda i, j, f: data[(i, j)].coords_mod_homotopy(f.comps),
        identity=lambda i: _DMor(i, i, identity_chain_map(complexes[i])),
    )
    pres, _ = extract_presentation(oracle, length_cap)
    return pres, uniq


def u_closure(alg: BoundQuiverAlgebra, n: int,
              window: Tuple[int, int] = (-2, 2),
              start=None, cap: Optional[int] = None,
              check_start_endo: bool = True) -> List[Tuple[int, ShiftedModuleObject]]:
    """Objects of the Serre-shift closure, one per power in the window.

    The start object defaults to the regular module at shift 0; a perfect
    complex start (e.g. a tilting complex) is split into shifted stalks and
    its endomorphism algebra is reconstructed through homotopy Hom spaces
    to check gl.dim <= n.  Requires a translation-finite algebra; every
    application is split into shifted stalks with the grid hypothesis
    checked.
    """
    lo, hi = window
    if lo > hi:
        raise DerivedError("empty window")
    gl = global_dimension(alg)
    if gl is None or gl > n:
        raise NotTauFinite(f"global dimension exceeds {n}")
    try:
        tau_closure(alg, n)
    except LayerCapExceeded as exc:
        raise NotTauFinite(str(exc))

    if start is None:
        start = ShiftedModuleObject(
            [(projective(alg, v), 0) for v in alg.vertices])
    elif isinstance(start, Complex):
        comps = split_complex_to_stalks(start, n)
        if check_start_endo:
            pres, _ = derived_endo_presentation(alg, comps)
            from .algebras import build_algebra
            endo_gl = global_dimension(build_algebra(pres, 128))
            if endo_gl is None or endo_gl > n:
                raise NotTauFinite(
                    f"endomorphism algebra of the start object has global "
                    f"dimension {endo_gl}, need <= {n}")
        start = ShiftedModuleObject(comps)
    start = start.normalized()

    def dedup(comps: List[Tuple[Representation, int]]):
        out: List[Tuple[Representation, int]] = []
        for r, k in comps:
            if not any(k == k0 and indec_isomorphic(r0, r) is not None
                       for r0, k0 in out):
                out.append((r, k))
        return out

    def split_indecs(obj: ShiftedModuleObject) -> ShiftedModuleObject:
        comps = []
        for r, k in obj.components:
            for piece, _, _ in decompose_flat(r):
                comps.append((piece, k))
        return ShiftedModuleObject(dedup(comps)).normalized()

    def step(obj: ShiftedModuleObject, direction: int) -> ShiftedModuleObject:
        comps: List[Tuple[Representation, int]] = []
        for r, k in obj.components:
            parts = (_serre_components_forward(r, n, cap) if direction > 0
                     else _serre_components_inverse(r, n, cap))
            for rel_shift, h in parts.items():
                comps.append((h, k + rel_shift))
        return split_indecs(ShiftedModuleObject(comps))

    objects: Dict[int, ShiftedModuleObject] = {0: split_indecs(start)}
    current = objects[0]
    for ell in range(1, hi + 1):
        current = step(current, +1)
        objects[ell] = current
    current = objects[0]
    for ell in range(-1, lo - 1, -1):
        current = step(current, -1)
        objects[ell] = current
    return [(ell, objects[ell]) for ell in range(lo, hi + 1)]


def verify_ct_window(objects: Sequence[ShiftedModuleObject], n: int,
                     window: Tuple[int, int]):
    """Hom(U, V[i]) = 0 for 0 < i < n among the window objects.

    Each Hom between shifted stalks is an exact Ext computation, so the only
    boundary effect is that objects beyond the window are not represented;
    they are flagged, not failed.  The vanishing condition is symmetric over
    the pair list, so the dual condition is covered by the same sweep.
    Returns (verdict, violations, table info).
    """
    from .homology import min_resolution
    raw: List[Tuple[Representation, int]] = []
    for obj in objects:
        raw.extend(obj.normalized().components)
    comps: List[Tuple[Representation, int]] = []
    for x, k in raw:
        if not any(k == k0 and x.dim_vector() == x0.dim_vector()
                   and indec_isomorphic(x0, x) is not None
                   for x0, k0 in comps):
            comps.append((x, k))
    violations = []
    pair_count = 0
    if n > 1 and comps:
        max_deg = max(l + (n - 1) - k for _, k in comps for _, l in comps)
        chains = [min_resolution(x, "projective", max(max_deg + 1, 1))
                  for x, _ in comps]
        for a, (x, k) in enumerate(comps):
            for b, (y, l) in enumerate(comps):
                for i in range(1, n):
                    deg = l + i - k
                    if deg < 0:
                        continue
                    d = ext_dims(x, y, deg, chain=chains[a])[deg]
                    pair_count += 1
                    if d:
                        violations.append({
                            "from": x.dim_vector(), "from_shift": k,
                            "to": y.dim_vector(), "to_shift": l,
                            "shift": i, "dim": int(d)})
    notes = [f"window powers {window[0]}..{window[1]}: objects outside the "
             "window are not checked"]
    return (not violations), violations, {"pairs": pair_count,
                                          "components": len(comps),
                                          "notes": notes}
