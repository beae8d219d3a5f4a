"""Presentation extraction for an abstract finite additive category.

Given objects with Hom bases, composition, and an injective linearization,
this picks arrows spanning the categorical radical modulo its square and
extracts relation generators as the kernel of the path-category evaluation,
the same degreewise scheme used for module-category closures.  It drives
the endomorphism-algebra reconstruction of derived start objects, where
morphisms are chain maps taken up to homotopy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .algebras import build_algebra
from .linalg import ExactMatrix, ONE, ZERO, kernel_basis, rank, solve
from .quivers import Path, Presentation, Quiver, Relation


@dataclass
class CategoryOracle:
    """Finite additive category interface.

    ``flatten(i, j, f)`` must be linear and injective on Hom(i, j); all
    returned vectors for a fixed (i, j) must have equal length.
    """

    size: int
    hom: Callable[[int, int], list]
    compose: Callable[[object, object], object]           # f after g
    add: Callable[[object, object], object]
    scale: Callable[[object, Fraction], object]
    flatten: Callable[[int, int, object], List[Fraction]]
    identity: Callable[[int], object]


def _coords(oracle: CategoryOracle, i: int, j: int, basis: list, f) -> List[Fraction]:
    vec = oracle.flatten(i, j, f)
    mat = ExactMatrix(len(vec), len(basis))
    for col, b in enumerate(basis):
        for row, val in enumerate(oracle.flatten(i, j, b)):
            mat.data[row][col] = val
    sol = solve(mat, vec)
    if sol is None:
        raise ValueError("morphism outside the span of the Hom basis")
    return sol


def _radical_of_endo(oracle: CategoryOracle, i: int, basis: list) -> list:
    """Trace-form radical of End(i), as combinations of the basis."""
    k = len(basis)
    table = [[_coords(oracle, i, i, basis, oracle.compose(basis[a], basis[b]))
              for b in range(k)] for a in range(k)]
    lm = []
    for a in range(k):
        m = ExactMatrix(k, k)
        for b in range(k):
            for r in range(k):
                m.data[r][b] = table[a][b][r]
        lm.append(m)
    gram = ExactMatrix(k, k)
    for a in range(k):
        for b in range(k):
            prod = lm[a] * lm[b]
            gram.data[a][b] = sum(prod.data[t][t] for t in range(k))
    rad = kernel_basis(gram)
    out = []
    for c in range(rad.cols):
        f = None
        for r in range(k):
            v = rad.data[r][c]
            if v:
                term = oracle.scale(basis[r], v)
                f = term if f is None else oracle.add(f, term)
        if f is not None:
            out.append(f)
    return out


def extract_presentation(oracle: CategoryOracle, length_cap: int = 128,
                         names: Optional[List[str]] = None):
    """(Presentation, arrow morphisms): quiver on the objects with arrows a
    basis of rad/rad^2 and relations generating the evaluation kernel."""
    m = oracle.size
    if names is None:
        names = [f"m{i}" for i in range(m)]
    homs = {(i, j): oracle.hom(i, j) for i in range(m) for j in range(m)}
    rad: Dict[tuple, list] = {}
    for i in range(m):
        for j in range(m):
            if i != j:
                rad[(i, j)] = homs[(i, j)]
            else:
                rad[(i, j)] = (_radical_of_endo(oracle, i, homs[(i, i)])
                               if len(homs[(i, i)]) > 1 else [])

    def flat_matrix(rows):
        mm = ExactMatrix(len(rows), len(rows[0]) if rows else 0)
        mm.data = [list(r) for r in rows]
        return mm

    arrows = []
    arrow_morphisms = {}
    for i in range(m):
        for j in range(m):
            jij = rad[(i, j)]
            if not jij:
                continue
            sq_rows = []
            for k in range(m):
                for f in rad[(i, k)]:
                    for g in rad[(k, j)]:
                        sq_rows.append(oracle.flatten(i, j, oracle.compose(g, f)))
            chosen = list(sq_rows)
            current = rank(flat_matrix(chosen)) if chosen else 0
            count = 0
            for f in jij:
                cand = chosen + [oracle.flatten(i, j, f)]
                r = rank(flat_matrix(cand))
                if r > current:
                    name = f"a{i}_{j}_{count}"
                    arrows.append((name, names[i], names[j]))
                    arrow_morphisms[name] = f
                    chosen, current = cand, r
                    count += 1

    quiver = Quiver(names, arrows)
    index_of = {nm: i for i, nm in enumerate(names)}
    eval_cache: Dict[Path, object] = {}

    def evaluate(p: Path):
        hit = eval_cache.get(p)
        if hit is not None:
            return hit
        if len(p) == 0:
            out = oracle.identity(index_of[p.source])
        else:
            prefix = Path(p.source, p.arrows[:-1],
                          quiver.arrow_by_name[p.arrows[-1]].source)
            out = oracle.compose(arrow_morphisms[p.arrows[-1]], evaluate(prefix))
        eval_cache[p] = out
        return out

    relations: List[Relation] = []
    cap = 2
    for _ in range(64 + length_cap):
        alg = build_algebra(Presentation(quiver, relations), cap,
                            truncate_at_cap=True)
        new_rels = []
        for s in names:
            for t in names:
                paths = alg.paths_between(s, t)
                if not paths or (len(paths) == 1 and len(paths[0]) == 0):
                    continue
                si, ti = index_of[s], index_of[t]
                kept, kept_flat, current = [], [], 0
                for p in paths:
                    v = oracle.flatten(si, ti, evaluate(p))
                    mm = flat_matrix(kept_flat + [v])
                    r = rank(mm)
                    if r > current:
                        kept.append(p)
                        kept_flat.append(v)
                        current = r
                    else:
                        dep = _dependency_coords(kept_flat, v)
                        terms = [(ONE, p)]
                        for c, kp in zip(dep, kept):
                            if c:
                                terms.append((-c, kp))
                        rel = Relation(terms)
                        if rel.min_length() < 2:
                            raise ValueError("dependency among short paths; "
                                             "arrow choices inconsistent")
                        new_rels.append(rel)
        if new_rels:
            relations.extend(new_rels)
            continue
        if alg.truncated:
            if cap >= length_cap:
                raise ValueError("presentation extraction exceeded length cap")
            cap += 1
            continue
        for i in range(m):
            for j in range(m):
                if alg.hom_dim(names[i], names[j]) != len(homs[(i, j)]):
                    raise ValueError(
                        "arrow choices do not present the category: "
                        f"Hom({names[i]},{names[j]}) should have dimension "
                        f"{len(homs[(i, j)])}")
        return Presentation(quiver, relations), arrow_morphisms
    raise ValueError("presentation extraction failed to stabilize")


def _dependency_coords(rows: List[List[Fraction]], v: List[Fraction]):
    mm = ExactMatrix(len(v), len(rows))
    for j, row in enumerate(rows):
        for i, val in enumerate(row):
            mm.data[i][j] = val
    sol = solve(mm, v)
    if sol is None:
        raise ValueError("dependency extraction failed")
    return sol
