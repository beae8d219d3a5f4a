"""JSON schemas and DOT export.

Rationals serialize as "p/q" or "p" strings.  Path arrays list arrows in
traversal order (first-traversed first); the right-to-left composition
convention sometimes used for displaying morphism products is only a display
convention.  All emitters are byte-deterministic: keys sorted, vertices
ordered lexicographically in DOT.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebras import BoundQuiverAlgebra, build_algebra
from .linalg import ExactMatrix
from .quivers import Path, Presentation, Quiver, Relation, WeakTranslationQuiver
from .reps import Representation


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def presentation_to_dict(p: Presentation) -> dict:
    q = p.quiver
    out = {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target}
                   for a in q.arrows],
        "relations": [
            {"terms": [{"coef": rational_to_str(c), "path": list(path.arrows),
                        "from": path.source, "to": path.target}
                       for c, path in r.terms]}
            for r in p.relations
        ],
    }
    if p.translation is not None:
        out["tau"] = dict(p.translation.tau)
    return out


def presentation_from_dict(d: dict) -> Presentation:
    q = Quiver(d["vertices"],
               [(a["name"], a["from"], a["to"]) for a in d.get("arrows", [])])
    rels = []
    for r in d.get("relations", []):
        terms = []
        for t in r["terms"]:
            arrows = [str(x) for x in t["path"]]
            if arrows:
                src = q.arrow_by_name[arrows[0]].source
                tgt = q.arrow_by_name[arrows[-1]].target
            else:
                src = str(t["from"])
                tgt = str(t["to"])
            terms.append((rational_from_str(t["coef"]), Path(src, tuple(arrows), tgt)))
        rels.append(Relation(terms))
    if "tau" in d:
        return Presentation(WeakTranslationQuiver(q, d["tau"]), rels)
    return Presentation(q, rels)


def algebra_to_dict(a: BoundQuiverAlgebra) -> dict:
    out = presentation_to_dict(a.presentation)
    out["length_cap"] = a.length_cap
    return out


def algebra_from_dict(d: dict, default_cap: int = 64) -> BoundQuiverAlgebra:
    pres = presentation_from_dict(d)
    return build_algebra(pres, int(d.get("length_cap", default_cap)))


def module_to_dict(x: Representation) -> dict:
    return {
        "dims": {v: x.dims[v] for v in x.algebra.vertices if x.dims[v]},
        "maps": {
            a.name: [[rational_to_str(c) for c in row] for row in x.mats[a.name].data]
            for a in x.algebra.quiver.arrows
            if not x.mats[a.name].is_zero()
        },
    }


def module_from_dict(algebra: BoundQuiverAlgebra, d: dict) -> Representation:
    dims = {str(v): int(k) for v, k in d.get("dims", {}).items()}
    mats = {}
    for name, rows in d.get("maps", {}).items():
        arrow = algebra.quiver.arrow_by_name[str(name)]
        m = ExactMatrix(dims.get(arrow.target, 0), dims.get(arrow.source, 0),
                        [[rational_from_str(c) for c in row] for row in rows])
        mats[str(name)] = m
    return Representation(algebra, dims, mats)


def to_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_json(obj))


def decomposition_report(x: Representation, ell=None) -> dict:
    """Summand fingerprints of a module: dimension vector, top, socle, and
    translate depth when known."""
    from .reps import decompose, top_rad_soc
    summands = []
    for rep, mult, _ in decompose(x):
        (top, _), _, (soc, _) = top_rad_soc(rep)
        entry = {
            "dims": list(rep.dim_vector()),
            "top": list(top.dim_vector()),
            "socle": list(soc.dim_vector()),
            "multiplicity": mult,
        }
        if ell is not None:
            entry["ell"] = ell(rep)
        summands.append(entry)
    summands.sort(key=lambda e: (e["dims"], e["top"], e["socle"]))
    return {"total_dims": list(x.dim_vector()), "summands": summands}


def _dot_quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def presentation_to_dot(p: Presentation, name: str = "quiver") -> str:
    """DOT text: solid edges for arrows, dashed for the translation."""
    q = p.quiver
    lines = [f"digraph {_dot_quote(name)} {{"]
    for v in sorted(q.vertices):
        lines.append(f"  {_dot_quote(v)};")
    arrows = sorted(q.arrows, key=lambda a: (a.source, a.target, a.name))
    for a in arrows:
        lines.append(f"  {_dot_quote(a.source)} -> {_dot_quote(a.target)} "
                     f"[label={_dot_quote(a.name)}];")
    if p.translation is not None:
        for x in sorted(p.translation.tau):
            y = p.translation.tau[x]
            lines.append(f"  {_dot_quote(x)} -> {_dot_quote(y)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
