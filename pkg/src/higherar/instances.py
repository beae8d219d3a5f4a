"""Built-in worked instances: golden Auslander algebras and Dynkin quivers.

The two six-vertex Auslander algebras below are presented by their
translation quivers with mesh relations; the vertex numbering matches the
shipped golden JSON files, and the expected translate layers are frozen in
the acceptance suite against exactly this numbering.
"""

from __future__ import annotations

from typing import List, Optional

from .algebras import BoundQuiverAlgebra, build_algebra
from .linalg import ONE
from .quivers import Path, Presentation, Quiver, Relation, WeakTranslationQuiver


def _rel(q: Quiver, plus: List[str], minus: Optional[List[str]] = None) -> Relation:
    def mk(arrs: List[str]) -> Path:
        src = q.arrow_by_name[arrs[0]].source
        tgt = q.arrow_by_name[arrs[-1]].target
        return Path(src, tuple(arrs), tgt)

    terms = [(ONE, mk(plus))]
    if minus:
        terms.append((-ONE, mk(minus)))
    return Relation(terms)


def auslander_a3_linear_presentation() -> Presentation:
    """Auslander algebra of the linear A3 path algebra, mesh-presented.

    Vertices 1..6; dotted translation pairs 5->2, 6->4, 4->1 give one full
    mesh and two half-square zero relations.
    """
    q = Quiver(
        ["1", "2", "3", "4", "5", "6"],
        [("a12", "1", "2"), ("a23", "2", "3"), ("a24", "2", "4"),
         ("a35", "3", "5"), ("a45", "4", "5"), ("a56", "5", "6")])
    rels = [
        _rel(q, ["a23", "a35"], ["a24", "a45"]),
        _rel(q, ["a45", "a56"]),
        _rel(q, ["a12", "a24"]),
    ]
    tau = {"5": "2", "6": "4", "4": "1"}
    return Presentation(WeakTranslationQuiver(q, tau), rels)


def auslander_a3_alternating_presentation() -> Presentation:
    """Auslander algebra of an alternating-orientation A3, mesh-presented.

    Vertices 1..6; translation pairs 5->2, 6->3, 4->1.
    """
    q = Quiver(
        ["1", "2", "3", "4", "5", "6"],
        [("a13", "1", "3"), ("a23", "2", "3"), ("a34", "3", "4"),
         ("a35", "3", "5"), ("a46", "4", "6"), ("a56", "5", "6")])
    rels = [
        _rel(q, ["a23", "a35"]),
        _rel(q, ["a34", "a46"], ["a35", "a56"]),
        _rel(q, ["a13", "a34"]),
    ]
    tau = {"5": "2", "6": "3", "4": "1"}
    return Presentation(WeakTranslationQuiver(q, tau), rels)


def auslander_a3_linear() -> BoundQuiverAlgebra:
    return build_algebra(auslander_a3_linear_presentation())


def auslander_a3_alternating() -> BoundQuiverAlgebra:
    return build_algebra(auslander_a3_alternating_presentation())


def linear_a_presentation(m: int) -> Presentation:
    vertices = [str(i) for i in range(1, m + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, m)]
    return Presentation(Quiver(vertices, arrows), [])


def a3_alternating_quiver() -> Quiver:
    """A3 with a sink in the middle: 1 -> 2 <- 3."""
    return Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "3", "2")])


def d4_subspace_presentation() -> Presentation:
    q = Quiver(["1", "2", "3", "4"],
               [("a", "2", "1"), ("b", "3", "1"), ("c", "4", "1")])
    return Presentation(q, [])


# frozen display data for the two golden algebras: supports of the injective
# layer and of the successive translate layers, in the shipped numbering
GOLDEN_LINEAR_LAYER_SUPPORTS = [
    [("1",), ("1", "2"), ("1", "2", "3"), ("2", "3", "4", "5"), ("2", "4"),
     ("3", "5", "6")],
    [("4",), ("4", "5"), ("5", "6")],
    [("6",)],
]

GOLDEN_ALTERNATING_LAYER_SUPPORTS = [
    [("1",), ("1", "2", "3"), ("1", "3", "5"), ("2",), ("2", "3", "4"),
     ("3", "4", "5", "6")],
    [("4",), ("4", "5", "6"), ("5",)],
]

# the six summands generating the non-projective tilting part of the
# alternating instance
GOLDEN_ALTERNATING_TILTING_SUPPORTS = [
    ("1", "3", "5"), ("2", "3", "4"), ("3", "4", "5", "6"),
    ("4",), ("4", "5", "6"), ("5",),
]
