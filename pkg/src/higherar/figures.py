"""Matplotlib rendering of translation quivers and closure reports.

Layout is deterministic: longest-path layering on the acyclic part, vertices
within a layer ordered lexicographically.  Figures are written through the
Agg backend with stripped metadata so repeated runs are byte-identical.
"""

from __future__ import annotations

from typing import Dict, List, Sequence

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .quivers import Presentation

_SAVE_KW = {"dpi": 120, "metadata": {"Software": None, "Date": None}}


def _layered_positions(p: Presentation) -> Dict[str, tuple]:
    q = p.quiver
    succ = {v: [] for v in q.vertices}
    indeg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        succ[a.source].append(a.target)
        indeg[a.target] += 1
    level = {v: 0 for v in q.vertices}
    order = [v for v in sorted(q.vertices) if indeg[v] == 0]
    pending = dict(indeg)
    queue = list(order)
    seen = set(queue)
    while queue:
        v = queue.pop(0)
        for w in sorted(succ[v]):
            level[w] = max(level[w], level[v] + 1)
            pending[w] -= 1
            if pending[w] == 0 and w not in seen:
                seen.add(w)
                queue.append(w)
    # vertices on cycles keep level 0; fine for display purposes
    by_level: Dict[int, List[str]] = {}
    for v in sorted(q.vertices):
        by_level.setdefault(level[v], []).append(v)
    pos = {}
    for lv in sorted(by_level):
        column = by_level[lv]
        for i, v in enumerate(column):
            pos[v] = (float(lv), -float(i) + (len(column) - 1) / 2.0)
    return pos


def draw_presentation(p: Presentation, path: str, title: str = "") -> None:
    """Render the quiver with solid arrows and dashed translation edges."""
    pos = _layered_positions(p)
    fig, ax = plt.subplots(figsize=(max(4, 1.3 * (1 + max((x for x, _ in pos.values()), default=1))),
                                    max(3, 0.9 * (1 + len(pos) ** 0.5 * 2))))
    for a in sorted(p.quiver.arrows, key=lambda a: a.name):
        x0, y0 = pos[a.source]
        x1, y1 = pos[a.target]
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="-|>", color="black",
                                    shrinkA=10, shrinkB=10, lw=0.9))
    if p.translation is not None:
        for x in sorted(p.translation.tau):
            y = p.translation.tau[x]
            x0, y0 = pos[x]
            x1, y1 = pos[y]
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                        arrowprops=dict(arrowstyle="-|>", color="gray",
                                        linestyle="dashed", shrinkA=10,
                                        shrinkB=10, lw=0.8))
    for v, (x, y) in pos.items():
        ax.text(x, y, v, ha="center", va="center", fontsize=7,
                bbox=dict(boxstyle="round,pad=0.18", fc="white", ec="black", lw=0.6))
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight", **_SAVE_KW)
    plt.close(fig)


def draw_layer_profile(layer_sizes: Sequence[int], path: str,
                       title: str = "") -> None:
    """Bar chart of closure layer sizes."""
    fig, ax = plt.subplots(figsize=(4, 3))
    xs = list(range(len(layer_sizes)))
    ax.bar(xs, list(layer_sizes), color="#444444")
    ax.set_xlabel("translate iteration")
    ax.set_ylabel("indecomposables")
    ax.set_xticks(xs)
    for x, h in zip(xs, layer_sizes):
        ax.text(x, h, str(h), ha="center", va="bottom", fontsize=8)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def draw_criteria_table(rows: Sequence[tuple], path: str,
                        title: str = "acceptance criteria") -> None:
    """One bar per criterion, green pass / red fail."""
    fig, ax = plt.subplots(figsize=(6, 0.45 * max(4, len(rows)) + 1))
    labels = [r[0] for r in rows]
    values = [1 for _ in rows]
    colors = ["#2e7d32" if r[1] else "#c62828" for r in rows]
    ax.barh(range(len(rows)), values, color=colors)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.set_xticks([])
    ax.invert_yaxis()
    for i, r in enumerate(rows):
        ax.text(0.5, i, "pass" if r[1] else "FAIL", ha="center", va="center",
                color="white", fontsize=8)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
