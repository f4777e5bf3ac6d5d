"""SVG, PNG and DOT output."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .geometry import LineSegment, PolygonModel, SegmentClass, TranslationQuiverGraph  # noqa: E402

# fixed ids and no timestamp so repeated runs write identical files
plt.rcParams["svg.hashsalt"] = "peakspr"
plt.rcParams["svg.fonttype"] = "none"

STYLE = {
    "sp": dict(color="tab:blue", lw=1.6, ls="-"),
    "frozen": dict(color="tab:red", lw=1.0, ls="--"),
    "other": dict(color="0.75", lw=0.6, ls=":"),
}


def _save(fig, path: str | Path) -> None:
    path = Path(path)
    meta = {"Date": None} if path.suffix.lower() == ".svg" else None
    fig.savefig(path, metadata=meta)
    plt.close(fig)


def segment_kind(c: SegmentClass) -> str:
    if c.sp:
        return "sp"
    if c.frozen_by:
        return "frozen"
    return "other"


def polygon_figure(p: PolygonModel, classes: dict[LineSegment, SegmentClass], path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 5))
    for kind in ("other", "frozen", "sp"):
        for g, c in sorted(classes.items()):
            if segment_kind(c) != kind:
                continue
            (x0, y0), (x1, y1) = p.coords[g.i], p.coords[g.j]
            ax.plot([float(x0), float(x1)], [float(y0), float(y1)], **STYLE[kind])
    ring = list(p.boundary) + [p.boundary[0]]
    ax.plot([float(p.coords[v][0]) for v in ring], [float(p.coords[v][1]) for v in ring], color="k", lw=1.2)
    for v in p.boundary:
        x, y = p.coords[v]
        ax.plot(float(x), float(y), "ko", ms=3)
        dy = 6 if y > 0 else -12 if y < 0 else -12
        ax.annotate(str(v), (float(x), float(y)), textcoords="offset points", xytext=(0, dy), ha="center", fontsize=9)
    ax.axhline(0, color="0.85", lw=0.5, zorder=0)
    ax.set_aspect("auto")
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(f"P(Q) for {p.quiver.word or 'a single vertex'}", fontsize=10)
    for kind, label in (("sp", "sp-segment"), ("frozen", "frozen"), ("other", "other")):
        ax.plot([], [], label=label, **STYLE[kind])
    ax.legend(loc="upper right", fontsize=8, frameon=False)
    fig.tight_layout()
    _save(fig, path)


def margin_figure(labels: Sequence[str], margins: Sequence[Sequence[float]], title: str, path: str | Path) -> None:
    """One column per object; dots are subobject margins, which must sit below zero."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.35 * len(labels) + 1.5), 3.6))
    for k, vals in enumerate(margins):
        xs = [k] * len(vals)
        colors = ["tab:blue" if v < 0 else "tab:red" for v in vals]
        ax.scatter(xs, vals, s=14, c=colors, zorder=3)
    ax.axhline(0, color="k", lw=0.8)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=70, fontsize=7)
    ax.set_ylabel("subobject margin")
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    _save(fig, path)


def _dot_id(g: LineSegment) -> str:
    return f"g{g.i}_{g.j}"


def to_dot(graph: TranslationQuiverGraph, name: str = "AR") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=plaintext];"]
    for g in sorted(graph.nodes):
        lines.append(f'  {_dot_id(g)} [label="{g}"];')
    for a, b in sorted(graph.arrows):
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    for a, b in sorted(graph.translation.items()):
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
