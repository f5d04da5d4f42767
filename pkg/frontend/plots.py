# plots.py
import logging
import os
from typing import List, Optional, Sequence, Tuple

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

plt.rcParams["svg.fonttype"] = "none"

from newton.mep import MonotoneEdgePath
from newton.polyhedron import NewtonPolyhedron, newton_distance_exponent

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

# 图例只用 ASCII，默认字体没有中文字形
LEGEND_LABELS = {
    "boundary": "NP boundary",
    "diagonal": "diagonal",
    "path": "monotone edge path",
}


def lower_boundary(generators: Sequence[Sequence]) -> List[Point]:
    """二维牛顿多边形的紧边界顶点（x 递增、y 递减）"""
    pts = sorted({(float(g[0]), float(g[1])) for g in generators})
    hull: List[Point] = []
    for p in pts:
        if hull and p[1] >= hull[-1][1]:
            continue
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) > 0:
                break
            hull.pop()
        hull.append(p)
    return hull


def _draw(ax, projected: NewtonPolyhedron, title: str, path: Optional[List[Point]] = None):
    boundary = lower_boundary(projected.generators)
    xs = [p[0] for p in boundary]
    ys = [p[1] for p in boundary]
    top = max(max(xs), max(ys)) + 2
    # 竖直与水平的无界边
    ax.plot([xs[0]] + xs + [top], [top] + ys + [ys[-1]], "b-", label=LEGEND_LABELS["boundary"])
    ax.plot(xs, ys, "bo")
    ax.plot([0, top], [0, top], "k--", linewidth=0.8, label=LEGEND_LABELS["diagonal"])
    d0, _ = newton_distance_exponent(projected)
    ax.plot([float(d0)], [float(d0)], "rs", label=f"d = {d0}")
    if path:
        ax.plot([p[0] for p in path], [p[1] for p in path], "g-.", label=LEGEND_LABELS["path"])
    ax.set_xlim(0, top)
    ax.set_ylim(0, top)
    ax.set_aspect("equal")
    ax.set_title(title)
    ax.legend(fontsize="small")


def plot_projections(np_: NewtonPolyhedron, path: str, mep: Optional[MonotoneEdgePath] = None,
                     names: Optional[Sequence[str]] = None) -> str:
    """
    NP 的二维投影 π_j 画成 SVG（二元时直接画牛顿多边形），带对角线与单调边路径
    """
    names = list(names) if names else [f"x{k + 1}" for k in range(np_.nvars)]
    if np_.nvars == 2:
        panels = [(np_, f"({names[0]}, {names[1]})", 0)]
    else:
        panels = [(np_.project(j), f"({names[j - 1]}, {names[-1]})", j - 1)
                  for j in range(1, np_.nvars)]
    fig, axes = plt.subplots(1, len(panels), figsize=(4 * len(panels), 4), squeeze=False)
    try:
        for ax, (projected, title, coord) in zip(axes[0], panels):
            edge_path = None
            if mep is not None:
                edge_path = [(float(p[coord]), float(p[-1])) for p in mep.points]
            _draw(ax, projected, title, edge_path)
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        fig.savefig(path, format="svg")
        logger.info(f"牛顿多面体投影已保存到: {path}")
    finally:
        plt.close(fig)
    return path
