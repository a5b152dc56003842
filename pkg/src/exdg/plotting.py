"""Figures for command reports (matplotlib, headless)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_META = {"Software": None}  # keep files byte-stable across runs


def _save(fig, path: Path) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata=_META)
    plt.close(fig)
    return str(path)


def _layers(nodes, edges):
    """Longest-path layering of a DAG (cycles fall back to list order)."""
    level = {n: 0 for n in nodes}
    for _ in range(len(nodes)):
        changed = False
        for s, t in edges:
            if level[t] < level[s] + 1 and level[s] + 1 < len(nodes):
                level[t] = level[s] + 1
                changed = True
        if not changed:
            break
    return level


def plot_ar_quiver(nodes, arrows, meshes, path: Path) -> str:
    """arrows: irreducible maps; meshes: (C, A, name) for the translation edges."""
    level = _layers(nodes, arrows)
    rows = {}
    pos = {}
    for n in nodes:
        k = rows.setdefault(level[n], 0)
        rows[level[n]] += 1
        pos[n] = (level[n], k if level[n] % 2 == 0 else k + 0.5)
    fig, ax = plt.subplots(figsize=(1.4 * (max(level.values()) + 2), 3.2))
    for s, t in arrows:
        ax.annotate("", xy=pos[t], xytext=pos[s],
                    arrowprops=dict(arrowstyle="->", color="black", shrinkA=14, shrinkB=14))
    for c, a, name in meshes:
        ax.annotate("", xy=pos[a], xytext=pos[c],
                    arrowprops=dict(arrowstyle="->", linestyle="dashed", color="tab:blue", shrinkA=14, shrinkB=14))
        mx, my = (pos[a][0] + pos[c][0]) / 2, (pos[a][1] + pos[c][1]) / 2
        ax.text(mx, my - 0.15, name, color="tab:blue", ha="center", va="top", fontsize=9)
    for n, (x, y) in pos.items():
        ax.text(x, y, n, ha="center", va="center", bbox=dict(boxstyle="round", fc="white", ec="gray"))
    ax.set_xlim(-0.7, max(level.values()) + 0.7)
    ax.set_ylim(-0.9, max(p[1] for p in pos.values()) + 0.7)
    ax.axis("off")
    ax.set_title("AR-quiver")
    return _save(fig, path)


def plot_hasse(labels, hasse, path: Path) -> str:
    rank = [lab.count(",") + (0 if lab == "{}" else 1) for lab in labels]
    by_rank = {}
    pos = {}
    for i, r in enumerate(rank):
        k = by_rank.setdefault(r, [])
        k.append(i)
    for r, idx in by_rank.items():
        for k, i in enumerate(idx):
            pos[i] = (k - (len(idx) - 1) / 2, r)
    fig, ax = plt.subplots(figsize=(6, 1.3 * (max(rank) + 1)))
    for i, j in hasse:
        ax.plot([pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]], color="gray", zorder=1)
    for i, (x, y) in pos.items():
        ax.text(x, y, labels[i], ha="center", va="center", fontsize=9,
                bbox=dict(boxstyle="round", fc="white", ec="black"), zorder=2)
    ax.set_ylim(-0.5, max(rank) + 0.5)
    ax.axis("off")
    ax.set_title("substructures")
    return _save(fig, path)


def plot_bars(title, labels, values, path: Path, ylabel="") -> str:
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(labels) + 1), 3))
    ax.bar(range(len(values)), values, color="tab:gray")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels([str(x) for x in labels], rotation=0)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    return _save(fig, path)


def plot_hom(degrees, chain_dims, coh_dims, path: Path, title="Hom") -> str:
    fig, ax = plt.subplots(figsize=(max(4, 0.7 * len(degrees) + 1), 3))
    w = 0.38
    xs = range(len(degrees))
    ax.bar([x - w / 2 for x in xs], chain_dims, w, label="dim Hom^n", color="tab:gray")
    ax.bar([x + w / 2 for x in xs], coh_dims, w, label="dim H^n", color="tab:blue")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([str(d) for d in degrees])
    ax.set_xlabel("degree n")
    ax.legend(frameon=False)
    ax.set_title(title)
    return _save(fig, path)
