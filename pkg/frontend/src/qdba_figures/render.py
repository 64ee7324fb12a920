"""Figure builders for the four figure kinds.

Layout is fixed: axes limits, legend order, and the preset color mapping do
not depend on the input beyond its data, so rerendering a CSV reproduces the
same figure. Rendering never mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure

from .schema import SchemaError, load_histogram, load_sweep

# Reference success-probability levels for the noise figure overlay:
# unmitigated, decoupling only, and mitigation plus decoupling.
ANCHOR_LEVELS = (0.6368, 0.8689, 0.9093)

# Fixed series colors, keyed by the sweep CSV's preset column.
PRESET_COLORS = {
    "noiseless": "#4c72b0",
    "unmitigated": "#c44e52",
    "dd": "#dd8452",
    "emdd": "#55a868",
    "custom": "#8172b3",
}

FIGURE_KINDS = ("hist", "noise", "traitors_size", "shots")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    input_path: str
    output_path: str
    second_input_path: str | None = None
    anchors: bool = False
    dpi: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {FIGURE_KINDS}")


def _color(preset: str) -> str:
    return PRESET_COLORS.get(preset, "#404040")


def _series_label(rows: list[dict], path: str) -> str:
    presets = sorted({row["preset"] for row in rows})
    if presets == ["custom"]:
        return Path(path).stem
    return "+".join(presets)


def _build_noise(spec: FigureSpec) -> Figure:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    paths = [spec.input_path] + ([spec.second_input_path] if spec.second_input_path else [])
    for path in paths:
        rows = sorted(load_sweep(path), key=lambda r: r["axis_value"])
        xs = [r["axis_value"] for r in rows]
        ys = [r["p_dba"] for r in rows]
        low = [r["ci_low"] for r in rows]
        high = [r["ci_high"] for r in rows]
        color = _color(rows[0]["preset"])
        label = _series_label(rows, path)
        ax.plot(xs, ys, color=color, label=label)
        ax.fill_between(xs, low, high, color=color, alpha=0.25, linewidth=0)
    if spec.anchors:
        for level in ANCHOR_LEVELS:
            ax.axhline(level, color="#888888", linestyle="--", linewidth=0.8)
            ax.annotate(f"{level}", xy=(1.0, level), xytext=(-2, 2),
                        textcoords="offset points", ha="right", fontsize=7, color="#555555")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("bit-flip probability")
    ax.set_ylabel("P(detectable broadcast)")
    ax.legend(loc="lower left")
    fig.tight_layout()
    return fig


def _build_hist(spec: FigureSpec) -> Figure:
    paths = [spec.input_path] + ([spec.second_input_path] if spec.second_input_path else [])
    series = [(Path(path).stem, load_histogram(path)) for path in paths]
    patterns = sorted({row["pattern"] for _, rows in series for row in rows})
    fig, ax = plt.subplots(figsize=(max(7.0, 0.28 * len(patterns) * len(series)), 4.5))
    width = 0.8 / len(series)
    palette = list(PRESET_COLORS.values())
    for offset, (label, rows) in enumerate(series):
        freq = {row["pattern"]: row["frequency"] for row in rows}
        xs = [i + offset * width for i in range(len(patterns))]
        ax.bar(
            xs,
            [freq.get(p, 0.0) for p in patterns],
            width=width,
            label=label,
            color=palette[offset % len(palette)],
        )
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(patterns))])
    ax.set_xticklabels(patterns, rotation=90, fontsize=7)
    ax.set_xlabel("measured pattern (commander bits first)")
    ax.set_ylabel("frequency")
    ax.legend(loc="upper right")
    fig.tight_layout()
    return fig


def _panel(ax, rows: list[dict], xlabel: str) -> None:
    rows = sorted(rows, key=lambda r: r["axis_value"])
    xs = [r["axis_value"] for r in rows]
    color = _color(rows[0]["preset"])
    ax.errorbar(
        xs,
        [r["p_dba"] for r in rows],
        yerr=[
            [max(0.0, r["p_dba"] - r["ci_low"]) for r in rows],
            [max(0.0, r["ci_high"] - r["p_dba"]) for r in rows],
        ],
        color=color,
        marker="o",
        capsize=3,
    )
    ax.set_xlabel(xlabel)
    ax.set_ylabel("P(detectable broadcast)")
    ax.set_ylim(0.0, 1.05)


def _build_traitors_size(spec: FigureSpec) -> Figure:
    if not spec.second_input_path:
        raise SchemaError(spec.input_path, "axis_value", "needs a second input (--in2) for the size panel")
    fig, (left, right) = plt.subplots(1, 2, figsize=(10.0, 4.2))
    _panel(left, load_sweep(spec.input_path), "traitor count")
    _panel(right, load_sweep(spec.second_input_path), "network size")
    fig.tight_layout()
    return fig


def _build_shots(spec: FigureSpec) -> Figure:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    paths = [spec.input_path] + ([spec.second_input_path] if spec.second_input_path else [])
    for path in paths:
        rows = sorted(load_sweep(path), key=lambda r: r["axis_value"])
        xs = [r["axis_value"] for r in rows]
        color = _color(rows[0]["preset"])
        ax.plot(xs, [r["p_dba"] for r in rows], color=color, marker="o",
                label=_series_label(rows, path))
        ax.fill_between(xs, [r["ci_low"] for r in rows], [r["ci_high"] for r in rows],
                        color=color, alpha=0.25, linewidth=0)
    ax.set_xscale("log")
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("copies distributed (shots)")
    ax.set_ylabel("P(detectable broadcast)")
    ax.legend(loc="lower right")
    fig.tight_layout()
    return fig


_BUILDERS = {
    "noise": _build_noise,
    "hist": _build_hist,
    "traitors_size": _build_traitors_size,
    "shots": _build_shots,
}


def build_figure(spec: FigureSpec) -> Figure:
    """Validate inputs and assemble the figure without writing anything."""
    return _BUILDERS[spec.kind](spec)


def render(spec: FigureSpec) -> str:
    """Build and write the figure; nothing is written when validation fails."""
    fig = build_figure(spec)
    try:
        save_kwargs = {"dpi": spec.dpi} if spec.dpi else {}
        fig.savefig(spec.output_path, **save_kwargs)
    finally:
        plt.close(fig)
    return spec.output_path
