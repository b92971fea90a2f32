"""Presentation helpers: per-symbol CSV, summary figures, DOT export.

Everything here renders an already-computed Solution; nothing feeds back
into the solver.  Figures are written straight to files (no interactive
backend), matching batch use.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .solver import Solution


def _g12(x: float) -> str:
    return f"{x:.12g}"


def symbol_rows(solution: Solution) -> list[dict[str, object]]:
    """One row per symbol, input order, ready for csv.DictWriter."""
    spec = solution.spec
    b = solution.bounds
    rows = []
    for i, sym in enumerate(spec.symbols):
        code = solution.codebook[sym.id]
        rows.append(
            {
                "id": sym.id,
                "weight": _g12(sym.weight),
                "probability": _g12(spec.probabilities[i]),
                "pinned_length": "" if sym.length is None else sym.length,
                "ideal_length": _g12(b.ideal_lengths[i]),
                "witness_length": b.witness_lengths[i],
                "code": code,
                "code_length": len(code),
            }
        )
    return rows


CSV_FIELDS = (
    "id",
    "weight",
    "probability",
    "pinned_length",
    "ideal_length",
    "witness_length",
    "code",
    "code_length",
)


def write_csv(solution: Solution, path: Path) -> None:
    with open(path, "w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(symbol_rows(solution))


def write_length_figure(solution: Solution, path: Path) -> None:
    """Bar chart of code-word lengths with the real-valued ideals overlaid."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch

    spec = solution.spec
    ids = [sym.id for sym in spec.symbols]
    lengths = [len(solution.codebook[i]) for i in ids]
    ideals = solution.bounds.ideal_lengths
    colors = [
        "#bf616a" if sym.length is not None else "#5e81ac" for sym in spec.symbols
    ]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(ids)), 4.0))
    ax.bar(range(len(ids)), lengths, color=colors)
    ax.plot(range(len(ids)), ideals, "k_", markersize=12, label="ideal length")
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids, rotation=90 if len(ids) > 12 else 0, fontsize=8)
    ax.set_ylabel("bits")
    ax.set_title("Code-word lengths")
    handles = [
        Patch(color="#5e81ac", label="free symbol"),
        Patch(color="#bf616a", label="pinned symbol"),
    ]
    ax.legend(handles=handles + ax.get_legend_handles_labels()[0], fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_bounds_figure(solution: Solution, path: Path) -> None:
    """Number line placing the achieved cost between its bounds."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    b = solution.bounds
    marks = [
        ("entropy", b.entropy, "#4c566a"),
        ("constrained entropy", b.constrained_entropy, "#5e81ac"),
        ("achieved", solution.expected_length, "#a3be8c"),
        ("witness", b.witness_cost, "#d08770"),
        ("constrained entropy + 1", b.constrained_entropy + 1.0, "#bf616a"),
    ]
    fig, ax = plt.subplots(figsize=(7.0, 3.2))
    for pos, (label, value, color) in enumerate(marks):
        ax.plot([value], [0], "|", color=color, markersize=26)
        ax.annotate(
            f"{label}\n{value:.4f}",
            (value, 0),
            textcoords="offset points",
            xytext=(0, 14 if pos % 2 == 0 else -34),
            ha="center",
            fontsize=8,
            color=color,
        )
    values = [v for _, v, _ in marks]
    span = max(values) - min(values) or 1.0
    ax.set_xlim(min(values) - 0.15 * span, max(values) + 0.15 * span)
    ax.set_ylim(-1, 1)
    ax.get_yaxis().set_visible(False)
    ax.spines[["left", "right", "top"]].set_visible(False)
    ax.set_xlabel("expected bits per symbol")
    ax.set_title("Bounds around the achieved expected length")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(solution: Solution, out_dir: Path) -> list[Path]:
    """Write report.csv, lengths.png and bounds.png; return the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [
        out_dir / "report.csv",
        out_dir / "lengths.png",
        out_dir / "bounds.png",
    ]
    write_csv(solution, paths[0])
    write_length_figure(solution, paths[1])
    write_bounds_figure(solution, paths[2])
    return paths


def _node_name(prefix: str) -> str:
    return f'"n{prefix}"'


def to_dot(solution: Solution) -> str:
    """Static rendering of the full code tree in DOT syntax.

    Leaves are boxes labeled id:probability; free-stub roots are filled
    circles labeled with their level; edges on the paths down to stubs
    are dashed.  Edge labels carry the bit taken.
    """
    spec = solution.spec
    prob = {sym.id: spec.probabilities[i] for i, sym in enumerate(spec.symbols)}
    leaf_of = {code: sym_id for sym_id, code in solution.codebook.items()}
    stub_level = {s.prefix: s.level for s in solution.stubs.stubs}

    nodes = {""}
    for code in leaf_of:
        for cut in range(1, len(code) + 1):
            nodes.add(code[:cut])

    lines = [
        "digraph code_tree {",
        "  rankdir=TB;",
        "  node [shape=point];",
        '  edge [fontsize=9, arrowhead="none"];',
    ]
    for node in sorted(nodes, key=lambda s: (len(s), s)):
        attrs = []
        if node in leaf_of:
            sym_id = leaf_of[node]
            attrs = ["shape=box", f'label="{sym_id}:{prob[sym_id]:.4f}"']
        elif node in stub_level:
            attrs = ["shape=circle", f'label="h={stub_level[node]}"']
        if node in stub_level:
            attrs += ["style=filled", "fillcolor=lightgrey"]
        if attrs:
            lines.append(f"  {_node_name(node)} [{', '.join(attrs)}];")
    stub_paths = {
        p[:cut] for p in stub_level for cut in range(1, len(p) + 1)
    }
    for node in sorted(nodes - {""}, key=lambda s: (len(s), s)):
        style = ', style="dashed"' if node in stub_paths else ""
        lines.append(
            f'  {_node_name(node[:-1])} -> {_node_name(node)} '
            f'[label="{node[-1]}"{style}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
