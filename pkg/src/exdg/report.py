"""Deterministic rendering of command results as aligned tables, JSON or DOT."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    command: str
    fixture: str
    digest: str
    ok: bool = True
    verdicts: dict = field(default_factory=dict)
    sections: list = field(default_factory=list)  # (title, header, rows)
    data: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    graph: dict | None = None  # nodes, edges (src, tgt, attrs) for DOT
    timings: dict = field(default_factory=dict)
    figures: list = field(default_factory=list)

    def table(self, title, header, rows):
        self.sections.append((title, list(header), [list(r) for r in rows]))

    def as_json(self) -> dict:
        out = {"command": self.command, "fixture": self.fixture, "inputs_digest": self.digest,
               "ok": self.ok, "verdicts": self.verdicts, "data": self.data, "witnesses": self.witnesses}
        if self.timings:
            out["timings"] = self.timings
        if self.figures:
            out["figures"] = self.figures
        return out


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "-"
    return str(x)


def render_table(rep: Report) -> str:
    lines = [f"# {rep.command}  fixture={rep.fixture}  digest={rep.digest}"]
    for title, header, rows in rep.sections:
        lines.append("")
        lines.append(f"## {title}")
        cells = [[_cell(h) for h in header]] + [[_cell(x) for x in r] for r in rows]
        widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
        for i, r in enumerate(cells):
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            if i == 0:
                lines.append("  ".join("-" * w for w in widths))
    if rep.verdicts:
        lines.append("")
        lines.append("## verdicts")
        for k, v in rep.verdicts.items():
            lines.append(f"{k}: {_cell(v)}")
    if rep.witnesses:
        lines.append("")
        lines.append("## witnesses")
        lines.extend(f"- {w}" for w in rep.witnesses)
    for k, v in rep.timings.items():
        lines.append(f"time {k}: {v:.3f}s")
    for p in rep.figures:
        lines.append(f"figure: {p}")
    lines.append("")
    lines.append("result: " + ("ok" if rep.ok else "FAILED"))
    return "\n".join(lines) + "\n"


def render_json(rep: Report) -> str:
    return json.dumps(rep.as_json(), indent=2, sort_keys=True, default=str) + "\n"


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(rep: Report) -> str:
    if rep.graph is None:
        raise ValueError(f"command {rep.command!r} has no graph output")
    g = rep.graph
    lines = [f"digraph {_q(g.get('name', rep.command))} {{", f"  rankdir={g.get('rankdir', 'LR')};"]
    for node in g["nodes"]:
        label = g.get("labels", {}).get(node, node)
        lines.append(f"  {_q(node)} [label={_q(label)}];")
    for s, t, attrs in g["edges"]:
        a = ", ".join(f"{k}={_q(v)}" for k, v in sorted(attrs.items()))
        lines.append(f"  {_q(s)} -> {_q(t)}" + (f" [{a}]" if a else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(rep: Report, emit: str) -> str:
    return {"table": render_table, "json": render_json, "dot": render_dot}[emit](rep)
