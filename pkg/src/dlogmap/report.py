"""Tables and files produced from sweep results."""

from __future__ import annotations

import csv
import json
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from dlogmap.numtheory import PrimeContext
from dlogmap.sweep import REPORT_FIELDS, ClassSummary, ExtremalRecord, SweepResult

LABELS = {
    "components": "Components",
    "cyclic_nodes": "Cyclic Nodes",
    "image_nodes": "Image Nodes",
    "avg_cycle": "Avg Cycle",
    "avg_tail": "Avg Tail",
    "max_cycle": "Max Cycle",
    "max_tail": "Max Tail",
}
CSV_NAMES = {
    "components": "components",
    "cyclic_nodes": "cyclic",
    "image_nodes": "image",
    "avg_cycle": "avg_cycle",
    "avg_tail": "avg_tail",
    "max_cycle": "max_cycle",
    "max_tail": "max_tail",
}
PERMUTATION_FIELDS = ("components", "avg_cycle", "max_cycle")

Results = Union[SweepResult, Sequence[SweepResult]]


def fixed(value: Union[Fraction, float, int, None], places: int = 6) -> str:
    """Decimal string with ``places`` digits, rounding half to even; '' for None."""
    if value is None:
        return ""
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, Fraction):
            d = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            d = Decimal(value)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def _as_list(results: Results) -> list[SweepResult]:
    return [results] if isinstance(results, SweepResult) else list(results)


# ---------------------------------------------------------------- rendering


def _table(headers: list[str], rows: list[list[str]], fmt: str) -> list[str]:
    if fmt == "markdown":
        out = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
        out += ["| " + " | ".join(r) + " |" for r in rows]
        return out
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) if i == 0 else h.rjust(w) for i, (h, w) in enumerate(zip(headers, widths)))
    out = [line, "-" * len(line)]
    for r in rows:
        out.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))))
    return out


def _heading(text: str, fmt: str, level: int = 2) -> list[str]:
    if fmt == "markdown":
        return ["#" * level + " " + text, ""]
    return [text, "=" * len(text) if level <= 2 else "-" * len(text)]


def _comparison_rows(summary: ClassSummary, names: Iterable[str]) -> list[list[str]]:
    pred = summary.predicted
    rows = []
    for name in names:
        err = summary.pct_error(name)
        rows.append(
            [
                LABELS[name],
                fixed(summary.mean(name), 3),
                fixed(getattr(pred, name) if pred else None, 3),
                fixed(err, 3) + ("%" if err is not None else ""),
            ]
        )
    return rows


def _count_rows(res: SweepResult) -> list[list[str]]:
    ctx = PrimeContext.from_prime(res.p)
    rows = []
    for m, label in ((1, "Permutations"), (2, "Binary Functional Graphs")):
        observed = res.classes[m].graph_count if m in res.classes else 0
        expected = ctx.class_counts.get(m, 0)
        rows.append([label, str(observed), str(expected)])
    rows.append(["Total Functional Graphs", str(res.combined.graph_count), str(res.p - 1)])
    return rows


def render_report(results: Results, fmt: str = "text") -> str:
    if fmt not in ("text", "markdown"):
        raise ValueError("format must be 'text' or 'markdown'")
    lines: list[str] = []
    headers = ["Statistic", "Observed", "Predicted", "Error (%)"]
    for res in _as_list(results):
        title = f"p = {res.p}"
        if res.partial:
            title += f" (PARTIAL: g in [{res.g_start}, {res.g_end}]"
            if res.class_filter is not None:
                title += f", classes {','.join(map(str, res.class_filter))}"
            if not res.complete:
                title += ", incomplete"
            title += ")"
        lines += _heading(title, fmt, 1 if fmt == "markdown" else 2)

        lines += _heading("Graph counts", fmt, 3)
        lines += _table(["", "Observed", "Expected"], _count_rows(res), fmt) + [""]

        if res.combined.graph_count:
            lines += _heading("All graphs vs random mapping", fmt, 3)
            lines += _table(headers, _comparison_rows(res.combined, REPORT_FIELDS), fmt) + [""]
        if res.classes.get(1) and res.classes[1].graph_count:
            lines += _heading("Permutations vs random permutation", fmt, 3)
            lines += _table(headers, _comparison_rows(res.classes[1], PERMUTATION_FIELDS), fmt) + [""]
        if res.classes.get(2) and res.classes[2].graph_count:
            lines += _heading("Binary graphs vs random binary graph", fmt, 3)
            lines += _table(headers, _comparison_rows(res.classes[2], REPORT_FIELDS), fmt) + [""]

        others = [s for m, s in res.classes.items() if m > 2]
        if others:
            lines += _heading("Other classes (no model)", fmt, 3)
            rows = [[str(s.m), str(s.graph_count)] + [fixed(s.mean(k), 3) for k in REPORT_FIELDS] for s in others]
            lines += _table(["m", "graphs"] + [LABELS[k] for k in REPORT_FIELDS], rows, fmt) + [""]

        if res.records:
            lines += _heading("Extremal data", fmt, 3)
            lc, lt, fo = (res.record(s) for s in ("longest_cycle", "longest_tail", "max_cycle_equals_one"))
            bullet = "- " if fmt == "markdown" else "  "
            lines.append(f"{bullet}longest cycle {lc.value} at g = {', '.join(map(str, lc.witnesses))}")
            lines.append(f"{bullet}longest tail {lt.value} at g = {', '.join(map(str, lt.witnesses))}")
            shown = ", ".join(map(str, fo.witnesses[:20])) + (", ..." if len(fo.witnesses) > 20 else "")
            lines.append(f"{bullet}{fo.value} graphs with no cycle longer than one: g = {shown}")
            lines.append("")
    return "\n".join(lines).rstrip() + "\n"


# ---------------------------------------------------------------- files


def summary_columns() -> list[str]:
    cols = ["p", "m", "graph_count"]
    for prefix in ("mean", "predicted", "pct_error"):
        cols += [f"{prefix}_{CSV_NAMES[k]}" for k in REPORT_FIELDS]
    return cols


def summary_row(s: ClassSummary) -> dict[str, str]:
    pred = s.predicted
    row = {"p": str(s.p), "m": str(s.m), "graph_count": str(s.graph_count)}
    for k in REPORT_FIELDS:
        name = CSV_NAMES[k]
        row[f"mean_{name}"] = fixed(s.mean(k)) if s.graph_count else ""
        row[f"predicted_{name}"] = fixed(getattr(pred, k) if pred else None)
        row[f"pct_error_{name}"] = fixed(s.pct_error(k))
    return row


def _all_summaries(res: SweepResult) -> list[ClassSummary]:
    return [res.combined, *res.classes.values()]


def _json_doc(results: list[SweepResult]) -> dict:
    primes = []
    for res in results:
        classes = []
        for s in _all_summaries(res):
            pred = s.predicted
            classes.append(
                {
                    "m": s.m,
                    "graph_count": s.graph_count,
                    "sums": dict(s.sums),
                    "means": {CSV_NAMES[k]: float(v) for k, v in s.means.items()},
                    "mean_avg_tail_per_node": float(s.mean("avg_tail_per_node")) if s.graph_count else None,
                    "model": pred.model if pred else None,
                    "predicted": {CSV_NAMES[k]: getattr(pred, k) for k in REPORT_FIELDS} if pred else None,
                    "pct_error": {CSV_NAMES[k]: v for k, v in s.pct_errors.items()},
                }
            )
        primes.append(
            {
                "p": res.p,
                "g_start": res.g_start,
                "g_end": res.g_end,
                "class_filter": list(res.class_filter) if res.class_filter is not None else None,
                "complete": res.complete,
                "partial": res.partial,
                "classes": classes,
                "extremal": [
                    {"statistic": r.statistic, "value": r.value, "witnesses": list(r.witnesses)}
                    for r in res.records
                ],
            }
        )
    return {"primes": primes}


def emit_outputs(results: Results, path: Union[str, Path], fmt: str = "csv") -> list[Path]:
    """Write summary and extremal files into directory ``path``; returns the paths written."""
    results = _as_list(results)
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            summary, extremal = out / "summary.csv", out / "extremal.csv"
            with summary.open("w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=summary_columns())
                w.writeheader()
                for res in results:
                    for s in _all_summaries(res):
                        w.writerow(summary_row(s))
            with extremal.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["p", "statistic", "value", "witnesses"])
                for res in results:
                    for r in res.records:
                        w.writerow([r.p, r.statistic, r.value, ";".join(map(str, r.witnesses))])
            return [summary, extremal]
        if fmt == "json":
            target = out / "summary.json"
            target.write_text(json.dumps(_json_doc(results), indent=2))
            return [target]
    except OSError as exc:
        raise OSError(f"{path}: cannot write outputs ({exc.strerror or exc})") from exc
    raise ValueError("format must be 'csv' or 'json'")


def load_summaries(path: Union[str, Path]) -> dict[int, dict[int, ClassSummary]]:
    """Rebuild exact ClassSummary objects, keyed by p then m, from a JSON output file."""
    doc = json.loads(Path(path).read_text())
    loaded: dict[int, dict[int, ClassSummary]] = {}
    for prime in doc["primes"]:
        p = int(prime["p"])
        loaded[p] = {
            int(c["m"]): ClassSummary.from_dict({"p": p, "m": c["m"], "graph_count": c["graph_count"], "sums": c["sums"]})
            for c in prime["classes"]
        }
    return loaded


def records_by_statistic(records: Iterable[ExtremalRecord]) -> dict[str, ExtremalRecord]:
    return {r.statistic: r for r in records}


def describe_prediction(model: str, n: int, fmt: str = "text", values: Optional[dict] = None) -> str:
    from dlogmap.asymptotics import predict

    pred = predict(model, n)
    vals = values or pred.values()
    rows = [[k, "" if v is None else f"{v:.6f}"] for k, v in vals.items()]
    return "\n".join(_table([f"{model} model, n = {n}", "value"], rows, fmt)) + "\n"
