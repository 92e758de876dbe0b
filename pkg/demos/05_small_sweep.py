"""
A complete sweep at desk scale
==============================

Sweeping every g for p = 2027 takes a second. The same call scales to primes
near 1e5 (minutes per prime). Pass a checkpoint path to make long runs resumable.
"""

import tempfile
from pathlib import Path

from dlogmap.report import emit_outputs, render_report
from dlogmap.sweep import run_sweep

res = run_sweep(2027, workers=2)
classes, combined, records = res
print(render_report(res))

# Binary means land close to the model even at this size.
binary = classes[2]
for name, err in binary.pct_errors.items():
    print(f"{name:13s} {float(binary.mean(name)):10.3f}  {err:.2f}%")

with tempfile.TemporaryDirectory() as tmp:
    for path in emit_outputs(res, tmp, "csv"):
        print(path.name, "->", Path(path).read_text().splitlines()[0][:70], "...")
