"""
Running named experiments, in process and through the command line.

Each preset bundles a model, a law and a list of checks; the report is a
flat residual table. The corrupted-kappa preset is a negative control and
should fail only its flow check.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from mehlerlab import experiment_from_config, preset, run_experiment

for name in ("gaussian-scalar", "corrupted-kappa"):
    rep = run_experiment(experiment_from_config(preset(name)))
    print(f"== {name}: {'PASS' if rep.passed else 'FAIL'}")
    for s in rep.summaries:
        print(f"   {s.verdict}  {s.name:<24} {s.max_residual:.3e} (tol {s.tolerance:.1e})  {s.wall_time:.2f}s")

with tempfile.TemporaryDirectory() as tmp:
    cmd = [sys.executable, "-m", "mehlerlab.cli", "verify", "--preset", "stable-scalar", "--out", tmp]
    code = subprocess.run(cmd, capture_output=True, text=True).returncode
    print("\ncli verify exit code:", code)
    print((Path(tmp) / "report.csv").read_text().splitlines()[:4])
    out = subprocess.run([sys.executable, "-m", "mehlerlab.cli", "eval", "cf", "--s=-inf", "--t=0", "--a=e1"], capture_output=True, text=True)
    print("eval cf:", out.stdout.strip())
