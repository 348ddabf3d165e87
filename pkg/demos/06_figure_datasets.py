"""Write the trajectory, root-sandwich and t(E) datasets through the CLI.

Run: python3 demos/06_figure_datasets.py [OUTDIR]
"""
import pathlib
import sys

from se2geodesic.cli import main

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figure_data")
out.mkdir(parents=True, exist_ok=True)
jobs = {
    "trajectory_C1.csv": ["geodesic", "--gamma", "0", "--c", "1", "--time", "10", "--samples", "400"],
    "trajectory_C2.csv": ["geodesic", "--gamma", "0", "--c", "3", "--time", "10", "--samples", "400"],
    "trajectory_C3.csv": ["geodesic", "--gamma", "0", "--c", "2", "--time", "10", "--samples", "400"],
    "p11_sandwich.csv": ["roots", "--grid", "0.001:0.999:200"],
    "tt_curve.csv": ["tt-curve", "--grid=-1:100:300"],
}
for name, argv in jobs.items():
    code = main([*argv, "--out", str(out / name)])
    print(f"{name:20s} exit {code}")
