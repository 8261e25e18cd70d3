"""Run the post-estimation battery on a clean and a misspecified regression.

    python3 demos/diagnostics.py
"""

from __future__ import annotations

import numpy as np

from cyclegap import fit_matrix
from cyclegap.diagnostics import run_battery


def main() -> None:
    rng = np.random.default_rng(4)
    n = 120
    x = rng.normal(size=(n, 2))
    X = np.column_stack([x, np.ones(n)])

    clean = X @ [1.0, -0.5, 2.0] + rng.normal(size=n)
    # errors that grow with the first regressor and follow an AR(1)
    u = np.zeros(n)
    for i in range(1, n):
        u[i] = 0.8 * u[i - 1] + rng.normal() * (0.2 + abs(x[i, 0]))
    bad = X @ [1.0, -0.5, 2.0] + u

    for label, y in (("clean", clean), ("misspecified", bad)):
        rep = run_battery(fit_matrix(X, y, ["x1", "x2", "C"]))
        print(f"{label}:")
        for name, ok in rep.verdicts().items():
            print(f"  {name:24s} {'pass' if ok else 'FAIL'}")


if __name__ == "__main__":
    main()
