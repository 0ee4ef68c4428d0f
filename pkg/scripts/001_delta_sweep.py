# %%
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from genhermite import GenHermiteFunction, gen_hermite, gen_hermite_table, weight
from genhermite.functions import zero_count
from genhermite.grid import Grid

output_dir = Path("../results")
output_dir.mkdir(parents=True, exist_ok=True)

# %%
# =============================================================================
# Sample the family over a wide delta sweep
# =============================================================================
deltas = [0.0, 0.1, 1.0, 10.0, 100.0, 1000.0]
n_max = 5
x = np.linspace(-5.0, 5.0, 1001)

fig, axes = plt.subplots(2, 3, figsize=(18, 10), sharex=True)

for n, ax in enumerate(axes.flat):
    for delta in deltas:
        values = gen_hermite_table(n_max, delta, x)[n]
        ax.plot(x, values, label=f"δ = {delta:g}", linewidth=1.5)
    ax.axhline(0.0, color="black", linewidth=0.5)
    ax.set_title(f"n = {n}")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)

for ax in axes[-1]:
    ax.set_xlabel("x")

plt.suptitle("Generalized Hermite functions across δ (absolute scale)", fontsize=14, fontweight="bold")
plt.tight_layout()
plt.savefig(output_dir / "delta_sweep.png", dpi=300, bbox_inches="tight")
plt.show()
print(f"Saved: {output_dir / 'delta_sweep.png'}")

# %%
# =============================================================================
# Weight function
# =============================================================================
fig, ax = plt.subplots(figsize=(8, 5))
for delta in deltas[1:]:
    ax.semilogy(x, weight(delta, x), label=f"δ = {delta:g}")
ax.set_xlabel("x")
ax.set_ylabel("w(x) = 2(1 + δ exp(-x²))")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
plt.tight_layout()
plt.savefig(output_dir / "weights.png", dpi=300, bbox_inches="tight")
plt.show()

# %%
# =============================================================================
# Values at the origin and node counts
# =============================================================================
rows = []
for delta in deltas:
    for n in range(n_max + 1):
        g = GenHermiteFunction(n, delta)
        rows.append({
            "delta": delta,
            "n": n,
            "value_at_0": float(gen_hermite(g, 0.0)),
            "max_abs": float(np.max(np.abs(gen_hermite(g, x)))),
            "zeros": zero_count(g, Grid(-5.0, 5.0, 1001)),
        })

summary = pd.DataFrame(rows)
summary.to_csv(output_dir / "delta_sweep_summary.csv", index=False)

print("\n" + "=" * 70)
print("VALUE AT THE ORIGIN AND NODE COUNT")
print("=" * 70)
print(summary.pivot(index="n", columns="delta", values="value_at_0").to_markdown(floatfmt=".6f"))
print()
# the number of nodes should not depend on delta
print(summary.pivot(index="n", columns="delta", values="zeros").to_string())
print(f"\nSaved: {output_dir / 'delta_sweep_summary.csv'}")
