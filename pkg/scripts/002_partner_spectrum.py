# %%
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from genhermite import MielnikFactorization, discretized_spectrum, partner_potential
from genhermite.factorization import normalized_partner_state

output_dir = Path("../results")
output_dir.mkdir(parents=True, exist_ok=True)


def oscillator(x):
    return 0.5 * x * x


# %%
# =============================================================================
# Partner potentials for several gamma
# =============================================================================
gammas = [1.0, 1.5, 2.0, 5.0, 50.0]
x = np.linspace(-5.0, 5.0, 1001)

fig, axes = plt.subplots(1, 2, figsize=(16, 6))

ax = axes[0]
ax.plot(x, oscillator(x), color="black", linestyle="--", label="x²/2")
for gamma in gammas:
    ax.plot(x, partner_potential(MielnikFactorization(gamma), x), label=f"γ = {gamma:g}")
ax.set_ylim(-1.0, 6.0)
ax.set_xlabel("x")
ax.set_ylabel("Potential")
ax.grid(True, alpha=0.3)
ax.legend()

ax = axes[1]
for gamma in gammas:
    ax.plot(x, normalized_partner_state(MielnikFactorization(gamma), 0, x), label=f"γ = {gamma:g}")
ax.set_xlabel("x")
ax.set_ylabel("Ground state")
ax.grid(True, alpha=0.3)
ax.legend()

plt.tight_layout()
plt.savefig(output_dir / "partner_potentials.png", dpi=300, bbox_inches="tight")
plt.show()
print(f"Saved: {output_dir / 'partner_potentials.png'}")

# %%
# =============================================================================
# Discretized spectra against n + 1/2
# =============================================================================
levels = 6
exact = np.arange(levels) + 0.5
sho = discretized_spectrum(oscillator, 12.0, 2400, levels)

rows = []
for gamma in gammas:
    f = MielnikFactorization(gamma)
    partner = discretized_spectrum(lambda t: partner_potential(f, t), 12.0, 2400, levels)
    for level in range(levels):
        rows.append({
            "gamma": gamma,
            "level": level,
            "partner": partner[level],
            "oscillator": sho[level],
            "partner - exact": partner[level] - exact[level],
            "partner - oscillator": partner[level] - sho[level],
        })

spectra = pd.DataFrame(rows)
spectra.to_csv(output_dir / "partner_spectra.csv", index=False)

print("\n" + "=" * 70)
print("DISCRETIZED SPECTRA (box half-width 12, 2400 points)")
print("=" * 70)
print(spectra.to_markdown(index=False, floatfmt=".3e"))
print(f"\nSaved: {output_dir / 'partner_spectra.csv'}")

# %%
# =============================================================================
# Convergence of the box eigenvalues with the step
# =============================================================================
f = MielnikFactorization(2.0)
counts = [300, 600, 1200, 2400, 4800]
rows = []
for count in counts:
    partner = discretized_spectrum(lambda t: partner_potential(f, t), 12.0, count, 4)
    rows.append({
        "count": count,
        "h": 24.0 / (count + 1),
        "max error": float(np.max(np.abs(partner - exact[:4]))),
    })

convergence = pd.DataFrame(rows)
convergence["order"] = np.log(convergence["max error"].shift() / convergence["max error"]) / np.log(
    convergence["h"].shift() / convergence["h"]
)

print("\n" + "=" * 70)
print("CONVERGENCE (gamma = 2)")
print("=" * 70)
print(convergence.to_markdown(index=False, floatfmt=".3e"))

fig, ax = plt.subplots(figsize=(7, 5))
ax.loglog(convergence["h"], convergence["max error"], "o-", label="max |E - (n + 1/2)|, n < 4")
ax.loglog(convergence["h"], convergence["max error"].iloc[0] * (convergence["h"] / convergence["h"].iloc[0]) ** 2,
          "k--", label="h²")
ax.set_xlabel("h")
ax.set_ylabel("Error")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
plt.tight_layout()
plt.savefig(output_dir / "box_convergence.png", dpi=300, bbox_inches="tight")
plt.show()
