# %% [markdown]
# # Free evolution of the |+>^N chain
#
# Without kicks the Ising coupling only entangles nearest neighbours. Edge
# pairs reach C = 1/2, interior pairs peak at (sqrt(5) - 1)/4, and pairs at
# distance two or more never become entangled.

# %%
import numpy as np

from spinkick import ChainConfig, PulseSchedule, c_edge, c_middle, run_schedule

n = 6
times = np.linspace(0, 4 * np.pi, 513)
records = run_schedule(ChainConfig(n), PulseSchedule(), times, pairs="all")

# %%
def column(pair):
    return np.array([r.pair_concurrences[pair] for r in records])

print("edge pair (1,2): max |sim - |sin t|/2|   =", np.max(np.abs(column((1, 2)) - c_edge(times))))
print("middle pair (3,4): max |sim - closed form| =", np.max(np.abs(column((3, 4)) - c_middle(times))))
print("middle pair peak:", column((3, 4)).max(), " vs (sqrt5-1)/4 =", (np.sqrt(5) - 1) / 4)
far = [p for p in records[0].pair_concurrences if p[1] - p[0] >= 2]
print("largest concurrence at distance >= 2:", max(column(p).max() for p in far))

# %% [markdown]
# Energy is conserved and the norm stays at one:

# %%
energies = np.array([r.energy for r in records])
print("energy range:", energies.min(), energies.max())
print("max norm deviation:", max(abs(r.norm - 1) for r in records))

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.plot(times / np.pi, column((1, 2)), label="C_12")
    ax.plot(times / np.pi, column((3, 4)), label="C_34")
    ax.plot(times / np.pi, column((1, 3)), label="C_13")
    ax.set_xlabel("t / pi")
    ax.legend()
    fig.tight_layout()
    fig.savefig("free_evolution.png", dpi=120)
    print("wrote free_evolution.png")
