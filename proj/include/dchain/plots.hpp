#pragma once
// Drops small self-contained matplotlib scripts into a run directory. The
// scripts read only the CSV files next to themselves (csv + numpy +
// matplotlib, no project imports), so a run directory can be copied anywhere
// and still plot.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dchain/output.hpp"

namespace dchain {

namespace detail {

constexpr const char* k_plot_scalars = R"PY(#!/usr/bin/env python3
"""Scalar time series of this run directory -> scalars.png."""
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))


def read(name):
    path = os.path.join(here, name)
    if not os.path.exists(path):
        return None
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    head = rows[0]
    data = [[float(c) for c in r] for r in rows[1:]]
    return {h: [r[i] for r in data] for i, h in enumerate(head)}


frames = read("frames.csv")
if frames is None:
    sys.exit("frames.csv not found next to this script")
analytic = read("analytic.csv")

panels = [
    ("inversion_total", "total inversion"),
    ("center", "packet center (site)"),
    ("mean_n", "mean photon number"),
    ("var_n", "photon number variance"),
    ("entropy", "field entropy (nats)"),
    ("norm", "state norm"),
]
fig, axes = plt.subplots(2, 3, figsize=(15, 7), sharex=True)
for ax, (col, title) in zip(axes.flat, panels):
    ax.plot(frames["time"], frames[col], lw=0.8)
    if analytic is not None and col in analytic:
        ax.plot(analytic["time"], analytic[col], "k--", lw=0.8, label="closed form")
        ax.legend(frameon=False, fontsize=8)
    ax.set_title(title, fontsize=10)
    ax.grid(alpha=0.3)
for ax in axes[-1]:
    ax.set_xlabel("time (1/omega_0)")
fig.tight_layout()
out = os.path.join(here, "scalars.png")
fig.savefig(out, dpi=150)
print("wrote", out)
)PY";

constexpr const char* k_plot_heatmaps = R"PY(#!/usr/bin/env python3
"""Space-time / level-time heatmaps -> one PNG per matrix CSV in this directory."""
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))
made = 0
for name, ylabel, cmap in [
    ("inversion.csv", "site p", "RdBu_r"),
    ("current.csv", "site p", "RdBu_r"),
    ("photons.csv", "photon number n", "viridis"),
]:
    path = os.path.join(here, name)
    if not os.path.exists(path):
        continue
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    data = np.array([[float(c) for c in r] for r in rows[1:]])
    t, z = data[:, 0], data[:, 1:].T
    fig, ax = plt.subplots(figsize=(9, 4))
    kw = {}
    if cmap == "RdBu_r":
        lim = float(np.max(np.abs(z))) or 1.0
        kw = {"vmin": -lim, "vmax": lim}
    im = ax.imshow(z, aspect="auto", origin="lower", cmap=cmap,
                   extent=[t[0], t[-1], -0.5, z.shape[0] - 0.5], **kw)
    ax.set_xlabel("time (1/omega_0)")
    ax.set_ylabel(ylabel)
    ax.set_title(name.replace(".csv", ""))
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    out = os.path.join(here, name.replace(".csv", ".png"))
    fig.savefig(out, dpi=150)
    print("wrote", out)
    made += 1
if made == 0:
    sys.exit("no matrix CSV files found next to this script")
)PY";

}  // namespace detail

// Writes plot_scalars.py and plot_heatmaps.py into dir. Requires frames.csv
// to be present (i.e. dir must be a run directory). Returns the paths written.
inline std::vector<std::string> write_plot_scripts(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::exists(fs::path(dir) / "frames.csv"))
    throw std::runtime_error(dir + ": no frames.csv here; not a run directory");
  std::vector<std::string> written;
  const std::string scalars = (fs::path(dir) / "plot_scalars.py").string();
  const std::string heatmaps = (fs::path(dir) / "plot_heatmaps.py").string();
  write_text_file(scalars, detail::k_plot_scalars);
  write_text_file(heatmaps, detail::k_plot_heatmaps);
  written.push_back(scalars);
  written.push_back(heatmaps);
  return written;
}

}  // namespace dchain
