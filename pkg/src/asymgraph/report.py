"""Seed-sweep report: delimited cost tables plus rendered figures.

Produces, inside the output directory:
  build_costs.csv       per (algo, n, seed) meter counters
  ldd_cut.csv           per (beta, seed) cut fractions
  writes_vs_n.png       mean build writes against the 8n/k budget line
  ldd_cut_fraction.png  cut fraction against the 2*beta bound
  rho_reads.png         mean reads per rho call against the 8k bound
"""
from __future__ import annotations

import csv
import os
import statistics

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .bcc import build_bcc_oracle
from .connectivity import build_cc_oracle, ldd
from .decomposition import build_decomposition, rho
from .graph import gen_random_bounded
from .meter import CostMeter


def write_report(out_dir: str, sizes=(256, 512, 1024, 2048), seeds: int = 5,
                 k: int = 0, omega: int = 16) -> None:
    os.makedirs(out_dir, exist_ok=True)
    k = k or 4
    rows = []
    for n in sizes:
        for seed in range(seeds):
            g = gen_random_bounded(n, 3, seed)
            for algo, builder in (
                    ("cc-sublinear", build_cc_oracle),
                    ("bcc-sublinear", build_bcc_oracle)):
                meter = CostMeter(omega=omega)
                builder(g, k, seed, meter)
                rows.append({"algo": algo, "n": n, "seed": seed,
                             "reads": meter.reads, "writes": meter.writes,
                             "charged": meter.charged_cost,
                             "budget_8n_over_k": 8 * n // k})
    with open(os.path.join(out_dir, "build_costs.csv"), "w", newline="",
              encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)

    ldd_rows = []
    g_ldd = gen_random_bounded(max(sizes), 3, 0)
    for beta in (0.05, 0.1, 0.2):
        for seed in range(seeds):
            res = ldd(g_ldd, beta, seed)
            ldd_rows.append({"beta": beta, "seed": seed,
                             "cut_fraction": res.cut_edges(g_ldd) / g_ldd.m,
                             "blocks": res.num_blocks()})
    with open(os.path.join(out_dir, "ldd_cut.csv"), "w", newline="",
              encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(ldd_rows[0]))
        w.writeheader()
        w.writerows(ldd_rows)

    # figure: build writes vs n
    fig, ax = plt.subplots(figsize=(6, 4))
    for algo, marker in (("cc-sublinear", "o"), ("bcc-sublinear", "s")):
        xs, ys = [], []
        for n in sizes:
            vals = [r["writes"] for r in rows if r["algo"] == algo and r["n"] == n]
            xs.append(n)
            ys.append(statistics.mean(vals))
        ax.plot(xs, ys, marker=marker, label=algo)
    ax.plot(list(sizes), [8 * n / k for n in sizes], "k--", label="8n/k budget")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("n")
    ax.set_ylabel("mean build writes")
    ax.legend()
    ax.set_title(f"oracle build writes (k={k}, max degree 3)")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "writes_vs_n.png"), dpi=120)
    plt.close(fig)

    # figure: LDD cut fraction vs beta
    fig, ax = plt.subplots(figsize=(6, 4))
    betas = sorted({r["beta"] for r in ldd_rows})
    means = [statistics.mean(r["cut_fraction"] for r in ldd_rows
                             if r["beta"] == b) for b in betas]
    ax.plot(betas, means, marker="o", label="measured")
    ax.plot(betas, [2 * b for b in betas], "k--", label="2*beta bound")
    ax.set_xlabel("beta")
    ax.set_ylabel("cut-edge fraction")
    ax.legend()
    ax.set_title(f"low-diameter decomposition quality (n={g_ldd.n})")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "ldd_cut_fraction.png"), dpi=120)
    plt.close(fig)

    # figure: rho read cost per k
    fig, ax = plt.subplots(figsize=(6, 4))
    ks = [4, 8]
    mean_reads = []
    for kk in ks:
        vals = []
        for seed in range(seeds):
            g = gen_random_bounded(64 * kk, 3, seed)
            d = build_decomposition(g, kk, seed, CostMeter())
            total = 0
            for v in range(g.n):
                m = CostMeter()
                rho(d, g, v, m)
                total += m.reads
            vals.append(total / g.n)
        mean_reads.append(statistics.mean(vals))
    ax.bar([str(kk) for kk in ks], mean_reads, width=0.5, label="mean reads per rho")
    ax.plot([str(kk) for kk in ks], [8 * kk for kk in ks], "k--", label="8k bound")
    ax.set_xlabel("k")
    ax.set_ylabel("reads")
    ax.legend()
    ax.set_title("rho query read cost (n = 64k)")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "rho_reads.png"), dpi=120)
    plt.close(fig)
