# SPDX-License-Identifier: Apache-2.0
#
# tlsm: two-level spatial multiplexing link simulator for mmWave backhaul
# Copyright (C) 2026 The tlsm authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Render figure analogues from harness CSV files.

    python -m tlsm.figures render --csv sweep.csv --kind capacity_vs_h --out fig.svg

Never recomputes physics; only the CSV contract is needed.
"""

import argparse
import csv
import math
import sys
from collections import OrderedDict
from pathlib import Path

KINDS = ("capacity_vs_h", "singular_vs_h", "capacity_vs_pt", "snr_vs_pt", "array_pattern")

SWEEP_COLUMNS = ("h_m", "pt_dbm", "beta2_rad", "capacity_bps_hz", "normalized_capacity", "n_streams")
PATTERN_COLUMNS = ("codeword", "beta_rad", "theta_rad", "normalized_gain")

UNITS = {
    "h_m": "height h [m]",
    "pt_dbm": "transmit power P_T [dBm]",
    "capacity_bps_hz": "capacity [bit/s/Hz]",
    "normalized_capacity": "normalized capacity",
    "sigma": "singular value",
    "snr_db": "subchannel SNR [dB]",
    "theta_rad": "elevation [rad]",
}


class SchemaError(Exception):
    """A CSV lacks a column the requested figure needs."""

    def __init__(self, path, column):
        super().__init__(f"{path}: missing column '{column}'")
        self.column = column


def read_table(path):
    """Return (header, rows) with numeric cells as floats. An empty file gives ([], [])."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, [])
        rows = [[float(x) for x in r] for r in reader if r]
    return header, rows


def channel_count(header, prefix):
    return sum(1 for h in header if h.startswith(prefix) and h[len(prefix):].isdigit())


def required_columns(kind, header):
    if kind == "array_pattern":
        return list(PATTERN_COLUMNS)
    cols = list(SWEEP_COLUMNS)
    nb = channel_count(header, "sigma_")
    for prefix in ("sigma_", "p_", "snr_db_"):
        cols += [f"{prefix}{i}" for i in range(1, nb + 1)]
    if nb == 0:
        cols.append("sigma_1")
    return cols


def check_schema(path, kind, header):
    for col in required_columns(kind, header):
        if col not in header:
            raise SchemaError(path, col)


def series_key(path, beta2, several_files):
    label = "" if math.isnan(beta2) else f"beta2 = {beta2 / math.pi:.3g} pi"
    if several_files:
        label = f"{Path(path).stem} {label}".strip()
    return label or Path(path).stem


def render(csv_paths, kind, out, title=None):
    if kind not in KINDS:
        raise ValueError(f"unknown figure kind '{kind}'")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    tables = []
    for p in csv_paths:
        header, rows = read_table(p)
        if header:
            check_schema(p, kind, header)
        tables.append((p, header, rows))

    polar = kind == "array_pattern"
    fig = plt.figure(figsize=(7, 5))
    ax = fig.add_subplot(projection="polar" if polar else None)

    for path, header, rows in tables:
        if not rows:
            continue
        col = {name: i for i, name in enumerate(header)}
        if polar:
            lobes = OrderedDict()
            for r in rows:
                lobes.setdefault(int(r[col["codeword"]]), []).append((r[col["theta_rad"]], r[col["normalized_gain"]]))
            for n, pts in lobes.items():
                ax.plot([t for t, _ in pts], [g for _, g in pts], linewidth=0.8, label=f"n = {n}")
            continue

        x_name = "h_m" if kind.endswith("_h") else "pt_dbm"
        groups = OrderedDict()
        for r in rows:
            groups.setdefault(series_key(path, r[col["beta2_rad"]], len(tables) > 1), []).append(r)
        for label, grp in groups.items():
            x = [r[col[x_name]] for r in grp]
            if kind.startswith("capacity"):
                norm = [r[col["normalized_capacity"]] for r in grp]
                y_name = "capacity_bps_hz" if all(math.isnan(v) for v in norm) else "normalized_capacity"
                ax.plot(x, [r[col[y_name]] for r in grp], label=label)
                ax.set_ylabel(UNITS[y_name])
            else:
                prefix = "sigma_" if kind == "singular_vs_h" else "snr_db_"
                for i in range(1, channel_count(header, prefix) + 1):
                    ax.plot(x, [r[col[f"{prefix}{i}"]] for r in grp], label=f"{label} #{i}")
                ax.set_ylabel(UNITS[prefix[:-1]])
        ax.set_xlabel(UNITS[x_name])

    if title:
        ax.set_title(title)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize="small")
    fig.savefig(out)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="tlsm.figures")
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one figure from harness CSVs")
    r.add_argument("--csv", action="append", required=True, help="input CSV (repeat for several systems)")
    r.add_argument("--kind", required=True, choices=KINDS)
    r.add_argument("--out", required=True, help="output image; format from the extension (svg, pdf, png)")
    r.add_argument("--title")
    args = parser.parse_args(argv)
    try:
        render(args.csv, args.kind, args.out, args.title)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
