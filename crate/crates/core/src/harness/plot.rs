//! Stand-alone matplotlib script that plots a sweep CSV.

/// Presentation options for [`emit_plot_script`].
#[derive(Debug, Clone, PartialEq)]
pub struct PlotLayout {
    pub title: String,
    pub x_label: String,
    pub log_y: bool,
    /// Image written by the script, relative to where it runs.
    pub image: String,
}

impl Default for PlotLayout {
    fn default() -> Self {
        PlotLayout {
            title: "Secrecy outage probability".into(),
            x_label: String::new(),
            log_y: true,
            image: "sweep.png".into(),
        }
    }
}

fn py_str(s: &str) -> String {
    format!("{s:?}")
}

/// Python source that reads `csv_path` and draws one curve per
/// (scenario, method): lines for analytic rows, markers with confidence bars
/// for Monte Carlo rows. Values of zero are dropped on a log axis.
pub fn emit_plot_script(csv_path: &str, layout: &PlotLayout) -> String {
    format!(
        r#"#!/usr/bin/env python3
import csv
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = {csv}
LOG_Y = {log_y}

series = defaultdict(list)
axis_name = None
with open(CSV_PATH, newline="") as fh:
    for row in csv.DictReader(fh):
        axis_name = row["axis_name"]
        key = (row["duplex"], row["ed_model"], row["method"])
        series[key].append(
            (float(row["axis_value"]), float(row["value"]), float(row["ci_low"]), float(row["ci_high"]))
        )

fig, ax = plt.subplots(figsize=(6.4, 4.8))
for (duplex, ed_model, method), pts in sorted(series.items()):
    pts.sort()
    if LOG_Y:
        pts = [p for p in pts if p[1] > 0]
    if not pts:
        continue
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    label = f"{{duplex.upper()}} {{ed_model}} ({{method.replace('_', ' ')}})"
    if method == "monte_carlo":
        err = [[y - p[2] for y, p in zip(ys, pts)], [p[3] - y for y, p in zip(ys, pts)]]
        ax.errorbar(xs, ys, yerr=err, fmt="o", ms=4, capsize=2, label=label)
    else:
        ax.plot(xs, ys, "-", label=label)

if LOG_Y:
    ax.set_yscale("log")
ax.set_xlabel({x_label} or axis_name)
ax.set_ylabel("secrecy outage probability")
ax.set_title({title})
ax.grid(True, which="both", alpha=0.3)
ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig({image}, dpi=150)
"#,
        csv = py_str(csv_path),
        log_y = if layout.log_y { "True" } else { "False" },
        x_label = py_str(&layout.x_label),
        title = py_str(&layout.title),
        image = py_str(&layout.image),
    )
}
