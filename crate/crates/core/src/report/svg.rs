//! Static SVG charts for the report bundle: a window time series with
//! standard-error bars for passed vs failed bills, and a relative-difference
//! histogram. Hand-emitted markup with fixed-precision coordinates so
//! identical runs produce identical bytes.

use std::fmt::Write as _;

use crate::analysis::ConfigResult;
use crate::report::fmt_half_life;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PASSED_COLOR: &str = "#e07b39";
const FAILED_COLOR: &str = "#3a6ea5";
const AXIS_COLOR: &str = "#444444";
const GRID_COLOR: &str = "#dddddd";

struct Scale {
    domain_lo: f64,
    domain_hi: f64,
    range_lo: f64,
    range_hi: f64,
}

impl Scale {
    fn map(&self, v: f64) -> f64 {
        let span = self.domain_hi - self.domain_lo;
        let frac = if span == 0.0 {
            0.5
        } else {
            (v - self.domain_lo) / span
        };
        self.range_lo + frac * (self.range_hi - self.range_lo)
    }
}

fn c(v: f64) -> String {
    format!("{v:.2}")
}

fn svg_open(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">{title}</text>",
        c(WIDTH / 2.0)
    );
}

fn axes(out: &mut String, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{AXIS_COLOR}\"/>",
        c(x0),
        c(y0),
        c(x1),
        c(y0)
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{AXIS_COLOR}\"/>",
        c(x0),
        c(y0),
        c(x0),
        c(y1)
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{x_label}</text>",
        c((x0 + x1) / 2.0),
        c(HEIGHT - 14.0)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{y_label}</text>",
        c((y0 + y1) / 2.0),
        c((y0 + y1) / 2.0)
    );
}

fn y_ticks(out: &mut String, scale: &Scale, n: usize) {
    for i in 0..=n {
        let v = scale.domain_lo + (scale.domain_hi - scale.domain_lo) * i as f64 / n as f64;
        let y = scale.map(v);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{GRID_COLOR}\"/>",
            c(MARGIN_LEFT),
            c(y),
            c(WIDTH - MARGIN_RIGHT),
            c(y)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            c(MARGIN_LEFT - 6.0),
            c(y + 4.0),
            format_tick(v)
        );
    }
}

fn format_tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 0.01 {
        format!("{v:.3}")
    } else {
        format!("{v:.1e}")
    }
}

/// Mean score per window for passed and failed bills, with standard-error
/// bars, mirroring the pipeline's headline time-series figures.
pub fn window_timeseries(config: &ConfigResult) -> String {
    let title = format!(
        "Bill-level {} ({}, half-life {} months)",
        config.measure,
        config.aggregation,
        fmt_half_life(config.half_life)
    );
    let mut out = String::new();
    svg_open(&mut out, &title);

    let windows = &config.windows;
    let mut y_max = 0.0f64;
    for w in windows {
        for (mean, se) in [(w.mean_passed, w.se_passed), (w.mean_failed, w.se_failed)] {
            if let Some(m) = mean {
                y_max = y_max.max(m + se.unwrap_or(0.0));
            }
        }
    }
    if y_max <= 0.0 {
        y_max = 1.0;
    }
    let x_scale = Scale {
        domain_lo: 0.0,
        domain_hi: (windows.len().max(2) - 1) as f64,
        range_lo: MARGIN_LEFT + 12.0,
        range_hi: WIDTH - MARGIN_RIGHT - 12.0,
    };
    let y_scale = Scale {
        domain_lo: 0.0,
        domain_hi: y_max * 1.08,
        range_lo: HEIGHT - MARGIN_BOTTOM,
        range_hi: MARGIN_TOP,
    };

    y_ticks(&mut out, &y_scale, 5);
    axes(
        &mut out,
        "window start",
        &format!("mean {} score", config.measure),
    );

    // X tick labels on up to eight windows.
    let step = (windows.len() / 8).max(1);
    for w in windows.iter().step_by(step) {
        let x = x_scale.map(w.window_index as f64);
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            c(x),
            c(HEIGHT - MARGIN_BOTTOM + 16.0),
            w.window_start
        );
    }

    for (passed_side, color) in [(true, PASSED_COLOR), (false, FAILED_COLOR)] {
        for w in windows {
            let (mean, se) = if passed_side {
                (w.mean_passed, w.se_passed)
            } else {
                (w.mean_failed, w.se_failed)
            };
            let Some(m) = mean else { continue };
            let x = x_scale.map(w.window_index as f64);
            let y = y_scale.map(m);
            if let Some(e) = se {
                let y_lo = y_scale.map(m - e);
                let y_hi = y_scale.map(m + e);
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"1\"/>",
                    c(x), c(y_lo), c(x), c(y_hi)
                );
            }
            if passed_side {
                // Cross marker.
                let _ = writeln!(
                    out,
                    "<path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                    c(x - 3.5), c(y - 3.5), c(x + 3.5), c(y + 3.5),
                    c(x - 3.5), c(y + 3.5), c(x + 3.5), c(y - 3.5)
                );
            } else {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>",
                    c(x),
                    c(y)
                );
            }
        }
    }

    // Legend.
    let lx = WIDTH - MARGIN_RIGHT - 150.0;
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{PASSED_COLOR}\">x passed</text>",
        c(lx),
        c(MARGIN_TOP + 4.0)
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{FAILED_COLOR}\">o failed</text>",
        c(lx + 80.0),
        c(MARGIN_TOP + 4.0)
    );

    out.push_str("</svg>\n");
    out
}

/// Histogram of per-window relative differences.
pub fn histogram(config: &ConfigResult) -> String {
    let title = format!(
        "Relative differences: {} ({}, half-life {} months)",
        config.measure,
        config.aggregation,
        fmt_half_life(config.half_life)
    );
    let mut out = String::new();
    svg_open(&mut out, &title);

    let bins = &config.histogram.bins;
    let max_count = bins.iter().map(|b| b.count).max().unwrap_or(1).max(1);
    let bin_width = config.histogram.bin_width;
    let (domain_lo, domain_hi) = match (bins.first(), bins.last()) {
        (Some(first), Some(last)) => (first.lo, last.lo + bin_width),
        _ => (0.0, 1.0),
    };
    let x_scale = Scale {
        domain_lo,
        domain_hi,
        range_lo: MARGIN_LEFT,
        range_hi: WIDTH - MARGIN_RIGHT,
    };
    let y_scale = Scale {
        domain_lo: 0.0,
        domain_hi: max_count as f64 * 1.05,
        range_lo: HEIGHT - MARGIN_BOTTOM,
        range_hi: MARGIN_TOP,
    };

    y_ticks(&mut out, &y_scale, 5);
    axes(&mut out, "relative difference", "window count");

    for bin in bins {
        let x0 = x_scale.map(bin.lo);
        let x1 = x_scale.map(bin.lo + bin_width);
        let y = y_scale.map(bin.count as f64);
        let base = y_scale.map(0.0);
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{FAILED_COLOR}\" stroke=\"#ffffff\" stroke-width=\"0.5\"/>",
            c(x0),
            c(y),
            c((x1 - x0).max(0.0)),
            c((base - y).max(0.0))
        );
    }

    // A few x tick labels.
    let n_ticks = 6;
    for i in 0..=n_ticks {
        let v = domain_lo + (domain_hi - domain_lo) * i as f64 / n_ticks as f64;
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            c(x_scale.map(v)),
            c(HEIGHT - MARGIN_BOTTOM + 16.0),
            format_tick(v)
        );
    }

    out.push_str("</svg>\n");
    out
}
