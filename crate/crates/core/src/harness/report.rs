use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{EnsembleSummary, Stat};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};
use crate::theory::regime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportFiles {
    pub csv: PathBuf,
    pub band: PathBuf,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Band {
    q: usize,
    m: u32,
    delta: f64,
    regime: &'static str,
    theory_slope: f64,
    theory_slope_exact: Option<String>,
    log_power: u32,
    fitted_tail_slope: Option<f64>,
    nodes: u32,
    replicates: u32,
    protocol: String,
}

fn band(s: &EnsembleSummary) -> Result<Band> {
    let c = &s.config;
    let exact = parse_rational(&c.delta.to_string());
    let (regime_name, slope, slope_exact, log_power) = match exact {
        Some(d) => {
            let g = regime(c.q, d, c.m)?;
            (g.regime.name(), g.exponent.to_f64(), Some(g.exponent.to_string()), g.log_power)
        }
        None => {
            let g = regime(c.q, c.delta, c.m)?;
            (g.regime.name(), g.exponent, None, g.log_power)
        }
    };
    Ok(Band {
        q: c.q,
        m: c.m,
        delta: c.delta,
        regime: regime_name,
        theory_slope: slope,
        theory_slope_exact: slope_exact,
        log_power,
        fitted_tail_slope: s.tail_slope,
        nodes: c.nodes,
        replicates: c.replicates,
        protocol: format!(
            "T = {}, R = {}; the reference protocol uses R = 500 with T = 10^4 for Betti numbers and T = 10^5 for bounds",
            c.nodes, c.replicates
        ),
    })
}

fn log10_cell(v: f64) -> String {
    if v > 0.0 {
        format!("{:.6}", v.log10())
    } else {
        String::new()
    }
}

fn loglog_csv(s: &EnsembleSummary) -> String {
    let mut out = String::from("T,log10_T,betti_mean,upper_mean,lower_mean,log10_betti,log10_upper,log10_lower\n");
    for (j, &t) in s.checkpoints.iter().enumerate() {
        let (b, u, l) = (s.betti[j].mean, s.upper[j].mean, s.lower[j].mean);
        let _ = writeln!(
            out,
            "{t},{},{b},{u},{l},{},{},{}",
            log10_cell(t as f64),
            log10_cell(b),
            log10_cell(u),
            log10_cell(l)
        );
    }
    out
}

fn svg(s: &EnsembleSummary) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const PAD: f64 = 50.0;
    let curves: [(&str, &[Stat], &str); 3] = [
        ("betti", &s.betti, "#1f77b4"),
        ("upper", &s.upper, "#d62728"),
        ("lower", &s.lower, "#2ca02c"),
    ];
    let pts: Vec<(f64, f64)> = curves
        .iter()
        .flat_map(|(_, stats, _)| s.checkpoints.iter().zip(stats.iter()))
        .filter(|(&t, st)| t > 0 && st.mean > 0.0)
        .map(|(&t, st)| ((t as f64).log10(), st.mean.log10()))
        .collect();
    let span = |f: fn(&(f64, f64)) -> f64| {
        let lo = pts.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi > lo {
            (lo, hi)
        } else {
            (lo.min(0.0), lo.max(0.0) + 1.0)
        }
    };
    let (x0, x1) = span(|p| p.0);
    let (y0, y1) = span(|p| p.1);
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let py = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{PAD}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{ly}\" text-anchor=\"middle\" font-size=\"12\">log10 T</text>\n",
        b = H - PAD,
        r = W - PAD,
        cx = W / 2.0,
        ly = H - 15.0,
    );
    for (i, (name, stats, color)) in curves.iter().enumerate() {
        let line: Vec<String> = s
            .checkpoints
            .iter()
            .zip(stats.iter())
            .filter(|(&t, st)| t > 0 && st.mean > 0.0)
            .map(|(&t, st)| format!("{:.2},{:.2}", px((t as f64).log10()), py(st.mean.log10())))
            .collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            line.join(" ")
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\" font-size=\"12\">{name}</text>",
            PAD + 10.0,
            PAD + 15.0 * (i as f64 + 1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf> {
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `loglog.csv`, `band.json` and optionally `curves.svg` into `dir`.
pub fn report(summary: &EnsembleSummary, dir: &Path, with_svg: bool) -> Result<ReportFiles> {
    if summary.is_empty() {
        return Err(Error::EmptySummary);
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let band = band(summary)?;
    Ok(ReportFiles {
        csv: write(dir.join("loglog.csv"), &loglog_csv(summary))?,
        band: write(dir.join("band.json"), &serde_json::to_string_pretty(&band)?)?,
        svg: if with_svg {
            Some(write(dir.join("curves.svg"), &svg(summary))?)
        } else {
            None
        },
    })
}
