//! Field sweeps and their file outputs: CSV tables, SVG line plots, JSON
//! config loading and a run manifest with SHA-256 digests.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::DotConfig;
use crate::error::{Error, Result};
use crate::hyperfine::{cm_factor, delta_m};
use crate::spectrum::{ground_state_at, mu_m};
use crate::spin::nmr_numeric;

/// Field grid of a sweep, in units of x = ω_c/ω₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            x_min: 0.05,
            x_max: 5.0,
            steps: 500,
        }
    }
}

impl SweepSpec {
    pub fn validate(self) -> Result<Self> {
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.x_min > 0.0 && self.x_min < self.x_max && self.x_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "sweep needs 0 < x_min < x_max (the bare line γ_n·B vanishes at x = 0), got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        Ok(self)
    }

    /// Uniform grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        let span = self.x_max - self.x_min;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.x_max
                } else {
                    self.x_min + span * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// One point of a sweep. Coupling columns are zero in singlet windows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub b_tesla: f64,
    pub m_abs: u32,
    pub s_total: u8,
    pub mu_m: f64,
    pub delta_l0sq: f64,
    pub delta_cm_l0sq: f64,
    pub a_mhz: f64,
    pub a_cm_mhz: f64,
    pub f0_mhz: f64,
    pub f_nmr_mhz: f64,
    pub f_nmr_ir_mhz: f64,
    pub shift: f64,
    pub shift_ir: f64,
}

pub const COLUMNS: [&str; 14] = [
    "x",
    "b_tesla",
    "m_abs",
    "s_total",
    "mu_m",
    "delta_l0sq",
    "delta_cm_l0sq",
    "a_mhz",
    "a_cm_mhz",
    "f0_mhz",
    "f_nmr_mhz",
    "f_nmr_ir_mhz",
    "shift",
    "shift_ir",
];

impl SweepRow {
    pub fn column(&self, name: &str) -> Option<f64> {
        Some(match name {
            "x" => self.x,
            "b_tesla" => self.b_tesla,
            "m_abs" => f64::from(self.m_abs),
            "s_total" => f64::from(self.s_total),
            "mu_m" => self.mu_m,
            "delta_l0sq" => self.delta_l0sq,
            "delta_cm_l0sq" => self.delta_cm_l0sq,
            "a_mhz" => self.a_mhz,
            "a_cm_mhz" => self.a_cm_mhz,
            "f0_mhz" => self.f0_mhz,
            "f_nmr_mhz" => self.f_nmr_mhz,
            "f_nmr_ir_mhz" => self.f_nmr_ir_mhz,
            "shift" => self.shift,
            "shift_ir" => self.shift_ir,
            _ => return None,
        })
    }

    fn same_branch(&self, other: &SweepRow) -> bool {
        self.m_abs == other.m_abs && self.s_total == other.s_total
    }
}

pub fn sweep_row(cfg: &DotConfig, x: f64) -> Result<SweepRow> {
    let b = cfg.b_field_from_ratio(x);
    let ground = ground_state_at(cfg, x);
    let f0 = cfg.gamma_n * b;
    let mu = mu_m(ground.m_abs, cfg.alpha_tilde);
    let mut row = SweepRow {
        x,
        b_tesla: b,
        m_abs: ground.m_abs,
        s_total: ground.s_total,
        mu_m: mu,
        delta_l0sq: 0.0,
        delta_cm_l0sq: 0.0,
        a_mhz: 0.0,
        a_cm_mhz: 0.0,
        f0_mhz: f0,
        f_nmr_mhz: f0,
        f_nmr_ir_mhz: f0,
        shift: 0.0,
        shift_ir: 0.0,
    };
    if ground.s_total == 1 {
        row.delta_l0sq = delta_m(cfg, x, ground.m_abs);
        row.delta_cm_l0sq = row.delta_l0sq * cm_factor(cfg, ground.m_abs);
        row.a_mhz = 0.5 * cfg.hyperfine_c * row.delta_l0sq;
        row.a_cm_mhz = 0.5 * cfg.hyperfine_c * row.delta_cm_l0sq;
        row.f_nmr_mhz = nmr_numeric(row.a_mhz, b, cfg)?.f_nmr;
        row.f_nmr_ir_mhz = nmr_numeric(row.a_cm_mhz, b, cfg)?.f_nmr;
        row.shift = (row.f_nmr_mhz - f0) / f0;
        row.shift_ir = (row.f_nmr_ir_mhz - f0) / f0;
    }
    Ok(row)
}

/// Evaluates every grid point (in parallel); rows come back in x order.
pub fn run_sweep(cfg: &DotConfig, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let spec = spec.validate()?;
    spec.grid()
        .into_par_iter()
        .map(|x| sweep_row(cfg, x).map_err(|e| Error::Sweep { x, source: Box::new(e) }))
        .collect()
}

/// Nine significant digits in scientific notation.
fn fmt_num(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn csv_string(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let fields = [
            fmt_num(r.x),
            fmt_num(r.b_tesla),
            r.m_abs.to_string(),
            r.s_total.to_string(),
            fmt_num(r.mu_m),
            fmt_num(r.delta_l0sq),
            fmt_num(r.delta_cm_l0sq),
            fmt_num(r.a_mhz),
            fmt_num(r.a_cm_mhz),
            fmt_num(r.f0_mhz),
            fmt_num(r.f_nmr_mhz),
            fmt_num(r.f_nmr_ir_mhz),
            fmt_num(r.shift),
            fmt_num(r.shift_ir),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_file(path, &csv_string(rows)?)
}

const SVG_W: f64 = 720.0;
const SVG_H: f64 = 440.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 56.0;
const TICKS: usize = 5;

/// Line plot of `y_column` against x, one polyline per ground-state window.
pub fn svg_string(rows: &[SweepRow], y_column: &str) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    if !COLUMNS.contains(&y_column) {
        return Err(Error::UnknownColumn(y_column.to_string()));
    }
    let ys: Vec<f64> = rows.iter().map(|r| r.column(y_column).unwrap_or(f64::NAN)).collect();
    let (x_lo, x_hi) = (rows[0].x, rows[rows.len() - 1].x);
    let mut y_lo = ys.iter().copied().fold(0.0, f64::min);
    let mut y_hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if y_hi <= y_lo {
        y_hi = y_lo + 1.0;
    }
    let pad = 0.05 * (y_hi - y_lo);
    y_hi += pad;
    if y_lo < 0.0 {
        y_lo -= pad;
    }
    let x_span = if x_hi > x_lo { x_hi - x_lo } else { 1.0 };
    let plot_w = SVG_W - MARGIN_L - MARGIN_R;
    let plot_h = SVG_H - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (x - x_lo) / x_span * plot_w;
    let py = |y: f64| MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, top, bottom) = (MARGIN_L, SVG_W - MARGIN_R, MARGIN_T, SVG_H - MARGIN_B);
    let _ = writeln!(
        s,
        r#"<path d="M{left:.2} {top:.2} V{bottom:.2} H{right:.2}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = x_lo + t * x_span;
        let xp = px(xv);
        let _ = writeln!(
            s,
            r#"<line x1="{xp:.2}" y1="{bottom:.2}" x2="{xp:.2}" y2="{:.2}" stroke="black"/><text x="{xp:.2}" y="{:.2}" text-anchor="middle">{xv:.3}</text>"#,
            bottom + 5.0,
            bottom + 20.0
        );
        let yv = y_lo + t * (y_hi - y_lo);
        let yp = py(yv);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{yp:.2}" x2="{left:.2}" y2="{yp:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 5.0,
            left - 8.0,
            yp + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">x = ω_c/ω₀</text>"#,
        MARGIN_L + plot_w / 2.0,
        SVG_H - 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{y_column}</text>"#,
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0
    );

    let mut start = 0;
    for end in 1..=rows.len() {
        if end == rows.len() || !rows[end].same_branch(&rows[start]) {
            let pts: Vec<String> = (start..end)
                .map(|i| format!("{:.2},{:.2}", px(rows[i].x), py(ys[i])))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline data-m="{}" data-s="{}" points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
                rows[start].m_abs,
                rows[start].s_total,
                pts.join(" ")
            );
            start = end;
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

pub fn emit_svg(rows: &[SweepRow], y_column: &str, path: &Path) -> Result<()> {
    write_file(path, &svg_string(rows, y_column)?)
}

/// On-disk config: [`DotConfig`] keys plus an optional `sweep` object.
#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    hbar_omega0: f64,
    mstar_ratio: f64,
    g_factor: f64,
    gamma_n: f64,
    gamma_e: f64,
    hyperfine_c: f64,
    alpha_tilde: f64,
    m_max: u32,
    sweep: SweepSpec,
}

impl Default for ConfigFile {
    fn default() -> Self {
        let d = DotConfig::default();
        Self {
            hbar_omega0: d.hbar_omega0,
            mstar_ratio: d.mstar_ratio,
            g_factor: d.g_factor,
            gamma_n: d.gamma_n,
            gamma_e: d.gamma_e,
            hyperfine_c: d.hyperfine_c,
            alpha_tilde: d.alpha_tilde,
            m_max: d.m_max,
            sweep: SweepSpec::default(),
        }
    }
}

/// Parses a JSON config string; absent keys take their defaults.
pub fn parse_config(text: &str, path: &Path) -> Result<(DotConfig, SweepSpec)> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let cfg = DotConfig {
        hbar_omega0: file.hbar_omega0,
        mstar_ratio: file.mstar_ratio,
        g_factor: file.g_factor,
        gamma_n: file.gamma_n,
        gamma_e: file.gamma_e,
        hyperfine_c: file.hyperfine_c,
        alpha_tilde: file.alpha_tilde,
        m_max: file.m_max,
    }
    .validate()?;
    Ok((cfg, file.sweep))
}

pub fn load_config(path: &Path) -> Result<(DotConfig, SweepSpec)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text, path)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestFile {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: DotConfig,
    pub grid: SweepSpec,
    pub files: Vec<ManifestFile>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything a `sweep` run writes, relative to an output directory.
#[derive(Debug, Clone)]
pub struct SweepOutputs {
    pub dir: PathBuf,
    pub manifest: RunManifest,
}

/// Writes `sweep.csv`, the requested SVG plots and `manifest.json` into `dir`.
pub fn write_sweep_outputs(
    cfg: &DotConfig,
    spec: &SweepSpec,
    rows: &[SweepRow],
    svg_columns: &[&str],
    dir: &Path,
) -> Result<SweepOutputs> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut outputs: Vec<(String, String)> = vec![("sweep.csv".into(), csv_string(rows)?)];
    for col in svg_columns {
        outputs.push((format!("{col}.svg"), svg_string(rows, col)?));
    }
    let mut files = Vec::new();
    for (name, body) in &outputs {
        write_file(&dir.join(name), body)?;
        files.push(ManifestFile {
            name: name.clone(),
            bytes: body.len(),
            sha256: sha256_hex(body.as_bytes()),
        });
    }
    let manifest = RunManifest {
        config: *cfg,
        grid: *spec,
        files,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_file(&dir.join("manifest.json"), &json)?;
    Ok(SweepOutputs {
        dir: dir.to_path_buf(),
        manifest,
    })
}
