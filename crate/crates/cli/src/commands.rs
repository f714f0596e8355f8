use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use ymqm_core::assembly::{
    cancellation_table, default_spectral_bases, leading_total, z_compare, z_spectral_assembled, z_tf,
    z_with_asymptotic, AsymptoticTotal, CancelTable, ChannelModel, Comparison, LeadingTotal, SpectralZ, TfValue, ZMode,
    KMAX_CEILING,
};
use ymqm_core::central::{
    classical_phase_volume, imn_value, phase_volume_doubling_increment, phase_volume_monte_carlo, Correction,
};
use ymqm_core::exactalg::fmt_rational;
use ymqm_core::quad::QuadOptions;
use ymqm_core::spectral::{monte_carlo_imn, quad_imn, BasisKind, DEFAULT_MEMORY_BUDGET};
use ymqm_core::wk::{quartic_decomposition, verify_bloch, wk_sequence, BlochReport, ImnDecomposition, PotentialSpec};
use ymqm_core::Error;

use crate::config::{Format, RunConfig};
use crate::report::Report;
use crate::{Command, EXIT_OK, EXIT_VERIFY};

/// Rendered output of one command and its exit code.
pub struct Outcome {
    pub text: String,
    pub out: Option<PathBuf>,
    pub code: i32,
}

impl Outcome {
    pub fn emit(&self) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, &self.text)?,
            None => print!("{}", self.text),
        }
        Ok(())
    }
}

fn render<T: Serialize>(report: &Report<T>, csv: impl FnOnce(&T) -> String) -> String {
    match report.config.format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv(&csv(&report.result)),
    }
}

fn pick<T: std::str::FromStr>(cfg: &mut RunConfig, key: &str, flag: Option<T>, default: T) -> Result<T, Error>
where
    T: ToString + Clone,
{
    let v = match flag {
        Some(v) => v,
        None => cfg.option_parsed(key)?.unwrap_or(default),
    };
    cfg.options.insert(key.to_string(), v.to_string());
    Ok(v)
}

pub fn dispatch(cmd: &Command, cfg: &mut RunConfig) -> Result<Outcome, Error> {
    match cmd {
        Command::Expand { potential } => {
            let potential = pick(cfg, "potential", potential.clone(), "quartic-xy".to_string())?;
            let fixture_root = cfg.out.clone();
            let (report, code) = expand(cfg, &potential)?;
            let text = render(&report, expand_csv);
            if let Some(root) = fixture_root {
                write_fixtures(&root, &report.result)?;
            }
            Ok(Outcome { text, out: None, code })
        }
        Command::CancelCheck { model, exploratory } => {
            let model = pick(cfg, "model", model.clone(), "adiabatic".to_string())?;
            let exploratory = pick(cfg, "exploratory", exploratory.then_some(true), false)?;
            let report = cancel_check(cfg, &model, exploratory)?;
            let code = if report.result.all_pass { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome { text: render(&report, CancelTable::to_csv), out: cfg.out.clone(), code })
        }
        Command::Z { mode, grids, gate, tolerance, budget_mib } => {
            let mode = pick(cfg, "mode", mode.clone(), "tf".to_string())?;
            let gate = pick(cfg, "gate", *gate, 1e-3)?;
            let tolerance = pick(cfg, "tolerance", *tolerance, 0.10)?;
            let budget = pick(cfg, "budget_mib", *budget_mib, DEFAULT_MEMORY_BUDGET >> 20)?;
            let grids = if grids.is_empty() {
                cfg.option("grid").map(|g| g.split(',').map(str::to_string).collect()).unwrap_or_default()
            } else {
                grids.clone()
            };
            if !grids.is_empty() {
                cfg.options.insert("grid".into(), grids.join(","));
            }
            let bases = parse_grids(&grids, cfg)?;
            let report = z(cfg, mode.parse()?, &bases, gate, tolerance, budget << 20)?;
            let code = match &report.result {
                ZResult::Spectral(s) if !s.gate_passed => EXIT_VERIFY,
                ZResult::Compare(c) if !c.within_tolerance => EXIT_VERIFY,
                _ => EXIT_OK,
            };
            Ok(Outcome { text: render(&report, ZResult::to_csv), out: cfg.out.clone(), code })
        }
        Command::Imn { m, n, samples } => {
            let samples = pick(cfg, "samples", *samples, 100_000)?;
            let pairs = match (m.or(cfg.option_parsed("m")?), n.or(cfg.option_parsed("n")?)) {
                (Some(m), Some(n)) => vec![(m, n)],
                (None, None) => vec![(1, 0), (2, 1), (0, 0)],
                _ => return Err(Error::InvalidArgument("give both --m and --n, or neither".into())),
            };
            let report = imn_table(cfg, &pairs, samples)?;
            Ok(Outcome { text: render(&report, ImnTable::to_csv), out: cfg.out.clone(), code: EXIT_OK })
        }
        Command::PhaseVolume { e, l, doublings, samples } => {
            let e = pick(cfg, "E", *e, 0.5)?;
            let l = pick(cfg, "L", *l, 10.0)?;
            let doublings = pick(cfg, "doublings", *doublings, 4)?;
            let samples = pick(cfg, "samples", *samples, 100_000)?;
            let report = phase_volume(cfg, e, l, doublings, samples)?;
            Ok(Outcome { text: render(&report, PhaseVolumeTable::to_csv), out: cfg.out.clone(), code: EXIT_OK })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpandResult {
    pub potential: String,
    pub kmax: u32,
    /// W_0 .. W_kmax in canonical text form.
    pub orders: Vec<String>,
    /// I_mn decompositions, quartic potential only.
    pub decompositions: Vec<ImnDecomposition>,
    pub bloch: BlochReport,
}

pub fn expand(cfg: &RunConfig, potential: &str) -> Result<(Report<ExpandResult>, i32), Error> {
    if cfg.kmax > KMAX_CEILING {
        return Err(Error::InvalidArgument(format!("kmax {} above the ceiling {KMAX_CEILING}", cfg.kmax)));
    }
    let spec = PotentialSpec::from_slug(potential)?;
    let seq = wk_sequence(&spec, cfg.kmax as usize)?;
    let bloch = verify_bloch(&seq);
    let decompositions = if potential == "quartic-xy" {
        (0..=seq.kmax()).map(|k| quartic_decomposition(&seq, k)).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let code = if bloch.passed() { EXIT_OK } else { EXIT_VERIFY };
    let result = ExpandResult {
        potential: potential.to_string(),
        kmax: cfg.kmax,
        orders: seq.orders.iter().map(|w| w.to_string()).collect(),
        decompositions,
        bloch,
    };
    Ok((Report::new("expand", cfg, result), code))
}

fn expand_csv(r: &ExpandResult) -> String {
    let mut s = String::from("order,polynomial\n");
    for (k, w) in r.orders.iter().enumerate() {
        let _ = writeln!(s, "{k},\"{w}\"");
    }
    s
}

/// `<root>/wk/<potential>/W<k>.txt`, plus `<root>/imn/<potential>/W<k>.csv`.
pub fn write_fixtures(root: &std::path::Path, r: &ExpandResult) -> Result<(), Error> {
    let wk = root.join("wk").join(&r.potential);
    std::fs::create_dir_all(&wk)?;
    for (k, w) in r.orders.iter().enumerate() {
        std::fs::write(wk.join(format!("W{k}.txt")), format!("{w}\n"))?;
    }
    if !r.decompositions.is_empty() {
        let imn = root.join("imn").join(&r.potential);
        std::fs::create_dir_all(&imn)?;
        for d in &r.decompositions {
            std::fs::write(imn.join(format!("W{}.csv", d.order)), d.to_csv())?;
        }
    }
    Ok(())
}

pub fn cancel_check(cfg: &RunConfig, model: &str, exploratory: bool) -> Result<Report<CancelTable>, Error> {
    let model: ChannelModel = model.parse()?;
    let table = cancellation_table(cfg.kmax, model, exploratory)?;
    Ok(Report::new("cancel-check", cfg, table))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "kebab-case")]
pub enum ZResult {
    Tf(TfValue),
    Leading(LeadingTotal),
    WithAsymptotic(AsymptoticTotal),
    Spectral(SpectralZ),
    Compare(Comparison),
}

impl ZResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k},{v}");
        };
        match self {
            ZResult::Tf(v) => {
                kv("quantity", "value".into());
                kv("lambda_sq", num(v.lambda_sq));
                kv("K", num(v.k_prefactor));
                kv("Z_K_units", num(v.k_units));
                kv("Z", num(v.absolute));
            }
            ZResult::Leading(l) => leading_rows(l, &mut kv),
            ZResult::WithAsymptotic(a) => {
                leading_rows(&a.leading, &mut kv);
                kv("channel_series_K_units", num(a.channel.series.partial_sum));
                kv("channel_optimal_index", a.channel.optimal_index.to_string());
                kv("central_series_K_units", num(a.central.series.partial_sum));
                kv("central_log_q_K_units", num(a.central_log_q));
                kv("error_estimate_K_units", num(a.error_estimate));
                kv("Z_K_units", num(a.k_units));
                kv("Z", num(a.absolute));
            }
            ZResult::Spectral(sp) => spectral_rows(sp, &mut kv),
            ZResult::Compare(c) => {
                spectral_rows(&c.spectral, &mut kv);
                kv("method", "Z,error_band,relative_deviation".into());
                for r in &c.rows {
                    kv(&r.method, format!("{:?},{:?},{:?}", r.absolute, r.error_band, r.relative_deviation));
                }
                for (m, why) in &c.skipped {
                    kv(&format!("skipped:{m}"), format!("\"{why}\""));
                }
                kv("tolerance", num(c.tolerance));
                kv("within_tolerance", c.within_tolerance.to_string());
            }
        }
        s
    }
}

fn leading_rows(l: &LeadingTotal, kv: &mut impl FnMut(&str, String)) {
    kv("quantity", "value".into());
    kv("ln_Q_coefficient", fmt_rational(&l.ln_q_coefficient));
    for r in &l.powers {
        kv(&format!("hgtQ^{}", r.order), fmt_rational(&r.total));
    }
    kv("constant_K_units", num(l.constant_k_units));
    kv("dominant_K_units", num(l.dominant_k_units));
    kv("dominant", num(l.dominant_absolute));
    kv("numeric_K_units", num(l.numeric_k_units));
    kv("suppression", num(l.suppression));
}

fn spectral_rows(sp: &SpectralZ, kv: &mut impl FnMut(&str, String)) {
    kv("basis", "Z,tail,levels,e_cut".into());
    for (b, z) in sp.converged.bases.iter().zip(&sp.converged.z) {
        kv(&basis_label(b), format!("{:?},{:?},{},{:?}", z.value, z.tail, z.levels_used, z.e_cut));
    }
    kv("relative_difference", num(sp.converged.relative_difference));
    kv("gate_passed", sp.gate_passed.to_string());
    kv("tail_fraction", num(sp.tail_fraction));
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn basis_label(b: &BasisKind) -> String {
    match b {
        BasisKind::Grid { spacing, extent, vcut } => format!("grid:{spacing}:{extent}:{vcut}"),
        BasisKind::OscillatorProduct { size, omega } => format!("oscillator:{size}:{omega}"),
    }
}

fn parse_grids(grids: &[String], cfg: &RunConfig) -> Result<Vec<BasisKind>, Error> {
    if grids.is_empty() {
        return Ok(default_spectral_bases(cfg.g, cfg.hbar));
    }
    grids
        .iter()
        .map(|s| {
            let v: Vec<f64> = s
                .split(':')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("grid `{s}`: expected spacing:extent:vcut"))))
                .collect::<Result<_, _>>()?;
            match v[..] {
                [spacing, extent, vcut] => Ok(BasisKind::Grid { spacing, extent, vcut }),
                _ => Err(Error::Parse(format!("grid `{s}`: expected spacing:extent:vcut"))),
            }
        })
        .collect()
}

pub fn z(
    cfg: &RunConfig,
    mode: ZMode,
    bases: &[BasisKind],
    gate: f64,
    tolerance: f64,
    budget: usize,
) -> Result<Report<ZResult>, Error> {
    let p = cfg.params()?;
    let result = match mode {
        ZMode::Tf => ZResult::Tf(z_tf(&p)?),
        ZMode::Leading => ZResult::Leading(leading_total(&p)?),
        ZMode::WithAsymptotic => ZResult::WithAsymptotic(z_with_asymptotic(&p, cfg.precision)?),
        ZMode::Spectral => ZResult::Spectral(z_spectral_assembled(p.g, p.hbar, p.t, bases, budget, gate)?),
        ZMode::Compare => {
            z_tf(&p)?;
            let sp = z_spectral_assembled(p.g, p.hbar, p.t, bases, budget, gate)?;
            ZResult::Compare(z_compare(&p, sp, tolerance, cfg.precision)?)
        }
    };
    Ok(Report::new("z", cfg, result))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImnRow {
    pub m: u32,
    pub n: u32,
    pub closed_form: f64,
    pub corrected: f64,
    pub quadrature: f64,
    pub quadrature_error: f64,
    pub monte_carlo: f64,
    pub monte_carlo_se: f64,
    pub rel_closed: f64,
    pub rel_corrected: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImnTable {
    pub rows: Vec<ImnRow>,
}

impl ImnTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "m,n,closed_form,corrected,quadrature,quadrature_error,monte_carlo,monte_carlo_se,rel_closed,rel_corrected\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
                r.m,
                r.n,
                r.closed_form,
                r.corrected,
                r.quadrature,
                r.quadrature_error,
                r.monte_carlo,
                r.monte_carlo_se,
                r.rel_closed,
                r.rel_corrected
            );
        }
        s
    }
}

pub fn imn_table(cfg: &RunConfig, pairs: &[(u32, u32)], samples: u64) -> Result<Report<ImnTable>, Error> {
    let p = cfg.params()?;
    let opts = QuadOptions::tight();
    let mut rows = Vec::new();
    for &(m, n) in pairs {
        if m < n {
            return Err(Error::InvalidArgument(format!("I_mn needs m ≥ n, got m = {m}, n = {n}")));
        }
        let closed_form = imn_value(m, n, &p, Correction::Off)?;
        let corrected = imn_value(m, n, &p, Correction::On)?;
        let quadrature = quad_imn(m, n, &p, &opts)?;
        let (monte_carlo, monte_carlo_se) = monte_carlo_imn(m, n, &p, samples, cfg.seed);
        rows.push(ImnRow {
            m,
            n,
            closed_form,
            corrected,
            quadrature,
            quadrature_error: opts.rel_tol * quadrature.abs(),
            monte_carlo,
            monte_carlo_se,
            rel_closed: (closed_form - quadrature) / quadrature,
            rel_corrected: (corrected - quadrature) / quadrature,
        });
    }
    Ok(Report::new("imn", cfg, ImnTable { rows }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseVolumeRow {
    #[serde(rename = "L")]
    pub l: f64,
    pub volume: f64,
    pub monte_carlo: f64,
    pub monte_carlo_se: f64,
    /// Volume minus the previous row's.
    pub increment: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseVolumeTable {
    #[serde(rename = "E")]
    pub e: f64,
    pub g: f64,
    pub rows: Vec<PhaseVolumeRow>,
    /// Large-L doubling increment 16π√(2E)/g ln 2.
    pub asymptotic_increment: f64,
}

impl PhaseVolumeTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("L,volume,monte_carlo,monte_carlo_se,increment,asymptotic_increment\n");
        for r in &self.rows {
            let inc = r.increment.map(|v| format!("{v:?}")).unwrap_or_default();
            let _ = writeln!(
                s,
                "{:?},{:?},{:?},{:?},{inc},{:?}",
                r.l, r.volume, r.monte_carlo, r.monte_carlo_se, self.asymptotic_increment
            );
        }
        s
    }
}

pub fn phase_volume(
    cfg: &RunConfig,
    e: f64,
    l: f64,
    doublings: u32,
    samples: u64,
) -> Result<Report<PhaseVolumeTable>, Error> {
    let g = cfg.g;
    let mut rows: Vec<PhaseVolumeRow> = Vec::new();
    for i in 0..=doublings {
        let li = l * f64::from(2u32.pow(i));
        let volume = classical_phase_volume(e, li, g)?;
        let (monte_carlo, monte_carlo_se) = phase_volume_monte_carlo(e, li, g, samples, cfg.seed + u64::from(i))?;
        let increment = rows.last().map(|r| volume - r.volume);
        rows.push(PhaseVolumeRow { l: li, volume, monte_carlo, monte_carlo_se, increment });
    }
    let table = PhaseVolumeTable { e, g, rows, asymptotic_increment: phase_volume_doubling_increment(e, g) };
    Ok(Report::new("phase-volume", cfg, table))
}
