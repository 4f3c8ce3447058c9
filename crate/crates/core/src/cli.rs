//! Command-line interface: config-driven runs with JSON reports and CSV
//! profiles.
//!
//! Exit codes: 0 pass, 1 fail (tolerances unmet), 2 configuration or
//! precondition error, 3 numerical non-convergence flag.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{ProbeKind, ResolvedConfig, RunConfig};
use crate::coverings::{
    max_levels_for, verify_partition, AlphaLattice, DyadicFamily, LatticeIndex, PartitionFamily,
    VerifyOptions, WindowProfile,
};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fl1::Fl1Options;
use crate::fourier::{fourier_inverse, lp_norm};
use crate::grid::{Grid, Side};
use crate::harness::{
    bernstein_probe, brute_force_overlap_set, class_separation_report, convolution_probe,
    criterion_doubling, dilation_factor, dilation_overlap_set, family_for, operator_norm_probe,
    plancherel_probe,
};
use crate::io::{read_amsf1, write_amsf1};
use crate::report::{format_float, CsvTable, Gate, Report};
use crate::spaces::{
    alpha_mod_norm_profile, besov_norm, mikhlin_check, symbol_class_norm, SpaceSpec,
};
use crate::symbols::{
    apply_unimodular, phase_remainder_fl1, remainder_class_bound, SecondDerivEval, SymbolSpec,
};

#[derive(Parser)]
#[command(
    name = "alphamod",
    version,
    about = "Frequency partitions of unity, alpha-modulation norms, and unimodular multiplier probes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config document (defaults apply when omitted).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// RNG base seed (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads: a count or "auto".
    #[arg(long, global = true, default_value = "auto")]
    threads: String,
    /// Report formats, comma separated: json,csv.
    #[arg(long, global = true, value_delimiter = ',')]
    format: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Frequency partition construction and certification.
    Partition {
        #[command(subcommand)]
        sub: PartitionCmd,
    },
    /// Norm evaluation of sampled functions.
    Norm {
        #[command(subcommand)]
        sub: NormCmd,
    },
    /// Unimodular multiplier application.
    Multiplier {
        #[command(subcommand)]
        sub: MultiplierCmd,
    },
    /// Symbol-class profiling.
    Symbol {
        #[command(subcommand)]
        sub: SymbolCmd,
    },
    /// Estimate and boundedness probes.
    Theorem {
        #[command(subcommand)]
        sub: TheoremCmd,
    },
    /// The class-separation example.
    Counterexample,
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Build the family and certify every partition invariant.
    Verify,
}

#[derive(Subcommand)]
enum NormCmd {
    /// Compute the configured norm of an AMSF1 function.
    Compute {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum MultiplierCmd {
    /// Apply exp(i mu(D)) to an AMSF1 function.
    Apply {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum SymbolCmd {
    /// Windowed class norms and the pointwise decay check of the symbol's
    /// second derivatives.
    Class,
}

#[derive(Subcommand)]
enum TheoremCmd {
    /// Run the probe selected by the config.
    Check,
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    if cli.threads != "auto" {
        let k: usize = cli
            .threads
            .parse()
            .map_err(|_| Error::Config(format!("bad --threads value {:?}", cli.threads)))?;
        // Ignore "already initialized" in repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let raw = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let mut resolved = raw.resolve()?;
    if let Some(seed) = cli.seed {
        resolved.probe.seed = seed;
    }
    if let Some(out) = &cli.out {
        resolved.output.dir = out.display().to_string();
    }
    if let Some(formats) = &cli.format {
        resolved.output.formats = formats.clone();
    }
    let out_dir = PathBuf::from(&resolved.output.dir);
    std::fs::create_dir_all(&out_dir)?;

    let started = std::time::Instant::now();
    let mut report = match &cli.command {
        Command::Partition { sub: PartitionCmd::Verify } => {
            cmd_partition_verify(&resolved, &out_dir)?
        }
        Command::Norm { sub: NormCmd::Compute { input } } => {
            cmd_norm_compute(&resolved, input, &out_dir)?
        }
        Command::Multiplier { sub: MultiplierCmd::Apply { input, output } } => {
            cmd_multiplier_apply(&resolved, input, output)?
        }
        Command::Symbol { sub: SymbolCmd::Class } => cmd_symbol_class(&resolved, &out_dir)?,
        Command::Theorem { sub: TheoremCmd::Check } => cmd_theorem_check(&resolved, &out_dir)?,
        Command::Counterexample => cmd_counterexample(&resolved, &out_dir)?,
    };
    report.finalize(started.elapsed().as_millis());

    if resolved.output.formats.iter().any(|f| f == "json") {
        report.write_json(&out_dir.join("report.json"))?;
        std::fs::write(
            out_dir.join("resolved_config.json"),
            serde_json::to_string_pretty(&resolved.as_value())
                .map_err(|e| Error::Format(e.to_string()))?
                + "\n",
        )?;
    }
    for g in &report.gates {
        println!(
            "gate {}: {} ({} vs {})",
            g.name,
            if g.pass { "PASS" } else { "FAIL" },
            format_float(g.value),
            format_float(g.threshold)
        );
    }
    println!("verdict: {:?}", report.verdict);
    Ok(report.exit_code())
}

fn want_csv(cfg: &ResolvedConfig) -> bool {
    cfg.output.formats.iter().any(|f| f == "csv")
}

fn family_from_config(cfg: &ResolvedConfig) -> Result<(PartitionFamily, WindowProfile)> {
    let profile = cfg.profile.to_profile()?;
    let lattice = AlphaLattice::build(cfg.alpha, cfg.n, cfg.xi_max)?;
    let grid = Grid::new(cfg.n, cfg.samples, cfg.period, Side::Frequency)?;
    let fam = PartitionFamily::build(lattice, grid, profile)?;
    Ok((fam, profile))
}

fn cmd_partition_verify(cfg: &ResolvedConfig, out_dir: &Path) -> Result<Report> {
    if cfg.alpha >= 1.0 {
        return Err(Error::Config(
            "alpha = 1 has no covering lattice; the dyadic family backs the Besov norms".into(),
        ));
    }
    let (fam, _) = family_from_config(cfg)?;
    let rep = verify_partition(&fam, &VerifyOptions::default())?;
    let tol = cfg.probe.tolerances.clone();

    let mut report = Report::new("partition verify", cfg.as_value());
    report.flagged = !rep.fl1_all_converged;
    report.gate(Gate::below("sum_deviation", rep.max_sum_dev, tol.sum_dev));
    report.gate(Gate::holds("support_exact", rep.support_exact));
    report.gate(Gate::below("d1_drift", rep.d1_drift, tol.deriv_drift));
    report.gate(Gate::below("d2_drift", rep.d2_drift, tol.deriv_drift));
    report.gate(Gate::below("fl1_ratio", rep.fl1_ratio, tol.fl1_ratio));
    report.metric("windows", rep.windows.len() as f64);
    report.metric("fl1_sup", rep.fl1_sup);
    report.metric("fl1_min", rep.fl1_min);
    report.metric("plateau_c1", rep.plateau_c1);
    report.metric("support_radius_c", rep.support_radius_c);
    report.metric("covered_radius", rep.covered_radius);
    report.metric("max_overlap", rep.max_overlap as f64);

    if want_csv(cfg) {
        let mut t = CsvTable::new(&[
            "k", "bracket", "center", "radius", "fl1", "sum_dev", "d1_const", "d2_const",
        ]);
        for w in &rep.windows {
            let center = if cfg.n == 1 {
                format_float(w.center[0])
            } else {
                format!("{};{}", format_float(w.center[0]), format_float(w.center[1]))
            };
            t.row(vec![
                w.index.label(cfg.n),
                format_float(w.bracket),
                center,
                format_float(w.radius),
                format_float(w.fl1.value),
                format_float(w.sum_dev),
                format_float(w.d1_const),
                format_float(w.d2_const),
            ]);
        }
        t.write_to(&out_dir.join("windows.csv"))?;
        report.csv_files.push("windows.csv".into());

        let mut sweep = CsvTable::new(&["bracket", "d1_const", "d2_const"]);
        for (b, d1, d2) in &rep.deriv_sweep {
            sweep.row(vec![format_float(*b), format_float(*d1), format_float(*d2)]);
        }
        sweep.write_to(&out_dir.join("derivative_sweep.csv"))?;
        report.csv_files.push("derivative_sweep.csv".into());
    }
    Ok(report)
}

fn cmd_norm_compute(cfg: &ResolvedConfig, input: &Path, out_dir: &Path) -> Result<Report> {
    let f = read_amsf1(input)?;
    let f = match f.grid().side() {
        Side::Spatial => f,
        Side::Frequency => fourier_inverse(&f)?,
    };
    let mut report = Report::new("norm compute", cfg.as_value());
    let space = SpaceSpec::new(cfg.space.p, cfg.space.q, cfg.space.s, cfg.alpha)?;
    let value = if space.is_besov() {
        let grid = f.grid().dual();
        let levels = max_levels_for(&grid);
        let dyadic = DyadicFamily::build(levels, grid)?;
        let v = besov_norm(&f, space.p, space.q, space.s, &dyadic)?;
        report.metric("levels", levels as f64);
        v
    } else {
        let profile = cfg.profile.to_profile()?;
        let lattice = AlphaLattice::build(cfg.alpha, f.grid().dim(), cfg.xi_max)?;
        let fam = PartitionFamily::build(lattice, f.grid().dual(), profile)?;
        let prof = alpha_mod_norm_profile(&f, &space, &fam)?;
        if want_csv(cfg) {
            let mut t = CsvTable::new(&["k", "bracket", "box_lp", "weighted"]);
            for e in &prof.entries {
                t.row(vec![
                    e.index.label(fam.dim()),
                    format_float(e.bracket),
                    format_float(e.box_lp),
                    format_float(e.weighted),
                ]);
            }
            t.write_to(&out_dir.join("norm_profile.csv"))?;
            report.csv_files.push("norm_profile.csv".into());
        }
        prof.value
    };
    report.metric("norm", value);
    println!("norm {}", format_float(value));
    Ok(report)
}

fn cmd_multiplier_apply(cfg: &ResolvedConfig, input: &Path, output: &Path) -> Result<Report> {
    let f = read_amsf1(input)?;
    let out = apply_unimodular(&f, &cfg.symbol)?;
    write_amsf1(output, &out)?;
    let mut report = Report::new("multiplier apply", cfg.as_value());
    let l2_in = lp_norm(&f, Exponent::Finite(2.0));
    let l2_out = lp_norm(&out, Exponent::Finite(2.0));
    let drift = if l2_in > 0.0 { (l2_out / l2_in - 1.0).abs() } else { 0.0 };
    report.metric("l2_in", l2_in);
    report.metric("l2_out", l2_out);
    report.gate(Gate::below("l2_preservation", drift, 1e-12));
    println!("wrote {}", output.display());
    Ok(report)
}

fn cmd_symbol_class(cfg: &ResolvedConfig, out_dir: &Path) -> Result<Report> {
    if cfg.n != 1 {
        return Err(Error::Config("symbol class profiling is 1d".into()));
    }
    cfg.symbol.validate(1)?;
    let profile = cfg.profile.to_profile()?;
    let fam = family_for(cfg.alpha, 1, cfg.xi_max, &profile, cfg.period)?;
    let w = 2.0 * cfg.alpha - 2.0 * cfg.delta;
    let eval = SecondDerivEval::new(&cfg.symbol, 0, 0);
    let class = symbol_class_norm(&eval, w, &fam, &Fl1Options::default())?;

    let mut report = Report::new("symbol class", cfg.as_value());
    report.flagged = !class.all_converged;
    report.metric("class_sup", class.sup);
    if let Some(s) = class.fitted_slope {
        report.metric("fitted_slope", s);
    }

    // Pointwise check of d^2 mu at the window centers.
    let sym = cfg.symbol.clone();
    struct DerivSymbol {
        sym: SymbolSpec,
    }
    impl crate::spaces::ScalarSymbol for DerivSymbol {
        fn value(&self, xi: f64) -> f64 {
            self.sym.second_derivative(0, 0, &[xi]).unwrap_or(f64::NAN)
        }
        fn deriv(&self, xi: f64) -> f64 {
            let h = 1e-4;
            (self.value(xi + h) - self.value(xi - h)) / (2.0 * h)
        }
    }
    let points: Vec<f64> =
        fam.lattice().indices().iter().map(|k| fam.lattice().center(k)[0]).collect();
    let mik = mikhlin_check(&DerivSymbol { sym }, w, &points);
    report.metric("mikhlin_sup", mik.sup);
    report.metric("mikhlin_member", if mik.member { 1.0 } else { 0.0 });

    if want_csv(cfg) {
        let mut t = CsvTable::new(&["k", "bracket", "fl1", "weighted", "converged"]);
        for e in &class.entries {
            t.row(vec![
                e.index.label(1),
                format_float(e.bracket),
                format_float(e.fl1.value),
                format_float(e.weighted),
                (e.fl1.converged as u8).to_string(),
            ]);
        }
        t.write_to(&out_dir.join("symbol_class.csv"))?;
        report.csv_files.push("symbol_class.csv".into());
    }
    Ok(report)
}

fn ratio_csv(rows: &[crate::harness::RatioEntry], phase: &str, table: &mut CsvTable) {
    for e in rows {
        table.row(vec![
            phase.into(),
            e.label.clone(),
            format_float(e.norm_out),
            format_float(e.norm_in),
            format_float(e.ratio),
            (e.skipped as u8).to_string(),
        ]);
    }
}

fn cmd_theorem_check(cfg: &ResolvedConfig, out_dir: &Path) -> Result<Report> {
    if cfg.n != 1 {
        return Err(Error::Config("theorem probes are 1d".into()));
    }
    let tol = cfg.probe.tolerances.clone();
    let profile = cfg.profile.to_profile()?;
    let mut report = Report::new("theorem check", cfg.as_value());
    match cfg.probe.probe {
        ProbeKind::Plancherel => {
            let fam = family_for(cfg.alpha, 1, cfg.xi_max, &profile, cfg.period)?;
            let rep = plancherel_probe(
                &cfg.symbol,
                cfg.space.q,
                cfg.probe.seed,
                cfg.probe.count,
                &fam,
            )?;
            report.gate(Gate::at_most("plancherel_deviation", rep.max_deviation, tol.plancherel_dev));
            if want_csv(cfg) {
                let mut t =
                    CsvTable::new(&["phase", "label", "norm_out", "norm_in", "ratio", "skipped"]);
                ratio_csv(&rep.ratios, "base", &mut t);
                t.write_to(&out_dir.join("ratios.csv"))?;
                report.csv_files.push("ratios.csv".into());
            }
        }
        ProbeKind::Criterion => {
            let (base, doubled, check) = criterion_doubling(
                &cfg.symbol,
                cfg.delta,
                cfg.alpha,
                &profile,
                cfg.period,
                cfg.xi_max,
                tol.growth,
                &Fl1Options::default(),
            )?;
            report.flagged = !(base.all_converged && doubled.all_converged);
            report.gate(Gate::below("criterion_growth", check.growth, tol.growth));
            report.metric("sup_base", check.base);
            report.metric("sup_doubled", check.doubled);
            if let Some(s) = base.fitted_slope {
                report.metric("raw_slope", s);
            }
            if want_csv(cfg) {
                let mut t = CsvTable::new(&["phase", "k", "bracket", "fl1", "weighted"]);
                for (phase, prof) in [("base", &base), ("doubled", &doubled)] {
                    for e in &prof.entries {
                        t.row(vec![
                            phase.into(),
                            e.index.label(1),
                            format_float(e.bracket),
                            format_float(e.fl1.value),
                            format_float(e.weighted),
                        ]);
                    }
                }
                t.write_to(&out_dir.join("criterion_profile.csv"))?;
                report.csv_files.push("criterion_profile.csv".into());
            }
        }
        ProbeKind::Ek => {
            let lattice = AlphaLattice::build(cfg.alpha, 1, cfg.xi_max)?;
            let ks = probe_indices(&lattice, cfg.delta, &profile, 16);
            if ks.len() < 3 {
                return Err(Error::Precondition(format!(
                    "only {} probe indices fit inside xi_max = {}; enlarge the truncation",
                    ks.len(),
                    cfg.xi_max
                )));
            }
            let mut pairs = Vec::new();
            let mut all_match = true;
            let mut band_ok = true;
            let mut dist_max = 0.0_f64;
            let mut t = CsvTable::new(&[
                "k",
                "bracket",
                "count",
                "bracket_ratio_min",
                "bracket_ratio_max",
                "distance_max",
                "brute_match",
            ]);
            for &k in &ks {
                let idx = LatticeIndex::new1(k);
                let set = dilation_overlap_set(idx, cfg.delta, &lattice, &profile)?;
                let brute =
                    brute_force_overlap_set(idx, cfg.delta, &lattice, &profile, 4096)?;
                let matched = set.members == brute;
                all_match &= matched;
                band_ok &= set.bracket_ratio_min > 1.0 / tol.geometry_band
                    && set.bracket_ratio_max < tol.geometry_band;
                dist_max = dist_max.max(set.distance_max);
                pairs.push((idx.bracket(), set.count() as f64));
                t.row(vec![
                    idx.label(1),
                    format_float(idx.bracket()),
                    set.count().to_string(),
                    format_float(set.bracket_ratio_min),
                    format_float(set.bracket_ratio_max),
                    format_float(set.distance_max),
                    (matched as u8).to_string(),
                ]);
            }
            let expected = cfg.delta / (1.0 - cfg.alpha);
            let slope = crate::fit::log_log_tail_slope(&pairs);
            report.gate(Gate::holds("brute_force_match", all_match));
            report.gate(Gate::holds("bracket_ratio_band", band_ok));
            report.gate(Gate::below("distance_bound", dist_max, tol.geometry_band));
            match slope {
                Some(s) => {
                    report.metric("count_slope", s);
                    report.metric("count_slope_expected", expected);
                    let rel = if expected != 0.0 {
                        (s - expected).abs() / expected
                    } else {
                        s.abs()
                    };
                    report.gate(Gate::below("count_slope_error", rel, tol.slope_rel));
                }
                None => report.gate(Gate::holds("count_slope_fit", false)),
            }
            if want_csv(cfg) {
                t.write_to(&out_dir.join("overlap_sets.csv"))?;
                report.csv_files.push("overlap_sets.csv".into());
            }
        }
        ProbeKind::Operator => {
            let fam = family_for(cfg.alpha, 1, cfg.xi_max, &profile, cfg.period)?;
            let rep = operator_norm_probe(
                &cfg.symbol,
                cfg.space.p,
                cfg.space.q,
                cfg.space.s,
                cfg.delta,
                cfg.probe.family,
                cfg.probe.seed,
                cfg.probe.count,
                &fam,
                tol.growth,
                cfg.probe.allow_sub_threshold,
            )?;
            report.gate(Gate::below("ratio_growth", rep.check.growth, tol.growth));
            report.metric("max_ratio_base", rep.check.base);
            report.metric("max_ratio_doubled", rep.check.doubled);
            if want_csv(cfg) {
                let mut t =
                    CsvTable::new(&["phase", "label", "norm_out", "norm_in", "ratio", "skipped"]);
                ratio_csv(&rep.base, "base", &mut t);
                ratio_csv(&rep.doubled, "doubled", &mut t);
                t.write_to(&out_dir.join("ratios.csv"))?;
                report.csv_files.push("ratios.csv".into());
            }
        }
        ProbeKind::Convolution => {
            let fam = family_for(cfg.alpha, 1, cfg.xi_max, &profile, cfg.period)?;
            let space = SpaceSpec::new(cfg.space.p, cfg.space.q, cfg.space.s, cfg.alpha)?;
            let rep =
                convolution_probe(&space, cfg.probe.seed, cfg.probe.count, &fam, tol.growth)?;
            report.gate(Gate::below("ratio_growth", rep.check.growth, tol.growth));
            report.gate(Gate::below("scale_invariance", rep.scale_invariance_error, 1e-9));
            report.gate(Gate::holds("mollifier_stable", rep.mollifier_stable));
            if want_csv(cfg) {
                let mut t =
                    CsvTable::new(&["phase", "label", "norm_out", "norm_in", "ratio", "skipped"]);
                ratio_csv(&rep.base, "base", &mut t);
                ratio_csv(&rep.doubled, "doubled", &mut t);
                t.write_to(&out_dir.join("ratios.csv"))?;
                report.csv_files.push("ratios.csv".into());
            }
        }
        ProbeKind::Bernstein => {
            let rep =
                bernstein_probe(cfg.space.p, cfg.probe.seed, cfg.probe.count, tol.growth)?;
            report.gate(Gate::below("ratio_growth", rep.check.growth, tol.growth));
            if cfg.space.p == Exponent::Finite(2.0) {
                report.gate(Gate::at_most(
                    "p2_ratio",
                    rep.entries.iter().map(|e| e.ratio).fold(0.0, f64::max),
                    1.0 + tol.bernstein_p2,
                ));
            }
            report.metric("max_ratio", rep.max_ratio);
            if want_csv(cfg) {
                let mut t =
                    CsvTable::new(&["phase", "label", "norm_out", "norm_in", "ratio", "skipped"]);
                ratio_csv(&rep.entries, "base", &mut t);
                ratio_csv(&rep.extended, "extended", &mut t);
                t.write_to(&out_dir.join("ratios.csv"))?;
                report.csv_files.push("ratios.csv".into());
            }
        }
        ProbeKind::PhaseRemainder => {
            let fam = family_for(cfg.alpha, 1, cfg.xi_max, &profile, cfg.period)?;
            let lattice = fam.lattice().clone();
            let ks = probe_indices(&lattice, cfg.delta, &profile, 8);
            if ks.is_empty() {
                return Err(Error::Precondition(
                    "no dilated window fits the truncation; enlarge xi_max".into(),
                ));
            }
            let opts = Fl1Options::default();
            let rhs = remainder_class_bound(&cfg.symbol, cfg.delta, &fam, &opts)?;
            let mut max_ratio = 0.0_f64;
            let mut converged = true;
            let mut t = CsvTable::new(&["k", "l", "psi_fl1", "rhs", "ratio", "converged"]);
            for &k in &ks {
                let idx = LatticeIndex::new1(k);
                let set = dilation_overlap_set(idx, cfg.delta, &lattice, &profile)?;
                for l in &set.members {
                    let r = phase_remainder_fl1(
                        &cfg.symbol,
                        idx,
                        *l,
                        cfg.delta,
                        cfg.alpha,
                        &fam,
                        &opts,
                        Some(rhs),
                    )?;
                    max_ratio = max_ratio.max(r.ratio);
                    converged &= r.converged;
                    t.row(vec![
                        idx.label(1),
                        l.label(1),
                        format_float(r.psi_fl1),
                        format_float(r.rhs),
                        format_float(r.ratio),
                        (r.converged as u8).to_string(),
                    ]);
                }
            }
            report.flagged = !converged;
            report.gate(Gate::at_most("remainder_ratio", max_ratio, tol.remainder_ratio));
            report.metric("rhs", rhs);
            if want_csv(cfg) {
                t.write_to(&out_dir.join("phase_remainders.csv"))?;
                report.csv_files.push("phase_remainders.csv".into());
            }
        }
    }
    Ok(report)
}

/// Nonnegative probe indices whose dilated support stays inside the covered
/// region, thinned to at most `cap` entries.
fn probe_indices(
    lattice: &AlphaLattice,
    delta: f64,
    profile: &WindowProfile,
    cap: usize,
) -> Vec<i64> {
    let warp = lattice.warp();
    let covered = warp.radial(lattice.first_excluded_norm() - profile.r2);
    let mut ks = Vec::new();
    let k_max = warp.radial_inv(lattice.xi_max()).floor() as i64;
    for k in 0..=k_max {
        let idx = LatticeIndex::new1(k);
        let t = dilation_factor(&idx, delta, lattice.alpha());
        let hi = warp.radial(k as f64 + profile.r2) * t;
        let lo = warp.radial(k as f64 - profile.r2) * t;
        if hi.abs().max(lo.abs()) <= covered {
            ks.push(k);
        }
    }
    if ks.len() > cap {
        let stride = ks.len().div_ceil(cap);
        ks = ks.into_iter().step_by(stride).collect();
    }
    ks
}

fn cmd_counterexample(cfg: &ResolvedConfig, out_dir: &Path) -> Result<Report> {
    if cfg.n != 1 {
        return Err(Error::Config("the separation example is 1d".into()));
    }
    let tol = cfg.probe.tolerances.clone();
    let profile = cfg.profile.to_profile()?;
    let fam_base = family_for(cfg.alpha, 1, cfg.xi_max, &profile, cfg.period)?;
    let fam_doubled = family_for(cfg.alpha, 1, 2.0 * cfg.xi_max, &profile, cfg.period)?;
    let rep = class_separation_report(
        &cfg.bump,
        &fam_base,
        &fam_doubled,
        &Fl1Options::default(),
        tol.fm_drift,
    )?;
    let mut report = Report::new("counterexample", cfg.as_value());
    report.flagged = !rep.fm_all_converged;
    report.gate(Gate::below("fm_sup_drift", rep.fm_check.growth, tol.fm_drift));
    report.gate(Gate::holds("pointwise_class_rejected", !rep.mikhlin.member));
    report.gate(Gate::holds("derivative_floor", rep.deriv_floor > 0.9));
    report.gate(Gate::holds("separated", rep.separated));
    report.metric("fm_sup_base", rep.fm_sup_base);
    report.metric("fm_sup_doubled", rep.fm_sup_doubled);
    report.metric("deriv_floor", rep.deriv_floor);
    if let Some(s) = rep.mikhlin.tail_slope {
        report.metric("mikhlin_tail_slope", s);
    }
    if want_csv(cfg) {
        let mut t = CsvTable::new(&["k", "fm_weighted"]);
        for (label, v) in &rep.fm_profile {
            t.row(vec![label.clone(), format_float(*v)]);
        }
        t.write_to(&out_dir.join("fm_profile.csv"))?;
        report.csv_files.push("fm_profile.csv".into());

        let mut m = CsvTable::new(&["xi", "order0", "order1"]);
        for p in &rep.mikhlin.points {
            m.row(vec![
                format_float(p.xi),
                format_float(p.order0),
                format_float(p.order1),
            ]);
        }
        m.write_to(&out_dir.join("pointwise_check.csv"))?;
        report.csv_files.push("pointwise_check.csv".into());
    }
    Ok(report)
}
