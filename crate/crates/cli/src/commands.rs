use std::io::Write;
use std::path::{Path, PathBuf};

use rdcn::flow::{backend_by_name, LpBackend};
use rdcn::matrix::{
    classify_uniform_residual, decompose_integer_residual, generate, load_csv, load_csv_matrix, validate_hose,
    write_csv, DemandMatrix, GenParams, MatrixKind, SquareMatrix,
};
use rdcn::throughput::checks::{fig3_checks, fig4_checks, Check};
use rdcn::throughput::{
    build_suite, cell_seed, evaluate_class, sweep_degree, sweep_matrices, EvalContext, LabeledMatrix, SweepConfig,
    SweepResult,
};
use rdcn::topology::NetworkClass;
use rdcn::NetworkParams;

use crate::config::RunConfig;
use crate::svg::{render, Chart};
use crate::{CliError, Figure};

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::runtime(format!("writing {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn backend(cfg: &RunConfig) -> Result<Box<dyn LpBackend>, CliError> {
    backend_by_name(&cfg.solver, cfg.tol).map_err(|e| {
        CliError::runtime(format!(
            "{e}\nThe default build includes HiGHS (`cargo build --release`, needs cmake and a C++17 compiler); pass `--solver highs`."
        ))
    })
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn hose_summary(m: &DemandMatrix<f64>, p: &NetworkParams) -> Result<String, CliError> {
    let report = validate_hose(m, p)?;
    let max_row = m.row_sums().into_iter().fold(0.0, f64::max);
    let max_col = m.col_sums().into_iter().fold(0.0, f64::max);
    let verdict = if report.is_valid() {
        "hose-feasible".to_string()
    } else {
        format!("{} hose violations", report.violations.len())
    };
    Ok(format!(
        "n={} u={} c={:e}: max row sum {max_row:e}, max column sum {max_col:e}, limit {:e}; {verdict}",
        p.n,
        p.u,
        p.c,
        p.node_capacity()
    ))
}

pub fn cmd_gen(kind: &str, alpha: f64, shift: i64, out: Option<&Path>, cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.params()?;
    let kind: MatrixKind = kind.parse()?;
    let gp = GenParams {
        alpha,
        shift,
        seed: cfg.seed,
    };
    let m: DemandMatrix<f64> = generate(kind, &p, &gp)?;
    let summary = hose_summary(&m, &p)?;
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            write_csv(m.as_matrix(), &mut buf).map_err(|e| io_err(path, e))?;
            write_file(path, &buf)?;
            println!("wrote {} ({kind})", path.display());
            println!("{summary}");
        }
        None => {
            write_csv(m.as_matrix(), std::io::stdout().lock()).map_err(|e| CliError::runtime(e.to_string()))?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn print_matrix<T: Copy + std::fmt::Display>(title: &str, m: &SquareMatrix<T>) {
    println!("# {title}");
    let mut out = std::io::stdout().lock();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
}

pub fn cmd_decompose(path: &Path, unit: f64) -> Result<(), CliError> {
    if !(unit > 0.0) || !unit.is_finite() {
        return Err(CliError::input(format!("--unit must be positive, got {unit}")));
    }
    let m: SquareMatrix<f64> = load_csv_matrix(path)?.scaled(1.0 / unit);
    let d = decompose_integer_residual(&m)?;
    print_matrix("integer part", &d.int_part);
    print_matrix("residual part", &d.res_part);
    let fmt = |v: &[f64]| v.iter().map(|r| format!("{r:.6}")).collect::<Vec<_>>().join(",");
    println!("# row ratios\n{}", fmt(&d.row_ratios));
    println!("# column ratios\n{}", fmt(&d.col_ratios));
    println!("class: {}", classify_uniform_residual(&d));
    Ok(())
}

pub fn cmd_eval(
    path: &Path,
    class: NetworkClass,
    normalized: bool,
    trace: bool,
    emit_topo: bool,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    let p = cfg.params()?;
    let mut m: DemandMatrix<f64> = load_csv(path)?;
    if normalized {
        m = m.scaled(p.c);
    }
    let b = backend(cfg)?;
    let ctx = EvalContext::new(b.as_ref());
    let label = label_of(path);
    let seed = cell_seed(cfg.seed, &label, class, p.u);
    let e = evaluate_class(class, &m, &p, cfg.step, seed, &ctx)?;
    println!("matrix: {label}");
    println!("class: {class}");
    println!("theta: {:.4}", e.theta);
    println!("lp solves: {}", e.lp_solves);
    if e.verification_violations > 0 {
        println!("verification violations: {}", e.verification_violations);
    }
    if trace {
        match &e.trace {
            Some(t) => println!(
                "{}",
                serde_json::to_string_pretty(t).map_err(|e| CliError::runtime(e.to_string()))?
            ),
            None => println!("no trace: {class} is evaluated with a single LP"),
        }
    }
    if emit_topo {
        let topo_path = cfg.out_dir.join(format!("{label}_{class}_topology.json"));
        write_file(&topo_path, e.topology.to_json()?.as_bytes())?;
        println!("wrote {}", topo_path.display());
        if let Some(s) = &e.schedule {
            let sched_path = cfg.out_dir.join(format!("{label}_{class}_schedule.json"));
            write_file(&sched_path, s.to_json()?.as_bytes())?;
            println!("wrote {}", sched_path.display());
        }
    }
    Ok(())
}

/// Degrees of the degree sweep: quarters of `n`.
pub fn sweep_degrees(n: usize) -> Vec<usize> {
    let mut d: Vec<usize> = (1..=4).map(|k| (n * k / 4).max(1)).collect();
    d.dedup();
    d
}

fn user_matrices(cfg: &RunConfig) -> Result<Vec<LabeledMatrix>, CliError> {
    cfg.matrices
        .iter()
        .map(|path| Ok(LabeledMatrix::new(label_of(path), load_csv(path)?)))
        .collect()
}

fn sweep_chart(title: &str, r: &SweepResult, classes: &[NetworkClass]) -> String {
    let groups = r.matrices();
    let degree = r.degrees().first().copied().unwrap_or(0);
    let values = groups
        .iter()
        .map(|m| classes.iter().map(|&c| r.theta(m, c, degree)).collect())
        .collect();
    render(&Chart {
        title,
        groups,
        series: classes.iter().map(|c| c.to_string()).collect(),
        values,
    })
}

fn worst_chart(title: &str, r: &SweepResult, classes: &[NetworkClass]) -> String {
    let degrees = r.degrees();
    render(&Chart {
        title,
        groups: degrees.iter().map(|u| format!("u={u}")).collect(),
        series: classes.iter().map(|c| c.to_string()).collect(),
        values: degrees
            .iter()
            .map(|&u| classes.iter().map(|&c| r.worst(c, u).map(|w| w.theta)).collect())
            .collect(),
    })
}

/// Worst-case table in the sweep CSV layout, `matrix` naming the arg-min.
fn write_worst_csv(r: &SweepResult, classes: &[NetworkClass]) -> Vec<u8> {
    let mut out = String::from("matrix,class,degree,theta\n");
    for u in r.degrees() {
        for &c in classes {
            if let Some(w) = r.worst(c, u) {
                out.push_str(&format!("{},{},{},{}\n", w.matrix, c, u, w.theta));
            }
        }
    }
    out.into_bytes()
}

fn report(checks: &[Check]) -> Result<(), CliError> {
    for c in checks {
        println!("{c}");
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError {
            code: CliError::ACCEPTANCE,
            message: format!("{} check(s) failed: {}", failed.len(), failed.join("; ")),
        })
    }
}

fn out_path(cfg: &RunConfig, name: &str) -> PathBuf {
    cfg.out_dir.join(name)
}

pub fn cmd_reproduce(figure: Figure, trace: bool, cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.params()?;
    let b = backend(cfg)?;
    let ctx = EvalContext {
        solve: rdcn::flow::SolveOptions {
            tol: cfg.tol,
            ..Default::default()
        },
        ..EvalContext::new(b.as_ref())
    };
    let sweep_cfg = SweepConfig {
        seed: cfg.seed,
        step: cfg.step,
        jobs: cfg.jobs,
        keep_traces: trace,
        ..SweepConfig::default()
    };
    let classes = sweep_cfg.classes.clone();
    let extra = user_matrices(cfg)?;
    let json_err = |e: rdcn::Error| CliError::runtime(e.to_string());
    match figure {
        Figure::Fig3 => {
            let mut suite = build_suite(&p)?;
            let standard = suite.clone();
            suite.extend(extra);
            let r = sweep_matrices(&p, &suite, &sweep_cfg, &ctx)?;
            let mut csv = Vec::new();
            r.write_csv(&mut csv)?;
            write_file(&out_path(cfg, "fig3.csv"), &csv)?;
            write_file(&out_path(cfg, "fig3.json"), r.to_json().map_err(json_err)?.as_bytes())?;
            let title = format!("Throughput per demand matrix, n={} u={}", p.n, p.u);
            write_file(&out_path(cfg, "fig3.svg"), sweep_chart(&title, &r, &classes).as_bytes())?;
            for w in &r.worst_case {
                println!("worst case {}: {:.4} ({})", w.class, w.theta, w.matrix);
            }
            println!("wrote fig3.csv, fig3.json, fig3.svg to {}", cfg.out_dir.display());
            report(&fig3_checks(&r, &standard, &p))
        }
        Figure::Fig4 => {
            let base_u = p.u;
            let suite_for = |q: &NetworkParams| -> rdcn::Result<Vec<LabeledMatrix>> {
                let mut s = build_suite(q)?;
                let k = q.u as f64 / base_u as f64;
                s.extend(
                    extra
                        .iter()
                        .map(|lm| LabeledMatrix::new(lm.label.clone(), lm.matrix.scaled(k))),
                );
                Ok(s)
            };
            let degrees = sweep_degrees(p.n);
            let r = sweep_degree(&p, &degrees, &suite_for, &sweep_cfg, &ctx)?;
            let mut cells = Vec::new();
            r.write_csv(&mut cells)?;
            write_file(&out_path(cfg, "fig4_cells.csv"), &cells)?;
            write_file(&out_path(cfg, "fig4.csv"), &write_worst_csv(&r, &classes))?;
            write_file(&out_path(cfg, "fig4.json"), r.to_json().map_err(json_err)?.as_bytes())?;
            let title = format!("Worst-case throughput per degree, n={}", p.n);
            write_file(&out_path(cfg, "fig4.svg"), worst_chart(&title, &r, &classes).as_bytes())?;
            for w in &r.worst_case {
                println!("worst case {} u={}: {:.4} ({})", w.class, w.degree, w.theta, w.matrix);
            }
            println!(
                "wrote fig4.csv, fig4_cells.csv, fig4.json, fig4.svg to {}",
                cfg.out_dir.display()
            );
            report(&fig4_checks(&r, p.n))
        }
    }
}
