//! `conedeform`: evaluate, sweep, audit and plot the cone-manifold family.
//!
//! Exit codes: 0 success, 2 domain or usage error, 3 check failure.

mod report;
mod svg;

use std::f64::consts::TAU;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cone_deform::family::{omega_closed_form, zeta_closed_form};
use cone_deform::gluing::{role_assignment, Status};
use cone_deform::polyhedron::TruncationStatus;
use cone_deform::{
    check_conditions, critical_angles, dihedral_audit, evaluate, octahedron_scheme, sweep,
    whitehead_scheme, CriticalAngles, SweepRow,
};

use report::{Cell, Format, Table};

#[derive(Parser)]
#[command(
    name = "conedeform",
    version,
    about = "Cone-manifold deformation family P(ψ), M(ψ)"
)]
struct Cli {
    /// Read every angle argument in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Range {
    /// Default 0.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    /// Default 2π.
    #[arg(long, allow_hyphen_values = true)]
    end: Option<f64>,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Octahedron,
    Whitehead,
}

#[derive(Subcommand)]
enum Command {
    /// Model parameters, regime and containment values at one cone angle.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        psi: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a uniform grid of cone angles.
    Sweep {
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        output: Output,
    },
    /// Root-find the critical angles ω and ζ.
    Critical {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Pairwise dihedral angles of the bounding planes.
    Audit {
        #[arg(long, allow_hyphen_values = true)]
        psi: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Check the cone-manifold gluing conditions.
    Validate {
        #[arg(long, value_enum, default_value_t = Scheme::Octahedron)]
        scheme: Scheme,
        #[arg(long, allow_hyphen_values = true)]
        psi: f64,
        #[command(flatten)]
        output: Output,
    },
    /// SVG chart of curvature, c², f and g against ψ.
    Plot {
        #[command(flatten)]
        range: Range,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Domain(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Check(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(m) | Failure::Check(m) => f.write_str(m),
        }
    }
}

impl From<cone_deform::Error> for Failure {
    fn from(e: cone_deform::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<cone_deform::gluing::GluingError> for Failure {
    fn from(e: cone_deform::gluing::GluingError) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: Option<&PathBuf>, text: &str) -> Outcome {
    let res = match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| {
        let target = out.map_or("stdout".into(), |p| p.display().to_string());
        Failure::Domain(format!("cannot write {target}: {e}"))
    })
}

struct Angles {
    degrees: bool,
}

impl Angles {
    fn get(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }

    fn range(&self, r: &Range) -> (f64, f64) {
        (
            r.start.map_or(0.0, |x| self.get(x)),
            r.end.map_or(TAU, |x| self.get(x)),
        )
    }
}

fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(&SweepRow::HEADER);
    for r in rows {
        t.push(vec![
            r.psi.into(),
            r.c2.into(),
            r.rho.into(),
            r.curvature.into(),
            r.geometry.as_str().into(),
            r.phase.as_str().into(),
            r.pole_norm.into(),
            r.f.into(),
            r.g.into(),
        ]);
    }
    t
}

fn cmd_eval(psi: f64, output: &Output) -> Outcome {
    let row = evaluate(psi)?;
    emit(
        output.out.as_ref(),
        &sweep_table(&[row]).render(output.format),
    )
}

fn cmd_sweep(start: f64, end: f64, steps: usize, output: &Output) -> Outcome {
    let rows = sweep(start, end, steps)?;
    emit(
        output.out.as_ref(),
        &sweep_table(&rows).render(output.format),
    )
}

fn cmd_critical(tol: f64, output: &Output) -> Outcome {
    let k = critical_angles(tol)?;
    let mut t = Table::new(&["name", "value", "closed_form"]);
    t.push(vec![
        "two_thirds_pi".into(),
        k.two_thirds_pi.into(),
        k.two_thirds_pi.into(),
    ]);
    t.push(vec![
        "omega".into(),
        k.omega.into(),
        omega_closed_form().into(),
    ]);
    t.push(vec!["pi".into(), k.pi_angle.into(), k.pi_angle.into()]);
    t.push(vec![
        "zeta".into(),
        k.zeta.into(),
        zeta_closed_form().into(),
    ]);
    emit(output.out.as_ref(), &t.render(output.format))
}

fn cmd_audit(psi: f64, tol: f64, output: &Output) -> Outcome {
    let audit = dihedral_audit(psi, tol)?;
    let mut t = Table::new(&[
        "first", "second", "cosine", "angle", "class", "reflex", "ideal",
    ]);
    for e in &audit.entries {
        t.push(vec![
            e.first.to_string().into(),
            e.second.to_string().into(),
            if e.cosine.is_nan() {
                Cell::Empty
            } else {
                e.cosine.into()
            },
            e.angle.into(),
            e.class.as_str().into(),
            e.reflex.into(),
            e.ideal.into(),
        ]);
    }
    emit(output.out.as_ref(), &t.render(output.format))?;
    let truncation = match audit.truncation {
        TruncationStatus::Planes => "planes",
        TruncationStatus::Ideal => "ideal",
        TruncationStatus::FiniteVertex => "finite_vertex",
    };
    eprintln!(
        "psi={psi} geometry={} truncation={truncation} complete={}",
        audit.geometry,
        audit.is_complete()
    );
    if audit.is_complete() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "audit at psi={psi}: nominal angle classes not all realised"
        )))
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn cmd_validate(scheme: Scheme, psi: f64, output: &Output) -> Outcome {
    let scheme = match scheme {
        Scheme::Octahedron => octahedron_scheme(),
        Scheme::Whitehead => whitehead_scheme(),
    };
    let psi = cone_deform::ConeAngle::new(psi)?.radians();
    let report = check_conditions(&scheme, psi, &role_assignment(&scheme, psi))?;
    let mut t = Table::new(&["kind", "name", "status", "value", "expected", "detail"]);
    for (i, c) in report.conditions.iter().enumerate() {
        t.push(vec![
            "condition".into(),
            (i + 1).to_string().into(),
            status_str(c.status).into(),
            Cell::Empty,
            Cell::Empty,
            c.detail.clone().into(),
        ]);
    }
    for s in &report.class_sums {
        let names: Vec<String> = s.edges.iter().map(|e| e.to_string()).collect();
        t.push(vec![
            "class".into(),
            names.join(" ").into(),
            Cell::Empty,
            s.sum.into(),
            s.expected.into(),
            s.role.token().into(),
        ]);
    }
    for l in &report.vertex_links {
        let cones: Vec<String> = l
            .singular_cone_angles
            .iter()
            .map(|a| report::sig15(*a).to_string())
            .collect();
        t.push(vec![
            "vertex_link".into(),
            l.vertices.join(" ").into(),
            Cell::Empty,
            (l.euler_characteristic as f64).into(),
            2.0.into(),
            format!("singular cone angles: {}", cones.join(" ")).into(),
        ]);
    }
    let orbit_status = if report.orbits_match_declared {
        "pass"
    } else if scheme.provisional {
        "skipped"
    } else {
        "fail"
    };
    t.push(vec![
        "orbits".into(),
        "derived_vs_declared".into(),
        orbit_status.into(),
        Cell::Empty,
        Cell::Empty,
        if scheme.provisional {
            "provisional scheme".into()
        } else {
            Cell::Empty
        },
    ]);
    emit(output.out.as_ref(), &t.render(output.format))?;
    if report.passed(scheme.provisional) {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "scheme {} fails the gluing conditions at psi={psi}",
            scheme.name
        )))
    }
}

fn cmd_plot(start: f64, end: f64, steps: usize, out: Option<&PathBuf>) -> Outcome {
    let rows = sweep(start, end, steps)?;
    emit(out, &svg::render(&rows, CriticalAngles::standard()))
}

fn run(cli: Cli) -> Outcome {
    let a = Angles {
        degrees: cli.degrees,
    };
    match &cli.command {
        Command::Eval { psi, output } => cmd_eval(a.get(*psi), output),
        Command::Sweep { range, output } => {
            let (s, e) = a.range(range);
            cmd_sweep(s, e, range.steps, output)
        }
        Command::Critical { tol, output } => cmd_critical(*tol, output),
        Command::Audit { psi, tol, output } => cmd_audit(a.get(*psi), *tol, output),
        Command::Validate {
            scheme,
            psi,
            output,
        } => cmd_validate(*scheme, a.get(*psi), output),
        Command::Plot { range, out } => {
            let (s, e) = a.range(range);
            cmd_plot(s, e, range.steps, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("conedeform: {f}");
            ExitCode::from(f.code())
        }
    }
}
