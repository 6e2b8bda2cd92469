// Copyright 2026 The holdcircle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use holdcircle::analysis::{analyze, AnalysisConfig};
use holdcircle::convex::{HalfSpace, Polytope3};
use holdcircle::families::{self, Prediction};
use holdcircle::holding::{
    chain_certificate, escape_search, extremality_diagnostics, Circle3, EscapeConfig, EscapeOutcome, Section, Verdict,
};
use holdcircle::io::{self, Figure};
use holdcircle::planar::{Circle2, Point2, Polygon2};
use holdcircle::projection::iceberg_profile;
use holdcircle::tol::{Tolerances, TAU_GEOM, TAU_OPT};
use holdcircle::{verify, GeomError};

const EXIT_FAILURE: u8 = 1;
const EXIT_ESCAPE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "holdcircle", version, about = "Widths, cylinders and holding circles of convex polytopes")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Tolerance of geometric predicates.
    #[arg(long, global = true, default_value_t = TAU_GEOM)]
    tol_geom: f64,
    /// Convergence tolerance of the optimizers.
    #[arg(long, global = true, default_value_t = TAU_OPT)]
    tol_opt: f64,
    /// Samples of the θ profile.
    #[arg(long, global = true, default_value_t = 720)]
    theta_samples: usize,
    /// Pose budget of the escape search.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Build a reference body and write body.json, predictions.json and scene.obj.
    Construct(ConstructArgs),
    /// Width, cylinder, holding circle and iceberg profile of a body.
    Analyze {
        body: PathBuf,
        #[arg(long)]
        circle: Option<PathBuf>,
        /// Do not search for a circle when none is given.
        #[arg(long)]
        no_search: bool,
        /// Also write profile.csv and profile.svg.
        #[arg(long)]
        profile: bool,
        /// Exit with 3 when the verdict is inconclusive.
        #[arg(long)]
        require_verdict: bool,
    },
    /// Search for a motion taking the circle away from the body.
    Escape { body: PathBuf, circle: PathBuf },
    /// Width chain certificate of a circle.
    Chain { body: PathBuf, circle: PathBuf },
    /// Run the reference checks.
    #[command(name = "verify-paper")]
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Write scene.obj and, with a circle, the profile and section figures.
    Render {
        body: PathBuf,
        #[arg(long)]
        circle: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    OctahedronIceberg,
    SevenVertexIceberg,
    FlatTetra,
    FiveVertexFlat,
    SkewTetra,
    BevelledCylinder,
    WdTetra,
    SimplexHull,
}

#[derive(Args)]
struct ConstructArgs {
    family: Family,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    /// Cylinder length parameter R.
    #[arg(long)]
    r: Option<f64>,
    /// Polygon count of the bevelled cylinder circles.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    /// Dimension of the simplex hull.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Serialize)]
struct Predictions<'a> {
    family: &'a str,
    params: &'a BTreeMap<String, f64>,
    predicted: &'a BTreeMap<String, Prediction>,
    circle: Option<&'a Circle3>,
}

type CliResult = Result<u8, GeomError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FAILURE } else { 0 });
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_FAILURE
    });
    ExitCode::from(code)
}

fn run(cli: Cli) -> CliResult {
    let c = cli.common;
    fs::create_dir_all(&c.out_dir).map_err(|e| GeomError::Io(format!("{}: {e}", c.out_dir.display())))?;
    match cli.command {
        Command::Construct(args) => construct(&args, &c.out_dir),
        Command::Analyze { body, circle, no_search, profile, require_verdict } => {
            cmd_analyze(&c, &body, circle.as_deref(), !no_search, profile, require_verdict)
        }
        Command::Escape { body, circle } => cmd_escape(&c, &body, &circle),
        Command::Chain { body, circle } => cmd_chain(&c, &body, &circle),
        Command::Verify { suite } => cmd_verify(&c, &suite),
        Command::Render { body, circle } => cmd_render(&c, &body, circle.as_deref()),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, GeomError> {
    v.ok_or_else(|| GeomError::InvalidParam(format!("missing --{flag}")))
}

fn body_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "body".into())
}

fn construct(a: &ConstructArgs, out: &Path) -> CliResult {
    if let Family::SimplexHull = a.family {
        let inst = families::simplex_hull_nd(need(a.n, "n")?, need(a.a, "a")?, need(a.h, "h")?)?;
        io::write_json(&out.join("body.json"), &inst.body)?;
        let preds = Predictions { family: &inst.family, params: &inst.params, predicted: &inst.predicted, circle: None };
        io::write_json(&out.join("predictions.json"), &preds)?;
        println!("{}: {} vertices in dimension {}", inst.family, inst.body.vertices().len(), inst.body.dim());
        return Ok(0);
    }
    let inst = match a.family {
        Family::OctahedronIceberg => families::octahedron_iceberg(need(a.a, "a")?, need(a.h, "h")?)?,
        Family::SevenVertexIceberg => families::seven_vertex_iceberg(need(a.a, "a")?, need(a.h, "h")?)?,
        Family::FlatTetra => families::flat_tetrahedron(need(a.eps, "eps")?)?,
        Family::FiveVertexFlat => families::five_vertex_flat(need(a.eps, "eps")?)?,
        Family::SkewTetra => families::skew_tetrahedron(need(a.eps, "eps")?)?,
        Family::BevelledCylinder => families::bevelled_cylinder(need(a.r, "r")?, a.m.unwrap_or(64))?,
        Family::WdTetra => families::wd_tetrahedron(need(a.p, "p")?, need(a.q, "q")?, need(a.s, "s")?)?,
        Family::SimplexHull => unreachable!(),
    };
    io::write_json(&out.join("body.json"), &inst.body)?;
    let preds = Predictions {
        family: &inst.family,
        params: &inst.params,
        predicted: &inst.predicted,
        circle: inst.circle.as_ref(),
    };
    io::write_json(&out.join("predictions.json"), &preds)?;
    if let Some(c) = &inst.circle {
        io::write_json(&out.join("circle.json"), c)?;
    }
    io::write_text(&out.join("scene.obj"), &io::obj_scene(&inst.body, inst.circle.as_ref()))?;
    println!("{}: {} vertices, {} faces", inst.family, inst.body.vertices().len(), inst.body.faces().len());
    Ok(0)
}

fn analysis_config(c: &Common) -> AnalysisConfig {
    AnalysisConfig { theta_samples: c.theta_samples, ..Default::default() }
        .with_tolerances(Tolerances { geom: c.tol_geom, opt: c.tol_opt })
        .with_escape(c.budget, c.seed)
}

fn escape_config(c: &Common) -> EscapeConfig {
    EscapeConfig { budget: c.budget, seed: c.seed, tol: c.tol_geom, ..Default::default() }
}

fn cmd_analyze(c: &Common, body: &Path, circle: Option<&Path>, search: bool, profile: bool, require: bool) -> CliResult {
    let k = io::read_polytope(body)?;
    let circle = circle.map(io::read_circle).transpose()?;
    let cfg = AnalysisConfig { search_circle: search, ..analysis_config(c) };
    let a = analyze(&body_id(body), &k, circle, &cfg)?;
    io::write_json(&c.out_dir.join("report.json"), &a.report)?;
    if let (true, Some(p)) = (profile, &a.profile) {
        io::write_text(&c.out_dir.join("profile.csv"), &io::profile_csv(p))?;
        io::write_text(&c.out_dir.join("profile.svg"), &io::profile_svg(p, &a.report.body_id))?;
    }
    print!("{}", a.report.summary());
    Ok(match a.report.verdict() {
        Some(Verdict::EscapeFound) => EXIT_ESCAPE,
        Some(Verdict::CertifiedHoldingEvidence) => 0,
        _ if require => EXIT_INCONCLUSIVE,
        _ => 0,
    })
}

fn cmd_escape(c: &Common, body: &Path, circle: &Path) -> CliResult {
    let k = io::read_polytope(body)?;
    let start = io::read_circle(circle)?;
    let outcome = escape_search(&k, &start, &escape_config(c))?;
    io::write_json(&c.out_dir.join("escape.json"), &outcome)?;
    match &outcome {
        EscapeOutcome::Found(path) => {
            println!("escape found: {} poses, step {:.6}", path.poses.len(), path.step);
            Ok(EXIT_ESCAPE)
        }
        EscapeOutcome::NotFoundWithinBudget { poses_checked, tree_size } => {
            println!("no escape within budget ({poses_checked} poses checked, tree size {tree_size})");
            Ok(0)
        }
    }
}

fn section_figure(title: &str, section: &Section, diameter: f64) -> Figure {
    let r = diameter / 2.0;
    let polygon = match section {
        Section::Polygon(p) => p.clone(),
        Section::Strip { normal, half_width } => {
            let b = 3.0 * r.max(*half_width);
            let square = Polygon2::hull(&[Point2::new(-b, -b), Point2::new(b, -b), Point2::new(b, b), Point2::new(-b, b)]);
            square.clip(normal, *half_width).clip(&-normal, *half_width)
        }
    };
    Figure { title: title.into(), polygons: vec![polygon], circles: vec![Circle2::new(Point2::zeros(), r)], strips: vec![] }
}

#[derive(Serialize)]
struct ChainOutput<'a> {
    certificate: &'a holdcircle::holding::ChainCertificate,
    extremality: Option<holdcircle::holding::Extremality>,
}

fn cmd_chain(c: &Common, body: &Path, circle: &Path) -> CliResult {
    let k = io::read_polytope(body)?;
    let circ = io::read_circle(circle)?;
    let cert = chain_certificate(&k, &circ)?;
    let extremality = extremality_diagnostics(&cert, circ.diameter).ok();
    io::write_json(&c.out_dir.join("chain.json"), &ChainOutput { certificate: &cert, extremality: extremality.clone() })?;
    io::write_text(&c.out_dir.join("section.svg"), &section_figure(&body_id(body), &cert.section, circ.diameter).to_svg())?;
    let v = &cert.values;
    println!("w               {:.9}", v.w);
    println!("min w_h(B)      {:.9}", v.min_wh_b);
    println!("min w_h(I)      {:.9}", v.min_wh_i);
    println!("w2(I n H)       {:.9}", v.w2_section);
    println!("3d/2            {:.9}", v.three_halves_d);
    if let Some(e) = &extremality {
        println!("Hausdorff/d*2   {:.3e}", e.hausdorff_normalized);
    }
    let ok = cert.checks.all();
    println!("chain           {}", if ok { "holds" } else { "violated" });
    Ok(if ok { 0 } else { EXIT_FAILURE })
}

fn cmd_verify(c: &Common, suite: &str) -> CliResult {
    let checks = verify::run(suite, c.seed)?;
    print!("{}", verify::table(&checks));
    io::write_json(&c.out_dir.join("verify.json"), &checks)?;
    Ok(if checks.iter().all(|k| k.pass) { 0 } else { EXIT_FAILURE })
}

fn cmd_render(c: &Common, body: &Path, circle: Option<&Path>) -> CliResult {
    let k: Polytope3 = io::read_polytope(body)?;
    let circ = circle.map(io::read_circle).transpose()?;
    io::write_text(&c.out_dir.join("scene.obj"), &io::obj_scene(&k, circ.as_ref()))?;
    if let Some(circ) = circ {
        let id = body_id(body);
        let p = iceberg_profile(&k, &HalfSpace::through(circ.normal, &circ.center), c.theta_samples)?;
        io::write_text(&c.out_dir.join("profile.csv"), &io::profile_csv(&p))?;
        io::write_text(&c.out_dir.join("profile.svg"), &io::profile_svg(&p, &id))?;
        if let Ok(cert) = chain_certificate(&k, &circ) {
            io::write_text(&c.out_dir.join("section.svg"), &section_figure(&id, &cert.section, circ.diameter).to_svg())?;
        }
    }
    println!("wrote figures to {}", c.out_dir.display());
    Ok(0)
}
