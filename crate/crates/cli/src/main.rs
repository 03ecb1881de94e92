use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tripod_core::io::{
    render_svg, BoundComparison, ClassSummary, ConfigurationRecord, CurveSpec, ParsedCurve, PolygonSummary,
    RecordSource, ResultDocument,
};
use tripod_core::morse::{analyze, hyperbolic_minor_checks, find_diameters, MinorCase, SearchOptions};
use tripod_core::polygon::{enumerate_polygon, regular_count, RegularPolygon};
use tripod_core::triple_normal::solve_triple_normal;
use tripod_core::tripod_euclidean::{enumerate_classes, find_tripods, tripod_lower_bound};
use tripod_core::{GeometryKind, SampledCurve};

const CURVE_POINTS: usize = 720;

#[derive(Parser)]
#[command(name = "tripod", version, about = "Tripod configurations and triple normals of closed curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    Euclidean,
    Spherical,
    #[value(alias = "hyperbolic")]
    HyperbolicDisk,
}

impl From<GeometryArg> for GeometryKind {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::Euclidean => GeometryKind::Euclidean,
            GeometryArg::Spherical => GeometryKind::Spherical,
            GeometryArg::HyperbolicDisk => GeometryKind::HyperbolicDisk,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find and certify tripod configurations of a curve.
    FindTripods {
        spec: PathBuf,
        #[arg(long, value_enum)]
        geometry: Option<GeometryArg>,
        /// Offset of the parallel curve for non-Euclidean searches.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Three normals meeting at prescribed angles.
    TripleNormal {
        spec: PathBuf,
        /// Comma-separated angles between consecutive normals.
        #[arg(long, value_delimiter = ',', required = true)]
        angles: Vec<f64>,
        #[arg(long)]
        degrees: bool,
        /// Turning sense of the normals, 1 or -1; both when omitted.
        #[arg(long, allow_hyphen_values = true)]
        orientation: Option<f64>,
    },
    /// Index classes for rotation index n and the implied lower bound.
    CountClasses {
        #[arg(long)]
        n: usize,
    },
    /// Double normals of a convex curve with their orientation signs.
    Diameters { spec: PathBuf },
    /// Interior and boundary critical points of the tripod functional.
    Morse {
        spec: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Hessian minors of the two-circle scene in the hyperbolic disk.
    Minors {
        #[arg(long = "R")]
        radius: f64,
        #[arg(long, value_parser = ["1", "2"])]
        case: Option<String>,
    },
    /// Tripod configurations of a regular polygon.
    Polygon {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        circumradius: f64,
    },
    /// Draw a result document as SVG.
    Render {
        result: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn read_spec(path: &Path, geometry: Option<GeometryArg>) -> Result<(CurveSpec, ParsedCurve)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut spec = CurveSpec::from_json(&text)?;
    if let Some(g) = geometry {
        let g = GeometryKind::from(g);
        match &mut spec {
            CurveSpec::ParametricSamples { geometry, .. } => *geometry = g,
            s if s.geometry() != g => bail!("a {} spec cannot be read in {} geometry", kind(s), g.name()),
            _ => {}
        }
    }
    let parsed = spec.build()?;
    Ok((spec, parsed))
}

fn kind(spec: &CurveSpec) -> &'static str {
    match spec {
        CurveSpec::SupportFourier { .. } => "support_fourier",
        CurveSpec::ParametricSamples { .. } => "parametric_samples",
        CurveSpec::DiskRadial { .. } => "disk_radial",
        CurveSpec::SphereRadial { .. } => "sphere_radial",
        CurveSpec::RegularPolygon { .. } => "regular_polygon",
    }
}

fn document(command: &str, spec: &CurveSpec, parsed: &ParsedCurve) -> ResultDocument {
    let mut doc = ResultDocument::new(command);
    doc.input = Some(spec.clone());
    doc.geometry = Some(parsed.geometry());
    doc.curve = parsed.polyline(CURVE_POINTS);
    doc
}

fn sampled(parsed: &ParsedCurve) -> Result<SampledCurve> {
    match parsed {
        ParsedCurve::Sampled(c) => Ok(c.clone()),
        ParsedCurve::Support(sc) => Ok(SampledCurve::new(Arc::new(sc.clone()), GeometryKind::Euclidean)?),
        ParsedCurve::Polygon(_) => bail!("this command needs a smooth curve, not a polygon"),
    }
}

fn polygon_document(doc: &mut ResultDocument, poly: &RegularPolygon) -> Result<()> {
    let tripods = enumerate_polygon(&poly.vertices)?;
    let diameter = 2.0 * poly.circumradius;
    for t in &tripods {
        doc.configurations
            .push(ConfigurationRecord::from_polygon(&poly.vertices, t, diameter)?);
    }
    doc.counts.insert("configurations".into(), tripods.len());
    doc.polygon = Some(PolygonSummary {
        n: poly.n,
        count: tripods.len(),
        expected: regular_count(poly.n),
    });
    Ok(())
}

fn morse_document(doc: &mut ResultDocument, curve: &SampledCurve, epsilon: Option<f64>) -> Result<()> {
    let options = SearchOptions {
        epsilon,
        ..Default::default()
    };
    let a = analyze(curve, &options)?;
    let diameter = curve.diameter();
    for (c, cp) in a.interior.configurations.iter().zip(&a.interior.critical_points) {
        doc.configurations.push(ConfigurationRecord::from_critical(c, cp, diameter)?);
    }
    doc.continuum = a.continuum();
    doc.counts.insert("interior_orbits".into(), a.interior.critical_points.len());
    doc.counts.insert("starts".into(), a.interior.starts);
    doc.counts.insert("converged".into(), a.interior.converged);
    doc.counts.insert("diameters".into(), a.diameters.diameters.len());
    doc.counts.insert("boundary_points".into(), a.boundary.len());
    doc.closeness_score = a.interior.closeness;
    doc.notes.extend(a.interior.diagnostics.iter().cloned());
    doc.notes.extend(a.diagnostics.iter().cloned());
    doc.notes.push(a.polynomials.n_count_note.clone());
    doc.notes.push(format!("epsilon = {}", a.interior.epsilon));
    doc.diameters = Some(a.diameters);
    doc.boundary = a.boundary;
    doc.morse = Some(a.polynomials);
    Ok(())
}

fn run(cli: Cli) -> Result<ResultDocument> {
    match cli.command {
        Command::FindTripods { spec, geometry, epsilon } => {
            let (spec, parsed) = read_spec(&spec, geometry)?;
            let mut doc = document("find-tripods", &spec, &parsed);
            match &parsed {
                ParsedCurve::Support(sc) => {
                    let s = find_tripods(sc)?;
                    for c in &s.configurations {
                        doc.configurations
                            .push(ConfigurationRecord::from_tripod(c, RecordSource::SupportFunction, s.diameter)?);
                    }
                    doc.continuum = s.continuum;
                    doc.counts.insert("configurations".into(), s.configurations.len());
                    doc.counts.insert("classes".into(), s.classes.len());
                    doc.bound = Some(BoundComparison {
                        lower_bound: s.lower_bound,
                        found: s.configurations.len(),
                        met: s.meets_lower_bound(),
                    });
                }
                ParsedCurve::Sampled(c) if c.geometry() == GeometryKind::Euclidean => {
                    let results = solve_triple_normal(c, [TAU / 3.0; 3], None)?;
                    for r in &results {
                        doc.configurations.push(ConfigurationRecord::from_triple_normal(r)?);
                    }
                    doc.continuum = results.iter().any(|r| r.continuum);
                    doc.counts.insert("configurations".into(), results.len());
                }
                ParsedCurve::Sampled(c) => morse_document(&mut doc, c, epsilon)?,
                ParsedCurve::Polygon(p) => polygon_document(&mut doc, p)?,
            }
            Ok(doc)
        }
        Command::TripleNormal {
            spec,
            angles,
            degrees,
            orientation,
        } => {
            if angles.len() != 3 {
                bail!("--angles takes exactly three values, got {}", angles.len());
            }
            let (spec, parsed) = read_spec(&spec, None)?;
            let curve = sampled(&parsed)?;
            let scale = if degrees { TAU / 360.0 } else { 1.0 };
            let thetas = [angles[0] * scale, angles[1] * scale, angles[2] * scale];
            if let Some(o) = orientation {
                if o.abs() != 1.0 {
                    bail!("orientation must be 1 or -1");
                }
            }
            let mut doc = document("triple-normal", &spec, &parsed);
            let results = solve_triple_normal(&curve, thetas, orientation)?;
            for r in &results {
                doc.configurations.push(ConfigurationRecord::from_triple_normal(r)?);
            }
            doc.continuum = results.iter().any(|r| r.continuum);
            doc.counts.insert("configurations".into(), results.len());
            Ok(doc)
        }
        Command::CountClasses { n } => {
            if n == 0 {
                bail!("rotation index must be positive");
            }
            let mut doc = ResultDocument::new("count-classes");
            let orbits = enumerate_classes(n);
            doc.counts.insert("classes".into(), orbits.len());
            doc.classes = Some(ClassSummary {
                n,
                classes: orbits.len(),
                bound: tripod_lower_bound(n),
                orbits,
            });
            Ok(doc)
        }
        Command::Diameters { spec } => {
            let (spec, parsed) = read_spec(&spec, None)?;
            let curve = sampled(&parsed)?;
            let mut doc = document("diameters", &spec, &parsed);
            let ds = find_diameters(&curve)?;
            doc.continuum = ds.continuum;
            doc.counts.insert("diameters".into(), ds.diameters.len());
            doc.counts.insert("positive".into(), ds.positive);
            doc.counts.insert("negative".into(), ds.negative);
            doc.diameters = Some(ds);
            Ok(doc)
        }
        Command::Morse { spec, epsilon } => {
            let (spec, parsed) = read_spec(&spec, None)?;
            let curve = sampled(&parsed)?;
            let mut doc = document("morse", &spec, &parsed);
            morse_document(&mut doc, &curve, epsilon)?;
            Ok(doc)
        }
        Command::Minors { radius, case } => {
            let cases = match case.as_deref() {
                Some("1") => vec![MinorCase::One],
                Some("2") => vec![MinorCase::Two],
                _ => vec![MinorCase::One, MinorCase::Two],
            };
            let mut doc = ResultDocument::new("minors");
            doc.geometry = Some(GeometryKind::HyperbolicDisk);
            for c in cases {
                doc.minors.push(hyperbolic_minor_checks(radius, c)?);
            }
            Ok(doc)
        }
        Command::Polygon { n, circumradius } => {
            let spec = CurveSpec::RegularPolygon { n, circumradius };
            let parsed = spec.build()?;
            let mut doc = document("polygon", &spec, &parsed);
            let ParsedCurve::Polygon(p) = &parsed else { unreachable!() };
            polygon_document(&mut doc, p)?;
            Ok(doc)
        }
        Command::Render { result, output } => {
            let text = std::fs::read_to_string(&result).with_context(|| format!("reading {}", result.display()))?;
            let doc = ResultDocument::from_json(&text)?;
            std::fs::write(&output, render_svg(&doc)).with_context(|| format!("writing {}", output.display()))?;
            Ok(doc)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("TRIPOD_THREADS") {
        let n: usize = v.parse().with_context(|| format!("TRIPOD_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let render = matches!(cli.command, Command::Render { .. });
    let doc = match init_threads().and_then(|_| run(cli)) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if !render {
        match doc.to_json() {
            Ok(json) => println!("{json}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    }
    if doc.certified() {
        ExitCode::SUCCESS
    } else {
        eprintln!("certification failed");
        ExitCode::from(2)
    }
}
