//! Command-line front end: bound evaluation, parameter sweeps, packing
//! verification, decomposition, generation, and contact-graph reports.
//!
//! Exit codes: 0 on success, 1 when a verified property is violated, 2 on
//! input errors. All angles and lengths are radians / absolute units.

use clap::{Parser, Subcommand, ValueEnum};
use separable::bounds::{self, ContactUpper};
use separable::decomposition;
use separable::formulas;
use separable::generators;
use separable::geom::Geometry;
use separable::packing::{self, Packing};
use separable::{io as sio, svg, Error};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "separable",
    about = "Density, tightness, and contact bounds for separable disk packings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl From<GeometryArg> for Geometry {
    fn from(g: GeometryArg) -> Geometry {
        match g {
            GeometryArg::Euclidean => Geometry::Euclidean,
            GeometryArg::Spherical => Geometry::Spherical,
            GeometryArg::Hyperbolic => Geometry::Hyperbolic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Density,
    Tightness,
    Regions,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateKind {
    ExtremalDensity,
    ExtremalTightness,
    SquareGrid,
    HexPatch,
    Platonic,
    ConstantsH16,
    ConstantsH20,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the density and tightness bounds at one parameter point.
    Bounds {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        #[arg(long)]
        lambda: f64,
        /// Disk radius (defaults to 1 in the Euclidean plane).
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Sweep a bound (or the regime-boundary curves) over a lambda grid.
    Sweep {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[arg(long)]
        end: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Fixed disk radius for the curved planes.
        #[arg(long)]
        rho: Option<f64>,
        /// CSV output path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// SVG output path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Verify the packing condition and lambda-separability of a file.
    Verify {
        path: PathBuf,
        /// Check separability at this lambda instead of the file's.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Decompose the centers of a packing file into refined cells.
    Decompose {
        path: PathBuf,
        /// Disk radius override for the refinement threshold.
        #[arg(long)]
        rho: Option<f64>,
        /// Cell record output path.
        #[arg(long)]
        cells: Option<PathBuf>,
        /// SVG output path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generate one of the named configurations.
    Generate {
        #[arg(long, value_enum)]
        kind: GenerateKind,
        #[arg(long)]
        lambda: Option<f64>,
        /// Cells per axis of a lattice window.
        #[arg(long, default_value_t = 3)]
        window: usize,
        /// Grid side length / patch size / platonic cap count.
        #[arg(long)]
        n: Option<usize>,
        /// Output path for the packing file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contact-graph report for a packing file.
    Contact { path: PathBuf },
}

/// Paths resolve under `SEPARABLE_OUT_DIR` when set and relative.
fn out_path(p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os("SEPARABLE_OUT_DIR") {
        Some(dir) => PathBuf::from(dir).join(p),
        None => p.to_path_buf(),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::Domain { .. } | Error::TooFewPoints { .. } => 2,
        _ => 1,
    }
}

fn describe_triangle(t: &separable::triangles::IsoTriangle) -> String {
    format!(
        "{:?} triangle, half-base {:.12}, half-leg {:.12}",
        t.family, t.half_base, t.half_leg
    )
}

fn run_bounds(geometry: Geometry, lambda: f64, rho: Option<f64>) -> Result<i32, Error> {
    let rho = rho.unwrap_or(1.0);
    let d = bounds::density_bound(geometry, lambda, rho)?;
    let t = bounds::tightness_bound(geometry, lambda, rho)?;
    println!(
        "geometry {}  lambda {}  rho {}",
        sio::geometry_name(geometry),
        sio::g17(lambda),
        sio::g17(rho)
    );
    for (name, b) in [("density", &d), ("tightness", &t)] {
        println!(
            "{name} bound {}  regime {}  sharp {}",
            sio::g17(b.value),
            b.regime.label(),
            b.sharp
        );
        if let Some(tri) = &b.extremal {
            println!("{name} extremal {}", describe_triangle(tri));
        }
    }
    Ok(0)
}

fn sweep_rows(
    geometry: Geometry,
    quantity: Quantity,
    grid: &[f64],
    rho: Option<f64>,
) -> Result<(String, Vec<(String, Vec<(f64, f64)>)>), Error> {
    let mut csv = String::new();
    let mut curves: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    match quantity {
        Quantity::Density | Quantity::Tightness => {
            let rho = rho.unwrap_or(1.0);
            let with_rho = geometry != Geometry::Euclidean;
            csv.push_str(if with_rho {
                "lambda,rho,value,regime\n"
            } else {
                "lambda,value,regime\n"
            });
            let mut pts = Vec::new();
            for &lambda in grid {
                let b = match quantity {
                    Quantity::Density => bounds::density_bound(geometry, lambda, rho)?,
                    _ => bounds::tightness_bound(geometry, lambda, rho)?,
                };
                if with_rho {
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        sio::g17(lambda),
                        sio::g17(rho),
                        sio::g17(b.value),
                        b.regime.label()
                    ));
                } else {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        sio::g17(lambda),
                        sio::g17(b.value),
                        b.regime.label()
                    ));
                }
                pts.push((lambda, b.value));
            }
            let name = match quantity {
                Quantity::Density => "density-bound",
                _ => "tightness-bound",
            };
            curves.push((name.to_string(), pts));
        }
        Quantity::Regions => {
            csv.push_str("lambda,curve,value\n");
            let mut named: Vec<(&str, Box<dyn Fn(f64) -> Option<f64>>)> = Vec::new();
            match geometry {
                Geometry::Spherical => {
                    named.push((
                        "y-regular-min",
                        Box::new(|l| formulas::y_regular_min(Geometry::Spherical, l).ok()),
                    ));
                    named.push((
                        "y-regular-max",
                        Box::new(|l| formulas::y_regular_max(l).ok()),
                    ));
                    named.push((
                        "quarter-pi",
                        Box::new(|_| Some(std::f64::consts::FRAC_PI_4)),
                    ));
                    named.push((
                        "branch-point",
                        Box::new(|l| Some(formulas::spherical_branch_point(l))),
                    ));
                    named.push((
                        "half-pi-minus-lambda",
                        Box::new(|l| Some(std::f64::consts::FRAC_PI_2 - l)),
                    ));
                }
                Geometry::Hyperbolic => {
                    named.push(("lambda", Box::new(Some)));
                    named.push((
                        "half-leg-at-min",
                        Box::new(|l| {
                            let ym = formulas::y_min_radius(Geometry::Hyperbolic, l).ok()?;
                            formulas::half_leg_hyp(ym, l).ok()
                        }),
                    ));
                    named.push((
                        "y-regular-min",
                        Box::new(|l| formulas::y_regular_min(Geometry::Hyperbolic, l).ok()),
                    ));
                    named.push((
                        "y-radius-min",
                        Box::new(|l| formulas::y_min_radius(Geometry::Hyperbolic, l).ok()),
                    ));
                    named.push((
                        "branch-point",
                        Box::new(|l| Some(formulas::hyperbolic_branch_point(l))),
                    ));
                }
                Geometry::Euclidean => {
                    return Err(Error::Domain {
                        what: "regions sweep is defined for the curved planes",
                        value: 0.0,
                    })
                }
            }
            for (name, f) in &named {
                let mut pts = Vec::new();
                for &lambda in grid {
                    if let Some(v) = f(lambda) {
                        csv.push_str(&format!("{},{name},{}\n", sio::g17(lambda), sio::g17(v)));
                        pts.push((lambda, v));
                    }
                }
                curves.push((name.to_string(), pts));
            }
        }
    }
    Ok((csv, curves))
}

fn run_verify(path: &Path, lambda: Option<f64>) -> Result<i32, Error> {
    let mut p = sio::read_packing_from_path(path)?;
    if let Some(l) = lambda {
        p = Packing::new(p.geometry, p.centers, p.rho, l)?;
    }
    println!(
        "loaded {} centers, geometry {}, rho {}, lambda {}",
        p.len(),
        sio::geometry_name(p.geometry),
        sio::g17(p.rho),
        sio::g17(p.lambda)
    );
    if let Some(v) = packing::verify_packing(&p)? {
        println!(
            "FAIL packing: centers {} and {} at distance {} < 2 rho",
            v.i,
            v.j,
            sio::g17(v.distance)
        );
        return Ok(1);
    }
    println!("packing condition holds");
    let r = packing::is_lambda_separable(&p)?;
    if !r.separable {
        let (i, j) = r.failing_pair.unwrap();
        println!("FAIL separability: pair ({i}, {j}) admits no clearing line");
        return Ok(1);
    }
    println!("lambda-separable: witnessed {} pairs", r.witnesses.len());
    Ok(0)
}

fn run_decompose(
    path: &Path,
    rho: Option<f64>,
    cells: Option<&Path>,
    svg_path: Option<&Path>,
) -> Result<i32, Error> {
    let p = sio::read_packing_from_path(path)?;
    let rho = rho.unwrap_or(p.rho);
    let m = decomposition::molnar(&p.centers, p.geometry)?;
    let d = decomposition::refine(&m, rho)?;
    let type1 = d
        .cells
        .iter()
        .filter(|c| c.kind == decomposition::CellKind::Type1)
        .count();
    println!(
        "cells {} (type1 {}, type2 {}), saturation radius {}",
        d.cells.len(),
        type1,
        d.cells.len() - type1,
        sio::g17(d.saturation_radius)
    );
    if let Some(out) = cells {
        let f = std::fs::File::create(out_path(out))?;
        sio::write_cells(std::io::BufWriter::new(f), &d)?;
        println!("cells written to {}", out.display());
    }
    if let Some(out) = svg_path {
        std::fs::write(out_path(out), svg::render_decomposition(&d, Some(&p))?)?;
        println!("svg written to {}", out.display());
    }
    Ok(0)
}

fn run_generate(
    kind: GenerateKind,
    lambda: Option<f64>,
    window: usize,
    n: Option<usize>,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let packing = match kind {
        GenerateKind::ExtremalDensity => {
            generators::extremal_density_lattice(lambda.unwrap_or(0.0), window)?
        }
        GenerateKind::ExtremalTightness => {
            generators::extremal_tightness_config(lambda.unwrap_or(0.0), window)?
        }
        GenerateKind::SquareGrid => generators::square_grid(n.unwrap_or(3))?,
        GenerateKind::HexPatch => generators::hexagonal_patch(n.unwrap_or(7))?,
        GenerateKind::Platonic => generators::platonic_caps(n.unwrap_or(6))?,
        GenerateKind::ConstantsH16 | GenerateKind::ConstantsH20 => {
            let t = match kind {
                GenerateKind::ConstantsH16 => generators::NamedTiling::H16,
                _ => generators::NamedTiling::H20,
            };
            let (rho, lam) = generators::special_tiling_constants(t);
            println!("rho {}", sio::g17(rho));
            println!("lambda {}", sio::g17(lam));
            return Ok(0);
        }
    };
    match out {
        Some(path) => {
            sio::write_packing_to_path(&out_path(path), &packing)?;
            println!("{} centers written to {}", packing.len(), path.display());
        }
        None => {
            let mut buf = Vec::new();
            sio::write_packing(&mut buf, &packing)?;
            print!("{}", String::from_utf8_lossy(&buf));
        }
    }
    Ok(0)
}

fn run_contact(path: &Path) -> Result<i32, Error> {
    let p = sio::read_packing_from_path(path)?;
    let g = packing::contact_graph(&p)?;
    println!("n {}  contacts {}", g.n, g.edges.len());
    println!("triangle-free {}", g.is_triangle_free());
    if p.geometry == Geometry::Euclidean {
        let k = g.outer_face_incidences();
        println!("outer-face incidences {k}");
        println!(
            "triangle-free edge cap 2n - k/2 - 2 = {}",
            packing::triangle_free_edge_bound(g.n, k)
        );
        if g.n > 1 {
            let b = bounds::contact_bounds(g.n as u64, p.lambda)?;
            match b.upper {
                ContactUpper::Exact(v) => println!("theorem: exact maximum {v}"),
                ContactUpper::TwoTermWithUnresolvedConstant { leading_value } => println!(
                    "theorem: lower {}  upper {} + O(1) (unresolved constant)",
                    b.lower,
                    sio::g17(leading_value)
                ),
            }
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Bounds {
            geometry,
            lambda,
            rho,
        } => run_bounds(geometry.into(), lambda, rho),
        Command::Sweep {
            geometry,
            quantity,
            start,
            end,
            steps,
            rho,
            csv,
            svg: svg_out,
        } => {
            if steps == 0 || !(end > start) {
                return Err(Error::Domain {
                    what: "sweep grid",
                    value: end,
                });
            }
            let grid: Vec<f64> = (0..=steps)
                .map(|i| start + (end - start) * i as f64 / steps as f64)
                .collect();
            let (csv_text, curves) = sweep_rows(geometry.into(), quantity, &grid, rho)?;
            match csv {
                Some(path) => {
                    std::fs::write(out_path(&path), &csv_text)?;
                    println!("csv written to {}", path.display());
                }
                None => print!("{csv_text}"),
            }
            if let Some(path) = svg_out {
                std::fs::write(out_path(&path), svg::render_curves(&curves))?;
                println!("svg written to {}", path.display());
            }
            Ok(0)
        }
        Command::Verify { path, lambda } => run_verify(&path, lambda),
        Command::Decompose {
            path,
            rho,
            cells,
            svg,
        } => run_decompose(&path, rho, cells.as_deref(), svg.as_deref()),
        Command::Generate {
            kind,
            lambda,
            window,
            n,
            out,
        } => run_generate(kind, lambda, window, n, out.as_deref()),
        Command::Contact { path } => run_contact(&path),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}
