use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use polysym::latcount::{count_lattice_points, count_with_symmetry, ehrhart, lattice_points, volume, volume_randomized};
use polysym::permgrp::set_stabilizer;
use polysym::polycore::rational::{primitive_integer, to_rationals};
use polysym::polycore::{FaceIndexSet, HPolyhedron, Rational};
use polysym::repconv::{adjacency_graph, convert_dd_v, decompose, LevelPolicy, SymProblem};
use polysym::symdetect::{affine_symmetry_group, restricted_symmetries_h, SymmetryGroup};
use polysym::symilp::{symmetric_ilp_feasible, symmetric_ilp_optimize, BlockStructure, IlpOptimum, IlpOptions, IlpOutcome};

use crate::polyfile::{Kind, ParseError, PolyFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] polysym::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(polysym::Error::Verification(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command computed; `Empty` covers infeasible and empty answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Empty,
}

pub struct Report {
    pub stdout: String,
    pub status: Status,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { stdout, status: Status::Success }
    }
}

pub fn read_polyfile(path: &Path) -> CliResult<PolyFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    PolyFile::parse(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn symmetries(file: &PolyFile) -> CliResult<SymmetryGroup> {
    Ok(match file.kind {
        Kind::V => {
            let v = file.to_v()?;
            if !v.is_bounded() {
                return Err(CliError::Usage("unbounded V-representation (rays present) is not supported".into()));
            }
            affine_symmetry_group(&v)?
        }
        Kind::H => restricted_symmetries_h(&file.to_h()?)?,
    })
}

pub fn automorphisms(file: &PolyFile) -> CliResult<Report> {
    let sym = symmetries(file)?;
    let mut out = String::new();
    let _ = writeln!(out, "order {}", sym.group.order());
    let _ = writeln!(out, "generators {}", sym.group.generators().len());
    for g in sym.group.generators() {
        let _ = writeln!(out, "{g}");
    }
    Ok(Report::ok(out))
}

/// 1-based row indices separated by blanks or commas.
pub fn parse_index_set(text: &str, degree: usize) -> CliResult<FaceIndexSet> {
    let mut out = Vec::new();
    for t in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        match t.parse::<usize>() {
            Ok(i) if (1..=degree).contains(&i) => out.push(i - 1),
            _ => return Err(CliError::Usage(format!("invalid row index `{t}` (rows are 1..={degree})"))),
        }
    }
    Ok(FaceIndexSet::new(out))
}

pub struct ConvertOptions {
    pub levels: (usize, usize),
    pub adjacencies: bool,
    pub output: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub stabilizer_of: Option<String>,
}

pub fn convert(file: &PolyFile, input: &Path, opts: &ConvertOptions) -> CliResult<(Report, String)> {
    let sym = symmetries(file)?;
    let mut group = sym.group;
    if let Some(set) = &opts.stabilizer_of {
        let s = parse_index_set(set, file.rows.len())?;
        group = set_stabilizer(&group, &s);
    }
    let problem = match file.kind {
        Kind::V => SymProblem::facets_of(&file.to_v()?, group)?,
        Kind::H => SymProblem::vertices_of(&file.to_h()?, group)?,
    };
    let ledger = decompose(&problem, LevelPolicy::new(opts.levels.0, opts.levels.1))?;
    let mut rows = Vec::with_capacity(ledger.len());
    for e in ledger.entries() {
        rows.push(match file.kind {
            Kind::V => {
                let (a, b) = problem.inequality(&e.normal);
                let row: Vec<Rational> = std::iter::once(b).chain(a.iter().map(|v| -v)).collect();
                to_rationals(&primitive_integer(&row))
            }
            Kind::H => std::iter::once(Rational::from_integer(1.into())).chain(problem.vertex(&e.normal)?).collect(),
        });
    }
    let kind = match file.kind {
        Kind::V => Kind::H,
        Kind::H => Kind::V,
    };
    let mut result = PolyFile::new(kind, rows, file.columns);
    result.orbit_sizes = Some(ledger.entries().iter().map(|e| e.size.clone()).collect());
    let text = result.to_string();

    let mut summary = format!(
        "group order {}\norbits {}\ntotal {}\n",
        problem.group().order(),
        ledger.len(),
        ledger.total()
    );
    if opts.adjacencies {
        let graph = adjacency_graph(&problem, &ledger)?;
        let dot_path = opts.dot.clone().unwrap_or_else(|| input.with_extension("dot"));
        write_file(&dot_path, &graph.to_dot())?;
        let _ = writeln!(summary, "adjacency graph written to {}", dot_path.display());
    }
    let stdout = match &opts.output {
        Some(path) => {
            write_file(path, &text)?;
            String::new()
        }
        None => text,
    };
    Ok((Report::ok(stdout), summary))
}

fn bounded_h(file: &PolyFile) -> CliResult<HPolyhedron> {
    Ok(match file.kind {
        Kind::H => file.to_h()?,
        Kind::V => {
            let v = file.to_v()?;
            if !v.is_bounded() {
                return Err(polysym::Error::Unbounded.into());
            }
            convert_dd_v(&v)?
        }
    })
}

fn declared_blocks(file: &PolyFile) -> Option<BlockStructure> {
    file.blocks.as_ref().map(|b| BlockStructure::from_sizes(b))
}

pub fn count(file: &PolyFile, symmetric: bool) -> CliResult<Report> {
    let p = bounded_h(file)?;
    let n = if symmetric {
        let blocks = declared_blocks(file)
            .ok_or_else(|| CliError::Usage("--symmetric needs a `blocks:` header".into()))?;
        count_with_symmetry(&p, &blocks)?
    } else {
        count_lattice_points(&p)?
    };
    let status = if n.is_zero() { Status::Empty } else { Status::Success };
    Ok(Report { stdout: format!("{n}\n"), status })
}

pub fn ehrhart_cmd(file: &PolyFile, period_bound: u64) -> CliResult<Report> {
    let p = bounded_h(file)?;
    Ok(Report::ok(ehrhart(&p, period_bound)?.to_string()))
}

pub fn volume_cmd(file: &PolyFile, seed: Option<u64>) -> CliResult<Report> {
    let p = bounded_h(file)?;
    let v = match seed {
        Some(s) => volume_randomized(&p, s)?,
        None => volume(&p)?,
    };
    Ok(Report::ok(format!("{v}\n")))
}

fn objective(file: &PolyFile) -> Option<Vec<Rational>> {
    file.maximize.as_ref().map(|c| c[1..].to_vec())
}

fn point_line(x: &[BigInt]) -> String {
    x.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn ilp(file: &PolyFile) -> CliResult<(Report, Option<String>)> {
    if file.kind != Kind::H {
        return Err(CliError::Usage("ilp expects an H-representation".into()));
    }
    let p = file.to_h()?;
    let c = objective(file);
    let Some(blocks) = declared_blocks(file) else {
        let warning = "warning: no `blocks:` header, enumerating all integer points".to_string();
        return Ok((brute_force_ilp(&p, c.as_deref())?, Some(warning)));
    };
    let opts = IlpOptions {
        sum_bounds: file.sum_bounds.clone(),
        ..IlpOptions::default()
    };
    let mut out = String::new();
    let status = match c {
        None => match symmetric_ilp_feasible(&p, &blocks, &opts)? {
            IlpOutcome::Feasible { point, fibers_tested } => {
                let _ = writeln!(out, "feasible\npoint {}\nfibers-tested {fibers_tested}", point_line(&point));
                Status::Success
            }
            IlpOutcome::Infeasible { fibers_tested } => {
                let _ = writeln!(out, "infeasible\nfibers-tested {fibers_tested}");
                Status::Empty
            }
        },
        Some(c) => match symmetric_ilp_optimize(&p, &blocks, &c, &opts)? {
            IlpOptimum::Optimal { point, value, fibers_tested } => {
                let _ = writeln!(
                    out,
                    "optimal\npoint {}\nvalue {value}\nfibers-tested {fibers_tested}",
                    point_line(&point)
                );
                Status::Success
            }
            IlpOptimum::Infeasible { fibers_tested } => {
                let _ = writeln!(out, "infeasible\nfibers-tested {fibers_tested}");
                Status::Empty
            }
        },
    };
    Ok((Report { stdout: out, status }, None))
}

fn brute_force_ilp(p: &HPolyhedron, c: Option<&[Rational]>) -> CliResult<Report> {
    let limit = match c {
        Some(_) => usize::MAX,
        None => 1,
    };
    let points = lattice_points(p, limit)?;
    let best = match c {
        None => points.into_iter().next().map(|x| (x, None)),
        Some(c) => {
            let mut best: Option<(Vec<BigInt>, Rational)> = None;
            for x in points {
                let v: Rational = to_rationals(&x).iter().zip(c).map(|(a, b)| a * b).sum();
                if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
                    best = Some((x, v));
                }
            }
            best.map(|(x, v)| (x, Some(v)))
        }
    };
    Ok(match best {
        Some((x, value)) => {
            let mut out = format!("{}\npoint {}\n", if value.is_some() { "optimal" } else { "feasible" }, point_line(&x));
            if let Some(v) = value {
                let _ = writeln!(out, "value {v}");
            }
            Report::ok(out)
        }
        None => Report {
            stdout: "infeasible\n".into(),
            status: Status::Empty,
        },
    })
}
