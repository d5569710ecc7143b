mod common;

use common::{data, polysym};
use polysym::polycore::{rat, Rational};
use polysym::repconv::convert_dd_v;
use polysym_cli::polyfile::{Kind, PolyFile};

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn automorphism_orders() {
    let cube = polysym(&["automorphisms", &path("cube3.ext")]);
    assert_eq!(cube.code, 0);
    assert!(cube.stdout.starts_with("order 48\n"));
    assert!(polysym(&["automorphisms", &path("cube3.ine")]).stdout.starts_with("order 48\n"));
    assert!(polysym(&["automorphisms", &path("quadrilateral.ext")]).stdout.starts_with("order 1\n"));
    // Any triangle is an affine image of the regular one.
    assert!(polysym(&["automorphisms", &path("triangle.ext")]).stdout.starts_with("order 6\n"));
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.ine");
    std::fs::write(&f, "H-representation\nbegin\n2 three integer\n1 0\nend\n").unwrap();
    let run = polysym(&["automorphisms", f.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 3"), "{}", run.stderr);
    let rays = dir.path().join("rays.ext");
    std::fs::write(&rays, "V-representation\nbegin\n2 3 integer\n1 0 0\n0 1 0\nend\n").unwrap();
    let run = polysym(&["automorphisms", rays.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("unbounded"), "{}", run.stderr);
}

#[test]
fn cube_has_one_vertex_orbit() {
    let run = polysym(&["convert", "--idm-adm-level", "0", "1", &path("cube3.ine")]);
    assert_eq!(run.code, 0);
    let out = PolyFile::parse(&run.stdout).unwrap();
    assert_eq!(out.kind, Kind::V);
    assert_eq!(out.rows.len(), 1);
    assert_eq!(out.orbit_sizes.unwrap()[0], 8u32.into());
}

#[test]
fn trivial_symmetry_conversion_is_full_conversion() {
    let run = polysym(&["convert", &path("quadrilateral.ext")]);
    assert_eq!(run.code, 0);
    let out = PolyFile::parse(&run.stdout).unwrap();
    let input = PolyFile::parse(&std::fs::read_to_string(data("quadrilateral.ext")).unwrap()).unwrap();
    let full = convert_dd_v(&input.to_v().unwrap()).unwrap();
    let normalise = |a: &[Rational], b: &Rational| {
        let row: Vec<Rational> = std::iter::once(b.clone()).chain(a.iter().map(|v| -v)).collect();
        polysym::polycore::rational::primitive_integer(&row)
    };
    let mut want: Vec<_> = full.rows().map(|(a, b)| normalise(a, b)).collect();
    let mut got: Vec<_> = out
        .rows
        .iter()
        .map(|r| polysym::polycore::rational::primitive_integer(r))
        .collect();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    assert!(out.orbit_sizes.unwrap().iter().all(|s| *s == 1u32.into()));
}

#[test]
fn counting_commands() {
    assert_eq!(polysym(&["count", &path("cube3.ine")]).stdout, "27\n");
    assert_eq!(polysym(&["count", "--symmetric", &path("cube3_blocks.ine")]).stdout, "27\n");
    assert_eq!(polysym(&["count", "--symmetric", &path("cube3.ine")]).code, 2);
    assert_eq!(polysym(&["volume", &path("cube3.ine")]).stdout, "8\n");
    assert_eq!(polysym(&["volume", "--seed", "5", &path("cube3.ext")]).stdout, "8\n");
    let e = polysym(&["ehrhart", &path("half_segment.ine")]);
    assert_eq!(e.stdout, "period 2\ndegree 1\np0 = [1, 1/2]\np1 = [1/2, 1/2]\n");
    let capped = polysym(&["ehrhart", "--period-bound", "1", &path("half_segment.ine")]);
    assert_eq!(capped.code, 2);
}

#[test]
fn ilp_reports() {
    let file = PolyFile::parse(&std::fs::read_to_string(data("ilp_feasible.ine")).unwrap()).unwrap();
    let p = file.to_h().unwrap();
    let run = polysym(&["ilp", &path("ilp_feasible.ine")]);
    assert_eq!(run.code, 0);
    let point: Vec<Rational> = run
        .stdout
        .lines()
        .find_map(|l| l.strip_prefix("point "))
        .unwrap()
        .split_whitespace()
        .map(|t| rat(t.parse().unwrap()))
        .collect();
    assert!(p.contains(&point));
    assert!(run.stdout.contains("value 10\n"));
    assert!(run.stdout.contains("fibers-tested "));

    let slab = polysym(&["ilp", &path("ilp_slab.ine")]);
    assert_eq!(slab.code, 1);
    assert!(slab.stdout.starts_with("infeasible\n"));

    let refused = polysym(&["ilp", &path("ilp_unbounded.ine")]);
    assert_eq!(refused.code, 2);
    assert!(refused.stderr.contains("unbounded"));

    let brute = polysym(&["ilp", &path("ilp_noblocks.ine")]);
    assert_eq!(brute.code, 0);
    assert!(brute.stderr.contains("warning"));
    assert!(brute.stdout.contains("value 10\n"));
}
