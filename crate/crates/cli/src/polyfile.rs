//! Text format for H- and V-descriptions.
//!
//! ```text
//! * comment
//! H-representation
//! blocks: 2 2
//! linearity 1 3
//! begin
//! 4 3 rational
//! 1 -1 0
//! ...
//! end
//! maximize
//! 0 1 1
//! ```
//!
//! H rows are `b −a₁ … −aₙ` for `a·x ≤ b`; V rows are `1 x₁ … xₙ` for
//! vertices and `0 r₁ … rₙ` for rays. Row indices are 1-based.

use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use polysym::polycore::{parse_rational, HPolyhedron, Rational, VPolyhedron};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    H,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberType {
    Integer,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub kind: Kind,
    pub number_type: NumberType,
    /// Each row has `n + 1` entries.
    pub rows: Vec<Vec<Rational>>,
    pub columns: usize,
    /// 0-based rows holding with equality.
    pub linearity: Vec<usize>,
    pub blocks: Option<Vec<usize>>,
    /// `c₀ c₁ … cₙ`; the constant is carried along but never optimised.
    pub maximize: Option<Vec<Rational>>,
    pub orbit_sizes: Option<Vec<BigUint>>,
    pub sum_bounds: Option<Vec<(BigInt, BigInt)>>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_numbers<T>(line: usize, tokens: &[&str], what: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, ParseError> {
    tokens
        .iter()
        .map(|t| f(t).ok_or_else(|| err(line, format!("invalid {what} `{t}`"))))
        .collect()
}

impl PolyFile {
    pub fn new(kind: Kind, rows: Vec<Vec<Rational>>, columns: usize) -> Self {
        let number_type = if rows.iter().flatten().all(|v| v.is_integer()) {
            NumberType::Integer
        } else {
            NumberType::Rational
        };
        PolyFile {
            kind,
            number_type,
            rows,
            columns,
            linearity: Vec::new(),
            blocks: None,
            maximize: None,
            orbit_sizes: None,
            sum_bounds: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.columns - 1
    }

    pub fn parse(text: &str) -> Result<PolyFile, ParseError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('*'))
            .collect();
        let mut kind = None;
        let mut linearity = Vec::new();
        let mut blocks = None;
        let mut pos = 0;
        while pos < lines.len() && lines[pos].1 != "begin" {
            let (ln, l) = lines[pos];
            let tokens: Vec<&str> = l.split_whitespace().collect();
            match tokens[0] {
                "H-representation" => kind = Some(Kind::H),
                "V-representation" => kind = Some(Kind::V),
                "linearity" => {
                    let nums = parse_numbers(ln, &tokens[1..], "index", |t| t.parse::<usize>().ok())?;
                    let Some((&count, idx)) = nums.split_first() else {
                        return Err(err(ln, "linearity needs a count"));
                    };
                    if count != idx.len() {
                        return Err(err(ln, format!("linearity declares {count} rows but lists {}", idx.len())));
                    }
                    if idx.contains(&0) {
                        return Err(err(ln, "row indices are 1-based"));
                    }
                    linearity = idx.iter().map(|i| i - 1).collect();
                }
                "blocks:" => {
                    let sizes = parse_numbers(ln, &tokens[1..], "block size", |t| t.parse::<usize>().ok())?;
                    if sizes.is_empty() || sizes.contains(&0) {
                        return Err(err(ln, "block sizes must be positive"));
                    }
                    blocks = Some(sizes);
                }
                // A free-form name line, as older files carry.
                _ if kind.is_none() && pos == 0 => {}
                other => return Err(err(ln, format!("unexpected `{other}` before begin"))),
            }
            pos += 1;
        }
        let kind = kind.ok_or_else(|| err(lines.first().map_or(1, |l| l.0), "missing H-representation or V-representation"))?;
        if pos == lines.len() {
            return Err(err(lines.last().map_or(1, |l| l.0), "missing begin"));
        }
        pos += 1;
        let (hl, header) = *lines.get(pos).ok_or_else(|| err(lines[pos - 1].0, "missing size header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(err(hl, "size header must be `rows columns rational|integer`"));
        }
        let m: usize = h[0].parse().map_err(|_| err(hl, format!("invalid row count `{}`", h[0])))?;
        let columns: usize = h[1].parse().map_err(|_| err(hl, format!("invalid column count `{}`", h[1])))?;
        if columns < 2 {
            return Err(err(hl, "need at least two columns"));
        }
        let number_type = match h[2] {
            "rational" => NumberType::Rational,
            "integer" => NumberType::Integer,
            other => return Err(err(hl, format!("unknown number type `{other}`"))),
        };
        pos += 1;
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, l) = *lines
                .get(pos)
                .filter(|(_, l)| *l != "end")
                .ok_or_else(|| err(lines[pos.min(lines.len() - 1)].0, format!("expected {m} rows")))?;
            let tokens: Vec<&str> = l.split_whitespace().collect();
            if tokens.len() != columns {
                return Err(err(ln, format!("expected {columns} entries, found {}", tokens.len())));
            }
            let row = parse_numbers(ln, &tokens, "number", parse_rational)?;
            if number_type == NumberType::Integer && row.iter().any(|v| !v.is_integer()) {
                return Err(err(ln, "fraction in an integer file"));
            }
            if kind == Kind::V && !(row[0].is_zero() || row[0].is_one()) {
                return Err(err(ln, "V rows start with 1 (vertex) or 0 (ray)"));
            }
            rows.push(row);
            pos += 1;
        }
        match lines.get(pos) {
            Some((_, "end")) => pos += 1,
            Some((ln, l)) => return Err(err(*ln, format!("expected end, found `{l}`"))),
            None => return Err(err(lines[lines.len() - 1].0, "missing end")),
        }
        if let Some(&bad) = linearity.iter().find(|&&i| i >= m) {
            return Err(err(lines[0].0, format!("linearity row {} out of range", bad + 1)));
        }
        let mut file = PolyFile {
            kind,
            number_type,
            rows,
            columns,
            linearity,
            blocks,
            maximize: None,
            orbit_sizes: None,
            sum_bounds: None,
        };
        while pos < lines.len() {
            let (ln, l) = lines[pos];
            let tokens: Vec<&str> = l.split_whitespace().collect();
            match tokens[0] {
                "maximize" => {
                    pos += 1;
                    let (vl, v) = *lines.get(pos).ok_or_else(|| err(ln, "maximize needs an objective row"))?;
                    let toks: Vec<&str> = v.split_whitespace().collect();
                    if toks.len() != columns {
                        return Err(err(vl, format!("objective needs {columns} entries, found {}", toks.len())));
                    }
                    file.maximize = Some(parse_numbers(vl, &toks, "number", parse_rational)?);
                }
                "orbit-sizes" => {
                    let sizes = parse_numbers(ln, &tokens[1..], "orbit size", |t| t.parse::<BigUint>().ok())?;
                    if sizes.len() != m {
                        return Err(err(ln, format!("{} orbit sizes for {m} rows", sizes.len())));
                    }
                    file.orbit_sizes = Some(sizes);
                }
                "sum-bounds" => {
                    let v = parse_numbers(ln, &tokens[1..], "bound", |t| t.parse::<BigInt>().ok())?;
                    if v.len() % 2 != 0 {
                        return Err(err(ln, "sum-bounds takes lower/upper pairs"));
                    }
                    file.sum_bounds = Some(v.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect());
                }
                other => return Err(err(ln, format!("unknown option `{other}`"))),
            }
            pos += 1;
        }
        if let Some(b) = &file.blocks {
            if b.iter().sum::<usize>() != file.dim() {
                return Err(err(lines[0].0, format!("block sizes sum to {}, dimension is {}", b.iter().sum::<usize>(), file.dim())));
            }
        }
        Ok(file)
    }

    /// `a·x ≤ b` rows; linearity rows contribute both directions.
    pub fn to_h(&self) -> polysym::Result<HPolyhedron> {
        let n = self.dim();
        let mut rows = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let a: Vec<Rational> = r[1..].iter().map(|v| -v).collect();
            if self.linearity.contains(&i) {
                rows.push((r[1..].to_vec(), -r[0].clone()));
            }
            rows.push((a, r[0].clone()));
        }
        HPolyhedron::from_rows(rows, n)
    }

    pub fn to_v(&self) -> polysym::Result<VPolyhedron> {
        let (verts, rays): (Vec<&Vec<Rational>>, Vec<&Vec<Rational>>) = self.rows.iter().partition(|r| r[0].is_one());
        VPolyhedron::new(
            verts.into_iter().map(|r| r[1..].to_vec()).collect(),
            rays.into_iter().map(|r| r[1..].to_vec()).collect(),
            self.dim(),
        )
    }

    pub fn from_h(p: &HPolyhedron) -> PolyFile {
        let rows = p
            .rows()
            .map(|(a, b)| std::iter::once(b.clone()).chain(a.iter().map(|v| -v)).collect())
            .collect();
        PolyFile::new(Kind::H, rows, p.dim() + 1)
    }

    pub fn from_v(v: &VPolyhedron) -> PolyFile {
        let one = Rational::one();
        let rows = v
            .vertices()
            .iter()
            .map(|x| std::iter::once(one.clone()).chain(x.iter().cloned()).collect())
            .chain(v.rays().iter().map(|r| std::iter::once(Rational::zero()).chain(r.iter().cloned()).collect()))
            .collect();
        PolyFile::new(Kind::V, rows, v.dim() + 1)
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for PolyFile {
    /// The canonical layout: parsing it back gives an equal value and
    /// writing that again gives the same bytes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        s.push_str(match self.kind {
            Kind::H => "H-representation\n",
            Kind::V => "V-representation\n",
        });
        if let Some(b) = &self.blocks {
            writeln!(s, "blocks: {}", join(b))?;
        }
        if !self.linearity.is_empty() {
            writeln!(s, "linearity {} {}", self.linearity.len(), join(self.linearity.iter().map(|i| i + 1)))?;
        }
        let ty = match self.number_type {
            NumberType::Integer => "integer",
            NumberType::Rational => "rational",
        };
        writeln!(s, "begin\n{} {} {}", self.rows.len(), self.columns, ty)?;
        for r in &self.rows {
            writeln!(s, "{}", join(r))?;
        }
        s.push_str("end\n");
        if let Some(c) = &self.maximize {
            writeln!(s, "maximize\n{}", join(c))?;
        }
        if let Some(o) = &self.orbit_sizes {
            writeln!(s, "orbit-sizes {}", join(o))?;
        }
        if let Some(b) = &self.sum_bounds {
            writeln!(s, "sum-bounds {}", join(b.iter().flat_map(|(l, u)| [l, u])))?;
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "* unit square\nH-representation\nbegin\n4 3 integer\n1 -1 0\n1 1 0\n1 0 -1\n1 0 1\nend\n";

    #[test]
    fn parse_and_write() {
        let f = PolyFile::parse(SQUARE).unwrap();
        assert_eq!(f.kind, Kind::H);
        assert_eq!(f.rows.len(), 4);
        let p = f.to_h().unwrap();
        assert!(p.contains(&[Rational::one(), -Rational::one()]));
        let text = f.to_string();
        assert_eq!(PolyFile::parse(&text).unwrap(), f);
        assert_eq!(PolyFile::parse(&text).unwrap().to_string(), text);
    }

    #[test]
    fn errors_name_lines() {
        let bad = "H-representation\nbegin\n4 x integer\n";
        assert_eq!(PolyFile::parse(bad).unwrap_err().line, 3);
        let short = "V-representation\nbegin\n2 3 rational\n1 0 0\n1 1\nend\n";
        assert_eq!(PolyFile::parse(short).unwrap_err().line, 5);
        let frac = "V-representation\nbegin\n1 2 integer\n1 1/2\nend\n";
        assert_eq!(PolyFile::parse(frac).unwrap_err().line, 4);
    }

    #[test]
    fn options_round_trip() {
        let text = "H-representation\nblocks: 2\nlinearity 1 1\nbegin\n2 3 rational\n1 -1 -1\n2 -1 0\nend\nmaximize\n0 1 1\norbit-sizes 1 2\nsum-bounds 0 4\n";
        let f = PolyFile::parse(text).unwrap();
        assert_eq!(f.blocks, Some(vec![2]));
        assert_eq!(f.linearity, vec![0]);
        assert_eq!(f.to_string(), text);
        assert_eq!(f.to_h().unwrap().num_rows(), 3);
    }
}
