//! The textual family and field grammars.
//!
//! ```text
//! scalar:p=1;N=4
//! matrix:rand(2x2,int≤3);N=4;seed=7;degrees=1,2
//! free:N=3;degrees=1,2
//! field:poly(X+x*Y;dim=2;x=1)
//! ```

use std::collections::BTreeMap;

use magnus_core::{int, sample, Direction, FreeElement, Letter, Matrix, OpPoly, Operator, Rational, SiteOperatorFamily};

type M = Matrix<Rational>;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Scalar { p: Rational, sites: usize },
    Matrix { dim: usize, bound: i64, rational: bool, sites: usize, seed: u64, degrees: Vec<usize> },
    Free { sites: usize, degrees: Vec<usize> },
}

pub enum Family {
    Matrix(SiteOperatorFamily<M>),
    Free(SiteOperatorFamily<FreeElement>),
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|_| format!("not a rational number: {s:?}"))
}

fn parse_usize(key: &str, s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("{key} must be a non-negative integer, got {s:?}"))
}

fn parse_degrees(s: &str) -> Result<Vec<usize>, String> {
    let d: Vec<usize> = s.split(',').map(|x| parse_usize("degree", x)).collect::<Result<_, _>>()?;
    if d.is_empty() || d.contains(&0) {
        return Err("degrees must be positive".into());
    }
    Ok(d)
}

/// `key=value` pairs separated by `;`, parentheses protected.
fn options(s: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for part in split_top(s, ';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(format!("duplicate key {k:?}"));
        }
    }
    Ok(out)
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn reject_unknown(opts: &BTreeMap<String, String>, allowed: &[&str]) -> Result<(), String> {
    match opts.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(format!("unknown key {k:?}")),
        None => Ok(()),
    }
}

pub fn parse_family(spec: &str, default_seed: u64) -> Result<FamilySpec, String> {
    let (kind, rest) = spec.split_once(':').ok_or("family spec needs a kind prefix")?;
    match kind.trim() {
        "scalar" => {
            let o = options(rest)?;
            reject_unknown(&o, &["p", "N"])?;
            Ok(FamilySpec::Scalar {
                p: parse_rational(o.get("p").map_or("1", String::as_str))?,
                sites: parse_usize("N", o.get("N").ok_or("scalar family needs N")?)?,
            })
        }
        "matrix" => {
            let parts = split_top(rest, ';');
            let gen = parts[0].trim();
            let inner = gen
                .strip_prefix("rand(")
                .and_then(|g| g.strip_suffix(')'))
                .ok_or_else(|| format!("expected rand(NxN,int≤B), got {gen:?}"))?;
            let (shape, entries) = inner.split_once(',').ok_or("rand needs a shape and an entry range")?;
            let (r, c) = shape.split_once('x').ok_or("shape must look like 2x2")?;
            let (dim, cols) = (parse_usize("rows", r)?, parse_usize("cols", c)?);
            if dim != cols || dim == 0 {
                return Err("matrices must be square and non-empty".into());
            }
            let entries = entries.trim().replace("<=", "≤");
            let (kind, bound) = entries.split_once('≤').ok_or("entry range must look like int≤3")?;
            let rational = match kind.trim() {
                "int" => false,
                "rat" => true,
                other => return Err(format!("entry kind must be int or rat, got {other:?}")),
            };
            let bound = bound.trim().parse::<i64>().map_err(|_| "bound must be an integer")?;
            if bound < 1 {
                return Err("bound must be at least 1".into());
            }
            let o = options(&parts[1..].join(";"))?;
            reject_unknown(&o, &["N", "seed", "degrees"])?;
            Ok(FamilySpec::Matrix {
                dim,
                bound,
                rational,
                sites: parse_usize("N", o.get("N").ok_or("matrix family needs N")?)?,
                seed: match o.get("seed") {
                    Some(s) => s.parse().map_err(|_| "seed must be a u64")?,
                    None => default_seed,
                },
                degrees: o.get("degrees").map_or(Ok(vec![1]), |d| parse_degrees(d))?,
            })
        }
        "free" => {
            let o = options(rest)?;
            reject_unknown(&o, &["N", "degrees"])?;
            Ok(FamilySpec::Free {
                sites: parse_usize("N", o.get("N").ok_or("free family needs N")?)?,
                degrees: o.get("degrees").map_or(Ok(vec![1]), |d| parse_degrees(d))?,
            })
        }
        other => Err(format!("unknown family kind {other:?}")),
    }
}

impl FamilySpec {
    pub fn build(&self, direction: Direction) -> Family {
        match self {
            FamilySpec::Scalar { p, sites } => {
                let mut fam = SiteOperatorFamily::new(&M::zeros(1, 1), *sites, direction);
                for n in 1..=*sites {
                    fam.set(n, 1, M::scalar(1, p.clone())).expect("site in range");
                }
                Family::Matrix(fam)
            }
            FamilySpec::Matrix { dim, bound, rational, sites, seed, degrees } => {
                let mut rng = sample::rng(*seed);
                let mut fam = SiteOperatorFamily::new(&M::zeros(*dim, *dim), *sites, direction);
                for n in 1..=*sites {
                    for &d in degrees {
                        let m = if *rational {
                            sample::rational_matrix(&mut rng, *dim, *bound)
                        } else {
                            sample::int_matrix(&mut rng, *dim, *bound)
                        };
                        fam.set(n, d, m).expect("site and degree in range");
                    }
                }
                Family::Matrix(fam)
            }
            FamilySpec::Free { sites, degrees } => {
                let mut fam = SiteOperatorFamily::new(&FreeElement::zero(), *sites, direction);
                for n in 1..=*sites {
                    for &d in degrees {
                        let name = if d == 1 { "P".to_string() } else { format!("P{d}") };
                        fam.set(n, d, FreeElement::letter(Letter::new(name, n, d))).expect("site and degree in range");
                    }
                }
                Family::Free(fam)
            }
        }
    }
}

/// A polynomial field Σ_k x^k C_k whose named matrices are drawn from the
/// seed (`I` is the identity).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub terms: Vec<(Rational, usize, String)>,
    pub dim: usize,
    pub x: Rational,
    pub seed: u64,
}

fn parse_term(t: &str) -> Result<(Rational, usize, String), String> {
    let (mut coeff, mut power, mut name) = (int(1), 0usize, None::<String>);
    for f in t.split('*').map(str::trim) {
        if f == "x" {
            power += 1;
        } else if let Some(k) = f.strip_prefix("x^") {
            power += parse_usize("power", k)?;
        } else if !f.is_empty() && f.chars().all(|c| c.is_ascii_uppercase()) {
            if name.replace(f.to_string()).is_some() {
                return Err(format!("term {t:?} names two matrices"));
            }
        } else {
            coeff *= parse_rational(f)?;
        }
    }
    Ok((coeff, power, name.ok_or_else(|| format!("term {t:?} names no matrix"))?))
}

pub fn parse_field(spec: &str, default_seed: u64) -> Result<FieldSpec, String> {
    let body = spec
        .trim()
        .strip_prefix("field:poly(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or("field spec must look like field:poly(X+x*Y;dim=2)")?;
    let parts = split_top(body, ';');
    let expr: String = parts[0].chars().filter(|c| !c.is_whitespace()).collect();
    if expr.is_empty() {
        return Err("empty field expression".into());
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    for (i, c) in expr.chars().enumerate() {
        if (c == '+' || c == '-') && !(i > 0 && expr[..i].ends_with('^')) {
            if !current.is_empty() {
                let (k, p, n) = parse_term(&current)?;
                terms.push((k * int(sign), p, n));
                current.clear();
            } else if i > 0 {
                return Err(format!("dangling operator in {expr:?}"));
            }
            sign = if c == '-' { -1 } else { 1 };
        } else {
            current.push(c);
        }
    }
    if current.is_empty() {
        return Err(format!("dangling operator in {expr:?}"));
    }
    let (k, p, n) = parse_term(&current)?;
    terms.push((k * int(sign), p, n));
    let o = options(&parts[1..].join(";"))?;
    reject_unknown(&o, &["dim", "x", "seed"])?;
    let dim = parse_usize("dim", o.get("dim").map_or("2", String::as_str))?;
    if dim == 0 {
        return Err("dim must be positive".into());
    }
    let x = parse_rational(o.get("x").map_or("1", String::as_str))?;
    if x <= int(0) {
        return Err("x must be positive".into());
    }
    let seed = match o.get("seed") {
        Some(s) => s.parse().map_err(|_| "seed must be a u64")?,
        None => default_seed,
    };
    Ok(FieldSpec { terms, dim, x, seed })
}

impl FieldSpec {
    /// The named matrices, drawn in alphabetical order.
    pub fn matrices(&self) -> BTreeMap<String, M> {
        let mut rng = sample::rng(self.seed);
        let mut names: Vec<&String> = self.terms.iter().map(|t| &t.2).collect();
        names.sort();
        names.dedup();
        names
            .into_iter()
            .map(|n| {
                let m = if n == "I" { M::identity(self.dim) } else { sample::int_matrix(&mut rng, self.dim, 3) };
                (n.clone(), m)
            })
            .collect()
    }

    pub fn build(&self) -> Result<magnus_core::MatrixField, String> {
        let mats = self.matrices();
        let deg = self.terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![M::zeros(self.dim, self.dim); deg + 1];
        for (k, p, n) in &self.terms {
            coeffs[*p] = coeffs[*p].add(&mats[n].scale(k));
        }
        magnus_core::MatrixField::polynomial(OpPoly::from_coeffs(coeffs), int(0), self.x.clone()).map_err(|e| e.to_string())
    }
}
