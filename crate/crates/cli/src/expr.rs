//! The graph expression grammar.
//!
//! Atoms: `icg:n:d1,d2`, `cycle:n`, `path:n`, `complete:n`, `empty:n`.
//! Operators: `join(a,b)`, `cart(a,b)`, `selfjoin(a,m)`, `cjoin(a,C)`,
//! `complement(a)`, where `C` is a connector atom `conn:n:q1,q2`,
//! `ident:n`, `ones:n` or `shift:n:k`.
//!
//! Number lists munch greedily across commas, so in `selfjoin(icg:8:1,4,2)`
//! the list takes `1,4,2` before the parser sees `)`. The trailing entry is
//! then reinterpreted as the copy count. Rendering always reparses to the
//! same tree.

use std::fmt;

use anyhow::{bail, Context};
use qwalk_core::circulant::{circulant_permutation, icg, CirculantSpec};
use qwalk_core::operators::{cartesian, circulant_join, connector, join, self_join, JoinLayout};
use qwalk_core::reductions::JoinSpectralData;
use qwalk_core::{DivisorSet, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Icg { n: u64, divisors: Vec<u64> },
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Empty(usize),
    Join(Box<Expr>, Box<Expr>),
    Cartesian(Box<Expr>, Box<Expr>),
    SelfJoin(Box<Expr>, usize),
    CirculantJoin(Box<Expr>, ConnectorExpr),
    Complement(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectorExpr {
    Structured { n: usize, q: Vec<u64> },
    Identity(usize),
    AllOnes(usize),
    Shift { n: usize, k: usize },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Icg { n, divisors } => {
                write!(f, "icg:{n}:")?;
                write_list(f, divisors)
            }
            Expr::Cycle(n) => write!(f, "cycle:{n}"),
            Expr::Path(n) => write!(f, "path:{n}"),
            Expr::Complete(n) => write!(f, "complete:{n}"),
            Expr::Empty(n) => write!(f, "empty:{n}"),
            Expr::Join(a, b) => write!(f, "join({a},{b})"),
            Expr::Cartesian(a, b) => write!(f, "cart({a},{b})"),
            Expr::SelfJoin(a, m) => write!(f, "selfjoin({a},{m})"),
            Expr::CirculantJoin(a, c) => write!(f, "cjoin({a},{c})"),
            Expr::Complement(a) => write!(f, "complement({a})"),
        }
    }
}

impl fmt::Display for ConnectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectorExpr::Structured { n, q } => {
                write!(f, "conn:{n}:")?;
                write_list(f, q)
            }
            ConnectorExpr::Identity(n) => write!(f, "ident:{n}"),
            ConnectorExpr::AllOnes(n) => write!(f, "ones:{n}"),
            ConnectorExpr::Shift { n, k } => write!(f, "shift:{n}:{k}"),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, values: &[u64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected {}, found {}",
            self.pos, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text: text.as_bytes(), pos: 0 }
    }

    fn skip_spaces(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_spaces();
        self.text.get(self.pos).copied()
    }

    fn error(&mut self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{}'", c as char),
            None => "end of input".to_string(),
        };
        ParseError { pos: self.pos, expected: expected.to_string(), found }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("'{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_spaces();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_lowercase) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("a name"));
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos]).unwrap().to_string())
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_spaces();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                expected: "a number within range".to_string(),
                found: "overflowing literal".to_string(),
            })
    }

    /// Comma-separated numbers; a comma continues the list only when a
    /// digit follows it.
    fn number_list(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut out = vec![self.number()?];
        loop {
            let mark = self.pos;
            if self.peek() != Some(b',') {
                break;
            }
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                out.push(self.number()?);
            } else {
                self.pos = mark;
                break;
            }
        }
        Ok(out)
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "icg" => {
                self.expect(b':')?;
                let n = self.number()?;
                self.expect(b':')?;
                Ok(Expr::Icg { n, divisors: self.number_list()? })
            }
            "cycle" | "path" | "complete" | "empty" => {
                self.expect(b':')?;
                let n = self.number()? as usize;
                Ok(match name.as_str() {
                    "cycle" => Expr::Cycle(n),
                    "path" => Expr::Path(n),
                    "complete" => Expr::Complete(n),
                    _ => Expr::Empty(n),
                })
            }
            "join" | "cart" => {
                self.expect(b'(')?;
                let a = self.parse_expr()?;
                self.expect(b',')?;
                let b = self.parse_expr()?;
                self.expect(b')')?;
                Ok(if name == "join" {
                    Expr::Join(Box::new(a), Box::new(b))
                } else {
                    Expr::Cartesian(Box::new(a), Box::new(b))
                })
            }
            "selfjoin" => {
                self.expect(b'(')?;
                let mut a = self.parse_expr()?;
                let m = if self.peek() == Some(b',') {
                    self.pos += 1;
                    let m = self.number()? as usize;
                    self.expect(b')')?;
                    m
                } else if self.peek() == Some(b')') {
                    // the operand's number list swallowed the count
                    self.pos += 1;
                    match &mut a {
                        Expr::Icg { divisors, .. } if divisors.len() >= 2 => {
                            divisors.pop().unwrap() as usize
                        }
                        _ => return Err(self.error("',' and a copy count")),
                    }
                } else {
                    return Err(self.error("',' or ')'"));
                };
                Ok(Expr::SelfJoin(Box::new(a), m))
            }
            "cjoin" => {
                self.expect(b'(')?;
                let a = self.parse_expr()?;
                self.expect(b',')?;
                let c = self.parse_connector()?;
                self.expect(b')')?;
                Ok(Expr::CirculantJoin(Box::new(a), c))
            }
            "complement" => {
                self.expect(b'(')?;
                let a = self.parse_expr()?;
                self.expect(b')')?;
                Ok(Expr::Complement(Box::new(a)))
            }
            "conn" | "ident" | "ones" | "shift" => Err(ParseError {
                pos: at,
                expected: "a graph atom or operator".to_string(),
                found: format!("connector atom '{name}' (only valid as the second argument of cjoin)"),
            }),
            other => Err(ParseError {
                pos: at,
                expected: "one of icg, cycle, path, complete, empty, join, cart, selfjoin, cjoin, complement"
                    .to_string(),
                found: format!("'{other}'"),
            }),
        }
    }

    fn parse_connector(&mut self) -> Result<ConnectorExpr, ParseError> {
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "conn" => {
                self.expect(b':')?;
                let n = self.number()? as usize;
                self.expect(b':')?;
                Ok(ConnectorExpr::Structured { n, q: self.number_list()? })
            }
            "ident" | "ones" => {
                self.expect(b':')?;
                let n = self.number()? as usize;
                Ok(if name == "ident" {
                    ConnectorExpr::Identity(n)
                } else {
                    ConnectorExpr::AllOnes(n)
                })
            }
            "shift" => {
                self.expect(b':')?;
                let n = self.number()? as usize;
                self.expect(b':')?;
                let k = self.number()? as usize;
                Ok(ConnectorExpr::Shift { n, k })
            }
            other => Err(ParseError {
                pos: at,
                expected: "a connector atom (conn, ident, ones, shift)".to_string(),
                found: format!("'{other}'"),
            }),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser::new(text);
    let expr = parser.parse_expr()?;
    if parser.peek().is_some() {
        return Err(parser.error("end of input"));
    }
    Ok(expr)
}

pub fn connector_spec(c: &ConnectorExpr) -> anyhow::Result<CirculantSpec> {
    match c {
        ConnectorExpr::Structured { n, q } => {
            let m = (*n as u64) >> (*n as u64).trailing_zeros();
            let set = DivisorSet::extended(m, q.iter().copied())
                .with_context(|| format!("connector residues must divide the odd part {m} of {n}"))?;
            Ok(connector(*n, &set)?)
        }
        ConnectorExpr::Identity(n) => {
            anyhow::ensure!(*n > 0, "connector order must be positive");
            Ok(CirculantSpec::identity(*n))
        }
        ConnectorExpr::AllOnes(n) => {
            anyhow::ensure!(*n > 0, "connector order must be positive");
            Ok(CirculantSpec::all_ones(*n))
        }
        ConnectorExpr::Shift { n, k } => {
            anyhow::ensure!(*n > 0, "connector order must be positive");
            Ok(circulant_permutation(*n, *k))
        }
    }
}

pub fn eval(expr: &Expr) -> anyhow::Result<Graph> {
    match expr {
        Expr::Icg { n, divisors } => {
            let set = DivisorSet::proper(*n, divisors.iter().copied())
                .with_context(|| format!("in {expr}"))?;
            Ok(icg(&set)?)
        }
        Expr::Cycle(n) => Ok(Graph::cycle(*n)?),
        Expr::Path(n) => Ok(Graph::path(*n)?),
        Expr::Complete(n) => Ok(Graph::complete(*n)?),
        Expr::Empty(n) => Ok(Graph::empty_graph(*n)?),
        Expr::Join(a, b) => Ok(join(&eval(a)?, &eval(b)?)),
        Expr::Cartesian(a, b) => Ok(cartesian(&eval(a)?, &eval(b)?)),
        Expr::SelfJoin(a, m) => Ok(self_join(&eval(a)?, *m)?),
        Expr::CirculantJoin(a, c) => {
            let g = eval(a)?;
            let spec = connector_spec(c)?;
            circulant_join(&g, &spec, JoinLayout::Interleaved)
                .with_context(|| format!("in {expr}"))
        }
        Expr::Complement(a) => Ok(eval(a)?.complement()),
    }
}

/// The join gap `Delta` for time expressions like `2pi/Delta`; defined
/// only when the top operator is a join of regular graphs.
pub fn join_gap(expr: &Expr) -> anyhow::Result<f64> {
    let Expr::Join(a, b) = expr else {
        bail!("Delta is only defined for a top-level join(g,h) expression");
    };
    let g = eval(a)?;
    let h = eval(b)?;
    let (Some(k_g), Some(k_h)) = (g.regularity(), h.regularity()) else {
        bail!("Delta requires both join operands to be regular");
    };
    Ok(JoinSpectralData::new(g.order(), k_g, h.order(), k_h).big_delta)
}

/// Accepts decimal literals and the symbolic forms `pi`, `Npi`, `pi/D`,
/// `Npi/D` where `D` is an integer, `sqrt2`, or `Delta`.
pub fn resolve_time(text: &str, expr: &Expr) -> anyhow::Result<f64> {
    let text = text.trim();
    if let Ok(t) = text.parse::<f64>() {
        anyhow::ensure!(t.is_finite(), "time must be finite");
        return Ok(t);
    }
    let Some(at) = text.find("pi") else {
        bail!("unrecognized time '{text}': use a decimal or a pi form like pi/2, 3pi/4, pi/sqrt2, 2pi/Delta");
    };
    let (coef_text, rest) = (&text[..at], &text[at + 2..]);
    let coefficient: f64 = if coef_text.is_empty() { 1.0 } else { coef_text.parse()? };
    let divisor: f64 = match rest.strip_prefix('/') {
        None if rest.is_empty() => 1.0,
        None => bail!("unexpected '{rest}' after pi"),
        Some("sqrt2") => std::f64::consts::SQRT_2,
        Some("Delta") => join_gap(expr)?,
        Some(other) => {
            let d: f64 = other
                .parse()
                .with_context(|| format!("bad divisor '{other}' in time '{text}'"))?;
            anyhow::ensure!(d != 0.0, "time divisor must be nonzero");
            d
        }
    };
    Ok(coefficient * std::f64::consts::PI / divisor)
}
