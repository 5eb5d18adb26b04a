//! Plain-text input formats. Every parser strips `#` comments and blank lines; every
//! serializer writes a form its parser reads back to an equal value.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use simplicial_core::flows::{FloerComplex, ObjectKind};
use simplicial_core::signed::{SignedEdge, SignedGraph};
use simplicial_core::variational::SetFunction;
use simplicial_core::{Rational, Simplex, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = Result<T, ParseError>;

fn err<T>(line: usize, message: impl Into<String>) -> ParseResult<T> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = l.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn vertex(line: usize, t: &str) -> ParseResult<usize> {
    t.parse().or_else(|_| err(line, format!("bad vertex id `{t}`")))
}

fn rational(line: usize, t: &str) -> ParseResult<Rational> {
    t.parse().or_else(|_| err(line, format!("bad rational `{t}`")))
}

fn write_rational(out: &mut String, r: &Rational) {
    if r.is_integer() {
        write!(out, "{}", r.numer()).unwrap();
    } else {
        write!(out, "{}/{}", r.numer(), r.denom()).unwrap();
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Simplicial complex: one simplex per line (its faces are added), `w <vertices…> <weight>`
/// lines override default weights.
pub fn parse_complex(text: &str) -> ParseResult<SimplicialComplex> {
    let mut tuples = Vec::new();
    let mut weights = Vec::new();
    let mut first_line = 0;
    for (n, tokens) in lines(text) {
        if first_line == 0 {
            first_line = n;
        }
        if tokens[0] == "w" {
            if tokens.len() < 3 {
                return err(n, "weight line needs a simplex and a value");
            }
            let verts = tokens[1..tokens.len() - 1].iter().map(|t| vertex(n, t)).collect::<ParseResult<Vec<_>>>()?;
            weights.push((verts, rational(n, tokens[tokens.len() - 1])?));
        } else {
            tuples.push(tokens.iter().map(|t| vertex(n, t)).collect::<ParseResult<Vec<_>>>()?);
        }
    }
    SimplicialComplex::from_maximal_simplices(&tuples, &weights).or_else(|e| err(first_line.max(1), e.to_string()))
}

pub fn write_complex(c: &SimplicialComplex) -> String {
    let mut out = String::new();
    for s in c.maximal_simplices() {
        writeln!(out, "{}", join(s.vertices())).unwrap();
    }
    for (s, w) in c.user_weights() {
        write!(out, "w {} ", join(s.vertices())).unwrap();
        write_rational(&mut out, w);
        out.push('\n');
    }
    out
}

/// Signed graph: `u v weight sign` per edge; an optional `n <count>` line adds isolated vertices.
pub fn parse_signed_graph(text: &str) -> ParseResult<SignedGraph> {
    let mut n = 0;
    let mut edges = Vec::new();
    let mut last = 1;
    for (line, tokens) in lines(text) {
        last = line;
        if tokens[0] == "n" && tokens.len() == 2 {
            n = n.max(vertex(line, tokens[1])?);
            continue;
        }
        if tokens.len() != 4 {
            return err(line, "expected `u v weight sign`");
        }
        let (u, v) = (vertex(line, tokens[0])?, vertex(line, tokens[1])?);
        let weight = rational(line, tokens[2])?;
        let sign = match tokens[3] {
            "+" | "+1" | "1" => 1,
            "-" | "-1" => -1,
            t => return err(line, format!("bad sign `{t}`")),
        };
        n = n.max(u.max(v) + 1);
        edges.push(SignedEdge { u, v, weight, sign });
    }
    SignedGraph::new(n, edges).or_else(|e| err(last, e.to_string()))
}

pub fn write_signed_graph(g: &SignedGraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for e in g.edges() {
        write!(out, "{} {} ", e.u, e.v).unwrap();
        write_rational(&mut out, &e.weight);
        writeln!(out, " {}", if e.sign > 0 { "+1" } else { "-1" }).unwrap();
    }
    out
}

/// Set function as an exhaustive table `subset-bitmask value`; all `2^n` masks must appear.
pub fn parse_set_function(text: &str) -> ParseResult<SetFunction> {
    let mut table = BTreeMap::new();
    let mut last = 1;
    for (line, tokens) in lines(text) {
        last = line;
        if tokens.len() != 2 {
            return err(line, "expected `subset-bitmask value`");
        }
        let mask: u32 = tokens[0].parse().or_else(|_| err(line, format!("bad bitmask `{}`", tokens[0])))?;
        if table.insert(mask, rational(line, tokens[1])?).is_some() {
            return err(line, format!("bitmask {mask} listed twice"));
        }
    }
    let size = table.len();
    if !size.is_power_of_two() || table.keys().next_back().is_some_and(|m| *m as usize >= size) {
        return err(last, "the table must list every subset of the ground set exactly once");
    }
    let n = size.trailing_zeros() as usize;
    SetFunction::new(n, table.into_values().collect()).or_else(|e| err(last, e.to_string()))
}

pub fn write_set_function(f: &SetFunction) -> String {
    let mut out = String::new();
    for (mask, v) in f.values().iter().enumerate() {
        write!(out, "{mask} ").unwrap();
        write_rational(&mut out, v);
        out.push('\n');
    }
    out
}

/// Values on every simplex of a complex, as read from a Morse-function file.
#[derive(Clone, Debug, PartialEq)]
pub struct CellFunction {
    pub complex: SimplicialComplex,
    /// `values[k][i]` belongs to the `i`-th `k`-simplex.
    pub values: Vec<Vec<Rational>>,
}

/// `<vertices…> = value` per simplex; the listed simplices must be closed under faces.
pub fn parse_morse(text: &str) -> ParseResult<CellFunction> {
    let mut map: BTreeMap<Simplex, Rational> = BTreeMap::new();
    let mut tuples = Vec::new();
    let mut last = 1;
    for (line, tokens) in lines(text) {
        last = line;
        let Some(eq) = tokens.iter().position(|t| *t == "=") else {
            return err(line, "expected `<vertices> = value`");
        };
        if eq == 0 || eq + 2 != tokens.len() {
            return err(line, "expected `<vertices> = value`");
        }
        let verts = tokens[..eq].iter().map(|t| vertex(line, t)).collect::<ParseResult<Vec<_>>>()?;
        let s = Simplex::new(verts.clone()).or_else(|e| err(line, e.to_string()))?;
        if map.insert(s, rational(line, tokens[eq + 1])?).is_some() {
            return err(line, "simplex listed twice");
        }
        tuples.push(verts);
    }
    let complex = SimplicialComplex::from_maximal_simplices(&tuples, &[]).or_else(|e| err(last, e.to_string()))?;
    let values = simplicial_core::morse::values_from_map(&complex, &map).or_else(|e| err(last, e.to_string()))?;
    Ok(CellFunction { complex, values })
}

pub fn write_morse(f: &CellFunction) -> String {
    let mut out = String::new();
    for k in 0..=f.complex.dim() {
        for (s, v) in f.complex.simplices(k).iter().zip(&f.values[k]) {
            write!(out, "{} = ", join(s.vertices())).unwrap();
            write_rational(&mut out, v);
            out.push('\n');
        }
    }
    out
}

/// `p|O|H <index> <name>` objects and `conn <from> <to>` lines; repeated lines count flow lines.
pub fn parse_floer(text: &str) -> ParseResult<FloerComplex> {
    let mut c = FloerComplex::new();
    for (line, tokens) in lines(text) {
        match tokens[0] {
            "conn" => {
                if tokens.len() != 3 {
                    return err(line, "expected `conn <from> <to>`");
                }
                c.connect(tokens[1], tokens[2], 1).or_else(|e| err(line, e.to_string()))?;
            }
            kind @ ("p" | "O" | "H") => {
                if tokens.len() != 3 {
                    return err(line, format!("expected `{kind} <index> <name>`"));
                }
                let index = vertex(line, tokens[1])?;
                let kind = match kind {
                    "p" => ObjectKind::Point,
                    "O" => ObjectKind::Orbit,
                    _ => ObjectKind::Homoclinic,
                };
                c.add_object(kind, index, tokens[2]).or_else(|e| err(line, e.to_string()))?;
            }
            t => return err(line, format!("unknown line kind `{t}`")),
        }
    }
    Ok(c)
}

pub fn write_floer(c: &FloerComplex) -> String {
    let mut out = String::new();
    for o in c.objects() {
        let tag = match o.kind {
            ObjectKind::Point => "p",
            ObjectKind::Orbit => "O",
            ObjectKind::Homoclinic => "H",
        };
        writeln!(out, "{tag} {} {}", o.index, o.name).unwrap();
    }
    for (a, b, n) in c.connections() {
        for _ in 0..n {
            writeln!(out, "conn {a} {b}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_with_weights() {
        let c = parse_complex("# triangle\n0 1 2\n2 3\nw 2 3 5/2\n").unwrap();
        assert_eq!(c.counts(), vec![4, 4, 1]);
        assert_eq!(c.weight(&Simplex::new(vec![2, 3]).unwrap()).unwrap(), Rational::new(5, 2));
        assert_eq!(parse_complex(&write_complex(&c)).unwrap(), c);
        assert_eq!(parse_complex("0 x\n").unwrap_err().line, 1);
        assert!(parse_complex("0 1\nw 0 2 1\n").is_err());
    }

    #[test]
    fn signed_graph_text() {
        let g = parse_signed_graph("0 1 1 -1\n1 2 2 +1\nn 5\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(parse_signed_graph(&write_signed_graph(&g)).unwrap(), g);
        assert!(parse_signed_graph("0 1 1 0\n").is_err());
    }

    #[test]
    fn set_function_table() {
        let f = parse_set_function("0 0\n1 1\n2 1\n3 0\n").unwrap();
        assert_eq!(f.ground_size(), 2);
        assert_eq!(parse_set_function(&write_set_function(&f)).unwrap(), f);
        assert!(parse_set_function("0 0\n1 1\n3 1\n").is_err());
    }

    #[test]
    fn morse_text() {
        let f = parse_morse("0 = 0\n1 = 2\n0 1 = 1\n").unwrap();
        assert_eq!(f.values, vec![vec![Rational::from_integer(0), Rational::from_integer(2)], vec![Rational::from_integer(1)]]);
        assert_eq!(parse_morse(&write_morse(&f)).unwrap(), f);
        assert!(parse_morse("0 1 = 1\n").is_err());
    }

    #[test]
    fn floer_text() {
        let c = parse_floer("p 2 t1\np 1 s1\nconn t1 s1\nconn t1 s1\n").unwrap();
        assert_eq!(c.count("t1", "s1").unwrap(), 2);
        assert_eq!(parse_floer(&write_floer(&c)).unwrap(), c);
        assert!(parse_floer("x 1 a\n").is_err());
    }
}
