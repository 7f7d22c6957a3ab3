//! Text format for trees, forests and linear combinations.
//!
//! The grammar is whitespace-insensitive:
//!
//! ```text
//! lincomb := term (('+'|'-') term)*
//! term    := [rational '*'] expr
//! tree    := 'X^' mindex ['[' branch (',' branch)* ']']
//! branch  := '(' kind ',' mindex ')' '->' tree
//! planted := branch
//! forest  := '1' | tree ('·' tree)*
//! mindex  := '(' nat (',' nat)* ')'
//! rational:= ['-'] nat ['/' nat]
//! ```
//!
//! With one index component, `•n` abbreviates the single node `X^(n)`. Edge
//! kinds are written by their configured name. Printing always produces the
//! canonical form, so parsing after printing is the identity.

use std::fmt;

use num::{One, Signed};

use crate::index::{MultiIndex, Q};
use crate::lincomb::LinComb;
use crate::session::SessionConfig;
use crate::tree::{Branch, DecoratedTree, EdgeLabel, Forest, NodeLabel, PlantedForest, PlantedTree};

/// Parse failure with the character position it occurred at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    cfg: &'a SessionConfig,
}

impl<'a> Parser<'a> {
    fn new(cfg: &'a SessionConfig, input: &str) -> Self {
        Parser { chars: input.chars().collect(), pos: 0, cfg }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| self.error("number out of range"))
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let negative = self.eat('-');
        let num = self.nat()? as i64;
        let mut q = Q::from_integer(num.into());
        if self.eat('/') {
            let den = self.nat()?;
            if den == 0 {
                return self.error("zero denominator");
            }
            q /= Q::from_integer((den as i64).into());
        }
        Ok(if negative { -q } else { q })
    }

    fn mindex(&mut self) -> Result<MultiIndex, ParseError> {
        self.expect('(')?;
        let mut comps = vec![self.nat()? as u32];
        while self.eat(',') {
            comps.push(self.nat()? as u32);
        }
        self.expect(')')?;
        if comps.len() != self.cfg.dimension {
            return self.error(format!(
                "multi-index has {} components, the session dimension is {}",
                comps.len(),
                self.cfg.dimension
            ));
        }
        Ok(MultiIndex::new(comps))
    }

    fn kind(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected an edge kind");
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if let Some(k) = self.cfg.kind_index(&name) {
            return Ok(k);
        }
        if let Ok(n) = name.parse::<u32>() {
            if (n as usize) < self.cfg.edge_kinds.len() {
                return Ok(n);
            }
        }
        self.pos = start;
        self.error(format!("undeclared edge kind {name:?}"))
    }

    fn branch(&mut self) -> Result<Branch, ParseError> {
        self.expect('(')?;
        let kind = self.kind()?;
        self.expect(',')?;
        let index = self.mindex()?;
        self.expect(')')?;
        self.expect('-')?;
        self.expect('>')?;
        let sub = self.tree()?;
        Ok((EdgeLabel { kind, index }, sub))
    }

    fn tree(&mut self) -> Result<DecoratedTree, ParseError> {
        if self.eat('\u{2022}') {
            if self.cfg.dimension != 1 {
                return self.error("the leaf shorthand needs dimension 1");
            }
            let n = self.nat()? as u32;
            return Ok(DecoratedTree::leaf(MultiIndex::new(vec![n])));
        }
        self.expect('X')?;
        self.expect('^')?;
        let index = self.mindex()?;
        let mut branches = Vec::new();
        if self.eat('[') {
            branches.push(self.branch()?);
            while self.eat(',') {
                branches.push(self.branch()?);
            }
            self.expect(']')?;
        }
        Ok(DecoratedTree::new(NodeLabel::plain(index), branches))
    }

    fn forest(&mut self) -> Result<Forest, ParseError> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Forest::one());
        }
        let mut trees = vec![self.tree()?];
        while self.eat('\u{b7}') {
            trees.push(self.tree()?);
        }
        Ok(Forest::new(trees))
    }

    fn planted_forest(&mut self) -> Result<PlantedForest, ParseError> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(PlantedForest::one());
        }
        let (edge, body) = self.branch()?;
        let mut trees = vec![PlantedTree::new(edge, body)];
        while self.eat('\u{b7}') {
            let (edge, body) = self.branch()?;
            trees.push(PlantedTree::new(edge, body));
        }
        Ok(PlantedForest::new(trees))
    }

    fn lincomb<B: Ord + Clone>(
        &mut self,
        f: impl Fn(&mut Self) -> Result<B, ParseError>,
    ) -> Result<LinComb<B>, ParseError> {
        let mut out = LinComb::zero();
        let mut sign = if self.eat('-') { -Q::one() } else { Q::one() };
        loop {
            let mut coeff = sign.clone();
            // a leading number is a coefficient only when followed by '*'
            let save = self.pos;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                if let Ok(q) = self.rational() {
                    if self.eat('*') {
                        coeff *= q;
                    } else {
                        self.pos = save;
                    }
                } else {
                    self.pos = save;
                }
            }
            out.add_term(f(self)?, coeff);
            self.skip_ws();
            sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Q::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Q::one()
                }
                None => break,
                Some(c) => return self.error(format!("unexpected character '{c}'")),
            };
        }
        Ok(out)
    }

    fn finish<T>(mut self, value: T) -> Result<T, ParseError> {
        self.skip_ws();
        if self.pos < self.chars.len() {
            return self.error("trailing input");
        }
        Ok(value)
    }
}

/// Parses a linear combination of trees.
pub fn parse_tree(cfg: &SessionConfig, input: &str) -> Result<LinComb<DecoratedTree>, ParseError> {
    let mut p = Parser::new(cfg, input);
    let v = p.lincomb(|p| p.tree())?;
    p.finish(v)
}

/// Parses a linear combination of forests.
pub fn parse_forest(cfg: &SessionConfig, input: &str) -> Result<LinComb<Forest>, ParseError> {
    let mut p = Parser::new(cfg, input);
    let v = p.lincomb(|p| p.forest())?;
    p.finish(v)
}

/// Parses a linear combination of planted forests.
pub fn parse_planted_forest(
    cfg: &SessionConfig,
    input: &str,
) -> Result<LinComb<PlantedForest>, ParseError> {
    let mut p = Parser::new(cfg, input);
    let v = p.lincomb(|p| p.planted_forest())?;
    p.finish(v)
}

/// Prints a rational in the grammar's `int['/'nat]` form.
pub fn format_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_mindex(m: &MultiIndex) -> String {
    let comps: Vec<String> = m.components().iter().map(|c| c.to_string()).collect();
    format!("({})", comps.join(","))
}

fn format_branch(cfg: &SessionConfig, b: &Branch) -> String {
    format!(
        "({},{})->{}",
        cfg.kind_name(b.0.kind),
        format_mindex(&b.0.index),
        format_tree(cfg, &b.1)
    )
}

/// Prints a tree in canonical form.
pub fn format_tree(cfg: &SessionConfig, t: &DecoratedTree) -> String {
    let mut out = String::new();
    if let Some(g) = t.root().generator {
        out.push_str(&format!("g{g}:"));
    }
    out.push_str(&format!("X^{}", format_mindex(&t.root().index)));
    if !t.branches().is_empty() {
        let parts: Vec<String> = t.branches().iter().map(|b| format_branch(cfg, b)).collect();
        out.push_str(&format!("[{}]", parts.join(",")));
    }
    out
}

/// Prints a forest, `1` when empty.
pub fn format_forest(cfg: &SessionConfig, f: &Forest) -> String {
    if f.is_one() {
        return "1".into();
    }
    let parts: Vec<String> = f.trees().iter().map(|t| format_tree(cfg, t)).collect();
    parts.join("\u{b7}")
}

/// Prints a planted forest, `1` when empty.
pub fn format_planted_forest(cfg: &SessionConfig, f: &PlantedForest) -> String {
    if f.is_one() {
        return "1".into();
    }
    let parts: Vec<String> = f
        .trees()
        .iter()
        .map(|p| format_branch(cfg, &(p.edge.clone(), p.body.clone())))
        .collect();
    parts.join("\u{b7}")
}

/// Prints a linear combination with a caller-supplied basis printer, in
/// canonical basis order; `0` when empty.
pub fn format_lincomb<B: Ord + Clone>(
    x: &LinComb<B>,
    basis: impl Fn(&B) -> String,
) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (b, c) in x.iter() {
        let abs = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push_str("- ");
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !abs.is_one() {
            out.push_str(&format_q(&abs));
            out.push_str(" * ");
        }
        out.push_str(&basis(b));
    }
    out
}

/// Prints a tensor basis pair with the conventional separator.
pub fn format_tensor_pair(left: String, right: String) -> String {
    format!("{left} \u{2297} {right}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::q_int;

    fn cfg() -> SessionConfig {
        SessionConfig::default()
    }

    #[test]
    fn parses_the_two_vertex_tree() {
        let cfg = cfg();
        let got = parse_tree(&cfg, "X^(2)[(t,(1))->X^(0)]").unwrap();
        let expected = DecoratedTree::new(
            NodeLabel::plain(MultiIndex::new(vec![2])),
            vec![(
                EdgeLabel { kind: 0, index: MultiIndex::new(vec![1]) },
                DecoratedTree::leaf(MultiIndex::new(vec![0])),
            )],
        );
        assert_eq!(got, LinComb::basis(expected));
    }

    #[test]
    fn merges_coefficients_and_accepts_shorthand() {
        let cfg = cfg();
        let got = parse_tree(&cfg, "1/2 * \u{2022}1 + \u{2022}1").unwrap();
        let leaf = DecoratedTree::leaf(MultiIndex::new(vec![1]));
        assert_eq!(got, LinComb::term(leaf, crate::index::q_ratio(3, 2)));
    }

    #[test]
    fn rejects_wrong_dimension_and_unknown_kind() {
        let cfg = cfg();
        assert!(parse_tree(&cfg, "X^(1,0)").is_err());
        assert!(parse_tree(&cfg, "X^(0)[(w,(0))->X^(0)]").is_err());
    }

    #[test]
    fn forest_round_trip() {
        let cfg = cfg();
        for s in ["1", "X^(1)\u{b7}X^(0)[(u,(1))->X^(1)]", "X^(2)"] {
            let parsed = parse_forest(&cfg, s).unwrap();
            let (f, c) = parsed.iter().next().unwrap();
            assert_eq!(c, &q_int(1));
            assert_eq!(parse_forest(&cfg, &format_forest(&cfg, f)).unwrap(), parsed);
        }
    }

    #[test]
    fn planted_forest_round_trip() {
        let cfg = cfg();
        let s = "(t,(0))->X^(1)\u{b7}(u,(1))->X^(0)";
        let parsed = parse_planted_forest(&cfg, s).unwrap();
        let (f, _) = parsed.iter().next().unwrap();
        assert_eq!(
            parse_planted_forest(&cfg, &format_planted_forest(&cfg, f)).unwrap(),
            parsed
        );
    }

    #[test]
    fn lincomb_printing_is_canonical() {
        let cfg = cfg();
        let x = parse_tree(&cfg, "X^(1) - 2 * X^(0) + 1/2 * X^(2)").unwrap();
        let printed = format_lincomb(&x, |t| format_tree(&cfg, t));
        assert_eq!(printed, "- 2 * X^(0) + X^(1) + 1/2 * X^(2)");
        assert_eq!(parse_tree(&cfg, &printed).unwrap(), x);
    }

    #[test]
    fn zero_prints_as_zero() {
        let x: LinComb<DecoratedTree> = LinComb::zero();
        assert_eq!(format_lincomb(&x, |_| unreachable!()), "0");
    }
}
