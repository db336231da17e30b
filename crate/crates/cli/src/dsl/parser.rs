use std::collections::HashMap;

use involution::euclid::Rule;
use involution::{Conic, FieldSpec, PlaneLine, PlanePoint, PointPair, ProjPoint, Scalar};
use thiserror::Error;

use super::ast::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax { line: usize, col: usize, expected: String, found: String },
    #[error("{line}:{col}: unbound name `{name}`")]
    UnboundName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` is already bound")]
    DuplicateName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: the field is already declared")]
    FieldRedeclared { line: usize, col: usize },
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UnboundName { .. } => "UnboundName",
            ParseError::DuplicateName { .. } => "DuplicateName",
            ParseError::FieldRedeclared { .. } => "FieldRedeclared",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Number(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

const SYMBOLS: &[char] = &['(', ')', '[', ']', ',', '=', ':', '/'];

fn tokenize(line_no: usize, text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if SYMBOLS.contains(&c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Number(chars[start..i].iter().collect()), col });
        } else if c.is_alphabetic() || c == '_' || c == '∞' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), col });
        } else {
            return Err(ParseError::Syntax { line: line_no, col, expected: "a token".into(), found: format!("`{c}`") });
        }
    }
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "field",
    "let",
    "pair",
    "point",
    "line",
    "conic",
    "assert",
    "not",
    "inf",
    "circle",
    "souche",
    "classify",
    "fixedpoints",
    "sixth",
    "crossratio",
    "polar",
    "nodes",
    "proportion",
];

struct Env {
    field: FieldSpec,
    names: HashMap<String, Binding>,
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: self.line,
            col: self.col(),
            expected: expected.to_string(),
            found: self.peek().map_or("end of line".to_string(), Tok::describe),
        })
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&format!("`{c}`"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        self.sym(c).is_ok()
    }

    fn keyword(&mut self, k: &str) -> bool {
        if self.peek() == Some(&Tok::Word(k.to_string())) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, expected: &str) -> Result<(&'a str, usize), ParseError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Word(w)) => {
                self.pos += 1;
                Ok((w.as_str(), col))
            }
            _ => self.error(expected),
        }
    }

    fn number(&mut self, expected: &str) -> Result<&'a str, ParseError> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(n.as_str())
            }
            _ => self.error(expected),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            self.error("end of line")
        } else {
            Ok(())
        }
    }
}

impl Env {
    fn lookup(&self, cur: &Cursor, name: &str, col: usize) -> Result<&Binding, ParseError> {
        self.names.get(name).ok_or_else(|| ParseError::UnboundName { line: cur.line, col, name: name.to_string() })
    }

    fn reference(&self, cur: &mut Cursor, kind: Kind) -> Result<String, ParseError> {
        let start = cur.pos;
        let (name, col) = cur.word(kind.describe())?;
        let binding = self.lookup(cur, name, col)?;
        if binding.kind() != kind {
            cur.pos = start;
            return cur.error(kind.describe());
        }
        Ok(name.to_string())
    }

    fn references<const N: usize>(&self, cur: &mut Cursor, kind: Kind) -> Result<[String; N], ParseError> {
        let mut out = Vec::with_capacity(N);
        for _ in 0..N {
            out.push(self.reference(cur, kind)?);
        }
        Ok(out.try_into().expect("N names"))
    }

    /// `n`, `n/d`, `inf`, or a `let` name.
    fn point(&self, cur: &mut Cursor) -> Result<ProjPoint, ParseError> {
        const EXPECTED: &str = "a scalar, `inf` or a let name";
        let col = cur.col();
        match cur.peek() {
            Some(Tok::Number(_)) => self.scalar_literal(cur).map(ProjPoint::finite),
            Some(Tok::Word(w)) if w == "inf" || w == "∞" => {
                cur.pos += 1;
                Ok(ProjPoint::infinity(self.field))
            }
            Some(Tok::Word(w)) => {
                let binding = self.lookup(cur, w, col)?;
                match binding {
                    Binding::Let { value, .. } => {
                        cur.pos += 1;
                        Ok(value.clone())
                    }
                    _ => cur.error(EXPECTED),
                }
            }
            _ => cur.error(EXPECTED),
        }
    }

    fn scalar(&self, cur: &mut Cursor) -> Result<Scalar, ParseError> {
        let start = cur.pos;
        let p = self.point(cur)?;
        match p.affine() {
            Some(s) => Ok(s.clone()),
            None => {
                cur.pos = start;
                cur.error("a finite scalar")
            }
        }
    }

    fn scalar_literal(&self, cur: &mut Cursor) -> Result<Scalar, ParseError> {
        let start = cur.pos;
        let num = cur.number("an integer")?;
        let text = if cur.eat_sym('/') {
            let den = cur.number("a denominator")?;
            format!("{num}/{den}")
        } else {
            num.to_string()
        };
        self.field.parse(&text).or_else(|_| {
            cur.pos = start;
            cur.error("a scalar with nonzero denominator")
        })
    }

    fn scalars<const N: usize>(&self, cur: &mut Cursor, comma: bool) -> Result<[Scalar; N], ParseError> {
        let mut out = Vec::with_capacity(N);
        for i in 0..N {
            if comma && i > 0 {
                cur.sym(',')?;
            }
            out.push(self.scalar(cur)?);
        }
        Ok(out.try_into().expect("N scalars"))
    }

    fn points<const N: usize>(&self, cur: &mut Cursor) -> Result<[ProjPoint; N], ParseError> {
        let mut out = Vec::with_capacity(N);
        for _ in 0..N {
            out.push(self.point(cur)?);
        }
        Ok(out.try_into().expect("N points"))
    }

    /// `( p , q )`
    fn pair_literal(&self, cur: &mut Cursor) -> Result<PointPair, ParseError> {
        cur.sym('(')?;
        let a = self.point(cur)?;
        cur.sym(',')?;
        let b = self.point(cur)?;
        cur.sym(')')?;
        Ok(PointPair::new(a, b))
    }

    fn line_literal(&self, cur: &mut Cursor) -> Result<PlaneLine, ParseError> {
        let start = cur.pos;
        cur.sym('[')?;
        let [a, b, c] = self.scalars::<3>(cur, true)?;
        cur.sym(']')?;
        PlaneLine::new(a, b, c).or_else(|_| {
            cur.pos = start;
            cur.error("a nonzero line [a, b, c]")
        })
    }

    fn declare(&mut self, cur: &Cursor, binding: Binding, col: usize) -> Result<Statement, ParseError> {
        let name = binding.name().to_string();
        if self.names.contains_key(&name) {
            return Err(ParseError::DuplicateName { line: cur.line, col, name });
        }
        self.names.insert(name, binding.clone());
        Ok(Statement::Bind(binding))
    }

    fn new_name<'a>(&self, cur: &mut Cursor<'a>) -> Result<(&'a str, usize), ParseError> {
        let start = cur.pos;
        let (name, col) = cur.word("a name")?;
        if KEYWORDS.contains(&name) || name == "∞" {
            cur.pos = start;
            return cur.error("a name that is not a keyword");
        }
        cur.sym('=')?;
        Ok((name, col))
    }

    fn statement(&mut self, cur: &mut Cursor) -> Result<Statement, ParseError> {
        let (head, head_col) = cur.word("a statement keyword")?;
        let stmt = match head {
            "field" => return Err(ParseError::FieldRedeclared { line: cur.line, col: head_col }),
            "let" => {
                let (name, col) = self.new_name(cur)?;
                let value = self.point(cur)?;
                cur.finish()?;
                self.declare(cur, Binding::Let { name: name.into(), value }, col)?
            }
            "pair" => {
                let (name, col) = self.new_name(cur)?;
                let pair = self.pair_literal(cur)?;
                cur.finish()?;
                self.declare(cur, Binding::Pair { name: name.into(), pair }, col)?
            }
            "point" => {
                let (name, col) = self.new_name(cur)?;
                let start = cur.pos;
                cur.sym('(')?;
                let x = self.scalar(cur)?;
                cur.sym(',')?;
                let y = self.scalar(cur)?;
                let z = if cur.eat_sym(',') { self.scalar(cur)? } else { self.field.one() };
                cur.sym(')')?;
                let point = match PlanePoint::new(x, y, z) {
                    Ok(p) => p,
                    Err(_) => {
                        cur.pos = start;
                        return cur.error("a nonzero point");
                    }
                };
                cur.finish()?;
                self.declare(cur, Binding::Point { name: name.into(), point }, col)?
            }
            "line" => {
                let (name, col) = self.new_name(cur)?;
                let line = self.line_literal(cur)?;
                cur.finish()?;
                self.declare(cur, Binding::Line { name: name.into(), line }, col)?
            }
            "conic" => {
                let (name, col) = self.new_name(cur)?;
                let conic = if cur.keyword("circle") {
                    ConicSpec::Circle
                } else {
                    let start = cur.pos;
                    cur.sym('[')?;
                    let m = self.scalars::<6>(cur, false)?;
                    cur.sym(']')?;
                    match Conic::from_upper(m) {
                        Ok(c) => ConicSpec::Matrix(c),
                        Err(_) => {
                            cur.pos = start;
                            return cur.error("a nondegenerate conic");
                        }
                    }
                };
                cur.finish()?;
                self.declare(cur, Binding::Conic { name: name.into(), conic }, col)?
            }
            "assert" => {
                let negated = cur.keyword("not");
                let claim = self.assertion(cur)?;
                cur.finish()?;
                Statement::Assert { negated, claim }
            }
            _ => {
                cur.pos -= 1;
                let query = self.query(cur)?;
                let expected = if cur.eat_sym('=') { Some(self.expected(cur, &query)?) } else { None };
                cur.finish()?;
                Statement::Query { query, expected }
            }
        };
        Ok(stmt)
    }

    fn assertion(&self, cur: &mut Cursor) -> Result<Assertion, ParseError> {
        const CLAIMS: &str = "a claim (involution, harmonic, arbre, melange, pappus, involution4, \
                              engaged, combinatoire, figure1, quadrilateral, completes)";
        let start = cur.pos;
        let (word, _) = cur.word(CLAIMS)?;
        Ok(match word {
            "involution" => Assertion::Involution(self.references(cur, Kind::Pair)?),
            "harmonic" => Assertion::Harmonic(self.references(cur, Kind::Pair)?),
            "arbre" => {
                let souche = self.point(cur)?;
                cur.sym(':')?;
                Assertion::Arbre { souche, pairs: self.references(cur, Kind::Pair)? }
            }
            "melange" => Assertion::Melange(self.references(cur, Kind::Pair)?),
            "pappus" => Assertion::Pappus(self.points(cur)?),
            "involution4" => Assertion::Involution4(self.references(cur, Kind::Pair)?),
            "engaged" => {
                let souche = self.point(cur)?;
                cur.sym(':')?;
                Assertion::Engaged { souche, pair: self.reference(cur, Kind::Pair)? }
            }
            "combinatoire" => Assertion::Combinatoire(self.references(cur, Kind::Pair)?),
            "figure1" => Assertion::Figure1 {
                conic: self.reference(cur, Kind::Conic)?,
                line: self.reference(cur, Kind::Line)?,
                point: self.reference(cur, Kind::Point)?,
            },
            "quadrilateral" => Assertion::Quadrilateral {
                conic: self.reference(cur, Kind::Conic)?,
                vertices: self.references(cur, Kind::Point)?,
                line: self.reference(cur, Kind::Line)?,
            },
            "completes" => Assertion::Completes(self.references(cur, Kind::Pair)?),
            _ => {
                cur.pos = start;
                return cur.error(CLAIMS);
            }
        })
    }

    fn query(&self, cur: &mut Cursor) -> Result<Query, ParseError> {
        const QUERIES: &str = "a statement (field, let, pair, point, line, conic, assert, souche, \
                               classify, fixedpoints, sixth, crossratio, polar, nodes, proportion)";
        let start = cur.pos;
        let (word, _) = cur.word(QUERIES)?;
        Ok(match word {
            "souche" => Query::Souche(self.references(cur, Kind::Pair)?),
            "classify" => Query::Classify(self.references(cur, Kind::Pair)?),
            "fixedpoints" => Query::FixedPoints(self.references(cur, Kind::Pair)?),
            "sixth" => {
                let pairs = self.references(cur, Kind::Pair)?;
                Query::Sixth { pairs, x: self.point(cur)? }
            }
            "crossratio" => Query::CrossRatio(self.points(cur)?),
            "polar" => {
                Query::Polar { conic: self.reference(cur, Kind::Conic)?, point: self.reference(cur, Kind::Point)? }
            }
            "nodes" => {
                let souche = self.point(cur)?;
                cur.sym(':')?;
                Query::Nodes { souche, pairs: self.references(cur, Kind::Pair)? }
            }
            "proportion" => {
                let terms = self.scalars::<4>(cur, false)?;
                let rule_start = cur.pos;
                let (name, _) = cur.word("a rule name")?;
                let Some(rule) = Rule::from_name(name) else {
                    cur.pos = rule_start;
                    return cur.error("a rule (alternando, componendo, dividendo, invertendo, convertendo, v12sum)");
                };
                Query::Proportion { terms, rule }
            }
            _ => {
                cur.pos = start;
                return cur.error(QUERIES);
            }
        })
    }

    fn expected(&self, cur: &mut Cursor, query: &Query) -> Result<Expected, ParseError> {
        Ok(match query {
            Query::Souche(_) | Query::Sixth { .. } | Query::CrossRatio(_) => Expected::Point(self.point(cur)?),
            Query::FixedPoints(_) => Expected::Pair(self.pair_literal(cur)?),
            Query::Classify(_) => {
                if cur.keyword("elliptic") {
                    Expected::Elliptic
                } else if cur.keyword("hyperbolic") {
                    Expected::Hyperbolic(self.pair_literal(cur)?)
                } else {
                    return cur.error("`elliptic` or `hyperbolic (k, l)`");
                }
            }
            Query::Polar { .. } => Expected::Line(self.line_literal(cur)?),
            Query::Nodes { .. } => {
                let mut tags = Vec::with_capacity(3);
                for _ in 0..3 {
                    let tag = if cur.keyword("simple") {
                        NodeTag::Simple
                    } else if cur.keyword("double") {
                        NodeTag::Double
                    } else if cur.keyword("extreme") {
                        NodeTag::Extreme
                    } else {
                        return cur.error("`simple`, `double` or `extreme`");
                    };
                    tags.push(tag);
                }
                Expected::Nodes(tags.try_into().expect("three tags"))
            }
            Query::Proportion { .. } => {
                cur.sym('(')?;
                let terms = self.scalars::<4>(cur, true)?;
                cur.sym(')')?;
                Expected::Terms(terms)
            }
        })
    }
}

fn parse_field(cur: &mut Cursor) -> Result<FieldSpec, ParseError> {
    if !cur.keyword("field") {
        return cur.error("`field Q` or `field Fp <prime>`");
    }
    let field = if cur.keyword("Q") {
        FieldSpec::rationals()
    } else if cur.keyword("Fp") {
        let start = cur.pos;
        let n = cur.number("a prime modulus")?;
        match n.parse::<u64>().ok().map(FieldSpec::prime) {
            Some(Ok(f)) => f,
            _ => {
                cur.pos = start;
                return cur.error("an odd prime modulus");
            }
        }
    } else {
        return cur.error("`Q` or `Fp`");
    };
    cur.finish()?;
    Ok(field)
}

/// Parses a claim script. The first statement must declare the field.
pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut env: Option<Env> = None;
    let mut statements = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokenize(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { line, toks: &toks, pos: 0, end_col: raw.chars().count() + 1 };
        match env.as_mut() {
            None => {
                let field = parse_field(&mut cur)?;
                env = Some(Env { field, names: HashMap::new() });
            }
            Some(env) => statements.push(env.statement(&mut cur)?),
        }
    }
    match env {
        Some(env) => Ok(Script { field: env.field, statements }),
        None => Err(ParseError::Syntax {
            line: last_line.max(1),
            col: 1,
            expected: "`field Q` or `field Fp <prime>`".into(),
            found: "end of input".into(),
        }),
    }
}
