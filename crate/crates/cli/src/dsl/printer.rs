use std::fmt::Write;

use involution::{PlaneLine, PointPair, ProjPoint, Scalar};

use super::ast::*;

fn pair(p: &PointPair) -> String {
    format!("({}, {})", p.first(), p.second())
}

fn line(l: &PlaneLine) -> String {
    let [a, b, c] = l.coeffs();
    format!("[{a}, {b}, {c}]")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn points(ps: &[ProjPoint]) -> String {
    join(ps)
}

fn scalars(ss: &[Scalar]) -> String {
    join(ss)
}

pub fn print_assertion(a: &Assertion) -> String {
    match a {
        Assertion::Involution(n) => format!("involution {}", join(n)),
        Assertion::Harmonic(n) => format!("harmonic {}", join(n)),
        Assertion::Arbre { souche, pairs } => format!("arbre {souche} : {}", join(pairs)),
        Assertion::Melange(n) => format!("melange {}", join(n)),
        Assertion::Pappus(p) => format!("pappus {}", points(p)),
        Assertion::Involution4(n) => format!("involution4 {}", join(n)),
        Assertion::Engaged { souche, pair } => format!("engaged {souche} : {pair}"),
        Assertion::Combinatoire(n) => format!("combinatoire {}", join(n)),
        Assertion::Figure1 { conic, line, point } => format!("figure1 {conic} {line} {point}"),
        Assertion::Quadrilateral { conic, vertices, line } => {
            format!("quadrilateral {conic} {} {line}", join(vertices))
        }
        Assertion::Completes(n) => format!("completes {}", join(n)),
    }
}

pub fn print_query(q: &Query) -> String {
    match q {
        Query::Souche(n) => format!("souche {}", join(n)),
        Query::Classify(n) => format!("classify {}", join(n)),
        Query::FixedPoints(n) => format!("fixedpoints {}", join(n)),
        Query::Sixth { pairs, x } => format!("sixth {} {x}", join(pairs)),
        Query::CrossRatio(p) => format!("crossratio {}", points(p)),
        Query::Polar { conic, point } => format!("polar {conic} {point}"),
        Query::Nodes { souche, pairs } => format!("nodes {souche} : {}", join(pairs)),
        Query::Proportion { terms, rule } => format!("proportion {} {rule}", scalars(terms)),
    }
}

pub fn print_expected(e: &Expected) -> String {
    match e {
        Expected::Point(p) => p.to_string(),
        Expected::Pair(p) => pair(p),
        Expected::Elliptic => "elliptic".into(),
        Expected::Hyperbolic(p) => format!("hyperbolic {}", pair(p)),
        Expected::Line(l) => line(l),
        Expected::Nodes(tags) => tags.map(NodeTag::word).join(" "),
        Expected::Terms(t) => format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
    }
}

pub fn print_statement(s: &Statement) -> String {
    match s {
        Statement::Bind(b) => match b {
            Binding::Let { name, value } => format!("let {name} = {value}"),
            Binding::Pair { name, pair: p } => format!("pair {name} = {}", pair(p)),
            Binding::Point { name, point } => {
                let [x, y, z] = point.coords();
                format!("point {name} = ({x}, {y}, {z})")
            }
            Binding::Line { name, line: l } => format!("line {name} = {}", line(l)),
            Binding::Conic { name, conic } => match conic {
                ConicSpec::Circle => format!("conic {name} = circle"),
                ConicSpec::Matrix(c) => format!("conic {name} = [{}]", scalars(&c.upper())),
            },
        },
        Statement::Assert { negated, claim } => {
            let not = if *negated { "not " } else { "" };
            format!("assert {not}{}", print_assertion(claim))
        }
        Statement::Query { query, expected } => match expected {
            Some(e) => format!("{} = {}", print_query(query), print_expected(e)),
            None => print_query(query),
        },
    }
}

pub fn print_script(s: &Script) -> String {
    let mut out = format!("field {}\n", s.field);
    for st in &s.statements {
        writeln!(out, "{}", print_statement(st)).expect("write to string");
    }
    out
}
