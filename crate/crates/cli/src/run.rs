//! Evaluation of parsed claim scripts.

use std::collections::HashMap;

use involution::euclid::Proportion;
use involution::involution::{
    classify, completes_involution, find_souche, fit_relation, fixed_points, is_arbre, is_involution_cr,
    is_involution_det, is_involution_four, is_involution_rect, sixth_point, InvolutionClass, Souche,
};
use involution::ordering::{classify_nodes, is_engaged, is_involution_combinatoire, mingled, Mingling, NodeKind};
use involution::plane::{figure1_check, inscribed_quadrilateral_pairs, pappus_lemma_check, polar};
use involution::{
    cross_ratio, is_harmonic, Arbre, Conic, Error, InvolutionConfig, PlaneLine, PlanePoint, PointPair, ProjPoint,
};

use crate::dsl::ast::*;
use crate::dsl::printer::print_statement;
use crate::report::{Entry, Report, Verdict};

type Res<T> = Result<T, Error>;

#[derive(Default)]
struct Env {
    pairs: HashMap<String, PointPair>,
    points: HashMap<String, PlanePoint>,
    lines: HashMap<String, PlaneLine>,
    conics: HashMap<String, Conic>,
}

impl Env {
    fn pair(&self, n: &str) -> &PointPair {
        &self.pairs[n]
    }

    fn config(&self, n: &[String]) -> InvolutionConfig {
        InvolutionConfig::new(self.pair(&n[0]).clone(), self.pair(&n[1]).clone(), self.pair(&n[2]).clone())
    }
}

/// A computed query result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Point(ProjPoint),
    Pair(PointPair),
    Class(InvolutionClass),
    Line(PlaneLine),
    Nodes([NodeKind; 3]),
    Terms(Proportion),
}

impl Answer {
    pub fn render(&self) -> String {
        match self {
            Answer::Point(p) => p.to_string(),
            Answer::Pair(p) => format!("({}, {})", p.first(), p.second()),
            Answer::Class(InvolutionClass::Elliptic) => "elliptic".into(),
            Answer::Class(InvolutionClass::Hyperbolic(p)) => format!("hyperbolic ({}, {})", p.first(), p.second()),
            Answer::Line(l) => {
                let [a, b, c] = l.coeffs();
                format!("[{a}, {b}, {c}]")
            }
            Answer::Nodes(kinds) => kinds
                .iter()
                .map(|k| match k {
                    NodeKind::MoyenSimple => "simple".to_string(),
                    NodeKind::MoyenDouble => "double".to_string(),
                    NodeKind::Extreme(None) => "extreme".to_string(),
                    NodeKind::Extreme(Some(r)) => {
                        format!("extreme(interieur {}, exterieur {})", r.interieur, r.exterieur)
                    }
                })
                .collect::<Vec<_>>()
                .join(" "),
            Answer::Terms(p) => {
                let [a, b, c, d] = p.terms();
                format!("({a}, {b}, {c}, {d})")
            }
        }
    }

    pub fn matches(&self, e: &Expected) -> bool {
        match (self, e) {
            (Answer::Point(p), Expected::Point(q)) => p == q,
            (Answer::Pair(p), Expected::Pair(q)) => p == q,
            (Answer::Class(InvolutionClass::Elliptic), Expected::Elliptic) => true,
            (Answer::Class(InvolutionClass::Hyperbolic(p)), Expected::Hyperbolic(q)) => p == q,
            (Answer::Line(l), Expected::Line(m)) => l == m,
            (Answer::Nodes(kinds), Expected::Nodes(tags)) => kinds.iter().zip(tags).all(|(k, t)| {
                matches!(
                    (k, t),
                    (NodeKind::MoyenSimple, NodeTag::Simple)
                        | (NodeKind::MoyenDouble, NodeTag::Double)
                        | (NodeKind::Extreme(_), NodeTag::Extreme)
                )
            }),
            (Answer::Terms(p), Expected::Terms(t)) => p.terms().into_iter().eq(t.iter()),
            _ => false,
        }
    }
}

fn finite_scalars(ps: &[ProjPoint; 5]) -> Res<[involution::Scalar; 5]> {
    let mut out = Vec::with_capacity(5);
    for p in ps {
        out.push(p.require_finite()?.clone());
    }
    Ok(out.try_into().expect("five"))
}

fn assertion(env: &Env, a: &Assertion) -> Res<(bool, Option<String>)> {
    Ok(match a {
        Assertion::Involution(n) => {
            let c = env.config(n);
            let det = is_involution_det(&c)?;
            let mut notes = vec![format!("det {det}")];
            if let Ok(v) = is_involution_cr(&c) {
                notes.push(format!("cr {v}"));
            }
            if let Ok(v) = is_involution_rect(&c) {
                notes.push(format!("rect {v}"));
            }
            (det, Some(notes.join(", ")))
        }
        Assertion::Harmonic([p, q]) => (is_harmonic(env.pair(p), env.pair(q))?, None),
        Assertion::Arbre { souche, pairs } => {
            let arbre = Arbre::new(souche.clone(), env.config(pairs))?;
            let rect = arbre.rectangles()?;
            (is_arbre(&arbre)?, Some(format!("rectangles {}, {}, {}", rect[0], rect[1], rect[2])))
        }
        Assertion::Melange([p, q]) => (mingled(env.pair(p), env.pair(q))? == Mingling::Meles, None),
        Assertion::Pappus(p) => {
            let [d, a, c, b, e] = finite_scalars(p)?;
            (pappus_lemma_check(&d, &a, &c, &b, &e)?, None)
        }
        Assertion::Involution4([p, q]) => (is_involution_four(env.pair(p), env.pair(q))?, None),
        Assertion::Engaged { souche, pair } => (is_engaged(souche, env.pair(pair))?, None),
        Assertion::Combinatoire(n) => (is_involution_combinatoire(&env.config(n))?, None),
        Assertion::Figure1 { conic, line, point } => {
            let (g, verdict) = figure1_check(&env.conics[conic], &env.lines[line], &env.points[point])?;
            (verdict, Some(format!("g = {g}")))
        }
        Assertion::Quadrilateral { conic, vertices, line } => {
            let v = vertices.each_ref().map(|n| &env.points[n]);
            let q = inscribed_quadrilateral_pairs(&env.conics[conic], v, &env.lines[line])?;
            let holds = q.involution && q.rectangles != Some(false) && q.analogy != Some(false);
            let show = |o: Option<bool>| o.map_or("n/a".to_string(), |b| b.to_string());
            let note = format!(
                "pairs {}; involution {}, rectangles {}, analogy {}",
                q.config,
                q.involution,
                show(q.rectangles),
                show(q.analogy)
            );
            (holds, Some(note))
        }
        Assertion::Completes(n) => {
            let (c1, c2) = (env.config(&n[..3]), env.config(&n[3..]));
            (completes_involution(&c1, &c2)?, None)
        }
    })
}

/// Evaluates one query.
fn query(env: &Env, q: &Query) -> Res<Answer> {
    Ok(match q {
        Query::Souche(n) => {
            let c = env.config(n);
            Answer::Point(find_souche(&c)?.to_point(c.field()))
        }
        Query::Classify(n) => Answer::Class(classify(&fit_map(env, n)?)),
        Query::FixedPoints(n) => Answer::Pair(fixed_points(&fit_map(env, n)?)?),
        Query::Sixth { pairs: [p, q], x } => Answer::Point(sixth_point(env.pair(p), env.pair(q), x)?),
        Query::CrossRatio([x, y, u, v]) => Answer::Point(cross_ratio(x, y, u, v)?),
        Query::Polar { conic, point } => Answer::Line(polar(&env.conics[conic], &env.points[point])?),
        Query::Nodes { souche, pairs } => {
            Answer::Nodes(classify_nodes(&Arbre::new(souche.clone(), env.config(pairs))?)?)
        }
        Query::Proportion { terms, rule } => {
            let [a, b, c, d] = terms.clone();
            Answer::Terms(Proportion::new(a, b, c, d)?.transform(*rule)?)
        }
    })
}

/// The involution through three pairs, as a map. Repeated pairs are fine.
fn fit_map(env: &Env, n: &[String; 3]) -> Res<involution::InvolutiveMap> {
    fit_relation(env.config(n).pairs()).map_err(|e| match e {
        Error::DegenerateInvolution => Error::NotAnInvolution,
        e => e,
    })
}

/// Runs every claim in order, collecting all verdicts.
pub fn run_script(s: &Script) -> Report {
    let mut env = Env::default();
    let mut entries = Vec::new();
    for st in &s.statements {
        match st {
            Statement::Bind(b) => match b {
                Binding::Let { .. } => {}
                Binding::Pair { name, pair } => {
                    env.pairs.insert(name.clone(), pair.clone());
                }
                Binding::Point { name, point } => {
                    env.points.insert(name.clone(), point.clone());
                }
                Binding::Line { name, line } => {
                    env.lines.insert(name.clone(), line.clone());
                }
                Binding::Conic { name, conic } => {
                    env.conics.insert(name.clone(), conic.conic(s.field));
                }
            },
            Statement::Assert { negated, claim } => {
                let (verdict, value) = match assertion(&env, claim) {
                    Ok((v, note)) => (if v != *negated { Verdict::Holds } else { Verdict::Fails }, note),
                    Err(e) => (Verdict::error(&e), None),
                };
                entries.push(Entry { claim: print_statement(st), verdict, value, cases: None });
            }
            Statement::Query { query: q, expected } => {
                let (verdict, value) = match query(&env, q) {
                    Ok(ans) => {
                        let holds = expected.as_ref().is_none_or(|e| ans.matches(e));
                        (if holds { Verdict::Holds } else { Verdict::Fails }, Some(ans.render()))
                    }
                    Err(e) => (Verdict::error(&e), None),
                };
                entries.push(Entry { claim: print_statement(st), verdict, value, cases: None });
            }
        }
    }
    Report::new(entries)
}

/// The finite souche of the first `souche` query that resolves, if any.
pub(crate) fn first_souche(s: &Script) -> Option<ProjPoint> {
    let mut env = Env::default();
    for st in &s.statements {
        match st {
            Statement::Bind(Binding::Pair { name, pair }) => {
                env.pairs.insert(name.clone(), pair.clone());
            }
            Statement::Query { query: Query::Souche(n), .. } => {
                if let Ok(Souche::Finite(a)) = find_souche(&env.config(n)) {
                    return Some(ProjPoint::finite(a));
                }
            }
            _ => {}
        }
    }
    None
}
