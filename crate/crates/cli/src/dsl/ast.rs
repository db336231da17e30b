//! Claim scripts after parsing. Literals are stored as canonical field
//! values; objects (pairs, conics, lines, plane points) are referenced by
//! name. No source positions are kept, so printing and reparsing a script
//! yields an identical tree.

use involution::euclid::Rule;
use involution::{Conic, FieldSpec, PlaneLine, PlanePoint, PointPair, ProjPoint, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub field: FieldSpec,
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Bind(Binding),
    Assert { negated: bool, claim: Assertion },
    Query { query: Query, expected: Option<Expected> },
}

impl Statement {
    pub fn is_claim(&self) -> bool {
        !matches!(self, Statement::Bind(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Let { name: String, value: ProjPoint },
    Pair { name: String, pair: PointPair },
    Point { name: String, point: PlanePoint },
    Line { name: String, line: PlaneLine },
    Conic { name: String, conic: ConicSpec },
}

impl Binding {
    pub fn name(&self) -> &str {
        match self {
            Binding::Let { name, .. }
            | Binding::Pair { name, .. }
            | Binding::Point { name, .. }
            | Binding::Line { name, .. }
            | Binding::Conic { name, .. } => name,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Binding::Let { .. } => Kind::Scalar,
            Binding::Pair { .. } => Kind::Pair,
            Binding::Point { .. } => Kind::Point,
            Binding::Line { .. } => Kind::Line,
            Binding::Conic { .. } => Kind::Conic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Pair,
    Point,
    Line,
    Conic,
}

impl Kind {
    pub fn describe(self) -> &'static str {
        match self {
            Kind::Scalar => "a scalar",
            Kind::Pair => "a pair name",
            Kind::Point => "a plane point name",
            Kind::Line => "a line name",
            Kind::Conic => "a conic name",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicSpec {
    Circle,
    Matrix(Conic),
}

impl ConicSpec {
    pub fn conic(&self, field: FieldSpec) -> Conic {
        match self {
            ConicSpec::Circle => Conic::unit_circle(field),
            ConicSpec::Matrix(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assertion {
    Involution([String; 3]),
    Harmonic([String; 2]),
    Arbre { souche: ProjPoint, pairs: [String; 3] },
    Melange([String; 2]),
    Pappus([ProjPoint; 5]),
    Involution4([String; 2]),
    Engaged { souche: ProjPoint, pair: String },
    Combinatoire([String; 3]),
    Figure1 { conic: String, line: String, point: String },
    Quadrilateral { conic: String, vertices: [String; 4], line: String },
    Completes([String; 6]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Souche([String; 3]),
    Classify([String; 3]),
    FixedPoints([String; 3]),
    Sixth { pairs: [String; 2], x: ProjPoint },
    CrossRatio([ProjPoint; 4]),
    Polar { conic: String, point: String },
    Nodes { souche: ProjPoint, pairs: [String; 3] },
    Proportion { terms: [Scalar; 4], rule: Rule },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeTag {
    Simple,
    Double,
    Extreme,
}

impl NodeTag {
    pub fn word(self) -> &'static str {
        match self {
            NodeTag::Simple => "simple",
            NodeTag::Double => "double",
            NodeTag::Extreme => "extreme",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Point(ProjPoint),
    Pair(PointPair),
    Elliptic,
    Hyperbolic(PointPair),
    Line(PlaneLine),
    Nodes([NodeTag; 3]),
    Terms([Scalar; 4]),
}
