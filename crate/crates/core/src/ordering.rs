//! Order-dependent notions on the rational line: engagement of a souche,
//! mingling of two couples, and the naming of nœuds.
//!
//! Everything here rejects finite fields with `UnorderedField`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::involution::{Arbre, InvolutionConfig};
use crate::line::{pairwise_distinct, PointPair, ProjPoint};

fn require_ordered(field: FieldSpec) -> Result<()> {
    if field.is_ordered() {
        Ok(())
    } else {
        Err(Error::UnorderedField)
    }
}

fn finite(p: &ProjPoint) -> Result<&Scalar> {
    require_ordered(p.field())?;
    p.require_finite()
}

fn sign(x: &Scalar) -> Ordering {
    x.cmp(&x.zero_like())
}

fn abs(x: &Scalar) -> Scalar {
    if sign(x) == Ordering::Less {
        -x
    } else {
        x.clone()
    }
}

/// Unsigned length `|x − y|`.
pub fn length(x: &Scalar, y: &Scalar) -> Scalar {
    abs(&(x - y))
}

/// True iff the souche lies strictly between the two members.
pub fn is_engaged(souche: &ProjPoint, pair: &PointPair) -> Result<bool> {
    let a = finite(souche)?;
    let x = finite(pair.first())?;
    let y = finite(pair.second())?;
    if pair.contains(souche) {
        return Err(Error::CoincidentPoints);
    }
    Ok(sign(&((x - a) * (y - a))) == Ordering::Less)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mingling {
    /// Each segment has one end inside the other and one outside.
    Meles,
    /// Disjoint or nested.
    Demeles,
}

pub fn mingled(p1: &PointPair, p2: &PointPair) -> Result<Mingling> {
    let [a, b] = p1.members();
    let [c, d] = p2.members();
    let (a, b, c, d) = (finite(a)?, finite(b)?, finite(c)?, finite(d)?);
    if !pairwise_distinct(&[p1.first(), p1.second(), p2.first(), p2.second()]) {
        return Err(Error::CoincidentPoints);
    }
    let inside = |x: &Scalar| sign(&((x - a) * (x - b))) == Ordering::Less;
    Ok(if inside(c) != inside(d) { Mingling::Meles } else { Mingling::Demeles })
}

fn distinct_nodes(c: &InvolutionConfig) -> Result<()> {
    for p in c.points() {
        finite(p)?;
    }
    if pairwise_distinct(&c.points()) {
        Ok(())
    } else {
        Err(Error::CoincidentPoints)
    }
}

/// The common engagement verdict of the souche, or `None` when it differs
/// between couples.
pub fn engagement(a: &Arbre) -> Result<Option<bool>> {
    distinct_nodes(a.config())?;
    let souche = ProjPoint::finite(a.souche().clone());
    let [p, q, r] = a.config().pairs();
    let v = [is_engaged(&souche, p)?, is_engaged(&souche, q)?, is_engaged(&souche, r)?];
    Ok((v[0] == v[1] && v[1] == v[2]).then_some(v[0]))
}

/// Souche engaged in all three couples or in none.
pub fn is_arbre_combinatoire(a: &Arbre) -> Result<bool> {
    Ok(engagement(a)?.is_some())
}

/// The common mingling of the three pairs of couples, or `None` when it
/// differs.
pub fn mingling(c: &InvolutionConfig) -> Result<Option<Mingling>> {
    distinct_nodes(c)?;
    let [p, q, r] = c.pairs();
    let v = [mingled(p, q)?, mingled(p, r)?, mingled(q, r)?];
    Ok((v[0] == v[1] && v[1] == v[2]).then_some(v[0]))
}

pub fn is_involution_combinatoire(c: &InvolutionConfig) -> Result<bool> {
    Ok(mingling(c)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Two distinct nodes at equal distance from the souche.
    MoyenSimple,
    /// A coincident couple.
    MoyenDouble,
    /// Unequal distances. Roles are given when the arbre has a middle couple.
    Extreme(Option<ExtremeRoles>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRoles {
    /// The node between the middle nodes.
    pub interieur: ProjPoint,
    pub exterieur: ProjPoint,
}

/// Names each couple of an arbre. Doubled couples are allowed; the rectangle
/// condition must hold.
pub fn classify_nodes(a: &Arbre) -> Result<[NodeKind; 3]> {
    require_ordered(a.config().field())?;
    if !a.metric_holds()? {
        return Err(Error::NotAnArbre);
    }
    let s = a.souche();
    let dist = |p: &ProjPoint| -> Result<Scalar> { Ok(length(finite(p)?, s)) };
    let mut middle_radius = None;
    let mut kinds = Vec::with_capacity(3);
    for pair in a.config().pairs() {
        let (dx, dy) = (dist(pair.first())?, dist(pair.second())?);
        let kind = if pair.is_double() {
            NodeKind::MoyenDouble
        } else if dx == dy {
            NodeKind::MoyenSimple
        } else {
            NodeKind::Extreme(None)
        };
        if kind != NodeKind::Extreme(None) {
            middle_radius = Some(dx);
        }
        kinds.push(kind);
    }
    if let Some(r) = middle_radius {
        for (kind, pair) in kinds.iter_mut().zip(a.config().pairs()) {
            if let NodeKind::Extreme(roles) = kind {
                let (x, y) = (pair.first().clone(), pair.second().clone());
                *roles = Some(if dist(&x)? < r {
                    ExtremeRoles { interieur: x, exterieur: y }
                } else {
                    ExtremeRoles { interieur: y, exterieur: x }
                });
            }
        }
    }
    Ok(kinds.try_into().expect("three couples"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(Q, s).unwrap()
    }

    fn pair(a: &str, b: &str) -> PointPair {
        PointPair::new(pt(a), pt(b))
    }

    fn config(p: [(&str, &str); 3]) -> InvolutionConfig {
        InvolutionConfig::new(pair(p[0].0, p[0].1), pair(p[1].0, p[1].1), pair(p[2].0, p[2].1))
    }

    fn arbre(a: &str, p: [(&str, &str); 3]) -> Arbre {
        Arbre::new(pt(a), config(p)).unwrap()
    }

    #[test]
    fn engagement_examples() {
        assert!(is_engaged(&pt("0"), &pair("-1", "2")).unwrap());
        assert!(!is_engaged(&pt("0"), &pair("1", "6")).unwrap());
        assert!(is_engaged(&pt("3"), &pair("1", "6")).unwrap());
        assert_eq!(is_engaged(&pt("1"), &pair("1", "6")), Err(Error::CoincidentPoints));
        assert_eq!(is_engaged(&pt("inf"), &pair("1", "6")), Err(Error::InfinitePoint));
        let f7 = FieldSpec::prime(7).unwrap();
        let p = ProjPoint::finite(f7.int(1));
        assert_eq!(
            is_engaged(&p, &PointPair::new(ProjPoint::finite(f7.int(2)), ProjPoint::finite(f7.int(3)))),
            Err(Error::UnorderedField)
        );
    }

    #[test]
    fn mingled_examples() {
        assert_eq!(mingled(&pair("0", "3"), &pair("2", "5")).unwrap(), Mingling::Meles);
        assert_eq!(mingled(&pair("0", "1"), &pair("2", "3")).unwrap(), Mingling::Demeles);
        assert_eq!(mingled(&pair("0", "5"), &pair("1", "2")).unwrap(), Mingling::Demeles);
        assert_eq!(mingled(&pair("0", "5"), &pair("0", "2")), Err(Error::CoincidentPoints));
    }

    #[test]
    fn arbre_combinatoire_examples() {
        assert!(is_arbre_combinatoire(&arbre("0", [("1", "6"), ("2", "3"), ("4", "5")])).unwrap());
        assert!(is_arbre_combinatoire(&arbre("0", [("-1", "2"), ("-3", "4"), ("-5", "6")])).unwrap());
        assert!(!is_arbre_combinatoire(&arbre("0", [("1", "6"), ("-1", "2"), ("4", "5")])).unwrap());
        // Couples on opposite sides of the souche still count as disengaged.
        assert_eq!(engagement(&arbre("0", [("1", "6"), ("2", "3"), ("-1", "-6")])).unwrap(), Some(false));
    }

    #[test]
    fn involution_combinatoire_examples() {
        assert!(is_involution_combinatoire(&config([("1", "6"), ("2", "3"), ("4", "5")])).unwrap());
        assert!(is_involution_combinatoire(&config([("0", "3"), ("2", "5"), ("1", "4")])).unwrap());
        assert!(!is_involution_combinatoire(&config([("1", "6"), ("2", "3"), ("0", "4")])).unwrap());
    }

    #[test]
    fn classify_nodes_examples() {
        let interior = |i: &str, e: &str| NodeKind::Extreme(Some(ExtremeRoles { interieur: pt(i), exterieur: pt(e) }));
        assert_eq!(
            classify_nodes(&arbre("0", [("2", "2"), ("-2", "-2"), ("1", "4")])).unwrap(),
            [NodeKind::MoyenDouble, NodeKind::MoyenDouble, interior("1", "4")]
        );
        assert_eq!(
            classify_nodes(&arbre("0", [("2", "-2"), ("-2", "2"), ("1", "-4")])).unwrap(),
            [NodeKind::MoyenSimple, NodeKind::MoyenSimple, interior("1", "-4")]
        );
        assert_eq!(
            classify_nodes(&arbre("0", [("1", "6"), ("2", "3"), ("-1", "-6")])).unwrap(),
            [NodeKind::Extreme(None), NodeKind::Extreme(None), NodeKind::Extreme(None)]
        );
        assert_eq!(classify_nodes(&arbre("0", [("1", "6"), ("2", "3"), ("-1", "-5")])), Err(Error::NotAnArbre));
    }

    #[test]
    fn segment_forms() {
        let q = |s: &str| Q.parse(s).unwrap();
        // Simple middle nodes C, G around souche 0; order C, B, G, H.
        let (c, b, g, h) = (q("2"), q("1"), q("-2"), q("-4"));
        let (cb, bg, gh) = (length(&c, &b), length(&b, &g), length(&g, &h));
        assert_eq!(length(&g, &b) * length(&g, &h), length(&c, &b) * length(&c, &h));
        assert_eq!((&cb + &bg + &gh) / &bg, &gh / &cb);
        // Harmonic F, B, G, H with {F, G} and {B, H} coupled.
        let (f, b, g, h) = (q("0"), q("2"), q("3"), q("6"));
        let (fb, bg, gh) = (length(&f, &b), length(&b, &g), length(&g, &h));
        assert_eq!(&gh / &bg, (&fb + &bg + &gh) / &fb);
    }
}
