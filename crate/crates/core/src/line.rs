//! The projective line K ∪ {∞}: points, point pairs, homographies and the
//! cross-ratio.
//!
//! Points are homogeneous pairs `[z : t]` normalized so that `t = 1` for finite
//! points and the point at infinity is exactly `[1 : 0]`.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    z: Scalar,
    t: Scalar,
}

impl ProjPoint {
    pub fn new(z: Scalar, t: Scalar) -> Result<Self> {
        assert_eq!(z.field(), t.field(), "point coordinates from different fields");
        if let Some(tinv) = t.inv() {
            let one = t.one_like();
            return Ok(ProjPoint { z: &z * &tinv, t: one });
        }
        if z.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjPoint::infinity(z.field()))
    }

    pub fn finite(z: Scalar) -> Self {
        let t = z.one_like();
        ProjPoint { z, t }
    }

    pub fn infinity(field: FieldSpec) -> Self {
        ProjPoint { z: field.one(), t: field.zero() }
    }

    /// `inf` or a scalar literal.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        match text.trim() {
            "inf" | "∞" => Ok(Self::infinity(field)),
            s => field.parse(s).map(Self::finite),
        }
    }

    pub fn z(&self) -> &Scalar {
        &self.z
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    pub fn field(&self) -> FieldSpec {
        self.z.field()
    }

    pub fn is_infinite(&self) -> bool {
        self.t.is_zero()
    }

    /// The affine coordinate, `None` at infinity.
    pub fn affine(&self) -> Option<&Scalar> {
        if self.is_infinite() {
            None
        } else {
            Some(&self.z)
        }
    }

    pub fn require_finite(&self) -> Result<&Scalar> {
        self.affine().ok_or(Error::InfinitePoint)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "inf"),
        }
    }
}

/// Homogeneous difference `p - q`: `z_p t_q - z_q t_p`. Vanishes iff `p = q`.
pub(crate) fn bracket(p: &ProjPoint, q: &ProjPoint) -> Scalar {
    &p.z * &q.t - &q.z * &p.t
}

/// `[x, y; u, v] = ((x - u)(y - v)) / ((x - v)(y - u))`, computed homogeneously.
///
/// The value is itself a point of the line so that ∞ is a legal result.
pub fn cross_ratio(x: &ProjPoint, y: &ProjPoint, u: &ProjPoint, v: &ProjPoint) -> Result<ProjPoint> {
    let num = bracket(x, u) * bracket(y, v);
    let den = bracket(x, v) * bracket(y, u);
    ProjPoint::new(num, den).map_err(|_| Error::DegenerateQuadruple)
}

/// An unordered couple of points. Members may coincide.
#[derive(Clone, Debug)]
pub struct PointPair {
    first: ProjPoint,
    second: ProjPoint,
}

impl PointPair {
    pub fn new(first: ProjPoint, second: ProjPoint) -> Self {
        assert_eq!(first.field(), second.field(), "pair members from different fields");
        PointPair { first, second }
    }

    /// Both members the same point: a fixed point seen as a doubled node.
    pub fn double(p: ProjPoint) -> Self {
        PointPair::new(p.clone(), p)
    }

    pub fn first(&self) -> &ProjPoint {
        &self.first
    }

    pub fn second(&self) -> &ProjPoint {
        &self.second
    }

    pub fn field(&self) -> FieldSpec {
        self.first.field()
    }

    pub fn is_double(&self) -> bool {
        self.first == self.second
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        &self.first == p || &self.second == p
    }

    pub fn members(&self) -> [&ProjPoint; 2] {
        [&self.first, &self.second]
    }

    fn sorted(&self) -> (&ProjPoint, &ProjPoint) {
        if self.first <= self.second {
            (&self.first, &self.second)
        } else {
            (&self.second, &self.first)
        }
    }
}

impl PartialEq for PointPair {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl Eq for PointPair {}

impl Hash for PointPair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sorted().hash(state)
    }
}

impl fmt::Display for PointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// True iff all points are pairwise distinct.
pub(crate) fn pairwise_distinct(points: &[&ProjPoint]) -> bool {
    points.iter().enumerate().all(|(i, p)| points[i + 1..].iter().all(|q| p != q))
}

/// Whether `{p1.first, p1.second}` and `{p2.first, p2.second}` divide the line
/// harmonically, i.e. their cross-ratio is -1. The four points must be distinct.
pub fn is_harmonic(p1: &PointPair, p2: &PointPair) -> Result<bool> {
    if !pairwise_distinct(&[&p1.first, &p1.second, &p2.first, &p2.second]) {
        return Err(Error::DegenerateQuadruple);
    }
    let cr = cross_ratio(&p1.first, &p1.second, &p2.first, &p2.second)?;
    Ok(cr.affine() == Some(&-p1.field().one()))
}

/// A projective transformation `[z : t] ↦ [m00 z + m01 t : m10 z + m11 t]`.
///
/// Stored in canonical form: the first nonzero coefficient in row-major order
/// is 1, so two arrays denote the same map iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homography {
    m: [Scalar; 4],
}

impl Homography {
    pub fn new(m00: Scalar, m01: Scalar, m10: Scalar, m11: Scalar) -> Result<Self> {
        let det = &m00 * &m11 - &m01 * &m10;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let lead = [&m00, &m01, &m10, &m11]
            .into_iter()
            .find(|c| !c.is_zero())
            .and_then(|c| c.inv())
            .expect("nonsingular matrix has a nonzero entry");
        Ok(Homography { m: [&m00 * &lead, &m01 * &lead, &m10 * &lead, &m11 * &lead] })
    }

    pub fn identity(field: FieldSpec) -> Self {
        Homography { m: [field.one(), field.zero(), field.zero(), field.one()] }
    }

    pub fn coefficients(&self) -> &[Scalar; 4] {
        &self.m
    }

    pub fn field(&self) -> FieldSpec {
        self.m[0].field()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.m;
        let z = a * p.z() + b * p.t();
        let t = c * p.z() + d * p.t();
        ProjPoint::new(z, t).expect("nonsingular map sends points to points")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Homography) -> Homography {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Homography::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of nonsingular maps is nonsingular")
    }

    pub fn inverse(&self) -> Homography {
        let [a, b, c, d] = &self.m;
        Homography::new(d.clone(), -b, -c, a.clone()).expect("adjugate of nonsingular map")
    }

    /// The map sending `p0, p1, p2` to `0, 1, ∞`.
    fn to_standard_frame(p: [&ProjPoint; 3]) -> Result<Homography> {
        if !pairwise_distinct(&p) {
            return Err(Error::DegenerateTriple);
        }
        let c1 = bracket(p[1], p[2]);
        let c2 = bracket(p[1], p[0]);
        // Row i evaluated at P gives c_i * bracket(P, p_{2i}).
        Homography::new(&c1 * p[0].t(), -(&c1 * p[0].z()), &c2 * p[2].t(), -(&c2 * p[2].z()))
    }

    /// The unique homography with `src[i] ↦ dst[i]`.
    pub fn from_three_points(src: [&ProjPoint; 3], dst: [&ProjPoint; 3]) -> Result<Homography> {
        let s = Self::to_standard_frame(src)?;
        let d = Self::to_standard_frame(dst)?;
        Ok(d.inverse().compose(&s))
    }
}

impl fmt::Display for Homography {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[{a}, {b}; {c}, {d}]")
    }
}
