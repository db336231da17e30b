//! The projective plane over a field: points, lines, conics, and charts that
//! carry a line's points into projective-line coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::involution::{is_involution_det, InvolutionConfig};
use crate::line::{is_harmonic, Homography, PointPair, ProjPoint};

type Triple = [Scalar; 3];

/// Scale so the last nonzero coordinate is 1.
fn normalize(v: Triple) -> Result<Triple> {
    let lead = v.iter().rev().find(|x| !x.is_zero()).ok_or(Error::ZeroPoint)?.inv().expect("nonzero");
    Ok(v.map(|x| x * &lead))
}

fn cross(a: &Triple, b: &Triple) -> Triple {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn dot(a: &Triple, b: &Triple) -> Scalar {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn write_triple(f: &mut fmt::Formatter<'_>, open: &str, v: &Triple, close: &str) -> fmt::Result {
    write!(f, "{open}{}, {}, {}{close}", v[0], v[1], v[2])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint(Triple);

impl PlanePoint {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Result<Self> {
        normalize([x, y, z]).map(PlanePoint)
    }

    pub fn affine(x: Scalar, y: Scalar) -> Self {
        let one = x.one_like();
        PlanePoint([x, y, one])
    }

    pub fn coords(&self) -> &Triple {
        &self.0
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0].field()
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[2].is_zero()
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_triple(f, "(", &self.0, ")")
    }
}

/// `a·x + b·y + c·z = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneLine(Triple);

impl PlaneLine {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        normalize([a, b, c]).map(PlaneLine)
    }

    pub fn at_infinity(field: FieldSpec) -> Self {
        PlaneLine([field.zero(), field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &Triple {
        &self.0
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0].field()
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        dot(&self.0, &p.0).is_zero()
    }
}

impl fmt::Display for PlaneLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_triple(f, "[", &self.0, "]")
    }
}

/// The line through two distinct points.
pub fn join(p: &PlanePoint, q: &PlanePoint) -> Result<PlaneLine> {
    normalize(cross(&p.0, &q.0)).map(PlaneLine).map_err(|_| Error::CoincidentPoints)
}

/// The common point of two distinct lines.
pub fn meet(l: &PlaneLine, m: &PlaneLine) -> Result<PlanePoint> {
    normalize(cross(&l.0, &m.0)).map(PlanePoint).map_err(|_| Error::CoincidentPoints)
}

/// `{P : Pᵀ M P = 0}` for a symmetric nonsingular `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conic {
    m: [Triple; 3],
}

impl Conic {
    pub fn new(m: [Triple; 3]) -> Result<Self> {
        let symmetric = (0..3).all(|i| (0..3).all(|j| m[i][j] == m[j][i]));
        if !symmetric || dot(&m[0], &cross(&m[1], &m[2])).is_zero() {
            return Err(Error::DegenerateConic);
        }
        Ok(Conic { m })
    }

    /// From the upper triangle `m00 m01 m02 m11 m12 m22`.
    pub fn from_upper(u: [Scalar; 6]) -> Result<Self> {
        let [m00, m01, m02, m11, m12, m22] = u;
        Conic::new([[m00, m01.clone(), m02.clone()], [m01, m11, m12.clone()], [m02, m12, m22]])
    }

    /// `x² + y² − z² = 0`.
    pub fn unit_circle(field: FieldSpec) -> Self {
        let (o, i) = (field.zero(), field.one());
        Conic { m: [[i.clone(), o.clone(), o.clone()], [o.clone(), i.clone(), o.clone()], [o.clone(), o, -i]] }
    }

    pub fn matrix(&self) -> &[Triple; 3] {
        &self.m
    }

    /// The upper triangle `m00 m01 m02 m11 m12 m22`.
    pub fn upper(&self) -> [Scalar; 6] {
        let m = &self.m;
        [m[0][0].clone(), m[0][1].clone(), m[0][2].clone(), m[1][1].clone(), m[1][2].clone(), m[2][2].clone()]
    }

    pub fn field(&self) -> FieldSpec {
        self.m[0][0].field()
    }

    fn apply(&self, v: &Triple) -> Triple {
        [dot(&self.m[0], v), dot(&self.m[1], v), dot(&self.m[2], v)]
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &PlanePoint, v: &PlanePoint) -> Scalar {
        dot(&u.0, &self.apply(&v.0))
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.bilinear(p, p).is_zero()
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.upper();
        write!(f, "[{} {} {} {} {} {}]", u[0], u[1], u[2], u[3], u[4], u[5])
    }
}

/// The line `M·p`; the tangent when `p` is on the conic.
pub fn polar(c: &Conic, p: &PlanePoint) -> Result<PlaneLine> {
    normalize(c.apply(&p.0)).map(PlaneLine).map_err(|_| Error::DegenerateConic)
}

/// Coordinates on a line: `t ↦ p0 + t·p1`, with `∞ ↦ p1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineChart {
    line: PlaneLine,
    p0: PlanePoint,
    p1: PlanePoint,
}

impl LineChart {
    pub fn new(line: PlaneLine, p0: PlanePoint, p1: PlanePoint) -> Result<Self> {
        if !line.contains(&p0) || !line.contains(&p1) {
            return Err(Error::NotOnLine);
        }
        if p0 == p1 {
            return Err(Error::CoincidentPoints);
        }
        Ok(LineChart { line, p0, p1 })
    }

    /// Abscissa chart for non-vertical lines, ordinate chart for vertical
    /// ones, and `(1,0,0) + t·(0,1,0)` on the line at infinity.
    pub fn standard(line: &PlaneLine) -> Self {
        let [a, b, c] = line.coeffs();
        let field = line.field();
        let (o, i) = (field.zero(), field.one());
        let (p0, p1) = if !b.is_zero() {
            (PlanePoint([o.clone(), -(c / b), i.clone()]), PlanePoint([i, -(a / b), o]))
        } else if !a.is_zero() {
            (PlanePoint([-(c / a), o.clone(), i.clone()]), PlanePoint([o.clone(), i, o]))
        } else {
            (PlanePoint([i.clone(), o.clone(), o.clone()]), PlanePoint([o.clone(), i, o]))
        };
        LineChart { line: line.clone(), p0, p1 }
    }

    pub fn line(&self) -> &PlaneLine {
        &self.line
    }

    pub fn point_at(&self, t: &ProjPoint) -> PlanePoint {
        let (z, w) = (t.z(), t.t());
        let v = [0, 1, 2].map(|i| w * &self.p0.0[i] + z * &self.p1.0[i]);
        PlanePoint(normalize(v).expect("chart points are independent"))
    }

    /// The parameter of a point on the line.
    pub fn coordinate(&self, p: &PlanePoint) -> Result<ProjPoint> {
        if !self.line.contains(p) {
            return Err(Error::NotOnLine);
        }
        let (u, v) = (&self.p0.0, &self.p1.0);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let det = &u[i] * &v[j] - &u[j] * &v[i];
            if det.is_zero() {
                continue;
            }
            // p = w·u + z·v restricted to coordinates i, j.
            let w = &p.0[i] * &v[j] - &p.0[j] * &v[i];
            let z = &u[i] * &p.0[j] - &u[j] * &p.0[i];
            return ProjPoint::new(z, w);
        }
        unreachable!("chart points are independent")
    }
}

/// Roots of the conic restricted to a chart, as chart parameters.
fn chart_roots(c: &Conic, chart: &LineChart) -> Result<Vec<ProjPoint>> {
    let field = c.field();
    let q0 = c.bilinear(&chart.p0, &chart.p0);
    let b = c.bilinear(&chart.p0, &chart.p1);
    let q1 = c.bilinear(&chart.p1, &chart.p1);
    // q1·t² + 2b·t + q0 = 0 in the parameter t = z / w.
    let disc = &b * &b - &q0 * &q1;
    let root = match disc.sqrt() {
        Ok(r) => r,
        Err(_) if field.is_rationals() => return Err(Error::NonRationalIntersection),
        Err(_) => return Ok(Vec::new()),
    };
    let mut out = if q1.is_zero() {
        let inf = ProjPoint::infinity(field);
        if b.is_zero() {
            vec![inf]
        } else {
            let two_b = &b + &b;
            vec![inf, ProjPoint::finite(-(q0 / two_b))]
        }
    } else {
        let plus = ProjPoint::finite((-&b + &root) / &q1);
        let minus = ProjPoint::finite((-&b - &root) / &q1);
        if root.is_zero() {
            vec![plus]
        } else {
            vec![plus, minus]
        }
    };
    out.sort();
    Ok(out)
}

/// Intersection of a line with a conic: two points, one on tangency, none
/// when the restricted discriminant is a non-square in a finite field.
pub fn line_conic_points(c: &Conic, l: &PlaneLine) -> Result<Vec<PlanePoint>> {
    let chart = LineChart::standard(l);
    let mut pts: Vec<PlanePoint> = chart_roots(c, &chart)?.iter().map(|t| chart.point_at(t)).collect();
    pts.sort();
    Ok(pts)
}

/// `((1 − t²), 2t, (1 + t²))` on `x² + y² = z²`; `∞ ↦ (−1, 0, 1)`.
pub fn circle_param(t: &ProjPoint) -> Result<PlanePoint> {
    let (u, w) = (t.z(), t.t());
    let (uu, ww) = (u * u, w * w);
    let z = &ww + &uu;
    if z.is_zero() {
        return Err(Error::DegenerateParameter);
    }
    let y = u * w;
    PlanePoint::new(&ww - &uu, &y + &y, z)
}

fn two_points(c: &Conic, chart: &LineChart) -> Result<(ProjPoint, ProjPoint)> {
    let roots = chart_roots(c, chart)?;
    match <[ProjPoint; 2]>::try_from(roots) {
        Ok([b, h]) => Ok((b, h)),
        Err(r) if r.is_empty() => Err(Error::DegenerateConfiguration("line misses the conic")),
        Err(_) => Err(Error::DegenerateConfiguration("line is tangent to the conic")),
    }
}

/// The polar of `cpt` meets `l` at `g`; `b, h, cpt, g` should be harmonic.
pub fn figure1_check(c: &Conic, l: &PlaneLine, cpt: &PlanePoint) -> Result<(PlanePoint, bool)> {
    if !l.contains(cpt) {
        return Err(Error::NotOnLine);
    }
    if c.contains(cpt) {
        return Err(Error::DegenerateConfiguration("point lies on the conic"));
    }
    let chart = LineChart::standard(l);
    let (b, h) = two_points(c, &chart)?;
    let pol = polar(c, cpt)?;
    if &pol == l {
        return Err(Error::DegenerateConfiguration("point is the pole of the line"));
    }
    let g = meet(&pol, l)?;
    let verdict = is_harmonic(&PointPair::new(b, h), &PointPair::new(chart.coordinate(cpt)?, chart.coordinate(&g)?))?;
    Ok((g, verdict))
}

/// The involution cut on a line by a conic and an inscribed quadrilateral,
/// with its verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrilateral {
    /// `{A, C}, {B, E}, {F, G}` in the standard chart of the line.
    pub config: InvolutionConfig,
    pub involution: bool,
    /// `AF·AG / (CF·CG) = AB·AE / (CB·CE)`, unsigned. Absent over finite fields.
    pub rectangles: Option<bool>,
    /// `FA·FC / (GA·GC) = FB·FE / (GB·GE)`, unsigned. Absent over finite fields.
    pub analogy: Option<bool>,
}

pub fn inscribed_quadrilateral_pairs(c: &Conic, vertices: [&PlanePoint; 4], l: &PlaneLine) -> Result<Quadrilateral> {
    let [k, n, v, o] = vertices;
    if vertices.iter().any(|p| !c.contains(p)) {
        return Err(Error::DegenerateConfiguration("vertex is not on the conic"));
    }
    for (i, p) in vertices.iter().enumerate() {
        if vertices[i + 1..].contains(p) {
            return Err(Error::DegenerateConfiguration("vertices coincide"));
        }
    }
    if vertices.iter().any(|p| l.contains(p)) {
        return Err(Error::DegenerateConfiguration("line passes through a vertex"));
    }
    let chart = LineChart::standard(l);
    let (f, g) = two_points(c, &chart)?;
    let cut = |p: &PlanePoint, q: &PlanePoint| -> Result<ProjPoint> { chart.coordinate(&meet(l, &join(p, q)?)?) };
    let (a, cc) = (cut(k, n)?, cut(v, o)?);
    let (b, e) = (cut(k, o)?, cut(v, n)?);
    let config = InvolutionConfig::new(
        PointPair::new(a.clone(), cc.clone()),
        PointPair::new(b.clone(), e.clone()),
        PointPair::new(f.clone(), g.clone()),
    );
    let involution = is_involution_det(&config)?;
    let (rectangles, analogy) = if c.field().is_ordered() {
        let pts = [&a, &cc, &b, &e, &f, &g];
        if pts.iter().any(|p| p.is_infinite()) {
            return Err(Error::DegenerateConfiguration("a cut point is at infinity"));
        }
        let s = pts.map(|p| p.affine().expect("finite").clone());
        let [a, cc, b, e, f, g] = &s;
        let r = |x: &Scalar, y: &Scalar, z: &Scalar| crate::ordering::length(x, y) * crate::ordering::length(x, z);
        let ratio = |num: Scalar, den: Scalar| num.checked_div(&den);
        let ii = ratio(r(a, f, g), r(cc, f, g)) == ratio(r(a, b, e), r(cc, b, e));
        let iii = ratio(r(f, a, cc), r(g, a, cc)) == ratio(r(f, b, e), r(g, b, e));
        (Some(ii), Some(iii))
    } else {
        (None, None)
    };
    Ok(Quadrilateral { config, involution, rectangles, analogy })
}

/// For collinear `D, A, C, B, E` with `AD·DC = BD·DE`, checks
/// `BD/DE = AB·BC / (AE·EC)` and `AD/DC = BA·AE / (BC·CE)`, unsigned.
pub fn pappus_lemma_check(d: &Scalar, a: &Scalar, c: &Scalar, b: &Scalar, e: &Scalar) -> Result<bool> {
    if !d.field().is_ordered() {
        return Err(Error::UnorderedField);
    }
    let len = crate::ordering::length;
    if len(a, d) * len(d, c) != len(b, d) * len(d, e) {
        return Err(Error::PreconditionViolated("AD.DC = BD.DE"));
    }
    let q = |num: Scalar, den: Scalar| num.checked_div(&den).ok_or(Error::CoincidentPoints);
    let first = q(len(b, d), len(d, e))? == q(len(a, b) * len(b, c), len(a, e) * len(e, c))?;
    let second = q(len(a, d), len(d, c))? == q(len(b, a) * len(a, e), len(b, c) * len(c, e))?;
    Ok(first && second)
}

/// Projection from `center` of the points of `src` onto `dst`, in chart
/// coordinates.
pub fn central_projection(center: &PlanePoint, src: &LineChart, dst: &LineChart) -> Result<Homography> {
    if src.line.contains(center) || dst.line.contains(center) {
        return Err(Error::CenterOnLine);
    }
    if src.line == dst.line {
        return Err(Error::DegenerateConfiguration("source and target lines coincide"));
    }
    let field = center.field();
    let frame = [field.zero(), field.one()].map(ProjPoint::finite);
    let frame = [frame[0].clone(), frame[1].clone(), ProjPoint::infinity(field)];
    let image = |t: &ProjPoint| -> Result<ProjPoint> {
        let ray = join(center, &src.point_at(t))?;
        dst.coordinate(&meet(&ray, &dst.line)?)
    };
    let dst_pts = [image(&frame[0])?, image(&frame[1])?, image(&frame[2])?];
    Homography::from_three_points([&frame[0], &frame[1], &frame[2]], [&dst_pts[0], &dst_pts[1], &dst_pts[2]])
}
