//! Arbres, involutions and involutive homographies.
//!
//! An involution of the line is stored as the symmetric pairing relation
//!
//! ```text
//! α·x·y + β·(x + y) + γ = 0
//! ```
//!
//! extended homogeneously to ∞. The relation is singular exactly when
//! `Δ = β² − α·γ` vanishes; such relations send every point to one fixed point
//! and are rejected. Three point pairs are "in involution" when one
//! nonsingular relation holds for all of them; four independent predicates
//! decide this (rectangle ratios, cross-ratios, the 3×3 determinant and the
//! arbre condition with a reconstructed souche) and are expected to agree.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::line::{cross_ratio, is_harmonic, pairwise_distinct, Homography, PointPair, ProjPoint};

/// Three couples of points, named `(b, h), (c, g), (d, f)` after their roles
/// in the rectangle identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionConfig {
    pairs: [PointPair; 3],
}

impl InvolutionConfig {
    pub fn new(bh: PointPair, cg: PointPair, df: PointPair) -> Self {
        assert!(bh.field() == cg.field() && cg.field() == df.field(), "configuration mixes fields");
        InvolutionConfig { pairs: [bh, cg, df] }
    }

    pub fn pairs(&self) -> &[PointPair; 3] {
        &self.pairs
    }

    pub fn field(&self) -> FieldSpec {
        self.pairs[0].field()
    }

    /// `[b, h, c, g, d, f]`.
    pub fn points(&self) -> [&ProjPoint; 6] {
        let [bh, cg, df] = &self.pairs;
        [bh.first(), bh.second(), cg.first(), cg.second(), df.first(), df.second()]
    }

    /// Apply one homography to all six points.
    pub fn map(&self, h: &Homography) -> InvolutionConfig {
        let img = |p: &PointPair| PointPair::new(h.apply(p.first()), h.apply(p.second()));
        InvolutionConfig::new(img(&self.pairs[0]), img(&self.pairs[1]), img(&self.pairs[2]))
    }

    fn finite_points(&self) -> Result<[&Scalar; 6]> {
        let p = self.points();
        Ok([
            p[0].require_finite()?,
            p[1].require_finite()?,
            p[2].require_finite()?,
            p[3].require_finite()?,
            p[4].require_finite()?,
            p[5].require_finite()?,
        ])
    }

    fn require_distinct(&self) -> Result<()> {
        if pairwise_distinct(&self.points()) {
            Ok(())
        } else {
            Err(Error::CoincidentPoints)
        }
    }
}

impl fmt::Display for InvolutionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.pairs;
        write!(f, "{a}, {b}, {c}")
    }
}

/// A souche together with three couples of nœuds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arbre {
    souche: Scalar,
    config: InvolutionConfig,
}

impl Arbre {
    /// The souche must be finite and distinct from every node.
    pub fn new(souche: ProjPoint, config: InvolutionConfig) -> Result<Self> {
        let a = souche.require_finite()?.clone();
        if config.points().iter().any(|p| **p == souche) {
            return Err(Error::CoincidentPoints);
        }
        Ok(Arbre { souche: a, config })
    }

    pub fn souche(&self) -> &Scalar {
        &self.souche
    }

    pub fn config(&self) -> &InvolutionConfig {
        &self.config
    }

    /// The signed rectangles `(x - a)(y - a)`, one per pair. Coincident nodes
    /// are allowed here.
    pub fn rectangles(&self) -> Result<[Scalar; 3]> {
        let a = &self.souche;
        let rect = |p: &PointPair| -> Result<Scalar> {
            let x = p.first().require_finite()?;
            let y = p.second().require_finite()?;
            Ok((x - a) * (y - a))
        };
        let [p, q, r] = self.config.pairs();
        Ok([rect(p)?, rect(q)?, rect(r)?])
    }

    /// The rectangle condition alone, without any distinctness requirement.
    pub fn metric_holds(&self) -> Result<bool> {
        let [r1, r2, r3] = self.rectangles()?;
        Ok(r1 == r2 && r2 == r3)
    }
}

/// Whether `(a; bh, cg, df)` is an arbre: all seven points finite and
/// distinct, and `(b−a)(h−a) = (c−a)(g−a) = (d−a)(f−a)`.
pub fn is_arbre(a: &Arbre) -> Result<bool> {
    a.config.finite_points()?;
    a.config.require_distinct()?;
    a.metric_holds()
}

/// Rectangle-ratio predicate on six distinct finite points:
///
/// ```text
/// (d−g)(f−g) / ((d−c)(f−c)) = (b−g)(h−g) / ((b−c)(h−c))
/// (c−f)(g−f) / ((c−d)(g−d)) = (b−f)(h−f) / ((b−d)(h−d))
/// (c−h)(g−h) / ((c−b)(g−b)) = (d−h)(f−h) / ((d−b)(f−b))
/// ```
pub fn is_involution_rect(c: &InvolutionConfig) -> Result<bool> {
    let [b, h, cc, g, d, f] = c.finite_points()?;
    c.require_distinct()?;
    // rect(x, y; p) / rect(x, y; q) with signed differences.
    let ratio =
        |x: &Scalar, y: &Scalar, p: &Scalar, q: &Scalar| -> Scalar { ((x - p) * (y - p)) / ((x - q) * (y - q)) };
    let e5 = ratio(d, f, g, cc) == ratio(b, h, g, cc);
    let e6 = ratio(cc, g, f, d) == ratio(b, h, f, d);
    let e7 = ratio(cc, g, h, b) == ratio(d, f, h, b);
    Ok(e5 && e6 && e7)
}

/// Cross-ratio predicate on six distinct points (∞ allowed):
/// `[b,h;d,c] = [b,h;g,f]`, `[c,g;d,b] = [c,g;h,f]`, `[d,f;c,b] = [d,f;h,g]`.
pub fn is_involution_cr(c: &InvolutionConfig) -> Result<bool> {
    c.require_distinct()?;
    let [b, h, cc, g, d, f] = c.points();
    let first = cross_ratio(b, h, d, cc)? == cross_ratio(b, h, g, f)?;
    let second = cross_ratio(cc, g, d, b)? == cross_ratio(cc, g, h, f)?;
    let third = cross_ratio(d, f, cc, b)? == cross_ratio(d, f, h, g)?;
    Ok(first && second && third)
}

/// The row `[x·y, x + y, 1]` of a pair, homogenized: for `x = [x:s]`,
/// `y = [y:u]` it is `[x·y, x·u + y·s, s·u]`.
pub fn pair_row(p: &PointPair) -> [Scalar; 3] {
    let (x, s) = (p.first().z(), p.first().t());
    let (y, u) = (p.second().z(), p.second().t());
    [x * y, x * u + y * s, s * u]
}

/// `det [[bh, b+h, 1], [cg, c+g, 1], [df, d+f, 1]]` (homogenized rows).
pub fn pair_determinant(c: &InvolutionConfig) -> Scalar {
    let [r0, r1, r2] = c.pairs().clone().map(|p| pair_row(&p));
    let cr = cross3(&r1, &r2);
    dot3(&r0, &cr)
}

fn cross3(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn dot3(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Determinant predicate: the three rows admit a common nonsingular relation.
/// Handles ∞ and coincident members uniformly.
pub fn is_involution_det(c: &InvolutionConfig) -> Result<bool> {
    match fit_relation(c.pairs()) {
        Ok(_) => Ok(true),
        Err(Error::NotAnInvolution | Error::DegenerateInvolution) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The unique nonsingular relation satisfied by every pair.
///
/// `Underdetermined` when the pairs do not pin a single relation (fewer than
/// two distinct pairs), `NotAnInvolution` when no relation fits them all,
/// `DegenerateInvolution` when the only fitting relation is singular.
pub fn fit_relation(pairs: &[PointPair]) -> Result<InvolutiveMap> {
    let rows: Vec<[Scalar; 3]> = pairs.iter().map(pair_row).collect();
    let normal = rows
        .iter()
        .enumerate()
        .flat_map(|(i, a)| rows[i + 1..].iter().map(move |b| cross3(a, b)))
        .find(|n| n.iter().any(|x| !x.is_zero()))
        .ok_or(Error::Underdetermined)?;
    if rows.iter().any(|r| !dot3(r, &normal).is_zero()) {
        return Err(Error::NotAnInvolution);
    }
    let [alpha, beta, gamma] = normal;
    InvolutiveMap::new(alpha, beta, gamma)
}

/// An involutive homography in pairing-relation form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutiveMap {
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
}

impl InvolutiveMap {
    /// Rejects `Δ = 0`; scales so the first nonzero coefficient is 1.
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Result<Self> {
        let delta = &beta * &beta - &alpha * &gamma;
        if delta.is_zero() {
            return Err(Error::DegenerateInvolution);
        }
        let lead = [&alpha, &beta, &gamma]
            .into_iter()
            .find(|c| !c.is_zero())
            .and_then(|c| c.inv())
            .expect("nonzero delta implies a nonzero coefficient");
        Ok(InvolutiveMap { alpha: &alpha * &lead, beta: &beta * &lead, gamma: &gamma * &lead })
    }

    /// `z ↦ k / z`, i.e. `x·y = k`.
    pub fn reciprocal(k: Scalar) -> Result<Self> {
        let zero = k.zero_like();
        InvolutiveMap::new(k.one_like(), zero, -k)
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn field(&self) -> FieldSpec {
        self.alpha.field()
    }

    pub fn delta(&self) -> Scalar {
        &self.beta * &self.beta - &self.alpha * &self.gamma
    }

    /// `x ↦ −(βx + γ)/(αx + β)`.
    pub fn partner(&self, p: &ProjPoint) -> ProjPoint {
        let z = -(&self.beta * p.z() + &self.gamma * p.t());
        let t = &self.alpha * p.z() + &self.beta * p.t();
        ProjPoint::new(z, t).expect("nonsingular relation")
    }

    pub fn pairs(&self, x: &ProjPoint, y: &ProjPoint) -> bool {
        let row = pair_row(&PointPair::new(x.clone(), y.clone()));
        dot3(&row, &[self.alpha.clone(), self.beta.clone(), self.gamma.clone()]).is_zero()
    }

    pub fn to_homography(&self) -> Homography {
        Homography::new(-&self.beta, -&self.gamma, self.alpha.clone(), self.beta.clone()).expect("nonsingular relation")
    }
}

impl fmt::Display for InvolutiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={}, beta={}, gamma={}", self.alpha, self.beta, self.gamma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionClass {
    /// No fixed point in the base field.
    Elliptic,
    /// Two distinct fixed points.
    Hyperbolic(PointPair),
}

/// Hyperbolic iff `Δ` is a square. The fixed points are the roots of
/// `αk² + 2βk + γ = 0`; when `α = 0` one of them is ∞.
pub fn classify(m: &InvolutiveMap) -> InvolutionClass {
    let field = m.field();
    if m.alpha.is_zero() {
        let two_beta = &m.beta + &m.beta;
        let k = -(&m.gamma / &two_beta);
        return InvolutionClass::Hyperbolic(PointPair::new(ProjPoint::infinity(field), ProjPoint::finite(k)));
    }
    match m.delta().sqrt() {
        Ok(root) => {
            let k = (-&m.beta + &root) / &m.alpha;
            let l = (-&m.beta - &root) / &m.alpha;
            InvolutionClass::Hyperbolic(PointPair::new(ProjPoint::finite(k), ProjPoint::finite(l)))
        }
        Err(_) => InvolutionClass::Elliptic,
    }
}

pub fn fixed_points(m: &InvolutiveMap) -> Result<PointPair> {
    match classify(m) {
        InvolutionClass::Hyperbolic(pair) => Ok(pair),
        InvolutionClass::Elliptic => Err(Error::Elliptic),
    }
}

/// The partner of ∞: `−β/α`, or ∞ itself when `α = 0`.
pub fn central_point(m: &InvolutiveMap) -> ProjPoint {
    m.partner(&ProjPoint::infinity(m.field()))
}

/// Outcome of souche reconstruction. A souche at infinity is a success: the
/// involution is then a point reflection `x ↦ s − x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Souche {
    Finite(Scalar),
    AtInfinity,
}

impl Souche {
    pub fn to_point(&self, field: FieldSpec) -> ProjPoint {
        match self {
            Souche::Finite(a) => ProjPoint::finite(a.clone()),
            Souche::AtInfinity => ProjPoint::infinity(field),
        }
    }
}

/// The point paired with ∞ by the involution through the three pairs.
pub fn find_souche(c: &InvolutionConfig) -> Result<Souche> {
    let m = fit_relation(c.pairs()).map_err(|e| match e {
        Error::DegenerateInvolution => Error::NotAnInvolution,
        e => e,
    })?;
    Ok(match central_point(&m).affine() {
        Some(a) => Souche::Finite(a.clone()),
        None => Souche::AtInfinity,
    })
}

/// The souche from the linear equation `(g − a)/(f − a) = (d − g)/(c − f)`
/// on the last two pairs. `None` when `d − g = c − f` in this chart.
pub fn souche_by_ratio(c: &InvolutionConfig) -> Result<Option<Scalar>> {
    let [_, _, cc, g, d, f] = c.finite_points()?;
    c.require_distinct()?;
    let dg = d - g;
    let cf = cc - f;
    let denom = &dg - &cf;
    if denom.is_zero() {
        return Ok(None);
    }
    Ok(Some((&dg * f - g * &cf) / denom))
}

/// The involution determined by two of its pairs.
pub fn involution_from_pairs(p1: &PointPair, p2: &PointPair) -> Result<InvolutiveMap> {
    fit_relation(&[p1.clone(), p2.clone()])
}

/// The partner of `x` in the involution through `p1` and `p2`.
pub fn sixth_point(p1: &PointPair, p2: &PointPair, x: &ProjPoint) -> Result<ProjPoint> {
    Ok(involution_from_pairs(p1, p2)?.partner(x))
}

/// The partner of `b` in the involution fixing `k` and `l`.
pub fn harmonic_conjugate(k: &ProjPoint, l: &ProjPoint, b: &ProjPoint) -> Result<ProjPoint> {
    if k == l {
        return Err(Error::CoincidentPoints);
    }
    sixth_point(&PointPair::double(k.clone()), &PointPair::double(l.clone()), b)
}

/// Four-point involution: `p1` as extreme nodes, `p2` as the doubled middle
/// nodes. Equivalent to harmonic division.
pub fn is_involution_four(p1: &PointPair, p2: &PointPair) -> Result<bool> {
    is_harmonic(p1, p2)
}

/// For a harmonic quadruple, the central points of the two involutions it
/// carries: the one fixing `pair1` (and swapping `pair2`) and the one fixing
/// `pair2` (and swapping `pair1`).
pub fn reciprocal_souches(pair1: &PointPair, pair2: &PointPair) -> Result<(ProjPoint, ProjPoint)> {
    for p in pair1.members().into_iter().chain(pair2.members()) {
        p.require_finite()?;
    }
    if !is_harmonic(pair1, pair2)? {
        return Err(Error::NotHarmonic);
    }
    let fixing = |fixed: &PointPair, swapped: &PointPair| -> Result<ProjPoint> {
        let m = fit_relation(&[
            PointPair::double(fixed.first().clone()),
            PointPair::double(fixed.second().clone()),
            swapped.clone(),
        ])?;
        Ok(central_point(&m))
    };
    Ok((fixing(pair1, pair2)?, fixing(pair2, pair1)?))
}

/// Given two involutions sharing exactly two pairs, checks that the two
/// unshared pairs together with either shared pair are again in involution.
pub fn completes_involution(c1: &InvolutionConfig, c2: &InvolutionConfig) -> Result<bool> {
    if !is_involution_det(c1)? || !is_involution_det(c2)? {
        return Err(Error::NotAnInvolution);
    }
    let shared: Vec<&PointPair> = c2.pairs().iter().filter(|p| c1.pairs().contains(p)).collect();
    if shared.len() != 2 {
        return Err(Error::SharedPairs(shared.len()));
    }
    let own1 = c1.pairs().iter().find(|p| !c2.pairs().contains(p));
    let own2 = c2.pairs().iter().find(|p| !c1.pairs().contains(p));
    let (Some(own1), Some(own2)) = (own1, own2) else {
        return Err(Error::SharedPairs(shared.len()));
    };
    for s in shared {
        let derived = InvolutionConfig::new(own1.clone(), own2.clone(), s.clone());
        if !is_involution_det(&derived)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Middle-node synthesis on four points: if `extremes` is an involution and
/// the middle couples `m1, m2` form an involution with its second and third
/// pairs, reports whether they also form one with the first.
pub fn four_point_synthesis(extremes: &InvolutionConfig, m1: &PointPair, m2: &PointPair) -> Result<bool> {
    if !is_involution_det(extremes)? {
        return Err(Error::NotAnInvolution);
    }
    let with = |p: &PointPair| is_involution_det(&InvolutionConfig::new(m1.clone(), m2.clone(), p.clone()));
    let [first, second, third] = extremes.pairs();
    if !with(second)? || !with(third)? {
        return Err(Error::NotAnInvolution);
    }
    with(first)
}
