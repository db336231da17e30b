//! Random instances for property suites. Every generator draws only from the
//! supplied RNG, so a seeded RNG gives reproducible instances.

use rand::Rng;

use crate::error::{Error, Result};
use crate::euclid::Proportion;
use crate::field::{FieldSpec, Scalar};
use crate::involution::{fit_relation, harmonic_conjugate, Arbre, InvolutionConfig, InvolutiveMap};
use crate::line::{pairwise_distinct, Homography, PointPair, ProjPoint};
use crate::plane::{circle_param, join, LineChart, PlaneLine, PlanePoint};

/// Retries before a generator gives up; far above what any generator needs.
const ATTEMPTS: usize = 10_000;

fn retry<T>(mut f: impl FnMut() -> Option<T>) -> T {
    (0..ATTEMPTS).find_map(|_| f()).expect("generator exhausted its attempts")
}

/// Small rationals `n/d` over Q, uniform residues over F_p.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.modulus() {
        None => {
            let n = rng.gen_range(-40..=40);
            let d = rng.gen_range(1..=7);
            field.ratio(n, d).expect("nonzero denominator")
        }
        Some(p) => field.int(rng.gen_range(0..p) as i64),
    }
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    retry(|| Some(scalar(rng, field)).filter(|s| !s.is_zero()))
}

pub fn finite_point<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> ProjPoint {
    ProjPoint::finite(scalar(rng, field))
}

/// A finite point, or ∞ with probability `1/inf_one_in`.
pub fn point<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, inf_one_in: u32) -> ProjPoint {
    if inf_one_in > 0 && rng.gen_ratio(1, inf_one_in) {
        ProjPoint::infinity(field)
    } else {
        finite_point(rng, field)
    }
}

pub fn homography<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Homography {
    retry(|| Homography::new(scalar(rng, field), scalar(rng, field), scalar(rng, field), scalar(rng, field)).ok())
}

pub fn involutive_map<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> InvolutiveMap {
    retry(|| InvolutiveMap::new(scalar(rng, field), scalar(rng, field), scalar(rng, field)).ok())
}

/// A map with two fixed points in the field.
pub fn hyperbolic_map<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> (InvolutiveMap, PointPair) {
    retry(|| {
        let k = point(rng, field, 10);
        let l = point(rng, field, 10);
        if k == l {
            return None;
        }
        let m = fit_relation(&[PointPair::double(k.clone()), PointPair::double(l.clone())]).ok()?;
        Some((m, PointPair::new(k, l)))
    })
}

/// `count` pairs of `m` whose members are pairwise distinct and avoid
/// `avoid`. Fixed points are skipped; with `inf_one_in == 0` both members
/// are finite.
pub fn pairs_of<R: Rng + ?Sized>(
    rng: &mut R,
    m: &InvolutiveMap,
    count: usize,
    inf_one_in: u32,
    avoid: &[ProjPoint],
) -> Vec<PointPair> {
    let field = m.field();
    let mut used: Vec<ProjPoint> = avoid.to_vec();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = retry(|| {
            let x = point(rng, field, inf_one_in);
            let y = m.partner(&x);
            let finite_ok = inf_one_in > 0 || !y.is_infinite();
            (finite_ok && x != y && !used.contains(&x) && !used.contains(&y)).then_some(x)
        });
        let y = m.partner(&x);
        used.push(x.clone());
        used.push(y.clone());
        out.push(PointPair::new(x, y));
    }
    out
}

fn config_from(pairs: Vec<PointPair>) -> InvolutionConfig {
    let [a, b, c]: [PointPair; 3] = pairs.try_into().expect("three pairs");
    InvolutionConfig::new(a, b, c)
}

/// Six distinct points paired by a random involutive map. Over small fields
/// some maps have too few free points; those are redrawn.
pub fn involution<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldSpec,
    inf_one_in: u32,
) -> (InvolutiveMap, InvolutionConfig) {
    retry(|| {
        let m = involutive_map(rng, field);
        let fixed = match crate::involution::classify(&m) {
            crate::involution::InvolutionClass::Hyperbolic(_) => 2,
            crate::involution::InvolutionClass::Elliptic => 0,
        };
        let free = field.modulus().map_or(u64::MAX, |p| p + 1 - fixed);
        if free < 8 {
            return None;
        }
        let pairs = pairs_of(rng, &m, 3, inf_one_in, &[]);
        Some((m.clone(), config_from(pairs)))
    })
}

/// Replaces one member of one pair by a fresh point, keeping all six
/// distinct. The result is never an involution: the other two pairs fix the
/// map, which sends the kept member elsewhere.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, c: &InvolutionConfig, inf_one_in: u32) -> InvolutionConfig {
    let field = c.field();
    let mut pairs = c.pairs().clone();
    let which = rng.gen_range(0..3);
    let keep_first = rng.gen_bool(0.5);
    let fresh = retry(|| {
        let p = point(rng, field, inf_one_in);
        (!c.points().contains(&&p)).then_some(p)
    });
    let old = &pairs[which];
    pairs[which] = if keep_first {
        PointPair::new(old.first().clone(), fresh)
    } else {
        PointPair::new(fresh, old.second().clone())
    };
    let [a, b, cc] = pairs;
    InvolutionConfig::new(a, b, cc)
}

/// An arbre: `(x − a)(y − a) = k` for three distinct `x`.
pub fn arbre<R: Rng + ?Sized>(rng: &mut R, q: FieldSpec) -> Arbre {
    retry(|| {
        let a = scalar(rng, q);
        let k = nonzero_scalar(rng, q);
        let m = InvolutiveMap::new(q.one(), -&a, &a * &a - &k).ok()?;
        let souche = ProjPoint::finite(a);
        let pairs = pairs_of(rng, &m, 3, 0, &[souche.clone(), ProjPoint::infinity(q)]);
        Arbre::new(souche, config_from(pairs)).ok()
    })
}

/// Two harmonic finite pairs `{k, l}, {b, h}` with all four distinct.
pub fn harmonic_quadruple<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> (PointPair, PointPair) {
    retry(|| {
        let k = finite_point(rng, field);
        let l = finite_point(rng, field);
        let b = finite_point(rng, field);
        if !pairwise_distinct(&[&k, &l, &b]) {
            return None;
        }
        let h = harmonic_conjugate(&k, &l, &b).ok()?;
        if h.is_infinite() || h == b {
            return None;
        }
        Some((PointPair::new(k, l), PointPair::new(b, h)))
    })
}

/// Two configurations of one involution sharing their first two pairs.
pub fn sharing_two_pairs<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> (InvolutionConfig, InvolutionConfig) {
    retry(|| {
        let (m, _) = involution(rng, field, 8);
        let pairs = pairs_of(rng, &m, 4, 8, &[]);
        let [p, q, r, s]: [PointPair; 4] = pairs.try_into().ok()?;
        Some((InvolutionConfig::new(p.clone(), q.clone(), r), InvolutionConfig::new(p, q, s)))
    })
}

/// A point on the unit circle from a random parameter.
pub fn circle_point<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> (ProjPoint, PlanePoint) {
    retry(|| {
        let t = point(rng, field, 12);
        circle_param(&t).ok().map(|p| (t, p))
    })
}

/// A chord of the unit circle through two distinct parametrized points.
pub fn circle_chord<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, avoid: &[PlanePoint]) -> PlaneLine {
    retry(|| {
        let (_, p) = circle_point(rng, field);
        let (_, q) = circle_point(rng, field);
        let l = join(&p, &q).ok()?;
        (!avoid.iter().any(|v| l.contains(v))).then_some(l)
    })
}

/// A point of `l` picked through its standard chart.
pub fn point_on<R: Rng + ?Sized>(rng: &mut R, l: &PlaneLine) -> PlanePoint {
    LineChart::standard(l).point_at(&finite_point(rng, l.field()))
}

pub fn line<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> PlaneLine {
    retry(|| PlaneLine::new(scalar(rng, field), scalar(rng, field), scalar(rng, field)).ok())
}

pub fn plane_point<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> PlanePoint {
    PlanePoint::affine(scalar(rng, field), scalar(rng, field))
}

/// Collinear `D, A, C, B, E` with `(A − D)(C − D) = (B − D)(E − D)`.
pub fn pappus_points<R: Rng + ?Sized>(rng: &mut R) -> [Scalar; 5] {
    let q = FieldSpec::RATIONALS;
    retry(|| {
        let [d, a, c, b] = [0; 4].map(|_| scalar(rng, q));
        let bd = &b - &d;
        if bd.is_zero() {
            return None;
        }
        let e = &d + (&a - &d) * (&c - &d) / bd;
        let pts = [&d, &a, &c, &b, &e].map(|s| ProjPoint::finite(s.clone()));
        pairwise_distinct(&[&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]]).then_some([d, a, c, b, e])
    })
}

pub fn proportion<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Proportion {
    let a = scalar(rng, field);
    let b = nonzero_scalar(rng, field);
    let k = nonzero_scalar(rng, field);
    Proportion::new(&a * &k, &b * &k, a, b).expect("scaled ratio")
}

/// Redraws on configuration-dependent errors.
pub fn until_ok<T>(mut f: impl FnMut() -> Result<T>) -> T {
    retry(|| match f() {
        Ok(v) => Some(v),
        Err(
            Error::DegenerateConfiguration(_)
            | Error::CoincidentPoints
            | Error::CenterOnLine
            | Error::NonRationalIntersection,
        ) => None,
        Err(e) => panic!("unexpected generator error: {e}"),
    })
}
