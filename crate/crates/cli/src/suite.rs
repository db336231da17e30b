//! Randomized property runner. Each (property, case) pair gets its own RNG
//! stream derived from the seed, so results do not depend on evaluation
//! order.

use involution::euclid::Rule;
use involution::gen;
use involution::involution::{
    central_point, classify, completes_involution, find_souche, fixed_points, is_arbre, is_involution_cr,
    is_involution_det, is_involution_rect, reciprocal_souches, sixth_point, InvolutionClass, Souche,
};
use involution::ordering::{engagement, length, mingling, Mingling};
use involution::plane::{
    central_projection, figure1_check, inscribed_quadrilateral_pairs, pappus_lemma_check, Conic, LineChart,
};
use involution::{is_harmonic, Arbre, FieldSpec, PointPair, ProjPoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dsl::{parse_script, print_script};
use crate::report::{Entry, Report, Verdict};

type Rng = ChaCha8Rng;
type Outcome = Result<(), String>;

/// Smallest modulus with enough points for every generator.
pub const MIN_MODULUS: u64 = 11;

struct Property {
    name: &'static str,
    ordered_only: bool,
    check: fn(&mut Rng, FieldSpec) -> Outcome,
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: involution::Error) -> String {
    format!("{}: {e}", e.kind())
}

fn predicate_equivalence(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (_, c) = gen::involution(r, f, 6);
    let bad = gen::perturb(r, &c, 6);
    for (cfg, expected) in [(&c, true), (&bad, false)] {
        let det = is_involution_det(cfg).map_err(err)?;
        let cr = is_involution_cr(cfg).map_err(err)?;
        let rect = is_involution_rect(cfg).ok();
        ensure(det == expected && cr == expected && rect.is_none_or(|v| v == expected), || {
            format!("{cfg}: det {det}, cr {cr}, rect {rect:?}, expected {expected}")
        })?;
    }
    Ok(())
}

fn arbre_round_trip(r: &mut Rng, f: FieldSpec) -> Outcome {
    let a = gen::arbre(r, f);
    let c = a.config();
    ensure(is_arbre(&a).map_err(err)? && is_involution_det(c).map_err(err)?, || format!("{c}"))?;
    let found = find_souche(c).map_err(err)?;
    ensure(found == Souche::Finite(a.souche().clone()), || format!("{c}: souche {found:?}"))
}

fn involution_round_trip(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (_, c) = gen::involution(r, f, 0);
    match find_souche(&c).map_err(err)? {
        Souche::Finite(a) => {
            let arbre = Arbre::new(ProjPoint::finite(a), c.clone()).map_err(err)?;
            ensure(is_arbre(&arbre).map_err(err)?, || format!("{c}"))
        }
        Souche::AtInfinity => {
            let sums: Vec<_> =
                c.pairs().iter().map(|p| p.first().affine().unwrap() + p.second().affine().unwrap()).collect();
            ensure(sums[0] == sums[1] && sums[1] == sums[2], || format!("{c}: sums differ"))
        }
    }
}

fn projective_invariance(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (_, good) = gen::involution(r, f, 6);
    let bad = gen::perturb(r, &good, 6);
    let h = gen::homography(r, f);
    for c in [good, bad] {
        let before = is_involution_cr(&c).map_err(err)?;
        let after = is_involution_cr(&c.map(&h)).map_err(err)?;
        ensure(before == after, || format!("{c} under {h}"))?;
    }
    Ok(())
}

fn classification(r: &mut Rng, f: FieldSpec) -> Outcome {
    let m = gen::involutive_map(r, f);
    let x = gen::point(r, f, 6);
    ensure(m.partner(&m.partner(&x)) == x, || format!("{m} not involutive at {x}"))?;
    match classify(&m) {
        InvolutionClass::Elliptic => ensure(!m.delta().is_square(), || format!("{m}: elliptic with square delta")),
        InvolutionClass::Hyperbolic(p) => {
            ensure(!p.is_double() && p.members().iter().all(|k| &m.partner(k) == *k), || {
                format!("{m}: bad fixed pair {p}")
            })
        }
    }
}

fn harmonic_fixed_points(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (m, fixed) = gen::hyperbolic_map(r, f);
    ensure(fixed_points(&m).map_err(err)? == fixed, || format!("{m}"))?;
    let b = gen::point(r, f, 8);
    if fixed.contains(&b) {
        return Ok(());
    }
    let h = m.partner(&b);
    ensure(is_harmonic(&fixed, &PointPair::new(b.clone(), h.clone())).map_err(err)?, || format!("{m}: {b} -> {h}"))
}

fn agregativity(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (c1, c2) = gen::sharing_two_pairs(r, f);
    ensure(completes_involution(&c1, &c2).map_err(err)?, || format!("{c1} / {c2}"))
}

fn sixth(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (_, c) = gen::involution(r, f, 6);
    let [p, q, s] = c.pairs();
    let y = sixth_point(p, q, s.first()).map_err(err)?;
    ensure(&y == s.second(), || format!("{c}: got {y}"))
}

fn souches_reciproques(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (p1, p2) = gen::harmonic_quadruple(r, f);
    let (a, l) = reciprocal_souches(&p1, &p2).map_err(err)?;
    let mid =
        |p: &PointPair| ProjPoint::finite((p.first().affine().unwrap() + p.second().affine().unwrap()) / f.int(2));
    ensure(a == mid(&p1) && l == mid(&p2), || format!("{p1} {p2}: {a}, {l}"))?;
    let l = l.affine().unwrap();
    let [g, ff] = p1.members().map(|x| x.affine().unwrap());
    let [b, h] = p2.members().map(|x| x.affine().unwrap());
    let sq = |x: &involution::Scalar| (x - l) * (x - l);
    ensure((g - l) * (ff - l) == sq(b) && sq(b) == sq(h), || format!("{p1} {p2}: L-check"))
}

fn ramee(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (_, c) = gen::involution(r, f, 8);
    let h = gen::until_ok(|| {
        let src = LineChart::standard(&gen::line(r, f));
        let dst = LineChart::standard(&gen::line(r, f));
        central_projection(&gen::plane_point(r, f), &src, &dst)
    });
    let image = c.map(&h);
    ensure(is_involution_cr(&image).map_err(err)?, || format!("{c} -> {image}"))
}

fn figure1(r: &mut Rng, f: FieldSpec) -> Outcome {
    let circle = Conic::unit_circle(f);
    let l = gen::circle_chord(r, f, &[]);
    let (g, verdict) = gen::until_ok(|| figure1_check(&circle, &l, &gen::point_on(r, &l)));
    ensure(verdict, || format!("line {l}, g {g}"))
}

fn quadrilateral(r: &mut Rng, f: FieldSpec) -> Outcome {
    let circle = Conic::unit_circle(f);
    let q = gen::until_ok(|| {
        let v: Vec<_> = (0..4).map(|_| gen::circle_point(r, f).1).collect();
        let l = gen::circle_chord(r, f, &v);
        inscribed_quadrilateral_pairs(&circle, [&v[0], &v[1], &v[2], &v[3]], &l)
    });
    ensure(q.involution && q.rectangles != Some(false) && q.analogy != Some(false), || format!("{q:?}"))
}

fn proportions(r: &mut Rng, f: FieldSpec) -> Outcome {
    let p = gen::proportion(r, f);
    for rule in Rule::ALL {
        match p.transform(rule) {
            Ok(out) => {
                let [a, b, c, d] = out.terms();
                ensure(a * d == b * c, || format!("{p} {rule} -> {out}"))?;
            }
            Err(involution::Error::RuleInapplicable(_)) => {}
            Err(e) => return Err(err(e)),
        }
    }
    Ok(())
}

fn pappus(r: &mut Rng, _: FieldSpec) -> Outcome {
    let [d, a, c, b, e] = gen::pappus_points(r);
    ensure(pappus_lemma_check(&d, &a, &c, &b, &e).map_err(err)?, || format!("{d} {a} {c} {b} {e}"))
}

fn engagement_mingling(r: &mut Rng, f: FieldSpec) -> Outcome {
    let a = gen::arbre(r, f);
    let engaged = engagement(&a).map_err(err)?;
    let mingled = mingling(a.config()).map_err(err)?;
    let expected = match engaged {
        Some(true) => Some(Mingling::Meles),
        Some(false) => Some(Mingling::Demeles),
        None => return Err(format!("{}: souche not uniformly engaged", a.config())),
    };
    ensure(mingled == expected, || format!("{}: {mingled:?}", a.config()))
}

fn mean_proportional(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (m, fixed) = gen::hyperbolic_map(r, f);
    let (Some(a), Some(k)) = (central_point(&m).affine().cloned(), fixed.first().affine().cloned()) else {
        return Ok(());
    };
    let avoid = [ProjPoint::finite(a.clone()), ProjPoint::infinity(f), fixed.first().clone(), fixed.second().clone()];
    let pair = gen::pairs_of(r, &m, 1, 0, &avoid).remove(0);
    let [b, h] = pair.members().map(|p| p.affine().unwrap().clone());
    let ak = length(&a, &k);
    ensure(&ak * &ak == length(&a, &b) * length(&a, &h), || format!("{m}: {pair}"))
}

fn script_round_trip(r: &mut Rng, f: FieldSpec) -> Outcome {
    let (_, c) = gen::involution(r, f, 6);
    let [p, q, s] = c.pairs();
    let text = format!("field {f}\npair P = {p}\npair Q = {q}\npair R = {s}\nassert involution P Q R\nsouche P Q R\n");
    let once = parse_script(&text).map_err(|e| e.to_string())?;
    let twice = parse_script(&print_script(&once)).map_err(|e| e.to_string())?;
    ensure(once == twice, || text.clone())?;
    let report = crate::run::run_script(&once);
    ensure(report.pass, || format!("{text}{report}"))
}

const PROPERTIES: &[Property] = &[
    Property { name: "predicate_equivalence", ordered_only: false, check: predicate_equivalence },
    Property { name: "arbre_to_involution", ordered_only: false, check: arbre_round_trip },
    Property { name: "involution_to_arbre", ordered_only: false, check: involution_round_trip },
    Property { name: "projective_invariance", ordered_only: false, check: projective_invariance },
    Property { name: "classification", ordered_only: false, check: classification },
    Property { name: "harmonic_fixed_points", ordered_only: false, check: harmonic_fixed_points },
    Property { name: "agregativity", ordered_only: false, check: agregativity },
    Property { name: "sixth_point", ordered_only: false, check: sixth },
    Property { name: "souches_reciproques", ordered_only: false, check: souches_reciproques },
    Property { name: "ramee", ordered_only: false, check: ramee },
    Property { name: "figure1", ordered_only: false, check: figure1 },
    Property { name: "inscribed_quadrilateral", ordered_only: false, check: quadrilateral },
    Property { name: "proportion_closure", ordered_only: false, check: proportions },
    Property { name: "script_round_trip", ordered_only: false, check: script_round_trip },
    Property { name: "pappus", ordered_only: true, check: pappus },
    Property { name: "engagement_mingling", ordered_only: true, check: engagement_mingling },
    Property { name: "mean_proportional", ordered_only: true, check: mean_proportional },
];

/// The RNG for one case of one property.
pub fn case_rng(seed: u64, property: usize, case: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(property as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(case as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Runs every property `cases` times. Deterministic in `(field, cases, seed)`.
pub fn random_suite(field: FieldSpec, cases: usize, seed: u64) -> Report {
    let small = field.modulus().is_some_and(|p| p < MIN_MODULUS);
    let entries = PROPERTIES
        .iter()
        .enumerate()
        .map(|(idx, prop)| {
            let claim = prop.name.to_string();
            if prop.ordered_only && !field.is_ordered() {
                let reason = "SkippedUnordered: needs an ordered field".to_string();
                return Entry { claim, verdict: Verdict::Skipped { reason }, value: None, cases: Some(0) };
            }
            if small {
                let reason = format!("field too small: generators need a modulus of at least {MIN_MODULUS}");
                return Entry { claim, verdict: Verdict::Skipped { reason }, value: None, cases: Some(0) };
            }
            let failure = (0..cases).find_map(|case| {
                let mut rng = case_rng(seed, idx, case);
                (prop.check)(&mut rng, field).err().map(|m| format!("case {case}: {m}"))
            });
            let verdict = if failure.is_some() { Verdict::Fails } else { Verdict::Holds };
            Entry { claim, verdict, value: failure, cases: Some(cases) }
        })
        .collect();
    Report::new(entries)
}
