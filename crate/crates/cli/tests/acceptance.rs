//! Acceptance criteria 1 to 11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails or overruns its time budget.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use involution::euclid::Rule;
use involution::gen;
use involution::involution::{
    classify, completes_involution, find_souche, fixed_points, four_point_synthesis, is_arbre, is_involution_cr,
    is_involution_det, is_involution_rect, reciprocal_souches, InvolutionClass, Souche,
};
use involution::ordering::{engagement, mingling, Mingling};
use involution::plane::{
    central_projection, figure1_check, inscribed_quadrilateral_pairs, join, meet, pappus_lemma_check, Conic, LineChart,
};
use involution::{
    Arbre, FieldSpec, InvolutionConfig, InvolutiveMap, PlaneLine, PlanePoint, PointPair, ProjPoint, Scalar,
};
use involution_cli::dsl::{parse_script, print_script};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::RATIONALS;

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn f97() -> FieldSpec {
    FieldSpec::prime(97).unwrap()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

// Oracles computed here from first principles, independent of the library's
// predicates.

/// Homogeneous row of the pair relation: `[xy, x+y, 1]` scaled to allow ∞.
fn row(p: &PointPair) -> [Scalar; 3] {
    let (x, y) = (p.first(), p.second());
    [x.z() * y.z(), x.z() * y.t() + y.z() * x.t(), x.t() * y.t()]
}

fn det3(m: [[Scalar; 3]; 3]) -> Scalar {
    let [a, b, c] = &m;
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn oracle_involution(c: &InvolutionConfig) -> bool {
    let [p, q, r] = c.pairs();
    det3([row(p), row(q), row(r)]).is_zero()
}

fn bracket(p: &ProjPoint, q: &ProjPoint) -> Scalar {
    p.z() * q.t() - q.z() * p.t()
}

/// `[k, l; b, h] = −1`, cleared of denominators.
fn oracle_harmonic(k: &ProjPoint, l: &ProjPoint, b: &ProjPoint, h: &ProjPoint) -> bool {
    (bracket(k, b) * bracket(l, h) + bracket(k, h) * bracket(l, b)).is_zero()
}

fn abs(x: &Scalar) -> Scalar {
    if x < &x.zero_like() {
        -x.clone()
    } else {
        x.clone()
    }
}

fn val(p: &ProjPoint) -> &Scalar {
    p.affine().expect("finite point")
}

fn mid(p: &PointPair) -> Scalar {
    (val(p.first()) + val(p.second())) / Q.int(2)
}

fn criterion1() -> Outcome {
    let mut r = rng(1);
    let mut defined_rect = 0;
    for field in [Q, f97()] {
        for _ in 0..1000 {
            let (_, good) = gen::involution(&mut r, field, 6);
            let bad = gen::perturb(&mut r, &good, 6);
            for c in [&good, &bad] {
                let truth = oracle_involution(c);
                let det = is_involution_det(c).map_err(|e| format!("{c}: det {e}"))?;
                let cr = is_involution_cr(c).map_err(|e| format!("{c}: cr {e}"))?;
                check(det == truth && cr == truth, || format!("{c}: det {det}, cr {cr}, oracle {truth}"))?;
                if let Ok(rect) = is_involution_rect(c) {
                    defined_rect += 1;
                    check(rect == truth, || format!("{c}: rect {rect}, oracle {truth}"))?;
                }
            }
            check(oracle_involution(&good) && !oracle_involution(&bad), || format!("generator: {good} / {bad}"))?;
        }
    }
    Ok(format!("4000 configurations, rectangle form defined on {defined_rect}"))
}

fn criterion2() -> Outcome {
    let mut r = rng(2);
    for _ in 0..1000 {
        let a = gen::arbre(&mut r, Q);
        let c = a.config();
        check(is_involution_det(c).unwrap(), || format!("arbre {c} not an involution"))?;
        let Souche::Finite(s) = find_souche(c).map_err(|e| e.to_string())? else {
            return Err(format!("{c}: souche at infinity"));
        };
        check(&s == a.souche(), || format!("{c}: souche {s}, expected {}", a.souche()))?;
        let back = Arbre::new(ProjPoint::finite(s), c.clone()).map_err(|e| e.to_string())?;
        check(is_arbre(&back).unwrap(), || format!("{c}: round trip lost the arbre"))?;
    }
    let mut at_infinity = 0;
    for i in 0..1000 {
        let c = if i % 10 == 0 {
            // x + y = −γ: the souche is at infinity.
            let m = InvolutiveMap::new(Q.zero(), Q.one(), gen::scalar(&mut r, Q)).unwrap();
            let p = gen::pairs_of(&mut r, &m, 3, 0, &[ProjPoint::infinity(Q)]);
            InvolutionConfig::new(p[0].clone(), p[1].clone(), p[2].clone())
        } else {
            gen::involution(&mut r, Q, 0).1
        };
        match find_souche(&c).map_err(|e| e.to_string())? {
            Souche::Finite(a) => {
                let arbre = Arbre::new(ProjPoint::finite(a.clone()), c.clone()).map_err(|e| e.to_string())?;
                check(is_arbre(&arbre).unwrap(), || format!("{c}: souche {a} gives no arbre"))?;
                let products: Vec<_> =
                    c.pairs().iter().map(|p| (val(p.first()) - &a) * (val(p.second()) - &a)).collect();
                check(products[0] == products[1] && products[1] == products[2], || format!("{c}: products differ"))?;
            }
            Souche::AtInfinity => {
                at_infinity += 1;
                let sums: Vec<_> = c.pairs().iter().map(|p| val(p.first()) + val(p.second())).collect();
                check(sums[0] == sums[1] && sums[1] == sums[2], || format!("{c}: pair sums differ"))?;
            }
        }
    }
    check(at_infinity >= 100, || format!("only {at_infinity} souches at infinity"))?;
    Ok(format!("2000 round trips, {at_infinity} with the souche at infinity"))
}

fn criterion3() -> Outcome {
    let mut summary = Vec::new();
    for p in [5u64, 7] {
        let f = FieldSpec::prime(p).unwrap();
        let elems: Vec<Scalar> = f.elements().unwrap().collect();
        let points: Vec<ProjPoint> =
            elems.iter().map(|x| ProjPoint::finite(x.clone())).chain([ProjPoint::infinity(f)]).collect();
        let mut maps = 0u64;
        let mut hist = [0usize; 3];
        for a in &elems {
            for b in &elems {
                for g in &elems {
                    let first = [a, b, g].into_iter().find(|x| !x.is_zero());
                    if first.is_none_or(|x| !x.is_one()) {
                        continue;
                    }
                    if (b * b - a * g).is_zero() {
                        continue;
                    }
                    let m = InvolutiveMap::new(a.clone(), b.clone(), g.clone()).map_err(|e| e.to_string())?;
                    maps += 1;
                    let fixed = points.iter().filter(|x| &m.partner(x) == *x).count();
                    check(points.iter().all(|x| m.partner(&m.partner(x)) == *x), || format!("{m} not involutive"))?;
                    check(fixed == 0 || fixed == 2, || format!("{m} over F{p}: {fixed} fixed points"))?;
                    hist[fixed] += 1;
                    let class_ok = match classify(&m) {
                        InvolutionClass::Elliptic => fixed == 0,
                        InvolutionClass::Hyperbolic(_) => fixed == 2,
                    };
                    check(class_ok, || format!("{m}: classify disagrees with the count"))?;
                }
            }
        }
        check(maps == p * p, || format!("F{p}: {maps} maps, expected {}", p * p))?;
        summary.push(format!("F{p}: {maps} maps ({} elliptic, {} hyperbolic)", hist[0], hist[2]));
    }
    Ok(summary.join("; "))
}

fn criterion4() -> Outcome {
    let mut r = rng(4);
    let mut checked = 0;
    for _ in 0..500 {
        let (m, pair) = gen::hyperbolic_map(&mut r, Q);
        check(fixed_points(&m).map_err(|e| e.to_string())? == pair, || format!("{m}: fixed points"))?;
        let (k, l) = (pair.first(), pair.second());
        let mut n = 0;
        while n < 50 {
            let b = gen::point(&mut r, Q, 8);
            if &b == k || &b == l {
                continue;
            }
            let h = m.partner(&b);
            check(oracle_harmonic(k, l, &b, &h), || format!("{m}: [{k}, {l}; {b}, {h}] != -1"))?;
            n += 1;
        }
        checked += n;
    }
    Ok(format!("500 maps, {checked} points"))
}

fn criterion5() -> Outcome {
    let mut r = rng(5);
    for _ in 0..500 {
        let (c1, c2) = gen::sharing_two_pairs(&mut r, Q);
        check(completes_involution(&c1, &c2).map_err(|e| e.to_string())?, || format!("{c1} / {c2}"))?;
        let [p, q, own1] = c1.pairs();
        let own2 = &c2.pairs()[2];
        for s in [p, q] {
            let derived = InvolutionConfig::new(own1.clone(), own2.clone(), s.clone());
            check(oracle_involution(&derived), || format!("derived {derived} fails the oracle"))?;
        }
    }
    for _ in 0..500 {
        let (m, fixed) = gen::hyperbolic_map(&mut r, Q);
        let avoid = [fixed.first().clone(), fixed.second().clone()];
        let p = gen::pairs_of(&mut r, &m, 3, 8, &avoid);
        let extremes = InvolutionConfig::new(p[0].clone(), p[1].clone(), p[2].clone());
        let (m1, m2) = (PointPair::double(avoid[0].clone()), PointPair::double(avoid[1].clone()));
        check(four_point_synthesis(&extremes, &m1, &m2).map_err(|e| e.to_string())?, || format!("{extremes}"))?;
        let derived = InvolutionConfig::new(m1, m2, p[0].clone());
        check(oracle_involution(&derived), || format!("synthesis {derived} fails the oracle"))?;
    }
    Ok("500 shared-pair instances, 500 four-point syntheses".into())
}

fn criterion6() -> Outcome {
    let mut r = rng(6);
    for _ in 0..500 {
        let (p1, p2) = gen::harmonic_quadruple(&mut r, Q);
        let (a, l) = reciprocal_souches(&p1, &p2).map_err(|e| e.to_string())?;
        let (ma, ml) = (mid(&p1), mid(&p2));
        check(val(&a) == &ma && val(&l) == &ml, || format!("{p1} {p2}: got {a}, {l}"))?;
        // Each souche carries the arbre identity of the involution it centers.
        for (s, swapped, fixed) in [(&ml, &p1, &p2), (&ma, &p2, &p1)] {
            let rect = (val(swapped.first()) - s) * (val(swapped.second()) - s);
            let sq = |x: &ProjPoint| (val(x) - s) * (val(x) - s);
            check(rect == sq(fixed.first()) && rect == sq(fixed.second()), || {
                format!("{p1} {p2}: identity fails at {s}")
            })?;
        }
    }
    Ok("500 harmonic quadruples".into())
}

fn criterion7() -> Outcome {
    let mut r = rng(7);
    let (mut engaged, mut disengaged) = (0, 0);
    for _ in 0..1000 {
        let a = gen::arbre(&mut r, Q);
        let s = a.souche();
        let pairs = a.config().pairs();
        // Engaged iff the souche lies strictly between the nodes.
        let sides: Vec<bool> =
            pairs.iter().map(|p| (val(p.first()) - s) * (val(p.second()) - s) < s.zero_like()).collect();
        check(sides.iter().all(|&x| x == sides[0]), || format!("{}: mixed engagement", a.config()))?;
        let between = |x: &Scalar, p: &PointPair| {
            let (lo, hi) = (val(p.first()).min(val(p.second())), val(p.first()).max(val(p.second())));
            lo < x && x < hi
        };
        let interleaved = |p: &PointPair, q: &PointPair| between(val(q.first()), p) != between(val(q.second()), p);
        let all_interleaved =
            interleaved(&pairs[0], &pairs[1]) && interleaved(&pairs[0], &pairs[2]) && interleaved(&pairs[1], &pairs[2]);
        let none_interleaved = !interleaved(&pairs[0], &pairs[1])
            && !interleaved(&pairs[0], &pairs[2])
            && !interleaved(&pairs[1], &pairs[2]);
        let lib_engaged = engagement(&a).map_err(|e| e.to_string())?;
        let lib_mingled = mingling(a.config()).map_err(|e| e.to_string())?;
        check(lib_engaged == Some(sides[0]), || format!("{}: engagement {lib_engaged:?}", a.config()))?;
        let expected = if sides[0] {
            engaged += 1;
            Mingling::Meles
        } else {
            disengaged += 1;
            Mingling::Demeles
        };
        check(lib_mingled == Some(expected), || format!("{}: mingling {lib_mingled:?}", a.config()))?;
        check(if sides[0] { all_interleaved } else { none_interleaved }, || {
            format!("{}: oracle mingling disagrees", a.config())
        })?;
    }
    check(engaged > 0 && disengaged > 0, || "generator produced one kind only".into())?;
    Ok(format!("1000 arbres ({engaged} engaged, {disengaged} disengaged)"))
}

fn criterion8() -> Outcome {
    let mut r = rng(8);
    let circle = Conic::unit_circle(Q);
    for _ in 0..200 {
        let l = gen::circle_chord(&mut r, Q, &[]);
        let (cpt, (g, verdict)) = gen::until_ok(|| {
            let cpt = gen::point_on(&mut r, &l);
            figure1_check(&circle, &l, &cpt).map(|out| (cpt, out))
        });
        check(verdict, || format!("harmonic cut: line {l}, point {cpt}"))?;
        check(l.contains(&g) && circle.bilinear(&cpt, &g).is_zero(), || {
            format!("harmonic cut: {g} is not the polar cut of {cpt}")
        })?;
    }
    for _ in 0..200 {
        let quad = gen::until_ok(|| {
            let v: Vec<PlanePoint> = (0..4).map(|_| gen::circle_point(&mut r, Q).1).collect();
            let l = gen::circle_chord(&mut r, Q, &v);
            inscribed_quadrilateral_pairs(&circle, [&v[0], &v[1], &v[2], &v[3]], &l)
        });
        check(quad.involution && oracle_involution(&quad.config), || format!("quadrilateral {}", quad.config))?;
        check(quad.rectangles == Some(true) && quad.analogy == Some(true), || {
            format!("quadrilateral {}: identities {:?} {:?}", quad.config, quad.rectangles, quad.analogy)
        })?;
    }
    // The worked case: the square on the unit circle cut by x = 3/5.
    let p = |x: i64, y: i64| PlanePoint::affine(Q.int(x), Q.int(y));
    let line = PlaneLine::new(Q.int(5), Q.zero(), Q.int(-3)).unwrap();
    let quad = inscribed_quadrilateral_pairs(&circle, [&p(1, 0), &p(0, 1), &p(-1, 0), &p(0, -1)], &line)
        .map_err(|e| e.to_string())?;
    let s = |t: &str| Q.parse(t).unwrap();
    let pair = |a: &str, b: &str| PointPair::new(ProjPoint::finite(s(a)), ProjPoint::finite(s(b)));
    let expected = InvolutionConfig::new(pair("2/5", "-8/5"), pair("-2/5", "8/5"), pair("4/5", "-4/5"));
    check(quad.config == expected, || format!("worked case pairs {}", quad.config))?;
    let [ac, be, fg] = quad.config.pairs();
    let (a, c) = (val(ac.first()), val(ac.second()));
    let (b, e) = (val(be.first()), val(be.second()));
    let (f, g) = (val(fg.first()), val(fg.second()));
    let len = |x: &Scalar, y: &Scalar| abs(&(x - y));
    let left = (len(a, f) * len(a, g)) / (len(c, f) * len(c, g));
    let right = (len(a, b) * len(a, e)) / (len(c, b) * len(c, e));
    check(left == s("1/4") && right == s("1/4"), || format!("worked case identity {left} = {right}"))?;
    check(quad.involution && quad.rectangles == Some(true) && quad.analogy == Some(true), || {
        "worked case verdicts".into()
    })?;
    Ok("200 harmonic polar cuts, 200 quadrilaterals, worked case 1/4 = 1/4".into())
}

fn criterion9() -> Outcome {
    let mut r = rng(9);
    for _ in 0..200 {
        let (_, c) = gen::involution(&mut r, Q, 8);
        let (center, src, dst, h) = gen::until_ok(|| {
            let src = LineChart::standard(&gen::line(&mut r, Q));
            let dst = LineChart::standard(&gen::line(&mut r, Q));
            let center = gen::plane_point(&mut r, Q);
            central_projection(&center, &src, &dst).map(|h| (center, src, dst, h))
        });
        let image = c.map(&h);
        check(is_involution_cr(&image).map_err(|e| e.to_string())?, || format!("{c} -> {image}"))?;
        check(oracle_involution(&image), || format!("{image} fails the oracle"))?;
        // Recompute each image by drawing the ray through the center.
        for t in c.points() {
            let ray = join(&center, &src.point_at(t)).map_err(|e| e.to_string())?;
            let hit = meet(&ray, dst.line()).map_err(|e| e.to_string())?;
            let u = dst.coordinate(&hit).map_err(|e| e.to_string())?;
            check(u == h.apply(t), || format!("{t}: ray gives {u}, homography {}", h.apply(t)))?;
        }
    }
    Ok("200 projected involutions".into())
}

fn criterion10() -> Outcome {
    let mut r = rng(10);
    for _ in 0..500 {
        let [d, a, c, b, e] = gen::pappus_points(&mut r);
        let len = |x: &Scalar, y: &Scalar| abs(&(x - y));
        check(len(&a, &d) * len(&d, &c) == len(&b, &d) * len(&d, &e), || "generator hypothesis".into())?;
        let first = len(&b, &d) / len(&d, &e) == (len(&a, &b) * len(&b, &c)) / (len(&a, &e) * len(&e, &c));
        let second = len(&a, &d) / len(&d, &c) == (len(&b, &a) * len(&a, &e)) / (len(&b, &c) * len(&c, &e));
        check(first && second, || format!("oracle identities fail on {d} {a} {c} {b} {e}"))?;
        check(pappus_lemma_check(&d, &a, &c, &b, &e).map_err(|e| e.to_string())?, || {
            format!("pappus {d} {a} {c} {b} {e}")
        })?;
    }
    let mut applied = 0;
    for _ in 0..500 {
        let p = gen::proportion(&mut r, Q);
        for rule in Rule::ALL {
            let Ok(out) = p.transform(rule) else { continue };
            let [w, x, y, z] = out.terms();
            check(!x.is_zero() && !z.is_zero() && w * z == x * y, || format!("{p} {rule} -> {out}"))?;
            applied += 1;
        }
    }
    Ok(format!("500 Pappus instances, {applied} rule applications"))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn criterion11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_involution");
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir().join("corpus"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "inv"))
        .collect();
    files.sort();
    check(files.len() >= 12, || format!("corpus has {} scripts", files.len()))?;
    let mut claims = 0;
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let once = parse_script(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        let twice = parse_script(&print_script(&once)).map_err(|e| format!("{}: reparse {e}", f.display()))?;
        check(once == twice, || format!("{}: print/parse round trip differs", f.display()))?;
        let out = Command::new(bin).arg("verify").arg(f).output().map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        check(out.status.code() == Some(0), || format!("{}: exit {:?}\n{stdout}", f.display(), out.status.code()))?;
        claims += stdout.lines().filter(|l| l.starts_with("HOLDS")).count();
    }
    let failing = corpus_dir().join("failing.inv");
    let out = Command::new(bin).arg("verify").arg(&failing).output().map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    check(out.status.code() == Some(1), || format!("failing script exit {:?}", out.status.code()))?;
    check(stdout.lines().any(|l| l == "FAILS  assert harmonic P Q"), || format!("failing claim not named:\n{stdout}"))?;
    Ok(format!("{} scripts, {claims} claims hold; failing script exits 1", files.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("predicate equivalence", criterion1, 10),
        ("arbre <-> involution", criterion2, 5),
        ("no parabolic involution", criterion3, 1),
        ("harmonic fixed points", criterion4, 5),
        ("agregativity", criterion5, 5),
        ("souches reciproques", criterion6, 2),
        ("engagement <-> melement", criterion7, 2),
        ("conic constructions", criterion8, 10),
        ("ramee invariance", criterion9, 5),
        ("pappus and proportions", criterion10, 2),
        ("cli corpus", criterion11, 2),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(*limit);
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2}: {name} ({:.2} s / {limit} s) {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
