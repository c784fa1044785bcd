//! Acceptance suite. One line per criterion; exits non-zero if any fails.

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num::{BigInt, BigRational, Zero};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropmirror::amoeba::{
    amoeba_sample_curve, cutoff, exponential_decay_check, horizontal_lift, lopsided_certificate, pushforward,
    symplectic_margin, CutoffProfile, SampleGrid,
};
use tropmirror::coordring::{hilbert_function, section_ring, EhrhartPolynomial};
use tropmirror::floer::{
    assemble_algebra, check_axioms, cup_product, floer_group, serre_dual_dimension, FloerGroup,
};
use tropmirror::lattice::{polytope_from_bundle, standard};
use tropmirror::tropical::{
    choose_scale, hausdorff_distance, legendre_value, regular_subdivision, tropical_complex, tropical_constants,
};
use tropmirror::{
    Fan, HeightFunction, LaurentPolynomial, LatticeVector, PatchworkFamily, Polytope, RationalVector, SupportFunction,
    Window,
};

type Outcome = Result<String, String>;

struct Variety {
    name: &'static str,
    file: &'static str,
    fan: Fan,
    phi: SupportFunction,
    j: usize,
}

impl Variety {
    fn q(&self) -> Polytope {
        polytope_from_bundle(&self.fan, &self.phi).unwrap()
    }

    /// `<v_i, y> <= j phi(v_i)` for every ray, straight from the input.
    fn in_dilate(&self, j: i64, y: &[BigRational], strict: bool) -> bool {
        self.fan.rays().iter().zip(self.phi.values()).all(|(v, b)| {
            let lhs: BigRational = v
                .coords()
                .iter()
                .zip(y)
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum();
            let rhs = b * BigRational::from_integer(j.into());
            if strict {
                lhs < rhs
            } else {
                lhs <= rhs
            }
        })
    }
}

fn varieties() -> Vec<Variety> {
    let make = |name, file, fan: Fan, j| {
        let phi = SupportFunction::constant(&fan, 1);
        Variety { name, file, fan, phi, j }
    };
    vec![
        make("P2", "p2.json", standard::projective_plane(), 4),
        make("P1", "p1.json", standard::projective_line(), 6),
        make("P1xP1", "p1xp1.json", standard::p1_times_p1(), 3),
        make("F1", "f1.json", standard::hirzebruch_f1(), 3),
    ]
}

fn fan_file(name: &str) -> String {
    format!("{}/fans/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Integer points of `jQ` by scanning a box, `strict` for the interior.
fn brute_count(v: &Variety, j: i64, strict: bool) -> usize {
    let n = v.fan.dim();
    let r = 4 * j.max(1);
    let mut count = 0;
    let mut idx = vec![-r; n];
    loop {
        let y: Vec<BigRational> = idx.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        if v.in_dilate(j, &y, strict) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            idx[k] += 1;
            if idx[k] <= r {
                break;
            }
            idx[k] = -r;
            k += 1;
        }
    }
}

fn criterion_1() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_tropmirror");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for v in varieties() {
        let out = dir.path().join(v.name);
        let start = Instant::now();
        let status = Command::new(bin)
            .args(["verify", "--input", &fan_file(v.file), "--J", &v.j.to_string(), "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if !status.status.success() {
            return Err(format!("{} exited with {:?}", v.name, status.status.code()));
        }
        if elapsed > Duration::from_secs(10) {
            return Err(format!("{} took {elapsed:?}", v.name));
        }
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out.join("isomorphism.json")).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let checked = report["products_checked"].as_u64().unwrap_or(0);
        let mismatches = report["mismatches"].as_array().map_or(usize::MAX, |m| m.len());
        if report["verdict"] != "pass" || checked == 0 || mismatches != 0 {
            return Err(format!("{}: verdict {}, {checked} products, {mismatches} mismatches", v.name, report["verdict"]));
        }
        notes.push(format!("{} J={} {checked} products {:.2}s", v.name, v.j, elapsed.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for v in varieties() {
        let q = v.q();
        let ring = section_ring(&q, 6);
        let hilbert = hilbert_function(&q, 6);
        for j in 0..=6usize {
            let floer = floer_group(&q, 0, j as i64).dim();
            let brute = brute_count(&v, j as i64, false);
            if floer != ring.dims()[j] || floer != hilbert[j] || floer != brute {
                return Err(format!(
                    "{} j={j}: floer {floer}, ring {}, hilbert {}, brute {brute}",
                    v.name,
                    ring.dims()[j],
                    hilbert[j]
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (variety, j) pairs agree on three paths and a box scan"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for v in varieties() {
        let q = v.q();
        let ehrhart = EhrhartPolynomial::fit(&q).map_err(|e| e.to_string())?;
        let n = v.fan.dim() as u32;
        for j in 1..=4i64 {
            let dual = serre_dual_dimension(&q, -j).map_err(|e| e.to_string())?;
            let interior = brute_count(&v, j, true);
            let recip = ehrhart.eval(-j) * BigRational::from_integer(BigInt::from(-1).pow(n));
            if dual != interior || recip != BigRational::from_integer(interior.into()) {
                return Err(format!("{} j={j}: dual {dual}, interior {interior}, reciprocity {recip}", v.name));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (variety, j) pairs"))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for v in varieties() {
        let alg = assemble_algebra(&v.q(), v.j).map_err(|e| e.to_string())?;
        let r = check_axioms(&alg).map_err(|e| e.to_string())?;
        if !r.ok() || r.associativity_checked == 0 || r.unit_checked == 0 || r.commutativity_checked == 0 {
            return Err(format!("{}: {r:?}", v.name));
        }
        notes.push(format!("{} {} triples", v.name, r.associativity_checked));
    }
    Ok(notes.join(", "))
}

/// Written from the triangle conditions alone: the product of generators at
/// `p` in (l1,l2) and `q` in (l2,l3) is the generator at
/// `r = ((l2-l1)p + (l3-l2)q)/(l3-l1)` when the twists are ordered as
/// `l3<l1<l2`, `l1<l2<l3` or `l2<l3<l1`, and `r` is a generator of (l1,l3):
/// a point of `Q` (of its interior if l1 > l3) with denominator `|l3-l1|`.
fn expected_product(
    v: &Variety,
    l: [i64; 3],
    p: &RationalVector,
    q: &RationalVector,
) -> Option<RationalVector> {
    let [l1, l2, l3] = l;
    if l1 == l2 {
        return Some(q.clone());
    }
    if l2 == l3 {
        return Some(p.clone());
    }
    if l1 == l3 {
        return None;
    }
    let ordered = (l3 < l1 && l1 < l2) || (l1 < l2 && l2 < l3) || (l2 < l3 && l3 < l1);
    if !ordered {
        return None;
    }
    let big = |x: i64| BigRational::from_integer(x.into());
    let r: Vec<BigRational> = p
        .coords()
        .iter()
        .zip(q.coords())
        .map(|(a, b)| (big(l2 - l1) * a + big(l3 - l2) * b) / big(l3 - l1))
        .collect();
    let d = big((l3 - l1).abs());
    if r.iter().any(|x| !(x * &d).is_integer()) {
        return None;
    }
    v.in_dilate(1, &r, l1 > l3).then(|| RationalVector::new(r))
}

fn criterion_5() -> Outcome {
    let vs = varieties();
    let qs: Vec<Polytope> = vs.iter().map(|v| v.q()).collect();
    let mut groups: HashMap<(usize, i64, i64), FloerGroup> = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut nonzero, mut distinct, mut tried) = (0, 0, 0);
    while tried < 10_000 {
        let vi = rng.gen_range(0..vs.len());
        let l = [rng.gen_range(-3..=5), rng.gen_range(-3..=5), rng.gen_range(-3..=5)];
        let mut pick = |a: i64, b: i64, rng: &mut ChaCha8Rng| {
            let g = groups.entry((vi, a, b)).or_insert_with(|| floer_group(&qs[vi], a, b));
            if g.dim() == 0 {
                None
            } else {
                Some(g.basis()[rng.gen_range(0..g.dim())].clone())
            }
        };
        let (Some(x), Some(y)) = (pick(l[0], l[1], &mut rng), pick(l[1], l[2], &mut rng)) else {
            continue;
        };
        tried += 1;
        let got = cup_product(&x, &y, &qs[vi]).map_err(|e| e.to_string())?;
        let want = expected_product(&vs[vi], l, &x.point, &y.point);
        if l[0] != l[1] && l[1] != l[2] && l[0] != l[2] {
            distinct += 1;
        }
        match (&got, &want) {
            (None, None) => {}
            (Some(g), Some(w)) if &g.point == w && g.l1 == l[0] && g.l2 == l[2] => nonzero += 1,
            _ => {
                return Err(format!(
                    "{} twists {:?} p {:?} q {:?}: library {:?}, predicate {:?}",
                    vs[vi].name,
                    l,
                    x.point.to_strings(),
                    y.point.to_strings(),
                    got.map(|g| g.point.to_strings()),
                    want.map(|w| w.to_strings())
                ))
            }
        }
    }
    Ok(format!("{tried} triples ({distinct} with distinct twists), {nonzero} nonzero, all agree"))
}

fn random_rational(rng: &mut ChaCha8Rng, n: usize) -> RationalVector {
    RationalVector::new(
        (0..n)
            .map(|_| BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=6).into()))
            .collect(),
    )
}

fn midpoint(a: &RationalVector, b: &RationalVector) -> RationalVector {
    let half = BigRational::new(1.into(), 2.into());
    RationalVector::new(a.coords().iter().zip(b.coords()).map(|(x, y)| (x + y) * &half).collect())
}

/// Subdivision, duality, partition and Legendre convexity for one height.
fn tropical_invariants(h: &HeightFunction, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let sub = regular_subdivision(h).map_err(|e| e.to_string())?;
    for (ci, cell) in sub.cells().iter().enumerate() {
        let mut on: Vec<usize> = Vec::new();
        for (i, alpha) in h.support().iter().enumerate() {
            let a = cell.affine_value(alpha);
            if a > h.heights()[i] {
                return Err(format!("cell {ci} lies above lifted point {i}"));
            }
            if a == h.heights()[i] {
                on.push(i);
            }
        }
        let pts: BTreeSet<usize> = cell.points.iter().copied().collect();
        if on.into_iter().collect::<BTreeSet<_>>() != pts {
            return Err(format!("cell {ci}: equality set differs from its points"));
        }
        if !cell.vertices.iter().all(|v| pts.contains(v)) {
            return Err(format!("cell {ci}: vertex outside its points"));
        }
    }
    let pi = tropical_complex(h).map_err(|e| e.to_string())?;
    let n = h.dim();
    for (fi, face) in pi.faces().iter().enumerate() {
        let u = pi.sample(face);
        let (_, arg) = legendre_value(h, &u);
        let mut want = face.points.clone();
        want.sort_unstable();
        if arg != want {
            return Err(format!("face {fi}: argmax {arg:?} vs dual cell {want:?}"));
        }
    }
    let mut probes: Vec<RationalVector> = (0..1000).map(|_| random_rational(rng, n)).collect();
    probes.extend(pi.faces().iter().map(|f| pi.sample(f)));
    for u in &probes {
        let (_, arg) = legendre_value(h, u);
        let interiors = pi.components().iter().filter(|c| c.contains_strictly(u)).count();
        if (arg.len() == 1) != (interiors == 1) {
            return Err(format!("{:?}: argmax {arg:?}, in {interiors} component interiors", u.to_strings()));
        }
        if (arg.len() >= 2) != pi.contains(u) {
            return Err(format!("{:?}: argmax {arg:?} but membership {}", u.to_strings(), pi.contains(u)));
        }
    }
    for _ in 0..1000 {
        let (u, v) = (random_rational(rng, n), random_rational(rng, n));
        let (lm, _) = legendre_value(h, &midpoint(&u, &v));
        let (lu, _) = legendre_value(h, &u);
        let (lv, _) = legendre_value(h, &v);
        if lm * BigRational::from_integer(2.into()) > lu + lv {
            return Err(format!("convexity fails at {:?}, {:?}", u.to_strings(), v.to_strings()));
        }
    }
    Ok(())
}

fn random_height(rng: &mut ChaCha8Rng) -> HeightFunction {
    loop {
        let size = rng.gen_range(5..=8);
        let mut pts = BTreeSet::new();
        while pts.len() < size {
            pts.insert((rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64)));
        }
        let support = pts.iter().map(|&(a, b)| LatticeVector::from_i64(&[a, b])).collect();
        let heights = (0..size).map(|_| BigRational::from_integer(rng.gen_range(-5..=5).into())).collect();
        if let Ok(h) = HeightFunction::new(support, heights) {
            return h;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for v in varieties() {
        let h = HeightFunction::from_bundle(&v.fan, &v.phi).map_err(|e| e.to_string())?;
        tropical_invariants(&h, &mut rng).map_err(|e| format!("{}: {e}", v.name))?;
    }
    let mut triangulations = 0;
    for k in 0..20 {
        let h = random_height(&mut rng);
        tropical_invariants(&h, &mut rng).map_err(|e| format!("random height {k}: {e}"))?;
        if regular_subdivision(&h).map_err(|e| e.to_string())?.is_triangulation() {
            triangulations += 1;
        }
    }
    Ok(format!("4 varieties and 20 random heights ({triangulations} triangulations)"))
}

fn p2_family(log_t: f64, s: f64) -> PatchworkFamily {
    let fan = standard::projective_plane();
    let phi = SupportFunction::constant(&fan, 1);
    PatchworkFamily::from_bundle(&fan, &phi, log_t, s, 0.1).unwrap()
}

fn p2_scale() -> (tropmirror::TropicalComplex, tropmirror::TropicalConstants, f64) {
    let fan = standard::projective_plane();
    let h = HeightFunction::from_bundle(&fan, &SupportFunction::constant(&fan, 1)).unwrap();
    let pi = tropical_complex(&h).unwrap();
    let k = tropical_constants(&pi).unwrap();
    let log_t = choose_scale(&k, 0.1).unwrap().log_t;
    (pi, k, log_t)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (pi, _, _) = p2_scale();
    let window = Window::square(3.0, 2);
    let grid = SampleGrid::new(window.clone(), 200, 64);
    let mut dists = Vec::new();
    for log_t in [2.0, 4.0, 8.0] {
        let sample = amoeba_sample_curve(&p2_family(log_t, 0.0), &grid).map_err(|e| e.to_string())?;
        dists.push(hausdorff_distance(&sample.rescaled(log_t), &pi, &window).map_err(|e| e.to_string())?);
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "e^2 {:.4}, e^4 {:.4}, e^8 {:.4} in {:.1}s",
        dists[0],
        dists[1],
        dists[2],
        elapsed.as_secs_f64()
    );
    if dists[0] > dists[1] && dists[1] > dists[2] && dists[2] < 0.15 && elapsed < Duration::from_secs(60) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_8() -> Outcome {
    let (_, _, log_t) = p2_scale();
    let grid = SampleGrid::new(Window::square(3.0, 2), 60, 8);
    let mut notes = Vec::new();
    for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let f = p2_family(log_t, s);
        let sample = amoeba_sample_curve(&f, &grid).map_err(|e| e.to_string())?;
        let mut min = f64::INFINITY;
        for p in &sample.points {
            let m = symplectic_margin(&f, &p.log_point()).map_err(|e| format!("s={s}: {e}"))?;
            if !(m.margin > 0.0) {
                return Err(format!("s={s}: margin {} at {:?}", m.margin, p.u));
            }
            min = min.min(m.margin);
        }
        if sample.points.len() < 500 {
            return Err(format!("s={s}: only {} witnesses", sample.points.len()));
        }
        notes.push(format!("s={s} {} witnesses min {min:.3}", sample.points.len()));
    }
    let profile = CutoffProfile::new(0.1, log_t).map_err(|e| e.to_string())?;
    let bound = 3.0 / (0.1 * log_t);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let d = rng.gen_range(-0.1..1.5) * 0.1 * log_t;
        let (_, dv) = cutoff(d, &profile);
        worst = worst.max(dv.abs());
    }
    if worst > bound * (1.0 + 1e-12) {
        return Err(format!("cutoff derivative {worst} exceeds {bound}"));
    }
    notes.push(format!("max cutoff slope {:.6} of {:.6}", worst, bound));
    Ok(format!("log t {log_t:.2}: {}", notes.join(", ")))
}

fn criterion_9() -> Outcome {
    let (pi, k, chosen) = p2_scale();
    let window = Window::square(3.0, 2);
    let grid = SampleGrid::new(window.clone(), 200, 64);
    let mut sampled = 0;
    for log_t in [8.0, chosen] {
        for s in [0.0, 1.0] {
            let f = p2_family(log_t, s);
            let sample = amoeba_sample_curve(&f, &grid).map_err(|e| e.to_string())?;
            sampled += sample.points.len();
            if let Some(p) = sample.points.iter().find(|p| lopsided_certificate(&f, &p.u).is_some()) {
                return Err(format!("log t {log_t}, s {s}: sampled zero {:?} certified off the amoeba", p.u));
            }
        }
    }
    // Far from log t * Pi every grid point must be certified.
    let f = p2_family(chosen, 1.0);
    let facets = pi.facet_polyhedra();
    let mut far = 0;
    for i in 0..=60 {
        for j in 0..=60 {
            let x = [-3.0 + 0.1 * i as f64, -3.0 + 0.1 * j as f64];
            if pi.distance(&facets, &x) * chosen >= 0.1 * chosen {
                far += 1;
                let u: Vec<f64> = x.iter().map(|c| c * chosen).collect();
                if lopsided_certificate(&f, &u).is_none() {
                    return Err(format!("{x:?} is far from Pi but not certified"));
                }
            }
        }
    }
    let decay = exponential_decay_check(&p2_family(8.0, 0.0), &k, &window, 1000, 9);
    if decay.violations != 0 || decay.checked == 0 {
        return Err(format!("decay at e^8: {decay:?}"));
    }
    Ok(format!(
        "{sampled} sampled zeros uncertified, {far} far grid points certified, decay 0/{} violations",
        decay.checked
    ))
}

fn random_laurent(rng: &mut ChaCha8Rng, n: usize) -> LaurentPolynomial {
    let terms = rng.gen_range(3..=6);
    let mut exps = BTreeSet::new();
    while exps.len() < terms {
        exps.insert((0..n).map(|_| rng.gen_range(-3..=3i64)).collect::<Vec<_>>());
    }
    let terms = exps
        .into_iter()
        .map(|e| {
            let c = Complex64::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
            (LatticeVector::from_i64(&e), c)
        })
        .collect();
    LaurentPolynomial::new(n, terms).unwrap()
}

/// `sum_a c_a a_j z^(a - e_j)`, evaluated term by term.
fn gradient(f: &LaurentPolynomial, z: &[Complex64]) -> Vec<Complex64> {
    let mut g = vec![Complex64::zero(); z.len()];
    for (e, c) in f.terms() {
        let e = e.to_i64();
        let mono: Complex64 = e.iter().zip(z).map(|(&k, zk)| zk.powi(k as i32)).product();
        for j in 0..z.len() {
            g[j] += c * e[j] as f64 * mono / z[j];
        }
    }
    g
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut worst_push, mut worst_omega): (f64, f64) = (0.0, 0.0);
    let mut points = 0;
    for k in 0..5 {
        let n = 2 + k % 2;
        let f = random_laurent(&mut rng, n);
        for _ in 0..100 {
            let z: Vec<Complex64> = (0..n)
                .map(|_| Complex64::from_polar(rng.gen_range(-1.0f64..1.0).exp(), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let v = horizontal_lift(&f, &z, a).map_err(|e| e.to_string())?;
            let g = gradient(&f, &z);
            let push: Complex64 = g.iter().zip(&v.components).map(|(x, y)| x * y).sum();
            let scale = g.iter().zip(&v.components).map(|(x, y)| x.norm() * y.norm()).sum::<f64>().max(a.norm());
            worst_push = worst_push.max((push - a).norm() / scale);
            worst_push = worst_push.max((pushforward(&f, &v) - a).norm() / scale);
            // df as a real 2 x 2n matrix on (Re v_1, Im v_1, ...).
            let mut m = DMatrix::<f64>::zeros(2, 2 * n);
            for j in 0..n {
                m[(0, 2 * j)] = g[j].re;
                m[(0, 2 * j + 1)] = -g[j].im;
                m[(1, 2 * j)] = g[j].im;
                m[(1, 2 * j + 1)] = g[j].re;
            }
            // Eigenvectors of df^T df with the 2n - 2 smallest eigenvalues span ker df.
            let full = (m.transpose() * m.clone()).symmetric_eigen();
            let mut order: Vec<usize> = (0..2 * n).collect();
            order.sort_by(|&i, &j| full.eigenvalues[i].total_cmp(&full.eigenvalues[j]));
            let vnorm = v.norm();
            for &c in order.iter().take(2 * n - 2) {
                let col = full.eigenvectors.column(c);
                let kvec: Vec<Complex64> = (0..n).map(|j| Complex64::new(col[2 * j], col[2 * j + 1])).collect();
                let dk: Complex64 = g.iter().zip(&kvec).map(|(x, y)| x * y).sum();
                let gnorm = g.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                if dk.norm() > 1e-9 * gnorm {
                    return Err(format!("null space oracle failed: |df(k)| = {}", dk.norm()));
                }
                // omega(v, k) = -Im sum v_j conj(k_j) / |z_j|^2
                let h: Complex64 = v
                    .components
                    .iter()
                    .zip(&kvec)
                    .zip(&z)
                    .map(|((x, y), zj)| x * y.conj() / zj.norm_sqr())
                    .sum();
                let knorm: f64 = kvec.iter().zip(&z).map(|(y, zj)| y.norm_sqr() / zj.norm_sqr()).sum::<f64>().sqrt();
                worst_omega = worst_omega.max(h.im.abs() / (vnorm * knorm));
            }
            points += 1;
        }
    }
    let detail = format!("{points} points, pushforward {worst_push:.1e}, omega {worst_omega:.1e}");
    if worst_push < 1e-8 && worst_omega < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("verify exits 0 on the four test varieties", criterion_1),
        ("dimension law, two enumeration paths", criterion_2),
        ("dual dimensions, interior counts, reciprocity", criterion_3),
        ("algebra axioms", criterion_4),
        ("triangle conditions on random triples", criterion_5),
        ("tropical invariants", criterion_6),
        ("amoeba Hausdorff convergence", criterion_7),
        ("symplectic margins and cutoff slope", criterion_8),
        ("lopsided certificates and decay", criterion_9),
        ("horizontal lift", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {}: PASS {name} ({d}) [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({d}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

