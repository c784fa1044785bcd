use serde::Serialize;

use tropmirror::amoeba::{
    amoeba_sample_curve, exponential_decay_check, lopsided_certificate, symplectic_margin, DecayReport,
    PatchworkFamily, SampleGrid,
};
use tropmirror::coordring::{hilbert_table, section_ring, serre_check, verify_isomorphism};
use tropmirror::floer::{assemble_algebra, check_axioms, verify_dual_products};
use tropmirror::lattice::{polytope_from_bundle, Convexity};
use tropmirror::tropical::{
    choose_scale, hausdorff_distance, regular_subdivision, tropical_complex, tropical_constants, ComplexJson,
};
use tropmirror::{Fan, HeightFunction, Polytope, SupportFunction, TropicalConstants};

use crate::config::{Failure, JobConfig};
use crate::output::{ensure_dir, histogram, write_csv, write_json, write_text, HistogramBin};
use crate::svg;

/// Fan, support function, convexity and `Q`. Non-convex `phi` and
/// incomplete fans exit with 2.
fn load(cfg: &JobConfig) -> Result<(Fan, SupportFunction, Convexity, Polytope), Failure> {
    let (fan, phi) = cfg.spec.clone().parse()?;
    let convexity = phi.convexity(&fan)?;
    let q = polytope_from_bundle(&fan, &phi)?;
    Ok((fan, phi, convexity, q))
}

fn convexity_name(c: Convexity) -> &'static str {
    match c {
        Convexity::Strict => "strict",
        Convexity::Weak => "weak",
    }
}

#[derive(Serialize)]
struct SubdivisionOut {
    convexity: &'static str,
    triangulation: bool,
    maximal: bool,
    height: tropmirror::tropical::height::HeightJson,
    subdivision: tropmirror::tropical::subdivision::SubdivisionJson,
}

pub fn subdivide(cfg: &JobConfig) -> Result<(), Failure> {
    let (fan, phi, convexity, _) = load(cfg)?;
    let h = HeightFunction::from_bundle(&fan, &phi)?;
    let sub = regular_subdivision(&h)?;
    ensure_dir(&cfg.out)?;
    write_json(
        &cfg.out,
        "subdivision.json",
        &SubdivisionOut {
            convexity: convexity_name(convexity),
            triangulation: sub.is_triangulation(),
            maximal: sub.is_maximal(),
            height: h.to_json(),
            subdivision: sub.to_json(&h),
        },
    )?;
    println!(
        "{} cells, triangulation: {}, maximal: {}",
        sub.cells().len(),
        sub.is_triangulation(),
        sub.is_maximal()
    );
    Ok(())
}

#[derive(Serialize)]
struct ConstantsOut {
    constants: TropicalConstants,
    eps: f64,
    log_t_min: f64,
}

pub fn tropical(cfg: &JobConfig) -> Result<(), Failure> {
    let (fan, phi, _, _) = load(cfg)?;
    let h = HeightFunction::from_bundle(&fan, &phi)?;
    let pi = tropical_complex(&h)?;
    ensure_dir(&cfg.out)?;
    let json: ComplexJson = pi.to_json();
    write_json(&cfg.out, "tropical.json", &json)?;
    match tropical_constants(&pi) {
        Ok(k) => {
            let scale = choose_scale(&k, cfg.eps)?;
            println!(
                "N = {}, rho = {}, c_est = {}, log t_min = {}",
                k.n, k.rho, k.c_est, scale.log_t
            );
            write_json(
                &cfg.out,
                "constants.json",
                &ConstantsOut {
                    constants: k,
                    eps: cfg.eps,
                    log_t_min: scale.log_t,
                },
            )?;
        }
        Err(e) => log::warn!("no localization constants: {e}"),
    }
    println!("{} faces, {} vertices", pi.faces().len(), pi.vertices().len());
    Ok(())
}

#[derive(Serialize)]
struct CloudRow {
    u1: f64,
    u2: f64,
    residual: f64,
    t: f64,
    s: f64,
    log_t: f64,
}

#[derive(Serialize)]
struct Witness {
    u: Vec<f64>,
    theta: Vec<f64>,
    residual: f64,
    axis: usize,
}

#[derive(Serialize)]
struct CloudOut {
    log_t: f64,
    s: f64,
    eps: f64,
    fibers: usize,
    degenerate_fibers: usize,
    failed_paths: usize,
    /// Rescaled points `u / log t`.
    points: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct HausdorffOut {
    log_t: f64,
    window: Vec<f64>,
    points: usize,
    distance: f64,
}

#[derive(Serialize)]
struct MarginSummary {
    witnesses: usize,
    positive: usize,
    off_locus: usize,
    min: f64,
    max: f64,
}

#[derive(Serialize)]
struct AmoebaOut {
    log_t: f64,
    s: f64,
    eps: f64,
    grid: [usize; 2],
    points: usize,
    failed_paths: usize,
    degenerate_fibers: usize,
    hausdorff: f64,
    lopsided_contradictions: usize,
    margins: MarginSummary,
    decay: Option<DecayReport>,
}

pub fn amoeba(cfg: &JobConfig) -> Result<(), Failure> {
    let (fan, phi, _, _) = load(cfg)?;
    if fan.dim() != 2 {
        return Err(Failure::Dimension(format!(
            "amoeba sampling needs a two-dimensional fan, got dimension {}",
            fan.dim()
        )));
    }
    if cfg.window.dim() != 2 {
        return Err(Failure::Input("--window needs four values x0,x1,y0,y1".into()));
    }
    let h = HeightFunction::from_bundle(&fan, &phi)?;
    let pi = tropical_complex(&h)?;
    let constants = tropical_constants(&pi).ok();
    let log_t = match (cfg.log_t, &constants) {
        (Some(l), _) => l,
        (None, Some(k)) => choose_scale(k, cfg.eps)?.log_t,
        (None, None) => {
            return Err(Failure::Domain(
                "subdivision is not a triangulation; pass --t explicitly".into(),
            ))
        }
    };
    let family = PatchworkFamily::from_bundle(&fan, &phi, log_t, cfg.s, cfg.eps)?;
    let grid = SampleGrid::new(cfg.window.clone(), cfg.grid, cfg.args);
    let sample = amoeba_sample_curve(&family, &grid)?;
    let cloud = sample.rescaled(log_t);
    let hausdorff = hausdorff_distance(&cloud, &pi, &cfg.window)?;

    let mut margins = Vec::with_capacity(sample.points.len());
    let mut off_locus = 0;
    for p in &sample.points {
        match symplectic_margin(&family, &p.log_point()) {
            Ok(m) => margins.push(m.margin),
            Err(_) => off_locus += 1,
        }
    }
    let contradictions = sample
        .points
        .iter()
        .filter(|p| lopsided_certificate(&family, &p.u).is_some())
        .count();
    let decay = constants
        .as_ref()
        .map(|k| exponential_decay_check(&family, k, &cfg.window, 1000, cfg.seed));

    ensure_dir(&cfg.out)?;
    let t = log_t.exp();
    let rows: Vec<CloudRow> = sample
        .points
        .iter()
        .map(|p| CloudRow {
            u1: p.u[0],
            u2: p.u[1],
            residual: p.residual,
            t,
            s: cfg.s,
            log_t,
        })
        .collect();
    write_csv(&cfg.out, "cloud.csv", &rows)?;
    write_json(
        &cfg.out,
        "cloud.json",
        &CloudOut {
            log_t,
            s: cfg.s,
            eps: cfg.eps,
            fibers: sample.fibers,
            degenerate_fibers: sample.degenerate_fibers,
            failed_paths: sample.failed_paths,
            points: cloud.clone(),
        },
    )?;
    let witnesses: Vec<Witness> = sample
        .points
        .iter()
        .map(|p| Witness {
            u: p.u.clone(),
            theta: p.theta.clone(),
            residual: p.residual,
            axis: p.axis,
        })
        .collect();
    write_json(&cfg.out, "witnesses.json", &witnesses)?;
    write_json(
        &cfg.out,
        "hausdorff.json",
        &HausdorffOut {
            log_t,
            window: cfg.window.lo.iter().zip(&cfg.window.hi).flat_map(|(a, b)| [*a, *b]).collect(),
            points: cloud.len(),
            distance: hausdorff,
        },
    )?;
    let bins: Vec<HistogramBin> = histogram(&margins, 20);
    write_csv(&cfg.out, "margins.csv", &bins)?;
    let summary = MarginSummary {
        witnesses: sample.points.len(),
        positive: margins.iter().filter(|&&m| m > 0.0).count(),
        off_locus,
        min: margins.iter().copied().fold(f64::INFINITY, f64::min),
        max: margins.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    };
    println!(
        "{} points, Hausdorff {hausdorff:.4}, margins positive {}/{}, lopsided contradictions {contradictions}",
        cloud.len(),
        summary.positive,
        summary.witnesses
    );
    write_json(
        &cfg.out,
        "amoeba.json",
        &AmoebaOut {
            log_t,
            s: cfg.s,
            eps: cfg.eps,
            grid: [cfg.grid, cfg.args],
            points: cloud.len(),
            failed_paths: sample.failed_paths,
            degenerate_fibers: sample.degenerate_fibers,
            hausdorff,
            lopsided_contradictions: contradictions,
            margins: summary,
            decay,
        },
    )?;
    write_text(&cfg.out, "amoeba.svg", &svg::overlay(&pi, &cloud, &cfg.window))?;
    Ok(())
}

#[derive(Serialize)]
struct VerifyOut {
    verdict: &'static str,
    max_twist: usize,
    dims: Vec<usize>,
    isomorphism: &'static str,
    serre: &'static str,
    axioms: tropmirror::floer::AxiomReport,
    dual_products: tropmirror::floer::DualReport,
}

pub fn verify(cfg: &JobConfig) -> Result<(), Failure> {
    let (_, _, _, q) = load(cfg)?;
    let alg = assemble_algebra(&q, cfg.j)?;
    let ring = section_ring(&q, cfg.j);
    let iso = verify_isomorphism(&alg, &ring);
    let serre = serre_check(&q, cfg.j)?;
    let axioms = check_axioms(&alg)?;
    let dual = verify_dual_products(&q, cfg.j.min(4) as i64)?;
    ensure_dir(&cfg.out)?;
    write_json(&cfg.out, "tables.json", &alg.tables_json())?;
    write_json(&cfg.out, "bases.json", &alg.basis_manifests())?;
    write_json(&cfg.out, "isomorphism.json", &iso)?;
    write_json(&cfg.out, "serre.json", &serre)?;
    let ok = iso.success() && serre.success() && axioms.ok() && dual.mismatches == 0;
    let pass = |b: bool| if b { "pass" } else { "fail" };
    write_json(
        &cfg.out,
        "verify.json",
        &VerifyOut {
            verdict: pass(ok),
            max_twist: cfg.j,
            dims: alg.dims(),
            isomorphism: pass(iso.success()),
            serre: pass(serre.success()),
            axioms: axioms.clone(),
            dual_products: dual.clone(),
        },
    )?;
    println!("dimensions {:?}", alg.dims());
    println!(
        "isomorphism: {} ({} products checked, {} mismatches)",
        iso.verdict,
        iso.products_checked,
        iso.mismatches.len()
    );
    println!("serre: {}", serre.verdict);
    println!(
        "axioms: {} ({} associativity triples)",
        pass(axioms.ok()),
        axioms.associativity_checked
    );
    if !dual.unverified_cases.is_empty() {
        println!("mixed-sign products not covered by the transpose rule: {:?}", dual.unverified_cases);
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "verification failed: isomorphism {}, serre {}, axioms {}, dual mismatches {}",
            iso.verdict,
            serre.verdict,
            pass(axioms.ok()),
            dual.mismatches
        )))
    }
}

pub fn hilbert(cfg: &JobConfig) -> Result<(), Failure> {
    let (_, _, _, q) = load(cfg)?;
    let rows = hilbert_table(&q, cfg.j);
    ensure_dir(&cfg.out)?;
    write_csv(&cfg.out, "hilbert.csv", &rows)?;
    for r in &rows {
        println!("{} {} {}", r.j, r.count, r.interior);
    }
    Ok(())
}
