//! Exit gate: one PASS/FAIL line per acceptance criterion.
//!
//! Every criterion is exact (zero tolerance). Runtime ceilings are wall-clock
//! seconds for the criterion as a whole.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nucalab::analysis::{
    construct_inverse, cross_validate, find_left_inverse, find_right_inverse, injectivity_verdict,
    postsurjectivity_verdict, preinjectivity_verdict, verify_verdict, AnchorOutcome, Anchors, Certificate,
    InverseSide, Property, SearchBounds, Status, Subject,
};
use nucalab::cell::{cube, inflate, interval, Universe};
use nucalab::duality::{check_adjointness, check_functoriality, check_involution};
use nucalab::repro::{self, ClaimOutcome, ReproStatus};
use nucalab::sample::{self, RuleShape};
use nucalab::shadowing::{
    box_points, check_shift_invariance, column_factor, delta_for, generate_pseudo_orbit, shadow_point, Dyadic,
    Generators, Perturbation,
};
use nucalab::{examples, Cell, EvPerConfig, Error, RuleConfig};
use rand::Rng;

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{detail}; {:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("{detail}; took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn golden_suite() -> Outcome {
    let start = Instant::now();
    let bounds = SearchBounds::default();
    require(
        (bounds.n_max, bounds.mem_bound, bounds.support_bound) == (8, 3, 4),
        "default bounds changed",
    )?;
    let s = examples::ex_s0();
    let d = s.dual();
    let r = repro::run(&s, &bounds, sample::DEFAULT_SEED).map_err(|e| e.to_string())?;
    let claim = |sub, p| r.claim(sub, p).expect("listed claim");

    let surj = claim(Subject::Rule, Property::Surjective);
    require(
        r.check("every window map is onto") == Some(true) && surj.outcome == ClaimOutcome::Confirmed,
        "surjectivity not window-full and cross-validated",
    )?;
    let inj = claim(Subject::Rule, Property::Injective);
    let cells: BTreeSet<i64> = inj
        .verdict
        .anchors
        .iter()
        .filter(|a| matches!(a.outcome, AnchorOutcome::NoKernelThrough { .. }))
        .map(|a| a.cell.x())
        .collect();
    require(
        inj.outcome.accepted() && cells == (-4..=4).collect(),
        "injectivity not backed at every anchor of [-4, 4]",
    )?;
    require(
        claim(Subject::Rule, Property::PreInjective).verdict.status == Status::Holds,
        "pre-injectivity not Holds",
    )?;
    let post = claim(Subject::Rule, Property::PostSurjective);
    require(
        post.verdict.status == Status::Fails && matches!(post.verdict.certificate, Certificate::DualTransfer { .. }),
        "post-surjectivity not refuted by a DualTransfer certificate",
    )?;
    require(
        claim(Subject::Rule, Property::StableInjective).verdict.status == Status::Fails,
        "stable injectivity not Fails",
    )?;
    let c = examples::kernel_witness_c();
    require(
        !c.is_zero() && d.apply_evper(&c).map_err(|e| e.to_string())?.is_zero(),
        "dual does not kill c",
    )?;
    require(
        claim(Subject::Dual, Property::PreInjective).verdict.status == Status::Holds,
        "dual pre-injectivity not Holds",
    )?;
    let dpost = claim(Subject::Dual, Property::PostSurjective);
    let backed: BTreeSet<i64> = dpost
        .verdict
        .anchors
        .iter()
        .filter(|a| matches!(a.outcome, AnchorOutcome::Preimage { .. }))
        .map(|a| a.cell.x())
        .collect();
    require(
        dpost.outcome.accepted() && backed == (-4..=4).collect(),
        "dual post-surjectivity anchors not all witness-backed",
    )?;
    require(verify_verdict(&d, &dpost.verdict).is_ok(), "dual preimages fail re-verification")?;
    require(
        claim(Subject::Dual, Property::Injective).verdict.status == Status::Fails,
        "dual injectivity not Fails",
    )?;
    require(r.status == ReproStatus::AllConfirmed, "suite did not confirm all nine claims")?;
    within(start, Duration::from_secs(10), "9/9 claims, all structural checks".into())
}

fn structural_identities() -> Outcome {
    let start = Instant::now();
    let mut rng = sample::rng(sample::DEFAULT_SEED);
    let mut failures = Vec::new();
    let n = 500;
    for i in 0..n {
        let p = [2, 3, 5][rng.gen_range(0..3)];
        let k = rng.gen_range(1..=2);
        let u = Universe::new(1, k, p).unwrap();
        let shape = RuleShape::new(u);
        let s = sample::random_rule(&mut rng, &shape);
        let t = sample::random_rule(&mut rng, &shape);
        let omega = sample::random_finsupp(&mut rng, &u, &interval(-5, 5));
        let c = sample::random_finsupp(&mut rng, &u, &interval(-5, 5));
        if !check_involution(&s) {
            failures.push(format!("involution #{i}"));
        }
        if !check_functoriality(&s, &t).map_err(|e| e.to_string())? {
            failures.push(format!("functoriality #{i}"));
        }
        if !check_adjointness(&s, &omega, &c) {
            failures.push(format!("adjointness #{i}"));
        }
    }
    require(failures.is_empty(), format!("{} failures, first {:?}", failures.len(), failures.first()))?;
    within(start, Duration::from_secs(30), format!("{n} instances x 3 identities"))
}

fn duality_coherence() -> Outcome {
    let mut rng = sample::rng(sample::DEFAULT_SEED ^ 3);
    let u = Universe::new(1, 1, 2).unwrap();
    let shape = RuleShape::new(u).with_tails(0.5);
    let bounds = SearchBounds::with_n_max(6);
    let mut definitive = 0;
    for i in 0..50 {
        let s = sample::random_rule(&mut rng, &shape);
        match cross_validate(&s, &bounds) {
            Ok(r) => {
                definitive += r
                    .rule
                    .iter()
                    .chain(&r.dual)
                    .filter(|v| v.status.is_definitive())
                    .count();
            }
            Err(Error::Contradiction(m)) => return Err(format!("config #{i}: {m}")),
            Err(e) => return Err(format!("config #{i}: {e}")),
        }
    }
    Ok(format!("50 configs, no contradictions, {definitive} definitive statuses"))
}

fn brute_force_oracle() -> Outcome {
    let mut rng = sample::rng(sample::DEFAULT_SEED ^ 4);
    let u = Universe::new(1, 1, 2).unwrap();
    let shape = RuleShape::new(u).with_tails(0.3);
    let f = u.field();
    for i in 0..100 {
        let s = sample::random_rule(&mut rng, &shape);
        let lo = rng.gen_range(-4..=3);
        let len = rng.gen_range(1..=4);
        let window: Vec<Cell> = interval(lo, lo + len - 1);
        let domain = inflate(&window, s.memory());
        let map = s.induced_map(&window).map_err(|e| e.to_string())?;
        require(map.domain_cells == domain, format!("#{i}: domain cells differ"))?;

        let mut image = BTreeSet::new();
        let mut kernel = BTreeSet::new();
        for bits in 0u64..(1 << domain.len()) {
            let pattern: BTreeMap<Cell, Vec<u32>> = domain
                .iter()
                .enumerate()
                .map(|(j, &c)| (c, vec![((bits >> j) & 1) as u32]))
                .collect();
            let y: Vec<u32> = window
                .iter()
                .map(|&g| s.evaluate_cell(&pattern, g).map(|v| v[0]))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if y.iter().all(|&b| b == 0) {
                kernel.insert(bits);
            }
            image.insert(y);
        }

        let rank = map.rank();
        require(image.len() == 1 << rank, format!("#{i}: image size {} vs rank {rank}", image.len()))?;
        for bits in 0u64..(1 << window.len()) {
            let y: Vec<u32> = (0..window.len()).map(|j| ((bits >> j) & 1) as u32).collect();
            let solvable = map.matrix.solve_affine(&y).map_err(|e| e.to_string())?.is_consistent();
            require(solvable == image.contains(&y), format!("#{i}: membership of {y:?} differs"))?;
        }
        let basis = map.matrix.kernel_basis();
        let mut span = BTreeSet::new();
        for mask in 0u64..(1 << basis.len()) {
            let mut v = vec![0u32; domain.len()];
            for (j, b) in basis.iter().enumerate() {
                if (mask >> j) & 1 == 1 {
                    v = f.add_vec(&v, b);
                }
            }
            span.insert(v.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j)));
        }
        require(span == kernel, format!("#{i}: kernel differs"))?;
    }
    Ok("100 configs, image and kernel identical".into())
}

struct Known {
    name: &'static str,
    rule: RuleConfig,
    inverse: RuleConfig,
}

fn known_inverses() -> Vec<Known> {
    let gf2 = Universe::new(1, 1, 2).unwrap();
    vec![
        Known {
            name: "shift",
            rule: examples::shift_rule(),
            inverse: RuleConfig::shift(gf2, Cell::d1(1)).unwrap(),
        },
        Known {
            name: "gf3-diagonal",
            rule: examples::gf3_diagonal(),
            inverse: examples::gf3_diagonal(),
        },
    ]
}

fn inverse_machinery() -> Outcome {
    let b = SearchBounds::default();
    for k in known_inverses() {
        let left = find_left_inverse(&k.rule, b.mem_bound, b.support_bound).map_err(|e| e.to_string())?;
        let right = find_right_inverse(&k.rule, b.mem_bound, b.support_bound).map_err(|e| e.to_string())?;
        let built = construct_inverse(&k.rule, b.pattern_radius).map_err(|e| e.to_string())?.inverse;
        for (what, t) in [("left", left), ("right", right), ("constructed", built)] {
            let t = t.ok_or(format!("{}: no {what} inverse", k.name))?;
            require(t.same_map(&k.inverse), format!("{}: {what} inverse differs", k.name))?;
            require(
                t.agrees_on_window(&k.inverse, 6),
                format!("{}: {what} inverse differs on the radius-6 window", k.name),
            )?;
        }
    }
    let s = examples::ex_s0();
    for mb in 0..=4 {
        for sb in 0..=4 {
            let l = find_left_inverse(&s, mb, sb).map_err(|e| e.to_string())?;
            let r = find_right_inverse(&s, mb, sb).map_err(|e| e.to_string())?;
            require(l.is_none() && r.is_none(), format!("counterexample inverse at bounds ({mb}, {sb})"))?;
        }
    }
    for e in 0..=4 {
        let c = construct_inverse(&s, e).map_err(|e| e.to_string())?;
        require(c.inverse.is_none(), format!("counterexample constructed inverse at radius {e}"))?;
    }
    Ok("shift and GF(3) diagonal recovered three ways; counterexample absent at bounds <= 4".into())
}

fn inverse_upgrades() -> Outcome {
    let b = SearchBounds::default();
    let mut upgrades = 0;
    for k in known_inverses() {
        let anchors = Anchors::default_for(&k.rule);
        if find_right_inverse(&k.rule, b.mem_bound, b.support_bound)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            let v = postsurjectivity_verdict(&k.rule, &anchors, &b).map_err(|e| e.to_string())?;
            require(
                v.status == Status::Holds
                    && matches!(v.certificate, Certificate::InverseRule { side: InverseSide::Right | InverseSide::TwoSided, .. }),
                format!("{}: post-surjectivity not upgraded via InverseRule", k.name),
            )?;
            require(verify_verdict(&k.rule, &v).is_ok(), format!("{}: certificate rejected", k.name))?;
            upgrades += 1;
        }
        if find_left_inverse(&k.rule, b.mem_bound, b.support_bound)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            let inj = injectivity_verdict(&k.rule, &anchors, &b).map_err(|e| e.to_string())?;
            let pre = preinjectivity_verdict(&k.rule, &b).map_err(|e| e.to_string())?;
            for v in [&inj, &pre] {
                require(v.status == Status::Holds, format!("{}: {} not upgraded", k.name, v.property))?;
                require(verify_verdict(&k.rule, v).is_ok(), format!("{}: certificate rejected", k.name))?;
            }
            upgrades += 2;
        }
    }
    Ok(format!("{upgrades} verdicts upgraded to Holds"))
}

fn shadowing() -> Outcome {
    let start = Instant::now();
    let eps = Dyadic(2);
    for (name, rule) in [
        ("identity", examples::identity_rule()),
        ("shift", examples::shift_rule()),
        ("xor-tail", examples::xor_rule()),
        ("counterexample", examples::ex_s0()),
    ] {
        let g = Generators::single(rule).map_err(|e| e.to_string())?;
        let delta = delta_for(&g, eps, 3);
        for seed in 0..10u64 {
            let mut rng = sample::rng(seed);
            let x0 = EvPerConfig::from_finsupp(&sample::random_finsupp(&mut rng, g.universe(), &cube(1, 4)), 1);
            let orbit = generate_pseudo_orbit(&g, &x0, delta, 10, Perturbation::Random { seed })
                .map_err(|e| e.to_string())?;
            orbit.validate(&g).map_err(|e| format!("{name} seed {seed}: {e}"))?;
            let rep = shadow_point(&g, &orbit, eps, 3).map_err(|e| e.to_string())?;
            require(rep.success(), format!("{name} seed {seed}: no shadow point"))?;
            require(
                rep.distances.iter().all(|(_, d)| d.below(eps.0)),
                format!("{name} seed {seed}: distance not below 1/4"),
            )?;
        }
    }
    within(start, Duration::from_secs(10), "40 pseudo-orbits shadowed, all distances < 1/4".into())
}

fn column_factors() -> Outcome {
    let omega = box_points(1, 3);
    let e = [Cell::d1(0)];
    let mut dims = Vec::new();
    for (rule, want) in [
        (examples::identity_rule(), 1),
        (examples::shift_rule(), 4),
        (examples::xor_rule(), 4),
    ] {
        let g = Generators::single(rule).map_err(|e| e.to_string())?;
        let cf = column_factor(&g, &e, &omega).map_err(|e| e.to_string())?;
        require(cf.dimension() == want, format!("dimension {} instead of {want}", cf.dimension()))?;
        let inv = check_shift_invariance(&g, &e, 3).map_err(|e| e.to_string())?;
        require(inv.violations == 0, format!("{} shift-invariance violations", inv.violations))?;
        dims.push(cf.dimension());
    }
    Ok(format!("dimensions {dims:?}, no shift-invariance violations"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("counterexample golden suite", golden_suite),
        ("structural identities on 500 random instances", structural_identities),
        ("duality coherence on 50 random configs", duality_coherence),
        ("brute-force oracle on 100 window maps", brute_force_oracle),
        ("inverse machinery", inverse_machinery),
        ("inverse-backed upgrades", inverse_upgrades),
        ("shadowing at desk scale", shadowing),
        ("column factors", column_factors),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
