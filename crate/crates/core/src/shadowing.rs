//! Column factorizations, the standard metric on the line and constructive
//! shadowing of pseudo-orbits for abelian monoids of linear NUCA.
//!
//! The exhaustion is `E_n = [-n, n]` with `E_0 = {0}`, so configurations that
//! differ at the origin are at distance 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cell::{interval, Cell, Universe};
use crate::config::{EvPerConfig, FinSuppConfig};
use crate::error::{Error, Result};
use crate::eval::scatter;
use crate::linalg::{FieldMatrix, Vector};
use crate::rule::RuleConfig;
use crate::sample;

/// A distance of the standard metric: `0` or `2^-n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distance {
    Zero,
    /// `2^-n`.
    Pow2Neg(u32),
}

impl Distance {
    pub fn to_f64(self) -> f64 {
        match self {
            Distance::Zero => 0.0,
            Distance::Pow2Neg(n) => 0.5f64.powi(n as i32),
        }
    }

    /// Whether `self < 2^-e`.
    pub fn below(self, e: u32) -> bool {
        self < Distance::Pow2Neg(e)
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Zero, Distance::Zero) => Ordering::Equal,
            (Distance::Zero, _) => Ordering::Less,
            (_, Distance::Zero) => Ordering::Greater,
            (Distance::Pow2Neg(a), Distance::Pow2Neg(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Zero => write!(f, "0"),
            Distance::Pow2Neg(0) => write!(f, "1"),
            Distance::Pow2Neg(n) => write!(f, "2^-{n}"),
        }
    }
}

/// A dyadic `2^-e` given by its exponent. Parses `2^-e`, `1/2^e`, `1/m` with
/// `m` a power of two, `1`, and exact decimals like `0.25`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dyadic(pub u32);

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Contract(format!("{s:?} is not of the form 2^-e"));
        let t = s.trim().replace(' ', "");
        if let Some(e) = t.strip_prefix("2^-").or_else(|| t.strip_prefix("1/2^")) {
            return e.parse().map(Dyadic).map_err(|_| bad());
        }
        if t == "1" || t == "2^0" {
            return Ok(Dyadic(0));
        }
        let denom: u64 = if let Some(m) = t.strip_prefix("1/") {
            m.parse().map_err(|_| bad())?
        } else {
            let x: f64 = t.parse().map_err(|_| bad())?;
            if !(x > 0.0 && x <= 1.0) {
                return Err(bad());
            }
            let m = (1.0 / x).round();
            if (1.0 / m - x).abs() > 0.0 || m > (1u64 << 62) as f64 {
                return Err(bad());
            }
            m as u64
        };
        if denom == 0 || !denom.is_power_of_two() {
            return Err(bad());
        }
        Ok(Dyadic(denom.trailing_zeros()))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^-{}", self.0)
    }
}

/// `d(x, y) = 2^-n` with `n` the largest radius of agreement (`0` if they
/// already differ at the origin).
pub fn metric(x: &EvPerConfig, y: &EvPerConfig) -> Distance {
    match x.first_difference(y) {
        None => Distance::Zero,
        Some(c) => Distance::Pow2Neg((c.unsigned_abs() as u32).saturating_sub(1)),
    }
}

/// A commuting family `τ_1, ..., τ_r` of linear NUCA on the line.
#[derive(Debug, Clone)]
pub struct Generators {
    taus: Vec<RuleConfig>,
}

impl Generators {
    /// Checks commutation exactly, pairwise.
    pub fn new(taus: Vec<RuleConfig>) -> Result<Self> {
        let Some(first) = taus.first() else {
            return Err(Error::Contract("at least one generator is required".into()));
        };
        let u = *first.universe();
        u.require_line("shadowing")?;
        for t in &taus {
            if *t.universe() != u {
                return Err(Error::Contract("generators live over different universes".into()));
            }
        }
        for (i, a) in taus.iter().enumerate() {
            for b in &taus[i + 1..] {
                if !a.compose(b)?.same_map(&b.compose(a)?) {
                    return Err(Error::Contract("generators do not commute".into()));
                }
            }
        }
        Ok(Self { taus })
    }

    pub fn single(tau: RuleConfig) -> Result<Self> {
        Self::new(vec![tau])
    }

    /// `base^e` for each exponent; powers always commute.
    pub fn powers(base: &RuleConfig, exponents: &[u32]) -> Result<Self> {
        base.universe().require_line("shadowing")?;
        let taus = exponents
            .iter()
            .map(|&e| {
                let mut t = RuleConfig::identity(*base.universe());
                for _ in 0..e {
                    t = base.compose(&t)?;
                }
                Ok(t.normalize_memory())
            })
            .collect::<Result<Vec<_>>>()?;
        if taus.is_empty() {
            return Err(Error::Contract("at least one generator is required".into()));
        }
        Ok(Self { taus })
    }

    pub fn rank(&self) -> usize {
        self.taus.len()
    }

    pub fn get(&self, i: usize) -> &RuleConfig {
        &self.taus[i]
    }

    pub fn universe(&self) -> &Universe {
        self.taus[0].universe()
    }

    /// Largest memory radius `m` over the generators.
    pub fn memory_radius(&self) -> i64 {
        self.taus.iter().map(|t| t.memory().radius()).max().unwrap_or(0)
    }

    pub fn apply_evper(&self, alpha: &[usize], x: &EvPerConfig) -> Result<EvPerConfig> {
        let mut y = x.clone();
        for (t, &a) in self.taus.iter().zip(alpha) {
            for _ in 0..a {
                y = t.apply_evper(&y)?.canonical();
            }
        }
        Ok(y)
    }

    pub fn apply_finsupp(&self, alpha: &[usize], x: &FinSuppConfig) -> FinSuppConfig {
        let mut y = x.clone();
        for (t, &a) in self.taus.iter().zip(alpha) {
            for _ in 0..a {
                y = t.apply_finsupp(&y);
            }
        }
        y
    }

    /// `τ_α(x)` for every `α` of a box listed in lexicographic order, each
    /// obtained from its predecessor along the first nonzero coordinate.
    fn orbit_over<T: Clone>(
        &self,
        points: &[Vec<usize>],
        x: &T,
        step: impl Fn(&RuleConfig, &T) -> Result<T>,
    ) -> Result<Vec<T>> {
        let mut out: Vec<T> = Vec::with_capacity(points.len());
        for alpha in points {
            match primary_predecessor(alpha) {
                None => out.push(x.clone()),
                Some((i, prev)) => {
                    let j = points.iter().position(|b| *b == prev).expect("boxes are downward closed");
                    let y = step(&self.taus[i], &out[j])?;
                    out.push(y);
                }
            }
        }
        Ok(out)
    }
}

fn primary_predecessor(alpha: &[usize]) -> Option<(usize, Vec<usize>)> {
    let i = alpha.iter().position(|&a| a > 0)?;
    let mut prev = alpha.to_vec();
    prev[i] -= 1;
    Some((i, prev))
}

/// `{0..=side}^r` in lexicographic order.
pub fn box_points(r: usize, side: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=side).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// `C = 2^(m N r)`, returned as its exponent: every `τ_α` with all
/// `α_i ≤ N` is `C`-Lipschitz.
pub fn lipschitz_bound(generators: &Generators, n: u32) -> u32 {
    (generators.memory_radius() as u32) * n * generators.rank() as u32
}

/// `n_0 = min{n : 2^-n < ε}` for `ε = 2^-e`.
pub fn n0_for(epsilon: Dyadic) -> u32 {
    epsilon.0 + 1
}

/// Exponent `j` of the largest dyadic `δ = 2^-j ≤ 1 / (2^n0 C N r)`.
pub fn delta_for(generators: &Generators, epsilon: Dyadic, n: u32) -> Dyadic {
    let nr = n as u64 * generators.rank() as u64;
    let log = 64 - (nr.max(1) - 1).leading_zeros();
    Dyadic(n0_for(epsilon) + lipschitz_bound(generators, n) + log)
}

/// How `generate_pseudo_orbit` perturbs the exact orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Perturbation {
    None,
    /// Adds the first basis vector at `±(j + 2)`, alternating sides.
    Flip,
    /// Adds a random nonzero vector at a random cell with `|n| ∈ [j + 2, j + 4]`.
    Random { seed: u64 },
}

impl FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Perturbation::None),
            "flip" => Ok(Perturbation::Flip),
            _ => match s.strip_prefix("random:").or_else(|| s.strip_prefix("random=")) {
                Some(seed) => seed
                    .parse()
                    .map(|seed| Perturbation::Random { seed })
                    .map_err(|_| Error::Malformed(format!("bad perturbation seed {seed:?}"))),
                None if s == "random" => Ok(Perturbation::Random { seed: sample::DEFAULT_SEED }),
                None => Err(Error::Malformed(format!("unknown perturbation {s:?}"))),
            },
        }
    }
}

/// A finite `(S, d, δ)`-pseudo-orbit indexed by the box `{0..=horizon}^r`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudoOrbit {
    pub rank: usize,
    pub horizon: usize,
    pub delta: Dyadic,
    /// `(α, x_α)` in lexicographic order of `α`.
    pub points: Vec<(Vec<usize>, EvPerConfig)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepError {
    pub alpha: Vec<usize>,
    pub generator: usize,
    pub distance: Distance,
}

impl PseudoOrbit {
    pub fn point(&self, alpha: &[usize]) -> Option<&EvPerConfig> {
        self.points.iter().find(|(a, _)| a == alpha).map(|(_, x)| x)
    }

    /// Every `d(τ_i(x_α), x_{α+e_i})` inside the box.
    pub fn step_errors(&self, generators: &Generators) -> Result<Vec<StepError>> {
        let mut out = Vec::new();
        for (alpha, x) in &self.points {
            for i in 0..self.rank {
                let mut next = alpha.clone();
                next[i] += 1;
                let Some(y) = self.point(&next) else { continue };
                let tx = generators.get(i).apply_evper(x)?;
                out.push(StepError {
                    alpha: alpha.clone(),
                    generator: i,
                    distance: metric(&tx, y),
                });
            }
        }
        Ok(out)
    }

    /// Checks every step error is below `δ`.
    pub fn validate(&self, generators: &Generators) -> Result<Vec<StepError>> {
        if generators.rank() != self.rank {
            return Err(Error::Contract("pseudo-orbit and generators disagree on r".into()));
        }
        let errs = self.step_errors(generators)?;
        if let Some(e) = errs.iter().find(|e| !e.distance.below(self.delta.0)) {
            return Err(Error::Contract(format!(
                "step {:?} along generator {} has error {} ≥ {}",
                e.alpha, e.generator, e.distance, self.delta
            )));
        }
        Ok(errs)
    }
}

/// Walks `{0..=horizon}^r` applying generators exactly and perturbing outside
/// `E_{j+1}` for `δ = 2^-j`.
///
/// With one generator the perturbations accumulate along the orbit. With
/// several, each `x_α` is the exact `τ_α(x_0)` plus a fresh perturbation at
/// distance at least `j + 2 + m` from the origin, which keeps every edge of
/// the box within `δ`.
pub fn generate_pseudo_orbit(
    generators: &Generators,
    x0: &EvPerConfig,
    delta: Dyadic,
    horizon: usize,
    perturbation: Perturbation,
) -> Result<PseudoOrbit> {
    let u = *generators.universe();
    if x0.k() != u.k() {
        return Err(Error::DimensionMismatch("initial point has the wrong value width".into()));
    }
    let r = generators.rank();
    let points = box_points(r, horizon);
    let base = if r == 1 { 0 } else { generators.memory_radius() };
    let radius = delta.0 as i64 + 2 + base;
    let mut rng = sample::rng(match perturbation {
        Perturbation::Random { seed } => seed,
        _ => sample::DEFAULT_SEED,
    });
    let mut perturb = |x: EvPerConfig, step: usize| -> EvPerConfig {
        let (cell, v) = match perturbation {
            Perturbation::None => return x,
            Perturbation::Flip => {
                let side = if step.is_multiple_of(2) { 1 } else { -1 };
                (side * radius, u.basis_vector(0))
            }
            Perturbation::Random { .. } => {
                let side = if rng.gen_bool(0.5) { 1 } else { -1 };
                let n = side * (radius + rng.gen_range(0..=2));
                let choices = u.nonzero_vectors();
                let v = if choices.is_empty() {
                    (0..u.k()).map(|_| rng.gen_range(0..u.p())).collect()
                } else {
                    choices[rng.gen_range(0..choices.len())].clone()
                };
                (n, v)
            }
        };
        let old = x.at(cell).to_vec();
        x.with_value(cell, u.field().add_vec(&old, &v)).canonical()
    };
    let xs = if r == 1 {
        let mut xs = vec![x0.clone()];
        for t in 1..=horizon {
            let y = generators.get(0).apply_evper(&xs[t - 1])?;
            xs.push(perturb(y, t));
        }
        xs
    } else {
        let exact = generators.orbit_over(&points, x0, |t, x| Ok(t.apply_evper(x)?.canonical()))?;
        exact
            .into_iter()
            .enumerate()
            .map(|(i, y)| if i == 0 { y } else { perturb(y, i) })
            .collect()
    };
    Ok(PseudoOrbit {
        rank: r,
        horizon,
        delta,
        points: points.into_iter().zip(xs).collect(),
    })
}

/// Outcome of [`shadow_point`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShadowReport {
    pub epsilon: Dyadic,
    pub n0: u32,
    /// Exponent of the Lipschitz constant `C`.
    pub lipschitz_exponent: u32,
    pub sft_window: u32,
    pub delta: Dyadic,
    /// Exponent of the largest admissible `δ`.
    pub delta_bound: Dyadic,
    /// Unknowns live on `[-R, R]`.
    pub solve_radius: i64,
    pub unknowns: usize,
    pub equations: usize,
    /// `None` when the affine system is infeasible.
    pub point: Option<EvPerConfig>,
    /// `d(τ_α(x), x_α)` re-evaluated exactly, in box order.
    pub distances: Vec<(Vec<usize>, Distance)>,
    pub max_distance: Option<Distance>,
    pub verified: bool,
}

impl ShadowReport {
    pub fn success(&self) -> bool {
        self.point.is_some() && self.verified
    }
}

/// Finds `x` with `τ_α(x) = x_α` on `E_{n_0}` for every `α` in the box.
///
/// The unknown is `u = x - x_0` supported on `[-R, R]` with
/// `R = n_0 + m r T`, which covers every cell `τ_α(u)|E_{n_0}` reads.
pub fn shadow_point(
    generators: &Generators,
    orbit: &PseudoOrbit,
    epsilon: Dyadic,
    sft_window: u32,
) -> Result<ShadowReport> {
    if orbit.rank != generators.rank() {
        return Err(Error::Contract("pseudo-orbit and generators disagree on r".into()));
    }
    if sft_window == 0 {
        return Err(Error::Contract("the window parameter N must be positive".into()));
    }
    let delta_bound = delta_for(generators, epsilon, sft_window);
    if orbit.delta.0 < delta_bound.0 {
        return Err(Error::Contract(format!(
            "pseudo-orbit δ = {} exceeds 1/(2^n0 C N r) (need at most {})",
            orbit.delta, delta_bound
        )));
    }
    let u = *generators.universe();
    let k = u.k();
    let field = u.field();
    let n0 = n0_for(epsilon);
    let m = generators.memory_radius();
    let r = generators.rank();
    let big_r = n0 as i64 + m * (r * orbit.horizon) as i64;
    let window = interval(-big_r, big_r);
    let target = interval(-(n0 as i64), n0 as i64);
    let points: Vec<Vec<usize>> = orbit.points.iter().map(|(a, _)| a.clone()).collect();
    let x0 = &orbit.points[0].1;

    let cols = window.len() * k;
    let rows = points.len() * target.len() * k;
    let mut a = FieldMatrix::zeros(field, rows, cols);
    for (wi, &w) in window.iter().enumerate() {
        for c in 0..k {
            let e = FinSuppConfig::delta(w, u.basis_vector(c));
            let images = generators.orbit_over(&points, &e, |t, x| Ok(t.apply_finsupp(x)))?;
            for (ai, img) in images.iter().enumerate() {
                for (ti, &g) in target.iter().enumerate() {
                    if let Some(v) = img.get(g) {
                        for (cc, &val) in v.iter().enumerate() {
                            a.set((ai * target.len() + ti) * k + cc, wi * k + c, val);
                        }
                    }
                }
            }
        }
    }
    let exact = generators.orbit_over(&points, x0, |t, x| Ok(t.apply_evper(x)?.canonical()))?;
    let mut b = Vec::with_capacity(rows);
    for ((_, xa), ya) in orbit.points.iter().zip(&exact) {
        for &g in &target {
            b.extend(field.sub_vec(xa.at(g.x()), ya.at(g.x())));
        }
    }
    let sol = a.solve_affine(&b)?;
    let mut report = ShadowReport {
        epsilon,
        n0,
        lipschitz_exponent: lipschitz_bound(generators, sft_window),
        sft_window,
        delta: orbit.delta,
        delta_bound,
        solve_radius: big_r,
        unknowns: cols,
        equations: rows,
        point: None,
        distances: Vec::new(),
        max_distance: None,
        verified: false,
    };
    let Some(sol) = sol.particular else {
        return Ok(report);
    };
    let x = x0.add_finsupp(&scatter(&window, &sol, k), field).canonical();
    let images = generators.orbit_over(&points, &x, |t, y| Ok(t.apply_evper(y)?.canonical()))?;
    report.distances = orbit
        .points
        .iter()
        .zip(&images)
        .map(|((alpha, xa), ya)| (alpha.clone(), metric(ya, xa)))
        .collect();
    report.max_distance = report.distances.iter().map(|(_, d)| *d).max();
    report.verified = report
        .distances
        .iter()
        .all(|(_, d)| *d <= Distance::Pow2Neg(n0) && d.below(epsilon.0));
    report.point = Some(x);
    Ok(report)
}

/// `Λ(E; τ_1..τ_r)` restricted to a finite index set `Ω`, as a subspace of
/// `(V^E)^Ω`. Coordinates are ordered by `α`, then cell, then component.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnFactor {
    pub window: Vec<Cell>,
    pub omega: Vec<Vec<usize>>,
    pub k: usize,
    pub modulus: u32,
    /// Images `Ψ_E(x)|Ω` of the unit configurations on the dependence window,
    /// reduced to a basis.
    pub basis: Vec<Vector>,
}

impl ColumnFactor {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.omega.len() * self.window.len() * self.k
    }

    fn field(&self) -> crate::linalg::PrimeField {
        crate::linalg::PrimeField::new(self.modulus).expect("validated modulus")
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dimension() {
            return false;
        }
        if self.basis.is_empty() {
            return v.iter().all(|&x| x == 0);
        }
        let mut rows: Vec<Vec<i64>> = self.basis.iter().map(|b| b.iter().map(|&x| x as i64).collect()).collect();
        let base = FieldMatrix::from_rows(self.field(), &rows).expect("rectangular").rank();
        rows.push(v.iter().map(|&x| x as i64).collect());
        FieldMatrix::from_rows(self.field(), &rows).expect("rectangular").rank() == base
    }

    /// Coordinates of `v` for the indices `β + α'` with `α' ∈ sub`, in the
    /// order of `sub`.
    pub fn restrict(&self, v: &[u32], beta: &[usize], sub: &[Vec<usize>]) -> Option<Vector> {
        let block = self.window.len() * self.k;
        let mut out = Vec::with_capacity(sub.len() * block);
        for a in sub {
            let idx: Vec<usize> = a.iter().zip(beta).map(|(x, y)| x + y).collect();
            let i = self.omega.iter().position(|o| *o == idx)?;
            out.extend_from_slice(&v[i * block..(i + 1) * block]);
        }
        Some(out)
    }
}

/// Computes `Λ|Ω` as the image of `x|W ↦ (τ_α(x)|E)_{α∈Ω}` with `W` the
/// dependence window of `E`.
pub fn column_factor(generators: &Generators, window: &[Cell], omega: &[Vec<usize>]) -> Result<ColumnFactor> {
    let u = *generators.universe();
    let k = u.k();
    let r = generators.rank();
    if omega.iter().any(|a| a.len() != r) {
        return Err(Error::DimensionMismatch("index box has the wrong rank".into()));
    }
    for &c in window {
        u.check_cell(c)?;
    }
    let depth = omega.iter().map(|a| a.iter().sum::<usize>()).max().unwrap_or(0) as i64;
    let reach = depth * generators.memory_radius();
    let (lo, hi) = window
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c.x()), hi.max(c.x())));
    let dep = if window.is_empty() {
        Vec::new()
    } else {
        interval(lo - reach, hi + reach)
    };
    let block = window.len() * k;
    let mut columns: Vec<Vec<i64>> = Vec::new();
    for &w in &dep {
        for c in 0..k {
            let e = FinSuppConfig::delta(w, u.basis_vector(c));
            let mut col = vec![0i64; omega.len() * block];
            for (ai, alpha) in omega.iter().enumerate() {
                let img = generators.apply_finsupp(alpha, &e);
                for (gi, &g) in window.iter().enumerate() {
                    if let Some(v) = img.get(g) {
                        for (cc, &val) in v.iter().enumerate() {
                            col[ai * block + gi * k + cc] = val as i64;
                        }
                    }
                }
            }
            columns.push(col);
        }
    }
    let basis = if columns.is_empty() || omega.is_empty() || block == 0 {
        Vec::new()
    } else {
        let ech = FieldMatrix::from_rows(u.field(), &columns)?.echelon();
        (0..ech.pivots.len()).map(|i| ech.reduced.row(i).to_vec()).collect()
    };
    Ok(ColumnFactor {
        window: window.to_vec(),
        omega: omega.to_vec(),
        k,
        modulus: u.p(),
        basis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftInvarianceReport {
    pub checked: usize,
    pub violations: usize,
}

/// For the box `Ω = {0..=side}^r` and every sub-box `Ω' = {0..=s}^r` with
/// `s < side`, checks that each basis pattern of `Λ|Ω` restricted to
/// `β + Ω'` lies in `Λ|Ω'`.
pub fn check_shift_invariance(generators: &Generators, window: &[Cell], side: usize) -> Result<ShiftInvarianceReport> {
    let r = generators.rank();
    let big = column_factor(generators, window, &box_points(r, side))?;
    let mut report = ShiftInvarianceReport {
        checked: 0,
        violations: 0,
    };
    for s in 0..side {
        let sub = box_points(r, s);
        let small = column_factor(generators, window, &sub)?;
        for beta in box_points(r, side - s) {
            for b in &big.basis {
                let v = big.restrict(b, &beta, &sub).expect("sub-box fits");
                report.checked += 1;
                if !small.contains(&v) {
                    report.violations += 1;
                }
            }
        }
    }
    Ok(report)
}
