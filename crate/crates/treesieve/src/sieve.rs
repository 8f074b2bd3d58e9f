//! The sieving engine. An instance pairs a graph with per-edge weight
//! monomials in vertex variables, grading variables `y`, and an isolation
//! variable `z`. The engine sums
//!
//! ```text
//!   pre(x) · [y-target] det(A_root(x, y) · Cᵀ)
//! ```
//!
//! over all substitutions of `order`-th roots of unity into the sieved
//! vertex variables, where `A_root` is the weighted oriented incidence
//! matrix with the root row removed and `C` is the companion matrix. Terms
//! whose vertex degrees are all divisible by `order` survive the sum with
//! multiplicity `order^(#sieved)`; everything else cancels.
//!
//! Count mode evaluates the sum exactly: inside each of several prime
//! fields chosen large enough for Chinese-remainder reconstruction, with
//! `y`-coefficients extracted by evaluation on a grid and interpolation.
//! Detect mode runs independent randomized trials, giving every edge a
//! random isolation weight and testing the sum against zero at a random
//! point of a single prime field.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{
    binomial, coeff_weights, crt_reconstruct, det_mod_in_place, random_prime_with_root, CrtLedger,
    PrimeField, RingError,
};
use crate::graph::{CompanionSpec, EdgeLabel, Graph};

#[derive(Debug, Error)]
pub enum SieveError {
    #[error("invalid sieve instance: {0}")]
    Invalid(String),
    #[error("substitution space overflows a machine word")]
    TooManySubstitutions,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("sieve sum {sum} is not divisible by {divisor}; this is a bug")]
    Divisibility { sum: BigInt, divisor: BigInt },
}

/// Weight of one edge: an integer scalar times a monomial in vertex
/// variables, grading variables, and optionally the isolation variable.
#[derive(Debug, Clone)]
pub struct EdgeWeight {
    /// `(vertex, exponent)` pairs; every vertex must be sieved.
    pub vertex_exponents: Vec<(usize, u64)>,
    /// Exponent of each grading variable; length equals the target length.
    pub y_degrees: Vec<u32>,
    /// Isolation multiplier: edges with a nonzero value receive a random
    /// per-trial weight in detect mode. Must be 0 in count mode.
    pub z_weight: u32,
    pub scalar: BigInt,
}

impl EdgeWeight {
    pub fn unit() -> Self {
        EdgeWeight {
            vertex_exponents: Vec::new(),
            y_degrees: Vec::new(),
            z_weight: 0,
            scalar: BigInt::one(),
        }
    }

    pub fn vertex(mut self, v: usize, exponent: u64) -> Self {
        self.vertex_exponents.push((v, exponent));
        self
    }

    pub fn grading(mut self, degrees: Vec<u32>) -> Self {
        self.y_degrees = degrees;
        self
    }

    pub fn isolating(mut self) -> Self {
        self.z_weight = 1;
        self
    }

    pub fn scaled(mut self, scalar: BigInt) -> Self {
        self.scalar = scalar;
        self
    }
}

/// Factor applied to each substitution before accumulation.
#[derive(Debug, Clone)]
pub enum Premultiplier {
    /// Product of sieved-vertex variables with exponents below the sieve
    /// order.
    Monomial(Vec<(usize, u64)>),
    /// Elementary symmetric polynomial of the given degree in the listed
    /// sieved-vertex variables.
    ElemSym { degree: usize, vars: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveMode {
    Count,
    Detect,
}

#[derive(Debug, Clone)]
pub struct SieveInstance {
    pub h: Graph,
    pub root: usize,
    pub cspec: CompanionSpec,
    /// Aligned with `h.edges()`.
    pub weights: Vec<EdgeWeight>,
    /// Order of the roots of unity being substituted.
    pub order: u64,
    /// Sieved vertices.
    pub sieved: Vec<usize>,
    pub pre: Premultiplier,
    /// Grading-variable multidegree to extract (zero, one or two entries).
    pub y_target: Vec<usize>,
    pub mode: SieveMode,
}

#[derive(Debug, Clone)]
pub struct CountResult {
    pub value: BigInt,
    /// Moduli used for reconstruction.
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectResult {
    pub detected: bool,
    /// Trials actually run (stops early on the first nonzero sum).
    pub trials: usize,
    pub seed: u64,
}

impl SieveInstance {
    pub fn substitution_count(&self) -> Result<u64, SieveError> {
        let k = u32::try_from(self.sieved.len())
            .map_err(|_| SieveError::TooManySubstitutions)?;
        self.order
            .checked_pow(k)
            .ok_or(SieveError::TooManySubstitutions)
    }

    fn validate(&self) -> Result<(), SieveError> {
        let n = self.h.n();
        let err = |msg: String| Err(SieveError::Invalid(msg));
        if n == 0 {
            return err("graph has no vertices".into());
        }
        if self.root >= n {
            return err(format!("root {} out of range", self.root));
        }
        if self.order == 0 {
            return err("sieve order must be positive".into());
        }
        if self.weights.len() != self.h.edges().len() {
            return err(format!(
                "{} weights for {} edges",
                self.weights.len(),
                self.h.edges().len()
            ));
        }
        if self.y_target.len() > 2 {
            return err("at most two grading variables are supported".into());
        }
        let sieved_set: BTreeSet<usize> = self.sieved.iter().copied().collect();
        if sieved_set.len() != self.sieved.len() {
            return err("sieved vertices must be distinct".into());
        }
        if let Some(&v) = sieved_set.iter().find(|&&v| v >= n) {
            return err(format!("sieved vertex {v} out of range"));
        }
        for w in &self.weights {
            if w.y_degrees.len() != self.y_target.len() {
                return err("edge grading degrees must match the target length".into());
            }
            for &(v, _) in &w.vertex_exponents {
                if !sieved_set.contains(&v) {
                    return err(format!("edge weight uses unsieved vertex {v}"));
                }
            }
            match self.mode {
                SieveMode::Count if w.z_weight != 0 => {
                    return err("isolation weights are a detect-mode device".into())
                }
                SieveMode::Detect if !w.y_degrees.is_empty() => {
                    return err("grading variables are a count-mode device".into())
                }
                _ => {}
            }
        }
        if self.mode == SieveMode::Detect && !self.y_target.is_empty() {
            return err("grading variables are a count-mode device".into());
        }
        match &self.pre {
            Premultiplier::Monomial(terms) => {
                for &(v, e) in terms {
                    if !sieved_set.contains(&v) {
                        return err(format!("premultiplier uses unsieved vertex {v}"));
                    }
                    if e == 0 || e >= self.order {
                        return err(format!(
                            "premultiplier exponent {e} outside 1..{}",
                            self.order
                        ));
                    }
                }
            }
            Premultiplier::ElemSym { degree, vars } => {
                if *degree > vars.len() {
                    return err("symmetric degree exceeds its variable count".into());
                }
                let var_set: BTreeSet<usize> = vars.iter().copied().collect();
                if var_set.len() != vars.len() || !var_set.is_subset(&sieved_set) {
                    return err("symmetric variables must be distinct sieved vertices".into());
                }
            }
        }
        if let CompanionSpec::LabelIndicator { rows } = &self.cspec {
            if rows.len() != n - 1 {
                return err(format!(
                    "label universe has {} rows, matrix needs {}",
                    rows.len(),
                    n - 1
                ));
            }
            let row_set: BTreeSet<EdgeLabel> = rows.iter().copied().collect();
            if row_set.len() != rows.len() {
                return err("label universe has duplicates".into());
            }
            for e in self.h.edges() {
                match e.label {
                    Some(l) if row_set.contains(&l) => {}
                    Some(l) => return err(format!("edge label {l} missing from universe")),
                    None => return err("every edge needs a label under a label companion".into()),
                }
            }
        }
        Ok(())
    }
}

/// Upper bound on the absolute value of the substitution sum, used to size
/// the modulus product: substitutions × edge subsets × largest scalar
/// product × largest premultiplier magnitude.
pub fn crt_bound(inst: &SieveInstance) -> BigInt {
    let m = inst.h.n() as u64 - 1;
    let e = inst.h.edges().len() as u64;
    let substitutions = BigInt::from(inst.order).pow(inst.sieved.len() as u32);
    let subsets = binomial(e, m);
    let wmax = inst
        .weights
        .iter()
        .map(|w| w.scalar.abs())
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let pre_max = match &inst.pre {
        Premultiplier::Monomial(_) => BigInt::one(),
        Premultiplier::ElemSym { degree, vars } => {
            binomial(vars.len() as u64, *degree as u64).max(BigInt::one())
        }
    };
    (substitutions * subsets * wmax.pow(m as u32) * pre_max).max(BigInt::one())
}

enum PrePlan {
    Monomial(Vec<(usize, u64)>),
    ElemSym { degree: usize, positions: Vec<usize> },
}

/// Everything needed to run the substitution sum inside one prime field.
struct FieldPlan {
    f: PrimeField,
    m: usize,
    p: u64,
    positions: usize,
    total: u64,
    zeta_pow: Vec<u64>,
    /// Per edge: flat matrix cells to bump, with sign.
    edge_updates: Vec<Vec<(u32, bool)>>,
    /// Per edge: (digit position, exponent mod order) pairs.
    edge_exponents: Vec<Vec<(usize, u64)>>,
    /// Per grid cell, per edge: scalar times grid-point powers (times the
    /// isolation factor in detect mode).
    cell_base: Vec<Vec<u64>>,
    /// Per grid cell: product of the coefficient-extraction weights.
    cell_weight: Vec<u64>,
    pre: PrePlan,
}

fn build_plan(
    inst: &SieveInstance,
    f: PrimeField,
    isolation: Option<(&[u64], u64)>,
) -> Result<FieldPlan, SieveError> {
    let n = inst.h.n();
    let m = n - 1;
    let p = inst.order;
    let total = inst.substitution_count()?;

    let mut zeta_pow = vec![1u64; p as usize];
    for i in 1..p as usize {
        zeta_pow[i] = f.mul(zeta_pow[i - 1], f.zeta);
    }

    let mut vertex_row = vec![None; n];
    {
        let mut r = 0;
        for v in 0..n {
            if v != inst.root {
                vertex_row[v] = Some(r);
                r += 1;
            }
        }
    }
    let label_row: BTreeMap<EdgeLabel, usize> = match &inst.cspec {
        CompanionSpec::LabelIndicator { rows } => {
            rows.iter().enumerate().map(|(i, &l)| (l, i)).collect()
        }
        _ => BTreeMap::new(),
    };

    let mut edge_updates = Vec::with_capacity(inst.h.edges().len());
    for e in inst.h.edges() {
        let a_side: Vec<(usize, bool)> = [(e.tail, false), (e.head, true)]
            .into_iter()
            .filter_map(|(v, neg)| vertex_row[v].map(|r| (r, neg)))
            .collect();
        let c_side: Vec<(usize, bool)> = match &inst.cspec {
            CompanionSpec::IncidenceOriented => [(e.tail, false), (e.head, true)]
                .into_iter()
                .filter_map(|(v, neg)| vertex_row[v].map(|r| (r, neg)))
                .collect(),
            CompanionSpec::InIncidence => vertex_row[e.head]
                .map(|r| (r, false))
                .into_iter()
                .collect(),
            CompanionSpec::LabelIndicator { .. } => {
                let l = e.label.expect("validated: labelled edges");
                vec![(label_row[&l], false)]
            }
        };
        let mut updates = Vec::with_capacity(a_side.len() * c_side.len());
        for &(ar, aneg) in &a_side {
            for &(cr, cneg) in &c_side {
                updates.push(((ar * m + cr) as u32, aneg != cneg));
            }
        }
        edge_updates.push(updates);
    }

    let pos_of: BTreeMap<usize, usize> = inst
        .sieved
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let edge_exponents: Vec<Vec<(usize, u64)>> = inst
        .weights
        .iter()
        .map(|w| {
            w.vertex_exponents
                .iter()
                .map(|&(v, e)| (pos_of[&v], e % p))
                .collect()
        })
        .collect();

    // Grid axes: enough points per grading variable to cover both the
    // determinant's degree and the requested target.
    let mut axis_points: Vec<Vec<u64>> = Vec::new();
    let mut axis_weights: Vec<Vec<u64>> = Vec::new();
    for (a, &target) in inst.y_target.iter().enumerate() {
        let mut degs: Vec<u32> = inst.weights.iter().map(|w| w.y_degrees[a]).collect();
        degs.sort_unstable_by(|x, y| y.cmp(x));
        let max_deg: u64 = degs.iter().take(m).map(|&d| d as u64).sum();
        let len = max_deg.max(target as u64) + 1;
        let points: Vec<u64> = (0..len).collect();
        let weights = coeff_weights(&f, &points, target)?;
        axis_points.push(points);
        axis_weights.push(weights);
    }
    let cells: usize = axis_points.iter().map(|a| a.len()).product();

    let base_scalar: Vec<u64> = inst
        .weights
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let mut b = f.from_bigint(&w.scalar);
            if let Some((iso, rho)) = isolation {
                if w.z_weight > 0 {
                    b = f.mul(b, f.pow(rho, iso[j] * w.z_weight as u64));
                }
            }
            b
        })
        .collect();
    let mut cell_base = Vec::with_capacity(cells);
    let mut cell_weight = Vec::with_capacity(cells);
    for cell in 0..cells {
        let mut rem = cell;
        let mut idx = Vec::with_capacity(axis_points.len());
        for pts in axis_points.iter().rev() {
            idx.push(rem % pts.len());
            rem /= pts.len();
        }
        idx.reverse();
        let mut weight = 1u64;
        for (a, &j) in idx.iter().enumerate() {
            weight = f.mul(weight, axis_weights[a][j]);
        }
        let bases: Vec<u64> = inst
            .weights
            .iter()
            .enumerate()
            .map(|(e, w)| {
                let mut b = base_scalar[e];
                for (a, &j) in idx.iter().enumerate() {
                    b = f.mul(b, f.pow(axis_points[a][j], w.y_degrees[a] as u64));
                }
                b
            })
            .collect();
        cell_base.push(bases);
        cell_weight.push(weight);
    }

    let pre = match &inst.pre {
        Premultiplier::Monomial(terms) => {
            PrePlan::Monomial(terms.iter().map(|&(v, e)| (pos_of[&v], e % p)).collect())
        }
        Premultiplier::ElemSym { degree, vars } => PrePlan::ElemSym {
            degree: *degree,
            positions: vars.iter().map(|v| pos_of[v]).collect(),
        },
    };

    Ok(FieldPlan {
        f,
        m,
        p,
        positions: inst.sieved.len(),
        total,
        zeta_pow,
        edge_updates,
        edge_exponents,
        cell_base,
        cell_weight,
        pre,
    })
}

/// Substitution sum over indices `lo..hi`, single-threaded.
fn sum_range(plan: &FieldPlan, lo: u64, hi: u64) -> u64 {
    let f = &plan.f;
    let p = plan.p;
    let k = plan.positions;
    let e_count = plan.edge_updates.len();

    let mut digits = vec![0u64; k];
    let mut rem = lo;
    for d in digits.iter_mut() {
        *d = rem % p;
        rem /= p;
    }
    let mut zterm = vec![0u64; e_count];
    let mut mat = vec![0u64; plan.m * plan.m];
    let mut sym = match &plan.pre {
        PrePlan::ElemSym { degree, .. } => vec![0u64; degree + 1],
        _ => Vec::new(),
    };

    let mut acc = 0u64;
    for idx in lo..hi {
        if idx > lo {
            for d in digits.iter_mut() {
                *d += 1;
                if *d == p {
                    *d = 0;
                } else {
                    break;
                }
            }
        }

        let pre_val = match &plan.pre {
            PrePlan::Monomial(terms) => {
                let mut s = 0u64;
                for &(pos, ex) in terms {
                    s += ex * digits[pos];
                }
                plan.zeta_pow[(s % p) as usize]
            }
            PrePlan::ElemSym { degree, positions } => {
                sym.fill(0);
                sym[0] = 1;
                for &pos in positions {
                    let x = plan.zeta_pow[digits[pos] as usize];
                    for i in (1..sym.len()).rev() {
                        sym[i] = f.add(sym[i], f.mul(sym[i - 1], x));
                    }
                }
                sym[*degree]
            }
        };

        for (e, exps) in plan.edge_exponents.iter().enumerate() {
            let mut s = 0u64;
            for &(pos, ex) in exps {
                s += ex * digits[pos];
            }
            zterm[e] = plan.zeta_pow[(s % p) as usize];
        }

        let mut coeff = 0u64;
        for (bases, &cw) in plan.cell_base.iter().zip(&plan.cell_weight) {
            mat.fill(0);
            for e in 0..e_count {
                let w = f.mul(bases[e], zterm[e]);
                if w == 0 {
                    continue;
                }
                for &(fi, neg) in &plan.edge_updates[e] {
                    let v = &mut mat[fi as usize];
                    *v = if neg { f.sub(*v, w) } else { f.add(*v, w) };
                }
            }
            let det = det_mod_in_place(f, &mut mat, plan.m);
            coeff = f.add(coeff, f.mul(cw, det));
        }

        acc = f.add(acc, f.mul(pre_val, coeff));
    }
    acc
}

/// Full substitution sum, parallel over index ranges. Field addition is
/// exact, so the result is independent of the parallel schedule.
fn field_sum(plan: &FieldPlan) -> u64 {
    let total = plan.total;
    let threads = rayon::current_num_threads() as u64;
    let chunk = (total / (threads * 8).max(1)).clamp(1, 2048);
    let n_chunks = total.div_ceil(chunk);
    (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = total.min(lo + chunk);
            sum_range(plan, lo, hi)
        })
        .reduce(|| 0, |a, b| plan.f.add(a, b))
}

/// Exact evaluation. The seed only affects which primes are sampled; the
/// returned value is the same for every seed. The substitution sum must
/// come out divisible by `order^(#sieved)` — a violation is a bug, not an
/// input error — and the quotient is returned.
pub fn run_count(inst: &SieveInstance, seed: u64) -> Result<CountResult, SieveError> {
    inst.validate()?;
    if inst.mode != SieveMode::Count {
        return Err(SieveError::Invalid(
            "run_count needs a count-mode instance".into(),
        ));
    }
    let bound = crt_bound(inst);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut fields: Vec<PrimeField> = Vec::new();
    let mut product = BigInt::one();
    while product <= 2 * &bound {
        let bits = rng.gen_range(50..=62);
        let f = random_prime_with_root(inst.order, bits, &mut rng);
        if fields.iter().any(|g| g.q == f.q) {
            continue;
        }
        product *= BigInt::from(f.q);
        fields.push(f);
    }

    let mut residues = Vec::with_capacity(fields.len());
    for &f in &fields {
        let plan = build_plan(inst, f, None)?;
        residues.push((f.q, field_sum(&plan)));
    }
    let ledger = CrtLedger { residues, bound };
    let sum = crt_reconstruct(&ledger)?;

    let divisor = BigInt::from(inst.order).pow(inst.sieved.len() as u32);
    if (&sum % &divisor) != BigInt::zero() {
        return Err(SieveError::Divisibility { sum, divisor });
    }
    Ok(CountResult {
        value: sum / divisor,
        primes: fields.iter().map(|f| f.q).collect(),
    })
}

/// Randomized zero test. Each trial draws fresh isolation weights (uniform
/// in `1..=4|E|` per edge), a fresh prime field, and a fresh evaluation
/// point; a nonzero sum stops the loop. Trials are derived from
/// `(seed, trial index)`, so outcomes are reproducible.
pub fn run_detect(
    inst: &SieveInstance,
    trials: usize,
    seed: u64,
) -> Result<DetectResult, SieveError> {
    inst.validate()?;
    if inst.mode != SieveMode::Detect {
        return Err(SieveError::Invalid(
            "run_detect needs a detect-mode instance".into(),
        ));
    }
    let e_count = inst.h.edges().len();
    for trial in 0..trials {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64 + 1);
        let iso: Vec<u64> = (0..e_count)
            .map(|_| rng.gen_range(1..=4 * e_count as u64))
            .collect();
        let bits = rng.gen_range(50..=62);
        let f = random_prime_with_root(inst.order, bits, &mut rng);
        let rho = rng.gen_range(1..f.q);
        let plan = build_plan(inst, f, Some((&iso, rho)))?;
        if field_sum(&plan) != 0 {
            return Ok(DetectResult {
                detected: true,
                trials: trial + 1,
                seed,
            });
        }
    }
    Ok(DetectResult {
        detected: false,
        trials,
        seed,
    })
}
