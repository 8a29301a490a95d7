//! Proof by contraction on bit strings.
//!
//! A map `f` from left-side bit strings to expanded right-side bit strings
//! proves an inequality on `k`-uniform hypergraphs when it fixes the
//! occurrence vectors and, for every set of `k` distinct domain strings, the
//! weighted `k`-indicator distance of the images never exceeds that of the
//! strings themselves.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::inequality::{Inequality, OccurrenceVectors};
use crate::rational::{common_denominator, format_rational, Rational};
use crate::subsystem::party_label;

/// A total function `{0,1}^L -> {0,1}^R'`, stored as the image value of each
/// domain value in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    l: usize,
    rp: usize,
    images: Vec<u64>,
}

impl ContractionMap {
    pub fn new(l: usize, rp: usize, images: Vec<u64>) -> Result<Self> {
        if l > 24 {
            return Err(Error::resource(format!("domain width {l} exceeds 24")));
        }
        if rp > 64 {
            return Err(Error::input(format!("image width {rp} exceeds 64")));
        }
        if images.len() != 1 << l {
            return Err(Error::Dimension { expected: 1 << l, found: images.len() });
        }
        if let Some((d, v)) = images.iter().enumerate().find(|(_, &v)| rp < 64 && v >> rp != 0) {
            return Err(Error::input(format!("image {v} of domain value {d} does not fit in {rp} bits")));
        }
        Ok(ContractionMap { l, rp, images })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn rp(&self) -> usize {
        self.rp
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn image(&self, x: &BitString) -> BitString {
        BitString::new(self.rp, self.images[x.value() as usize]).expect("validated width")
    }
}

/// Decodes the decimal image list: entry `d` is the image of the `L`-bit
/// expansion of `d`, read with the first term as most significant bit.
pub fn decode_f10(values: &[u64], l: usize, rp: usize) -> Result<ContractionMap> {
    ContractionMap::new(l, rp, values.to_vec())
}

pub fn encode_f10(map: &ContractionMap) -> Vec<u64> {
    map.images.clone()
}

/// `0` when all bits agree, `1` otherwise.
pub fn indicator_k(bits: &[bool]) -> Result<u8> {
    if bits.len() < 2 {
        return Err(Error::input("the indicator needs at least two bits"));
    }
    Ok(bits.iter().any(|&b| b != bits[0]) as u8)
}

fn non_constant_columns(strings: &[BitString]) -> u64 {
    let or = strings.iter().fold(0, |a, s| a | s.value());
    let and = strings.iter().fold(u64::MAX, |a, s| a & s.value());
    or ^ (and & or)
}

fn check_strings(strings: &[BitString], weights: &[Rational]) -> Result<usize> {
    if strings.len() < 2 {
        return Err(Error::input("the weighted indicator needs at least two strings"));
    }
    let width = strings[0].width();
    if let Some(s) = strings.iter().find(|s| s.width() != width) {
        return Err(Error::Dimension { expected: width, found: s.width() });
    }
    if weights.len() != width {
        return Err(Error::Dimension { expected: width, found: weights.len() });
    }
    Ok(width)
}

/// Sum of the weights of the columns in which the strings are not all equal.
pub fn weighted_indicator(strings: &[BitString], weights: &[Rational]) -> Result<Rational> {
    let width = check_strings(strings, weights)?;
    let mask = non_constant_columns(strings);
    Ok((0..width)
        .filter(|&i| mask >> (width - 1 - i) & 1 == 1)
        .map(|i| &weights[i])
        .sum())
}

/// Whether the strings span a `(k-1)`-dimensional polytope: the full
/// weighted indicator strictly exceeds that of every `(k-1)`-subset.
/// Tuples with repeated strings never do.
pub fn spans_full_polytope(strings: &[BitString], weights: &[Rational]) -> bool {
    if check_strings(strings, weights).is_err() {
        return false;
    }
    let Ok(full) = weighted_indicator(strings, weights) else { return false };
    (0..strings.len()).all(|skip| {
        let rest: Vec<BitString> =
            strings.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, s)| *s).collect();
        let sub = if rest.len() < 2 {
            Rational::zero()
        } else {
            weighted_indicator(&rest, weights).unwrap_or_else(|_| Rational::zero())
        };
        full > sub
    })
}

/// Column weights scaled to integers, with a lookup table for narrow widths.
#[derive(Debug, Clone)]
struct ColumnWeights {
    /// Weight of bit `b` of the packed value.
    by_bit: Vec<i64>,
    table: Vec<i64>,
}

impl ColumnWeights {
    fn new(weights_in_string_order: &[i64]) -> Self {
        let width = weights_in_string_order.len();
        let by_bit: Vec<i64> = (0..width).map(|b| weights_in_string_order[width - 1 - b]).collect();
        let table = if width <= 16 {
            (0..1u64 << width)
                .map(|m| (0..width).filter(|&b| m >> b & 1 == 1).map(|b| by_bit[b]).sum())
                .collect()
        } else {
            Vec::new()
        };
        ColumnWeights { by_bit, table }
    }

    #[inline(always)]
    fn weigh(&self, mask: u64) -> i64 {
        if !self.table.is_empty() {
            self.table[mask as usize]
        } else {
            let mut m = mask;
            let mut s = 0;
            while m != 0 {
                s += self.by_bit[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            s
        }
    }
}

/// Integer form of the contraction condition for one inequality.
#[derive(Debug, Clone)]
struct Metric {
    lhs: ColumnWeights,
    rhs: ColumnWeights,
    denominator: BigInt,
    /// Total right-side weight: no right-side distance can exceed it.
    beta: i64,
    rp_mask: u64,
}

impl Metric {
    fn new(ineq: &Inequality) -> Result<(Metric, Inequality)> {
        let expanded = ineq.expand_rhs()?;
        let alphas = expanded.lhs_weights();
        let den = common_denominator(alphas.iter());
        let scale = |r: &Rational| -> Result<i64> {
            (r.numer() * (&den / r.denom()))
                .to_i64()
                .filter(|v| *v < 1 << 40)
                .ok_or_else(|| Error::resource("coefficients too large"))
        };
        let lw: Vec<i64> = alphas.iter().map(scale).collect::<Result<_>>()?;
        let unit = den.to_i64().filter(|v| *v < 1 << 40).ok_or_else(|| Error::resource("coefficients too large"))?;
        let rp = expanded.r();
        let rw = vec![unit; rp];
        let metric = Metric {
            lhs: ColumnWeights::new(&lw),
            rhs: ColumnWeights::new(&rw),
            denominator: den,
            beta: unit * rp as i64,
            rp_mask: if rp == 64 { u64::MAX } else { (1 << rp) - 1 },
        };
        Ok((metric, expanded))
    }

    fn rational(&self, v: i64) -> Rational {
        Rational::new(BigInt::from(v), self.denominator.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankStatus {
    Verified,
    Violated,
    BudgetExceeded,
}

/// A set of domain strings whose images are farther apart than they are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub domain: Vec<BitString>,
    pub images: Vec<BitString>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub k: usize,
    pub status: RankStatus,
    /// Complete `k`-subsets evaluated.
    pub examined: u64,
    /// Subtrees skipped by pruning.
    pub pruned: u64,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionReport {
    pub ranks: Vec<RankReport>,
    pub beta_total: Rational,
    /// Every rank up to at least the total right-side weight verified, which
    /// settles the inequality for hypergraphs of any finite rank.
    pub fully_proved: bool,
}

impl ContractionReport {
    pub fn all_verified(&self) -> bool {
        self.ranks.iter().all(|r| r.status == RankStatus::Verified)
    }

    pub fn first_violation(&self) -> Option<&RankReport> {
        self.ranks.iter().find(|r| r.status == RankStatus::Violated)
    }

    pub fn rank(&self, k: usize) -> Option<&RankReport> {
        self.ranks.iter().find(|r| r.k == k)
    }

    /// Highest `k` such that all ranks `2..=k` verified, or `1` if none.
    pub fn verified_through(&self) -> usize {
        let mut k = 1;
        for r in &self.ranks {
            if r.status != RankStatus::Verified {
                break;
            }
            k = r.k;
        }
        k
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub k_max: usize,
    /// Node budget per rank.
    pub budget: u64,
    /// Use the partial-distance and polytope-span prunes.
    pub prune: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { k_max: 2, budget: 5_000_000_000, prune: true }
    }
}

#[derive(Clone, Copy)]
struct Flags {
    prune_distance: bool,
    prune_span: bool,
}

/// Running OR/AND of the chosen strings and their images.
#[derive(Clone, Copy)]
struct Acc {
    or_l: u64,
    and_l: u64,
    or_r: u64,
    and_r: u64,
}

impl Acc {
    fn single(x: u64, y: u64) -> Acc {
        Acc { or_l: x, and_l: x, or_r: y, and_r: y }
    }

    #[inline(always)]
    fn with(&self, x: u64, y: u64) -> Acc {
        Acc { or_l: self.or_l | x, and_l: self.and_l & x, or_r: self.or_r | y, and_r: self.and_r & y }
    }
}

enum Walk {
    Done,
    Violation(Vec<usize>),
    OutOfBudget,
}

/// Depth-first walk over `k`-subsets of `points` (by increasing index),
/// extending a fixed prefix.
struct Walker<'a> {
    metric: &'a Metric,
    points: &'a [u64],
    images: &'a [u64],
    k: usize,
    flags: Flags,
    examined: u64,
    pruned: u64,
    nodes: u64,
    budget_left: u64,
    chosen: Vec<usize>,
    /// `unique[d][i]`: columns where the image of `chosen[i]` alone differs,
    /// among the first `d + 1` chosen images.
    unique: Vec<Vec<u64>>,
}

impl<'a> Walker<'a> {
    fn new(metric: &'a Metric, points: &'a [u64], images: &'a [u64], k: usize, flags: Flags, budget: u64) -> Self {
        Walker {
            metric,
            points,
            images,
            k,
            flags,
            examined: 0,
            pruned: 0,
            nodes: 0,
            budget_left: budget,
            chosen: Vec::with_capacity(k),
            unique: vec![vec![0; k]; k],
        }
    }

    /// Records the unique columns after adding image `y` to the chosen set,
    /// whose accumulator is `acc`. Returns false when some chosen image no
    /// longer has a column of its own, which stays true for every superset.
    fn push_span(&mut self, acc: Option<&Acc>, y: u64) -> bool {
        let d = self.chosen.len();
        let Some(acc) = acc else {
            self.unique[0][0] = self.metric.rp_mask;
            return true;
        };
        let constant = self.metric.rp_mask & !(acc.or_r ^ acc.and_r);
        let mut ok = true;
        for i in 0..d {
            let u = self.unique[d - 1][i] & (self.images[self.chosen[i]] ^ y);
            self.unique[d][i] = u;
            ok &= u != 0;
        }
        let u = constant & (y ^ acc.and_r);
        self.unique[d][d] = u;
        ok && u != 0
    }

    /// Starts from `prefix` (increasing indices into `points`) and walks all
    /// completions with larger indices.
    fn run(&mut self, prefix: &[usize]) -> Walk {
        self.chosen.clear();
        let mut acc: Option<Acc> = None;
        for &p in prefix {
            let (x, y) = (self.points[p], self.images[p]);
            let span_ok = !self.flags.prune_span || self.push_span(acc.as_ref(), y);
            let next = match acc {
                None => Acc::single(x, y),
                Some(a) => a.with(x, y),
            };
            acc = Some(next);
            self.chosen.push(p);
            if self.chosen.len() == self.k {
                return self.leaf(&next);
            }
            if !span_ok || self.distance_pruned(&next) {
                self.pruned += 1;
                return Walk::Done;
            }
        }
        let start = prefix[prefix.len() - 1] + 1;
        self.descend(&acc.expect("non-empty prefix"), start)
    }

    #[inline(always)]
    fn distance_pruned(&self, acc: &Acc) -> bool {
        self.flags.prune_distance && self.metric.lhs.weigh(acc.or_l ^ acc.and_l) >= self.metric.beta
    }

    fn leaf(&mut self, acc: &Acc) -> Walk {
        self.examined += 1;
        let l = self.metric.lhs.weigh(acc.or_l ^ acc.and_l);
        let r = self.metric.rhs.weigh(acc.or_r ^ acc.and_r);
        if l < r {
            Walk::Violation(self.chosen.clone())
        } else {
            Walk::Done
        }
    }

    fn descend(&mut self, acc: &Acc, start: usize) -> Walk {
        let n = self.points.len();
        let remaining = self.k - self.chosen.len();
        if remaining == 1 {
            // innermost loop: evaluate leaves directly
            let (ml, mr) = (&self.metric.lhs, &self.metric.rhs);
            for j in start..n {
                let (x, y) = (self.points[j], self.images[j]);
                let l = ml.weigh((acc.or_l | x) ^ (acc.and_l & x));
                let r = mr.weigh((acc.or_r | y) ^ (acc.and_r & y));
                if l < r {
                    self.examined += (j - start + 1) as u64;
                    self.nodes += (j - start + 1) as u64;
                    self.chosen.push(j);
                    return Walk::Violation(self.chosen.clone());
                }
            }
            let count = n.saturating_sub(start) as u64;
            self.examined += count;
            self.nodes += count;
            return if self.nodes > self.budget_left { Walk::OutOfBudget } else { Walk::Done };
        }
        for j in start..=n.saturating_sub(remaining) {
            if n < remaining {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget_left {
                return Walk::OutOfBudget;
            }
            let (x, y) = (self.points[j], self.images[j]);
            let next = acc.with(x, y);
            if self.flags.prune_span && !self.push_span(Some(acc), y) {
                self.pruned += 1;
                continue;
            }
            if self.distance_pruned(&next) {
                self.pruned += 1;
                continue;
            }
            self.chosen.push(j);
            let w = self.descend(&next, j + 1);
            self.chosen.pop();
            match w {
                Walk::Done => {}
                other => return other,
            }
        }
        Walk::Done
    }
}

struct Shard {
    examined: u64,
    pruned: u64,
    nodes: u64,
    violation: Option<Vec<usize>>,
    out_of_budget: bool,
}

/// Checks every `k`-subset of `points`; sharded over leading pairs.
fn check_rank(
    metric: &Metric,
    points: &[u64],
    images: &[u64],
    k: usize,
    flags: Flags,
    budget: u64,
) -> (RankStatus, u64, u64, Option<Vec<usize>>) {
    let n = points.len();
    if k > n {
        return (RankStatus::Verified, 0, 0, None);
    }
    let prefixes: Vec<[usize; 2]> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b])).filter(|p| p[1] + k - 2 < n).collect();
    let best = AtomicUsize::new(usize::MAX);
    let spent = AtomicU64::new(0);
    let abort = std::sync::atomic::AtomicBool::new(false);
    let shards: Vec<Option<Shard>> = prefixes
        .par_iter()
        .enumerate()
        .map(|(idx, prefix)| {
            if idx > best.load(Ordering::Relaxed) || abort.load(Ordering::Relaxed) {
                return None;
            }
            let used = spent.load(Ordering::Relaxed);
            let mut w = Walker::new(metric, points, images, k, flags, budget.saturating_sub(used));
            let walk = w.run(prefix);
            spent.fetch_add(w.nodes + 1, Ordering::Relaxed);
            let mut shard = Shard {
                examined: w.examined,
                pruned: w.pruned,
                nodes: w.nodes + 1,
                violation: None,
                out_of_budget: false,
            };
            match walk {
                Walk::Done => {}
                Walk::Violation(v) => {
                    best.fetch_min(idx, Ordering::Relaxed);
                    shard.violation = Some(v);
                }
                Walk::OutOfBudget => {
                    abort.store(true, Ordering::Relaxed);
                    shard.out_of_budget = true;
                }
            }
            Some(shard)
        })
        .collect();

    let mut examined = 0;
    let mut pruned = 0;
    let mut nodes = 0u64;
    for s in shards.iter() {
        let Some(s) = s else {
            if abort.load(Ordering::Relaxed) && best.load(Ordering::Relaxed) == usize::MAX {
                return (RankStatus::BudgetExceeded, examined, pruned, None);
            }
            continue;
        };
        examined += s.examined;
        pruned += s.pruned;
        nodes += s.nodes;
        if let Some(v) = &s.violation {
            return (RankStatus::Violated, examined, pruned, Some(v.clone()));
        }
        if s.out_of_budget || nodes > budget {
            return (RankStatus::BudgetExceeded, examined, pruned, None);
        }
    }
    (RankStatus::Verified, examined, pruned, None)
}

fn make_witness(metric: &Metric, l: usize, rp: usize, domain: &[u64], images: &[u64]) -> Witness {
    let or_and = |vals: &[u64]| {
        let or = vals.iter().fold(0, |a, v| a | v);
        let and = vals.iter().fold(u64::MAX, |a, v| a & v);
        or ^ (and & or)
    };
    Witness {
        domain: domain.iter().map(|&d| BitString::new(l, d).unwrap()).collect(),
        images: images.iter().map(|&d| BitString::new(rp, d).unwrap()).collect(),
        lhs: metric.rational(metric.lhs.weigh(or_and(domain))),
        rhs: metric.rational(metric.rhs.weigh(or_and(images))),
    }
}

fn check_occurrences(map: &ContractionMap, occ: &OccurrenceVectors, n: usize) -> Result<()> {
    for p in 0..=n {
        let found = map.image(&occ.lhs[p]);
        if found != occ.rhs[p] {
            return Err(Error::MapInvalid {
                party: party_label(n, p),
                expected: occ.rhs[p].to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(())
}

/// Distinct occurrence-vector domain values, ascending.
fn occurrence_points(occ: &OccurrenceVectors) -> Vec<u64> {
    let mut pts: Vec<u64> = occ.lhs.iter().map(|b| b.value()).collect();
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// Verifies the contraction property rank by rank from `k = 2` to
/// `opts.k_max`. At each rank the subsets made of occurrence vectors are
/// checked first and supply the witness when they fail; otherwise the
/// witness is the lexicographically first failing subset. Pruning never
/// changes a verdict or a witness.
pub fn verify_contraction(
    map: &ContractionMap,
    ineq: &Inequality,
    opts: &VerifyOptions,
) -> Result<ContractionReport> {
    let (metric, expanded) = Metric::new(ineq)?;
    if map.l != expanded.l() {
        return Err(Error::Dimension { expected: expanded.l(), found: map.l });
    }
    if map.rp != expanded.r() {
        return Err(Error::Dimension { expected: expanded.r(), found: map.rp });
    }
    let occ = ineq.occurrence_vectors()?;
    check_occurrences(map, &occ, ineq.n())?;

    let occ_points = occurrence_points(&occ);
    let occ_images: Vec<u64> = occ_points.iter().map(|&x| map.images[x as usize]).collect();
    let domain: Vec<u64> = (0..1u64 << map.l).collect();

    let mut ranks = Vec::new();
    let mut lower_verified = true;
    for k in 2..=opts.k_max.max(1) {
        let flags = Flags { prune_distance: opts.prune, prune_span: opts.prune && k >= 3 && lower_verified };
        let occ_check = check_rank(&metric, &occ_points, &occ_images, k, Flags { prune_distance: false, prune_span: false }, u64::MAX);
        let report = if let (RankStatus::Violated, examined, _, Some(v)) = occ_check {
            let dom: Vec<u64> = v.iter().map(|&i| occ_points[i]).collect();
            let img: Vec<u64> = v.iter().map(|&i| occ_images[i]).collect();
            RankReport {
                k,
                status: RankStatus::Violated,
                examined,
                pruned: 0,
                witness: Some(make_witness(&metric, map.l, map.rp, &dom, &img)),
            }
        } else {
            let (status, examined, pruned, v) = check_rank(&metric, &domain, &map.images, k, flags, opts.budget);
            let witness = v.map(|v| {
                let dom: Vec<u64> = v.iter().map(|&i| domain[i]).collect();
                let img: Vec<u64> = v.iter().map(|&i| map.images[i]).collect();
                make_witness(&metric, map.l, map.rp, &dom, &img)
            });
            RankReport { k, status, examined, pruned, witness }
        };
        lower_verified &= report.status == RankStatus::Verified;
        ranks.push(report);
    }
    let beta_total = expanded.beta_total();
    let all = ranks.iter().all(|r| r.status == RankStatus::Verified);
    let fully_proved = all && Rational::from_integer(opts.k_max.into()) >= beta_total;
    Ok(ContractionReport { ranks, beta_total, fully_proved })
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub k_target: usize,
    /// Limit on subset checks across the whole search.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { k_target: 2, budget: 2_000_000_000 }
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// A map satisfying every rank up to the target, re-verified.
    Found { map: ContractionMap, report: ContractionReport },
    /// The occurrence vectors alone already violate the condition.
    Unsatisfiable { k: usize, witness: Witness },
    /// The search space was exhausted without a map.
    Exhausted { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

struct Search<'a> {
    metric: &'a Metric,
    k_target: usize,
    budget: u64,
    nodes: u64,
    order: Vec<u64>,
    rp: usize,
    points: Vec<u64>,
    images: Vec<u64>,
}

impl Search<'_> {
    /// Checks every subset of size `2..=k_target` made of `x` and assigned
    /// points, rank by rank so that the span prune stays sound.
    fn consistent(&mut self, x: u64, y: u64) -> Option<bool> {
        let mut points = Vec::with_capacity(self.points.len() + 1);
        let mut images = Vec::with_capacity(self.points.len() + 1);
        points.push(x);
        images.push(y);
        points.extend_from_slice(&self.points);
        images.extend_from_slice(&self.images);
        for k in 2..=self.k_target.min(points.len()) {
            let flags = Flags { prune_distance: true, prune_span: k >= 3 };
            let mut w = Walker::new(self.metric, &points, &images, k, flags, self.budget.saturating_sub(self.nodes));
            let mut verdict = Some(true);
            for second in 1..points.len() {
                if second + k - 2 >= points.len() {
                    break;
                }
                match w.run(&[0, second]) {
                    Walk::Done => {}
                    Walk::Violation(_) => {
                        verdict = Some(false);
                        break;
                    }
                    Walk::OutOfBudget => {
                        verdict = None;
                        break;
                    }
                }
            }
            self.nodes += w.nodes + w.examined;
            if self.nodes > self.budget {
                return None;
            }
            if verdict != Some(true) {
                return verdict;
            }
        }
        Some(true)
    }

    fn assign(&mut self, pos: usize) -> Option<bool> {
        if pos == self.order.len() {
            return Some(true);
        }
        let x = self.order[pos];
        let anchor = self.nearest_image(x).unwrap_or(0);
        let mut candidates: Vec<u64> = (0..1u64 << self.rp).collect();
        candidates.sort_by_key(|&c| (self.metric.rhs.weigh(c ^ anchor), c));
        for y in candidates {
            match self.consistent(x, y) {
                None => return None,
                Some(false) => continue,
                Some(true) => {}
            }
            self.points.push(x);
            self.images.push(y);
            match self.assign(pos + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {
                    self.points.pop();
                    self.images.pop();
                }
            }
        }
        Some(false)
    }

    /// Image of the assigned point nearest to `x` in weighted distance.
    fn nearest_image(&self, x: u64) -> Option<u64> {
        self.points
            .iter()
            .zip(&self.images)
            .min_by_key(|(&p, _)| (self.metric.lhs.weigh(p ^ x), p))
            .map(|(_, &y)| y)
    }
}

/// Backtracking search for a contraction map valid for all ranks up to
/// `opts.k_target`. Occurrence vectors are pinned to their required images;
/// remaining strings are visited by distance to the pinned ones and try
/// images nearest to that of their closest assigned neighbour first.
pub fn search_contraction(ineq: &Inequality, opts: &SearchOptions) -> Result<SearchOutcome> {
    let (metric, expanded) = Metric::new(ineq)?;
    let l = expanded.l();
    let rp = expanded.r();
    if l > 16 || rp > 16 {
        return Err(Error::resource("search supports at most 16 terms per side"));
    }
    let occ = ineq.occurrence_vectors()?;
    let mut fixed: Vec<(u64, u64)> = Vec::new();
    for p in 0..=ineq.n() {
        let (x, y) = (occ.lhs[p].value(), occ.rhs[p].value());
        match fixed.iter().find(|f| f.0 == x) {
            Some(f) if f.1 != y => {
                return Err(Error::input(format!(
                    "parties share the left occurrence vector {} but need different images",
                    occ.lhs[p]
                )))
            }
            Some(_) => {}
            None => fixed.push((x, y)),
        }
    }
    fixed.sort_unstable();
    let fx: Vec<u64> = fixed.iter().map(|f| f.0).collect();
    let fy: Vec<u64> = fixed.iter().map(|f| f.1).collect();
    for k in 2..=opts.k_target {
        let none = Flags { prune_distance: false, prune_span: false };
        if let (RankStatus::Violated, _, _, Some(v)) = check_rank(&metric, &fx, &fy, k, none, u64::MAX) {
            let dom: Vec<u64> = v.iter().map(|&i| fx[i]).collect();
            let img: Vec<u64> = v.iter().map(|&i| fy[i]).collect();
            return Ok(SearchOutcome::Unsatisfiable { k, witness: make_witness(&metric, l, rp, &dom, &img) });
        }
    }

    let mut rest: Vec<u64> = (0..1u64 << l).filter(|x| !fx.contains(x)).collect();
    let dist = |x: u64| fx.iter().map(|&f| (f ^ x).count_ones()).min().unwrap_or(0);
    rest.sort_by_key(|&x| (dist(x), x));
    let mut search = Search {
        metric: &metric,
        k_target: opts.k_target,
        budget: opts.budget,
        nodes: 0,
        order: rest,
        rp,
        points: fx,
        images: fy,
    };
    match search.assign(0) {
        None => Ok(SearchOutcome::BudgetExceeded { nodes: search.nodes }),
        Some(false) => Ok(SearchOutcome::Exhausted { nodes: search.nodes }),
        Some(true) => {
            let mut images = vec![0u64; 1 << l];
            for (&x, &y) in search.points.iter().zip(&search.images) {
                images[x as usize] = y;
            }
            let map = ContractionMap::new(l, rp, images)?;
            let report = verify_contraction(
                &map,
                ineq,
                &VerifyOptions { k_max: opts.k_target, ..VerifyOptions::default() },
            )?;
            if !report.all_verified() {
                return Err(Error::Internal("search produced a map that fails verification".into()));
            }
            Ok(SearchOutcome::Found { map, report })
        }
    }
}

/// Renders a witness as `{x1, x2, ...} -> {y1, ...}: lhs < rhs`.
pub fn describe_witness(w: &Witness) -> String {
    let join = |v: &[BitString]| v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ");
    format!(
        "{{{}}} -> {{{}}}: {} < {}",
        join(&w.domain),
        join(&w.images),
        format_rational(&w.lhs),
        format_rational(&w.rhs)
    )
}
