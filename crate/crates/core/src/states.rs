//! Quantum states built from hypergraphs.
//!
//! Every unit-weight hyperedge becomes a GHZ tensor and every bulk vertex an
//! AME tensor; an edge index and a bulk-vertex index meeting at an incidence
//! are contracted through a Hadamard matrix, and indices at boundary vertices
//! become the party's local legs. Plain 2-edges reduce to direct index
//! contractions. Amplitudes are exact Eisenstein integers `a + b w` with
//! `w = exp(2 pi i / 3)`; the overall normalization `1/sqrt(N)` is tracked
//! separately and scalar prefactors are dropped.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hypergraph::{entropy_vector, expand_to_unit_weights, EntropyVector, Hypergraph, MinCutOptions};
use crate::rational::Rational;
use crate::subsystem::{party_label, Subsystem, SubsystemIndex};

/// `a + b w` with `w^2 + w + 1 = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Eisenstein {
    pub a: i128,
    pub b: i128,
}

impl Eisenstein {
    pub const ZERO: Eisenstein = Eisenstein { a: 0, b: 0 };
    pub const ONE: Eisenstein = Eisenstein { a: 1, b: 0 };

    pub const fn new(a: i128, b: i128) -> Self {
        Eisenstein { a, b }
    }

    /// `w^k`.
    pub fn omega_pow(k: u64) -> Self {
        match k % 3 {
            0 => Eisenstein::new(1, 0),
            1 => Eisenstein::new(0, 1),
            _ => Eisenstein::new(-1, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(&self) -> Self {
        // conj(w) = w^2 = -1 - w
        Eisenstein::new(self.a - self.b, -self.b)
    }

    /// `|z|^2 = a^2 - ab + b^2`.
    pub fn norm(&self) -> i128 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let (a, b) = (self.a as f64, self.b as f64);
        (a - b / 2.0, b * 3f64.sqrt() / 2.0)
    }

    fn scale(&self, k: i128) -> Self {
        Eisenstein::new(self.a * k, self.b * k)
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a + o.a, self.b + o.b)
    }
}

impl AddAssign for Eisenstein {
    fn add_assign(&mut self, o: Eisenstein) {
        self.a += o.a;
        self.b += o.b;
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-self.a, -self.b)
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Eisenstein) -> Eisenstein {
        // (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w
        Eisenstein::new(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a - self.b * o.b)
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, b) => write!(f, "{b}w"),
            (a, b) if b < 0 => write!(f, "({a}{b}w)"),
            (a, b) => write!(f, "({a}+{b}w)"),
        }
    }
}

impl fmt::Debug for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A dense tensor `data / sqrt(norm)`, row-major over `dims`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub dims: Vec<usize>,
    pub data: Vec<Eisenstein>,
    pub norm: i128,
}

impl Tensor {
    fn from_data(dims: Vec<usize>, data: Vec<Eisenstein>) -> Tensor {
        let norm = data.iter().map(Eisenstein::norm).sum();
        Tensor { dims, data, norm }
    }

    pub fn nonzero(&self) -> usize {
        self.data.iter().filter(|z| !z.is_zero()).count()
    }
}

/// The `omega`-index GHZ tensor in dimension `d`: ones where all indices agree.
pub fn ghz_tensor(omega: usize, d: usize) -> Result<Tensor> {
    if omega < 2 || d < 2 {
        return Err(Error::input(format!("GHZ tensor needs at least 2 indices of dimension at least 2, got ({omega}, {d})")));
    }
    let size = checked_size(&vec![d; omega], DEFAULT_MAX_AMPLITUDES)?;
    let mut data = vec![Eisenstein::ZERO; size];
    let step: usize = (0..omega).map(|i| d.pow(i as u32)).sum();
    for v in 0..d {
        data[v * step] = Eisenstein::ONE;
    }
    Ok(Tensor::from_data(vec![d; omega], data))
}

/// The registered AME representative for a bulk vertex of `degree` legs.
pub fn ame_tensor(degree: usize, d: usize) -> Option<Tensor> {
    match degree {
        2 | 3 => ghz_tensor(degree, d).ok(),
        4 if d == 3 => {
            let mut data = vec![Eisenstein::ZERO; 81];
            for i in 0..3 {
                for j in 0..3 {
                    let (k, l) = ((i + j) % 3, (i + 2 * j) % 3);
                    data[((i * 3 + j) * 3 + k) * 3 + l] = Eisenstein::ONE;
                }
            }
            Some(Tensor::from_data(vec![3; 4], data))
        }
        _ => None,
    }
}

/// Hadamard matrix of order `d`: the real one for `d = 2`, the Fourier
/// matrix `w^(jk)` for `d = 3`.
pub fn hadamard(d: usize, conjugate: bool) -> Result<Vec<Eisenstein>> {
    match d {
        2 => Ok(vec![Eisenstein::ONE, Eisenstein::ONE, Eisenstein::ONE, -Eisenstein::ONE]),
        3 => Ok((0..9u64)
            .map(|idx| {
                let p = (idx / 3) * (idx % 3);
                Eisenstein::omega_pow(if conjugate { 2 * p } else { p })
            })
            .collect()),
        _ => Err(Error::input(format!("no Hadamard matrix of order {d} with Eisenstein entries"))),
    }
}

pub const DEFAULT_MAX_AMPLITUDES: usize = 1 << 26;

fn checked_size(dims: &[usize], limit: usize) -> Result<usize> {
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&s| s <= limit))
        .ok_or_else(|| Error::resource(format!("tensor would exceed {limit} amplitudes")))
}

#[derive(Debug, Clone)]
pub struct StateOptions {
    /// Insert a GHZ pair and Hadamards on 2-edges instead of contracting
    /// their endpoints directly.
    pub explicit_two_edges: bool,
    /// On mismatch, try permuted and phased AME representatives.
    pub basis_search: bool,
    pub max_basis_attempts: usize,
    pub max_amplitudes: usize,
}

impl Default for StateOptions {
    fn default() -> Self {
        StateOptions {
            explicit_two_edges: false,
            basis_search: false,
            max_basis_attempts: 512,
            max_amplitudes: DEFAULT_MAX_AMPLITUDES,
        }
    }
}

/// Local-basis choice for one AME tensor: leg permutation and per-leg
/// diagonal phase exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmeVariant {
    pub permutation: Vec<usize>,
    pub phases: Vec<u64>,
}

/// The state on `n + 1` parties. Party `p` carries the legs listed in
/// `legs[p]` (edge indices of the unit-weight graph, in edge order).
#[derive(Debug, Clone)]
pub struct PartyState {
    pub n: usize,
    /// Local dimension of every leg.
    pub d: usize,
    /// Scale of the unit-weight expansion the state was built from.
    pub scale: Rational,
    pub legs: Vec<Vec<usize>>,
    /// Amplitudes over parties `0..=n`, party 0 most significant.
    pub tensor: Tensor,
}

impl PartyState {
    pub fn party_dims(&self) -> &[usize] {
        &self.tensor.dims
    }

    /// Nonzero amplitudes as `(ket digits per leg, amplitude)`, ascending.
    pub fn kets(&self) -> Vec<(Vec<Vec<usize>>, Eisenstein)> {
        let dims = &self.tensor.dims;
        self.tensor
            .data
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(|(mut idx, z)| {
                let mut per_party = vec![0; dims.len()];
                for p in (0..dims.len()).rev() {
                    per_party[p] = idx % dims[p];
                    idx /= dims[p];
                }
                let digits = per_party
                    .iter()
                    .zip(&self.legs)
                    .map(|(&v, legs)| {
                        let mut out = vec![0; legs.len()];
                        let mut v = v;
                        for slot in out.iter_mut().rev() {
                            *slot = v % self.d;
                            v /= self.d;
                        }
                        out
                    })
                    .collect();
                (digits, *z)
            })
            .collect()
    }

    /// One line per nonzero amplitude: `|digits> amplitude/sqrt(N)`, with
    /// party groups separated by `;`.
    pub fn dump(&self) -> Vec<String> {
        self.kets()
            .into_iter()
            .map(|(digits, z)| {
                let ket: Vec<String> = digits
                    .iter()
                    .map(|leg| leg.iter().map(|d| d.to_string()).collect::<String>())
                    .collect();
                format!("|{}> {}/sqrt({})", ket.join(";"), z, self.tensor.norm)
            })
            .collect()
    }

    pub fn party_labels(&self) -> Vec<String> {
        (0..=self.n).map(|p| party_label(self.n, p)).collect()
    }
}

/// A dense factor over numbered variables.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    dims: Vec<usize>,
    data: Vec<Eisenstein>,
}

impl Factor {
    fn strides(dims: &[usize]) -> Vec<usize> {
        let mut s = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * dims[i + 1];
        }
        s
    }

    fn multiply(&self, other: &Factor, d: usize, limit: usize) -> Result<Factor> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(*v);
            }
        }
        let dims = vec![d; vars.len()];
        let size = checked_size(&dims, limit)?;
        let sa = Factor::strides(&self.dims);
        let sb = Factor::strides(&other.dims);
        // stride of each result variable inside each operand
        let ma: Vec<usize> = vars.iter().map(|v| self.vars.iter().position(|x| x == v).map_or(0, |i| sa[i])).collect();
        let mb: Vec<usize> = vars.iter().map(|v| other.vars.iter().position(|x| x == v).map_or(0, |i| sb[i])).collect();
        let mut data = vec![Eisenstein::ZERO; size];
        let mut digits = vec![0usize; vars.len()];
        let (mut ia, mut ib) = (0usize, 0usize);
        for slot in data.iter_mut() {
            let (x, y) = (self.data[ia], other.data[ib]);
            if !x.is_zero() && !y.is_zero() {
                *slot = x * y;
            }
            // odometer increment
            for pos in (0..digits.len()).rev() {
                digits[pos] += 1;
                ia += ma[pos];
                ib += mb[pos];
                if digits[pos] < d {
                    break;
                }
                digits[pos] = 0;
                ia -= ma[pos] * d;
                ib -= mb[pos] * d;
            }
        }
        Ok(Factor { vars, dims, data })
    }

    fn sum_out(&self, var: usize) -> Factor {
        let Some(pos) = self.vars.iter().position(|&v| v == var) else { return self.clone() };
        let d = self.dims[pos];
        let outer: usize = self.dims[..pos].iter().product();
        let inner: usize = self.dims[pos + 1..].iter().product();
        let mut data = vec![Eisenstein::ZERO; outer * inner];
        for o in 0..outer {
            for k in 0..d {
                let base = (o * d + k) * inner;
                for i in 0..inner {
                    data[o * inner + i] += self.data[base + i];
                }
            }
        }
        let mut vars = self.vars.clone();
        let mut dims = self.dims.clone();
        vars.remove(pos);
        dims.remove(pos);
        Factor { vars, dims, data }
    }
}

/// Contracts all factors, summing out every variable not in `keep`.
fn contract(mut factors: Vec<Factor>, keep: &[usize], d: usize, limit: usize) -> Result<Factor> {
    let internal_only = |factors: &[Factor], skip: &[usize], var: usize| {
        !keep.contains(&var)
            && factors.iter().enumerate().all(|(i, f)| skip.contains(&i) || !f.vars.contains(&var))
    };
    // variables private to a single factor can go right away
    for i in 0..factors.len() {
        let vars = factors[i].vars.clone();
        for v in vars {
            if internal_only(&factors, &[i], v) {
                factors[i] = factors[i].sum_out(v);
            }
        }
    }
    if factors.is_empty() {
        return Ok(Factor { vars: vec![], dims: vec![], data: vec![Eisenstein::ONE] });
    }
    while factors.len() > 1 {
        // cheapest pair by size of the product after summing private variables
        let mut best: Option<(usize, usize, usize, bool)> = None;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let shared = factors[i].vars.iter().any(|v| factors[j].vars.contains(v));
                let mut union: Vec<usize> = factors[i].vars.clone();
                union.extend(factors[j].vars.iter().filter(|v| !factors[i].vars.contains(v)));
                let survivors = union.iter().filter(|&&v| !internal_only(&factors, &[i, j], v)).count();
                let peak = union.len();
                let cost = d.saturating_pow(survivors as u32).saturating_add(d.saturating_pow(peak as u32) / 4);
                let better = match best {
                    None => true,
                    Some((_, _, c, s)) => (shared && !s) || (shared == s && cost < c),
                };
                if better {
                    best = Some((i, j, cost, shared));
                }
            }
        }
        let (i, j, _, _) = best.expect("at least two factors");
        let b = factors.remove(j);
        let a = factors.remove(i);
        let mut merged = a.multiply(&b, d, limit)?;
        let vars = merged.vars.clone();
        for v in vars {
            if internal_only(&factors, &[], v) {
                merged = merged.sum_out(v);
            }
        }
        factors.push(merged);
    }
    Ok(factors.pop().unwrap())
}

struct Network {
    d: usize,
    factors: Vec<Factor>,
    /// Output variable for each leg of each party.
    party_vars: Vec<Vec<usize>>,
    legs: Vec<Vec<usize>>,
    /// Bulk vertices with an AME tensor: (vertex, leg variables).
    ame: Vec<(usize, Vec<usize>)>,
}

fn local_dimension(g: &Hypergraph) -> usize {
    if g.bulk().iter().any(|&v| g.degree(v) == 4) {
        3
    } else {
        2
    }
}

fn build_network(g: &Hypergraph, opts: &StateOptions) -> Result<Network> {
    let d = local_dimension(g);
    let bulk = g.bulk();
    for &v in &bulk {
        let deg = g.degree(v);
        if deg != 0 && ame_tensor(deg, d).is_none() {
            return Err(Error::Registry { vertex: g.vertices()[v].clone(), degree: deg });
        }
    }
    let mut next_var = 0usize;
    let mut fresh = || {
        next_var += 1;
        next_var - 1
    };
    let mut factors = Vec::new();
    let mut ame_legs: BTreeMap<usize, Vec<usize>> = bulk.iter().map(|&v| (v, Vec::new())).collect();
    let mut party_vars = vec![Vec::new(); g.n() + 1];
    let mut legs = vec![Vec::new(); g.n() + 1];
    let h = hadamard(d, false)?;
    let hbar = hadamard(d, true)?;
    for (ei, e) in g.edges().iter().enumerate() {
        if e.weight.is_zero() {
            continue;
        }
        let direct = e.members.len() == 2 && !opts.explicit_two_edges;
        let shared = fresh();
        let mut first_bulk = true;
        for &v in &e.members {
            if let Some(p) = g.party_of(v) {
                party_vars[p].push(shared);
                legs[p].push(ei);
            } else if direct {
                ame_legs.get_mut(&v).unwrap().push(shared);
            } else {
                let a = fresh();
                let m = if first_bulk { &h } else { &hbar };
                first_bulk = false;
                factors.push(Factor { vars: vec![shared, a], dims: vec![d, d], data: m.clone() });
                ame_legs.get_mut(&v).unwrap().push(a);
            }
        }
    }
    let mut ame = Vec::new();
    for (v, vars) in ame_legs {
        if vars.is_empty() {
            continue;
        }
        let t = ame_tensor(vars.len(), d).expect("degree checked above");
        factors.push(Factor { vars: vars.clone(), dims: t.dims, data: t.data });
        ame.push((v, vars));
    }
    Ok(Network { d, factors, party_vars, legs, ame })
}

fn apply_variant(f: &mut Factor, variant: &AmeVariant, d: usize) {
    let k = f.vars.len();
    let strides = Factor::strides(&f.dims);
    let mut data = vec![Eisenstein::ZERO; f.data.len()];
    for (idx, slot) in data.iter_mut().enumerate() {
        let digits: Vec<usize> = (0..k).map(|i| idx / strides[i] % d).collect();
        let src: usize = (0..k).map(|i| digits[variant.permutation[i]] * strides[i]).sum();
        let mut z = f.data[src];
        if z.is_zero() {
            continue;
        }
        for (&phase, &digit) in variant.phases.iter().zip(&digits) {
            let t = phase * digit as u64;
            z = z * if d == 2 {
                if t % 2 == 1 { -Eisenstein::ONE } else { Eisenstein::ONE }
            } else {
                Eisenstein::omega_pow(t)
            };
        }
        *slot = z;
    }
    f.data = data;
}

fn evaluate_network(net: &Network, n: usize, scale: Rational, variants: &[AmeVariant], limit: usize) -> Result<PartyState> {
    let d = net.d;
    let party_dims: Vec<usize> = net.party_vars.iter().map(|v| d.pow(v.len() as u32)).collect();
    let total = checked_size(&party_dims, limit)?;
    let mut factors = net.factors.clone();
    let ame_start = factors.len() - net.ame.len();
    for (i, variant) in variants.iter().enumerate() {
        apply_variant(&mut factors[ame_start + i], variant, d);
    }
    let mut outputs: Vec<usize> = net.party_vars.iter().flatten().copied().collect();
    outputs.sort_unstable();
    outputs.dedup();
    let f = contract(factors, &outputs, d, limit)?;
    let strides = Factor::strides(&f.dims);
    let leg_vars: Vec<usize> = net.party_vars.iter().flatten().copied().collect();
    let fpos: Vec<Option<usize>> = leg_vars.iter().map(|v| f.vars.iter().position(|x| x == v)).collect();
    let mut data = vec![Eisenstein::ZERO; total];
    let mut values: HashMap<usize, usize> = HashMap::new();
    for (idx, slot) in data.iter_mut().enumerate() {
        // leg digits, last leg least significant
        values.clear();
        let mut rem = idx;
        let mut consistent = true;
        let mut fidx = 0;
        for li in (0..leg_vars.len()).rev() {
            let digit = rem % d;
            rem /= d;
            match values.get(&leg_vars[li]) {
                Some(&prev) if prev != digit => {
                    consistent = false;
                    break;
                }
                Some(_) => {}
                None => {
                    values.insert(leg_vars[li], digit);
                    if let Some(p) = fpos[li] {
                        fidx += digit * strides[p];
                    }
                }
            }
        }
        if consistent {
            *slot = f.data[fidx];
        }
    }
    let tensor = Tensor::from_data(party_dims, data);
    if tensor.norm == 0 {
        return Err(Error::Internal("the contracted state vanishes".into()));
    }
    Ok(PartyState { n, d, scale, legs: net.legs.clone(), tensor })
}

fn identity_variants(net: &Network) -> Vec<AmeVariant> {
    net.ame
        .iter()
        .map(|(_, vars)| AmeVariant { permutation: (0..vars.len()).collect(), phases: vec![0; vars.len()] })
        .collect()
}

/// Builds the state of a hypergraph after expanding it to unit weights.
pub fn build_state(graph: &Hypergraph, opts: &StateOptions) -> Result<PartyState> {
    let (scale, g) = expand_to_unit_weights(graph)?;
    let net = build_network(&g, opts)?;
    evaluate_network(&net, g.n(), scale, &identity_variants(&net), opts.max_amplitudes)
}

/// Entropy of one subsystem of a built state.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemEntropy {
    pub subsystem: Subsystem,
    /// Rank of the reduced density matrix.
    pub rank: usize,
    /// All nonzero eigenvalues equal.
    pub flat: bool,
    /// `log_base(rank)` when the spectrum is flat and the rank a power of
    /// the base.
    pub exact: Option<Rational>,
    pub value: f64,
}

/// Sparse Hermitian Gram matrix `M M^dagger` of the reshaped amplitudes,
/// restricted to its nonzero rows.
fn gram(state: &PartyState, rows: u32) -> Vec<HashMap<usize, Eisenstein>> {
    let dims = &state.tensor.dims;
    let parties = dims.len();
    let mut columns: HashMap<usize, Vec<(usize, Eisenstein)>> = HashMap::new();
    for (mut idx, z) in state.tensor.data.iter().enumerate() {
        if z.is_zero() {
            continue;
        }
        let (mut r, mut c, mut rs, mut cs) = (0usize, 0usize, 1usize, 1usize);
        for p in (0..parties).rev() {
            let digit = idx % dims[p];
            idx /= dims[p];
            if rows >> p & 1 == 1 {
                r += digit * rs;
                rs *= dims[p];
            } else {
                c += digit * cs;
                cs *= dims[p];
            }
        }
        columns.entry(c).or_default().push((r, *z));
    }
    let mut row_ids: BTreeMap<usize, usize> = BTreeMap::new();
    for entries in columns.values() {
        for &(r, _) in entries {
            row_ids.entry(r).or_insert(0);
        }
    }
    for (i, slot) in row_ids.values_mut().enumerate() {
        *slot = i;
    }
    let mut g: Vec<HashMap<usize, Eisenstein>> = vec![HashMap::new(); row_ids.len()];
    for entries in columns.values() {
        for &(r1, z1) in entries {
            let i = row_ids[&r1];
            for &(r2, z2) in entries {
                *g[i].entry(row_ids[&r2]).or_insert(Eisenstein::ZERO) += z1 * z2.conj();
            }
        }
    }
    for row in &mut g {
        row.retain(|_, z| !z.is_zero());
    }
    g
}

fn exact_log(rank: usize, base: usize) -> Option<Rational> {
    let mut r = rank;
    let mut m = 0i64;
    while r > 1 && r.is_multiple_of(base) {
        r /= base;
        m += 1;
    }
    (r == 1).then(|| Rational::from_integer(m.into()))
}

/// Spectrum of a Hermitian matrix, in floating point.
fn float_spectrum(g: &[HashMap<usize, Eisenstein>]) -> Vec<f64> {
    use nalgebra::{Complex, DMatrix};
    let n = g.len();
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    for (i, row) in g.iter().enumerate() {
        for (&j, z) in row {
            let (re, im) = z.to_complex();
            m[(i, j)] = Complex::new(re, im);
        }
    }
    m.symmetric_eigenvalues().iter().copied().collect()
}

/// Von Neumann entropy of the parties in `parties` (a mask over `0..=n`,
/// purifier allowed) in units of `log base`.
pub fn reduced_entropy_of_parties(state: &PartyState, parties: u32, base: usize) -> Result<SubsystemEntropy> {
    let full = (1u32 << (state.n + 1)) - 1;
    if parties == 0 || parties & !full != 0 {
        return Err(Error::input("subsystem must be a non-empty set of parties"));
    }
    if base < 2 {
        return Err(Error::input("entropy base must be at least 2"));
    }
    let subsystem = Subsystem(if parties >> state.n & 1 == 1 { full & !parties } else { parties });
    let g = gram(state, parties);
    let trace: i128 = g.iter().enumerate().map(|(i, r)| r.get(&i).map_or(0, |z| z.a)).sum();
    let trace_sq: i128 = g.iter().flat_map(|r| r.values()).map(Eisenstein::norm).sum();
    if trace_sq == 0 {
        return Err(Error::Internal("empty reduced state".into()));
    }
    // flat spectrum iff G^2 = lambda G with lambda = tr(G^2) / tr(G)
    let flat = g.iter().all(|row_i| {
        let mut acc: HashMap<usize, Eisenstein> = HashMap::new();
        for (&k, &gik) in row_i {
            for (&j, &gkj) in &g[k] {
                *acc.entry(j).or_insert(Eisenstein::ZERO) += gik * gkj;
            }
        }
        acc.retain(|_, z| !z.is_zero());
        acc.len() <= row_i.len()
            && row_i.iter().all(|(j, &gij)| acc.get(j).copied().unwrap_or_default().scale(trace) == gij.scale(trace_sq))
            && acc.keys().all(|j| row_i.contains_key(j))
    });
    if flat && (trace * trace) % trace_sq == 0 {
        let rank = (trace * trace / trace_sq) as usize;
        let exact = exact_log(rank, base);
        let value = (rank as f64).ln() / (base as f64).ln();
        return Ok(SubsystemEntropy { subsystem, rank, flat: true, exact, value });
    }
    let eig = float_spectrum(&g);
    let total: f64 = eig.iter().filter(|&&x| x > 0.0).sum();
    let max = eig.iter().cloned().fold(0.0, f64::max);
    let mut value = 0.0;
    let mut rank = 0;
    for &x in &eig {
        if x > max * 1e-10 {
            rank += 1;
            let p = x / total;
            value -= p * p.ln();
        }
    }
    Ok(SubsystemEntropy { subsystem, rank, flat: false, exact: None, value: value / (base as f64).ln() })
}

pub fn reduced_entropy(state: &PartyState, subsystem: Subsystem, base: usize) -> Result<SubsystemEntropy> {
    if subsystem.is_empty() || subsystem.0 >> state.n != 0 {
        return Err(Error::input("subsystem must be a non-empty set of non-purifier parties"));
    }
    // the smaller side gives the smaller Gram matrix; purity makes them equal
    let full = (1u32 << (state.n + 1)) - 1;
    let dims = &state.tensor.dims;
    let dim_of = |mask: u32| (0..dims.len()).filter(|&p| mask >> p & 1 == 1).map(|p| dims[p]).product::<usize>();
    let rows = if dim_of(subsystem.0) <= dim_of(full & !subsystem.0) { subsystem.0 } else { full & !subsystem.0 };
    let mut e = reduced_entropy_of_parties(state, rows, base)?;
    e.subsystem = subsystem;
    Ok(e)
}

#[derive(Debug, Clone)]
pub struct EntropyComparison {
    pub entropy: SubsystemEntropy,
    /// Min-cut entropy of the unit-weight graph.
    pub expected: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct StateReport {
    pub n: usize,
    pub d: usize,
    pub scale: Rational,
    pub amplitudes: usize,
    pub nonzero: usize,
    pub entries: Vec<EntropyComparison>,
    pub all_flat: bool,
    /// Number of alternative AME bases tried before the reported state.
    pub basis_attempts: usize,
    /// The alternative basis that produced the reported state, if any.
    pub basis_fix: Option<Vec<AmeVariant>>,
}

impl StateReport {
    pub fn matched(&self) -> usize {
        self.entries.iter().filter(|e| e.matches).count()
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.entries.len()
    }
}

fn compare(state: &PartyState, expected: &EntropyVector) -> Result<Vec<EntropyComparison>> {
    let index = SubsystemIndex::new(state.n);
    index
        .subsystems()
        .iter()
        .zip(expected.entries())
        .map(|(&s, want)| {
            let entropy = reduced_entropy(state, s, state.d)?;
            let matches = entropy.flat && entropy.exact.as_ref() == Some(want);
            Ok(EntropyComparison { entropy, expected: want.clone(), matches })
        })
        .collect()
}

/// Builds the state and compares all subsystem entropies, in base `D`, with
/// the min-cut entropies of the unit-weight graph.
pub fn verify_state_entropies(graph: &Hypergraph, opts: &StateOptions) -> Result<StateReport> {
    let (scale, g) = expand_to_unit_weights(graph)?;
    let expected = entropy_vector(&g, &MinCutOptions::default())?;
    let net = build_network(&g, opts)?;
    let base_variants = identity_variants(&net);
    let state = evaluate_network(&net, g.n(), scale.clone(), &base_variants, opts.max_amplitudes)?;
    let mut entries = compare(&state, &expected)?;
    let mut chosen = state;
    let mut attempts = 0;
    let mut fix = None;
    if opts.basis_search && !entries.iter().all(|e| e.matches) {
        for variants in basis_candidates(&net, opts.max_basis_attempts) {
            attempts += 1;
            let Ok(candidate) = evaluate_network(&net, g.n(), scale.clone(), &variants, opts.max_amplitudes) else {
                continue;
            };
            let cand_entries = compare(&candidate, &expected)?;
            if cand_entries.iter().all(|e| e.matches) {
                entries = cand_entries;
                chosen = candidate;
                fix = Some(variants);
                break;
            }
        }
    }
    Ok(StateReport {
        n: g.n(),
        d: chosen.d,
        scale,
        amplitudes: chosen.tensor.data.len(),
        nonzero: chosen.tensor.nonzero(),
        all_flat: entries.iter().all(|e| e.entropy.flat),
        entries,
        basis_attempts: attempts,
        basis_fix: fix,
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Alternative AME representatives: leg permutations and diagonal phases,
/// varied one vertex at a time, capped at `limit`.
fn basis_candidates(net: &Network, limit: usize) -> Vec<Vec<AmeVariant>> {
    let base = identity_variants(net);
    let mut out = Vec::new();
    for (i, (_, vars)) in net.ame.iter().enumerate() {
        let k = vars.len();
        if k < 3 {
            continue;
        }
        let phase_count = (net.d as u64).pow(k as u32);
        for perm in permutations(k) {
            for code in 0..phase_count {
                if out.len() >= limit {
                    return out;
                }
                let mut c = code;
                let phases: Vec<u64> = (0..k)
                    .map(|_| {
                        let t = c % net.d as u64;
                        c /= net.d as u64;
                        t
                    })
                    .collect();
                let v = AmeVariant { permutation: perm.clone(), phases };
                if v == base[i] {
                    continue;
                }
                let mut variants = base.clone();
                variants[i] = v;
                out.push(variants);
            }
        }
    }
    out
}
