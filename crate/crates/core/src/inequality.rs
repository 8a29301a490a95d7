//! Linear entropy inequalities `sum_l a_l S(I_l) >= sum_r b_r S(J_r)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::hypergraph::EntropyVector;
use crate::rational::{format_rational, Rational};
use crate::subsystem::{check_party_count, full_mask, Subsystem, SubsystemIndex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub subsystem: Subsystem,
    pub coeff: Rational,
}

impl Term {
    pub fn new(subsystem: Subsystem, coeff: Rational) -> Self {
        Term { subsystem, coeff }
    }

    pub fn unit(subsystem: Subsystem) -> Self {
        Term { subsystem, coeff: Rational::one() }
    }
}

/// An inequality in standard form: strictly positive coefficients and no
/// subsystem repeated within or across sides. Term order is kept as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    n: usize,
    lhs: Vec<Term>,
    rhs: Vec<Term>,
}

/// The inward normal `Q` of an inequality written as `Q . S >= 0`, indexed by
/// canonical subsystem order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QVector {
    n: usize,
    entries: Vec<Rational>,
}

/// Per-party occurrence bit strings of the left side and the expanded right
/// side. Index `n` is the purifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceVectors {
    pub lhs: Vec<BitString>,
    pub rhs: Vec<BitString>,
}

impl QVector {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        check_party_count(n)?;
        let expected = (1usize << n) - 1;
        if entries.len() != expected {
            return Err(Error::Dimension { expected, found: entries.len() });
        }
        Ok(QVector { n, entries })
    }

    pub fn from_integers(n: usize, values: &[i64]) -> Result<Self> {
        QVector::new(n, values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact `Q . S`.
    pub fn evaluate(&self, s: &EntropyVector) -> Result<Rational> {
        if s.n() != self.n {
            return Err(Error::Dimension { expected: self.n, found: s.n() });
        }
        Ok(self.entries.iter().zip(s.entries()).map(|(q, v)| q * v).sum())
    }

    pub fn negated(&self) -> QVector {
        QVector { n: self.n, entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl Inequality {
    pub fn new(n: usize, lhs: Vec<Term>, rhs: Vec<Term>) -> Result<Self> {
        check_party_count(n)?;
        let mut seen = BTreeSet::new();
        for t in lhs.iter().chain(&rhs) {
            if t.subsystem.is_empty() || t.subsystem.0 & !full_mask(n) != 0 {
                return Err(Error::input(format!("term subsystem out of range for n = {n}")));
            }
            if !t.coeff.is_positive() {
                return Err(Error::input("coefficients must be strictly positive"));
            }
            if !seen.insert(t.subsystem) {
                return Err(Error::input(format!(
                    "subsystem {} appears more than once",
                    t.subsystem.label(n)
                )));
            }
        }
        if lhs.is_empty() && rhs.is_empty() {
            return Err(Error::input("trivial inequality: no terms"));
        }
        Ok(Inequality { n, lhs, rhs })
    }

    /// Builds an inequality from a Q-vector: positive entries form the left
    /// side, negative entries the right side, both in canonical order.
    pub fn from_q(q: &QVector) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::input("the zero vector is not an inequality"));
        }
        let index = SubsystemIndex::new(q.n);
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (s, c) in index.subsystems().iter().zip(&q.entries) {
            if c.is_positive() {
                lhs.push(Term::new(*s, c.clone()));
            } else if c.is_negative() {
                rhs.push(Term::new(*s, -c));
            }
        }
        Inequality::new(q.n, lhs, rhs)
    }

    /// Collects signed coefficients into standard form, cancelling where
    /// possible. Terms come out in canonical order.
    pub fn from_coefficients(n: usize, coeffs: &BTreeMap<Subsystem, Rational>) -> Result<Self> {
        let index = SubsystemIndex::new(n);
        let mut entries = vec![Rational::zero(); index.len()];
        for (s, c) in coeffs {
            let pos = index
                .position(*s)
                .ok_or_else(|| Error::input(format!("subsystem out of range for n = {n}")))?;
            entries[pos] += c;
        }
        let q = QVector::new(n, entries)?;
        if q.is_zero() {
            return Err(Error::input("trivial inequality: all terms cancel"));
        }
        Inequality::from_q(&q)
    }

    pub fn to_q(&self) -> QVector {
        let index = SubsystemIndex::new(self.n);
        let mut entries = vec![Rational::zero(); index.len()];
        for t in &self.lhs {
            entries[index.position(t.subsystem).unwrap()] += &t.coeff;
        }
        for t in &self.rhs {
            entries[index.position(t.subsystem).unwrap()] -= &t.coeff;
        }
        QVector { n: self.n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lhs(&self) -> &[Term] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[Term] {
        &self.rhs
    }

    /// Number of left-side terms.
    pub fn l(&self) -> usize {
        self.lhs.len()
    }

    /// Number of right-side terms.
    pub fn r(&self) -> usize {
        self.rhs.len()
    }

    pub fn alpha_total(&self) -> Rational {
        self.lhs.iter().map(|t| &t.coeff).sum()
    }

    pub fn beta_total(&self) -> Rational {
        self.rhs.iter().map(|t| &t.coeff).sum()
    }

    pub fn lhs_weights(&self) -> Vec<Rational> {
        self.lhs.iter().map(|t| t.coeff.clone()).collect()
    }

    pub fn evaluate(&self, s: &EntropyVector) -> Result<Rational> {
        self.to_q().evaluate(s)
    }

    /// Swaps sides, giving the reverse inequality.
    pub fn negated(&self) -> Inequality {
        Inequality { n: self.n, lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    /// Replaces each right-side term of integer coefficient `b` by `b`
    /// adjacent unit copies.
    pub fn expand_rhs(&self) -> Result<Inequality> {
        let mut rhs = Vec::new();
        for t in &self.rhs {
            if !t.coeff.is_integer() {
                return Err(Error::input(format!(
                    "right-side coefficient {} is not an integer",
                    format_rational(&t.coeff)
                )));
            }
            let copies = t.coeff.to_integer().to_usize().filter(|&c| c <= 64).ok_or_else(|| {
                Error::input("right-side coefficient too large to expand")
            })?;
            rhs.extend(std::iter::repeat_n(Term::unit(t.subsystem), copies));
        }
        Ok(Inequality { n: self.n, lhs: self.lhs.clone(), rhs })
    }

    /// Occurrence bit strings with the first term as most significant bit.
    /// The right side is expanded first.
    pub fn occurrence_vectors(&self) -> Result<OccurrenceVectors> {
        let expanded = self.expand_rhs()?;
        let strings = |terms: &[Term], party: usize| {
            let bits: Vec<bool> = terms.iter().map(|t| t.subsystem.contains(party)).collect();
            BitString::from_bits(&bits)
        };
        let mut lhs = Vec::with_capacity(self.n + 1);
        let mut rhs = Vec::with_capacity(self.n + 1);
        for p in 0..=self.n {
            lhs.push(strings(&expanded.lhs, p)?);
            rhs.push(strings(&expanded.rhs, p)?);
        }
        Ok(OccurrenceVectors { lhs, rhs })
    }

    /// Exchanges the roles of `party` and the purifier. A subsystem `I`
    /// containing `party` becomes its purity partner `([n] \ I) + party`.
    pub fn purify(&self, party: usize) -> Result<Inequality> {
        if party >= self.n {
            return Err(Error::input(format!("party {party} out of range")));
        }
        let swap = |s: Subsystem| {
            if s.contains(party) {
                Subsystem(s.complement(self.n).0 | 1 << party)
            } else {
                s
            }
        };
        self.relabelled(swap)
    }

    /// Applies a subsystem map and renormalizes; dropped terms map to the
    /// empty subsystem.
    fn relabelled(&self, f: impl Fn(Subsystem) -> Subsystem) -> Result<Inequality> {
        let mut coeffs = BTreeMap::new();
        for t in &self.lhs {
            let s = f(t.subsystem);
            if !s.is_empty() {
                *coeffs.entry(s).or_insert_with(Rational::zero) += &t.coeff;
            }
        }
        for t in &self.rhs {
            let s = f(t.subsystem);
            if !s.is_empty() {
                *coeffs.entry(s).or_insert_with(Rational::zero) -= &t.coeff;
            }
        }
        Inequality::from_coefficients(self.n, &coeffs)
    }

    /// All distinct non-trivial instances on `n` parties obtained by
    /// assigning each of the `n + 1` target parties (purifier included) to
    /// one of this inequality's parties, every party receiving at least one. Terms touching the target purifier
    /// are replaced by their purity partners.
    pub fn instances_in(&self, n: usize) -> Result<Vec<Inequality>> {
        check_party_count(n)?;
        let m = self.n;
        let slots = m + 1;
        let total = (slots as u64).checked_pow(n as u32 + 1).filter(|&t| t <= 1 << 22).ok_or_else(|| {
            Error::resource("too many party assignments to enumerate")
        })?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut assign = vec![0usize; n + 1];
        for code in 0..total {
            let mut c = code;
            for a in assign.iter_mut() {
                *a = (c % slots as u64) as usize;
                c /= slots as u64;
            }
            if (0..slots).any(|src| !assign.contains(&src)) {
                continue;
            }
            let image = |s: Subsystem| {
                let pre = (0..=n).filter(|&t| s.contains(assign[t])).fold(0u32, |acc, t| acc | 1 << t);
                if pre >> n & 1 == 1 {
                    Subsystem(full_mask(n + 1) & !pre)
                } else {
                    Subsystem(pre)
                }
            };
            let mut coeffs = BTreeMap::new();
            for t in &self.lhs {
                let s = image(t.subsystem);
                if !s.is_empty() {
                    *coeffs.entry(s).or_insert_with(Rational::zero) += &t.coeff;
                }
            }
            for t in &self.rhs {
                let s = image(t.subsystem);
                if !s.is_empty() {
                    *coeffs.entry(s).or_insert_with(Rational::zero) -= &t.coeff;
                }
            }
            if let Ok(ineq) = Inequality::from_coefficients(n, &coeffs) {
                if seen.insert(ineq.to_q().entries.clone()) {
                    out.push(ineq);
                }
            }
        }
        Ok(out)
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, n: usize, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        if !t.coeff.is_one() {
            write!(f, "{}*", format_rational(&t.coeff))?;
        }
        write!(f, "S({})", t.subsystem.label(n))?;
    }
    Ok(())
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, self.n, &self.lhs)?;
        f.write_str(" >= ")?;
        write_side(f, self.n, &self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ssa() -> Inequality {
        let s = |t: &str| Term::unit(Subsystem::parse(t, 3).unwrap());
        Inequality::new(3, vec![s("AB"), s("BC")], vec![s("B"), s("ABC")]).unwrap()
    }

    #[test]
    fn q_round_trip() {
        let q = ssa().to_q();
        let back = Inequality::from_q(&q).unwrap();
        assert_eq!(back, ssa());
        assert_eq!(back.to_q(), q);
        let neg = Inequality::from_q(&q.negated()).unwrap();
        assert_eq!(neg.lhs(), ssa().rhs());
        assert!(Inequality::from_q(&QVector::from_integers(2, &[0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn ssa_occurrence_vectors() {
        let occ = ssa().occurrence_vectors().unwrap();
        let s: Vec<String> = occ.lhs.iter().map(|b| b.to_string()).collect();
        assert_eq!(s, ["10", "11", "01", "00"]);
        let s: Vec<String> = occ.rhs.iter().map(|b| b.to_string()).collect();
        assert_eq!(s, ["01", "11", "01", "00"]);
    }

    #[test]
    fn expand_rhs_makes_adjacent_copies() {
        let a = Subsystem::parse("A", 2).unwrap();
        let b = Subsystem::parse("B", 2).unwrap();
        let ineq = Inequality::new(2, vec![Term::new(b, int(3))], vec![Term::new(a, int(3))]).unwrap();
        let e = ineq.expand_rhs().unwrap();
        assert_eq!(e.r(), 3);
        assert!(e.rhs().iter().all(|t| t.subsystem == a && t.coeff == int(1)));
        let half = Inequality::new(2, vec![Term::unit(b)], vec![Term::new(a, Rational::new(1.into(), 2.into()))]).unwrap();
        assert!(half.expand_rhs().is_err());
    }

    #[test]
    fn evaluation_is_exact() {
        let q = ssa().to_q();
        assert_eq!(q.evaluate(&EntropyVector::zeros(3)).unwrap(), int(0));
        let ones = EntropyVector::from_integers(3, &[1; 7]).unwrap();
        assert_eq!(q.evaluate(&ones).unwrap(), int(0));
        assert!(q.evaluate(&EntropyVector::zeros(2)).is_err());
    }

    #[test]
    fn purify_is_an_involution() {
        let ineq = ssa();
        for p in 0..3 {
            let twice = ineq.purify(p).unwrap().purify(p).unwrap();
            assert_eq!(twice.to_q(), ineq.to_q());
        }
        // exchanging B with the purifier leaves strong subadditivity intact
        assert_eq!(ineq.purify(1).unwrap(), ineq);
        assert_eq!(ineq.purify(0).unwrap().to_string(), "S(AC) + S(BC) >= S(A) + S(B)");
    }

    #[test]
    fn instances_of_subadditivity() {
        let s = |t: &str| Term::unit(Subsystem::parse(t, 2).unwrap());
        let sa = Inequality::new(2, vec![s("A"), s("B")], vec![s("AB")]).unwrap();
        let inst = sa.instances_in(2).unwrap();
        // S(A)+S(B)>=S(AB), S(A)+S(AB)>=S(B), S(B)+S(AB)>=S(A)
        assert_eq!(inst.len(), 3);
        assert!(inst.iter().any(|i| i.to_q() == sa.to_q()));
    }
}
