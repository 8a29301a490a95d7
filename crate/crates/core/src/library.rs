//! Built-in inequalities and their contraction maps.
//!
//! Besides subadditivity, strong subadditivity, monogamy of mutual
//! information and the Ingleton inequality, the library carries the 24
//! five-party inequalities `Q1..Q24` with their published contraction maps
//! and proof-status rows.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::contraction::{decode_f10, ContractionMap};
use crate::inequality::{Inequality, QVector, Term};
use crate::parser::parse_inequality;
use crate::subsystem::Subsystem;

const APPENDIX_MAPS: &str = include_str!("../data/appendix_maps.json");

/// The published summary row: term counts, coefficient totals and the
/// highest rank at which the map was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub l: usize,
    pub r: usize,
    pub alpha_t: u64,
    pub beta_t: u64,
    pub checked_k: usize,
}

#[derive(Debug, Clone)]
pub struct LibraryEntry {
    pub name: String,
    /// Terms in the order the map's bit columns refer to.
    pub inequality: Inequality,
    pub map: Option<ContractionMap>,
    pub table: Option<TableRow>,
}

impl LibraryEntry {
    pub fn q(&self) -> QVector {
        self.inequality.to_q()
    }
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    q: Vec<i64>,
    f10: Vec<u64>,
}

/// Rows of the published summary table for `Q1..Q24`, as printed.
const TABLE: [(usize, usize, u64, u64, usize); 24] = [
    (6, 6, 6, 6, 6),
    (6, 6, 6, 6, 6),
    (6, 6, 6, 6, 6),
    (6, 7, 8, 8, 7),
    (7, 7, 8, 8, 7),
    (7, 7, 7, 7, 7),
    (7, 7, 7, 7, 7),
    (7, 7, 8, 8, 7),
    (7, 7, 7, 7, 7),
    (6, 7, 8, 8, 7),
    (7, 7, 7, 7, 7),
    (7, 8, 10, 10, 6),
    (8, 8, 9, 9, 6),
    (8, 8, 8, 8, 6),
    (9, 8, 10, 10, 6),
    (8, 8, 8, 8, 6),
    (7, 8, 10, 10, 6),
    (8, 8, 8, 8, 6),
    (8, 8, 9, 9, 6),
    (9, 8, 10, 10, 6),
    (9, 9, 13, 13, 4),
    (7, 9, 10, 10, 4),
    (9, 9, 13, 13, 4),
    (7, 9, 10, 10, 4),
];

const INGLETON_F10: [u64; 32] = [
    0, 1, 2, 3, 1, 5, 0, 1, 2, 0, 6, 2, 3, 1, 2, 0, 1, 3, 3, 11, 3, 1, 1, 3, 3, 1, 2, 3, 19, 3, 3, 1,
];

/// The monogamy map as published lists its domain columns as `AB, BC, AC`;
/// entry `t` below is the image of that column order.
const MMI_PUBLISHED: [u64; 8] = [0b0000, 0b0001, 0b0001, 0b0011, 0b0001, 0b1001, 0b0101, 0b0001];

fn terms(n: usize, labels: &[&str]) -> Vec<Term> {
    labels.iter().map(|l| Term::unit(Subsystem::parse(l, n).expect("built-in label"))).collect()
}

fn build() -> Vec<LibraryEntry> {
    let mut out = Vec::with_capacity(28);

    let sa = Inequality::new(2, terms(2, &["A", "B"]), terms(2, &["AB"])).unwrap();
    out.push(LibraryEntry {
        name: "SA".into(),
        map: Some(decode_f10(&[0, 1, 1, 1], 2, 1).unwrap()),
        inequality: sa,
        table: None,
    });

    let ssa = Inequality::new(3, terms(3, &["AB", "BC"]), terms(3, &["B", "ABC"])).unwrap();
    out.push(LibraryEntry {
        name: "SSA".into(),
        map: Some(decode_f10(&[0, 1, 1, 3], 2, 2).unwrap()),
        inequality: ssa,
        table: None,
    });

    // Canonical domain bits are (AB, AC, BC); the published order swaps the
    // last two.
    let mmi_images: Vec<u64> = (0..8u64)
        .map(|c| {
            let (ab, ac, bc) = (c >> 2 & 1, c >> 1 & 1, c & 1);
            MMI_PUBLISHED[(ab << 2 | bc << 1 | ac) as usize]
        })
        .collect();
    let mmi = Inequality::new(3, terms(3, &["AB", "AC", "BC"]), terms(3, &["A", "B", "C", "ABC"])).unwrap();
    out.push(LibraryEntry {
        name: "MMI".into(),
        map: Some(decode_f10(&mmi_images, 3, 4).unwrap()),
        inequality: mmi,
        table: None,
    });

    let ingleton = parse_inequality("I(A:B|C) + I(A:B|D) + I(C:D) - I(A:B) >= 0", 4).unwrap();
    out.push(LibraryEntry {
        name: "Ingleton".into(),
        map: Some(decode_f10(&INGLETON_F10, 5, 5).unwrap()),
        inequality: ingleton,
        table: None,
    });

    let raw: Vec<RawEntry> = serde_json::from_str(APPENDIX_MAPS).expect("embedded map data");
    for (entry, row) in raw.into_iter().zip(TABLE) {
        let q = QVector::from_integers(5, &entry.q).expect("embedded q-vector");
        let ineq = Inequality::from_q(&q).expect("embedded q-vector");
        let l = ineq.l();
        let rp = ineq.expand_rhs().expect("integer coefficients").r();
        let map = decode_f10(&entry.f10, l, rp).expect("embedded map");
        out.push(LibraryEntry {
            name: entry.name,
            inequality: ineq,
            map: Some(map),
            table: Some(TableRow { l: row.0, r: row.1, alpha_t: row.2, beta_t: row.3, checked_k: row.4 }),
        });
    }
    out
}

pub fn builtin_library() -> &'static [LibraryEntry] {
    static LIB: OnceLock<Vec<LibraryEntry>> = OnceLock::new();
    LIB.get_or_init(build)
}

/// Case-insensitive lookup by name.
pub fn find_builtin(name: &str) -> Option<&'static LibraryEntry> {
    builtin_library().iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn library_has_all_entries() {
        assert_eq!(builtin_library().len(), 28);
        assert!(find_builtin("ingleton").is_some());
        assert!(find_builtin("Q24").is_some());
        assert!(find_builtin("Q25").is_none());
    }

    #[test]
    fn q1_vector_and_counts() {
        let q1 = find_builtin("Q1").unwrap();
        let q = q1.q();
        let head: Vec<_> = q.entries()[..8].to_vec();
        let expect: Vec<_> = [0, -1, 0, -1, 0, 1, -1, 1].iter().map(|&v| int(v)).collect();
        assert_eq!(head, expect);
        let i = &q1.inequality;
        assert_eq!((i.l(), i.r()), (6, 6));
        assert_eq!((i.alpha_total(), i.beta_total()), (int(6), int(6)));
    }

    #[test]
    fn ingleton_map_sends_a_to_19() {
        let e = find_builtin("Ingleton").unwrap();
        let occ = e.inequality.occurrence_vectors().unwrap();
        assert_eq!(occ.lhs[0].to_string(), "11100");
        assert_eq!(occ.rhs[0].to_string(), "10011");
        assert_eq!(e.map.as_ref().unwrap().images()[0b11100], 19);
    }

    #[test]
    fn maps_fix_occurrence_vectors() {
        for e in builtin_library() {
            let map = e.map.as_ref().unwrap();
            let occ = e.inequality.occurrence_vectors().unwrap();
            for (x, y) in occ.lhs.iter().zip(&occ.rhs) {
                assert_eq!(map.image(x), *y, "{}", e.name);
            }
        }
    }
}
