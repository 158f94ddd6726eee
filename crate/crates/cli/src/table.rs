//! The static reference table of triples `a < b < c <= 30` left open at `mu_cap = 14`.
//!
//! Markers are reference data shipped with the tool; nothing here is computed.

use std::fmt;

const TABLE: &str = include_str!("../fixtures/reference_table.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Marker {
    None,
    /// Known not to be a Mori dream surface.
    Star,
    /// Expected to be a Mori dream surface.
    Bullet,
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marker::None => "",
            Marker::Star => "star",
            Marker::Bullet => "bullet",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableRow {
    pub triple: [u64; 3],
    pub marker: Marker,
}

/// All rows in `(a, b, c)` order.
pub fn reference_rows() -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let mut t = [0u64; 3];
            for x in &mut t {
                *x = it.next().and_then(|s| s.parse().ok()).expect("malformed table row");
            }
            let marker = match it.next() {
                None => Marker::None,
                Some("star") => Marker::Star,
                Some("bullet") => Marker::Bullet,
                Some(other) => panic!("unknown table marker {other}"),
            };
            TableRow { triple: t, marker }
        })
        .collect();
    rows.sort();
    rows
}

/// Rows inside a scan range.
pub fn reference_triples(a_min: u64, c_max: u64) -> Vec<[u64; 3]> {
    reference_rows()
        .into_iter()
        .map(|r| r.triple)
        .filter(|t| t[0] >= a_min && t[2] <= c_max)
        .collect()
}

pub fn marker_of(triple: [u64; 3]) -> Option<Marker> {
    reference_rows().into_iter().find(|r| r.triple == triple).map(|r| r.marker)
}

/// Table layout for a list of inconclusive triples: `a b c inconclusive [reference marker]`.
pub fn render(inconclusive: &[[u64; 3]]) -> String {
    let mut s = String::from("# a b c status reference (reference markers are static data, not computed)\n");
    for &t in inconclusive {
        let reference = match marker_of(t) {
            Some(Marker::None) => "listed".to_string(),
            Some(m) => format!("listed {m}"),
            None => "unlisted".to_string(),
        };
        s += &format!("{} {} {} inconclusive {reference}\n", t[0], t[1], t[2]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let rows = reference_rows();
        assert_eq!(rows.len(), 119);
        assert_eq!(rows.iter().filter(|r| r.marker == Marker::Star).count(), 37);
        assert_eq!(rows.iter().filter(|r| r.marker == Marker::Bullet).count(), 4);
        assert_eq!(reference_triples(1, 13), vec![[9, 10, 13]]);
        assert_eq!(marker_of([7, 10, 19]), Some(Marker::Bullet));
    }
}
