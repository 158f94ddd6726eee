//! Lattice reductions from Losev–Manin fans to weighted projective planes.
//!
//! A reduction consists of a sublattice `N' ⊆ Z^{n-3}` spanned by fan generators (vectors
//! with all entries in `{0, 1}` or all in `{0, -1}`), three further generators
//! `v_1, v_2, v_3`, and weights `(a, b, c)`. It is valid when `N'` is saturated of rank
//! `n - 5`, the images of the `v_i` generate `N / N' ≅ Z^2`, and `a v_1 + b v_2 + c v_3 ∈ N'`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::weights::WeightTriple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReduction {
    pub n: usize,
    /// Generators of `N'`.
    pub kernel: Vec<Vec<i64>>,
    pub v: [Vec<i64>; 3],
    pub weights: Option<WeightTriple>,
    /// Optional map `Z^{n-3} -> Z^2` expected to vanish on `N'`.
    pub projection: Option<[Vec<i64>; 2]>,
}

/// Images of `v_1, v_2, v_3` in `N / N' ≅ Z^2`, with the basis change that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientImages {
    /// Column `i` is the image of `v_i`.
    pub columns: [[i64; 2]; 3],
    /// Unimodular `V` with `SNF = U K V`; quotient coordinates of `x` are the last two
    /// entries of `x V`.
    pub change_of_basis: IntMatrix,
}

impl QuotientImages {
    pub fn rows(&self) -> [[i64; 3]; 2] {
        let c = &self.columns;
        [[c[0][0], c[1][0], c[2][0]], [c[0][1], c[1][1], c[2][1]]]
    }

    /// `a w_1 + b w_2 + c w_3`.
    pub fn combination(&self, coeffs: [i64; 3]) -> [i64; 2] {
        let mut out = [0i64; 2];
        for (w, k) in self.columns.iter().zip(coeffs) {
            out[0] += k * w[0];
            out[1] += k * w[1];
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub valid: bool,
    /// First failed condition.
    pub failure: Option<String>,
    pub images: Option<QuotientImages>,
    pub invariant_factors: Vec<i64>,
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        if let Some(msg) = &self.failure {
            writeln!(f, "failure: {msg}")?;
        }
        let inv: Vec<String> = self.invariant_factors.iter().map(i64::to_string).collect();
        writeln!(f, "invariant factors: {}", inv.join(" "))?;
        if let Some(img) = &self.images {
            writeln!(f, "images:")?;
            for row in img.rows() {
                writeln!(f, "{} {} {}", row[0], row[1], row[2])?;
            }
            writeln!(f, "change of basis:")?;
            for row in &img.change_of_basis {
                let r: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(f, "{}", r.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Whether `v` has all entries in `{0, 1}` or all in `{0, -1}`.
pub fn is_fan_generator(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0 || x == 1) || v.iter().all(|&x| x == 0 || x == -1)
}

impl LatticeReduction {
    fn validate(&self) -> Result<()> {
        if self.n < 6 {
            return Err(Error::InvalidInput(format!("n = {} must be at least 6", self.n)));
        }
        let dim = self.n - 3;
        let all = self.kernel.iter().chain(self.v.iter());
        for v in all {
            if v.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "vector {v:?} has length {}, expected {dim}",
                    v.len()
                )));
            }
            if !is_fan_generator(v) {
                return Err(Error::InvalidInput(format!(
                    "vector {v:?} is not of the form ±p with p in {{0,1}}^{dim}"
                )));
            }
        }
        if let Some(p) = &self.projection {
            if p.iter().any(|row| row.len() != dim) {
                return Err(Error::InvalidInput("projection rows have the wrong length".into()));
            }
        }
        Ok(())
    }

    /// Parses the reduction format: sections `kernel:`, `v:` (three vectors), optional
    /// `weights:` and `projection:` (two rows), one vector per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: Vec<(String, Vec<Vec<i64>>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_suffix(':') {
                sections.push((name.trim().to_string(), Vec::new()));
                continue;
            }
            let (name, rest) = match line.split_once(':') {
                Some((name, rest)) => (Some(name.trim().to_string()), rest),
                None => (None, line),
            };
            let row: Vec<i64> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("line {}: bad integer {t:?}", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            match name {
                Some(name) => sections.push((name, vec![row])),
                None => match sections.last_mut() {
                    Some((_, rows)) => rows.push(row),
                    None => {
                        return Err(Error::Parse(format!(
                            "line {}: vector outside of a section",
                            lineno + 1
                        )))
                    }
                },
            }
        }
        let take = |name: &str| sections.iter().find(|(n, _)| n == name).map(|(_, r)| r.clone());
        for (name, _) in &sections {
            if !["kernel", "v", "weights", "projection", "n"].contains(&name.as_str()) {
                return Err(Error::Parse(format!("unknown section {name:?}")));
            }
        }
        let kernel = take("kernel").ok_or_else(|| Error::Parse("missing kernel: section".into()))?;
        let v = take("v").ok_or_else(|| Error::Parse("missing v: section".into()))?;
        let v: [Vec<i64>; 3] = v
            .try_into()
            .map_err(|_| Error::Parse("v: section needs exactly three vectors".into()))?;
        let weights = match take("weights") {
            None => None,
            Some(rows) => {
                let flat: Vec<i64> = rows.concat();
                if flat.len() != 3 || flat.iter().any(|&x| x <= 0) {
                    return Err(Error::Parse("weights: needs three positive integers".into()));
                }
                Some(WeightTriple::new(flat[0] as u64, flat[1] as u64, flat[2] as u64)?)
            }
        };
        let projection = match take("projection") {
            None => None,
            Some(rows) => Some(
                <[Vec<i64>; 2]>::try_from(rows)
                    .map_err(|_| Error::Parse("projection: needs exactly two rows".into()))?,
            ),
        };
        let n = match take("n") {
            Some(rows) => match rows.concat().as_slice() {
                [n] if *n >= 0 => *n as usize,
                _ => return Err(Error::Parse("n: needs one integer".into())),
            },
            None => v[0].len() + 3,
        };
        let r = Self {
            n,
            kernel,
            v,
            weights,
            projection,
        };
        r.validate()?;
        Ok(r)
    }
}

impl fmt::Display for LatticeReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "kernel:")?;
        for k in &self.kernel {
            writeln!(f, "{}", row(k))?;
        }
        writeln!(f, "v:")?;
        for v in &self.v {
            writeln!(f, "{}", row(v))?;
        }
        if let Some(w) = &self.weights {
            writeln!(f, "weights: {} {} {}", w.a(), w.b(), w.c())?;
        }
        if let Some(p) = &self.projection {
            writeln!(f, "projection:")?;
            for r in p {
                writeln!(f, "{}", row(r))?;
            }
        }
        Ok(())
    }
}

fn row_times(x: &[i64], m: &IntMatrix) -> Result<Vec<i64>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            x.iter().zip(m).try_fold(0i64, |acc, (&xi, row)| {
                xi.checked_mul(row[j])
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(Error::Overflow("quotient images"))
            })
        })
        .collect()
}

/// Greatest common divisor of the 2x2 minors of a 2x3 matrix given by columns.
fn minor_gcd(cols: &[[i64; 2]; 3]) -> i64 {
    let det = |i: usize, j: usize| cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0];
    det(0, 1).gcd(&det(0, 2)).gcd(&det(1, 2))
}

/// Images of the `v_i` in `N / N'` through the Smith normal form of the kernel generators.
/// Requires `N'` saturated of rank `n - 5`.
pub fn quotient_images(r: &LatticeReduction) -> Result<QuotientImages> {
    r.validate()?;
    let dim = r.n - 3;
    let snf = smith_normal_form(&r.kernel)?;
    if snf.rank != dim - 2 {
        return Err(Error::InvalidInput(format!(
            "kernel generators have rank {}, not n - 5 = {}",
            snf.rank,
            dim - 2
        )));
    }
    if snf.diagonal.iter().take(snf.rank).any(|&d| d != 1) {
        return Err(Error::InvalidInput("sublattice is not saturated".into()));
    }
    let mut columns = [[0i64; 2]; 3];
    for (i, v) in r.v.iter().enumerate() {
        let y = row_times(v, &snf.v)?;
        columns[i] = [y[dim - 2], y[dim - 1]];
    }
    Ok(QuotientImages {
        columns,
        change_of_basis: snf.v,
    })
}

/// Checks the three conditions, naming the first one that fails.
pub fn verify_reduction(r: &LatticeReduction) -> Result<ReductionReport> {
    r.validate()?;
    let dim = r.n - 3;
    let snf = smith_normal_form(&r.kernel)?;
    let invariant_factors: Vec<i64> = snf.diagonal.iter().take(snf.rank).copied().collect();
    let mut report = ReductionReport {
        valid: false,
        failure: None,
        images: None,
        invariant_factors,
    };
    if snf.rank != dim - 2 {
        report.failure = Some(format!("not rank n-5: kernel generators have rank {}", snf.rank));
        return Ok(report);
    }
    if report.invariant_factors.iter().any(|&d| d != 1) {
        report.failure = Some(format!(
            "sublattice not saturated: invariant factors {:?}",
            report.invariant_factors
        ));
        return Ok(report);
    }
    if let Some(p) = &r.projection {
        for k in &r.kernel {
            let image: Vec<i64> = p.iter().map(|row| row.iter().zip(k).map(|(a, b)| a * b).sum()).collect();
            if image.iter().any(|&x| x != 0) {
                report.failure = Some(format!("projection does not vanish on {k:?}"));
                return Ok(report);
            }
        }
    }
    let images = quotient_images(r)?;
    let g = minor_gcd(&images.columns);
    report.images = Some(images.clone());
    if g.abs() != 1 {
        report.failure = Some(format!(
            "images of v1, v2, v3 do not generate N/N' (2x2 minors have gcd {g})"
        ));
        return Ok(report);
    }
    if let Some(w) = &r.weights {
        let coeffs = w.as_array().map(|x| x as i64);
        let sum = images.combination(coeffs);
        if sum != [0, 0] {
            report.failure = Some(format!(
                "congruence fails: {}*w1 + {}*w2 + {}*w3 = {sum:?}",
                coeffs[0], coeffs[1], coeffs[2]
            ));
            return Ok(report);
        }
    } else {
        report.failure = Some("no weights given".into());
        return Ok(report);
    }
    report.valid = true;
    Ok(report)
}

/// Whether `target = U w` for some `U` in `GL_2(Z)`.
pub fn unimodularly_equivalent(w: &[[i64; 2]; 3], target: &[[i64; 2]; 3]) -> bool {
    // Use the first pair of columns of `w` with nonzero determinant.
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let det = w[i][0] * w[j][1] - w[j][0] * w[i][1];
        if det == 0 {
            continue;
        }
        // U = T * W_ij^{-1}, with W_ij^{-1} = adj / det.
        let adj = [[w[j][1], -w[j][0]], [-w[i][1], w[i][0]]];
        let t = [[target[i][0], target[j][0]], [target[i][1], target[j][1]]];
        let mut u = [[0i64; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                let num = t[r][0] * adj[0][c] + t[r][1] * adj[1][c];
                if num % det != 0 {
                    return false;
                }
                u[r][c] = num / det;
            }
        }
        if (u[0][0] * u[1][1] - u[0][1] * u[1][0]).abs() != 1 {
            return false;
        }
        return (0..3).all(|k| {
            let col = [
                u[0][0] * w[k][0] + u[0][1] * w[k][1],
                u[1][0] * w[k][0] + u[1][1] * w[k][1],
            ];
            col == target[k]
        });
    }
    false
}

/// Pairwise coprime positive `(a, b, c)` with `a w_1 + b w_2 + c w_3 = 0` and entries at most
/// `bound`, in the order of `v_1, v_2, v_3`.
pub fn search_weights(r: &LatticeReduction, bound: u64) -> Result<Vec<[u64; 3]>> {
    let img = quotient_images(r)?;
    Ok(positive_kernel_triples(&img.columns, bound))
}

/// The kernel of a 2x3 integer matrix intersected with the pairwise coprime positive triples.
pub fn positive_kernel_triples(cols: &[[i64; 2]; 3], bound: u64) -> Vec<[u64; 3]> {
    let [r0, r1] = [
        [cols[0][0], cols[1][0], cols[2][0]],
        [cols[0][1], cols[1][1], cols[2][1]],
    ];
    let cross = [
        r0[1] * r1[2] - r0[2] * r1[1],
        r0[2] * r1[0] - r0[0] * r1[2],
        r0[0] * r1[1] - r0[1] * r1[0],
    ];
    let g = cross[0].gcd(&cross[1]).gcd(&cross[2]);
    if g == 0 {
        return Vec::new();
    }
    let mut k = cross.map(|x| x / g);
    if k.iter().all(|&x| x < 0) {
        k = k.map(|x| -x);
    }
    if k.iter().any(|&x| x <= 0) {
        return Vec::new();
    }
    let k = k.map(|x| x as u64);
    let mut out = Vec::new();
    let mut lambda = 1;
    while k.iter().all(|&x| x * lambda <= bound) {
        let t = k.map(|x| x * lambda);
        if t[0].gcd(&t[1]) == 1 && t[0].gcd(&t[2]) == 1 && t[1].gcd(&t[2]) == 1 {
            out.push(t);
        }
        lambda += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const N10: &str = "\
kernel:
1 1 0 1 0 1 0
1 1 0 0 1 0 1
-1 0 0 -1 0 -1 -1
0 0 0 0 1 1 0
0 -1 -1 -1 0 -1 -1
v:
0 0 0 -1 -1 0 0
-1 0 -1 0 0 -1 0
1 0 1 1 1 0 0
weights: 17 13 12
projection:
1 0 1 -2 -1 1 0
0 1 -1 -3 -2 2 1
";

    const EXPECTED_IMAGES: [[i64; 2]; 3] = [[3, 5], [-3, -1], [-1, -6]];

    #[test]
    fn n10_reduction() {
        let r = LatticeReduction::parse(N10).unwrap();
        assert_eq!(r.n, 10);
        let rep = verify_reduction(&r).unwrap();
        assert!(rep.valid, "{rep}");
        let img = rep.images.unwrap();
        assert!(unimodularly_equivalent(&img.columns, &EXPECTED_IMAGES));
        assert_eq!(img.combination([17, 13, 12]), [0, 0]);
        assert!(search_weights(&r, 20).unwrap().contains(&[17, 13, 12]));
    }

    #[test]
    fn expected_images_identity() {
        let q = QuotientImages {
            columns: EXPECTED_IMAGES,
            change_of_basis: vec![],
        };
        assert_eq!(q.combination([17, 13, 12]), [0, 0]);
        assert_eq!(minor_gcd(&EXPECTED_IMAGES), 1);
    }

    #[test]
    fn wrong_weights_fail() {
        let mut r = LatticeReduction::parse(N10).unwrap();
        r.weights = Some(WeightTriple::new(17, 13, 11).unwrap());
        let rep = verify_reduction(&r).unwrap();
        assert!(!rep.valid);
        assert!(rep.failure.unwrap().contains("congruence"));
    }

    #[test]
    fn rank_deficient_fails() {
        let mut r = LatticeReduction::parse(N10).unwrap();
        r.kernel.pop();
        let rep = verify_reduction(&r).unwrap();
        assert!(rep.failure.unwrap().contains("not rank n-5"));
    }

    #[test]
    fn malformed_input() {
        assert!(LatticeReduction::parse("v:\n1 0 0\n0 1 0\n0 0 1\n").is_err());
        assert!(LatticeReduction::parse(&N10.replace("1 1 0 1 0 1 0", "1 -1 0 1 0 1 0")).is_err());
        assert!(LatticeReduction::parse(&N10.replace("1 1 0 1 0 1 0", "1 1 0 1 0 1")).is_err());
        assert!(LatticeReduction::parse(&N10.replace("v:", "w:")).is_err());
    }

    #[test]
    fn kernel_search_filters() {
        assert!(positive_kernel_triples(&[[1, 0], [0, 1], [1, 1]], 50).is_empty());
        assert_eq!(positive_kernel_triples(&[[1, 0], [0, 1], [-1, -1]], 3), vec![[1, 1, 1]]);
    }

    #[test]
    fn unimodular_invariance() {
        let r = LatticeReduction::parse(N10).unwrap();
        // Apply an elementary column operation (unimodular change of basis of N).
        let op = |v: &Vec<i64>| {
            let mut w = v.clone();
            w[0] += w[1];
            w
        };
        let moved = LatticeReduction {
            kernel: r.kernel.iter().map(op).collect(),
            v: [op(&r.v[0]), op(&r.v[1]), op(&r.v[2])],
            projection: None,
            ..r.clone()
        };
        // The moved vectors may leave M, so bypass parsing and compare images directly.
        let a = quotient_images(&r).unwrap();
        let snf = smith_normal_form(&moved.kernel).unwrap();
        assert_eq!(snf.rank, 5);
        let cols: Vec<[i64; 2]> = moved
            .v
            .iter()
            .map(|v| {
                let y = row_times(v, &snf.v).unwrap();
                [y[5], y[6]]
            })
            .collect();
        let cols = [cols[0], cols[1], cols[2]];
        assert!(unimodularly_equivalent(&cols, &a.columns));
    }
}
