use std::cmp::Ordering;

/// Exponent vector of a monomial in a ring with an explicit variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect())
    }
}

/// One contiguous block of variables compared by weighted reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct OrderBlock {
    start: usize,
    end: usize,
    weights: Vec<u64>,
}

impl OrderBlock {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u64 = (self.start..self.end)
            .map(|i| a[i] as u64 * self.weights[i - self.start])
            .sum();
        let db: u64 = (self.start..self.end)
            .map(|i| b[i] as u64 * self.weights[i - self.start])
            .sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Reverse lexicographic tie-break: the smaller exponent in the last differing
        // variable makes the monomial larger.
        for i in (self.start..self.end).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

/// A product of (weighted) graded reverse lexicographic orders on consecutive variable blocks.
///
/// The variable declared first is the largest inside each block. A single block with unit
/// weights is plain grevlex; two blocks give the usual elimination order for the first block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    nvars: usize,
    blocks: Vec<OrderBlock>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        Self::weighted_grevlex(&vec![1; nvars])
    }

    pub fn weighted_grevlex(weights: &[u64]) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "order weights must be positive");
        Self {
            nvars: weights.len(),
            blocks: vec![OrderBlock {
                start: 0,
                end: weights.len(),
                weights: weights.to_vec(),
            }],
        }
    }

    /// Eliminates the first `k` variables: block grevlex on `[0, k)` then grevlex on `[k, n)`.
    pub fn elimination(k: usize, nvars: usize) -> Self {
        assert!(k <= nvars);
        let mut blocks = Vec::new();
        if k > 0 {
            blocks.push(OrderBlock { start: 0, end: k, weights: vec![1; k] });
        }
        if k < nvars {
            blocks.push(OrderBlock {
                start: k,
                end: nvars,
                weights: vec![1; nvars - k],
            });
        }
        Self { nvars, blocks }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of leading variables eliminated by this order (0 for a single block).
    pub fn eliminated(&self) -> usize {
        if self.blocks.len() > 1 {
            self.blocks[0].end
        } else {
            0
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exponents(a.exponents(), b.exponents())
    }

    pub fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        for block in &self.blocks {
            match block.cmp(a, b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}
