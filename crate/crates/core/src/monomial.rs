use std::cmp::Ordering;

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// zero exponents never stored, total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector {
    exps: Vec<(usize, u32)>,
    degree: u32,
}

impl ExponentVector {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        ExponentVector { exps: vec![(v, e)], degree: e }
    }

    pub fn from_dense(dense: &[u32]) -> Self {
        let exps: Vec<_> = dense
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(v, e)| (v, *e))
            .collect();
        let degree = exps.iter().map(|(_, e)| e).sum();
        ExponentVector { exps, degree }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_unstable_by_key(|(v, _)| *v);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|(_, e)| e).sum();
        ExponentVector { exps: merged, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps
            .binary_search_by_key(&var, |(v, _)| *v)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.exps
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        ExponentVector { exps: out, degree: self.degree + other.degree }
    }

    /// Same monomial with the exponent of `var` replaced.
    pub fn with_exponent(&self, var: usize, e: u32) -> Self {
        let mut pairs: Vec<_> = self.exps.iter().copied().filter(|(v, _)| *v != var).collect();
        pairs.push((var, e));
        Self::from_pairs(pairs)
    }

    /// Drops every variable for which `keep` is false.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::from_pairs(self.exps.iter().copied().filter(|(v, _)| keep(*v)).collect())
    }
}

/// Graded order: total degree first, then larger exponents of earlier variables first.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(a), Some(b)) => {
                        if a.0 != b.0 {
                            return a.0.cmp(&b.0);
                        }
                        if a.1 != b.1 {
                            return b.1.cmp(&a.1);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
