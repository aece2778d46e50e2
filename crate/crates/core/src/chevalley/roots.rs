use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::ChevalleyError;

/// Supported root system types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A1,
    A1xA1,
    G2,
    B3,
    D4,
}

impl RootType {
    pub const ALL: [RootType; 5] = [Self::A1, Self::A1xA1, Self::G2, Self::B3, Self::D4];

    pub fn name(self) -> &'static str {
        match self {
            Self::A1 => "A1",
            Self::A1xA1 => "A1xA1",
            Self::G2 => "G2",
            Self::B3 => "B3",
            Self::D4 => "D4",
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RootType {
    type Err = ChevalleyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ChevalleyError::UnsupportedType(s.to_string()))
    }
}

/// A reduced root system with a fixed base. Roots are integer coordinate
/// vectors in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    kind: RootType,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩ = α_j(h_i)`.
    cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots; `(α_i, α_j) = d_i · cartan[i][j]`.
    half_len: Vec<i64>,
    positive: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(kind: RootType) -> Self {
        let (cartan, half_len): (Vec<Vec<i64>>, Vec<i64>) = match kind {
            RootType::A1 => (vec![vec![2]], vec![1]),
            RootType::A1xA1 => (vec![vec![2, 0], vec![0, 2]], vec![1, 1]),
            // α1 short, α2 long
            RootType::G2 => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
            // α1, α2 long, α3 short
            RootType::B3 => (
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
                vec![2, 2, 1],
            ),
            // node 2 (index 1) is the trivalent node
            RootType::D4 => (
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, -1],
                    vec![0, -1, 2, 0],
                    vec![0, -1, 0, 2],
                ],
                vec![1, 1, 1, 1],
            ),
        };
        let positive = positive_roots(&cartan);
        RootSystem {
            kind,
            cartan,
            half_len,
            positive,
        }
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by height, then by descending lexicographic
    /// order of coordinates (so simple roots come in index order).
    pub fn positive(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots followed by their negatives in the same order.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive.clone();
        all.extend(
            self.positive
                .iter()
                .map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()),
        );
        all
    }

    /// `⟨β, α_i^∨⟩`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(b, a)| b * a).sum()
    }

    /// Invariant form normalized so the shortest roots have squared length 2.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                s += ai * bj * self.half_len[i] * self.cartan[i][j];
            }
        }
        s
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.positive.iter().any(|r| r == v || *r == neg)
    }

    /// Index into [`roots`](Self::roots).
    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        let n = self.positive.len();
        if let Some(i) = self.positive.iter().position(|r| r == v) {
            return Some(i);
        }
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.positive.iter().position(|r| *r == neg).map(|i| i + n)
    }
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let mut next = all.clone();
        for beta in &all {
            for (i, row) in cartan.iter().enumerate() {
                let p: i64 = beta.iter().zip(row).map(|(b, a)| b * a).sum();
                let mut img = beta.clone();
                img[i] -= p;
                next.insert(img);
            }
        }
        if next.len() == all.len() {
            break;
        }
        all = next;
    }
    let mut pos: Vec<Vec<i64>> = all
        .into_iter()
        .filter(|v| v.iter().all(|&c| c >= 0))
        .collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let counts: Vec<usize> = RootType::ALL
            .iter()
            .map(|&t| RootSystem::new(t).roots().len())
            .collect();
        assert_eq!(counts, vec![2, 4, 12, 18, 24]);
    }

    #[test]
    fn g2_positive_order() {
        let r = RootSystem::new(RootType::G2);
        let expected: Vec<Vec<i64>> = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
        ];
        assert_eq!(r.positive(), expected.as_slice());
        // α1 short, α2 long, ratio 3
        assert_eq!(r.inner(&[1, 0], &[1, 0]) * 3, r.inner(&[0, 1], &[0, 1]));
    }

    #[test]
    fn parse_type() {
        assert_eq!("g2".parse::<RootType>().unwrap(), RootType::G2);
        assert!("E8".parse::<RootType>().is_err());
    }
}
