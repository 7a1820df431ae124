use std::cmp::Ordering;
use std::fmt;

/// Largest variable count supported by a [`Monomial`].
pub const MAX_VARS: usize = 10;

/// Exponent vector. Ordered graded-lexicographically with `x0 > x1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
    };

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> &[u8] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        w.iter()
            .zip(self.exps.iter())
            .map(|(&wi, &e)| wi * e as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.exps[i] = u8::try_from(e).expect("exponent overflow");
        m
    }

    /// Highest index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    /// Pure lexicographic comparison of exponent vectors.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in decreasing order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::new(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }

    /// All monomials with the given weighted degree; weights must be positive.
    pub fn all_of_weighted_degree(weights: &[i64], deg: i64) -> Vec<Monomial> {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        let mut out = Vec::new();
        let mut cur = vec![0u32; weights.len()];
        fn rec(i: usize, left: i64, w: &[i64], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial::new(cur));
                }
                return;
            }
            let mut e = 0;
            while e as i64 * w[i] <= left {
                cur[i] = e;
                rec(i + 1, left - e as i64 * w[i], w, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        if deg >= 0 {
            rec(0, deg, weights, &mut cur, &mut out);
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len();
        write!(f, "{:?}", &self.exps[..n])
    }
}

/// Binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
