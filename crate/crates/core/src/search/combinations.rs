//! k-subsets of `0..n` in colexicographic order, with ranking and unranking.

/// `C(n, k)`, exact in 128 bits for every size this crate enumerates.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Cursor over k-subsets. `current()` is strictly increasing.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    c: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Combinations {
        Combinations { n, c: (0..k).collect(), done: k > n }
    }

    /// The subset of colex rank `rank`: `c_k` is the largest `c` with
    /// `C(c, k) <= rank`, and so on downward.
    pub fn from_rank(n: usize, k: usize, mut rank: u64) -> Combinations {
        let mut c = vec![0; k];
        let mut hi = n;
        for i in (1..=k).rev() {
            let mut x = i - 1;
            while x + 1 < hi && binomial(x as u64 + 1, i as u64) <= rank as u128 {
                x += 1;
            }
            rank -= binomial(x as u64, i as u64) as u64;
            c[i - 1] = x;
            hi = x;
        }
        Combinations { n, c, done: k > n }
    }

    pub fn current(&self) -> &[usize] {
        &self.c
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Colex rank of the current subset.
    pub fn rank(&self) -> u64 {
        self.c.iter().enumerate().map(|(i, &x)| binomial(x as u64, i as u64 + 1) as u64).sum()
    }

    /// Moves to the colex successor; sets `is_done` after the last subset.
    pub fn advance(&mut self) {
        let k = self.c.len();
        for i in 0..k {
            let limit = if i + 1 < k { self.c[i + 1] } else { self.n };
            if self.c[i] + 1 < limit {
                self.c[i] += 1;
                for (j, x) in self.c[..i].iter_mut().enumerate() {
                    *x = j;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.c.clone();
        self.advance();
        Some(out)
    }
}
