//! LCF notation for cubic Hamiltonian graphs.

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcfCode {
    pub offsets: Vec<i64>,
    pub repeats: usize,
}

/// Parses `[5,-9,7,-7,9,-5]^4`; the `^k` suffix is optional.
pub fn parse_lcf(text: &str) -> Result<LcfCode> {
    let text: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let (body, repeats) = match text.split_once('^') {
        Some((body, rep)) => {
            let repeats = rep
                .parse::<usize>()
                .map_err(|_| Error::Lcf(format!("bad repeat count `{rep}`")))?;
            (body, repeats)
        }
        None => (text.as_str(), 1),
    };
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::Lcf(format!("expected `[...]`, got `{body}`")))?;
    let offsets = inner
        .split(',')
        .map(|t| t.parse::<i64>().map_err(|_| Error::Lcf(format!("bad offset `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LcfCode { offsets, repeats })
}

/// Hamiltonian cycle `0 - 1 - ... - (n-1) - 0` plus chords `{i, i + code[i mod len]}`.
pub fn from_lcf(code: &[i64], repeats: usize) -> Result<Graph> {
    if code.is_empty() || repeats == 0 {
        return Err(Error::Lcf("empty code".into()));
    }
    let n = code.len() * repeats;
    if n < 4 || n % 2 == 1 {
        return Err(Error::Lcf(format!("vertex count {n} must be even and at least 4")));
    }
    let ni = n as i64;
    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        let offset = code[i % code.len()].rem_euclid(ni);
        if offset == 0 || offset == 1 || offset == ni - 1 {
            return Err(Error::Lcf(format!(
                "chord from {i} with offset {} collides with the cycle",
                code[i % code.len()]
            )));
        }
        partner[i] = (i as i64 + offset).rem_euclid(ni) as usize;
    }
    for i in 0..n {
        if partner[partner[i]] != i {
            return Err(Error::Lcf(format!(
                "chord {i} -> {} is not matched by {} -> {i}",
                partner[i], partner[i]
            )));
        }
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).filter(|&i| i < partner[i]).map(|i| (i, partner[i])));
    Graph::from_edge_list(n, &edges)
}

impl LcfCode {
    pub fn build(&self) -> Result<Graph> {
        from_lcf(&self.offsets, self.repeats)
    }
}
