use crate::error::{Error, Result};
use crate::nfa::Nfa;

/// k-lookahead determinism: whenever `q` has two `a`-transitions to distinct
/// targets `q1`, `q2`, no word of length `k−1` can be read from both.
///
/// `F_r(q1) ∩ F_r(q2) ≠ ∅` is computed as a pair walk: every pair qualifies
/// at `r = 0`, and a pair qualifies at `r` when some common symbol leads to a
/// pair qualifying at `r − 1`.
pub fn is_k_lookahead_deterministic(a: &Nfa, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    a.initial()?;
    let n = a.num_states();
    let sigma = a.alphabet().len();
    let mut common = vec![true; n * n];
    for _ in 1..k {
        let prev = common;
        common = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                common[p * n + q] = (0..sigma).any(|x| {
                    a.successors(p, x)
                        .iter()
                        .any(|p2| a.successors(q, x).iter().any(|q2| prev[p2 * n + q2]))
                });
            }
        }
    }
    for q in 0..n {
        for x in 0..sigma {
            let targets: Vec<_> = a.successors(q, x).iter().collect();
            for (i, &t1) in targets.iter().enumerate() {
                for &t2 in &targets[i + 1..] {
                    if common[t1 * n + t2] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
