use std::collections::BTreeSet;

use super::Graph;
use crate::error::{MmError, Result};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every isomorphism class of connected graphs on `n`
/// vertices, ordered by canonical code. Brute force, so limited to `n <= 6`.
///
/// The representative is the relabelling whose upper-triangle bit code is
/// smallest, which makes the output independent of enumeration order.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 6 {
        return Err(MmError::validation("census supports 1 <= n <= 6"));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut canon = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
        let g = Graph::new(n, edges)?;
        if !g.is_connected() {
            continue;
        }
        let code = perms
            .iter()
            .map(|p| g.permuted(p).expect("valid permutation").bits())
            .min()
            .expect("at least one permutation");
        canon.insert(code);
    }
    Ok(canon
        .into_iter()
        .map(|code| {
            let edges = pairs.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &e)| e);
            Graph::new(n, edges).expect("valid edges")
        })
        .collect())
}
