//! Two-eigenvalue matrices on complement-form graphs and the three-eigenvalue
//! family on `(K_{1,0} ∪ K_{p,q})^c`.
//!
//! Working spectra are `{0, 1}`. Vertex order follows [`FamilyDescriptor::ComplementForm`].

use std::f64::consts::TAU;

use rand::Rng;

use super::complete::complete_tagged;
use super::constants::{complement_pair_base, k10_base, one_zero_pairs_base5, one_zero_pairs_base7};
use super::{column, fiedler_join, has_no_zeros, hs04_join, one_step_double, rotate_pair, EigvecTagged};
use crate::eiglab::{eigh, Certificate, SpectrumItem, SpectrumSpec, SymMatrix};
use crate::error::{MmError, Result};
use crate::graph::{clears_margin, FamilyDescriptor, Graph, CONSTRUCTION_MARGIN};
use crate::seed;

/// Scalar 2x2 block `x I` tagged with a seeded generic orthonormal pair.
fn scalar_pair(x: f64, seed: u64) -> EigvecTagged {
    let theta: f64 = seed::rng(seed).random_range(0.3..1.27);
    let (c, s) = (theta.cos(), theta.sin());
    let m = SymMatrix::from_diagonal(&[x, x]).expect("finite");
    EigvecTagged::new(m, x, vec![vec![c, s], vec![-s, c]]).expect("orthonormal pair")
}

/// Two non-adjacent pairs coupled with spectrum `0, 1/2, 1/2, 1`; the double
/// `1/2` is tagged.
fn odd_start(seed: u64) -> Result<EigvecTagged> {
    let mut rng = seed::rng(seed);
    let mut unit = || {
        let t: f64 = rng.random_range(0.3..1.27);
        (t.cos(), t.sin())
    };
    let (u, v) = (unit(), unit());
    let half = SymMatrix::from_diagonal(&[0.5, 0.5])?;
    let a = EigvecTagged::new(half.clone(), 0.5, vec![vec![u.0, u.1]])?;
    let b = EigvecTagged::new(half, 0.5, vec![vec![v.0, v.1]])?;
    let m = fiedler_join(&a, &b, 0.5)?;
    let k = std::f64::consts::FRAC_1_SQRT_2;
    let x = vec![-u.1 * k, u.0 * k, -v.1 * k, v.0 * k];
    let y = vec![-u.1 * k, u.0 * k, v.1 * k, -v.0 * k];
    EigvecTagged::new(m, 0.5, vec![x, y])
}

/// A growing chain of pairs whose tagged double is the one still moving.
struct Chain {
    active: EigvecTagged,
    step: u64,
}

impl Chain {
    fn new(odd: bool, seed: u64) -> Result<Self> {
        let active = if odd { odd_start(seed::derive_labeled(seed, "start"))? } else { scalar_pair(0.5, seed::derive_labeled(seed, "start")) };
        Ok(Chain { active, step: 0 })
    }

    fn x(&self) -> f64 {
        self.active.tagged_value
    }

    fn couple(&mut self, up: &EigvecTagged, down: &EigvecTagged, t: f64, seed: u64) -> Result<(EigvecTagged, EigvecTagged)> {
        self.step += 1;
        let s = seed::derive(seed, self.step);
        let alpha = seed::rng(s).random_range(0.0..TAU);
        one_step_double(up, down, t, alpha, s)
    }

    /// New pair with a double `1`; the active value halves.
    fn emit_one(&mut self, seed: u64) -> Result<()> {
        let x = self.x();
        let fresh = scalar_pair(1.0 - x / 2.0, seed::derive(seed, 1000 + self.step));
        let active = self.active.clone();
        let (_, down) = self.couple(&fresh, &active, x / 2.0, seed)?;
        self.active = down;
        Ok(())
    }

    /// New pair with a double `0`; the active value moves to `(1 + x) / 2`.
    fn emit_zero(&mut self, seed: u64) -> Result<()> {
        let t = (1.0 - self.x()) / 2.0;
        let fresh = scalar_pair(t, seed::derive(seed, 1000 + self.step));
        let active = self.active.clone();
        let (up, _) = self.couple(&active, &fresh, t, seed)?;
        self.active = up;
        Ok(())
    }

    fn emit(&mut self, mut zeros: usize, mut ones: usize, seed: u64) -> Result<()> {
        while zeros + ones > 0 {
            if (self.x() <= 0.5 && zeros > 0) || ones == 0 {
                self.emit_zero(seed)?;
                zeros -= 1;
            } else {
                self.emit_one(seed)?;
                ones -= 1;
            }
        }
        Ok(())
    }

    /// Closing pair: its double goes to `1` and the active double to `0`.
    fn finish(mut self, seed: u64) -> Result<SymMatrix> {
        let x = self.x();
        let fresh = scalar_pair(1.0 - x, seed::derive(seed, 1000 + self.step));
        let active = self.active.clone();
        let (up, _) = self.couple(&fresh, &active, x, seed)?;
        Ok(up.matrix)
    }
}

/// Chain carrying `e0` zeros and `e1` ones besides its active double.
fn grow_chain(e0: usize, e1: usize, seed: u64) -> Result<Chain> {
    let odd = e0 % 2 == 1;
    let mut chain = Chain::new(odd, seed)?;
    let (a0, a1) = if odd { ((e0 - 1) / 2, (e1 - 1) / 2) } else { (e0 / 2, e1 / 2) };
    chain.emit(a0, a1, seed)?;
    Ok(chain)
}

/// `k >= 2` non-adjacent pairs with `b0` zeros and `b1` ones, both at least 2.
fn pair_chain(k: usize, b0: usize, b1: usize, seed: u64) -> Result<SymMatrix> {
    if b0 < 2 || b1 < 2 || b0 + b1 != 2 * k || (b0 % 2 == 1 && k < 3) {
        return Err(MmError::Infeasible(format!("no chain on {k} pairs with split ({b0}, {b1})")));
    }
    grow_chain(b0 - 2, b1 - 2, seed)?.finish(seed)
}

/// The five-vertex base under `f`, tagged on its image `1 - μ` of the value 1.
fn tagged_five(f_scale: f64, f_shift: f64, seed: u64) -> Result<EigvecTagged> {
    let base = one_zero_pairs_base5();
    let e = eigh(&base)?;
    let (a, b) = (column(e.vectors.as_matrix(), 3), column(e.vectors.as_matrix(), 4));
    let mut tried = Vec::new();
    for s in seed::attempts(seed) {
        tried.push(s);
        let (x, y) = rotate_pair(&a, &b, seed::rng(s).random_range(0.0..TAU));
        if has_no_zeros(&x) && has_no_zeros(&y) {
            return EigvecTagged::new(base.affine(f_scale, f_shift), f_scale + f_shift, vec![x, y]);
        }
    }
    Err(MmError::GenericPosition { stage: "tagged_five".into(), seeds: tried })
}

/// `K_{1,0}` vertex followed by `k >= 2` pairs, with `b0` zeros and `b1` ones.
fn one_zero_chain(k: usize, b0: usize, b1: usize, seed: u64) -> Result<SymMatrix> {
    if b0 < 2 || b1 < 2 || b0 + b1 != 2 * k + 1 {
        return Err(MmError::Infeasible(format!("no matrix on K10 + {k} pairs with split ({b0}, {b1})")));
    }
    match (k, b0) {
        (2, 3) => return Ok(one_zero_pairs_base5()),
        (2, 2) => return Ok(one_zero_pairs_base5().affine(-1.0, 1.0)),
        (3, 4) => return Ok(one_zero_pairs_base7()),
        (3, 3) => return Ok(one_zero_pairs_base7().affine(-1.0, 1.0)),
        _ => {}
    }
    // the five-vertex block carries three of one value and two of the other
    let zeros_heavy = b0 >= 5;
    let (e0, e1) = if zeros_heavy { (b0 - 5, b1 - 2) } else { (b0 - 2, b1 - 5) };
    let rest = grow_chain(e0, e1, seed::derive_labeled(seed, "rest"))?;
    let mu = rest.x();
    let head = if zeros_heavy {
        tagged_five(1.0 - mu, 0.0, seed::derive_labeled(seed, "head"))?
    } else {
        tagged_five(-mu, 1.0, seed::derive_labeled(seed, "head"))?
    };
    let s = seed::derive_labeled(seed, "join");
    let alpha = seed::rng(s).random_range(0.0..TAU);
    let (up, _) = one_step_double(&head, &rest.active, mu, alpha, s)?;
    Ok(up.matrix)
}

/// Blows `pivot` up into a clique of `t + s + 1` twins, adding `t` zeros and
/// `s` ones to the spectrum of `a` (which must be the `{0, 1}` kind).
fn extend_matrix(a: &SymMatrix, pivot: usize, t: usize, s: usize, seed: u64) -> Result<SymMatrix> {
    if pivot >= a.n() {
        return Err(MmError::validation(format!("pivot {pivot} out of range")));
    }
    if t + s == 0 {
        return Ok(a.clone());
    }
    let d = a.get(pivot, pivot);
    if s == 0 && d.abs() < CONSTRUCTION_MARGIN {
        return Err(MmError::Infeasible(format!("diagonal entry {d} at vertex {pivot} is 0 and no 1 is added")));
    }
    if t == 0 && (d - 1.0).abs() < CONSTRUCTION_MARGIN {
        return Err(MmError::Infeasible(format!("diagonal entry {d} at vertex {pivot} is 1 and no 0 is added")));
    }
    let mut values = vec![d];
    values.extend(std::iter::repeat_n(0.0, t));
    values.extend(std::iter::repeat_n(1.0, s));
    values.sort_by(f64::total_cmp);
    let (b, u) = complete_tagged(&values, d, None, seed)?;
    hs04_join(a, pivot, &EigvecTagged::new(b, d, vec![u])?)
}

/// `g` with vertex `pivot` replaced by a clique of `extra + 1` true twins, laid
/// out in place.
fn blow_up(g: &Graph, pivot: usize, extra: usize) -> Result<Graph> {
    let n = g.order();
    let new = |i: usize| if i < pivot { i } else { i + extra };
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        match (u == pivot, v == pivot) {
            (false, false) => edges.push((new(u), new(v))),
            (true, _) => edges.extend((pivot..=pivot + extra).map(|k| (k, new(v)))),
            (_, true) => edges.extend((pivot..=pivot + extra).map(|k| (new(u), k))),
        }
    }
    for a in pivot..=pivot + extra {
        edges.extend((a + 1..=pivot + extra).map(|b| (a, b)));
    }
    Graph::new(n + extra, edges)
}

/// Grows vertex `pivot` of a `{0, 1}` certificate into a clique of
/// `t + s + 1` twins, adding `t` zeros and `s` ones to the spectrum.
pub fn helena_extend(cert: &Certificate, pivot: usize, t: usize, s: usize, seed: u64) -> Result<Certificate> {
    let mut items: Vec<SpectrumItem> = cert.target.items().to_vec();
    if items.iter().any(|it| !matches!(it.value, Some(v) if v == 0.0 || v == 1.0)) {
        return Err(MmError::precondition("helena_extend needs a target with values 0 and 1 only"));
    }
    for (value, add) in [(0.0, t), (1.0, s)] {
        match items.iter_mut().find(|it| it.value == Some(value)) {
            Some(it) => it.multiplicity += add,
            None if add > 0 => items.push(SpectrumItem { value: Some(value), multiplicity: add }),
            None => {}
        }
    }
    let matrix = extend_matrix(&cert.matrix, pivot, t, s, seed)?;
    let graph = blow_up(&cert.graph, pivot, t + s)?;
    let mut trace = cert.trace.clone();
    trace.push(format!("helena_extend:{pivot}:{t}:{s}"));
    Certificate::assemble(graph, matrix, SpectrumSpec::from_items(items)?, seed, trace)
}

/// Shape of the graph left after removing the isolated vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Core {
    Empty,
    Clique(usize),
    TwoCliques(usize, usize),
    /// `p0 >= 2` with one pair; base is the explicit 4x4.
    Base4,
    /// `p0 = 0`, `k >= 2` pairs.
    Chain(usize),
    /// `p0 >= 1`, `k >= 2` pairs.
    OneZero(usize),
}

/// Zeros a single clique of size `p` may carry next to its ones.
fn clique_zero_range(p: usize) -> std::ops::RangeInclusive<usize> {
    if p == 1 { 0..=1 } else { 1..=p - 1 }
}

/// Plan for the core: base split `(b0, b1)` for the base kinds.
fn base_split(core: Core, c0: usize, c1: usize) -> Option<(usize, usize)> {
    let base = match core {
        Core::Base4 => 4,
        Core::Chain(k) => 2 * k,
        Core::OneZero(k) => 2 * k + 1,
        _ => return None,
    };
    let b0 = 2.max(base.saturating_sub(c1));
    if b0 > c0.min(base - 2) {
        return None;
    }
    Some((b0, base - b0))
}

fn core_feasible(core: Core, c0: usize, c1: usize) -> bool {
    match core {
        Core::Empty => c0 == 0 && c1 == 0,
        Core::Clique(p) => c0 + c1 == p && clique_zero_range(p).contains(&c0),
        Core::TwoCliques(p, q) => {
            c0 + c1 == p + q && clique_zero_range(p).any(|a| c0 >= a && clique_zero_range(q).contains(&(c0 - a)))
        }
        _ => base_split(core, c0, c1).is_some(),
    }
}

fn clique_block(p: usize, zeros: usize, seed: u64) -> Result<SymMatrix> {
    let mut values = vec![0.0; zeros];
    values.extend(std::iter::repeat_n(1.0, p - zeros));
    Ok(complete_tagged(&values, values[0], None, seed)?.0)
}

/// Builds the core matrix on `sizes` (canonical group sizes) with `c0` zeros.
fn build_core(core: Core, sizes: &[usize], c0: usize, c1: usize, seed: u64, trace: &mut Vec<String>) -> Result<SymMatrix> {
    match core {
        Core::Empty => Err(MmError::validation("empty core has no matrix")),
        Core::Clique(p) => {
            trace.push("complete_graph_matrix".into());
            clique_block(p, c0, seed)
        }
        Core::TwoCliques(p, q) => {
            let a = clique_zero_range(p)
                .find(|&a| c0 >= a && clique_zero_range(q).contains(&(c0 - a)))
                .ok_or_else(|| MmError::Infeasible("no zero split between the two cliques".into()))?;
            trace.push("complete_graph_matrix x2".into());
            let left = clique_block(p, a, seed::derive_labeled(seed, "left"))?;
            Ok(left.direct_sum(&clique_block(q, c0 - a, seed::derive_labeled(seed, "right"))?))
        }
        _ => {
            let (b0, b1) = base_split(core, c0, c1).ok_or_else(|| MmError::Infeasible("no base split".into()))?;
            let (mut m, base_sizes): (SymMatrix, Vec<usize>) = match core {
                Core::Base4 => {
                    trace.push("complement_pair_base".into());
                    (complement_pair_base(), vec![2, 1, 1])
                }
                Core::Chain(k) => {
                    trace.push(format!("pair_chain:{k}:{b0}:{b1}"));
                    (pair_chain(k, b0, b1, seed::derive_labeled(seed, "base"))?, vec![1; 2 * k])
                }
                Core::OneZero(k) => {
                    trace.push(format!("one_zero_chain:{k}:{b0}:{b1}"));
                    (one_zero_chain(k, b0, b1, seed::derive_labeled(seed, "base"))?, vec![1; 2 * k + 1])
                }
                _ => unreachable!(),
            };
            let extra: Vec<usize> = sizes.iter().zip(&base_sizes).map(|(s, b)| s - b).collect();
            let mut zeros_left = c0 - b0;
            let plan: Vec<(usize, usize)> = extra
                .iter()
                .map(|&e| {
                    let t = e.min(zeros_left);
                    zeros_left -= t;
                    (t, e - t)
                })
                .collect();
            let starts: Vec<usize> = base_sizes.iter().scan(0, |acc, &b| { let s = *acc; *acc += b; Some(s) }).collect();
            for g in (0..plan.len()).rev() {
                let (t, s) = plan[g];
                if t + s > 0 {
                    trace.push(format!("helena_extend:{}:{t}:{s}", starts[g]));
                    m = extend_matrix(&m, starts[g], t, s, seed::derive(seed, g as u64))?;
                }
            }
            Ok(m)
        }
    }
}

/// Matrix with eigenvalues `0` (multiplicity `2 + n1`) and `1` (multiplicity
/// `2 + n2`) on a complement-form graph of order `n1 + n2 + 4`.
pub fn mr_plus_two_matrix(desc: &FamilyDescriptor, n1: usize, n2: usize, seed: u64) -> Result<Certificate> {
    let FamilyDescriptor::ComplementForm { p0, pairs, r } = desc else {
        return Err(MmError::validation("mr_plus_two_matrix needs a ComplementForm descriptor"));
    };
    desc.validate()?;
    let (p0, k, r) = (*p0, pairs.len(), *r);
    let n = desc.order();
    if n1 + n2 + 4 != n {
        return Err(MmError::validation(format!("need n1 + n2 + 4 = {n}, got {}", n1 + n2 + 4)));
    }
    let core = match (p0, k) {
        (1, 1) => {
            return Err(MmError::Infeasible(
                "(K_{1,0} ∪ K_{p,q})^c has at least three distinct eigenvalues; see k10_kpq_matrix".into(),
            ))
        }
        (0, 0) => Core::Empty,
        (p, 0) => Core::Clique(p),
        (0, 1) => Core::TwoCliques(pairs[0].0, pairs[0].1),
        (_, 1) => Core::Base4,
        (0, k) => Core::Chain(k),
        (_, k) => Core::OneZero(k),
    };
    let mut sizes = Vec::new();
    if p0 > 0 {
        sizes.push(p0);
    }
    for &(p, q) in pairs {
        sizes.extend([p, q]);
    }
    let (zeros, ones) = (2 + n1, 2 + n2);
    let z = (0..=r)
        .find(|&z| z <= zeros && r - z <= ones && core_feasible(core, zeros - z, ones - (r - z)))
        .ok_or_else(|| MmError::Infeasible(format!("no realization of ({zeros}, {ones}) on {desc:?}")))?;
    let (c0, c1) = (zeros - z, ones - (r - z));

    let graph = desc.graph()?;
    let target = SpectrumSpec::new(&[(0.0, zeros), (1.0, ones)])?;
    let mut isolated = vec![0.0; z];
    isolated.extend(std::iter::repeat_n(1.0, r - z));
    let mut tried = Vec::new();
    for s in seed::attempts(seed) {
        tried.push(s);
        let mut trace = Vec::new();
        let m = match core {
            Core::Empty => SymMatrix::from_diagonal(&isolated)?,
            _ => {
                let m = match build_core(core, &sizes, c0, c1, s, &mut trace) {
                    Ok(m) => m,
                    Err(MmError::GenericPosition { .. }) => continue,
                    Err(e) => return Err(e),
                };
                if r > 0 { m.direct_sum(&SymMatrix::from_diagonal(&isolated)?) } else { m }
            }
        };
        if r > 0 {
            trace.push(format!("isolated:{z}:{}", r - z));
        }
        if clears_margin(&m, &graph) {
            return Certificate::assemble(graph, m, target, seed, trace);
        }
    }
    Err(MmError::GenericPosition { stage: "mr_plus_two_matrix".into(), seeds: tried })
}

/// Matrix on `(K_{1,0} ∪ K_{p,q})^c` with eigenvalues `3`, `√3`, `-√3` of
/// multiplicities `n1`, `n2`, `n3`. Vertex 0 is the dominating vertex, then the
/// `p` clique, then the `q` clique.
pub fn k10_kpq_matrix(p: usize, q: usize, n1: usize, n2: usize, n3: usize, seed: u64) -> Result<Certificate> {
    if p == 0 || q == 0 {
        return Err(MmError::validation("p and q must be positive"));
    }
    if n1 == 0 || n2 == 0 || n3 == 0 || n1 + n2 + n3 != p + q + 1 {
        return Err(MmError::validation(format!(
            "multiplicities ({n1}, {n2}, {n3}) must be positive and sum to {}",
            p + q + 1
        )));
    }
    let r3 = 3f64.sqrt();
    let mut extras: Vec<f64> = std::iter::repeat_n(3.0, n1 - 1)
        .chain(std::iter::repeat_n(r3, n2 - 1))
        .chain(std::iter::repeat_n(-r3, n3 - 1))
        .collect();
    let second = extras.split_off(p - 1);
    let (first, second) = (extras, second);
    let desc = FamilyDescriptor::ComplementForm { p0: 1, pairs: vec![(p, q)], r: 0 };
    let graph = desc.graph()?;
    let target = SpectrumSpec::new(&[(-r3, n3), (r3, n2), (3.0, n1)])?;
    let mut tried = Vec::new();
    'attempt: for s in seed::attempts(seed) {
        tried.push(s);
        let mut m = k10_base();
        let mut trace = vec!["k10_base".to_string()];
        // q side first so the p side keeps its index
        for (pivot, d, rest, label) in [(2, 2.0, &second, "q"), (1, 1.0, &first, "p")] {
            if rest.is_empty() {
                continue;
            }
            let mut values = rest.clone();
            values.push(d);
            values.sort_by(f64::total_cmp);
            let (b, u) = match complete_tagged(&values, d, None, seed::derive_labeled(s, label)) {
                Ok(x) => x,
                Err(MmError::GenericPosition { .. }) => continue 'attempt,
                Err(e) => return Err(e),
            };
            m = hs04_join(&m, pivot, &EigvecTagged::new(b, d, vec![u])?)?;
            trace.push(format!("hs04_join:{label}"));
        }
        if clears_margin(&m, &graph) {
            return Certificate::assemble(graph, m, target, seed, trace);
        }
    }
    Err(MmError::GenericPosition { stage: "k10_kpq_matrix".into(), seeds: tried })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(p0: usize, pairs: Vec<(usize, usize)>, r: usize) -> FamilyDescriptor {
        FamilyDescriptor::ComplementForm { p0, pairs, r }
    }

    fn check(c: &Certificate, zeros: usize, ones: usize) {
        let v = c.verify();
        assert!(v.passed, "{:?} {:?}", c.trace, v.diagnostics);
        assert_eq!(c.eigen.multiplicities(), vec![zeros, ones]);
    }

    #[test]
    fn chains() {
        for k in 2..6 {
            for b0 in 2..=2 * k - 2 {
                if b0 % 2 == 1 && k < 3 {
                    continue;
                }
                let m = pair_chain(k, b0, 2 * k - b0, 9).unwrap();
                let c = Certificate::assemble(
                    cf(0, vec![(1, 1); k], 0).graph().unwrap(),
                    m,
                    SpectrumSpec::new(&[(0.0, b0), (1.0, 2 * k - b0)]).unwrap(),
                    9,
                    vec![],
                )
                .unwrap();
                check(&c, b0, 2 * k - b0);
            }
        }
    }

    #[test]
    fn one_zero_bases() {
        for k in 2..6 {
            for b0 in 2..=2 * k - 1 {
                let m = one_zero_chain(k, b0, 2 * k + 1 - b0, 4).unwrap();
                let c = Certificate::assemble(
                    cf(1, vec![(1, 1); k], 0).graph().unwrap(),
                    m,
                    SpectrumSpec::new(&[(0.0, b0), (1.0, 2 * k + 1 - b0)]).unwrap(),
                    4,
                    vec![],
                )
                .unwrap();
                check(&c, b0, 2 * k + 1 - b0);
            }
        }
    }

    #[test]
    fn pipeline_examples() {
        check(&mr_plus_two_matrix(&cf(2, vec![(1, 1)], 0), 0, 0, 1).unwrap(), 2, 2);
        check(&mr_plus_two_matrix(&cf(1, vec![(1, 1), (1, 1)], 0), 1, 0, 1).unwrap(), 3, 2);
        check(&mr_plus_two_matrix(&cf(1, vec![(1, 1); 3], 0), 2, 1, 1).unwrap(), 4, 3);
        check(&mr_plus_two_matrix(&cf(4, vec![(1, 1)], 0), 2, 0, 1).unwrap(), 4, 2);
        check(&mr_plus_two_matrix(&cf(0, vec![(2, 3)], 1), 1, 1, 1).unwrap(), 3, 3);
        check(&mr_plus_two_matrix(&cf(1, vec![(2, 1), (1, 3)], 1), 3, 2, 1).unwrap(), 5, 4);
        assert!(matches!(mr_plus_two_matrix(&cf(1, vec![(1, 1)], 1), 0, 0, 1), Err(MmError::Infeasible(_))));
    }

    #[test]
    fn helena_on_base() {
        let g = cf(2, vec![(1, 1)], 0).graph().unwrap();
        let base = Certificate::assemble(
            g,
            complement_pair_base(),
            SpectrumSpec::new(&[(0.0, 2), (1.0, 2)]).unwrap(),
            0,
            vec![],
        )
        .unwrap();
        let c = helena_extend(&base, 0, 1, 0, 3).unwrap();
        check(&c, 3, 2);
        assert_eq!(c.graph, cf(3, vec![(1, 1)], 0).graph().unwrap());
        assert_eq!(helena_extend(&base, 0, 0, 0, 3).unwrap().matrix, base.matrix);
    }

    #[test]
    fn k10_family() {
        let c = k10_kpq_matrix(1, 1, 1, 1, 1, 0).unwrap();
        assert_eq!(c.matrix, k10_base());
        assert!(c.verify().passed);
        let c = k10_kpq_matrix(2, 1, 2, 1, 1, 0).unwrap();
        assert!(c.verify().passed);
        let c = k10_kpq_matrix(4, 4, 3, 3, 3, 0).unwrap();
        assert!(c.verify().passed && c.min_multiplicity() == 3);
        assert!(k10_kpq_matrix(1, 1, 2, 1, 1, 0).is_err());
    }
}
