//! Deterministic pairwise contraction of a diagram's tensor network.
//!
//! Every wire gets a leg label. Node tensors are created in id order, bare
//! boundary-to-boundary wires become identity tensors, and then the pair of
//! connected tensors with the smallest result is contracted until one tensor
//! is left (lowest indices win ties). Disconnected pieces are joined by outer
//! products, smallest first.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::generators::node_tensor;
use super::{SemanticsError, Tensor};
use crate::diagram::{Diagram, Source, Target};

/// Largest intermediate tensor the contraction will build.
pub const DEFAULT_BUDGET: usize = 1 << 24;

struct Labeled {
    t: Tensor,
    legs: Vec<usize>,
}

fn check_budget(entries: u128, budget: usize) -> Result<(), SemanticsError> {
    if entries > budget as u128 {
        return Err(SemanticsError::Resource { entries, budget });
    }
    Ok(())
}

pub(crate) fn contract_diagram(d: &Diagram, budget: usize) -> Result<Tensor, SemanticsError> {
    let calc = d.calculus();
    let wire_of_source: BTreeMap<Source, usize> = d.wires().iter().enumerate().map(|(i, w)| (w.from, i)).collect();
    let wire_of_target: BTreeMap<Target, usize> = d.wires().iter().enumerate().map(|(i, w)| (w.to, i)).collect();

    let mut pool: Vec<Option<Labeled>> = vec![];
    for (id, kind) in d.nodes() {
        let (n, m) = kind.arity();
        let entries: u128 =
            kind.output_labels().into_iter().chain(kind.input_labels()).map(|l| calc.carried_dim(l) as u128).product();
        check_budget(entries, budget)?;
        let mut legs = Vec::with_capacity(n + m);
        for p in 0..m {
            legs.push(2 * wire_of_source[&Source::Port(*id, p)]);
        }
        for p in 0..n {
            legs.push(2 * wire_of_target[&Target::Port(*id, p)]);
        }
        pool.push(Some(trace_repeated(Labeled { t: node_tensor(kind), legs })));
    }

    let mut final_legs = vec![];
    for slot in 0..d.outputs().len() {
        final_legs.push(2 * wire_of_target[&Target::Output(slot)]);
    }
    for slot in 0..d.inputs().len() {
        let w = wire_of_source[&Source::Input(slot)];
        match d.wires()[w].to {
            Target::Output(_) => {
                let dim = calc.carried_dim(d.wires()[w].dim);
                let mut t = Tensor::zeros(vec![dim, dim]);
                for k in 0..dim {
                    t.set(&[k, k], Complex64::new(1.0, 0.0));
                }
                pool.push(Some(Labeled { t, legs: vec![2 * w, 2 * w + 1] }));
                final_legs.push(2 * w + 1);
            }
            Target::Port(..) => final_legs.push(2 * w),
        }
    }

    loop {
        let live: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].is_some()).collect();
        if live.len() <= 1 {
            break;
        }
        let (i, j, entries) = pick_pair(&pool, &live);
        check_budget(entries, budget)?;
        let b = pool[j].take().expect("live tensor");
        let a = pool[i].take().expect("live tensor");
        pool[i] = Some(contract_pair(a, b));
    }

    let result = pool
        .into_iter()
        .flatten()
        .next()
        .unwrap_or(Labeled { t: Tensor::scalar(Complex64::new(1.0, 0.0)), legs: vec![] });
    let perm: Vec<usize> = final_legs
        .iter()
        .map(|l| result.legs.iter().position(|x| x == l).expect("boundary leg survives contraction"))
        .collect();
    Ok(result.t.permuted(&perm))
}

/// Chooses the next pair to contract and the size of its result.
fn pick_pair(pool: &[Option<Labeled>], live: &[usize]) -> (usize, usize, u128) {
    let size = |i: usize| pool[i].as_ref().expect("live").t.len() as u128;
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut shared: BTreeMap<(usize, usize), u128> = BTreeMap::new();
    for &i in live {
        let lt = pool[i].as_ref().expect("live");
        for (ax, &l) in lt.legs.iter().enumerate() {
            match owner.get(&l) {
                Some(&o) if o != i => {
                    *shared.entry((o, i)).or_insert(1) *= lt.t.shape()[ax] as u128;
                }
                _ => {
                    owner.insert(l, i);
                }
            }
        }
    }
    let best = shared.iter().map(|(&(i, j), &s)| (size(i) * size(j) / (s * s), i, j)).min();
    if let Some((entries, i, j)) = best {
        return (i, j, entries);
    }
    let mut by_size: Vec<(u128, usize)> = live.iter().map(|&i| (size(i), i)).collect();
    by_size.sort();
    let (x, y) = (by_size[0].1, by_size[1].1);
    (x.min(y), x.max(y), by_size[0].0 * by_size[1].0)
}

fn contract_pair(a: Labeled, b: Labeled) -> Labeled {
    let shared: Vec<usize> = a.legs.iter().copied().filter(|l| b.legs.contains(l)).collect();
    let free_a: Vec<usize> = (0..a.legs.len()).filter(|&k| !shared.contains(&a.legs[k])).collect();
    let free_b: Vec<usize> = (0..b.legs.len()).filter(|&k| !shared.contains(&b.legs[k])).collect();
    let sh_a: Vec<usize> = shared.iter().map(|l| a.legs.iter().position(|x| x == l).unwrap()).collect();
    let sh_b: Vec<usize> = shared.iter().map(|l| b.legs.iter().position(|x| x == l).unwrap()).collect();

    let perm_a: Vec<usize> = free_a.iter().chain(&sh_a).copied().collect();
    let perm_b: Vec<usize> = sh_b.iter().chain(&free_b).copied().collect();
    let ma = a.t.permuted(&perm_a);
    let mb = b.t.permuted(&perm_b);
    let rows: usize = free_a.iter().map(|&k| a.t.shape()[k]).product();
    let inner: usize = sh_a.iter().map(|&k| a.t.shape()[k]).product();
    let cols: usize = free_b.iter().map(|&k| b.t.shape()[k]).product();

    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; rows * cols];
    let (da, db) = (ma.data(), mb.data());
    for r in 0..rows {
        let row = &mut out[r * cols..(r + 1) * cols];
        for s in 0..inner {
            let x = da[r * inner + s];
            if x == zero {
                continue;
            }
            let brow = &db[s * cols..(s + 1) * cols];
            for (o, y) in row.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    }
    let shape: Vec<usize> =
        free_a.iter().map(|&k| a.t.shape()[k]).chain(free_b.iter().map(|&k| b.t.shape()[k])).collect();
    let legs: Vec<usize> = free_a.iter().map(|&k| a.legs[k]).chain(free_b.iter().map(|&k| b.legs[k])).collect();
    Labeled { t: Tensor::new(shape, out).expect("contraction shape"), legs }
}

/// Sums over pairs of axes carrying the same label (a node wired to itself).
fn trace_repeated(mut lt: Labeled) -> Labeled {
    loop {
        let pair = (0..lt.legs.len())
            .flat_map(|p| (p + 1..lt.legs.len()).map(move |q| (p, q)))
            .find(|&(p, q)| lt.legs[p] == lt.legs[q]);
        let Some((p, q)) = pair else {
            return lt;
        };
        let others: Vec<usize> = (0..lt.legs.len()).filter(|&k| k != p && k != q).collect();
        let perm: Vec<usize> = others.iter().copied().chain([p, q]).collect();
        let t = lt.t.permuted(&perm);
        let dim = lt.t.shape()[p];
        let rest: usize = others.iter().map(|&k| lt.t.shape()[k]).product();
        let data: Vec<Complex64> =
            (0..rest).map(|o| (0..dim).map(|k| t.data()[o * dim * dim + k * dim + k]).sum()).collect();
        let shape = others.iter().map(|&k| lt.t.shape()[k]).collect();
        lt = Labeled {
            t: Tensor::new(shape, data).expect("trace shape"),
            legs: others.iter().map(|&k| lt.legs[k]).collect(),
        };
    }
}
