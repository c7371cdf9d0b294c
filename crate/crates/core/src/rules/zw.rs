//! The ZW rule catalog.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::params::{ParamKind, ParamSpec, Params};
use super::{pick, random_complex, side, Built, Rule, RuleDescriptor, RuleError};
use crate::diagram::{constructors, Calculus, Diagram, DiagramBuilder, NodeKind, Source};
use crate::semantics::factorial;

fn ps(name: &'static str, kind: ParamKind, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind, doc }
}

fn rule(
    name: &'static str,
    summary: &'static str,
    params: Vec<ParamSpec>,
    side_conditions: Vec<&'static str>,
    build: fn(&Params) -> Result<Built, RuleError>,
    sample: fn(&mut ChaCha8Rng, &[usize]) -> Params,
) -> Rule {
    Rule {
        desc: RuleDescriptor { name, calculus: Calculus::Zw, derived: false, summary, params, side_conditions },
        build,
        sample,
    }
}

/// ZX dimensions `d` become ZW labels `d - 1`.
fn labels(dims: &[usize]) -> Vec<usize> {
    let l: Vec<usize> = dims.iter().filter(|&&d| d >= 2).map(|d| d - 1).collect();
    if l.is_empty() {
        vec![1]
    } else {
        l
    }
}

fn label_at_most(rng: &mut ChaCha8Rng, dims: &[usize], cap: usize) -> usize {
    let ok: Vec<usize> = labels(dims).into_iter().filter(|&l| l <= cap).collect();
    if ok.is_empty() {
        cap
    } else {
        pick(rng, &ok)
    }
}

pub(super) fn rules() -> Vec<Rule> {
    use ParamKind::*;
    vec![
        rule(
            "zw-fusion",
            "two ZW spiders of the same label joined by a wire fuse; phases multiply",
            vec![
                ps("a", Int, "label"),
                ps("n1", Int, "inputs of the upper spider"),
                ps("m1", Int, "outputs of the upper spider, besides the joining wire"),
                ps("n2", Int, "inputs of the lower spider, besides the joining wire"),
                ps("m2", Int, "outputs of the lower spider"),
                ps("r", Complex, "phase of the upper spider"),
                ps("s", Complex, "phase of the lower spider"),
            ],
            vec![],
            zw_fusion,
            |rng, dims| {
                let mut p = Params::new().with("a", pick(rng, &labels(dims)));
                for k in ["n1", "m1", "n2", "m2"] {
                    p.set(k, rng.gen_range(0..=2usize));
                }
                p.with("r", random_complex(rng)).with("s", random_complex(rng))
            },
        ),
        rule(
            "zw-identity",
            "a 1->1 ZW spider with phase 1 is a plain wire",
            vec![ps("a", Int, "label")],
            vec![],
            |p| {
                let a = label(p, "a")?;
                let lhs = Diagram::generator(spider(Complex64::new(1.0, 0.0), a, 1, 1))?;
                Ok(Built::new(lhs, constructors::wires(Calculus::Zw, &[a])))
            },
            |rng, dims| Params::new().with("a", pick(rng, &labels(dims))),
        ),
        rule(
            "w-assoc",
            "a W-node feeding a W-node on one of its legs flattens into one W-node",
            vec![
                ps("c", Int, "big label of the outer W-node"),
                ps("b", Int, "label of the joining wire"),
                ps("a", Ints, "small labels of the inner W-node"),
                ps("d", Ints, "other small labels of the outer W-node"),
            ],
            vec!["b >= min(c, sum a)", "c >= b and c >= every d", "b >= every a"],
            w_assoc,
            |rng, dims| {
                let c = pick(rng, &labels(dims));
                let a: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| label_at_most(rng, dims, c)).collect();
                let lo = a.iter().copied().max().unwrap().max(c.min(a.iter().sum()));
                let b = rng.gen_range(lo..=c);
                let d: Vec<usize> = (0..rng.gen_range(0..=1)).map(|_| label_at_most(rng, dims, c)).collect();
                Params::new().with("c", c).with("b", b).with("a", a).with("d", d)
            },
        ),
        rule(
            "w-phase-copy",
            "a 1->1 ZW phase on the big leg of a W-node is copied onto every small leg",
            vec![ps("a", Int, "big label"), ps("b", Ints, "small labels"), ps("r", Complex, "phase")],
            vec!["at least one small leg", "a >= every b"],
            w_phase_copy,
            |rng, dims| {
                let a = pick(rng, &labels(dims));
                let b: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| label_at_most(rng, dims, a)).collect();
                Params::new().with("a", a).with("b", b).with("r", random_complex(rng))
            },
        ),
        rule(
            "w-add",
            "merging two ZW phase states with a W-node adds their phases",
            vec![ps("a", Int, "label"), ps("r", Complex, "first phase"), ps("s", Complex, "second phase")],
            vec![],
            w_add,
            |rng, dims| {
                Params::new()
                    .with("a", pick(rng, &labels(dims)))
                    .with("r", random_complex(rng))
                    .with("s", random_complex(rng))
            },
        ),
        rule(
            "scalar-unit",
            "the scalar 1 is the empty diagram",
            vec![],
            vec![],
            |_| {
                let lhs = constructors::scalar(Calculus::Zw, Complex64::new(1.0, 0.0));
                Ok(Built::new(lhs, Diagram::empty(Calculus::Zw)))
            },
            |_, _| Params::new(),
        ),
        rule(
            "w-unit",
            "a leg of a W-node capped by the W-effect disappears",
            vec![
                ps("a", Int, "big label"),
                ps("b", Ints, "remaining small labels"),
                ps("e", Int, "label of the capped leg"),
            ],
            vec!["a >= every b and a >= e"],
            w_unit,
            |rng, dims| {
                let a = pick(rng, &labels(dims));
                let b: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| label_at_most(rng, dims, a)).collect();
                let e = label_at_most(rng, dims, a);
                Params::new().with("a", a).with("b", b).with("e", e)
            },
        ),
        rule(
            "w-bialgebra",
            "a W-merge followed by a W-split equals a grid of pairwise W-nodes",
            vec![
                ps("a", Ints, "input labels"),
                ps("b", Ints, "output labels"),
                ps("c", Int, "label of the middle wire"),
            ],
            vec!["c >= min(sum a, sum b)", "c >= every a and every b", "at least one input and one output"],
            w_bialgebra,
            |rng, dims| {
                let a: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| pick(rng, &labels(dims))).collect();
                let b: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| pick(rng, &labels(dims))).collect();
                let lo = a.iter().sum::<usize>().min(b.iter().sum()).max(*a.iter().chain(&b).max().unwrap());
                Params::new().with("a", a).with("b", b).with("c", lo + rng.gen_range(0..=1usize))
            },
        ),
        rule(
            "zero-copy",
            "the vacuum state is copied by a ZW spider",
            vec![ps("a", Int, "label"), ps("m", Int, "copies"), ps("r", Complex, "phase")],
            vec![],
            zero_copy,
            |rng, dims| {
                Params::new()
                    .with("a", pick(rng, &labels(dims)))
                    .with("m", rng.gen_range(0..=3usize))
                    .with("r", random_complex(rng))
            },
        ),
        rule(
            "ket-w",
            "a number state |k> is k single excitations merged by a W-node",
            vec![ps("a", Int, "label"), ps("k", Int, "excitation number")],
            vec!["0 < k <= a"],
            ket_w,
            |rng, dims| {
                let a = pick(rng, &labels(dims));
                Params::new().with("a", a).with("k", rng.gen_range(1..=a))
            },
        ),
        rule(
            "zero-phase",
            "a ZW spider with phase 0 disconnects into vacuum states and effects",
            vec![ps("a", Int, "label"), ps("n", Int, "inputs"), ps("m", Int, "outputs")],
            vec![],
            zero_phase,
            |rng, dims| {
                Params::new()
                    .with("a", pick(rng, &labels(dims)))
                    .with("n", rng.gen_range(0..=2usize))
                    .with("m", rng.gen_range(0..=2usize))
            },
        ),
        rule(
            "w-loop",
            "splitting into n legs and merging back is the ZW phase n",
            vec![ps("a", Int, "label"), ps("n", Int, "number of parallel legs")],
            vec![],
            w_loop,
            |rng, dims| Params::new().with("a", pick(rng, &labels(dims))).with("n", rng.gen_range(1..=3usize)),
        ),
        rule(
            "w-comm",
            "swapping two adjacent small legs of a W-node reorders them",
            vec![
                ps("a", Int, "big label"),
                ps("b", Ints, "small labels"),
                ps("i", Int, "position of the swapped pair"),
            ],
            vec!["i + 1 < len b", "a >= every b"],
            w_comm,
            |rng, dims| {
                let a = pick(rng, &labels(dims));
                let n = rng.gen_range(2..=3usize);
                let b: Vec<usize> = (0..n).map(|_| label_at_most(rng, dims, a)).collect();
                Params::new().with("a", a).with("b", b).with("i", rng.gen_range(0..n - 1))
            },
        ),
        rule(
            "ket-add",
            "merging number states with a W-node adds the excitation numbers",
            vec![
                ps("a", Int, "label of the first state"),
                ps("b", Int, "label of the second state"),
                ps("c", Int, "label of the merged wire"),
                ps("k", Int, "first excitation number"),
                ps("l", Int, "second excitation number"),
            ],
            vec!["1 <= k <= a", "1 <= l <= b", "k + l <= c", "c >= a and c >= b"],
            ket_add,
            |rng, dims| {
                let (a, b) = (pick(rng, &labels(dims)), pick(rng, &labels(dims)));
                let (k, l) = (rng.gen_range(1..=a), rng.gen_range(1..=b));
                let c = (k + l).max(a).max(b) + rng.gen_range(0..=1usize);
                Params::new().with("a", a).with("b", b).with("c", c).with("k", k).with("l", l)
            },
        ),
    ]
}

fn label(p: &Params, name: &str) -> Result<usize, RuleError> {
    let l = p.int(name)?;
    if l == 0 {
        return Err(side(format!("label {name} must be at least 1")));
    }
    Ok(l)
}

fn labels_param(p: &Params, name: &str) -> Result<Vec<usize>, RuleError> {
    let v = p.ints(name)?;
    if v.contains(&0) {
        return Err(side(format!("labels {name} must be at least 1")));
    }
    Ok(v)
}

fn spider(phase: Complex64, label: usize, n_in: usize, n_out: usize) -> NodeKind {
    NodeKind::ZwSpider { phase, label, n_in, n_out }
}

fn w(big: usize, small: &[usize]) -> NodeKind {
    NodeKind::WNode { big, small: small.to_vec() }
}

fn ket(index: usize, label: usize) -> NodeKind {
    NodeKind::ZwKet { index, label }
}

fn bounded_by(big: usize, small: &[usize], what: &str) -> Result<(), RuleError> {
    match small.iter().max() {
        Some(&m) if m > big => Err(side(format!("{what}: {big} is below the leg label {m}"))),
        _ => Ok(()),
    }
}

fn zw_fusion(p: &Params) -> Result<Built, RuleError> {
    let a = label(p, "a")?;
    let (n1, m1, n2, m2) = (p.int("n1")?, p.int("m1")?, p.int("n2")?, p.int("m2")?);
    let (r, s) = (p.complex("r")?, p.complex("s")?);
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i1 = b.inputs(&vec![a; n1]);
    let i2 = b.inputs(&vec![a; n2]);
    let o1 = b.node(spider(r, a, n1, m1 + 1), &i1);
    let mut feed = vec![o1[m1]];
    feed.extend(i2);
    let o2 = b.node(spider(s, a, n2 + 1, m2), &feed);
    b.outputs(&o1[..m1]);
    b.outputs(&o2);
    let lhs = b.finish()?;
    let rhs = Diagram::generator(spider(r * s, a, n1 + n2, m1 + m2))?;
    Ok(Built::new(lhs, rhs))
}

fn w_assoc(p: &Params) -> Result<Built, RuleError> {
    let (c, bb) = (label(p, "c")?, label(p, "b")?);
    let (a, d) = (labels_param(p, "a")?, labels_param(p, "d")?);
    bounded_by(c, &d, "c")?;
    bounded_by(c, &[bb], "c")?;
    bounded_by(bb, &a, "b")?;
    let sum: usize = a.iter().sum();
    if bb < c.min(sum) {
        return Err(side(format!("b = {bb} must be at least min(c, sum a) = {}", c.min(sum))));
    }
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(c);
    let mut outer = vec![bb];
    outer.extend(&d);
    let legs = b.node(w(c, &outer), &[i]);
    let inner = b.node(w(bb, &a), &[legs[0]]);
    b.outputs(&inner);
    b.outputs(&legs[1..]);
    let lhs = b.finish()?;
    let all: Vec<usize> = a.iter().chain(&d).copied().collect();
    Ok(Built::new(lhs, Diagram::generator(w(c, &all))?))
}

fn w_phase_copy(p: &Params) -> Result<Built, RuleError> {
    let (a, bv, r) = (label(p, "a")?, labels_param(p, "b")?, p.complex("r")?);
    if bv.is_empty() {
        return Err(side("at least one small leg"));
    }
    bounded_by(a, &bv, "a")?;
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(a);
    let s = b.node1(spider(r, a, 1, 1), &[i]);
    let outs = b.node(w(a, &bv), &[s]);
    b.outputs(&outs);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(a);
    let outs = b.node(w(a, &bv), &[i]);
    for (o, &l) in outs.into_iter().zip(&bv) {
        let s = b.node1(spider(r, l, 1, 1), &[o]);
        b.output(s);
    }
    Ok(Built::new(lhs, b.finish()?))
}

fn w_add(p: &Params) -> Result<Built, RuleError> {
    let (a, r, s) = (label(p, "a")?, p.complex("r")?, p.complex("s")?);
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let x = b.node1(spider(r, a, 0, 1), &[]);
    let y = b.node1(spider(s, a, 0, 1), &[]);
    let o = b.place(&constructors::w_merge(a, &[a, a])?, &[x, y]);
    b.outputs(&o);
    let lhs = b.finish()?;
    let rhs = Diagram::generator(spider(r + s, a, 0, 1))?;
    let coeffs: Vec<Complex64> = (0..=a).map(|k| (r + s).powu(k as u32) / factorial(k)).collect();
    let mut built = Built::new(lhs, rhs);
    built.derived.set("c", coeffs);
    Ok(built)
}

fn w_unit(p: &Params) -> Result<Built, RuleError> {
    let (a, bv, e) = (label(p, "a")?, labels_param(p, "b")?, label(p, "e")?);
    bounded_by(a, &bv, "a")?;
    bounded_by(a, &[e], "a")?;
    let mut small = bv.clone();
    small.push(e);
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(a);
    let legs = b.node(w(a, &small), &[i]);
    b.node(w(e, &[]), &[legs[bv.len()]]);
    b.outputs(&legs[..bv.len()]);
    let lhs = b.finish()?;
    Ok(Built::new(lhs, Diagram::generator(w(a, &bv))?))
}

fn w_bialgebra(p: &Params) -> Result<Built, RuleError> {
    let (a, bv, c) = (labels_param(p, "a")?, labels_param(p, "b")?, label(p, "c")?);
    if a.is_empty() || bv.is_empty() {
        return Err(side("at least one input and one output"));
    }
    bounded_by(c, &a, "c")?;
    bounded_by(c, &bv, "c")?;
    let lo = a.iter().sum::<usize>().min(bv.iter().sum());
    if c < lo {
        return Err(side(format!("c = {c} must be at least min(sum a, sum b) = {lo}")));
    }
    let (n, m) = (a.len(), bv.len());
    let l: Vec<Vec<usize>> = a.iter().map(|&ai| bv.iter().map(|&bj| ai.min(bj)).collect()).collect();

    let mut b = DiagramBuilder::new(Calculus::Zw);
    let ins = b.inputs(&a);
    let mid = b.place(&constructors::w_merge(c, &a)?, &ins);
    let outs = b.node(w(c, &bv), &mid);
    b.outputs(&outs);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zw);
    let ins = b.inputs(&a);
    let grid: Vec<Vec<Source>> = ins.iter().enumerate().map(|(i, &s)| b.node(w(a[i], &l[i]), &[s])).collect();
    for j in 0..m {
        let col: Vec<usize> = (0..n).map(|i| l[i][j]).collect();
        let feeds: Vec<Source> = (0..n).map(|i| grid[i][j]).collect();
        let o = b.place(&constructors::w_merge(bv[j], &col)?, &feeds);
        b.outputs(&o);
    }
    let mut built = Built::new(lhs, b.finish()?);
    built.derived.set("l", l);
    Ok(built)
}

fn zero_copy(p: &Params) -> Result<Built, RuleError> {
    let (a, m, r) = (label(p, "a")?, p.int("m")?, p.complex("r")?);
    let zero = Complex64::new(0.0, 0.0);
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let v = b.node1(spider(zero, a, 0, 1), &[]);
    let outs = b.node(spider(r, a, 1, m), &[v]);
    b.outputs(&outs);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zw);
    for _ in 0..m {
        let v = b.node1(spider(zero, a, 0, 1), &[]);
        b.output(v);
    }
    Ok(Built::new(lhs, b.finish()?))
}

fn ket_w(p: &Params) -> Result<Built, RuleError> {
    let (a, k) = (label(p, "a")?, p.int("k")?);
    if k == 0 || k > a {
        return Err(side(format!("k = {k} must satisfy 0 < k <= a = {a}")));
    }
    let lhs = Diagram::generator(ket(k, a))?;
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let ones: Vec<Source> = (0..k).map(|_| b.node1(ket(1, 1), &[])).collect();
    let o = b.place(&constructors::w_merge(a, &vec![1; k])?, &ones);
    b.outputs(&o);
    Ok(Built::new(lhs, b.finish()?))
}

fn zero_phase(p: &Params) -> Result<Built, RuleError> {
    let (a, n, m) = (label(p, "a")?, p.int("n")?, p.int("m")?);
    let zero = Complex64::new(0.0, 0.0);
    let lhs = Diagram::generator(spider(zero, a, n, m))?;
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let ins = b.inputs(&vec![a; n]);
    for i in ins {
        b.node(w(a, &[]), &[i]);
    }
    for _ in 0..m {
        let v = b.node1(spider(zero, a, 0, 1), &[]);
        b.output(v);
    }
    Ok(Built::new(lhs, b.finish()?))
}

fn w_loop(p: &Params) -> Result<Built, RuleError> {
    let (a, n) = (label(p, "a")?, p.int("n")?);
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let i = b.input(a);
    let legs = b.node(w(a, &vec![a; n]), &[i]);
    let o = b.place(&constructors::w_merge(a, &vec![a; n])?, &legs);
    b.outputs(&o);
    let lhs = b.finish()?;
    let rhs = Diagram::generator(spider(Complex64::new(n as f64, 0.0), a, 1, 1))?;
    Ok(Built::new(lhs, rhs))
}

fn w_comm(p: &Params) -> Result<Built, RuleError> {
    let (a, bv, i) = (label(p, "a")?, labels_param(p, "b")?, p.int("i")?);
    if i + 1 >= bv.len() {
        return Err(side(format!("i + 1 = {} must be below the number of legs {}", i + 1, bv.len())));
    }
    bounded_by(a, &bv, "a")?;
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let s = b.input(a);
    let legs = b.node(w(a, &bv), &[s]);
    let swapped = b.node(NodeKind::ZwSwap { a: bv[i], b: bv[i + 1] }, &[legs[i], legs[i + 1]]);
    let mut outs = legs.clone();
    outs[i] = swapped[0];
    outs[i + 1] = swapped[1];
    b.outputs(&outs);
    let lhs = b.finish()?;
    let mut perm = bv.clone();
    perm.swap(i, i + 1);
    Ok(Built::new(lhs, Diagram::generator(w(a, &perm))?))
}

fn ket_add(p: &Params) -> Result<Built, RuleError> {
    let (a, bb, c) = (label(p, "a")?, label(p, "b")?, label(p, "c")?);
    let (k, l) = (p.int("k")?, p.int("l")?);
    if k == 0 || k > a || l == 0 || l > bb {
        return Err(side("1 <= k <= a and 1 <= l <= b"));
    }
    if k + l > c {
        return Err(side(format!("k + l = {} exceeds c = {c}", k + l)));
    }
    bounded_by(c, &[a, bb], "c")?;
    let mut b = DiagramBuilder::new(Calculus::Zw);
    let x = b.node1(ket(k, a), &[]);
    let y = b.node1(ket(l, bb), &[]);
    let o = b.place(&constructors::w_merge(c, &[a, bb])?, &[x, y]);
    b.outputs(&o);
    let lhs = b.finish()?;
    Ok(Built::new(lhs, Diagram::generator(ket(k + l, c))?))
}

#[cfg(test)]
mod tests {
    use super::super::{instantiate, ParamValue};
    use super::*;
    use crate::semantics::interpret;

    #[test]
    fn w_add_state_follows_exponential_coefficients() {
        let (r, s) = (Complex64::new(0.5, 1.0), Complex64::new(-1.0, 0.25));
        let p = Params::new().with("a", 3usize).with("r", r).with("s", s);
        let inst = instantiate("w-add", &p).unwrap();
        let Some(ParamValue::Complexes(c)) = inst.derived.get("c") else { panic!("no coefficients") };
        for d in [&inst.lhs, &inst.rhs] {
            let t = interpret(d).unwrap();
            for (k, ck) in c.iter().enumerate() {
                assert!((t.data()[k] / factorial(k).sqrt() - ck).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn side_conditions_are_enforced() {
        let p = Params::new().with("a", 2usize).with("k", 3usize);
        assert!(matches!(instantiate("ket-w", &p), Err(RuleError::SideCondition { .. })));
        let p = Params::new().with("c", 3usize).with("b", 1usize).with("a", vec![1, 1]).with("d", Vec::<usize>::new());
        assert!(matches!(instantiate("w-assoc", &p), Err(RuleError::SideCondition { .. })));
        let p = Params::new().with("a", vec![2, 2]).with("b", vec![2, 2]).with("c", 3usize);
        assert!(matches!(instantiate("w-bialgebra", &p), Err(RuleError::SideCondition { .. })));
    }
}
