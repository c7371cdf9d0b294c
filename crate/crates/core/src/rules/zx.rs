//! The ZX rule catalog.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::algebra::{convolve_phase_vectors, k2_transform, solve_pc_bounded};
use super::params::{ParamKind, ParamSpec, Params};
use super::{pick, random_complex, random_phase, side, Built, Rule, RuleDescriptor, RuleError};
use crate::diagram::{compose_seq, constructors, Calculus, Diagram, DiagramBuilder, NodeKind, Source};
use crate::phase::PhaseVector;
use crate::semantics::factorial;

fn ps(name: &'static str, kind: ParamKind, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind, doc }
}

fn rule(
    name: &'static str,
    derived: bool,
    summary: &'static str,
    params: Vec<ParamSpec>,
    side_conditions: Vec<&'static str>,
    build: fn(&Params) -> Result<Built, RuleError>,
    sample: fn(&mut ChaCha8Rng, &[usize]) -> Params,
) -> Rule {
    Rule {
        desc: RuleDescriptor { name, calculus: Calculus::Zx, derived, summary, params, side_conditions },
        build,
        sample,
    }
}

pub(super) fn rules() -> Vec<Rule> {
    use ParamKind::*;
    vec![
        rule(
            "S1",
            false,
            "two Z-spiders joined by a wire fuse; phases multiply, cut off at the smaller spider",
            vec![
                ps("in1", Ints, "input dims of the upper spider"),
                ps("out1", Ints, "output dims of the upper spider, besides the joining wire"),
                ps("in2", Ints, "input dims of the lower spider, besides the joining wire"),
                ps("out2", Ints, "output dims of the lower spider"),
                ps("mid", Int, "dimension of the joining wire"),
                ps("p", Complexes, "phase of the upper spider"),
                ps("q", Complexes, "phase of the lower spider"),
            ],
            vec!["at least one external leg"],
            s1,
            sample_s1,
        ),
        rule(
            "S2",
            false,
            "a phase-free 1->1 Z-spider is a plain wire",
            vec![ps("a", Int, "dimension")],
            vec![],
            s2,
            |rng, dims| Params::new().with("a", pick(rng, dims)),
        ),
        rule(
            "S4",
            true,
            "two X-spiders joined by a wire fuse",
            vec![
                ps("a", Int, "dimension"),
                ps("n1", Int, "inputs of the upper spider"),
                ps("m1", Int, "outputs of the upper spider, besides the joining wire"),
                ps("n2", Int, "inputs of the lower spider, besides the joining wire"),
                ps("m2", Int, "outputs of the lower spider"),
            ],
            vec![],
            s4,
            |rng, dims| {
                let mut p = Params::new().with("a", pick(rng, dims));
                for k in ["n1", "m1", "n2", "m2"] {
                    p.set(k, rng.gen_range(0..=2usize));
                }
                p
            },
        ),
        rule("D1", false, "the antipode is an involution", vec![ps("a", Int, "dimension")], vec![], d1, |rng, dims| {
            Params::new().with("a", pick(rng, dims))
        }),
        rule(
            "DA",
            false,
            "a Z-phase slides along the X-cap, reversing its vector",
            vec![ps("a", Int, "dimension"), ps("r", Complexes, "phase vector")],
            vec![],
            da,
            |rng, dims| {
                let a = pick(rng, dims);
                Params::new().with("a", a).with("r", &random_phase(rng, a))
            },
        ),
        rule(
            "K0",
            false,
            "a basis state is copied by a Z-spider, picking up its phase entry",
            vec![
                ps("a", Int, "dimension"),
                ps("j", Int, "basis index"),
                ps("m", Int, "number of copies"),
                ps("r", Complexes, "phase vector"),
            ],
            vec!["j < a"],
            k0,
            |rng, dims| {
                let a = pick(rng, dims);
                Params::new()
                    .with("a", a)
                    .with("j", rng.gen_range(0..a))
                    .with("m", rng.gen_range(0..=3usize))
                    .with("r", &random_phase(rng, a))
            },
        ),
        rule(
            "K2",
            false,
            "shifts on all outputs of a Z-spider move to its inputs, transforming the phase",
            vec![
                ps("d", Int, "dimension"),
                ps("j", Int, "shift amount"),
                ps("n", Int, "inputs"),
                ps("m", Int, "outputs"),
                ps("r", Complexes, "phase vector"),
            ],
            vec!["j < d", "r_{d-j mod d} != 0", "n + m >= 1"],
            k2,
            |rng, dims| {
                let d = pick(rng, dims);
                let n = rng.gen_range(0..=2usize);
                let m = rng.gen_range(if n == 0 { 1 } else { 0 }..=2usize);
                Params::new()
                    .with("d", d)
                    .with("j", rng.gen_range(0..d))
                    .with("n", n)
                    .with("m", m)
                    .with("r", &random_phase(rng, d))
            },
        ),
        rule(
            "ZNF",
            false,
            "a mixed-dimensional Z-spider unfolds into a qudit spider with embeddings",
            vec![
                ps("ins", Ints, "input dims"),
                ps("outs", Ints, "output dims"),
                ps("r", Complexes, "phase vector, length the smallest dim"),
            ],
            vec!["at least one leg"],
            znf,
            |rng, dims| {
                let n = rng.gen_range(0..=2usize);
                let m = rng.gen_range(if n == 0 { 1 } else { 0 }..=2usize);
                let ins: Vec<usize> = (0..n).map(|_| pick(rng, dims)).collect();
                let outs: Vec<usize> = (0..m).map(|_| pick(rng, dims)).collect();
                let a = ins.iter().chain(&outs).copied().min().expect("one leg");
                Params::new().with("ins", ins).with("outs", outs).with("r", &random_phase(rng, a))
            },
        ),
        rule(
            "XM",
            false,
            "two embeddings compose through the smallest of the three dimensions",
            vec![ps("a", Int, "source"), ps("b", Int, "middle"), ps("c", Int, "target")],
            vec![],
            xm,
            |rng, dims| Params::new().with("a", pick(rng, dims)).with("b", pick(rng, dims)).with("c", pick(rng, dims)),
        ),
        rule(
            "PA",
            false,
            "adding two Z-states with an X-spider convolves their phases",
            vec![ps("a", Int, "dimension"), ps("p", Complexes, "first phase"), ps("q", Complexes, "second phase")],
            vec!["r_0 != 0 for r the cyclic convolution of p and q"],
            pa,
            |rng, dims| {
                let a = pick(rng, dims);
                Params::new().with("a", a).with("p", &random_phase(rng, a)).with("q", &random_phase(rng, a))
            },
        ),
        rule(
            "PC",
            false,
            "a Z-phase after an X-sum splits into equal phases on the summands",
            vec![
                ps("a", Int, "dimension of the sum"),
                ps("b", Int, "dimension of the first summand"),
                ps("c", Int, "dimension of the second summand"),
                ps("p", Complexes, "phase on each summand"),
            ],
            vec!["p_i p_j = q_{i+j mod a} is solvable for i < min(a, b), j < min(a, c)"],
            pc,
            sample_pc,
        ),
        rule(
            "WW",
            false,
            "a sum-then-split network of X-spiders with factorial phases equals a grid of pairwise wires",
            vec![
                ps("a", Ints, "input labels (wire dim a_i + 1)"),
                ps("b", Ints, "output labels (wire dim b_j + 1)"),
                ps("c", Int, "label of the middle wire"),
            ],
            vec!["c >= min(sum a, sum b)", "all labels >= 1", "at least one input and one output"],
            ww,
            |rng, dims| {
                let labels: Vec<usize> = dims.iter().map(|d| d - 1).collect();
                let a: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| pick(rng, &labels)).collect();
                let b: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| pick(rng, &labels)).collect();
                let lo = a.iter().sum::<usize>().min(b.iter().sum());
                Params::new().with("a", a).with("b", b).with("c", lo + rng.gen_range(0..=2usize))
            },
        ),
        rule(
            "HP",
            false,
            "copying a times and adding back gives zero",
            vec![ps("a", Int, "dimension")],
            vec![],
            hp,
            |rng, dims| Params::new().with("a", pick(rng, dims)),
        ),
        rule(
            "HX",
            true,
            "Hadamards turn a phase-free Z-spider into a scaled X-spider",
            vec![ps("d", Int, "dimension"), ps("n", Int, "inputs"), ps("m", Int, "outputs")],
            vec![],
            hx,
            |rng, dims| {
                Params::new()
                    .with("d", pick(rng, dims))
                    .with("n", rng.gen_range(0..=2usize))
                    .with("m", rng.gen_range(0..=2usize))
            },
        ),
    ]
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_dims<'a>(dims: impl IntoIterator<Item = &'a usize>) -> Result<(), RuleError> {
    for &d in dims {
        if d < 2 {
            return Err(side(format!("dimension {d} is below 2")));
        }
    }
    Ok(())
}

fn zs(inputs: &[usize], outputs: &[usize], phase: PhaseVector) -> NodeKind {
    NodeKind::ZSpider { inputs: inputs.to_vec(), outputs: outputs.to_vec(), phase }
}

fn zph(d: usize, f: impl Fn(usize) -> f64) -> PhaseVector {
    PhaseVector::new((0..d).map(|k| c(f(k))).collect()).expect("f(0) = 1")
}

fn emb(b: &mut DiagramBuilder, s: Source, from: usize, to: usize) -> Source {
    b.node1(NodeKind::Embedding { from, to }, &[s])
}

fn s1(p: &Params) -> Result<Built, RuleError> {
    let (in1, out1, in2, out2) = (p.ints("in1")?, p.ints("out1")?, p.ints("in2")?, p.ints("out2")?);
    let mid = p.int("mid")?;
    check_dims(in1.iter().chain(&out1).chain(&in2).chain(&out2).chain([&mid]))?;
    let ext: Vec<usize> = in1.iter().chain(&out1).chain(&in2).chain(&out2).copied().collect();
    let a = *ext.iter().min().ok_or_else(|| side("at least one external leg"))?;
    let a1 = in1.iter().chain(&out1).copied().chain([mid]).min().expect("mid");
    let a2 = in2.iter().chain(&out2).copied().chain([mid]).min().expect("mid");
    let pv = p.phase("p", a1)?;
    let qv = p.phase("q", a2)?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i1 = b.inputs(&in1);
    let i2 = b.inputs(&in2);
    let mut up_outs = out1.clone();
    up_outs.push(mid);
    let o1 = b.node(zs(&in1, &up_outs, pv.clone()), &i1);
    let mut low_ins = vec![mid];
    low_ins.extend(&in2);
    let mut feed = vec![o1[out1.len()]];
    feed.extend(i2);
    let o2 = b.node(zs(&low_ins, &out2, qv.clone()), &feed);
    b.outputs(&o1[..out1.len()]);
    b.outputs(&o2);
    let lhs = b.finish()?;

    let cut = a1.min(a2);
    let r: Vec<Complex64> = (0..a).map(|k| if k < cut { pv.get(k) * qv.get(k) } else { c(0.0) }).collect();
    let r = PhaseVector::new(r).expect("1 * 1");
    let ins: Vec<usize> = in1.iter().chain(&in2).copied().collect();
    let outs: Vec<usize> = out1.iter().chain(&out2).copied().collect();
    let rhs = Diagram::generator(zs(&ins, &outs, r.clone()))?;
    let mut built = Built::new(lhs, rhs);
    built.derived.set("r", &r);
    built.derived.set("cut", cut);
    Ok(built)
}

fn sample_s1(rng: &mut ChaCha8Rng, dims: &[usize]) -> Params {
    loop {
        let ar: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=2usize)).collect();
        let total: usize = ar.iter().sum();
        if total == 0 || total > 4 {
            continue;
        }
        let mut draw = |n: usize| -> Vec<usize> { (0..n).map(|_| pick(rng, dims)).collect() };
        let (in1, out1, in2, out2) = (draw(ar[0]), draw(ar[1]), draw(ar[2]), draw(ar[3]));
        let mid = pick(rng, dims);
        let a1 = in1.iter().chain(&out1).copied().chain([mid]).min().unwrap();
        let a2 = in2.iter().chain(&out2).copied().chain([mid]).min().unwrap();
        return Params::new()
            .with("in1", in1)
            .with("out1", out1)
            .with("in2", in2)
            .with("out2", out2)
            .with("mid", mid)
            .with("p", &random_phase(rng, a1))
            .with("q", &random_phase(rng, a2));
    }
}

fn s2(p: &Params) -> Result<Built, RuleError> {
    let a = p.int("a")?;
    check_dims([&a])?;
    let lhs = Diagram::generator(zs(&[a], &[a], PhaseVector::phase_free(a)))?;
    Ok(Built::new(lhs, constructors::wires(Calculus::Zx, &[a])))
}

fn s4(p: &Params) -> Result<Built, RuleError> {
    let a = p.int("a")?;
    check_dims([&a])?;
    let (n1, m1, n2, m2) = (p.int("n1")?, p.int("m1")?, p.int("n2")?, p.int("m2")?);
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i1 = b.inputs(&vec![a; n1]);
    let i2 = b.inputs(&vec![a; n2]);
    let o1 = b.node(NodeKind::XSpider { dim: a, n_in: n1, n_out: m1 + 1 }, &i1);
    let mut feed = vec![o1[m1]];
    feed.extend(i2);
    let o2 = b.node(NodeKind::XSpider { dim: a, n_in: n2 + 1, n_out: m2 }, &feed);
    b.outputs(&o1[..m1]);
    b.outputs(&o2);
    let lhs = b.finish()?;
    let rhs = Diagram::generator(NodeKind::XSpider { dim: a, n_in: n1 + n2, n_out: m1 + m2 })?;
    Ok(Built::new(lhs, rhs))
}

fn d1(p: &Params) -> Result<Built, RuleError> {
    let a = p.int("a")?;
    check_dims([&a])?;
    let n = constructors::antipode(a)?;
    Ok(Built::new(compose_seq(&n, &n)?, constructors::wires(Calculus::Zx, &[a])))
}

fn da(p: &Params) -> Result<Built, RuleError> {
    let a = p.int("a")?;
    check_dims([&a])?;
    let r = p.phase("r", a)?;
    let side_of = |left: bool, phase: PhaseVector| -> Result<Diagram, RuleError> {
        let mut b = DiagramBuilder::new(Calculus::Zx);
        let legs = b.node(NodeKind::XSpider { dim: a, n_in: 0, n_out: 2 }, &[]);
        let (l, rr) = if left {
            (b.node1(zs(&[a], &[a], phase), &[legs[0]]), legs[1])
        } else {
            (legs[0], b.node1(zs(&[a], &[a], phase), &[legs[1]]))
        };
        b.outputs(&[l, rr]);
        Ok(b.finish()?)
    };
    let mut built = Built::new(side_of(true, r.clone())?, side_of(false, r.reversed())?);
    built.derived.set("r_reversed", &r.reversed());
    Ok(built)
}

fn k0(p: &Params) -> Result<Built, RuleError> {
    let (a, j, m) = (p.int("a")?, p.int("j")?, p.int("m")?);
    check_dims([&a])?;
    if j >= a {
        return Err(side(format!("j = {j} must be below a = {a}")));
    }
    let r = p.phase("r", a)?;
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let k = b.node1(NodeKind::BasisKet { index: j, dim: a }, &[]);
    let outs = b.node(zs(&[a], &vec![a; m], r.clone()), &[k]);
    b.outputs(&outs);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    b.scalar(r.get(j));
    for _ in 0..m {
        let k = b.node1(NodeKind::BasisKet { index: j, dim: a }, &[]);
        b.output(k);
    }
    Ok(Built::new(lhs, b.finish()?))
}

fn k2(p: &Params) -> Result<Built, RuleError> {
    let (d, j, n, m) = (p.int("d")?, p.int("j")?, p.int("n")?, p.int("m")?);
    check_dims([&d])?;
    if j >= d {
        return Err(side(format!("j = {j} must be below d = {d}")));
    }
    if n + m == 0 {
        return Err(side("n + m >= 1"));
    }
    let r = p.phase("r", d)?;
    let khat = k2_transform(&r, j, d).map_err(|e| match e {
        RuleError::SideCondition { condition, .. } => side(condition),
        e => e,
    })?;
    let shift = constructors::shift(d, j)?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&vec![d; n]);
    let outs = b.node(zs(&vec![d; n], &vec![d; m], r.clone()), &ins);
    for o in outs {
        let s = b.place(&shift, &[o]);
        b.outputs(&s);
    }
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&vec![d; n]);
    let shifted: Vec<Source> = ins.iter().map(|&i| b.place(&shift, &[i])[0]).collect();
    let outs = b.node(zs(&vec![d; n], &vec![d; m], khat.clone()), &shifted);
    b.outputs(&outs);
    let scale = r.get((d - j) % d);
    b.scalar(scale);
    let rhs = b.finish()?;
    let mut built = Built::new(lhs, rhs);
    built.derived.set("khat", &khat);
    built.derived.set("scale", scale);
    Ok(built)
}

fn znf(p: &Params) -> Result<Built, RuleError> {
    let (ins, outs) = (p.ints("ins")?, p.ints("outs")?);
    check_dims(ins.iter().chain(&outs))?;
    let a = *ins.iter().chain(&outs).min().ok_or_else(|| side("at least one leg"))?;
    let r = p.phase("r", a)?;
    let lhs = Diagram::generator(zs(&ins, &outs, r.clone()))?;
    let rhs = constructors::general_z_spider(&ins, &outs, r)?;
    Ok(Built::new(lhs, rhs))
}

fn xm(p: &Params) -> Result<Built, RuleError> {
    let (a, bb, cc) = (p.int("a")?, p.int("b")?, p.int("c")?);
    check_dims([&a, &bb, &cc])?;
    let n = a.min(bb).min(cc);
    let lhs = compose_seq(&constructors::embedding(a, bb), &constructors::embedding(bb, cc))?;
    let rhs = compose_seq(&constructors::embedding(a, n), &constructors::embedding(n, cc))?;
    let mut built = Built::new(lhs, rhs);
    built.derived.set("N", n);
    Ok(built)
}

fn pa(p: &Params) -> Result<Built, RuleError> {
    let a = p.int("a")?;
    check_dims([&a])?;
    let (pv, qv) = (p.phase("p", a)?, p.phase("q", a)?);
    let r = convolve_phase_vectors(&pv, &qv, a)?;
    let (r0, rn) = PhaseVector::normalized(&r).ok_or_else(|| side("r_0 != 0"))?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let x = b.node1(zs(&[], &[a], pv), &[]);
    let y = b.node1(zs(&[], &[a], qv), &[]);
    let s = b.node1(NodeKind::XSpider { dim: a, n_in: 2, n_out: 1 }, &[x, y]);
    b.output(s);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    b.scalar(r0);
    let s = b.node1(zs(&[], &[a], rn), &[]);
    b.output(s);
    let mut built = Built::new(lhs, b.finish()?);
    built.derived.set("r", r);
    Ok(built)
}

fn pc(p: &Params) -> Result<Built, RuleError> {
    let (a, bb, cc) = (p.int("a")?, p.int("b")?, p.int("c")?);
    check_dims([&a, &bb, &cc])?;
    let pv = p.phase("p", a)?;
    let q = solve_pc_bounded(&pv, a, bb, cc).ok_or_else(|| side("p_i p_j = q_{i+j mod a} has no solution"))?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&[bb, cc]);
    let x = emb(&mut b, ins[0], bb, a);
    let y = emb(&mut b, ins[1], cc, a);
    let s = b.node1(NodeKind::XSpider { dim: a, n_in: 2, n_out: 1 }, &[x, y]);
    let o = b.node1(zs(&[a], &[a], q.clone()), &[s]);
    b.output(o);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&[bb, cc]);
    let x = emb(&mut b, ins[0], bb, a);
    let x = b.node1(zs(&[a], &[a], pv.clone()), &[x]);
    let y = emb(&mut b, ins[1], cc, a);
    let y = b.node1(zs(&[a], &[a], pv), &[y]);
    let s = b.node1(NodeKind::XSpider { dim: a, n_in: 2, n_out: 1 }, &[x, y]);
    b.output(s);
    let mut built = Built::new(lhs, b.finish()?);
    built.derived.set("q", &q);
    Ok(built)
}

fn sample_pc(rng: &mut ChaCha8Rng, dims: &[usize]) -> Params {
    let (a, b, c) = (pick(rng, dims), pick(rng, dims), pick(rng, dims));
    let wraps = a.min(b) + a.min(c) - 1 > a;
    let z = if wraps {
        let t = rng.gen_range(0..a) as f64;
        Complex64::from_polar(1.0, std::f64::consts::TAU * t / a as f64)
    } else {
        random_complex(rng)
    };
    let p: Vec<Complex64> = (0..a).map(|i| if i == 0 { c_one() } else { z.powu(i as u32) }).collect();
    Params::new().with("a", a).with("b", b).with("c", c).with("p", p)
}

fn c_one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn ww(p: &Params) -> Result<Built, RuleError> {
    let (a, bv, cc) = (p.ints("a")?, p.ints("b")?, p.int("c")?);
    if a.is_empty() || bv.is_empty() {
        return Err(side("at least one input and one output"));
    }
    if a.iter().chain(&bv).chain([&cc]).any(|&x| x == 0) {
        return Err(side("all labels >= 1"));
    }
    let (n, m) = (a.len(), bv.len());
    let big_a: usize = a.iter().sum();
    let big_b: usize = bv.iter().sum();
    if cc < big_a.min(big_b) {
        return Err(side(format!("c = {cc} must be at least min(sum a, sum b) = {}", big_a.min(big_b))));
    }
    let l: Vec<Vec<usize>> = a.iter().map(|&ai| bv.iter().map(|&bj| ai.min(bj)).collect()).collect();
    let row: Vec<usize> = l.iter().map(|r| r.iter().sum()).collect();
    let col: Vec<usize> = (0..m).map(|j| l.iter().map(|r| r[j]).sum()).collect();
    let inv_fact = |d: usize| zph(d, |k| 1.0 / factorial(k));

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&a.iter().map(|x| x + 1).collect::<Vec<_>>());
    let mut summands = vec![];
    for (i, &s) in ins.iter().enumerate() {
        let d = a[i] + 1;
        let s = b.node1(zs(&[d], &[d], inv_fact(d)), &[s]);
        summands.push(emb(&mut b, s, d, big_a + 1));
    }
    let s = b.node1(NodeKind::XSpider { dim: big_a + 1, n_in: n, n_out: 1 }, &summands);
    let s = emb(&mut b, s, big_a + 1, cc + 1);
    let s = b.node1(zs(&[cc + 1], &[cc + 1], zph(cc + 1, factorial)), &[s]);
    let s = emb(&mut b, s, cc + 1, big_b + 1);
    let parts = b.node(NodeKind::XSpider { dim: big_b + 1, n_in: 1, n_out: m }, &[s]);
    for (j, &o) in parts.iter().enumerate() {
        let d = bv[j] + 1;
        let o = emb(&mut b, o, big_b + 1, d);
        let o = b.node1(zs(&[d], &[d], inv_fact(d)), &[o]);
        b.output(o);
    }
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&a.iter().map(|x| x + 1).collect::<Vec<_>>());
    let mut grid: Vec<Vec<Source>> = vec![];
    for (i, &s) in ins.iter().enumerate() {
        let s = emb(&mut b, s, a[i] + 1, row[i] + 1);
        let parts = b.node(NodeKind::XSpider { dim: row[i] + 1, n_in: 1, n_out: m }, &[s]);
        let cells = parts
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                let d = l[i][j] + 1;
                let x = emb(&mut b, x, row[i] + 1, d);
                b.node1(zs(&[d], &[d], inv_fact(d)), &[x])
            })
            .collect();
        grid.push(cells);
    }
    for j in 0..m {
        let feeds: Vec<Source> = (0..n).map(|i| emb(&mut b, grid[i][j], l[i][j] + 1, col[j] + 1)).collect();
        let s = b.node1(NodeKind::XSpider { dim: col[j] + 1, n_in: n, n_out: 1 }, &feeds);
        let o = emb(&mut b, s, col[j] + 1, bv[j] + 1);
        b.output(o);
    }
    let rhs = b.finish()?;
    let mut built = Built::new(lhs, rhs);
    built.derived.set("l", l);
    built.derived.set("A", row);
    built.derived.set("B", col);
    built.derived.set("A_sum", big_a);
    built.derived.set("B_sum", big_b);
    Ok(built)
}

fn hp(p: &Params) -> Result<Built, RuleError> {
    let a = p.int("a")?;
    check_dims([&a])?;
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i = b.input(a);
    let copies = b.node(zs(&[a], &vec![a; a], PhaseVector::phase_free(a)), &[i]);
    let s = b.node1(NodeKind::XSpider { dim: a, n_in: a, n_out: 1 }, &copies);
    b.output(s);
    let lhs = b.finish()?;

    let mut b = DiagramBuilder::new(Calculus::Zx);
    let i = b.input(a);
    b.node(zs(&[a], &[], PhaseVector::phase_free(a)), &[i]);
    let k = b.node1(NodeKind::BasisKet { index: 0, dim: a }, &[]);
    b.output(k);
    Ok(Built::new(lhs, b.finish()?))
}

fn hx(p: &Params) -> Result<Built, RuleError> {
    let (d, n, m) = (p.int("d")?, p.int("n")?, p.int("m")?);
    check_dims([&d])?;
    let h = constructors::hadamard(d)?;
    let hd = constructors::hadamard_dagger(d)?;
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&vec![d; n]);
    let pre: Vec<Source> = ins.iter().map(|&i| b.place(&hd, &[i])[0]).collect();
    let outs = b.node(zs(&vec![d; n], &vec![d; m], PhaseVector::phase_free(d)), &pre);
    for o in outs {
        let o = b.place(&h, &[o]);
        b.outputs(&o);
    }
    let lhs = b.finish()?;

    let v = (d as f64).powf((2.0 - m as f64 - n as f64) / 2.0);
    let mut b = DiagramBuilder::new(Calculus::Zx);
    let ins = b.inputs(&vec![d; n]);
    b.scalar(c(v));
    let outs = b.node(NodeKind::XSpider { dim: d, n_in: n, n_out: m }, &ins);
    b.outputs(&outs);
    let mut built = Built::new(lhs, b.finish()?);
    built.derived.set("v", c(v));
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::super::{instantiate, ParamValue};
    use super::*;

    fn cs(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x)).collect()
    }

    #[test]
    fn s1_multiplies_phases() {
        let p = Params::new()
            .with("in1", vec![2])
            .with("out1", Vec::<usize>::new())
            .with("in2", Vec::<usize>::new())
            .with("out2", vec![2])
            .with("mid", 2usize)
            .with("p", cs(&[1.0, 2.0]))
            .with("q", cs(&[1.0, 3.0]));
        let inst = instantiate("S1", &p).unwrap();
        assert_eq!(inst.derived.get("r"), Some(&ParamValue::Complexes(cs(&[1.0, 6.0]))));
    }

    #[test]
    fn xm_middle_dimension() {
        let p = Params::new().with("a", 2usize).with("b", 3usize).with("c", 4usize);
        assert_eq!(instantiate("XM", &p).unwrap().derived.get("N"), Some(&ParamValue::Int(2)));
    }

    #[test]
    fn ww_derived_quantities() {
        let p = Params::new().with("a", vec![2, 3]).with("b", vec![4, 1]).with("c", 5usize);
        let inst = instantiate("WW", &p).unwrap();
        assert_eq!(inst.derived.get("l"), Some(&ParamValue::Matrix(vec![vec![2, 1], vec![3, 1]])));
        assert_eq!(inst.derived.get("A"), Some(&ParamValue::Ints(vec![3, 4])));
        assert_eq!(inst.derived.get("B"), Some(&ParamValue::Ints(vec![5, 2])));
        let p = Params::new().with("a", vec![2, 3]).with("b", vec![4, 1]).with("c", 4usize);
        assert!(matches!(instantiate("WW", &p), Err(RuleError::SideCondition { .. })));
    }

    #[test]
    fn pc_and_k2_side_conditions() {
        let p = Params::new().with("a", 2usize).with("b", 2usize).with("c", 2usize).with("p", cs(&[1.0, 2.0]));
        let e = instantiate("PC", &p).unwrap_err();
        assert!(e.to_string().contains("PC"), "{e}");
        let p = Params::new()
            .with("d", 2usize)
            .with("j", 1usize)
            .with("n", 1usize)
            .with("m", 1usize)
            .with("r", cs(&[1.0, 0.0]));
        assert!(matches!(instantiate("K2", &p), Err(RuleError::SideCondition { .. })));
    }

    #[test]
    fn hx_scalar() {
        let p = Params::new().with("d", 2usize).with("n", 1usize).with("m", 1usize);
        assert_eq!(instantiate("HX", &p).unwrap().derived.get("v"), Some(&ParamValue::Complex(c(1.0))));
    }
}
