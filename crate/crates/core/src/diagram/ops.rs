use super::{Calculus, Diagram, DiagramBuilder, DiagramError, NodeKind, Source};

fn same_calculus(a: &Diagram, b: &Diagram) -> Result<Calculus, DiagramError> {
    if a.calculus() != b.calculus() {
        return Err(DiagramError::CalculusMismatch(a.calculus(), b.calculus()));
    }
    Ok(a.calculus())
}

/// Sequential composition: `top` first, its outputs feeding `bottom`'s inputs.
pub fn compose_seq(top: &Diagram, bottom: &Diagram) -> Result<Diagram, DiagramError> {
    let calc = same_calculus(top, bottom)?;
    for (slot, (t, b)) in top.outputs().iter().zip(bottom.inputs()).enumerate() {
        if t != b {
            return Err(DiagramError::SlotMismatch { slot, top: *t, bottom: *b });
        }
    }
    if top.outputs().len() != bottom.inputs().len() {
        return Err(DiagramError::WidthMismatch { top: top.outputs().len(), bottom: bottom.inputs().len() });
    }
    let mut b = DiagramBuilder::new(calc);
    let ins = b.inputs(top.inputs());
    let mid = b.place(top, &ins);
    let outs = b.place(bottom, &mid);
    b.outputs(&outs);
    b.finish()
}

/// Parallel composition: `left` beside `right`.
pub fn compose_par(left: &Diagram, right: &Diagram) -> Result<Diagram, DiagramError> {
    let calc = same_calculus(left, right)?;
    let mut b = DiagramBuilder::new(calc);
    let l_in = b.inputs(left.inputs());
    let r_in = b.inputs(right.inputs());
    let l_out = b.place(left, &l_in);
    let r_out = b.place(right, &r_in);
    b.outputs(&l_out);
    b.outputs(&r_out);
    b.finish()
}

/// Exchanges inputs and outputs by bending every boundary wire with a cap or
/// a cup. The interpretation is the index transpose of the original.
pub fn transpose(d: &Diagram) -> Diagram {
    let calc = d.calculus();
    let cap = |l: usize| match calc {
        Calculus::Zx => NodeKind::Cap { dim: l },
        Calculus::Zw => NodeKind::ZwCap { label: l },
    };
    let cup = |l: usize| match calc {
        Calculus::Zx => NodeKind::Cup { dim: l },
        Calculus::Zw => NodeKind::ZwCup { label: l },
    };
    let mut b = DiagramBuilder::new(calc);
    let new_ins: Vec<Source> = b.inputs(d.outputs());
    let mut feed = vec![];
    let mut new_outs = vec![];
    for &l in d.inputs() {
        let legs = b.node(cap(l), &[]);
        feed.push(legs[0]);
        new_outs.push(legs[1]);
    }
    let old_outs = b.place(d, &feed);
    for ((o, i), &l) in old_outs.into_iter().zip(new_ins).zip(d.outputs()) {
        b.node(cup(l), &[o, i]);
    }
    b.outputs(&new_outs);
    b.finish().expect("transpose of a valid diagram is valid")
}
