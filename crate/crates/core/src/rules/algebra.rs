//! Phase-vector arithmetic used by the rules.

use num_complex::Complex64;

use super::RuleError;
use crate::phase::PhaseVector;

/// Cyclic convolution `r_k = sum_i p_i q_{k-i mod a}`.
///
/// `r_0` is generally not one; callers split it off as a global scalar.
pub fn convolve_phase_vectors(p: &PhaseVector, q: &PhaseVector, a: usize) -> Result<Vec<Complex64>, RuleError> {
    if p.len() != a || q.len() != a {
        return Err(RuleError::SideCondition {
            rule: "PA".into(),
            condition: format!("both vectors must have length {a}, found {} and {}", p.len(), q.len()),
        });
    }
    Ok((0..a).map(|k| (0..a).map(|i| p.get(i) * q.get((k + a - i) % a)).sum()).collect())
}

fn close(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= 1e-9 * 1f64.max(x.norm()).max(y.norm())
}

/// Solves `p_i p_j = q_{i+j mod a}` over all `i, j < a`.
///
/// Returns `None` when the constraints clash.
pub fn solve_pc(p: &PhaseVector, a: usize) -> Option<PhaseVector> {
    solve_pc_bounded(p, a, a, a)
}

/// Like [`solve_pc`] but only over `i < min(a, b)` and `j < min(a, c)`:
/// the constraints that survive when the two summands arrive through
/// embeddings from dimensions `b` and `c`. Entries of `q` that no
/// constraint reaches are set to one.
pub fn solve_pc_bounded(p: &PhaseVector, a: usize, b: usize, c: usize) -> Option<PhaseVector> {
    if p.len() != a {
        return None;
    }
    let mut q: Vec<Option<Complex64>> = vec![None; a];
    for i in 0..a.min(b) {
        for j in 0..a.min(c) {
            let k = (i + j) % a;
            let v = p.get(i) * p.get(j);
            match q[k] {
                None => q[k] = Some(v),
                Some(existing) if close(existing, v) => {}
                Some(_) => return None,
            }
        }
    }
    let mut entries: Vec<Complex64> = q.into_iter().map(|x| x.unwrap_or(Complex64::new(1.0, 0.0))).collect();
    // q_0 = p_0 p_0 = 1 exactly
    entries[0] = Complex64::new(1.0, 0.0);
    Some(PhaseVector::new(entries).expect("leading entry pinned"))
}

/// `k-hat`: the phase vector with entries `r_{m-j} / r_{d-j}`, subscripts
/// taken mod `d`.
pub fn k2_transform(r: &PhaseVector, j: usize, d: usize) -> Result<PhaseVector, RuleError> {
    if r.len() != d {
        return Err(RuleError::SideCondition {
            rule: "K2".into(),
            condition: format!("phase vector must have length {d}, found {}", r.len()),
        });
    }
    let j = j % d;
    let denom = r.get((d - j) % d);
    if denom == Complex64::new(0.0, 0.0) {
        return Err(RuleError::SideCondition {
            rule: "K2".into(),
            condition: format!("r_{{d-j}} = r_{} must be nonzero", (d - j) % d),
        });
    }
    let entries: Vec<Complex64> = (0..d).map(|m| r.get((m + d - j) % d) / denom).collect();
    Ok(PhaseVector::normalized(&entries).expect("entry 0 is r_{d-j}/r_{d-j}").1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> PhaseVector {
        PhaseVector::real(v).unwrap()
    }

    fn re(v: &[Complex64]) -> Vec<f64> {
        v.iter().map(|x| x.re).collect()
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(re(&convolve_phase_vectors(&pv(&[1.0, 2.0]), &pv(&[1.0, 3.0]), 2).unwrap()), vec![7.0, 5.0]);
        assert_eq!(re(&convolve_phase_vectors(&pv(&[1.0, 0.0]), &pv(&[1.0, 3.0]), 2).unwrap()), vec![1.0, 3.0]);
        assert_eq!(
            re(&convolve_phase_vectors(&pv(&[1.0, 1.0, 1.0]), &pv(&[1.0, 1.0, 1.0]), 3).unwrap()),
            vec![3.0, 3.0, 3.0]
        );
        assert!(convolve_phase_vectors(&pv(&[1.0, 1.0]), &pv(&[1.0, 1.0, 1.0]), 2).is_err());
    }

    #[test]
    fn pc_examples() {
        assert_eq!(solve_pc(&pv(&[1.0, -1.0]), 2), Some(pv(&[1.0, -1.0])));
        assert_eq!(solve_pc(&pv(&[1.0, 2.0]), 2), None);
        // p_1 p_3 = 0 clashes with q_0 = 1 once every pair (i, j) is constrained
        assert_eq!(solve_pc(&pv(&[1.0, 0.0, 0.0, 0.0]), 4), None);
        let q = solve_pc_bounded(&pv(&[1.0, 0.0, 0.0, 0.0]), 4, 2, 2).unwrap();
        assert_eq!(re(&q.as_slice()[..3]), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn k2_examples() {
        let k = k2_transform(&pv(&[1.0, 2.0, 4.0]), 1, 3).unwrap();
        assert_eq!(re(&k.as_slice()[1..]), vec![0.25, 0.5]);
        let k = k2_transform(&pv(&[1.0, 2.0, 4.0]), 0, 3).unwrap();
        assert_eq!(k, pv(&[1.0, 2.0, 4.0]));
        assert!(matches!(k2_transform(&pv(&[1.0, 0.0]), 1, 2), Err(RuleError::SideCondition { .. })));
    }
}
