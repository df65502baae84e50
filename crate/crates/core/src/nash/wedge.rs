//! The wedge `(s_0 ⊕ ∇s_0) ∧ … ∧ (s_n ⊕ ∇s_n)` of n+1 sections, read off as the
//! coefficient of the frame's reference form `dx_{b_1} ∧ … ∧ dx_{b_n}`.

use crate::algebra::{determinant, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::geometry::DifferentialFrame;

fn check_sections(frame: &DifferentialFrame, sections: &[RationalFunction]) -> Result<()> {
    let n = frame.rank();
    if sections.len() != n + 1 {
        return Err(Error::Size(format!("{} sections given, {} needed", sections.len(), n + 1)));
    }
    for (i, s) in sections.iter().enumerate() {
        if frame.chart().is_zero_on(s.numerator()) {
            return Err(Error::Argument(format!("section {i} vanishes on the chart")));
        }
    }
    Ok(())
}

/// `s_0⋯s_n · dlog(s_1/s_0) ∧ … ∧ dlog(s_n/s_0)`: no connection enters.
///
/// With `s_i = a_i/b_i`, row `i` is `dlog a_i − dlog b_i − dlog a_0 + dlog b_0`
/// over `δ·a_i·b_i·a_0·b_0`, so the result is `det N / (δ^n a_0^{n-1} b_0^{n+1} Π_{i≥1} b_i²)`
/// with `N` polynomial.
pub fn principal_parts_wedge(frame: &DifferentialFrame, sections: &[RationalFunction]) -> Result<RationalFunction> {
    check_sections(frame, sections)?;
    let n = frame.rank();
    let (a0, b0) = (sections[0].numerator(), sections[0].denominator());
    let da0 = frame.scaled_differential(a0);
    let db0 = frame.scaled_differential(b0);
    let mut rows = Vec::with_capacity(n);
    let mut den = &frame.certificate().pow(n as u32) * &(&a0.pow(n as u32 - 1) * &b0.pow(n as u32 + 1));
    for s in &sections[1..] {
        let (a, b) = (s.numerator(), s.denominator());
        let da = frame.scaled_differential(a);
        let db = frame.scaled_differential(b);
        let (ab0, a0b0, ab) = (&(a * b) * b0, a0 * b0, a * b);
        let row: Vec<Polynomial> = (0..n)
            .map(|k| {
                let plus = &(&da[k] * &(b * &a0b0)) + &(&db0[k] * &(&ab * a0));
                let minus = &(&db[k] * &(a * &a0b0)) + &(&da0[k] * &ab0);
                &plus - &minus
            })
            .collect();
        rows.push(row);
        den = &den * &b.pow(2);
    }
    RationalFunction::new(determinant(&rows), den)
}

/// `Σ_i (-1)^i s_i ∇s_0 ∧ … ∧ (omit i) ∧ … ∧ ∇s_n` with `∇ = d + η`, where `η`
/// is a 1-form given by its frame coefficients (`None` for `η = 0`).
pub fn connection_wedge(
    frame: &DifferentialFrame,
    sections: &[RationalFunction],
    eta: Option<&[RationalFunction]>,
) -> Result<RationalFunction> {
    check_sections(frame, sections)?;
    let n = frame.rank();
    if let Some(e) = eta {
        if e.len() != n {
            return Err(Error::Size(format!("connection form has {} coefficients, {n} needed", e.len())));
        }
    }
    let ring = frame.chart().ring();
    let nabla: Vec<Vec<RationalFunction>> = sections
        .iter()
        .map(|s| {
            let mut d = frame.differential(s);
            if let Some(e) = eta {
                for (slot, c) in d.iter_mut().zip(e) {
                    *slot = slot.add(&s.mul(c));
                }
            }
            d
        })
        .collect();
    let mut acc = RationalFunction::zero(ring);
    for i in 0..sections.len() {
        let rows: Vec<Vec<RationalFunction>> = (0..sections.len()).filter(|&j| j != i).map(|j| nabla[j].clone()).collect();
        let minor = if rows.is_empty() {
            RationalFunction::one(ring)
        } else {
            determinant(&rows)
        };
        let term = sections[i].mul(&minor);
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Polynomial form of the wedge for polynomial sections: the determinant of
/// the rows `[s_i, δ·D_1 s_i, …, δ·D_n s_i]`. The wedge equals this divided by `δ^n`.
pub fn wedge_numerator(sections: &[Polynomial], scaled_gradients: &[Vec<Polynomial>]) -> Polynomial {
    let rows: Vec<Vec<Polynomial>> = sections
        .iter()
        .zip(scaled_gradients)
        .map(|(s, g)| {
            let mut row = Vec::with_capacity(g.len() + 1);
            row.push(s.clone());
            row.extend(g.iter().cloned());
            row
        })
        .collect();
    determinant(&rows)
}
