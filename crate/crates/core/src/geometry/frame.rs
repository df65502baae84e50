use crate::algebra::{determinant, subsets, PolyMatrix, Polynomial, RationalFunction};
use crate::error::{Error, Result};

use super::chart::AffineChart;

/// Expresses every `dx_k` through `n` basis differentials. With `δ` the
/// certificate minor, `δ·dx_k = Σ_b numerators[i][b]·dx_b` for the i-th
/// dependent variable `k`.
#[derive(Clone, Debug)]
pub struct DifferentialFrame {
    chart: AffineChart,
    basis: Vec<usize>,
    dependent: Vec<usize>,
    rows: Vec<usize>,
    certificate: Polynomial,
    numerators: Vec<Vec<Polynomial>>,
}

impl DifferentialFrame {
    /// Picks basis columns (preferred first, then lexicographic subsets) whose
    /// complementary c×c minor is nonzero on the chart and whose expansions
    /// satisfy every Jacobian relation. Nilpotent minors are skipped as well:
    /// on a non-reduced chart they would certify a frame that exists nowhere.
    pub fn new(chart: &AffineChart, preferred: Option<&[usize]>) -> Result<Self> {
        if chart.dim() <= 0 {
            return Err(Error::Argument(format!(
                "a differential frame needs a positive-dimensional chart, got dimension {}",
                chart.dim()
            )));
        }
        let nv = chart.nvars();
        let n = chart.dim() as usize;
        let c = chart.codim();
        let jac = chart.jacobian();
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        if let Some(p) = preferred {
            let mut p = p.to_vec();
            p.sort_unstable();
            p.dedup();
            if p.len() != n || p.iter().any(|&v| v >= nv) {
                return Err(Error::Argument(format!(
                    "preferred frame must name {n} distinct chart variables"
                )));
            }
            candidates.push(p);
        }
        candidates.extend(subsets(nv, n));
        let row_sets = subsets(jac.nrows(), c);
        for basis in candidates {
            let dependent: Vec<usize> = (0..nv).filter(|v| !basis.contains(v)).collect();
            if c == 0 {
                return Ok(DifferentialFrame {
                    chart: chart.clone(),
                    basis,
                    dependent,
                    rows: Vec::new(),
                    certificate: Polynomial::one(chart.ring()),
                    numerators: Vec::new(),
                });
            }
            for rows in &row_sets {
                let delta = jac.minor(rows, &dependent);
                if !chart.is_non_nilpotent(&delta) {
                    continue;
                }
                let numerators = expansion_numerators(&jac, rows, &dependent, &basis);
                let frame = DifferentialFrame {
                    chart: chart.clone(),
                    basis: basis.clone(),
                    dependent: dependent.clone(),
                    rows: rows.clone(),
                    certificate: delta,
                    numerators,
                };
                if frame.satisfies_relations() {
                    return Ok(frame);
                }
            }
        }
        Err(Error::DegenerateFrame(
            "every c×c Jacobian minor vanishes on the chart (non-reduced or dimension-mismatched input?)".into(),
        ))
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    /// Jacobian rows used for the certificate.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn certificate(&self) -> &Polynomial {
        &self.certificate
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `δ·dx_v` in the basis, as n polynomials.
    pub fn scaled_expansion(&self, v: usize) -> Vec<Polynomial> {
        if let Some(b) = self.basis.iter().position(|&x| x == v) {
            let mut row = vec![Polynomial::zero(self.chart.ring()); self.basis.len()];
            row[b] = self.certificate.clone();
            return row;
        }
        let i = self.dependent.iter().position(|&x| x == v).expect("variable of the chart");
        self.numerators[i].clone()
    }

    /// `dx_v` in the basis, as n rational functions.
    pub fn expansion(&self, v: usize) -> Vec<RationalFunction> {
        self.scaled_expansion(v)
            .into_iter()
            .map(|p| RationalFunction::new(p, self.certificate.clone()).expect("nonzero certificate"))
            .collect()
    }

    /// `δ·df` in the basis: `δ·∂f/∂x_b + Σ_k ∂f/∂x_k·N[k][b]`.
    pub fn scaled_differential(&self, f: &Polynomial) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = self
            .basis
            .iter()
            .map(|&b| &self.certificate * &f.partial_derivative(b).expect("in range"))
            .collect();
        for (i, &k) in self.dependent.iter().enumerate() {
            let dk = f.partial_derivative(k).expect("in range");
            if dk.is_zero() {
                continue;
            }
            for (b, slot) in out.iter_mut().enumerate() {
                if !self.numerators[i][b].is_zero() {
                    *slot = &*slot + &(&dk * &self.numerators[i][b]);
                }
            }
        }
        out
    }

    /// `df` in the basis for a rational function `f`.
    pub fn differential(&self, f: &RationalFunction) -> Vec<RationalFunction> {
        let den = f.denominator();
        let num = f.numerator();
        let dn = self.scaled_differential(num);
        if den.is_constant() {
            return dn
                .into_iter()
                .map(|p| RationalFunction::new(p, &self.certificate * den).expect("nonzero"))
                .collect();
        }
        let dd = self.scaled_differential(den);
        let outer = &(den * den) * &self.certificate;
        dn.iter()
            .zip(&dd)
            .map(|(a, b)| RationalFunction::new(&(den * a) - &(num * b), outer.clone()).expect("nonzero"))
            .collect()
    }

    /// Every Jacobian row, with the expansions substituted, vanishes on the chart.
    pub fn satisfies_relations(&self) -> bool {
        let jac = self.chart.jacobian();
        (0..jac.nrows()).all(|r| {
            if self.rows.contains(&r) {
                return true;
            }
            (0..self.basis.len()).all(|b| {
                let mut acc = &jac.get(r, self.basis[b]).clone() * &self.certificate;
                for (i, &k) in self.dependent.iter().enumerate() {
                    acc = &acc + &(jac.get(r, k) * &self.numerators[i][b]);
                }
                self.chart.is_zero_on(&acc)
            })
        })
    }
}

/// `-adj(J[R][K])·J[R][B]`, so that `δ·dx_K = numerators·dx_B`.
fn expansion_numerators(jac: &PolyMatrix, rows: &[usize], dependent: &[usize], basis: &[usize]) -> Vec<Vec<Polynomial>> {
    let ring = jac.ring();
    let c = rows.len();
    let a = jac.submatrix(rows, dependent);
    let adj: Vec<Vec<Polynomial>> = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| {
                    if c == 1 {
                        return Polynomial::one(ring);
                    }
                    // adj[i][j] = (-1)^(i+j) * det(a without row j, column i)
                    let sub: Vec<Vec<Polynomial>> = (0..c)
                        .filter(|&r| r != j)
                        .map(|r| (0..c).filter(|&cc| cc != i).map(|cc| a[r][cc].clone()).collect())
                        .collect();
                    let d = determinant(&sub);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -&d
                    }
                })
                .collect()
        })
        .collect();
    (0..c)
        .map(|i| {
            basis
                .iter()
                .map(|&b| {
                    let mut acc = Polynomial::zero(ring);
                    for (j, &r) in rows.iter().enumerate() {
                        let e = jac.get(r, b);
                        if !e.is_zero() && !adj[i][j].is_zero() {
                            acc = &acc - &(&adj[i][j] * e);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
