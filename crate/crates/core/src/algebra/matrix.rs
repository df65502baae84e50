use std::sync::Arc;

use super::polynomial::{Polynomial, Ring};
use super::rational_function::RationalFunction;
use crate::error::{Error, Result};

/// The arithmetic a determinant needs.
pub trait CommutativeElement: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_element(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl CommutativeElement for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.ring())
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl CommutativeElement for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.ring())
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Determinant by cofactor expansion along the first row. `rows` must be
/// square and nonempty; callers handle the 0×0 case.
pub fn determinant<T: CommutativeElement>(rows: &[Vec<T>]) -> T {
    let k = rows.len();
    debug_assert!(k > 0 && rows.iter().all(|r| r.len() == k));
    let cols: Vec<usize> = (0..k).collect();
    det_rec(rows, 0, &cols)
}

fn det_rec<T: CommutativeElement>(rows: &[Vec<T>], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return rows[row][cols[0]].clone();
    }
    if cols.len() == 2 {
        let a = rows[row][cols[0]].mul_ref(&rows[row + 1][cols[1]]);
        let b = rows[row][cols[1]].mul_ref(&rows[row + 1][cols[0]]);
        return a.sub_ref(&b);
    }
    let mut acc = rows[row][cols[0]].zero_like();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero_element() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = det_rec(rows, row + 1, &rest);
        if sub.is_zero_element() {
            continue;
        }
        let term = entry.mul_ref(&sub);
        acc = if pos % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Dense matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Size(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            entries.extend(r);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect()
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(&self.ring);
        }
        determinant(&self.submatrix(rows, cols))
    }

    /// All k×k minors, row subsets outermost, both in lexicographic order.
    /// The empty minor (k = 0) is 1.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>> {
        if k > self.rows.min(self.cols) {
            return Err(Error::Size(format!(
                "{k}x{k} minors requested from a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let col_sets = subsets(self.cols, k);
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in &col_sets {
                out.push(self.minor(&rs, cs));
            }
        }
        Ok(out)
    }

    /// Left-multiplies by an integer matrix (`coeffs` is r×rows).
    pub fn combine_rows(&self, coeffs: &[Vec<i64>]) -> PolyMatrix {
        let mut rows = Vec::with_capacity(coeffs.len());
        for comb in coeffs {
            let mut row = vec![Polynomial::zero(&self.ring); self.cols];
            for (r, &a) in comb.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let s = Polynomial::from_int(&self.ring, a);
                for (c, slot) in row.iter_mut().enumerate() {
                    *slot = &*slot + &(&s * self.get(r, c));
                }
            }
            rows.push(row);
        }
        PolyMatrix::new(&self.ring, rows, self.cols).expect("consistent shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, MonomialOrder};

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y"], MonomialOrder::GrevLex)
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn minor_examples() {
        let r = ring();
        let m = PolyMatrix::new(&r, vec![vec![p("-3x^2"), p("2y")]], 2).unwrap();
        assert_eq!(m.minors(1).unwrap(), vec![p("-3x^2"), p("2y")]);

        let id = PolyMatrix::new(&r, vec![vec![p("1"), p("0")], vec![p("0"), p("1")]], 2).unwrap();
        assert_eq!(id.minors(2).unwrap(), vec![p("1")]);

        let m = PolyMatrix::new(&r, vec![vec![p("x"), p("y")], vec![p("1"), p("1")]], 2).unwrap();
        assert_eq!(m.minors(2).unwrap(), vec![p("x - y")]);
        assert!(matches!(m.minors(3), Err(Error::Size(_))));
        assert_eq!(m.minors(0).unwrap(), vec![p("1")]);
    }

    #[test]
    fn minor_enumeration_order_is_lexicographic() {
        assert_eq!(
            subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn three_by_three_determinant() {
        let rows = vec![
            vec![p("x"), p("1"), p("0")],
            vec![p("0"), p("y"), p("1")],
            vec![p("1"), p("0"), p("x")],
        ];
        // x*(y*x - 0) - 1*(0 - 1) + 0 = x^2 y + 1
        assert_eq!(determinant(&rows), p("x^2*y + 1"));
    }
}
