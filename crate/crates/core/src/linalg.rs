//! Dense linear algebra over the coefficient fields `F_p` and `F_{p^e}`.

use crate::modarith::CoeffRing;

/// Row-reduces `rows` in place to reduced echelon form and returns the pivot
/// columns. All rows must have the same length.
pub fn rref(field: &CoeffRing, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    assert!(field.is_field(), "rref needs field coefficients");
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = field.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a matrix given by its rows.
pub fn rank(field: &CoeffRing, rows: &[Vec<u64>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Incremental echelon basis over `F_p` for long streams of sparse-ish rows.
///
/// Rows are kept fully reduced against each other so that [`reduce`](Self::reduce)
/// returns canonical remainders modulo the span.
#[derive(Debug, Clone)]
pub struct FpEchelon {
    p: u32,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl FpEchelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        assert!(p < (1 << 15), "FpEchelon is intended for small primes");
        FpEchelon {
            p: p as u32,
            ncols,
            rows: Vec::new(),
            pivot_of_col: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&c| self.pivot_of_col[c].is_some())
            .collect()
    }

    /// Columns without a pivot; their unit vectors form a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&c| self.pivot_of_col[c].is_none())
            .collect()
    }

    fn inv(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut base = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    /// Remainder of `row` modulo the current span; zero exactly on the pivot columns.
    pub fn reduce(&self, row: &mut [u32]) {
        let p = self.p;
        for c in 0..self.ncols {
            let a = row[c];
            if a == 0 {
                continue;
            }
            if let Some(k) = self.pivot_of_col[c] {
                let f = p - a;
                for (x, &y) in row.iter_mut().zip(&self.rows[k]) {
                    if y != 0 {
                        *x = (*x + f * y) % p;
                    }
                }
            }
        }
    }

    /// Adds `row` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        assert_eq!(row.len(), self.ncols);
        let p = self.p;
        for x in row.iter_mut() {
            *x %= p;
        }
        self.reduce(&mut row);
        let Some(c) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.inv(row[c]);
        for x in row.iter_mut() {
            *x = *x * inv % p;
        }
        // keep the basis fully reduced
        for other in self.rows.iter_mut() {
            let f = other[c];
            if f != 0 {
                let f = p - f;
                for (x, &y) in other.iter_mut().zip(&row) {
                    if y != 0 {
                        *x = (*x + f * y) % p;
                    }
                }
            }
        }
        self.pivot_of_col[c] = Some(self.rows.len());
        self.rows.push(row);
        true
    }
}
