//! Exact sparse linear solving over the Gaussian rationals.
//!
//! Gauss-Jordan elimination with a fewest-unknowns pivot heuristic. The
//! systems produced by trace reconstruction are recurrence-shaped (most
//! equations touch a handful of unknowns), so elimination in that order
//! stays sparse; exactness means pivoting is purely a fill-in concern.

use crate::error::{Error, Result};
use crate::rational::GaussianRational;
use std::collections::{BTreeMap, BTreeSet};

pub struct SparseSystem {
    ncols: usize,
    rows: Vec<Row>,
}

struct Row {
    lhs: BTreeMap<usize, GaussianRational>,
    rhs: GaussianRational,
}

pub struct SparseSolution {
    pub values: Vec<GaussianRational>,
    /// True when every column was pinned by a pivot; free columns are set
    /// to zero in `values`.
    pub unique: bool,
    pub free_columns: Vec<usize>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn add_equation(
        &mut self,
        lhs: impl IntoIterator<Item = (usize, GaussianRational)>,
        rhs: GaussianRational,
    ) {
        let mut row: BTreeMap<usize, GaussianRational> = BTreeMap::new();
        for (col, c) in lhs {
            assert!(col < self.ncols, "column out of range");
            if c.is_zero() {
                continue;
            }
            let entry = row.entry(col).or_insert_with(GaussianRational::zero);
            *entry += &c;
            if entry.is_zero() {
                row.remove(&col);
            }
        }
        self.rows.push(Row { lhs: row, rhs });
    }

    /// Eliminate until every equation is spent. Errors on the first row
    /// that reduces to `0 = c` with `c` nonzero.
    pub fn solve(mut self) -> Result<SparseSolution> {
        // Column occupancy index for cheap "who contains this pivot" lookups.
        let mut by_col: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &c in row.lhs.keys() {
                by_col.entry(c).or_default().insert(i);
            }
        }
        let mut active: BTreeSet<usize> = (0..self.rows.len()).collect();
        // pivot column -> row index holding its solved equation
        let mut pivots: BTreeMap<usize, usize> = BTreeMap::new();

        while let Some(&i) = active
            .iter()
            .min_by_key(|&&i| (self.rows[i].lhs.len(), i))
        {
            active.remove(&i);
            if self.rows[i].lhs.is_empty() {
                if self.rows[i].rhs.is_zero() {
                    continue;
                }
                return Err(Error::InconsistentSystem(format!(
                    "an equation reduced to 0 = {}",
                    self.rows[i].rhs
                )));
            }
            let (&pcol, pc) = self.rows[i].lhs.iter().next().unwrap();
            let inv = pc.inv();
            // Normalize the pivot row in place.
            let mut prow = std::mem::take(&mut self.rows[i].lhs);
            for v in prow.values_mut() {
                *v = &*v * &inv;
            }
            self.rows[i].rhs = &self.rows[i].rhs * &inv;
            self.rows[i].lhs = prow;

            // Eliminate the pivot column from every other row, active or
            // already-pivoted, so pivot rows end up mutually reduced.
            let holders: Vec<usize> = by_col
                .get(&pcol)
                .map(|s| s.iter().copied().filter(|&j| j != i).collect())
                .unwrap_or_default();
            for j in holders {
                let factor = match self.rows[j].lhs.get(&pcol) {
                    Some(f) => f.clone(),
                    None => continue,
                };
                let (pivot_lhs, pivot_rhs) = {
                    let r = &self.rows[i];
                    (r.lhs.clone(), r.rhs.clone())
                };
                let row = &mut self.rows[j];
                for (col, c) in &pivot_lhs {
                    let delta = &factor * c;
                    let entry = row.lhs.entry(*col).or_insert_with(GaussianRational::zero);
                    *entry -= &delta;
                    if entry.is_zero() {
                        row.lhs.remove(col);
                        if let Some(s) = by_col.get_mut(col) {
                            s.remove(&j);
                        }
                    } else {
                        by_col.entry(*col).or_default().insert(j);
                    }
                }
                row.rhs = &row.rhs - &(&factor * &pivot_rhs);
            }
            pivots.insert(pcol, i);
        }

        let free_columns: Vec<usize> = (0..self.ncols)
            .filter(|c| !pivots.contains_key(c))
            .collect();
        let mut values = vec![GaussianRational::zero(); self.ncols];
        for (&col, &i) in &pivots {
            // Pivot rows reference only free columns besides their pivot;
            // free columns take the value zero.
            values[col] = self.rows[i].rhs.clone();
        }
        Ok(SparseSolution {
            values,
            unique: free_columns.is_empty(),
            free_columns,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    #[test]
    fn two_by_two_unique() {
        // x + y = 3, x - y = 1 -> x = 2, y = 1
        let mut s = SparseSystem::new(2);
        s.add_equation([(0, g(1, 0)), (1, g(1, 0))], g(3, 0));
        s.add_equation([(0, g(1, 0)), (1, g(-1, 0))], g(1, 0));
        let sol = s.solve().unwrap();
        assert!(sol.unique);
        assert_eq!(sol.values, vec![g(2, 0), g(1, 0)]);
    }

    #[test]
    fn complex_coefficients() {
        // i x = 1 -> x = -i
        let mut s = SparseSystem::new(1);
        s.add_equation([(0, g(0, 1))], g(1, 0));
        let sol = s.solve().unwrap();
        assert_eq!(sol.values, vec![g(0, -1)]);
    }

    #[test]
    fn redundant_rows_are_fine() {
        let mut s = SparseSystem::new(2);
        s.add_equation([(0, g(1, 0)), (1, g(1, 0))], g(2, 0));
        s.add_equation([(0, g(2, 0)), (1, g(2, 0))], g(4, 0));
        s.add_equation([(0, g(1, 0))], g(1, 0));
        let sol = s.solve().unwrap();
        assert!(sol.unique);
        assert_eq!(sol.values, vec![g(1, 0), g(1, 0)]);
    }

    #[test]
    fn inconsistency_is_reported() {
        let mut s = SparseSystem::new(2);
        s.add_equation([(0, g(1, 0)), (1, g(1, 0))], g(2, 0));
        s.add_equation([(0, g(1, 0)), (1, g(1, 0))], g(3, 0));
        assert!(matches!(s.solve(), Err(Error::InconsistentSystem(_))));
    }

    #[test]
    fn free_columns_drop_uniqueness() {
        let mut s = SparseSystem::new(3);
        s.add_equation([(0, g(1, 0)), (2, g(1, 0))], g(5, 0));
        s.add_equation([(2, g(1, 0))], g(4, 0));
        let sol = s.solve().unwrap();
        assert!(!sol.unique);
        assert_eq!(sol.free_columns, vec![1]);
        assert_eq!(sol.values, vec![g(1, 0), g(0, 0), g(4, 0)]);
    }

    #[test]
    fn cancellation_inside_add_equation() {
        let mut s = SparseSystem::new(1);
        s.add_equation([(0, g(1, 0)), (0, g(-1, 0))], g(0, 0));
        let sol = s.solve().unwrap();
        assert!(!sol.unique);
        assert_eq!(sol.free_columns, vec![0]);
    }

    #[test]
    fn banded_recurrence_system() {
        // u_{k+1} = u_{k-1} + k u_k on 0..=6 with u_0 = 0, u_1 = 1,
        // written as equations; checks that elimination handles chains.
        let n = 7usize;
        let mut s = SparseSystem::new(n);
        s.add_equation([(0, g(1, 0))], g(0, 0));
        s.add_equation([(1, g(1, 0))], g(1, 0));
        for k in 1..n - 1 {
            s.add_equation(
                [
                    (k + 1, g(1, 0)),
                    (k - 1, g(-1, 0)),
                    (k, g(-(k as i64), 0)),
                ],
                g(0, 0),
            );
        }
        let sol = s.solve().unwrap();
        assert!(sol.unique);
        let mut expect = vec![0i64, 1];
        for k in 1..n - 1 {
            let next = expect[k - 1] + (k as i64) * expect[k];
            expect.push(next);
        }
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(sol.values[k], g(*e, 0));
        }
    }
}
