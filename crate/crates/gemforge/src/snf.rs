//! Smith normal form over any signed integer type.
//!
//! Generic over the scalar so unit tests can run on `i64` while the
//! homology pipeline instantiates [`crate::HomologyInt`]; intermediate
//! pivot growth is real even on modest matrices, so the pipeline must use
//! arbitrary precision.

use num_integer::Integer;
use num_traits::Signed;

/// Diagonal of the Smith form: positive entries `d1 | d2 | ... | dr`
/// followed by nothing (zero rows are dropped); `rank` is the number of
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf<T> {
    pub diagonal: Vec<T>,
}

impl<T> Snf<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Reduces `matrix` (rows of equal length) by unimodular row and column
/// operations. The input is consumed; the matrix may be empty or ragged-free
/// rectangular of any shape.
pub fn smith_normal_form<T>(mut matrix: Vec<Vec<T>>) -> Snf<T>
where
    T: Integer + Signed + Clone,
{
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    debug_assert!(matrix.iter().all(|r| r.len() == cols));
    let mut diagonal = Vec::new();
    let limit = rows.min(cols);
    for k in 0..limit {
        if !reduce_block(&mut matrix, k) {
            break; // remaining block is zero
        }
        diagonal.push(matrix[k][k].clone());
    }
    smooth(&mut diagonal);
    Snf { diagonal }
}

/// Brings the minimal nonzero entry of the trailing block to `(k,k)`,
/// clears its row and column, and makes the pivot divide the rest of the
/// block. Returns false when the block is entirely zero.
fn reduce_block<T>(m: &mut [Vec<T>], k: usize) -> bool
where
    T: Integer + Signed + Clone,
{
    let rows = m.len();
    let cols = m[0].len();
    loop {
        let Some((pi, pj)) = min_nonzero(m, k) else {
            return false;
        };
        m.swap(k, pi);
        swap_cols(m, k, pj);

        let mut clean = true;
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            if !row[k].is_zero() {
                let q = row[k].div_floor(&pivot_row[k]);
                for j in k..cols {
                    let sub = q.clone() * pivot_row[j].clone();
                    row[j] = row[j].clone() - sub;
                }
                if !row[k].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (k + 1)..cols {
            if !m[k][j].is_zero() {
                let q = m[k][j].div_floor(&m[k][k]);
                for row in m.iter_mut().skip(k) {
                    let sub = q.clone() * row[k].clone();
                    row[j] = row[j].clone() - sub;
                }
                if !m[k][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // leftovers are smaller than the pivot; iterate
        }

        // pivot must divide the remaining block, otherwise fold the
        // offending row into row k and keep reducing
        let mut offender = None;
        'search: for i in (k + 1)..rows {
            for j in (k + 1)..cols {
                if !m[i][j].mod_floor(&m[k][k]).is_zero() {
                    offender = Some(i);
                    break 'search;
                }
            }
        }
        match offender {
            Some(i) => {
                let row = m[i].clone();
                for j in k..cols {
                    m[k][j] = m[k][j].clone() + row[j].clone();
                }
            }
            None => {
                if m[k][k].is_negative() {
                    m[k][k] = -m[k][k].clone();
                }
                return true;
            }
        }
    }
}

fn min_nonzero<T>(m: &[Vec<T>], k: usize) -> Option<(usize, usize)>
where
    T: Integer + Signed + Clone,
{
    let mut best: Option<((usize, usize), T)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, x) in row.iter().enumerate().skip(k) {
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            match &best {
                Some((_, b)) if *b <= a => {}
                _ => best = Some(((i, j), a)),
            }
        }
    }
    best.map(|(idx, _)| idx)
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Iterated gcd-smoothing: enforces `d[i] | d[i+1]` while preserving the
/// products of pairs, yielding the canonical invariant-factor chain.
fn smooth<T>(diagonal: &mut [T])
where
    T: Integer + Signed + Clone,
{
    if diagonal.is_empty() {
        return;
    }
    loop {
        let mut stable = true;
        for i in 0..diagonal.len() - 1 {
            let a = diagonal[i].clone();
            let b = diagonal[i + 1].clone();
            if !b.mod_floor(&a).is_zero() {
                let g = a.gcd(&b);
                diagonal[i + 1] = a * b / g.clone();
                diagonal[i] = g;
                stable = false;
            }
        }
        if stable {
            return;
        }
    }
}
