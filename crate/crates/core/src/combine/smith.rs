//! Smith normal form over ℤ and integer solutions of `A·x = b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub diagonal: Vec<BigInt>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let k = rows.min(cols);
    let mut diagonal = Vec::with_capacity(k);
    for t in 0..k {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_axpy(&mut a, t, i, &m1);
                    row_axpy(&mut u, t, i, &m1);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(a[t][t].clone());
    }
    SmithForm { u, v, diagonal }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerSolution {
    Solution(Vec<BigInt>),
    /// A rational row vector `y` with `y·A` integral and `y·b ∉ ℤ`.
    Infeasible { certificate: Vec<BigRational> },
}

fn mat_vec(m: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Solves `A·x = b` over ℤ.
pub fn solve_integer_system(a: &[Vec<BigInt>], cols: usize, b: &[BigInt]) -> IntegerSolution {
    let s = smith_normal_form(a, cols);
    let c = mat_vec(&s.u, b);
    let scaled_row = |i: usize, d: &BigInt| -> Vec<BigRational> {
        s.u[i]
            .iter()
            .map(|x| BigRational::new(x.clone(), d.clone()))
            .collect()
    };
    let mut z = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        match s.diagonal.get(i).filter(|d| !d.is_zero()) {
            Some(d) => {
                if !ci.is_multiple_of(d) {
                    return IntegerSolution::Infeasible {
                        certificate: scaled_row(i, d),
                    };
                }
                z[i] = ci / d;
            }
            None if !ci.is_zero() => {
                return IntegerSolution::Infeasible {
                    certificate: scaled_row(i, &(ci * 2)),
                };
            }
            None => {}
        }
    }
    IntegerSolution::Solution(mat_vec(&s.v, &z))
}

/// Checks an infeasibility certificate against the system.
pub fn certifies_infeasible(a: &[Vec<BigInt>], cols: usize, b: &[BigInt], y: &[BigRational]) -> bool {
    let ya_integral = (0..cols).all(|j| {
        let s: BigRational = a
            .iter()
            .zip(y)
            .map(|(row, yi)| yi * BigRational::from_integer(row[j].clone()))
            .sum();
        s.is_integer()
    });
    let yb: BigRational = b
        .iter()
        .zip(y)
        .map(|(bi, yi)| yi * BigRational::from_integer(bi.clone()))
        .sum();
    ya_integral && !yb.is_integer()
}
