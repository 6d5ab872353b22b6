//! Exact revised simplex for unit-cost covering LPs
//!
//! min Σ_j y_j  s.t.  Σ_{j ∋ r} y_j ≥ b_r for every row r,  y ≥ 0,
//!
//! where every column is a set of rows. Each row must have a singleton
//! column, so the singletons with y = b form a feasible starting basis.
//! Pivoting follows Bland's rule; arithmetic is over big rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringSolution {
    pub value: Rational,
    /// y_j per column.
    pub primal: Vec<Rational>,
    /// Optimal dual x_r per row: x ≥ 0, Σ_{r ∈ j} x_r ≤ 1 for every column.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Column(usize),
    Surplus(usize),
}

/// Dual prices scaled to integers: π_r = num[r] / den.
enum Prices {
    Small(Vec<i128>, i128),
    Big(Vec<BigInt>, BigInt),
}

impl Prices {
    fn new(pi: &[Rational]) -> Prices {
        let den = pi.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let num: Vec<BigInt> = pi.iter().map(|p| p.numer() * (&den / p.denom())).collect();
        let fits = den.bits() < 60 && num.iter().all(|x| x.bits() < 60);
        if fits {
            Prices::Small(num.iter().map(|x| x.to_i128().unwrap()).collect(), den.to_i128().unwrap())
        } else {
            Prices::Big(num, den)
        }
    }

    /// Whether 1 − Σ_{r ∈ rows} π_r < 0.
    fn improves(&self, rows: &[usize]) -> bool {
        match self {
            Prices::Small(num, den) => rows.iter().map(|&r| num[r]).sum::<i128>() > *den,
            Prices::Big(num, den) => rows.iter().map(|&r| &num[r]).sum::<BigInt>() > *den,
        }
    }
}

/// Solves the covering LP. Panics if some row with b_r > 0 has no singleton
/// column.
pub fn solve_covering(rows: usize, b: &[u64], columns: &[Vec<usize>]) -> CoveringSolution {
    assert_eq!(b.len(), rows);
    let mut singleton = vec![usize::MAX; rows];
    for (j, col) in columns.iter().enumerate() {
        if let [r] = col[..] {
            if singleton[r] == usize::MAX {
                singleton[r] = j;
            }
        }
    }
    let mut basis: Vec<Var> = (0..rows)
        .map(|r| {
            assert!(singleton[r] != usize::MAX, "row {r} has no singleton column");
            Var::Column(singleton[r])
        })
        .collect();
    let mut binv: Vec<Vec<Rational>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut xb: Vec<Rational> = b.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
    let cost = |v: Var| match v {
        Var::Column(_) => Rational::one(),
        Var::Surplus(_) => Rational::zero(),
    };

    let mut pivots = 0;
    loop {
        // π = c_B B⁻¹
        let cb: Vec<Rational> = basis.iter().map(|&v| cost(v)).collect();
        let pi: Vec<Rational> = (0..rows)
            .map(|c| (0..rows).filter(|&i| !cb[i].is_zero()).map(|i| &cb[i] * &binv[i][c]).sum())
            .collect();
        let prices = Prices::new(&pi);
        let entering = columns
            .iter()
            .position(|col| prices.improves(col))
            .map(Var::Column)
            .or_else(|| (0..rows).find(|&r| pi[r].is_negative()).map(Var::Surplus));
        let Some(entering) = entering else {
            let mut primal = vec![Rational::zero(); columns.len()];
            for (i, &v) in basis.iter().enumerate() {
                if let Var::Column(j) = v {
                    primal[j] += &xb[i];
                }
            }
            let value = primal.iter().sum();
            return CoveringSolution { value, primal, dual: pi, pivots };
        };

        // direction B⁻¹ a
        let dir: Vec<Rational> = match entering {
            Var::Column(j) => (0..rows).map(|i| columns[j].iter().map(|&r| &binv[i][r]).sum()).collect(),
            Var::Surplus(r) => (0..rows).map(|i| -&binv[i][r]).collect(),
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if dir[i].is_positive() {
                let ratio = &xb[i] / &dir[i];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (l, _) = leave.expect("covering LP is bounded below");

        let p = dir[l].clone();
        for x in binv[l].iter_mut() {
            *x /= &p;
        }
        xb[l] /= &p;
        let pivot_row = binv[l].clone();
        for i in 0..rows {
            if i != l && !dir[i].is_zero() {
                let factor = dir[i].clone();
                for (x, y) in binv[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
                let delta = &factor * &xb[l];
                xb[i] -= delta;
            }
        }
        basis[l] = entering;
        pivots += 1;
    }
}
