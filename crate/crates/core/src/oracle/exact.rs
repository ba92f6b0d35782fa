//! Exact voltage solve by fraction-free (Bareiss) elimination.
//!
//! Weights are converted to exact rationals and the reduced Laplacian is
//! scaled by the lcm of their denominators, so elimination runs entirely
//! over integers. Each Bareiss step divides exactly by the previous pivot,
//! which keeps entries bounded by minors of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExactRational, OracleError};
use crate::graph::{Graph, NodeId};

fn exact_weight(w: f64) -> BigRational {
    BigRational::from_float(w).expect("graph weights are finite")
}

/// Exact voltages for unit injection at `a`, withdrawal at `b`, in the
/// sum-zero gauge. Ground node is `N`.
pub fn exact_solve_pair(graph: &Graph, a: NodeId, b: NodeId) -> Result<Vec<ExactRational>, OracleError> {
    let n = graph.n();
    if n < 2 {
        return Err(OracleError::TooSmall { n, min: 2 });
    }
    for node in [a, b] {
        if node == 0 || node > n {
            return Err(OracleError::NodeOutOfRange { node, n });
        }
    }
    if a == b {
        return Err(OracleError::SameSourceSink { node: a });
    }

    let weights: Vec<BigRational> = graph.edges().iter().map(|e| exact_weight(e.weight)).collect();
    let scale = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));

    // rows/cols 0..n-1 are nodes 1..n-1; node n is ground
    let dim = n - 1;
    let mut m = vec![vec![BigInt::zero(); dim + 1]; dim];
    for (e, w) in graph.edges().iter().zip(&weights) {
        let c = (w * BigRational::from_integer(scale.clone())).to_integer();
        let (i, j) = (e.u - 1, e.v - 1);
        if i < dim {
            m[i][i] += &c;
        }
        if j < dim {
            m[j][j] += &c;
        }
        if i < dim && j < dim {
            m[i][j] -= &c;
            m[j][i] -= &c;
        }
    }
    if a - 1 < dim {
        m[a - 1][dim] += 1;
    }
    if b - 1 < dim {
        m[b - 1][dim] -= 1;
    }

    let y = bareiss_solve(m)?;
    // (scale·L) y = r  =>  v = scale · y
    let scale = BigRational::from_integer(scale);
    let mut v: Vec<BigRational> = y.into_iter().map(|x| x * &scale).collect();
    v.push(BigRational::zero());
    let mean = v.iter().fold(BigRational::zero(), |s, x| s + x) / BigRational::from_integer(BigInt::from(n));
    Ok(v.into_iter().map(|x| ExactRational::from_ratio(x - &mean)).collect())
}

/// Solves the square system held in augmented form `[A | r]`.
fn bareiss_solve(mut m: Vec<Vec<BigInt>>) -> Result<Vec<BigRational>, OracleError> {
    let dim = m.len();
    let mut prev = BigInt::one();
    for k in 0..dim {
        if m[k][k].is_zero() {
            let swap = (k + 1..dim)
                .find(|&r| !m[r][k].is_zero())
                .ok_or(OracleError::SingularSystem)?;
            m.swap(k, swap);
        }
        for i in k + 1..dim {
            for j in k + 1..=dim {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); dim];
    for i in (0..dim).rev() {
        let mut s = BigRational::from_integer(m[i][dim].clone());
        for j in i + 1..dim {
            s -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = s / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// Exact `L v - (e_a - e_b)`; all zeros for a correct solve.
pub fn exact_residual(graph: &Graph, a: NodeId, b: NodeId, v: &[ExactRational]) -> Vec<ExactRational> {
    let mut r = vec![BigRational::zero(); graph.n()];
    for e in graph.edges() {
        let i = exact_weight(e.weight) * (v[e.u - 1].as_ratio() - v[e.v - 1].as_ratio());
        r[e.u - 1] += &i;
        r[e.v - 1] -= &i;
    }
    r[a - 1] -= BigRational::one();
    r[b - 1] += BigRational::one();
    r.into_iter().map(ExactRational::from_ratio).collect()
}
