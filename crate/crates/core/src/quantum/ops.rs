use super::{Matrix, PureState};
use crate::{Error, Result, MAX_DIM};

/// Either side of a tensor product.
#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    State(PureState),
    Operator(Matrix),
}

impl Operand {
    pub fn dim(&self) -> usize {
        match self {
            Operand::State(s) => s.dim(),
            Operand::Operator(m) => m.dim(),
        }
    }
}

/// `a ⊗ b` with `a` as the most significant factor. States combine with
/// states and operators with operators.
pub fn tensor(a: &Operand, b: &Operand) -> Result<Operand> {
    let dim = a.dim() * b.dim();
    if dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    match (a, b) {
        (Operand::State(x), Operand::State(y)) => Ok(Operand::State(x.tensor(y))),
        (Operand::Operator(x), Operand::Operator(y)) => Ok(Operand::Operator(x.kron(y))),
        _ => Err(Error::KindMismatch),
    }
}

/// Tensor factor selector for a bipartite space `H₁ ⊗ H₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::First => Subsystem::Second,
            Subsystem::Second => Subsystem::First,
        }
    }
}

/// Traces out the factor not named by `keep`.
pub fn partial_trace(op: &Matrix, dims: (usize, usize), keep: Subsystem) -> Result<Matrix> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || d1 * d2 != op.dim() {
        return Err(Error::BadFactorization {
            dim: op.dim(),
            d1,
            d2,
        });
    }
    let out = match keep {
        Subsystem::First => {
            let mut out = Matrix::zeros(d1);
            for i in 0..d1 {
                for j in 0..d1 {
                    out[(i, j)] = (0..d2).map(|k| op[(i * d2 + k, j * d2 + k)]).sum();
                }
            }
            out
        }
        Subsystem::Second => {
            let mut out = Matrix::zeros(d2);
            for i in 0..d2 {
                for j in 0..d2 {
                    out[(i, j)] = (0..d1).map(|k| op[(k * d2 + i, k * d2 + j)]).sum();
                }
            }
            out
        }
    };
    Ok(out)
}
