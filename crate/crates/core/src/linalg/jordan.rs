use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// Jordan chains of a nilpotent matrix.
///
/// Each chain is listed bottom first, `[N^{l−1}v, …, Nv, v]`, so that in the
/// concatenated basis `N` maps every vector to its predecessor (upper
/// triangular blocks). Longer chains come first.
pub fn jordan_chains(n: &Matrix) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let dim = n.rows();
    if !n.is_square() {
        return Err(Error::Dimension { expected: dim, got: n.cols() });
    }
    let mut kernels = vec![Subspace::zero(dim)];
    let mut power = Matrix::identity(dim);
    while kernels.last().expect("nonempty").dim() < dim {
        if kernels.len() > dim {
            return Err(Error::NotNilpotent);
        }
        power = power.mul(n)?;
        kernels.push(Subspace::span(dim, &power.kernel())?);
    }
    let top = kernels.len() - 1;
    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for level in (1..=top).rev() {
        let carried: Vec<Vec<Scalar>> = chains.iter().map(|c| c[level - 1].clone()).collect();
        let existing = kernels[level - 1].sum(&Subspace::span(dim, &carried)?);
        for v in kernels[level].complement_of(&existing) {
            let mut chain = vec![v];
            for _ in 1..level {
                let next = n.mul_vec(chain.last().expect("nonempty"))?;
                chain.push(next);
            }
            chain.reverse();
            chains.push(chain);
        }
    }
    Ok(chains)
}

/// Sizes of the Jordan blocks of a nilpotent matrix, largest first.
pub fn nilpotent_block_sizes(n: &Matrix) -> Result<Vec<usize>> {
    Ok(jordan_chains(n)?.iter().map(Vec::len).collect())
}
