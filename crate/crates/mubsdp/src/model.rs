//! Explicit projector models: `L(w) = tr(X_w)` for concrete bases.

use nalgebra::DMatrix;

use crate::word::Letter;

/// Rank-one projectors `X_{i,j} = e_{i,j} e_{i,j}^T` for real orthonormal bases.
#[derive(Clone, Debug)]
pub struct ProjectorModel {
    d: usize,
    projectors: Vec<Vec<DMatrix<f64>>>,
}

impl ProjectorModel {
    /// Columns of each matrix are the basis vectors.
    pub fn from_bases(bases: &[DMatrix<f64>]) -> Self {
        let d = bases[0].nrows();
        let projectors = bases
            .iter()
            .map(|b| {
                (0..d)
                    .map(|i| {
                        let v = b.column(i);
                        v * v.transpose()
                    })
                    .collect()
            })
            .collect();
        ProjectorModel { d, projectors }
    }

    /// Standard and Hadamard bases of `R^2`.
    pub fn standard_hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_bases(&[DMatrix::identity(2, 2), DMatrix::from_row_slice(2, 2, &[s, s, s, -s])])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.projectors.len()
    }

    /// `L(w) = tr(X_w)`, so `L(1) = d` and `L(x) = 1`.
    pub fn value(&self, w: &[Letter]) -> f64 {
        let mut m = DMatrix::<f64>::identity(self.d, self.d);
        for l in w {
            m *= &self.projectors[l.basis as usize][l.elem as usize];
        }
        m.trace()
    }

    pub fn values(&self, words: &[Vec<Letter>]) -> Vec<f64> {
        words.iter().map(|w| self.value(w)).collect()
    }

    /// Largest deviation from orthonormality and unbiasedness.
    pub fn defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (j, pj) in self.projectors.iter().enumerate() {
            for (jj, pjj) in self.projectors.iter().enumerate() {
                for (i, a) in pj.iter().enumerate() {
                    for (ii, b) in pjj.iter().enumerate() {
                        let target = match (j == jj, i == ii) {
                            (true, true) => 1.0,
                            (true, false) => 0.0,
                            _ => 1.0 / self.d as f64,
                        };
                        worst = worst.max(((a * b).trace() - target).abs());
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word_from_pairs;

    #[test]
    fn two_bases_are_unbiased() {
        let m = ProjectorModel::standard_hadamard();
        assert!(m.defect() < 1e-12);
        assert!((m.value(&[]) - 2.0).abs() < 1e-12);
        assert!((m.value(&word_from_pairs(&[(1, 1), (1, 2), (1, 1)])) - 0.5).abs() < 1e-12);
    }
}
