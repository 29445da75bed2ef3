//! Integral homology of finite free chain complexes via Smith forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::intmat::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("boundary does not square to zero in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("expected {expected} boundary matrices, got {found}")]
    Length { expected: usize, found: usize },
}

/// `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m`, with every `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn integers() -> Self {
        HomologyGroup {
            rank: 1,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Homology of `0 -> C_top -> ... -> C_0 -> 0`.
///
/// `boundaries[k]` is `d_k : C_k -> C_{k-1}` for `k = 0..=top+1`, so the
/// slice has `dims.len() + 1` entries; the two outer maps are empty
/// (`0 x dims[0]` and `dims[top] x 0`).
pub fn chain_homology(
    dims: &[usize],
    boundaries: &[IntMatrix],
) -> Result<Vec<HomologyGroup>, ChainError> {
    let top = dims.len();
    if boundaries.len() != top + 1 {
        return Err(ChainError::Length {
            expected: top + 1,
            found: boundaries.len(),
        });
    }
    let dim = |k: isize| -> usize {
        if k < 0 || k as usize >= top {
            0
        } else {
            dims[k as usize]
        }
    };
    for (k, d) in boundaries.iter().enumerate() {
        let expected = (dim(k as isize - 1), dim(k as isize));
        if d.shape() != expected {
            return Err(ChainError::Shape {
                degree: k,
                expected,
                found: d.shape(),
            });
        }
    }
    for k in 1..boundaries.len() {
        let sq = boundaries[k - 1]
            .mul(&boundaries[k])
            .expect("shapes checked above");
        if !sq.is_zero() {
            return Err(ChainError::NotAComplex { degree: k });
        }
    }
    let forms: Vec<_> = boundaries.iter().map(intmat::snf).collect();
    Ok((0..top)
        .map(|k| {
            let rank_out = forms[k].rank();
            let incoming = &forms[k + 1];
            let rank_in = incoming.rank();
            HomologyGroup {
                rank: dims[k] - rank_out - rank_in,
                torsion: incoming
                    .elementary_divisors
                    .iter()
                    .filter(|s| !s.is_zero() && !s.is_one())
                    .cloned()
                    .collect(),
            }
        })
        .collect())
}

/// `Z` in degrees `0` and `n`, zero elsewhere (for `n >= 1`).
pub fn is_sphere_homology(groups: &[HomologyGroup]) -> bool {
    let n = groups.len().saturating_sub(1);
    n >= 1
        && groups.iter().enumerate().all(|(k, h)| {
            if k == 0 || k == n {
                h.is_integers()
            } else {
                h.is_zero()
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty(r: usize, c: usize) -> IntMatrix {
        IntMatrix::zeros(r, c)
    }

    #[test]
    fn two_in_the_middle_gives_torsion() {
        // C_2 = Z --[2]--> C_1 = Z, nothing else: H_1 = Z/2, H_2 = 0
        let dims = [0, 1, 1];
        let b = vec![
            empty(0, 0),
            empty(0, 1),
            IntMatrix::from_rows(&[vec![2]]),
            empty(1, 0),
        ];
        let h = chain_homology(&dims, &b).unwrap();
        assert!(h[0].is_zero());
        assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[1].rank, 0);
        assert!(h[2].is_zero());
        assert_eq!(h[1].to_string(), "Z/2");
    }

    #[test]
    fn sphere_from_point_and_top_cell() {
        let dims = [1, 0, 1];
        let b = vec![empty(0, 1), empty(1, 0), empty(0, 1), empty(1, 0)];
        let h = chain_homology(&dims, &b).unwrap();
        assert!(is_sphere_homology(&h));
    }

    #[test]
    fn rejects_non_complex() {
        let dims = [1, 1, 1];
        let one = IntMatrix::from_rows(&[vec![1]]);
        let b = vec![empty(0, 1), one.clone(), one, empty(1, 0)];
        assert_eq!(
            chain_homology(&dims, &b),
            Err(ChainError::NotAComplex { degree: 2 })
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        let dims = [1, 1];
        let b = vec![empty(0, 1), empty(2, 1), empty(1, 0)];
        assert!(matches!(
            chain_homology(&dims, &b),
            Err(ChainError::Shape { degree: 1, .. })
        ));
    }
}
