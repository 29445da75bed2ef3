use num_traits::Zero;

use super::{GermComplex, GermError};
use crate::intmat::IntMatrix;

/// An element of the gauge group: one lower-left block `N_k` (shape
/// `q_k x p_k`) per degree `k = 0..=n`, standing for `[[I, 0], [N_k, I]]`.
///
/// The group is abelian on these blocks: composition adds them and the
/// inverse negates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeElement {
    blocks: Vec<IntMatrix>,
}

impl GaugeElement {
    pub fn identity(germ: &GermComplex) -> Self {
        GaugeElement {
            blocks: (0..=germ.n())
                .map(|k| IntMatrix::zeros(germ.minus_count(k), germ.plus_count(k)))
                .collect(),
        }
    }

    pub fn from_blocks(blocks: Vec<IntMatrix>) -> Self {
        GaugeElement { blocks }
    }

    pub fn block(&self, k: usize) -> &IntMatrix {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[IntMatrix] {
        &self.blocks
    }

    pub fn degrees(&self) -> usize {
        self.blocks.len()
    }

    pub fn set_block(&mut self, k: usize, block: IntMatrix) -> Result<(), GermError> {
        let expected = self
            .blocks
            .get(k)
            .map(IntMatrix::shape)
            .ok_or(GermError::GaugeShape {
                degree: k,
                expected: (0, 0),
                found: block.shape(),
            })?;
        if block.shape() != expected {
            return Err(GermError::GaugeShape {
                degree: k,
                expected,
                found: block.shape(),
            });
        }
        self.blocks[k] = block;
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(IntMatrix::is_zero)
    }

    pub fn compose(&self, other: &GaugeElement) -> Result<GaugeElement, GermError> {
        if self.blocks.len() != other.blocks.len() {
            return Err(GermError::GaugeShape {
                degree: self.blocks.len().min(other.blocks.len()),
                expected: (0, 0),
                found: (0, 0),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(GaugeElement { blocks })
    }

    pub fn inverse(&self) -> GaugeElement {
        GaugeElement {
            blocks: self.blocks.iter().map(IntMatrix::neg).collect(),
        }
    }

    /// Shapes must match the germ and every entry outside the free pattern
    /// must vanish.
    pub(crate) fn check_against(&self, germ: &GermComplex) -> Result<(), GermError> {
        if self.blocks.len() != germ.n() + 1 {
            return Err(GermError::GaugeShape {
                degree: self.blocks.len().min(germ.n() + 1),
                expected: (germ.n() + 1, 0),
                found: (self.blocks.len(), 0),
            });
        }
        for (k, block) in self.blocks.iter().enumerate() {
            let expected = (germ.minus_count(k), germ.plus_count(k));
            if block.shape() != expected {
                return Err(GermError::GaugeShape {
                    degree: k,
                    expected,
                    found: block.shape(),
                });
            }
            let gens = germ.natural_order(k);
            let p = expected.1;
            for i in 0..expected.0 {
                for j in 0..p {
                    if !block[(i, j)].is_zero() && gens[j].value <= gens[p + i].value {
                        return Err(GermError::NotInGauge {
                            degree: k,
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
