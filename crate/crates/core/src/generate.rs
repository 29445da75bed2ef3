//! Seeded random germs with sphere homology.
//!
//! Start from the trivial germ, add cancelling pairs `x_i -> ±y_i` in degrees
//! `k + 1` and `k`, then apply random legal handle slides in those degrees.
//! Each step keeps the homology of the sphere.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::morse::{BoundaryEntry, CriticalPoint, GermComplex, GermError, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need 2 <= k <= n - 2, got n = {n}, k = {k}")]
    DegreeRange { n: usize, k: usize },
    #[error(transparent)]
    Germ(#[from] GermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub pairs: usize,
    pub slides: usize,
    /// Relabel so that in degrees `k` and `k + 1` every plus point lies above
    /// every minus point.
    pub max_gauge: bool,
}

pub fn generate(params: &GenParams) -> Result<GermComplex, GenError> {
    let GenParams {
        seed,
        n,
        k,
        pairs,
        slides,
        max_gauge,
    } = *params;
    if k < 2 || k + 2 > n {
        return Err(GenError::DegreeRange { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 10 * (pairs + 1);
    let mut values: Vec<i64> = index::sample(&mut rng, 2 * span, 2 * pairs)
        .into_iter()
        .map(|v| v as i64 + 1)
        .collect();
    values.sort_unstable();
    // pair up randomly: the larger value of each pair goes to x_i
    let mut order: Vec<usize> = (0..2 * pairs).collect();
    order.shuffle(&mut rng);
    let top = 2 * span as i64 + 10;
    let mut points = vec![
        CriticalPoint::new("max", n, Label::Plus, top),
        CriticalPoint::new("min", 0, Label::Minus, -top),
    ];
    let mut entries = Vec::new();
    for i in 0..pairs {
        let (a, b) = (values[order[2 * i]], values[order[2 * i + 1]]);
        let (hi, lo) = (a.max(b), a.min(b));
        let x = format!("x{}", i + 1);
        let y = format!("y{}", i + 1);
        points.push(CriticalPoint::new(&x, k + 1, random_label(&mut rng), hi));
        points.push(CriticalPoint::new(&y, k, random_label(&mut rng), lo));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        entries.push(BoundaryEntry::new(x, y, sign));
    }
    if max_gauge {
        for degree in [k, k + 1] {
            let mut idx: Vec<usize> = (0..points.len())
                .filter(|&i| points[i].index == degree)
                .collect();
            let plus = idx
                .iter()
                .filter(|&&i| points[i].label == Label::Plus)
                .count();
            idx.sort_by(|&a, &b| points[b].value.cmp(&points[a].value));
            for (rank, &i) in idx.iter().enumerate() {
                points[i].label = if rank < plus {
                    Label::Plus
                } else {
                    Label::Minus
                };
            }
        }
    }
    let mut germ = GermComplex::new(n, points, &entries)?;
    let mut applied = 0;
    let mut attempts = 0;
    while applied < slides && attempts < 20 * slides + 20 {
        attempts += 1;
        let degree = if rng.gen_bool(0.5) { k } else { k + 1 };
        let count = germ.count(degree);
        if count < 2 {
            continue;
        }
        let target = rng.gen_range(0..count);
        let source = rng.gen_range(0..count);
        if !germ.slide_available(degree, target, source) {
            continue;
        }
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        germ = germ.handle_slide(degree, target, source, s)?;
        applied += 1;
    }
    Ok(germ)
}

fn random_label(rng: &mut impl Rng) -> Label {
    if rng.gen_bool(0.5) {
        Label::Plus
    } else {
        Label::Minus
    }
}
